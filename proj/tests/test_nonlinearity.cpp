#include <gtest/gtest.h>

#include "elastwave/nonlinearity.hpp"
#include "oracles.hpp"

using namespace elastwave;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

int mode_along(const AcousticModeSet<double>& modes, const Vector3<double>& k) {
  for (int j = 0; j < 3; ++j)
    if (std::abs(std::abs(modes.polarization(j).dot(k.normalized())) - 1.0) < 1e-9) return j;
  return -1;
}

}  // namespace

TEST(PlaneDerivatives, MatchFiniteDifferences) {
  for (int trial = 0; trial < 5; ++trial) {
    const auto mod = oracle::random_triclinic(oracle::uniform(0.5, 3.0));
    const Vector3<double> n = oracle::random_unit();
    const auto d = v_derivatives(mod, Directiond(n));
    const auto fd = oracle::fd_derivatives(mod, n);
    const double scale = d.pi.max_abs();
    EXPECT_LE((d.lambda - fd.lambda.cast<double>()).cwiseAbs().maxCoeff(), 1e-8 * scale);
    for (std::size_t i = 0; i < Tensor3<double>::kSize; ++i)
      EXPECT_NEAR(d.psi[i], static_cast<double>(fd.psi[i]), 1e-8 * scale);
    for (std::size_t i = 0; i < Tensor4<double>::kSize; ++i)
      EXPECT_NEAR(d.pi[i], static_cast<double>(fd.pi[i]), 1e-7 * scale);
  }
}

TEST(PlaneDerivatives, PsiMatchesNTensorRoute) {
  for (int trial = 0; trial < 50; ++trial) {
    const auto mod = oracle::random_triclinic(oracle::uniform(0.5, 3.0));
    const Vector3<double> n = oracle::random_unit();
    const auto d = v_derivatives(mod, Directiond(n));
    const auto psi = oracle::psi_from_n_tensor(mod, n);
    const double scale = psi.max_abs();
    for (std::size_t i = 0; i < Tensor3<double>::kSize; ++i) EXPECT_NEAR(d.psi[i], psi[i], 1e-10 * scale);
  }
}

TEST(PlaneDerivatives, TotallySymmetric) {
  const auto d = v_derivatives(oracle::random_triclinic(), Directiond(oracle::random_unit()));
  const double s = d.pi.max_abs();
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) {
        EXPECT_NEAR(d.psi(a, b, c), d.psi(b, a, c), 1e-13 * s);
        EXPECT_NEAR(d.psi(a, b, c), d.psi(a, c, b), 1e-13 * s);
        for (int e = 0; e < 3; ++e) {
          EXPECT_NEAR(d.pi(a, b, c, e), d.pi(b, a, c, e), 1e-13 * s);
          EXPECT_NEAR(d.pi(a, b, c, e), d.pi(a, b, e, c), 1e-13 * s);
          EXPECT_NEAR(d.pi(a, b, c, e), d.pi(c, b, a, e), 1e-13 * s);
        }
      }
}

TEST(GammaSingle, IsotropicLongitudinal) {
  for (int trial = 0; trial < 100; ++trial) {
    const auto c = oracle::random_isotropic_constants();
    const auto mod = make_isotropic(c.lam, c.mu, c.l, c.m, c.n);
    const Directiond n(oracle::random_unit());
    const auto modes = eigenmodes(mod, n);
    EXPECT_NEAR(modes.speed(0), -std::sqrt(c.lam + 2 * c.mu), 1e-12);
    EXPECT_LE(rel(gamma_single(mod, n, 0), oracle::iso_gamma_long(c)), 1e-9);
  }
}

TEST(GammaSingle, ExpandedFormAgrees) {
  for (int trial = 0; trial < 30; ++trial) {
    const auto mod = oracle::random_triclinic();
    const Directiond n(oracle::random_unit());
    const auto modes = eigenmodes(mod, n);
    const auto d = v_derivatives(mod, n);
    for (int j = 0; j < 3; ++j)
      EXPECT_NEAR(gamma_single(d, modes, j), gamma_single_expanded(mod, modes, j), 1e-10 * d.psi.max_abs());
  }
}

TEST(GammaSingle, FrameIndependent) {
  for (int trial = 0; trial < 20; ++trial) {
    const auto mod = oracle::random_triclinic();
    const Vector3<double> n = oracle::random_unit();
    const Matrix3<double> R = oracle::random_rotation();
    const auto rot = rotate_moduli(mod, R);
    for (int j = 0; j < 3; ++j)
      EXPECT_NEAR(gamma_single(mod, Directiond(n), j), gamma_single(rot, Directiond(Vector3<double>(R * n)), j),
                  1e-9 * mod.stress_scale());
  }
}

TEST(CubicCoefficient, IsotropicShear) {
  for (int trial = 0; trial < 100; ++trial) {
    const auto c = oracle::random_isotropic_constants();
    const auto mod = make_isotropic(c.lam, c.mu, c.l, c.m, c.n);
    const Directiond n(oracle::random_unit());
    const auto modes = eigenmodes(mod, n);
    const auto d = v_derivatives(mod, n);
    for (int j : {1, 2}) {
      EXPECT_NEAR(gamma_single(d, modes, j), 0.0, 1e-12 * d.psi.max_abs());
      const auto G = g_cubic_coefficient(d, modes, j);
      EXPECT_FALSE(G.quadratic_dominates);
      EXPECT_LE(rel(G.value, oracle::iso_g_shear(c)), 1e-9);
    }
  }
}

TEST(CubicCoefficient, Cubic100) {
  for (int trial = 0; trial < 50; ++trial) {
    const auto c = oracle::random_cubic_constants();
    const auto mod = oracle::make_cubic(c);
    const Directiond n(1, 0, 0);
    const auto modes = eigenmodes(mod, n);
    // c44 may exceed c11, so the shear pair is found by polarization.
    for (const Vector3<double>& k : {Vector3<double>(0, 1, 0), Vector3<double>(0, 0, 1)}) {
      const int j = mode_along(modes, k);
      ASSERT_GE(j, 0);
      EXPECT_LE(rel(g_cubic_coefficient(v_derivatives(mod, n), modes, j).value, oracle::cubic100_g(c)), 1e-9);
    }
  }
}

TEST(CubicCoefficient, Cubic110) {
  for (int trial = 0; trial < 50; ++trial) {
    const auto c = oracle::random_cubic_constants();
    const auto mod = oracle::make_cubic(c);
    const Directiond n(1, 1, 0);
    const auto modes = eigenmodes(mod, n);
    const auto d = v_derivatives(mod, n);
    const int in = mode_along(modes, Vector3<double>(1, -1, 0));
    const int ax = mode_along(modes, Vector3<double>(0, 0, 1));
    ASSERT_GE(in, 0);
    ASSERT_GE(ax, 0);
    EXPECT_NEAR(modes.speed(in), -std::sqrt(0.5 * (c.c11 - c.c12)), 1e-12);
    EXPECT_NEAR(modes.speed(ax), -std::sqrt(c.c44), 1e-12);
    EXPECT_NEAR(gamma_single(d, modes, in), 0.0, 1e-12 * d.psi.max_abs());
    EXPECT_NEAR(gamma_single(d, modes, ax), 0.0, 1e-12 * d.psi.max_abs());
    EXPECT_LE(rel(g_cubic_coefficient(d, modes, in).value, oracle::cubic110_g_inplane(c)), 1e-9);
    EXPECT_LE(rel(g_cubic_coefficient(d, modes, ax).value, oracle::cubic110_g_axial(c)), 1e-9);
  }
}

TEST(CubicCoefficient, QSolvesSlavedStrain) {
  for (int trial = 0; trial < 30; ++trial) {
    const auto mod = oracle::random_triclinic();
    const Directiond n(oracle::random_unit());
    const auto modes = eigenmodes(mod, n);
    const auto d = v_derivatives(mod, n);
    for (int j = 0; j < 3; ++j) {
      const auto qs = q_vector(d, modes, j);
      const Vector3<double> k = modes.polarization(j);
      const Vector3<double> r = (d.lambda - modes.alphas(j) * Matrix3<double>::Identity()) * qs.q + contract(d.psi, k, k);
      // Only the component along k is left over: it is Gamma_s times 2 lambda_s.
      const Vector3<double> off = r - k.dot(r) * k;
      EXPECT_LE(off.norm(), 1e-10 * d.psi.max_abs());
      EXPECT_NEAR(qs.q.dot(k), 0.0, 1e-12 * (1 + qs.q.norm()));
      EXPECT_GE(qs.condition, 1.0);
    }
  }
}

TEST(CubicCoefficient, FrameIndependent) {
  for (int trial = 0; trial < 20; ++trial) {
    const auto mod = oracle::random_triclinic();
    const Vector3<double> n = oracle::random_unit();
    const Matrix3<double> R = oracle::random_rotation();
    const auto rot = rotate_moduli(mod, R);
    for (int j = 0; j < 3; ++j) {
      const double a = g_cubic_coefficient(mod, Directiond(n), j).value;
      const double b = g_cubic_coefficient(rot, Directiond(Vector3<double>(R * n)), j).value;
      EXPECT_NEAR(a, b, 1e-8 * std::max(1.0, std::abs(a)));
    }
  }
}

TEST(CubicCoefficient, CoupledPairIsRefused) {
  // On the monoclinic axis the first basis vector is the mirror normal e1, and
  // Psi k1 k1 has a component along the partner (g112 != 0).
  const auto t = oracle::tuned_monoclinic(0.9);
  const Directiond n(t.n);
  const auto modes = eigenmodes(t.mod, n);
  const auto d = v_derivatives(t.mod, n);
  ASSERT_TRUE(modes.is_degenerate());
  EXPECT_THROW(q_vector(d, modes, modes.degeneracy.pair[0]), NumericalError);
}

TEST(Interaction, Cubic111) {
  for (int trial = 0; trial < 50; ++trial) {
    const auto c = oracle::random_cubic_constants();
    const auto mod = oracle::make_cubic(c);
    const auto axis = classify_axis(mod, Directiond(1, 1, 1));
    ASSERT_TRUE(axis.pair_profile.has_value());
    const auto& p = axis.profiles[*axis.pair_profile];
    const double G3 = oracle::cubic111_gamma(c);
    const double scale = std::abs(G3);
    EXPECT_LE(rel(p.speed, oracle::cubic111_speed(c)), 1e-12);
    EXPECT_NEAR(p.gamma_s, 0.0, 1e-9 * scale);
    EXPECT_NEAR(p.gamma_s2_s, 0.0, 1e-9 * scale);
    EXPECT_LE(rel(p.gamma_s2, G3), 1e-9);
    EXPECT_LE(rel(p.gamma_s_s2, -G3), 1e-9);
    EXPECT_EQ(p.coupling_class, CouplingClass::r1);
    EXPECT_LE(rel(p.coupling_identity(), -2 * G3 * G3), 1e-9);
    EXPECT_FALSE(p.decoupling_angle.has_value());
  }
}

TEST(Interaction, Cubic100IsUncoupled) {
  for (int trial = 0; trial < 20; ++trial) {
    const auto c = oracle::random_cubic_constants();
    const auto axis = classify_axis(oracle::make_cubic(c), Directiond(1, 0, 0));
    ASSERT_TRUE(axis.pair_profile.has_value());
    const auto& p = axis.profiles[*axis.pair_profile];
    EXPECT_EQ(p.coupling_class, CouplingClass::r0);
    EXPECT_EQ(p.g.max_abs(), 0.0);
    EXPECT_TRUE(p.decoupling_angle.has_value());
    for (const auto& G : p.pair_cubic) {
      ASSERT_TRUE(G.has_value());
      EXPECT_LE(rel(*G, oracle::cubic100_g(c)), 1e-9);
    }
  }
}

TEST(Interaction, TunedMonoclinicSymmetries) {
  for (int trial = 0; trial < 50; ++trial) {
    const auto t = oracle::tuned_monoclinic(oracle::uniform(0.2, 1.3));
    const Directiond n(t.n);
    const auto modes = eigenmodes(t.mod, n);
    ASSERT_TRUE(modes.is_degenerate()) << "gap " << modes.degeneracy.gap;
    const auto d = v_derivatives(t.mod, n);
    const auto basis = pair_basis(modes);
    ASSERT_FALSE(basis.off_axis);
    const double scale = d.psi.max_abs() / std::abs(basis.speeds[0]);
    auto G = [&](int j, int p, int q) { return gamma_interaction(d, basis, j, p, q).value; };
    for (int j = 1; j <= 4; ++j)
      for (int p = 1; p <= 4; ++p)
        for (int q = 1; q <= 4; ++q) {
          // Hyperelastic symmetry in the lower indices.
          EXPECT_NEAR(G(j, p, q), G(j, q, p), 1e-10 * scale);
          // Exchanging upper and lower indices with equal speeds.
          if (j % 2 == p % 2) EXPECT_NEAR(G(j, p, q), G(p, j, q), 1e-10 * scale);
          // Odd upper index flips sign against its even partner.
          if (j % 2 == 1) EXPECT_NEAR(G(j, p, q), -G(j + 1, p, q), 1e-10 * scale);
          EXPECT_NEAR(G(j, p, q), gamma_interaction_expanded(t.mod, t.n, basis, j, p, q), 1e-10 * scale);
        }
    // Aliases: Gamma^{s+2}_{s,s} = Gamma^s_{s,s+2}, Gamma^s_{s+2,s+2} = Gamma^{s+2}_{s,s+2}, and their
    // component forms with the n.k terms that survive for quasi-transverse pairs.
    const double lam = basis.speeds[0];
    const auto cn = c3_contract_nnn(t.mod, t.n);
    const auto& k1 = basis.k[0];
    const auto& k2 = basis.k[1];
    const double a54 = k1.dot(contract(cn, k1, k2)) / (2 * lam) + 0.5 * lam * t.n.dot(k2);
    const double b54 = k1.dot(contract(cn, k2, k2)) / (2 * lam) + 0.5 * lam * t.n.dot(k1);
    EXPECT_NEAR(G(3, 1, 1), G(1, 1, 3), 1e-10 * scale);
    EXPECT_NEAR(G(3, 1, 1), a54, 1e-10 * scale);
    EXPECT_NEAR(G(1, 3, 3), G(3, 1, 3), 1e-10 * scale);
    EXPECT_NEAR(G(1, 3, 3), b54, 1e-10 * scale);
    // The g tensor collects the same numbers.
    const auto g = g_tensor(d, basis.k);
    EXPECT_NEAR(g.g112() / (2 * lam), G(3, 1, 1), 1e-10 * scale);
    EXPECT_NEAR(g.g122() / (2 * lam), G(1, 3, 3), 1e-10 * scale);
  }
}

TEST(Interaction, IndexRangeChecked) {
  const auto t = oracle::tuned_monoclinic(0.7);
  EXPECT_THROW(gamma_interaction(t.mod, Directiond(t.n), 0, 1, 1), ValidationError);
  EXPECT_THROW(gamma_interaction(t.mod, Directiond(t.n), 1, 5, 1), ValidationError);
}

TEST(Interaction, OffAxisIsFlagged) {
  const auto mod = oracle::make_cubic(oracle::random_cubic_constants());
  EXPECT_TRUE(gamma_interaction(mod, Directiond(1, 1, 0), 1, 1, 1).off_axis);
  EXPECT_FALSE(gamma_interaction(mod, Directiond(1, 1, 1), 1, 1, 1).off_axis);
}

TEST(GTensorFromModuli, RequiresDegeneratePlane) {
  const auto mod = oracle::make_cubic(oracle::random_cubic_constants());
  const Vector3<double> a = Vector3<double>(1, -1, 0).normalized(), b(0, 0, 1);
  EXPECT_THROW(g_tensor(mod, Directiond(1, 1, 0), {a, b}), ValidationError);
  const Vector3<double> c = Vector3<double>(1, -1, 0).normalized(), e = Vector3<double>(1, 1, -2).normalized();
  EXPECT_NO_THROW(g_tensor(mod, Directiond(1, 1, 1), {c, e}));
}

TEST(GTensorFromModuli, BasisRotationFollowsEq301) {
  const auto t = oracle::tuned_monoclinic(0.5);
  const Directiond n(t.n);
  const auto modes = eigenmodes(t.mod, n);
  const auto basis = pair_basis(modes).k;
  const auto g0 = g_tensor(t.mod, n, basis);
  for (double th : {-2.0, -0.3, 0.4, 1.9}) {
    const std::array<Vector3<double>, 2> rb{std::cos(th) * basis[0] + std::sin(th) * basis[1],
                                            -std::sin(th) * basis[0] + std::cos(th) * basis[1]};
    const auto direct = g_tensor(t.mod, n, rb);
    const auto rotated = rotate_g(g0, th);
    EXPECT_NEAR(direct.g111(), rotated.g111(), 1e-10 * g0.max_abs());
    EXPECT_NEAR(direct.g112(), rotated.g112(), 1e-10 * g0.max_abs());
    EXPECT_NEAR(direct.g122(), rotated.g122(), 1e-10 * g0.max_abs());
    EXPECT_NEAR(direct.g222(), rotated.g222(), 1e-10 * g0.max_abs());
  }
}

TEST(Classify, MonoclinicAxisIsTwofold) {
  for (int trial = 0; trial < 20; ++trial) {
    const auto t = oracle::tuned_monoclinic(oracle::uniform(0.2, 1.3));
    const auto axis = classify_axis(t.mod, Directiond(t.n));
    ASSERT_TRUE(axis.pair_profile.has_value());
    const auto& p = axis.profiles[*axis.pair_profile];
    EXPECT_EQ(p.coupling_class, CouplingClass::r2);
    const double scale = p.g.max_abs();
    EXPECT_NEAR(p.g.g111(), 0.0, 1e-9 * scale);
    EXPECT_NEAR(p.g.g122(), 0.0, 1e-9 * scale);
    // The mirror x1 = 0 fixes the e1 polarization as a basis vector.
    EXPECT_NEAR(std::abs(p.basis[0](0)), 1.0, 1e-9);
    EXPECT_NEAR(p.coupling_identity(), -p.mu / (4 * p.speed * p.speed), 1e-9 * std::abs(p.mu));
  }
}

TEST(Classify, SingleProfilesOffAxis) {
  const auto c = oracle::random_cubic_constants();
  const auto axis = classify_axis(oracle::make_cubic(c), Directiond(1, 1, 0));
  EXPECT_FALSE(axis.pair_profile.has_value());
  ASSERT_EQ(axis.profiles.size(), 3u);
  EXPECT_EQ(axis.profiles[0].kind, ProfileKind::quadratic_single);
  EXPECT_TRUE(axis.profiles[0].quasi_longitudinal);
  EXPECT_EQ(axis.profiles[1].kind, ProfileKind::cubic_single);
  EXPECT_EQ(axis.profiles[2].kind, ProfileKind::cubic_single);
  EXPECT_TRUE(axis.profiles[1].cubic.has_value());
}

TEST(Classify, GenericTriclinicIsQuadratic) {
  const auto axis = classify_axis(oracle::random_triclinic(), Directiond(oracle::random_unit()));
  EXPECT_FALSE(axis.pair_profile.has_value());
  for (const auto& p : axis.profiles) EXPECT_EQ(p.kind, ProfileKind::quadratic_single);
}

TEST(Classify, LongDoubleAgrees) {
  const auto c = oracle::random_cubic_constants();
  const auto mod = oracle::make_cubic(c);
  const auto a = classify_axis(mod, Directiond(1, 1, 1));
  const auto b = classify_axis(mod.cast<long double>(), Direction<long double>(1, 1, 1));
  const auto& pa = a.profiles[*a.pair_profile];
  const auto& pb = b.profiles[*b.pair_profile];
  EXPECT_EQ(pb.coupling_class, CouplingClass::r1);
  EXPECT_NEAR(static_cast<double>(pb.gamma_s2), pa.gamma_s2, 1e-12 * std::abs(pa.gamma_s2));
}
