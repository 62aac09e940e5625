#pragma once

// Elastic constants of a hyperelastic solid expanded to third order in the
// Green-Lagrange strain, plus the strain/energy evaluations built on them.
//
//   W(E) = 1/2 c_abcd E_ab E_cd + 1/6 c_abcdef E_ab E_cd E_ef
//
// Storage is Voigt: second-order constants as a symmetric 6x6 matrix and
// third-order constants as the 56 sorted triplets c_IJK (I <= J <= K), with
// (11,22,33,23,13,12) -> (0..5). Stored values are tensor components; factors
// of two for shear strains are applied only inside the contraction routines.

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "elastwave/errors.hpp"
#include "elastwave/tensor.hpp"

namespace elastwave {

enum class Symmetry { triclinic, isotropic, cubic_m3m };

inline const char* to_string(Symmetry s) {
  switch (s) {
    case Symmetry::isotropic: return "isotropic";
    case Symmetry::cubic_m3m: return "cubic_m3m";
    default: return "triclinic";
  }
}

/// Smallest Voigt eigenvalue must exceed this fraction of the largest.
inline constexpr double kDefinitenessTolerance = 1e-10;

/// Unit propagation direction. Construction normalizes; the zero vector is rejected.
template <typename Scalar>
class Direction {
 public:
  explicit Direction(const Vector3<Scalar>& v) {
    using std::isfinite;
    const Scalar len = v.norm();
    if (!(len > Scalar(0)) || !isfinite(static_cast<double>(len)))
      throw ValidationError("direction must be a nonzero finite vector");
    n_ = v / len;
  }
  Direction(Scalar x, Scalar y, Scalar z) : Direction(Vector3<Scalar>(x, y, z)) {}

  const Vector3<Scalar>& vector() const { return n_; }
  Scalar operator()(int i) const { return n_(i); }

 private:
  Vector3<Scalar> n_;
};

/// Symmetric strain tensor stored as its six independent components.
template <typename Scalar>
class StrainState {
 public:
  StrainState() : v_(Vector6<Scalar>::Zero()) {}
  explicit StrainState(const Vector6<Scalar>& components) : v_(components) {}
  /// Uses the upper triangle of `t`.
  static StrainState from_tensor(const Matrix3<Scalar>& t) {
    Matrix3<Scalar> upper = t.template triangularView<Eigen::Upper>();
    Matrix3<Scalar> sym = upper + upper.transpose();
    sym.diagonal() = t.diagonal();
    return StrainState(to_voigt<Scalar>(sym));
  }

  const Vector6<Scalar>& components() const { return v_; }
  Matrix3<Scalar> tensor() const { return from_voigt<Scalar>(v_); }

  /// Engineering form [E11, E22, E33, 2E23, 2E13, 2E12].
  Vector6<Scalar> engineering() const {
    Vector6<Scalar> e = v_;
    e.template tail<3>() *= Scalar(2);
    return e;
  }

 private:
  Vector6<Scalar> v_;
};

template <typename Scalar>
class Moduli {
 public:
  using C3Storage = std::array<Scalar, voigt::kTripletCount>;

  Moduli(const Matrix6<Scalar>& c2, const C3Storage& c3, Scalar density = Scalar(1),
         std::string name = {}, Symmetry symmetry = Symmetry::triclinic)
      : c2_(c2), c3_(c3), density_(density), name_(std::move(name)), symmetry_(symmetry) {
    if (!(density_ > Scalar(0))) throw ValidationError("density must be positive");
    const Scalar scale = c2_.cwiseAbs().maxCoeff();
    for (int i = 0; i < 6; ++i)
      for (int j = i + 1; j < 6; ++j) {
        using std::abs;
        if (abs(c2_(i, j) - c2_(j, i)) > Scalar(1e-12) * scale) {
          std::ostringstream os;
          os << "c2 entry (" << i + 1 << j + 1 << ") = " << static_cast<double>(c2_(i, j))
             << " differs from (" << j + 1 << i + 1 << ") = " << static_cast<double>(c2_(j, i));
          throw SymmetryError(os.str());
        }
      }
    c2_ = Scalar(0.5) * (c2_ + c2_.transpose()).eval();
    check_definite();
  }

  const Matrix6<Scalar>& c2() const { return c2_; }
  const C3Storage& c3() const { return c3_; }
  Scalar c3(int I, int J, int K) const { return c3_[voigt::triplet_slot(I, J, K)]; }
  Scalar density() const { return density_; }
  const std::string& name() const { return name_; }
  Symmetry symmetry() const { return symmetry_; }

  Scalar c2(int a, int b, int c, int d) const { return c2_(voigt::index(a, b), voigt::index(c, d)); }
  Scalar c3(int a, int b, int c, int d, int e, int f) const {
    return c3(voigt::index(a, b), voigt::index(c, d), voigt::index(e, f));
  }

  Tensor4<Scalar> c2_tensor() const {
    Tensor4<Scalar> t;
    for (std::size_t i = 0; i < Tensor4<Scalar>::kSize; ++i) {
      auto id = Tensor4<Scalar>::unflatten(i);
      t[i] = c2(id[0], id[1], id[2], id[3]);
    }
    return t;
  }

  Tensor6<Scalar> c3_tensor() const {
    Tensor6<Scalar> t;
    for (std::size_t i = 0; i < Tensor6<Scalar>::kSize; ++i) {
      auto id = Tensor6<Scalar>::unflatten(i);
      t[i] = c3(id[0], id[1], id[2], id[3], id[4], id[5]);
    }
    return t;
  }

  /// Largest absolute elastic constant; the reference scale for "zero" tests.
  Scalar stress_scale() const {
    Scalar m = c2_.cwiseAbs().maxCoeff();
    for (const auto& v : c3_) {
      using std::abs;
      m = std::max<Scalar>(m, abs(v));
    }
    return m;
  }

  Moduli with_name(std::string name, Symmetry symmetry) const {
    Moduli out = *this;
    out.name_ = std::move(name);
    out.symmetry_ = symmetry;
    return out;
  }

  template <typename Other>
  Moduli<Other> cast() const {
    typename Moduli<Other>::C3Storage c3;
    for (int i = 0; i < voigt::kTripletCount; ++i) c3[i] = static_cast<Other>(c3_[i]);
    return Moduli<Other>(c2_.template cast<Other>(), c3, static_cast<Other>(density_), name_,
                         symmetry_);
  }

 private:
  void check_definite() const {
    Eigen::SelfAdjointEigenSolver<Matrix6<Scalar>> es(c2_, Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    const Scalar largest = ev.cwiseAbs().maxCoeff();
    if (!(ev(0) > Scalar(kDefinitenessTolerance) * largest)) {
      std::ostringstream os;
      os << "second-order moduli are not positive definite: smallest Voigt eigenvalue "
         << static_cast<double>(ev(0)) << " vs largest " << static_cast<double>(ev(5));
      throw DefinitenessError(os.str());
    }
  }

  Matrix6<Scalar> c2_;
  C3Storage c3_;
  Scalar density_;
  std::string name_;
  Symmetry symmetry_;
};

using Modulid = Moduli<double>;
using Directiond = Direction<double>;
using StrainStated = StrainState<double>;

/// Green-Lagrange strain of the plane deformation M = m (x) n:
/// E = 1/2 (m n^T + n m^T) + 1/2 |m|^2 n n^T.
template <typename Scalar>
StrainState<Scalar> strain_from_gradient(const Vector3<Scalar>& m, const Direction<Scalar>& n) {
  const Vector3<Scalar>& nv = n.vector();
  Matrix3<Scalar> E = Scalar(0.5) * (m * nv.transpose() + nv * m.transpose()) +
                      Scalar(0.5) * m.squaredNorm() * (nv * nv.transpose());
  return StrainState<Scalar>(to_voigt<Scalar>(E));
}

/// The part of strain_from_gradient linear in m.
template <typename Scalar>
StrainState<Scalar> linearized_strain(const Vector3<Scalar>& m, const Direction<Scalar>& n) {
  const Vector3<Scalar>& nv = n.vector();
  Matrix3<Scalar> E = Scalar(0.5) * (m * nv.transpose() + nv * m.transpose());
  return StrainState<Scalar>(to_voigt<Scalar>(E));
}

/// c_abcd E_ab E_cd.
template <typename Scalar>
Scalar quadratic_form(const Moduli<Scalar>& mod, const StrainState<Scalar>& E) {
  const Vector6<Scalar> e = E.engineering();
  return e.dot(mod.c2() * e);
}

/// c_abcdef E_ab E_cd E_ef.
template <typename Scalar>
Scalar cubic_form(const Moduli<Scalar>& mod, const StrainState<Scalar>& E) {
  const Vector6<Scalar> e = E.engineering();
  Scalar acc(0);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      const Scalar eij = e(i) * e(j);
      for (int k = 0; k < 6; ++k) acc += mod.c3(i, j, k) * eij * e(k);
    }
  return acc;
}

/// Strain energy per unit reference volume, truncated at third order.
template <typename Scalar>
Scalar strain_energy(const Moduli<Scalar>& mod, const StrainState<Scalar>& E) {
  return Scalar(0.5) * quadratic_form(mod, E) + cubic_form(mod, E) / Scalar(6);
}

namespace detail {

/// Third-order storage for the m3m pattern. Also covers isotropy.
template <typename Scalar>
typename Moduli<Scalar>::C3Storage cubic_c3(Scalar c111, Scalar c112, Scalar c123, Scalar c144,
                                            Scalar c166, Scalar c456) {
  typename Moduli<Scalar>::C3Storage c3;
  c3.fill(Scalar(0));
  auto set = [&](int I, int J, int K, Scalar v) { c3[voigt::triplet_slot(I - 1, J - 1, K - 1)] = v; };
  for (int i = 1; i <= 3; ++i) set(i, i, i, c111);
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j)
      if (i != j) set(i, i, j, c112);
  set(1, 2, 3, c123);
  // c144 = c255 = c366: normal index i with the shear on the axis i.
  for (int i = 1; i <= 3; ++i) set(i, i + 3, i + 3, c144);
  // c166 = c155 = c244 = c266 = c344 = c355.
  for (int i = 1; i <= 3; ++i)
    for (int s = 4; s <= 6; ++s)
      if (s != i + 3) set(i, s, s, c166);
  set(4, 5, 6, c456);
  return c3;
}

}  // namespace detail

/// Isotropic solid from the Lame constants and the Murnaghan constants (l, m, n):
/// W = 1/2 (L+2M) I^2 - 2M II + 1/3 (l+2m) I^3 - 2m I II + n III.
template <typename Scalar>
Moduli<Scalar> make_isotropic(Scalar lame_lambda, Scalar lame_mu, Scalar l, Scalar m, Scalar n,
                              Scalar density = Scalar(1)) {
  if (!(lame_mu > Scalar(0)) || !(Scalar(3) * lame_lambda + Scalar(2) * lame_mu > Scalar(0)))
    throw DefinitenessError("isotropic moduli require mu > 0 and 3 lambda + 2 mu > 0");
  Matrix6<Scalar> c2 = Matrix6<Scalar>::Zero();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) c2(i, j) = lame_lambda;
  for (int i = 0; i < 3; ++i) c2(i, i) = lame_lambda + Scalar(2) * lame_mu;
  for (int i = 3; i < 6; ++i) c2(i, i) = lame_mu;

  const Scalar c111 = Scalar(2) * l + Scalar(4) * m;
  const Scalar c112 = Scalar(2) * l;
  const Scalar c123 = Scalar(2) * l - Scalar(2) * m + n;
  const Scalar c144 = (c112 - c123) / Scalar(2);
  const Scalar c166 = (c111 - c112) / Scalar(4);
  const Scalar c456 = (c111 - Scalar(3) * c112 + Scalar(2) * c123) / Scalar(8);
  return Moduli<Scalar>(c2, detail::cubic_c3(c111, c112, c123, c144, c166, c456), density,
                        "isotropic", Symmetry::isotropic);
}

/// Cubic crystal of class m3m referred to its cube axes.
template <typename Scalar>
Moduli<Scalar> make_cubic_m3m(Scalar c11, Scalar c12, Scalar c44, Scalar c111, Scalar c112,
                              Scalar c144, Scalar c123, Scalar c166, Scalar c456,
                              Scalar density = Scalar(1)) {
  Matrix6<Scalar> c2 = Matrix6<Scalar>::Zero();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) c2(i, j) = (i == j) ? c11 : c12;
  for (int i = 3; i < 6; ++i) c2(i, i) = c44;
  return Moduli<Scalar>(c2, detail::cubic_c3(c111, c112, c123, c144, c166, c456), density,
                        "cubic_m3m", Symmetry::cubic_m3m);
}

template <typename Scalar>
bool is_orthogonal(const Matrix3<Scalar>& R, Scalar tol = Scalar(1e-12)) {
  return ((R.transpose() * R - Matrix3<Scalar>::Identity()).cwiseAbs().maxCoeff() <= tol);
}

/// c'_abcd = R_ap R_bq R_cr R_ds c_pqrs and likewise for the sixth-rank constants.
/// Improper orthogonal matrices (reflections) are accepted.
template <typename Scalar>
Moduli<Scalar> rotate_moduli(const Moduli<Scalar>& mod, const Matrix3<Scalar>& R) {
  if (!is_orthogonal(R)) throw ValidationError("rotate_moduli: matrix is not orthogonal");
  const Tensor4<Scalar> c2 = rotate_tensor(mod.c2_tensor(), R);
  const Tensor6<Scalar> c3 = rotate_tensor(mod.c3_tensor(), R);
  Matrix6<Scalar> v2;
  for (int I = 0; I < 6; ++I)
    for (int J = 0; J < 6; ++J) {
      auto [a, b] = voigt::kPairs[I];
      auto [c, d] = voigt::kPairs[J];
      v2(I, J) = c2(a, b, c, d);
    }
  v2 = (Scalar(0.5) * (v2 + v2.transpose())).eval();
  typename Moduli<Scalar>::C3Storage v3;
  for (int t = 0; t < voigt::kTripletCount; ++t) {
    auto [I, J, K] = voigt::kTriplets[t];
    auto [a, b] = voigt::kPairs[I];
    auto [c, d] = voigt::kPairs[J];
    auto [e, f] = voigt::kPairs[K];
    v3[t] = c3(a, b, c, d, e, f);
  }
  return Moduli<Scalar>(v2, v3, mod.density(), mod.name(), mod.symmetry());
}

/// Rotation by `angle` about the unit axis `axis` (right-hand rule).
template <typename Scalar>
Matrix3<Scalar> axis_rotation(const Vector3<Scalar>& axis, Scalar angle) {
  return Eigen::AngleAxis<Scalar>(angle, axis.normalized()).toRotationMatrix();
}

}  // namespace elastwave
