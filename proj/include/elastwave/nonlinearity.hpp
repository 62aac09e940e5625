#pragma once

// Quadratic and cubic nonlinearity coefficients of plane elastic waves and the
// symmetry classification of degenerate (acoustic-axis) shear pairs.
//
// For plane deformations M = m (x) n the energy V(m) = W(E(m)) expands as
//
//   V = 1/2 Lambda m m + 1/6 Psi m m m + 1/24 Pi m m m m + ...
//
// With W truncated at third order in E, every tensor follows from c2 and c3:
//   Psi_ace  = c_abcdef n_b n_d n_f + v_a d_ce + v_c d_ae + v_e d_ac,   v = Lambda n
//   Pi_aceg  = (n.Lambda n)(d_ac d_eg + d_ae d_cg + d_ag d_ce) + sum_6 d_.. P_..
//   P_ac     = c_abcdef n_b n_d n_e n_f
// All tensors are divided by the density.

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "elastwave/acoustics.hpp"
#include "elastwave/errors.hpp"
#include "elastwave/gtensor.hpp"
#include "elastwave/moduli.hpp"
#include "elastwave/tensor.hpp"

namespace elastwave {

template <typename Scalar>
struct PlaneDerivatives {
  Matrix3<Scalar> lambda;
  Tensor3<Scalar> psi;
  Tensor4<Scalar> pi;
  Vector3<Scalar> n;
};

/// c_abcdef n_b n_d n_f (free indices a, c, e), divided by the density.
template <typename Scalar>
Tensor3<Scalar> c3_contract_nnn(const Moduli<Scalar>& mod, const Vector3<Scalar>& n) {
  Tensor3<Scalar> t;
  for (int a = 0; a < 3; ++a)
    for (int c = 0; c < 3; ++c)
      for (int e = 0; e < 3; ++e) {
        Scalar acc(0);
        for (int b = 0; b < 3; ++b)
          for (int d = 0; d < 3; ++d)
            for (int f = 0; f < 3; ++f) acc += mod.c3(a, b, c, d, e, f) * n(b) * n(d) * n(f);
        t(a, c, e) = acc / mod.density();
      }
  return t;
}

/// Second, third and fourth derivatives of V(m) at m = 0.
template <typename Scalar>
PlaneDerivatives<Scalar> v_derivatives(const Moduli<Scalar>& mod, const Direction<Scalar>& dir) {
  const Vector3<Scalar>& n = dir.vector();
  PlaneDerivatives<Scalar> out;
  out.n = n;
  out.lambda = christoffel(mod, dir).tensor;
  const Vector3<Scalar> v = out.lambda * n;
  const Scalar nln = n.dot(v);
  const Tensor3<Scalar> cn = c3_contract_nnn(mod, n);
  auto delta = [](int i, int j) { return i == j ? Scalar(1) : Scalar(0); };

  for (int a = 0; a < 3; ++a)
    for (int c = 0; c < 3; ++c)
      for (int e = 0; e < 3; ++e)
        out.psi(a, c, e) = cn(a, c, e) + v(a) * delta(c, e) + v(c) * delta(a, e) + v(e) * delta(a, c);

  Matrix3<Scalar> P;
  for (int a = 0; a < 3; ++a)
    for (int c = 0; c < 3; ++c) {
      Scalar acc(0);
      for (int e = 0; e < 3; ++e) acc += cn(a, c, e) * n(e);
      P(a, c) = acc;
    }
  for (int a = 0; a < 3; ++a)
    for (int c = 0; c < 3; ++c)
      for (int e = 0; e < 3; ++e)
        for (int g = 0; g < 3; ++g) {
          const Scalar geometric =
              nln * (delta(a, c) * delta(e, g) + delta(a, e) * delta(c, g) + delta(a, g) * delta(c, e));
          const Scalar mixed = delta(a, c) * P(e, g) + delta(e, g) * P(a, c) + delta(a, e) * P(c, g) +
                               delta(c, g) * P(a, e) + delta(a, g) * P(c, e) + delta(c, e) * P(a, g);
          out.pi(a, c, e, g) = geometric + mixed;
        }
  return out;
}

/// (Psi u v)_a = Psi_ace u_c v_e.
template <typename Scalar>
Vector3<Scalar> contract(const Tensor3<Scalar>& psi, const Vector3<Scalar>& u, const Vector3<Scalar>& v) {
  Vector3<Scalar> out = Vector3<Scalar>::Zero();
  for (int a = 0; a < 3; ++a)
    for (int c = 0; c < 3; ++c)
      for (int e = 0; e < 3; ++e) out(a) += psi(a, c, e) * u(c) * v(e);
  return out;
}

/// (Pi u v w)_a = Pi_aceg u_c v_e w_g.
template <typename Scalar>
Vector3<Scalar> contract(const Tensor4<Scalar>& pi, const Vector3<Scalar>& u, const Vector3<Scalar>& v,
                         const Vector3<Scalar>& w) {
  Vector3<Scalar> out = Vector3<Scalar>::Zero();
  for (int a = 0; a < 3; ++a)
    for (int c = 0; c < 3; ++c)
      for (int e = 0; e < 3; ++e)
        for (int g = 0; g < 3; ++g) out(a) += pi(a, c, e, g) * u(c) * v(e) * w(g);
  return out;
}

/// Tolerances governing degeneracy, vanishing coefficients and decoupling.
struct Tolerances {
  double degeneracy = kDegeneracyTolerance;
  double gamma_vanish = 1e-9;
  double mu = 1e-9;
  /// q-vector solves are refused above this condition number.
  double max_condition = 1e12;
};

// ---------------------------------------------------------------------------
// Quadratic coefficients

/// Gamma_s = k.Psi k k / (2 lambda_s) for mode j (descending order), lambda_s = -sqrt(alpha_j).
template <typename Scalar>
Scalar gamma_single(const PlaneDerivatives<Scalar>& d, const AcousticModeSet<Scalar>& modes, int j) {
  const Vector3<Scalar> k = modes.polarization(j);
  return k.dot(contract(d.psi, k, k)) / (Scalar(2) * modes.speed(j));
}

template <typename Scalar>
Scalar gamma_single(const Moduli<Scalar>& mod, const Direction<Scalar>& n, int j,
                    Scalar reltol = Scalar(kDegeneracyTolerance)) {
  return gamma_single(v_derivatives(mod, n), eigenmodes(mod, n, reltol), j);
}

/// Component form: c_abcdef n_b n_d n_f k_a k_c k_e / (2 lambda_s) + 3/2 lambda_s n.k.
template <typename Scalar>
Scalar gamma_single_expanded(const Moduli<Scalar>& mod, const AcousticModeSet<Scalar>& modes, int j) {
  const Vector3<Scalar> k = modes.polarization(j);
  const Tensor3<Scalar> cn = c3_contract_nnn(mod, modes.n);
  const Scalar lam = modes.speed(j);
  return k.dot(contract(cn, k, k)) / (Scalar(2) * lam) + Scalar(1.5) * lam * modes.n.dot(k);
}

/// Polarization pair spanning a degenerate plane, plus their common (negative) speed.
template <typename Scalar>
struct PairBasis {
  std::array<Vector3<Scalar>, 2> k;
  std::array<Scalar, 2> speeds;
  bool off_axis = false;
};

/// The pair basis of `modes`: the canonical degenerate basis on an acoustic axis, or the
/// two modes other than the most longitudinal one (flagged off-axis) otherwise.
template <typename Scalar>
PairBasis<Scalar> pair_basis(const AcousticModeSet<Scalar>& modes) {
  PairBasis<Scalar> out;
  std::array<int, 2> idx = modes.degeneracy.pair;
  if (!modes.is_degenerate()) {
    out.off_axis = true;
    const int l = modes.most_longitudinal();
    int c = 0;
    for (int j = 0; j < 3; ++j)
      if (j != l) idx[c++] = j;
  }
  for (int i = 0; i < 2; ++i) {
    out.k[i] = modes.polarization(idx[i]);
    out.speeds[i] = modes.speed(idx[i]);
  }
  return out;
}

template <typename Scalar>
struct Flagged {
  Scalar value;
  bool off_axis;
};

/// Gamma^j_{p,q} for the degenerate-pair indices j, p, q in 1..4: index i refers to the
/// pair member floor((i+1)/2) with speed -sqrt(alpha) for odd i and +sqrt(alpha) for even i.
template <typename Scalar>
Flagged<Scalar> gamma_interaction(const PlaneDerivatives<Scalar>& d, const PairBasis<Scalar>& basis,
                                  int j, int p, int q) {
  for (int i : {j, p, q})
    if (i < 1 || i > 4) throw ValidationError("interaction index out of range 1..4");
  auto member = [](int i) { return (i + 1) / 2 - 1; };
  const Scalar lam = (j % 2 == 1) ? basis.speeds[member(j)] : -basis.speeds[member(j)];
  const Vector3<Scalar>& kj = basis.k[member(j)];
  const Scalar value =
      kj.dot(contract(d.psi, basis.k[member(p)], basis.k[member(q)])) / (Scalar(2) * lam);
  return {value, basis.off_axis};
}

template <typename Scalar>
Flagged<Scalar> gamma_interaction(const Moduli<Scalar>& mod, const Direction<Scalar>& n, int j, int p,
                                  int q, Scalar reltol = Scalar(kDegeneracyTolerance)) {
  return gamma_interaction(v_derivatives(mod, n), pair_basis(eigenmodes(mod, n, reltol)), j, p, q);
}

/// Component form of Gamma^j_{p,q}: the c3 contraction plus the c2 terms
/// c_abcd n_b n_c n_d (k^j_a d_pq + k^p_a d_jq + k^q_a d_jp), over 2 lambda_j.
template <typename Scalar>
Scalar gamma_interaction_expanded(const Moduli<Scalar>& mod, const Vector3<Scalar>& n,
                                  const PairBasis<Scalar>& basis, int j, int p, int q) {
  auto member = [](int i) { return (i + 1) / 2 - 1; };
  const Scalar lam = (j % 2 == 1) ? basis.speeds[member(j)] : -basis.speeds[member(j)];
  const Tensor3<Scalar> cn = c3_contract_nnn(mod, n);
  Vector3<Scalar> v = Vector3<Scalar>::Zero();
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int e = 0; e < 3; ++e) v(a) += mod.c2(a, b, c, e) * n(b) * n(c) * n(e);
  v /= mod.density();
  const auto& kj = basis.k[member(j)];
  const auto& kp = basis.k[member(p)];
  const auto& kq = basis.k[member(q)];
  const Scalar c3part = kj.dot(contract(cn, kp, kq));
  const Scalar c2part = v.dot(kj) * kp.dot(kq) + v.dot(kp) * kj.dot(kq) + v.dot(kq) * kj.dot(kp);
  return (c3part + c2part) / (Scalar(2) * lam);
}

/// g_abc = k_a . Psi k_b k_c in the given plane basis (no degeneracy check).
template <typename Scalar>
GTensor<Scalar> g_tensor(const PlaneDerivatives<Scalar>& d, const std::array<Vector3<Scalar>, 2>& k) {
  const Vector3<Scalar> p11 = contract(d.psi, k[0], k[0]);
  const Vector3<Scalar> p22 = contract(d.psi, k[1], k[1]);
  return GTensor<Scalar>(k[0].dot(p11), k[1].dot(p11), k[0].dot(p22), k[1].dot(p22));
}

/// Relative departure of `k` from spanning a degenerate eigenplane of Lambda.
template <typename Scalar>
Scalar plane_degeneracy_gap(const Matrix3<Scalar>& lambda, const std::array<Vector3<Scalar>, 2>& k) {
  using std::abs;
  const Scalar a11 = k[0].dot(lambda * k[0]), a22 = k[1].dot(lambda * k[1]);
  const Scalar a12 = k[0].dot(lambda * k[1]);
  Scalar resid = std::max(abs(a11 - a22), Scalar(2) * abs(a12));
  for (int i = 0; i < 2; ++i) resid = std::max(resid, (lambda * k[i] - (k[i].dot(lambda * k[i])) * k[i]).norm());
  const Scalar scale = lambda.template selfadjointView<Eigen::Upper>().eigenvalues().cwiseAbs().maxCoeff();
  return resid / scale;
}

/// g in a caller-supplied orthonormal basis of the degenerate plane at n.
/// Throws ValidationError when n is not an acoustic axis for that plane.
template <typename Scalar>
GTensor<Scalar> g_tensor(const Moduli<Scalar>& mod, const Direction<Scalar>& n,
                         const std::array<Vector3<Scalar>, 2>& basis,
                         Scalar reltol = Scalar(kDegeneracyTolerance)) {
  const auto d = v_derivatives(mod, n);
  const Scalar gap = plane_degeneracy_gap(d.lambda, basis);
  if (gap > reltol) {
    std::ostringstream os;
    os << "g_tensor: basis does not span a degenerate plane (relative gap " << static_cast<double>(gap)
       << ")";
    throw ValidationError(os.str());
  }
  return g_tensor(d, basis);
}

// ---------------------------------------------------------------------------
// Cubic coefficient of single waves with vanishing Gamma_s

template <typename Scalar>
struct QSolution {
  Vector3<Scalar> q;
  Scalar condition;
};

/// Solves (Lambda - lambda_s^2 I) q = -Psi k k with q orthogonal to every polarization
/// sharing the eigenvalue of mode j. The components of Psi k k along a degenerate
/// partner must vanish, otherwise the pair is coupled at quadratic order and the
/// single-wave cubic scaling does not apply.
template <typename Scalar>
QSolution<Scalar> q_vector(const PlaneDerivatives<Scalar>& d, const AcousticModeSet<Scalar>& modes, int j,
                           const Tolerances& tol = {}) {
  using std::abs;
  const Vector3<Scalar> k = modes.polarization(j);
  const Vector3<Scalar> rhs = contract(d.psi, k, k);
  const Scalar top = modes.alphas.maxCoeff();
  const Scalar psi_scale = d.psi.max_abs();
  QSolution<Scalar> out{Vector3<Scalar>::Zero(), Scalar(1)};
  Scalar gap_max(0), gap_min(0);
  bool have_gap = false;
  for (int i = 0; i < 3; ++i) {
    if (i == j) continue;
    const Vector3<Scalar> ki = modes.polarization(i);
    const Scalar gap = modes.alphas(i) - modes.alphas(j);
    const Scalar proj = ki.dot(rhs);
    if (abs(gap) <= Scalar(tol.degeneracy) * top) {
      if (abs(proj) > Scalar(tol.gamma_vanish) * psi_scale) {
        std::ostringstream os;
        os << "q_vector: mode " << j << " is degenerate with mode " << i
           << " and couples to it at quadratic order; use the coupled-pair analysis";
        throw NumericalError(os.str());
      }
      continue;
    }
    out.q -= (proj / gap) * ki;
    if (!have_gap) {
      gap_max = gap_min = abs(gap);
      have_gap = true;
    } else {
      gap_max = std::max(gap_max, abs(gap));
      gap_min = std::min(gap_min, abs(gap));
    }
  }
  if (have_gap) out.condition = gap_max / gap_min;
  if (out.condition > Scalar(tol.max_condition))
    throw NumericalError("q_vector: restricted operator is too ill-conditioned");
  return out;
}

template <typename Scalar>
struct CubicCoefficient {
  Scalar value;
  Vector3<Scalar> q;
  Scalar condition;
  /// Gamma_s of the same mode; when it does not vanish the quadratic term dominates.
  Scalar gamma_s;
  bool quadratic_dominates;
};

/// G_s = k.(3 Psi k q + Pi k k k) / (4 lambda_s): the cubic speed shift of a simple wave
/// whose off-polarization strain is slaved as m = sigma k + sigma^2 q / 2.
template <typename Scalar>
CubicCoefficient<Scalar> g_cubic_coefficient(const PlaneDerivatives<Scalar>& d,
                                             const AcousticModeSet<Scalar>& modes, int j,
                                             const Tolerances& tol = {}) {
  using std::abs;
  const auto qs = q_vector(d, modes, j, tol);
  const Vector3<Scalar> k = modes.polarization(j);
  const Scalar lam = modes.speed(j);
  const Scalar value =
      k.dot(Scalar(3) * contract(d.psi, k, qs.q) + contract(d.pi, k, k, k)) / (Scalar(4) * lam);
  const Scalar gs = gamma_single(d, modes, j);
  const bool dominates = abs(gs) > Scalar(tol.gamma_vanish) * d.psi.max_abs() / (Scalar(2) * abs(lam));
  return {value, qs.q, qs.condition, gs, dominates};
}

template <typename Scalar>
CubicCoefficient<Scalar> g_cubic_coefficient(const Moduli<Scalar>& mod, const Direction<Scalar>& n, int j,
                                             const Tolerances& tol = {}) {
  return g_cubic_coefficient(v_derivatives(mod, n), eigenmodes(mod, n, Scalar(tol.degeneracy)), j, tol);
}

// ---------------------------------------------------------------------------
// Profiles and classification

enum class ProfileKind { quadratic_single, cubic_single, degenerate_pair };
enum class CouplingClass { none, r0, r1, r2, r4, decoupled_by_identity };

inline const char* to_string(ProfileKind k) {
  switch (k) {
    case ProfileKind::quadratic_single: return "quadratic_single";
    case ProfileKind::cubic_single: return "cubic_single";
    default: return "degenerate_pair";
  }
}

inline const char* to_string(CouplingClass c) {
  switch (c) {
    case CouplingClass::r0: return "r0";
    case CouplingClass::r1: return "r1";
    case CouplingClass::r2: return "r2";
    case CouplingClass::r4: return "r4";
    case CouplingClass::decoupled_by_identity: return "decoupled_by_identity";
    default: return "none";
  }
}

template <typename Scalar>
struct NonlinearityProfile {
  ProfileKind kind = ProfileKind::quadratic_single;
  /// Mode indices into the AcousticModeSet; (s, s+2) order for pairs.
  std::vector<int> modes;
  /// lambda_s (negative root).
  Scalar speed = Scalar(0);
  bool quasi_longitudinal = false;

  // Quadratic coefficients. Single waves use gamma_s only. For pairs these are
  // Gamma_s, Gamma^{s+2}_s, Gamma^s_{s+2}, Gamma_{s+2} in the selected basis.
  Scalar gamma_s = Scalar(0);
  Scalar gamma_s_s2 = Scalar(0);
  Scalar gamma_s2_s = Scalar(0);
  Scalar gamma_s2 = Scalar(0);

  /// G_s of a single wave whose Gamma_s vanishes.
  std::optional<Scalar> cubic;
  /// G_s of each pair member when the pair carries no quadratic coupling.
  std::array<std::optional<Scalar>, 2> pair_cubic;

  // Degenerate-pair data.
  std::array<Vector3<Scalar>, 2> canonical_basis{};
  std::array<Vector3<Scalar>, 2> basis{};
  /// Rotation from the canonical basis to `basis`.
  Scalar basis_angle = Scalar(0);
  GTensor<Scalar> g_canonical;
  GTensor<Scalar> g;
  Scalar mu = Scalar(0);
  Scalar gamma1 = Scalar(0);
  Scalar gamma3 = Scalar(0);
  std::optional<Scalar> decoupling_angle;
  CouplingClass coupling_class = CouplingClass::none;
  /// max |n.k| over the pair polarizations; nonzero for quasi-transverse pairs.
  Scalar transverse_tilt = Scalar(0);

  std::vector<std::string> notes;

  /// Left side of the decoupling identity in Gamma units:
  /// Gamma_s Gamma^s_{s+2} + Gamma_{s+2} Gamma^{s+2}_s - (Gamma^s_{s+2})^2 - (Gamma^{s+2}_s)^2.
  Scalar coupling_identity() const {
    return gamma_s * gamma_s2_s + gamma_s2 * gamma_s_s2 - gamma_s2_s * gamma_s2_s - gamma_s_s2 * gamma_s_s2;
  }
};

template <typename Scalar>
struct AxisAnalysis {
  AcousticModeSet<Scalar> modes;
  std::vector<NonlinearityProfile<Scalar>> profiles;
  /// Profile index of the degenerate pair, if any.
  std::optional<std::size_t> pair_profile;
};

namespace detail {

template <typename Scalar>
NonlinearityProfile<Scalar> single_profile(const PlaneDerivatives<Scalar>& d,
                                           const AcousticModeSet<Scalar>& modes, int j, const Tolerances& tol) {
  using std::abs;
  NonlinearityProfile<Scalar> p;
  p.modes = {j};
  p.speed = modes.speed(j);
  p.quasi_longitudinal = (j == modes.most_longitudinal());
  p.gamma_s = gamma_single(d, modes, j);
  const Scalar vanish = Scalar(tol.gamma_vanish) * d.psi.max_abs() / (Scalar(2) * abs(p.speed));
  if (abs(p.gamma_s) <= vanish) {
    p.kind = ProfileKind::cubic_single;
    try {
      p.cubic = g_cubic_coefficient(d, modes, j, tol).value;
    } catch (const NumericalError& e) {
      p.notes.push_back(e.what());
    }
  } else {
    p.kind = ProfileKind::quadratic_single;
  }
  return p;
}

template <typename Scalar>
NonlinearityProfile<Scalar> pair_profile(const PlaneDerivatives<Scalar>& d, const AcousticModeSet<Scalar>& modes,
                                         Scalar stress_scale, const Tolerances& tol) {
  using std::abs;
  NonlinearityProfile<Scalar> p;
  p.kind = ProfileKind::degenerate_pair;
  const auto& deg = modes.degeneracy;
  p.modes = {deg.pair[0], deg.pair[1]};
  p.speed = modes.speed(deg.pair[0]);
  p.canonical_basis = {modes.polarization(deg.pair[0]), modes.polarization(deg.pair[1])};
  p.g_canonical = g_tensor(d, p.canonical_basis);
  p.transverse_tilt = std::max(abs(modes.n.dot(p.canonical_basis[0])), abs(modes.n.dot(p.canonical_basis[1])));
  if (p.transverse_tilt > Scalar(1e-9))
    p.notes.push_back("quasi-transverse pair: polarizations are tilted away from the wave plane");

  const Scalar vt = Scalar(tol.gamma_vanish);
  if (p.g_canonical.max_abs() <= vt * stress_scale) {
    p.g = GTensor<Scalar>();
    p.basis = p.canonical_basis;
    p.coupling_class = CouplingClass::r0;
  } else {
    p.basis_angle = best_basis_angle(p.g_canonical);
    p.g = rotate_g(p.g_canonical, p.basis_angle);
    using std::cos;
    using std::sin;
    const Scalar c = cos(p.basis_angle), s = sin(p.basis_angle);
    p.basis = {c * p.canonical_basis[0] + s * p.canonical_basis[1],
               -s * p.canonical_basis[0] + c * p.canonical_basis[1]};
    const Scalar scale = p.g.max_abs();
    auto zero = [&](Scalar x) { return abs(x) <= vt * scale; };
    if (zero(p.g.g111()) && zero(p.g.g122()))
      p.coupling_class = zero(p.g.g112() + p.g.g222()) ? CouplingClass::r1 : CouplingClass::r2;
    else
      p.coupling_class = CouplingClass::r4;
  }

  const auto parts = decompose_g(p.g);
  p.gamma1 = parts.gamma1;
  p.gamma3 = parts.gamma3;
  const auto dec = decoupling_invariant(p.g, Scalar(tol.mu));
  p.mu = dec.mu;
  if (dec.decoupled) p.decoupling_angle = dec.theta_star;
  if (dec.decoupled && (p.coupling_class == CouplingClass::r2 || p.coupling_class == CouplingClass::r4))
    p.coupling_class = CouplingClass::decoupled_by_identity;

  const Scalar two_lam = Scalar(2) * p.speed;
  p.gamma_s = p.g.g111() / two_lam;
  p.gamma_s_s2 = p.g.g112() / two_lam;
  p.gamma_s2_s = p.g.g122() / two_lam;
  p.gamma_s2 = p.g.g222() / two_lam;

  if (p.coupling_class == CouplingClass::r0) {
    for (int i = 0; i < 2; ++i) {
      try {
        p.pair_cubic[i] = g_cubic_coefficient(d, modes, p.modes[i], tol).value;
      } catch (const NumericalError& e) {
        p.notes.push_back(e.what());
      }
    }
  }
  return p;
}

}  // namespace detail

/// Full nonlinear characterization of plane waves along n: one profile per
/// non-degenerate mode and one for the degenerate pair when n is an acoustic axis.
template <typename Scalar>
AxisAnalysis<Scalar> classify_axis(const Moduli<Scalar>& mod, const Direction<Scalar>& n,
                                   const Tolerances& tol = {}) {
  AxisAnalysis<Scalar> out;
  out.modes = eigenmodes(mod, n, Scalar(tol.degeneracy));
  const auto d = v_derivatives(mod, n);
  const auto& deg = out.modes.degeneracy;
  for (int j = 0; j < 3; ++j) {
    if (deg.kind != DegeneracyKind::none && (j == deg.pair[0] || j == deg.pair[1])) continue;
    out.profiles.push_back(detail::single_profile(d, out.modes, j, tol));
  }
  if (deg.kind != DegeneracyKind::none) {
    out.pair_profile = out.profiles.size();
    out.profiles.push_back(detail::pair_profile(d, out.modes, mod.stress_scale() / mod.density(), tol));
  }
  return out;
}

}  // namespace elastwave
