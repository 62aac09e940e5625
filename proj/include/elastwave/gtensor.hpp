#pragma once

// Totally symmetric third-order tensor in two dimensions. It collects the
// quadratic interaction coefficients of a degenerate pair of plane waves:
//
//   g_abc = k_a . Psi k_b k_c,     Gamma^j_{p,q} = g_{[j][p][q]} / (2 lambda_j)
//
// where k_1, k_2 span the degenerate polarization plane. Only four components
// are independent: g111, g112, g122, g222.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace elastwave {

template <typename Scalar>
class GTensor {
 public:
  GTensor() = default;
  GTensor(Scalar g111, Scalar g112, Scalar g122, Scalar g222) : c_{g111, g112, g122, g222} {}

  /// Component with 0-based indices in {0, 1}; only the count of 1s matters.
  Scalar operator()(int a, int b, int c) const { return c_[a + b + c]; }

  Scalar g111() const { return c_[0]; }
  Scalar g112() const { return c_[1]; }
  Scalar g122() const { return c_[2]; }
  Scalar g222() const { return c_[3]; }

  /// (g111, g222, g112, g122), the ordering of the rotation matrix.
  Eigen::Matrix<Scalar, 4, 1> packed() const {
    return Eigen::Matrix<Scalar, 4, 1>(c_[0], c_[3], c_[1], c_[2]);
  }
  static GTensor from_packed(const Eigen::Matrix<Scalar, 4, 1>& p) {
    return GTensor(p(0), p(2), p(3), p(1));
  }

  Scalar max_abs() const {
    using std::abs;
    return std::max({abs(c_[0]), abs(c_[1]), abs(c_[2]), abs(c_[3])});
  }

  /// t_a = g_abb.
  Eigen::Matrix<Scalar, 2, 1> trace() const {
    return Eigen::Matrix<Scalar, 2, 1>(c_[0] + c_[2], c_[1] + c_[3]);
  }

  /// g_abc g_abc.
  Scalar squared_norm() const {
    return c_[0] * c_[0] + Scalar(3) * c_[1] * c_[1] + Scalar(3) * c_[2] * c_[2] + c_[3] * c_[3];
  }

  GTensor operator+(const GTensor& o) const {
    return GTensor(c_[0] + o.c_[0], c_[1] + o.c_[1], c_[2] + o.c_[2], c_[3] + o.c_[3]);
  }
  GTensor operator-(const GTensor& o) const {
    return GTensor(c_[0] - o.c_[0], c_[1] - o.c_[1], c_[2] - o.c_[2], c_[3] - o.c_[3]);
  }
  GTensor operator*(Scalar s) const { return GTensor(s * c_[0], s * c_[1], s * c_[2], s * c_[3]); }
  GTensor operator-() const { return *this * Scalar(-1); }

 private:
  std::array<Scalar, 4> c_{};
};

using GTensord = GTensor<double>;

/// Components of g in the basis k1' = c k1 + s k2, k2' = -s k1 + c k2.
template <typename Scalar>
Eigen::Matrix<Scalar, 4, 4> g_rotation_matrix(Scalar theta) {
  using std::cos;
  using std::sin;
  const Scalar c = cos(theta), s = sin(theta);
  Eigen::Matrix<Scalar, 4, 4> M;
  // clang-format off
  M << c*c*c,   s*s*s,   3*c*c*s,           3*c*s*s,
       -s*s*s,  c*c*c,   3*c*s*s,           -3*c*c*s,
       -c*c*s,  c*s*s,   c*c*c - 2*c*s*s,   2*c*c*s - s*s*s,
       c*s*s,   c*c*s,   s*s*s - 2*c*c*s,   c*c*c - 2*c*s*s;
  // clang-format on
  return M;
}

template <typename Scalar>
GTensor<Scalar> rotate_g(const GTensor<Scalar>& g, Scalar theta) {
  return GTensor<Scalar>::from_packed(g_rotation_matrix(theta) * g.packed());
}

/// d g(theta) / d theta expressed through g(theta) itself.
template <typename Scalar>
GTensor<Scalar> rotate_g_derivative(const GTensor<Scalar>& g) {
  return GTensor<Scalar>(Scalar(3) * g.g112(), Scalar(2) * g.g122() - g.g111(),
                         g.g222() - Scalar(2) * g.g112(), Scalar(-3) * g.g122());
}

/// Split g = g1 + g3 into the pseudovector part built from t_a = g_abb and the
/// traceless (harmonic) remainder, with their quadratic invariants.
template <typename Scalar>
struct HarmonicParts {
  GTensor<Scalar> vector_part;
  GTensor<Scalar> harmonic_part;
  Scalar gamma1;
  Scalar gamma3;
};

template <typename Scalar>
HarmonicParts<Scalar> decompose_g(const GTensor<Scalar>& g) {
  const auto t = g.trace();
  // g1_abc = 1/4 (t_a d_bc + t_b d_ca + t_c d_ab)
  const Scalar q = Scalar(0.25);
  GTensor<Scalar> g1(q * Scalar(3) * t(0), q * t(1), q * t(0), q * Scalar(3) * t(1));
  HarmonicParts<Scalar> out{g1, g - g1, Scalar(0), Scalar(0)};
  const Scalar s1 = g.g111() + g.g122(), s2 = g.g112() + g.g222();
  const Scalar h1 = Scalar(3) * g.g122() - g.g111(), h2 = Scalar(3) * g.g112() - g.g222();
  out.gamma1 = Scalar(0.75) * (s1 * s1 + s2 * s2);
  out.gamma3 = Scalar(0.25) * (h1 * h1 + h2 * h2);
  return out;
}

/// mu = g112^2 + g122^2 - g112 g222 - g122 g111. Rotation invariant; the pair
/// decouples in some basis iff mu = 0.
template <typename Scalar>
Scalar coupling_invariant(const GTensor<Scalar>& g) {
  return g.g112() * g.g112() + g.g122() * g.g122() - g.g112() * g.g222() - g.g122() * g.g111();
}

template <typename Scalar>
struct DecouplingResult {
  Scalar mu;
  bool decoupled;
  /// Basis rotation in (-pi/4, pi/4] removing the coupling terms, when decoupled.
  std::optional<Scalar> theta_star;
};

/// Angle in (-pi/4, pi/4] minimizing |a cos 2t + b sin 2t| with a = g e1 e2 and
/// b = (g e2 e2 - g e1 e1) / 2. Exactly zero when a and b are parallel.
template <typename Scalar>
Scalar decoupling_angle(const GTensor<Scalar>& g) {
  using std::atan2;
  const Eigen::Matrix<Scalar, 2, 1> a(g.g112(), g.g122());
  const Eigen::Matrix<Scalar, 2, 1> b(Scalar(0.5) * (g.g122() - g.g111()),
                                      Scalar(0.5) * (g.g222() - g.g112()));
  Eigen::Matrix<Scalar, 2, 2> gram;
  gram << a.dot(a), a.dot(b), a.dot(b), b.dot(b);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<Scalar, 2, 2>> es(gram);
  const Eigen::Matrix<Scalar, 2, 1> v = es.eigenvectors().col(0);
  Scalar theta = Scalar(0.5) * atan2(v(1), v(0));
  const Scalar quarter = std::numbers::pi_v<Scalar> / Scalar(4);
  while (theta <= -quarter) theta += Scalar(2) * quarter;
  while (theta > quarter) theta -= Scalar(2) * quarter;
  return theta;
}

/// Verdict is "decoupled" iff |mu| <= tol * max|g|^2 (or g vanishes).
template <typename Scalar>
DecouplingResult<Scalar> decoupling_invariant(const GTensor<Scalar>& g, Scalar tol = Scalar(1e-9)) {
  using std::abs;
  DecouplingResult<Scalar> out{coupling_invariant(g), false, std::nullopt};
  const Scalar scale = g.max_abs();
  out.decoupled = abs(out.mu) <= tol * scale * scale;
  if (out.decoupled) out.theta_star = decoupling_angle(g);
  return out;
}

/// Rotation angle in (-pi/2, pi/2] minimizing g111^2 + g122^2, i.e. the basis in which
/// Gamma_s and Gamma^s_{s+2} are smallest. Ties are broken by the smallest |theta|,
/// then by the positive angle.
template <typename Scalar>
Scalar best_basis_angle(const GTensor<Scalar>& g) {
  using std::abs;
  const Scalar pi = std::numbers::pi_v<Scalar>;
  const Scalar scale = g.max_abs();
  if (scale == Scalar(0)) return Scalar(0);
  auto objective = [&](Scalar th) {
    const auto r = rotate_g(g, th);
    return r.g111() * r.g111() + r.g122() * r.g122();
  };
  auto wrap = [&](Scalar th) {
    while (th <= -pi / 2) th += pi;
    while (th > pi / 2) th -= pi;
    return th;
  };
  constexpr int kSamples = 720;
  const Scalar h = pi / Scalar(kSamples);
  std::vector<Scalar> f(kSamples);
  for (int i = 0; i < kSamples; ++i) f[i] = objective(-pi / 2 + h * Scalar(i + 1));

  struct Candidate {
    Scalar theta, value;
  };
  std::vector<Candidate> minima;
  for (int i = 0; i < kSamples; ++i) {
    const Scalar prev = f[(i + kSamples - 1) % kSamples], next = f[(i + 1) % kSamples];
    if (!(f[i] <= prev && f[i] <= next)) continue;
    Scalar th = -pi / 2 + h * Scalar(i + 1);
    Scalar val = f[i];
    // Newton on F'(theta) with analytic derivatives of the rotated components.
    for (int it = 0; it < 60; ++it) {
      const auto r = rotate_g(g, th);
      const auto d = rotate_g_derivative(r);
      const Scalar d1 = r.g111() * d.g111() + r.g122() * d.g122();
      const Scalar d2 = d.g111() * d.g111() + r.g111() * rotate_g_derivative(d).g111() +
                        d.g122() * d.g122() + r.g122() * rotate_g_derivative(d).g122();
      if (!(d2 > Scalar(0))) break;
      Scalar step = -d1 / d2;
      if (abs(step) > h) step = step > 0 ? h : -h;
      const Scalar cand = wrap(th + step);
      const Scalar cval = objective(cand);
      if (cval > val + Scalar(1e-14) * scale * scale) break;
      th = cand;
      val = cval;
      if (abs(step) < Scalar(1e-15)) break;
    }
    minima.push_back({th, val});
  }
  if (minima.empty()) return Scalar(0);
  Scalar best_val = minima.front().value;
  for (const auto& m : minima) best_val = std::min(best_val, m.value);
  const Scalar slack = Scalar(1e-12) * scale * scale;
  std::optional<Scalar> chosen;
  for (const auto& m : minima) {
    if (m.value > best_val + slack) continue;
    if (!chosen) {
      chosen = m.theta;
      continue;
    }
    const Scalar diff = abs(m.theta) - abs(*chosen);
    if (diff < Scalar(-1e-9) || (abs(diff) <= Scalar(1e-9) && m.theta > *chosen)) chosen = m.theta;
  }
  return *chosen;
}

}  // namespace elastwave
