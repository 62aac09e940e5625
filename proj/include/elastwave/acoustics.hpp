#pragma once

// Christoffel tensor, its eigen-decomposition with degeneracy detection, and the
// eigenstructure of the linearized first-order plane-wave system.

#include <algorithm>
#include <array>
#include <cmath>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "elastwave/errors.hpp"
#include "elastwave/moduli.hpp"
#include "elastwave/tensor.hpp"

namespace elastwave {

/// Default relative tolerance on eigenvalue gaps for calling two modes degenerate.
inline constexpr double kDegeneracyTolerance = 1e-8;

/// Density-normalized acoustical tensor Lambda_ac = c_abcd n_b n_d / rho.
template <typename Scalar>
struct Christoffel {
  Matrix3<Scalar> tensor;
  Direction<Scalar> n;
};

template <typename Scalar>
Christoffel<Scalar> christoffel(const Moduli<Scalar>& mod, const Direction<Scalar>& n) {
  const Vector3<Scalar>& nv = n.vector();
  Matrix3<Scalar> L = Matrix3<Scalar>::Zero();
  for (int a = 0; a < 3; ++a)
    for (int c = a; c < 3; ++c) {
      Scalar acc(0);
      for (int b = 0; b < 3; ++b)
        for (int d = 0; d < 3; ++d) acc += mod.c2(a, b, c, d) * nv(b) * nv(d);
      L(a, c) = L(c, a) = acc / mod.density();
    }
  return {L, n};
}

enum class DegeneracyKind { none, pair, triple };

inline const char* to_string(DegeneracyKind k) {
  switch (k) {
    case DegeneracyKind::pair: return "shear_pair";
    case DegeneracyKind::triple: return "triple";
    default: return "none";
  }
}

template <typename Scalar>
struct Degeneracy {
  DegeneracyKind kind = DegeneracyKind::none;
  /// Indices (into the descending mode order) of the coincident pair.
  std::array<int, 2> pair{-1, -1};
  /// Index of the remaining, non-degenerate mode when kind != none.
  int remaining = -1;
  /// min over adjacent eigenvalue gaps, divided by the largest eigenvalue.
  Scalar gap = Scalar(0);
};

template <typename Scalar>
struct AcousticModeSet {
  /// Squared speeds, descending.
  Vector3<Scalar> alphas;
  /// Column j is the polarization k_j belonging to alphas(j).
  Matrix3<Scalar> polarizations;
  Degeneracy<Scalar> degeneracy;
  Vector3<Scalar> n;
  /// Set when the computed triad fails orthonormality to 1e-10.
  bool near_defective = false;

  Vector3<Scalar> polarization(int j) const { return polarizations.col(j); }
  /// Negative root, following the odd-index sign convention of the system eigenvalues.
  Scalar speed(int j) const {
    using std::sqrt;
    return -sqrt(alphas(j));
  }
  bool is_degenerate() const { return degeneracy.kind != DegeneracyKind::none; }
  /// Index of the mode whose polarization is closest to n.
  int most_longitudinal() const {
    int best = 0;
    Scalar best_dot(-1);
    for (int j = 0; j < 3; ++j) {
      using std::abs;
      const Scalar d = abs(polarization(j).dot(n));
      if (d > best_dot) {
        best_dot = d;
        best = j;
      }
    }
    return best;
  }
};

namespace detail {

/// k.n < 0 when the projection is resolvable, otherwise the first sizeable component > 0.
template <typename Scalar>
Vector3<Scalar> orient_polarization(const Vector3<Scalar>& k, const Vector3<Scalar>& n) {
  using std::abs;
  const Scalar kn = k.dot(n);
  if (abs(kn) > Scalar(1e-9)) return kn < Scalar(0) ? Vector3<Scalar>(k) : Vector3<Scalar>(-k);
  for (int i = 0; i < 3; ++i)
    if (abs(k(i)) > Scalar(1e-6)) return k(i) > Scalar(0) ? Vector3<Scalar>(k) : Vector3<Scalar>(-k);
  return k;
}

/// Orthonormal basis of the plane orthogonal to `normal`: the first Cartesian axis not
/// parallel to `normal`, projected and normalized, then normal x k1.
template <typename Scalar>
std::array<Vector3<Scalar>, 2> canonical_plane_basis(const Vector3<Scalar>& normal) {
  for (int i = 0; i < 3; ++i) {
    const Scalar off = Scalar(1) - normal(i) * normal(i);
    if (off > Scalar(1e-6)) {
      Vector3<Scalar> e = Vector3<Scalar>::Unit(i);
      Vector3<Scalar> k1 = (e - normal(i) * normal).normalized();
      Vector3<Scalar> k2 = normal.cross(k1);
      return {k1, k2.normalized()};
    }
  }
  return {Vector3<Scalar>::UnitX(), Vector3<Scalar>::UnitY()};
}

}  // namespace detail

/// Eigenpairs of the Christoffel tensor sorted by descending eigenvalue.
///
/// Inside a degenerate eigenspace the basis is canonicalized: k1' is the normalized
/// projection of the first Cartesian axis not parallel to the remaining polarization,
/// and k2' = k_remaining x k1'.
template <typename Scalar>
AcousticModeSet<Scalar> eigenmodes(const Christoffel<Scalar>& lam,
                                   Scalar reltol = Scalar(kDegeneracyTolerance)) {
  Eigen::SelfAdjointEigenSolver<Matrix3<Scalar>> es(lam.tensor);
  if (es.info() != Eigen::Success) throw NumericalError("Christoffel eigen-solve failed");
  AcousticModeSet<Scalar> out;
  out.n = lam.n.vector();
  // Eigen returns ascending order.
  for (int j = 0; j < 3; ++j) {
    out.alphas(j) = es.eigenvalues()(2 - j);
    out.polarizations.col(j) = es.eigenvectors().col(2 - j);
  }
  if (!(out.alphas(2) > Scalar(0)))
    throw DefinitenessError("Christoffel tensor has a non-positive eigenvalue");

  const Scalar top = out.alphas(0);
  const Scalar g01 = (out.alphas(0) - out.alphas(1)) / top;
  const Scalar g12 = (out.alphas(1) - out.alphas(2)) / top;
  auto& deg = out.degeneracy;
  deg.gap = std::min(g01, g12);
  if (g01 <= reltol && g12 <= reltol) {
    deg.kind = DegeneracyKind::triple;
    deg.pair = {1, 2};
    deg.remaining = 0;
    out.polarizations.col(0) = -out.n;
  } else if (g12 <= reltol) {
    deg.kind = DegeneracyKind::pair;
    deg.pair = {1, 2};
    deg.remaining = 0;
  } else if (g01 <= reltol) {
    deg.kind = DegeneracyKind::pair;
    deg.pair = {0, 1};
    deg.remaining = 2;
  }

  if (deg.kind == DegeneracyKind::none) {
    for (int j = 0; j < 3; ++j)
      out.polarizations.col(j) = detail::orient_polarization<Scalar>(out.polarizations.col(j), out.n);
  } else {
    const Vector3<Scalar> rem =
        detail::orient_polarization<Scalar>(out.polarizations.col(deg.remaining), out.n);
    out.polarizations.col(deg.remaining) = rem;
    auto basis = detail::canonical_plane_basis<Scalar>(rem);
    out.polarizations.col(deg.pair[0]) = basis[0];
    out.polarizations.col(deg.pair[1]) = basis[1];
    if (deg.kind == DegeneracyKind::pair) {
      // The two coincident values are replaced by their mean.
      const Scalar mean = Scalar(0.5) * (out.alphas(deg.pair[0]) + out.alphas(deg.pair[1]));
      out.alphas(deg.pair[0]) = out.alphas(deg.pair[1]) = mean;
    }
  }
  const Matrix3<Scalar> gram = out.polarizations.transpose() * out.polarizations;
  out.near_defective = (gram - Matrix3<Scalar>::Identity()).cwiseAbs().maxCoeff() > Scalar(1e-10);
  return out;
}

template <typename Scalar>
AcousticModeSet<Scalar> eigenmodes(const Moduli<Scalar>& mod, const Direction<Scalar>& n,
                                   Scalar reltol = Scalar(kDegeneracyTolerance)) {
  return eigenmodes(christoffel(mod, n), reltol);
}

/// Linearized first-order system A(0) = -[[0, Lambda], [I, 0]] acting on w = (v, m).
template <typename Scalar>
Eigen::Matrix<Scalar, 6, 6> first_order_matrix(const Matrix3<Scalar>& lambda) {
  Eigen::Matrix<Scalar, 6, 6> A = Eigen::Matrix<Scalar, 6, 6>::Zero();
  A.template block<3, 3>(0, 3) = -lambda;
  A.template block<3, 3>(3, 0) = -Matrix3<Scalar>::Identity();
  return A;
}

/// Eigenvalues lambda_1..lambda_6 with lambda_{2j-1} = -sqrt(alpha_j) = -lambda_{2j}, and
/// right/left eigenvectors r = (-lambda k, k), l = 1/2 (-k/lambda, k). Mode j follows the
/// descending order of AcousticModeSet; vectors are stored as columns (0-based).
template <typename Scalar>
struct SystemEigenstructure {
  Eigen::Matrix<Scalar, 6, 1> eigenvalues;
  Eigen::Matrix<Scalar, 6, 6> right;
  Eigen::Matrix<Scalar, 6, 6> left;
};

template <typename Scalar>
SystemEigenstructure<Scalar> system_eigenstructure(const AcousticModeSet<Scalar>& modes) {
  SystemEigenstructure<Scalar> out;
  for (int j = 0; j < 3; ++j) {
    const Vector3<Scalar> k = modes.polarization(j);
    for (int sign = 0; sign < 2; ++sign) {
      const int idx = 2 * j + sign;
      const Scalar lam = sign == 0 ? modes.speed(j) : -modes.speed(j);
      out.eigenvalues(idx) = lam;
      out.right.col(idx) << -lam * k, k;
      out.left.col(idx) << -k / lam, k;
      out.left.col(idx) *= Scalar(0.5);
    }
  }
  return out;
}

}  // namespace elastwave
