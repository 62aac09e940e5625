#pragma once

// Small fixed-rank Cartesian tensors over R^3 and the Voigt index maps used to
// store elastic constants.

#include <array>
#include <cstddef>
#include <utility>

#include <Eigen/Dense>

namespace elastwave {

template <typename Scalar>
using Vector3 = Eigen::Matrix<Scalar, 3, 1>;
template <typename Scalar>
using Matrix3 = Eigen::Matrix<Scalar, 3, 3>;
template <typename Scalar>
using Vector6 = Eigen::Matrix<Scalar, 6, 1>;
template <typename Scalar>
using Matrix6 = Eigen::Matrix<Scalar, 6, 6>;

constexpr std::size_t pow3(int rank) { return rank == 0 ? 1 : 3 * pow3(rank - 1); }

/// Dense rank-`Rank` tensor in three dimensions, row-major flat storage.
template <typename Scalar, int Rank>
class CartesianTensor {
 public:
  static constexpr std::size_t kSize = pow3(Rank);

  CartesianTensor() { data_.fill(Scalar(0)); }

  template <typename... Idx>
  Scalar& operator()(Idx... idx) {
    static_assert(sizeof...(Idx) == Rank);
    return data_[flat(idx...)];
  }
  template <typename... Idx>
  const Scalar& operator()(Idx... idx) const {
    static_assert(sizeof...(Idx) == Rank);
    return data_[flat(idx...)];
  }

  Scalar& operator[](std::size_t i) { return data_[i]; }
  const Scalar& operator[](std::size_t i) const { return data_[i]; }

  const std::array<Scalar, kSize>& data() const { return data_; }

  Scalar max_abs() const {
    Scalar m(0);
    for (const auto& v : data_) m = std::max<Scalar>(m, v < 0 ? -v : v);
    return m;
  }

  /// Unpacks a flat index into its Rank indices.
  static std::array<int, Rank> unflatten(std::size_t flat_index) {
    std::array<int, Rank> out{};
    for (int r = Rank - 1; r >= 0; --r) {
      out[r] = static_cast<int>(flat_index % 3);
      flat_index /= 3;
    }
    return out;
  }

 private:
  template <typename... Idx>
  static std::size_t flat(Idx... idx) {
    std::size_t f = 0;
    ((f = f * 3 + static_cast<std::size_t>(idx)), ...);
    return f;
  }

  std::array<Scalar, kSize> data_;
};

template <typename Scalar>
using Tensor3 = CartesianTensor<Scalar, 3>;
template <typename Scalar>
using Tensor4 = CartesianTensor<Scalar, 4>;
template <typename Scalar>
using Tensor6 = CartesianTensor<Scalar, 6>;

namespace voigt {

// (11,22,33,23,13,12) -> 0..5
constexpr std::array<std::array<int, 3>, 3> kIndex{{{0, 5, 4}, {5, 1, 3}, {4, 3, 2}}};
constexpr std::array<std::pair<int, int>, 6> kPairs{
    {{0, 0}, {1, 1}, {2, 2}, {1, 2}, {0, 2}, {0, 1}}};

constexpr int index(int a, int b) { return kIndex[a][b]; }

/// Number of independent third-order constants c_IJK with I <= J <= K.
constexpr int kTripletCount = 56;

namespace detail {
constexpr std::array<int, 216> make_triplet_table() {
  std::array<int, 216> table{};
  int next = 0;
  std::array<int, 216> sorted_slot{};
  for (auto& s : sorted_slot) s = -1;
  for (int i = 0; i < 6; ++i)
    for (int j = i; j < 6; ++j)
      for (int k = j; k < 6; ++k) sorted_slot[36 * i + 6 * j + k] = next++;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      for (int k = 0; k < 6; ++k) {
        int a = i, b = j, c = k;
        if (a > b) std::swap(a, b);
        if (b > c) std::swap(b, c);
        if (a > b) std::swap(a, b);
        table[36 * i + 6 * j + k] = sorted_slot[36 * a + 6 * b + c];
      }
  return table;
}
constexpr std::array<std::array<int, 3>, kTripletCount> make_triplet_list() {
  std::array<std::array<int, 3>, kTripletCount> list{};
  int next = 0;
  for (int i = 0; i < 6; ++i)
    for (int j = i; j < 6; ++j)
      for (int k = j; k < 6; ++k) list[next++] = {i, j, k};
  return list;
}
}  // namespace detail

constexpr std::array<int, 216> kTripletSlot = detail::make_triplet_table();
/// Sorted Voigt triplets, in storage order.
constexpr std::array<std::array<int, 3>, kTripletCount> kTriplets = detail::make_triplet_list();

/// Storage slot of c_IJK for any ordering of (I, J, K).
constexpr int triplet_slot(int i, int j, int k) { return kTripletSlot[36 * i + 6 * j + k]; }

}  // namespace voigt

/// Symmetric 3x3 tensor <-> Voigt 6-vector of tensor components (no factor 2).
template <typename Scalar>
Vector6<Scalar> to_voigt(const Matrix3<Scalar>& t) {
  Vector6<Scalar> v;
  for (int I = 0; I < 6; ++I) v(I) = t(voigt::kPairs[I].first, voigt::kPairs[I].second);
  return v;
}

template <typename Scalar>
Matrix3<Scalar> from_voigt(const Vector6<Scalar>& v) {
  Matrix3<Scalar> t;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) t(a, b) = v(voigt::index(a, b));
  return t;
}

/// Multiplies every index of a rank-R tensor by R: t'_{i..} = R_{ip} ... t_{p..}.
template <typename Scalar, int Rank>
CartesianTensor<Scalar, Rank> rotate_tensor(const CartesianTensor<Scalar, Rank>& t,
                                            const Matrix3<Scalar>& R) {
  CartesianTensor<Scalar, Rank> current = t;
  constexpr std::size_t n = CartesianTensor<Scalar, Rank>::kSize;
  for (int slot = 0; slot < Rank; ++slot) {
    CartesianTensor<Scalar, Rank> next;
    std::size_t stride = pow3(Rank - 1 - slot);
    for (std::size_t f = 0; f < n; ++f) {
      int i = static_cast<int>((f / stride) % 3);
      std::size_t base = f - static_cast<std::size_t>(i) * stride;
      Scalar acc(0);
      for (int p = 0; p < 3; ++p) acc += R(i, p) * current[base + static_cast<std::size_t>(p) * stride];
      next[f] = acc;
    }
    current = next;
  }
  return current;
}

}  // namespace elastwave
