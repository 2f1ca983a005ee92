#pragma once

// Two-level decomposition of a unitary. Rows of the Gray-reordered matrix are
// cleared one entry at a time by 2x2 rotations on adjacent columns, so every
// resulting two-level factor acts on a pair of basis states that differ in a
// single bit.

#include <bit>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>
#include <vector>

#include "qdecomp/matcore.hpp"

namespace qdecomp {

/// Magnitude below which an entry counts as zero during elimination.
inline constexpr double kZeroThreshold = 1e-10;
/// Frobenius distance from I below which a 2x2 block is dropped.
inline constexpr double kIdentityThreshold = 1e-10;

constexpr std::uint64_t gray_code(std::uint64_t i) noexcept { return i ^ (i >> 1); }

/// Binary-reflected Gray code on n bits together with its inverse.
class GrayPermutation {
 public:
  explicit GrayPermutation(int n) : n_(n) {
    if (n < 1 || n > 30) throw RangeError("Gray permutation needs 1..30 bits");
    const std::size_t size = std::size_t{1} << n;
    forward_.resize(size);
    inverse_.resize(size);
    for (std::size_t i = 0; i < size; ++i) {
      forward_[i] = gray_code(i);
      inverse_[forward_[i]] = i;
    }
  }

  int n() const noexcept { return n_; }
  std::size_t size() const noexcept { return forward_.size(); }
  std::uint64_t operator[](std::size_t i) const { return forward_[i]; }
  std::uint64_t inverse(std::size_t state) const { return inverse_[state]; }
  const std::vector<std::uint64_t>& table() const noexcept { return forward_; }

 private:
  int n_;
  std::vector<std::uint64_t> forward_;
  std::vector<std::uint64_t> inverse_;
};

enum class GrayDirection { forward, inverse };

/// Reorders rows and columns simultaneously. `forward` moves into the frame
/// where Gray-consecutive states are index-adjacent: out(i, j) = A(pi_i, pi_j).
/// `inverse` undoes it: out(pi_i, pi_j) = A(i, j). Pure permutation.
inline CMatrix gray_conjugate(const CMatrix& a, GrayDirection direction) {
  const GrayPermutation pi(qubit_count_for_dim(static_cast<std::size_t>(a.rows())));
  const Eigen::Index d = a.rows();
  CMatrix out(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const auto pi_i = static_cast<Eigen::Index>(pi[static_cast<std::size_t>(i)]);
    for (Eigen::Index j = 0; j < d; ++j) {
      const auto pi_j = static_cast<Eigen::Index>(pi[static_cast<std::size_t>(j)]);
      if (direction == GrayDirection::forward) {
        out(i, j) = a(pi_i, pi_j);
      } else {
        out(pi_i, pi_j) = a(i, j);
      }
    }
  }
  return out;
}

inline UnitaryMatrix gray_conjugate(const UnitaryMatrix& a, GrayDirection direction) {
  return UnitaryMatrix::adopt(gray_conjugate(a.matrix(), direction));
}

inline Matrix2c pauli_x() {
  Matrix2c x;
  x << 0.0, 1.0, 1.0, 0.0;
  return x;
}

/// Special-unitary block [[cos t e^{i l}, sin t e^{i m}], [-sin t e^{-i m}, cos t e^{-i l}]].
inline Matrix2c su2_block(double theta, double lambda, double mu) {
  using std::polar;
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Matrix2c u;
  u << polar(c, lambda), polar(s, mu), -polar(s, -mu), polar(c, -lambda);
  return u;
}

/// One right-multiplication used while clearing a row.
struct EliminationRotation {
  enum class Kind { SU2, SWAP_X, FINAL };

  Kind kind = Kind::SU2;
  double theta = 0.0;
  double lambda = 0.0;
  double mu = 0.0;
  /// Acts on columns (column - 1, column) of the Gray-reordered matrix.
  std::size_t column = 0;
  Matrix2c block = Matrix2c::Identity();

  static EliminationRotation su2(double theta, double lambda, double mu, std::size_t column) {
    return {Kind::SU2, theta, lambda, mu, column, su2_block(theta, lambda, mu)};
  }
  static EliminationRotation swap_x(std::size_t column) {
    return {Kind::SWAP_X, 0.0, 0.0, 0.0, column, pauli_x()};
  }

  bool is_identity() const { return (block - Matrix2c::Identity()).norm() <= kIdentityThreshold; }
};

struct EntryElimination {
  EliminationRotation rotation;
  /// First component of (a b) * block.
  Complex c;
};

/// Rotation that zeroes b in the row vector (a b), leaving c = cos(theta)(|a| + |b|^2/|a|)
/// real and positive. b ~ 0 gives the identity, a ~ 0 the column swap X.
inline EntryElimination eliminate_entry(Complex a, Complex b, std::size_t column = 1) {
  if (std::abs(b) <= kZeroThreshold) return {EliminationRotation::su2(0, 0, 0, column), a};
  if (std::abs(a) <= kZeroThreshold) return {EliminationRotation::swap_x(column), b};
  const double theta = std::atan(std::abs(b / a));
  const double lambda = -std::arg(a);
  const double mu = std::numbers::pi + std::arg(b);
  const double c = std::cos(theta) * (std::abs(a) + std::norm(b) / std::abs(a));
  return {EliminationRotation::su2(theta, lambda, mu, column), Complex(c, 0.0)};
}

/// Variant for the last entry of a row: always special unitary, and c is
/// real non-negative even when b ~ 0 (the phase of a is rotated out) or a ~ 0.
inline EntryElimination eliminate_entry_closing(Complex a, Complex b, std::size_t column = 1) {
  const bool a_zero = std::abs(a) <= kZeroThreshold;
  const bool b_zero = std::abs(b) <= kZeroThreshold;
  const double theta = b_zero ? 0.0 : a_zero ? std::numbers::pi / 2 : std::atan(std::abs(b / a));
  const double lambda = a_zero ? 0.0 : -std::arg(a);
  const double mu = b_zero ? 0.0 : std::numbers::pi + std::arg(b);
  const double c = std::cos(theta) * std::abs(a) + std::sin(theta) * std::abs(b);
  return {EliminationRotation::su2(theta, lambda, mu, column), Complex(c, 0.0)};
}

/// Two-level unitary acting on basis states s1 < s2 that differ in one bit.
/// Block rows and columns are ordered (s1, s2).
struct TwoLevelUnitary {
  std::uint64_t s1 = 0;
  std::uint64_t s2 = 1;
  Matrix2c block = Matrix2c::Identity();

  /// Builds from an arbitrary-order pair, reordering the block if p > q.
  static TwoLevelUnitary on_pair(std::uint64_t p, std::uint64_t q, const Matrix2c& block) {
    if (!std::has_single_bit(p ^ q)) {
      throw DimensionError("two-level pair (" + std::to_string(p) + ", " + std::to_string(q) +
                           ") does not differ in exactly one bit");
    }
    if (p < q) return {p, q, block};
    Matrix2c swapped;
    swapped << block(1, 1), block(1, 0), block(0, 1), block(0, 0);
    return {q, p, swapped};
  }

  /// Qubit whose bit distinguishes s1 from s2.
  int target_qubit() const { return std::countr_zero(s1 ^ s2); }

  CMatrix embed(int n) const {
    const Eigen::Index d = Eigen::Index{1} << n;
    CMatrix m = CMatrix::Identity(d, d);
    const auto i = static_cast<Eigen::Index>(s1);
    const auto j = static_cast<Eigen::Index>(s2);
    m(i, i) = block(0, 0);
    m(i, j) = block(0, 1);
    m(j, i) = block(1, 0);
    m(j, j) = block(1, 1);
    return m;
  }
};

/// Clears the rows of a unitary one at a time by right-multiplying with
/// adjacent-column rotations. After row k is processed it equals e_k.
class RowEliminator {
 public:
  explicit RowEliminator(CMatrix work) : work_(std::move(work)) {
    qubit_count_for_dim(static_cast<std::size_t>(work_.rows()));
  }

  std::size_t dim() const noexcept { return static_cast<std::size_t>(work_.rows()); }
  std::size_t rows_done() const noexcept { return next_row_; }
  /// True once only the trailing 2x2 block remains.
  bool done() const noexcept { return next_row_ + 2 >= dim(); }
  const CMatrix& working() const noexcept { return work_; }

  /// Zeroes entries (k, d-1) ... (k, k+1) of the next row k, right to left.
  std::vector<EliminationRotation> eliminate_next_row() {
    assert(!done());
    const std::size_t k = next_row_++;
    std::vector<EliminationRotation> applied;
    applied.reserve(dim() - k - 1);
    for (std::size_t j = dim() - 1; j > k; --j) {
      const Complex a = at(k, j - 1);
      const Complex b = at(k, j);
      const EntryElimination step =
          j == k + 1 ? eliminate_entry_closing(a, b, j) : eliminate_entry(a, b, j);
      // The closing step leaves a real diagonal entry.
      assert(j != k + 1 ||
             std::abs((a * step.rotation.block(0, 0) + b * step.rotation.block(1, 0)).imag()) <=
                 1e-12);
      apply(step.rotation, k);
      applied.push_back(step.rotation);
    }
    return applied;
  }

  /// The remaining two-level factor on the last two columns.
  EliminationRotation final_rotation() const {
    assert(done());
    const auto d = static_cast<Eigen::Index>(dim());
    EliminationRotation f;
    f.kind = EliminationRotation::Kind::FINAL;
    f.column = dim() - 1;
    f.block = work_.block<2, 2>(d - 2, d - 2);
    return f;
  }

 private:
  Complex& at(std::size_t r, std::size_t c) {
    return work_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  }

  // Rows above `from_row` are already unit vectors with zeros in these columns.
  void apply(const EliminationRotation& rot, std::size_t from_row) {
    const Matrix2c& u = rot.block;
    const std::size_t left = rot.column - 1;
    const std::size_t right = rot.column;
    for (std::size_t r = from_row; r < dim(); ++r) {
      const Complex x = at(r, left);
      const Complex y = at(r, right);
      at(r, left) = x * u(0, 0) + y * u(1, 0);
      at(r, right) = x * u(0, 1) + y * u(1, 1);
    }
  }

  CMatrix work_;
  std::size_t next_row_ = 0;
};

/// Decomposes A into two-level unitaries on one-bit-differing state pairs.
/// List order is application order: A = L[m-1] * ... * L[1] * L[0].
/// Identity factors are omitted, so a generic input yields d(d-1)/2 entries.
inline std::vector<TwoLevelUnitary> two_level_decompose(const UnitaryMatrix& a) {
  const GrayPermutation pi(a.n());
  RowEliminator eliminator(gray_conjugate(a.matrix(), GrayDirection::forward));
  std::vector<TwoLevelUnitary> result;
  result.reserve(a.dim() * (a.dim() - 1) / 2);
  while (!eliminator.done()) {
    for (const EliminationRotation& rot : eliminator.eliminate_next_row()) {
      if (rot.kind != EliminationRotation::Kind::SWAP_X && rot.is_identity()) continue;
      result.push_back(
          TwoLevelUnitary::on_pair(pi[rot.column - 1], pi[rot.column], rot.block.adjoint()));
    }
  }
  const EliminationRotation last = eliminator.final_rotation();
  if (!last.is_identity()) {
    result.push_back(TwoLevelUnitary::on_pair(pi[last.column - 1], pi[last.column], last.block));
  }
  return result;
}

inline std::vector<TwoLevelUnitary> two_level_decompose(const CMatrix& a) {
  return two_level_decompose(UnitaryMatrix(a));
}

}  // namespace qdecomp
