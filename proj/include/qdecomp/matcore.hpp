#pragma once

// Dense complex matrices, unitarity checks, basis-state indexing and
// Haar-random sampling.

#include <Eigen/Dense>

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>
#include <string_view>
#include <utility>

#include "qdecomp/errors.hpp"

namespace qdecomp {

using Complex = std::complex<double>;
using CMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Matrix2c = Eigen::Matrix<Complex, 2, 2, Eigen::RowMajor>;

/// Frobenius norm of (M^dagger M - I).
inline double unitarity_residual(const CMatrix& m) {
  if (m.rows() != m.cols()) {
    throw DimensionError("matrix is not square: " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()));
  }
  const CMatrix gram = m.adjoint() * m;
  return (gram - CMatrix::Identity(m.rows(), m.cols())).norm();
}

inline bool is_unitary(const CMatrix& m, double tol) { return unitarity_residual(m) <= tol; }

template <int R, int C, int O>
bool is_unitary(const Eigen::Matrix<Complex, R, C, O>& m, double tol) {
  return is_unitary(CMatrix(m), tol);
}

/// Default tolerance for accepting a matrix of dimension `dim` as unitary.
inline double default_unitarity_tolerance(std::size_t dim) { return 1e-8 * static_cast<double>(dim); }

/// log2(dim) if dim is a power of two >= 2, otherwise a DimensionError.
inline int qubit_count_for_dim(std::size_t dim) {
  if (dim < 2 || !std::has_single_bit(dim)) {
    throw DimensionError("dimension " + std::to_string(dim) + " is not a power of two >= 2");
  }
  return std::countr_zero(dim);
}

/// A 2^n x 2^n matrix that has been checked to be unitary.
///
/// Entry (i, j) is <i|U|j> with i, j basis-state indices in the little-endian
/// convention of StateIndex.
class UnitaryMatrix {
 public:
  /// Validates shape and unitarity; throws DimensionError or ValidationError.
  explicit UnitaryMatrix(CMatrix m) : UnitaryMatrix(std::move(m), -1.0) {}

  UnitaryMatrix(CMatrix m, double tol) : entries_(std::move(m)) {
    if (entries_.rows() != entries_.cols()) {
      throw DimensionError("matrix is not square: " + std::to_string(entries_.rows()) + "x" +
                           std::to_string(entries_.cols()));
    }
    n_ = qubit_count_for_dim(static_cast<std::size_t>(entries_.rows()));
    if (tol < 0) tol = default_unitarity_tolerance(dim());
    const double residual = unitarity_residual(entries_);
    if (!(residual <= tol)) {
      throw ValidationError("matrix is not unitary: Frobenius residual ||U^dagger U - I|| = " +
                                std::to_string(residual) + " exceeds tolerance " +
                                std::to_string(tol),
                            residual);
    }
  }

  /// Wraps a matrix that is unitary by construction. Only the shape is checked.
  static UnitaryMatrix adopt(CMatrix m) {
    UnitaryMatrix u;
    if (m.rows() != m.cols()) throw DimensionError("matrix is not square");
    u.n_ = qubit_count_for_dim(static_cast<std::size_t>(m.rows()));
    u.entries_ = std::move(m);
    return u;
  }

  static UnitaryMatrix identity(int n) {
    if (n < 1) throw RangeError("qubit count must be >= 1");
    const Eigen::Index d = Eigen::Index{1} << n;
    return adopt(CMatrix::Identity(d, d));
  }

  int n() const noexcept { return n_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(entries_.rows()); }
  Complex operator()(std::size_t row, std::size_t col) const {
    return entries_(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
  }
  const CMatrix& matrix() const noexcept { return entries_; }

  friend bool operator==(const UnitaryMatrix& a, const UnitaryMatrix& b) {
    return a.n_ == b.n_ && a.entries_ == b.entries_;
  }

 private:
  UnitaryMatrix() = default;

  int n_ = 0;
  CMatrix entries_;
};

/// Basis-state index of an n-qubit register. Bit j is qubit j; in the ket
/// string qubit 0 is the leftmost character, so |25> on 5 qubits is |10011>.
struct StateIndex {
  std::uint64_t value = 0;
  int n = 0;

  bool bit(int j) const noexcept { return ((value >> j) & 1U) != 0; }

  std::string ket() const {
    std::string s(static_cast<std::size_t>(n), '0');
    for (int j = 0; j < n; ++j) {
      if (bit(j)) s[static_cast<std::size_t>(j)] = '1';
    }
    return s;
  }

  static StateIndex from_ket(std::string_view bits) {
    if (bits.empty() || bits.size() > 63) throw ParseError("ket string must have 1..63 bits");
    StateIndex idx{0, static_cast<int>(bits.size())};
    for (std::size_t j = 0; j < bits.size(); ++j) {
      if (bits[j] == '1') {
        idx.value |= std::uint64_t{1} << j;
      } else if (bits[j] != '0') {
        throw ParseError("ket string may only contain '0' and '1'", 1, j + 1);
      }
    }
    return idx;
  }

  friend bool operator==(const StateIndex&, const StateIndex&) = default;
};

/// xoshiro256** seeded through splitmix64, so a seed reproduces the same
/// stream on every platform.
class Xoshiro256 {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256(std::uint64_t seed) {
    for (auto& word : state_) word = splitmix64(seed);
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    const std::uint64_t result = std::rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = std::rotl(state_[3], 45);
    return result;
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Standard normal deviate (Box-Muller, both outputs used).
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  static std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_[4]{};
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Haar-distributed unitary on n qubits: QR of a complex Ginibre matrix with
/// the columns of Q rescaled by the phases of diag(R).
inline UnitaryMatrix haar_random_unitary(int n, std::uint64_t seed) {
  if (n < 1 || n > 9) throw RangeError("qubit count must be in 1..9, got " + std::to_string(n));
  const Eigen::Index d = Eigen::Index{1} << n;
  Xoshiro256 rng(seed);
  Eigen::MatrixXcd g(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      const double re = rng.normal();
      const double im = rng.normal();
      g(i, j) = Complex(re, im) * std::numbers::sqrt2 * 0.5;
    }
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(d, d);
  const auto& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < d; ++j) {
    const Complex rjj = r(j, j);
    const double mag = std::abs(rjj);
    if (mag > 0) q.col(j) *= rjj / mag;
  }
  return UnitaryMatrix(CMatrix(q), 1e-10);
}

}  // namespace qdecomp
