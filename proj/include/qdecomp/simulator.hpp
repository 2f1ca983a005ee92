#pragma once

// Dense reconstruction of circuit matrices, used to verify decompositions.

#include <algorithm>
#include <cstdint>

#include "qdecomp/gate.hpp"
#include "qdecomp/matcore.hpp"

namespace qdecomp {

namespace detail {

inline std::uint64_t control_mask(const Gate& g) {
  std::uint64_t mask = 0;
  for (int c : g.controls) mask |= std::uint64_t{1} << c;
  return mask;
}

// Left-multiplies rows of m by the gate, reading logical row s from physical
// row s ^ relabel.
inline void apply_rows(CMatrix& m, const Gate& g, std::uint64_t relabel) {
  const Matrix2c u = g.block();
  const std::uint64_t ctrl = control_mask(g);
  const std::uint64_t tbit = std::uint64_t{1} << g.target;
  const auto d = static_cast<std::uint64_t>(m.rows());
  for (std::uint64_t s = 0; s < d; ++s) {
    if ((s & tbit) != 0 || (s & ctrl) != ctrl) continue;
    const auto lo = static_cast<Eigen::Index>(s ^ relabel);
    const auto hi = static_cast<Eigen::Index>((s | tbit) ^ relabel);
    for (Eigen::Index col = 0; col < m.cols(); ++col) {
      const Complex x = m(lo, col);
      const Complex y = m(hi, col);
      m(lo, col) = u(0, 0) * x + u(0, 1) * y;
      m(hi, col) = u(1, 0) * x + u(1, 1) * y;
    }
  }
}

}  // namespace detail

/// Full 2^n matrix of one gate: its 2x2 block on every pair (s, s ^ 2^target)
/// whose control bits are all one, identity elsewhere.
inline UnitaryMatrix gate_matrix(const Gate& g, int n) {
  g.validate(n);
  const Eigen::Index d = Eigen::Index{1} << n;
  CMatrix m = CMatrix::Identity(d, d);
  detail::apply_rows(m, g, 0);
  return UnitaryMatrix::adopt(std::move(m));
}

/// Product M_{k-1} ... M_0 of the circuit's gates. Uncontrolled X gates are
/// folded into a row relabelling instead of touching every row.
inline UnitaryMatrix circuit_matrix(const Circuit& c) {
  c.validate();
  const Eigen::Index d = Eigen::Index{1} << c.n;
  CMatrix m = CMatrix::Identity(d, d);
  std::uint64_t relabel = 0;
  for (const Gate& g : c.gates) {
    if (g.kind == GateKind::X) {
      relabel ^= std::uint64_t{1} << g.target;
    } else {
      detail::apply_rows(m, g, relabel);
    }
  }
  if (relabel == 0) return UnitaryMatrix::adopt(std::move(m));
  CMatrix out(d, d);
  for (Eigen::Index s = 0; s < d; ++s) {
    out.row(s) = m.row(static_cast<Eigen::Index>(static_cast<std::uint64_t>(s) ^ relabel));
  }
  return UnitaryMatrix::adopt(std::move(out));
}

/// Error budget for comparing a circuit against its source matrix.
inline double default_verification_tolerance(int n) { return n <= 6 ? 1e-8 : 1e-6; }

struct VerificationReport {
  double frobenius_error = 0.0;
  double max_abs_entry_error = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::size_t gate_count = 0;
};

/// Compares A with the circuit's matrix entrywise; no global phase is
/// factored out.
inline VerificationReport verify(const UnitaryMatrix& a, const Circuit& c, double tol) {
  if (a.n() != c.n) {
    throw DimensionError("matrix acts on " + std::to_string(a.n()) + " qubits but circuit on " +
                         std::to_string(c.n));
  }
  const CMatrix diff = a.matrix() - circuit_matrix(c).matrix();
  VerificationReport r;
  r.frobenius_error = diff.norm();
  r.max_abs_entry_error = diff.size() == 0 ? 0.0 : diff.cwiseAbs().maxCoeff();
  r.tolerance = tol;
  r.passed = r.frobenius_error <= tol;
  r.gate_count = c.gates.size();
  return r;
}

}  // namespace qdecomp
