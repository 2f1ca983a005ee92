#pragma once

// Lowering of two-level unitaries to X-conjugated fully controlled gates.

#include <vector>

#include "qdecomp/decomp.hpp"
#include "qdecomp/gate.hpp"
#include "qdecomp/optimizer.hpp"

namespace qdecomp {

/// Gates realizing `tl` on n qubits: X on every qubit where s1 has a zero bit
/// (ascending), the fully controlled gates on the distinguishing qubit, then
/// the same X gates in descending order. A block equal to X becomes one
/// FCX (a plain X when n = 1); otherwise Rz, Ry, Rz, R1 in application order
/// with identity rotations omitted.
inline std::vector<Gate> two_level_to_gates(const TwoLevelUnitary& tl, int n) {
  const std::uint64_t limit = std::uint64_t{1} << n;
  if (tl.s1 >= limit || tl.s2 >= limit) {
    throw DimensionError("two-level pair does not fit " + std::to_string(n) + " qubits");
  }
  const int target = tl.target_qubit();
  std::vector<int> controls;
  std::vector<int> flips;
  for (int q = 0; q < n; ++q) {
    if (q == target) continue;
    controls.push_back(q);
    if (((tl.s1 >> q) & 1U) == 0) flips.push_back(q);
  }

  std::vector<Gate> body;
  if (tl.block == pauli_x()) {
    body.push_back(n == 1 ? Gate::x(target) : Gate::fcx(target, controls));
  } else {
    const ZYZAngles z = zyz_decompose(tl.block);
    body = {Gate::fcrz(target, controls, z.lambda - z.mu),
            Gate::fcry(target, controls, 2 * z.theta),
            Gate::fcrz(target, controls, z.lambda + z.mu),
            Gate::fcr1(target, controls, z.phi)};
    std::erase_if(body, is_identity_gate);
  }

  std::vector<Gate> gates;
  gates.reserve(body.size() + 2 * flips.size());
  for (int q : flips) gates.push_back(Gate::x(q));
  gates.insert(gates.end(), body.begin(), body.end());
  for (auto it = flips.rbegin(); it != flips.rend(); ++it) gates.push_back(Gate::x(*it));
  return gates;
}

/// Full pipeline: two-level decomposition, gate lowering, optional peephole
/// optimization.
inline Circuit matrix_to_circuit(const UnitaryMatrix& a, bool optimize_gates = true) {
  Circuit c{a.n(), {}};
  for (const TwoLevelUnitary& tl : two_level_decompose(a)) {
    auto gates = two_level_to_gates(tl, a.n());
    c.gates.insert(c.gates.end(), gates.begin(), gates.end());
  }
  return optimize_gates ? optimize(c) : c;
}

}  // namespace qdecomp
