#pragma once

// Peephole passes that shrink a circuit without changing its matrix.

#include <cmath>
#include <map>
#include <vector>

#include "qdecomp/gate.hpp"

namespace qdecomp {

/// Angle distance from identity, after reduction modulo the gate period,
/// below which a rotation is dropped.
inline constexpr double kIdentityAngleTolerance = 1e-12;

/// Cancels X gates pairwise within each maximal run of consecutive
/// uncontrolled X gates. X gates on different qubits commute, so inside a run
/// only the parity per qubit matters; survivors keep first-occurrence order.
inline Circuit cancel_x_pairs(const Circuit& c) {
  Circuit out{c.n, {}};
  out.gates.reserve(c.gates.size());
  std::size_t i = 0;
  while (i < c.gates.size()) {
    if (c.gates[i].kind != GateKind::X) {
      out.gates.push_back(c.gates[i++]);
      continue;
    }
    std::size_t end = i;
    std::map<int, int> parity;
    while (end < c.gates.size() && c.gates[end].kind == GateKind::X) {
      parity[c.gates[end].target] ^= 1;
      ++end;
    }
    for (std::size_t k = i; k < end; ++k) {
      auto it = parity.find(c.gates[k].target);
      if (it->second == 1) {
        out.gates.push_back(c.gates[k]);
        it->second = 0;  // emit each surviving qubit once
      }
    }
    i = end;
  }
  return out;
}

/// True for R1(2 pi k), Ry(4 pi k), Rz(4 pi k) within kIdentityAngleTolerance.
inline bool is_identity_gate(const Gate& g) {
  if (!has_angle(g.kind) || !g.angle) return false;
  return std::abs(normalize_angle(g.kind, *g.angle)) <= kIdentityAngleTolerance;
}

inline Circuit drop_identity_gates(const Circuit& c) {
  Circuit out{c.n, {}};
  out.gates.reserve(c.gates.size());
  for (const Gate& g : c.gates) {
    if (!is_identity_gate(g)) out.gates.push_back(g);
  }
  return out;
}

/// Alternates both passes until the gate count stops changing.
inline Circuit optimize(const Circuit& c) {
  Circuit current = c;
  for (;;) {
    Circuit next = cancel_x_pairs(drop_identity_gates(current));
    if (next.gates.size() == current.gates.size()) return next;
    current = std::move(next);
  }
}

}  // namespace qdecomp
