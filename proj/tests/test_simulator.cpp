#include <gtest/gtest.h>

#include <numbers>

#include "qdecomp/simulator.hpp"
#include "qdecomp/synthesis.hpp"
#include "support/oracles.hpp"

namespace qdecomp {
namespace {

using std::numbers::pi;
using testing::max_abs_diff;
using testing::reference_circuit_matrix;
using testing::reference_gate_matrix;

TEST(GateMatrix, SingleX) {
  EXPECT_EQ(gate_matrix(Gate::x(0), 1).matrix(), CMatrix(pauli_x()));
}

TEST(GateMatrix, ControlledXIsCnot) {
  // Target 0, control 1: with qubit 0 as the low bit, states 2 = |01> and 3 = |11> swap.
  CMatrix cnot = CMatrix::Zero(4, 4);
  cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1.0;
  EXPECT_EQ(gate_matrix(Gate::fcx(0, {1}), 2).matrix(), cnot);

  CMatrix reversed = CMatrix::Zero(4, 4);
  reversed(0, 0) = reversed(2, 2) = reversed(1, 3) = reversed(3, 1) = 1.0;
  EXPECT_EQ(gate_matrix(Gate::fcx(1, {0}), 2).matrix(), reversed);
}

TEST(GateMatrix, ControlledRyPi) {
  const CMatrix m = gate_matrix(Gate::fcry(0, {1}, pi), 2).matrix();
  EXPECT_EQ(m(0, 0), Complex(1.0));
  EXPECT_EQ(m(1, 1), Complex(1.0));
  EXPECT_LE(std::abs(m(2, 2)), 1e-15);
  EXPECT_LE(std::abs(m(2, 3) - 1.0), 1e-15);
  EXPECT_LE(std::abs(m(3, 2) + 1.0), 1e-15);
  EXPECT_LE(std::abs(m(3, 3)), 1e-15);
  EXPECT_TRUE(is_unitary(m, 1e-12));
}

TEST(GateMatrix, UnitaryForAllConfigurations) {
  for (int n = 1; n <= 3; ++n) {
    for (int target = 0; target < n; ++target) {
      for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if ((mask >> target) & 1U) continue;
        std::vector<int> controls;
        for (int q = 0; q < n; ++q) {
          if ((mask >> q) & 1U) controls.push_back(q);
        }
        std::vector<Gate> gates{Gate::fcx(target, controls), Gate::fcry(target, controls, 0.7),
                                Gate::fcrz(target, controls, -1.9), Gate::fcr1(target, controls, 2.4)};
        if (controls.empty()) gates.push_back(Gate::x(target));
        for (const Gate& g : gates) {
          const CMatrix m = gate_matrix(g, n).matrix();
          ASSERT_TRUE(is_unitary(m, 1e-12));
          ASSERT_LE(max_abs_diff(m, reference_gate_matrix(g, n)), 1e-15);
        }
      }
    }
  }
}

TEST(CircuitMatrix, EmptyAndXPair) {
  EXPECT_EQ(circuit_matrix({2, {}}).matrix(), CMatrix::Identity(4, 4));
  EXPECT_EQ(circuit_matrix({1, {Gate::x(0), Gate::x(0)}}).matrix(), CMatrix::Identity(2, 2));
}

TEST(CircuitMatrix, MatchesDenseReference) {
  for (int n = 1; n <= 4; ++n) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const Circuit c = testing::random_circuit(n, 40, seed);
      ASSERT_LE(max_abs_diff(circuit_matrix(c).matrix(), reference_circuit_matrix(c)), 1e-12);
    }
  }
}

TEST(CircuitMatrix, TwoLevelLoweringOnThreeQubits) {
  const Matrix2c block = haar_random_unitary(1, 21).matrix();
  for (std::uint64_t s1 = 0; s1 < 8; ++s1) {
    for (int r = 0; r < 3; ++r) {
      if ((s1 >> r) & 1U) continue;
      const TwoLevelUnitary tl{s1, s1 | (1u << r), block};
      ASSERT_LE(max_abs_diff(circuit_matrix({3, two_level_to_gates(tl, 3)}).matrix(), tl.embed(3)),
                1e-12);
    }
  }
}

TEST(CircuitMatrix, ConcatenationIsProduct) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Circuit c = testing::random_circuit(3, 50, 100 + seed);
    const std::size_t split = seed * 5;
    Circuit head{3, {c.gates.begin(), c.gates.begin() + static_cast<long>(split)}};
    Circuit tail{3, {c.gates.begin() + static_cast<long>(split), c.gates.end()}};
    const CMatrix product = circuit_matrix(tail).matrix() * circuit_matrix(head).matrix();
    ASSERT_LE(max_abs_diff(circuit_matrix(c).matrix(), product), 1e-12);
  }
}

TEST(Verify, IdentityAgainstEmptyCircuit) {
  const auto r = verify(UnitaryMatrix::identity(2), {2, {}}, 1e-10);
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.frobenius_error, 0.0);
  EXPECT_EQ(r.max_abs_entry_error, 0.0);
  EXPECT_EQ(r.gate_count, 0u);
}

TEST(Verify, PipelinePassesAndPerturbationFails) {
  const auto a = haar_random_unitary(3, 7);
  Circuit c = matrix_to_circuit(a);
  EXPECT_TRUE(verify(a, c, 1e-8).passed);
  for (Gate& g : c.gates) {
    if (g.kind == GateKind::FCRy) {
      *g.angle += 1e-3;
      break;
    }
  }
  const auto r = verify(a, c, 1e-8);
  EXPECT_FALSE(r.passed);
  EXPECT_GT(r.frobenius_error, 1e-5);
}

TEST(Verify, GlobalPhaseIsNotForgiven) {
  const auto a = haar_random_unitary(2, 9);
  const UnitaryMatrix shifted(CMatrix(a.matrix() * std::polar(1.0, 0.1)));
  EXPECT_FALSE(verify(shifted, matrix_to_circuit(a), 1e-8).passed);
}

TEST(Verify, DimensionMismatch) {
  EXPECT_THROW(verify(UnitaryMatrix::identity(2), {3, {}}, 1e-8), DimensionError);
}

TEST(Verify, PhaseExactAcrossSizes) {
  for (int n = 1; n <= 5; ++n) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto a = haar_random_unitary(n, 500 + seed);
      ASSERT_TRUE(verify(a, matrix_to_circuit(a), 1e-8).passed) << n << " " << seed;
    }
  }
}

}  // namespace
}  // namespace qdecomp
