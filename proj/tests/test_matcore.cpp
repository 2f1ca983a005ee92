#include <gtest/gtest.h>

#include "qdecomp/matcore.hpp"
#include "qdecomp/matrix_io.hpp"

namespace qdecomp {
namespace {

CMatrix cnot() {
  CMatrix m = CMatrix::Zero(4, 4);
  m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1.0;
  return m;
}

TEST(IsUnitary, AcceptsIdentityAndCnot) {
  EXPECT_TRUE(is_unitary(CMatrix::Identity(4, 4), 1e-10));
  EXPECT_TRUE(is_unitary(cnot(), 1e-10));
}

TEST(IsUnitary, RejectsScaledEntry) {
  CMatrix m = CMatrix::Identity(4, 4);
  m(0, 0) = 2.0;
  EXPECT_FALSE(is_unitary(m, 1e-10));
}

TEST(IsUnitary, NonSquareIsDimensionError) {
  EXPECT_THROW(is_unitary(CMatrix::Zero(2, 3), 1e-10), DimensionError);
}

TEST(UnitaryMatrix, RejectsNonPowerOfTwo) {
  EXPECT_THROW(UnitaryMatrix(CMatrix::Identity(3, 3)), DimensionError);
  EXPECT_THROW(UnitaryMatrix(CMatrix::Identity(1, 1)), DimensionError);
}

TEST(UnitaryMatrix, ValidationErrorCarriesResidual) {
  CMatrix m = CMatrix::Identity(2, 2);
  m(1, 1) = 2.0;
  try {
    UnitaryMatrix u(m);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NEAR(e.residual(), 3.0, 1e-12);
    EXPECT_NE(std::string(e.what()).find("Frobenius"), std::string::npos);
  }
}

TEST(StateIndex, PaperExampleKet) {
  EXPECT_EQ((StateIndex{25, 5}.ket()), "10011");
  EXPECT_EQ(StateIndex::from_ket("10011").value, 25u);
}

TEST(StateIndex, KetRoundTripExhaustive) {
  for (int n = 1; n <= 8; ++n) {
    for (std::uint64_t i = 0; i < (1u << n); ++i) {
      const StateIndex s{i, n};
      ASSERT_EQ(StateIndex::from_ket(s.ket()), s);
    }
  }
  EXPECT_THROW(StateIndex::from_ket("012"), ParseError);
}

TEST(Haar, DeterministicPerSeed) {
  const auto a = haar_random_unitary(2, 42);
  const auto b = haar_random_unitary(2, 42);
  EXPECT_EQ(a, b);
  EXPECT_FALSE(a == haar_random_unitary(2, 43));
}

TEST(Haar, UnitaryAndUnitDeterminant) {
  EXPECT_TRUE(is_unitary(haar_random_unitary(3, 7).matrix(), 1e-10));
  const Complex det = haar_random_unitary(1, 1).matrix().determinant();
  EXPECT_NEAR(std::abs(det), 1.0, 1e-10);
}

TEST(Haar, RangeChecked) {
  EXPECT_THROW(haar_random_unitary(0, 1), RangeError);
  EXPECT_THROW(haar_random_unitary(10, 1), RangeError);
}

TEST(Haar, UnitaryAcrossSeeds) {
  for (int n = 1; n <= 6; ++n) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      ASSERT_TRUE(is_unitary(haar_random_unitary(n, seed).matrix(), 1e-10)) << n << " " << seed;
    }
  }
}

// First-moment check: E|U_00|^2 = 1/d under the Haar measure.
TEST(Haar, DiagonalSecondMoment) {
  double acc = 0.0;
  const int samples = 2000;
  for (int s = 0; s < samples; ++s) acc += std::norm(haar_random_unitary(2, 1000 + s)(0, 0));
  EXPECT_NEAR(acc / samples, 0.25, 0.02);
}

TEST(MatrixIo, IdentityParses) {
  const auto m = load_matrix(R"({"n": 1, "matrix": [[[1, 0], [0, 0]], [[0, 0], [1, 0]]]})");
  EXPECT_EQ(m.matrix(), CMatrix::Identity(2, 2));
}

TEST(MatrixIo, CnotParses) {
  const auto m = load_matrix(save_matrix(UnitaryMatrix(cnot())));
  EXPECT_EQ(m.matrix(), cnot());
}

TEST(MatrixIo, ThreeByThreeIsDimensionError) {
  const char* text =
      R"({"n": 2, "matrix": [[[1,0],[0,0],[0,0]], [[0,0],[1,0],[0,0]], [[0,0],[0,0],[1,0]]]})";
  EXPECT_THROW(load_matrix(text), DimensionError);
}

TEST(MatrixIo, MismatchedNIsDimensionError) {
  EXPECT_THROW(load_matrix(R"({"n": 2, "matrix": [[[1, 0], [0, 0]], [[0, 0], [1, 0]]]})"),
               DimensionError);
}

TEST(MatrixIo, SyntaxErrorReportsPosition) {
  try {
    load_matrix("{\"n\": 1,\n \"matrix\": [[[1, 0], [0, 0]],, ]}");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_GT(e.column(), 0u);
  }
  EXPECT_THROW(load_matrix(R"({"n": 1, "matrix": [[[1, 0], [0]], [[0, 0], [1, 0]]]})"), ParseError);
  EXPECT_THROW(load_matrix(R"({"matrix": [[[1, 0], [0, 0]], [[0, 0], [1, 0]]]})"), ParseError);
}

TEST(MatrixIo, NonUnitaryIsValidationError) {
  EXPECT_THROW(load_matrix(R"({"n": 1, "matrix": [[[1, 0], [1, 0]], [[0, 0], [1, 0]]]})"),
               ValidationError);
}

TEST(MatrixIo, RoundTripIsBitwise) {
  for (int n = 1; n <= 4; ++n) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto m = haar_random_unitary(n, seed);
      ASSERT_EQ(load_matrix(save_matrix(m)), m);
    }
  }
}

}  // namespace
}  // namespace qdecomp
