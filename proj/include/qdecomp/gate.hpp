#pragma once

// Gate-level circuit model: single-qubit X and fully controlled X, Ry, Rz, R1.
//
// Rotation conventions:
//   Ry(a) = [[cos a/2, sin a/2], [-sin a/2, cos a/2]]
//   Rz(a) = diag(e^{ia/2}, e^{-ia/2})
//   R1(a) = diag(1, e^{ia})
// Ry and Rz here are exp(+i a sigma / 2); backends with the opposite sign
// convention negate the angle when emitting.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qdecomp/matcore.hpp"

namespace qdecomp {

enum class GateKind { X, FCX, FCRy, FCRz, FCR1 };

constexpr std::string_view to_string(GateKind kind) noexcept {
  switch (kind) {
    case GateKind::X: return "X";
    case GateKind::FCX: return "FCX";
    case GateKind::FCRy: return "FCRy";
    case GateKind::FCRz: return "FCRz";
    case GateKind::FCR1: return "FCR1";
  }
  return "?";
}

inline std::optional<GateKind> gate_kind_from_string(std::string_view s) noexcept {
  for (GateKind k : {GateKind::X, GateKind::FCX, GateKind::FCRy, GateKind::FCRz, GateKind::FCR1}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

constexpr bool has_angle(GateKind kind) noexcept {
  return kind == GateKind::FCRy || kind == GateKind::FCRz || kind == GateKind::FCR1;
}

/// Period of the gate matrix as a function of its angle.
constexpr double angle_period(GateKind kind) noexcept {
  return kind == GateKind::FCR1 ? 2 * std::numbers::pi : 4 * std::numbers::pi;
}

/// Reduces an angle into (-P/2, P/2] for the kind's period P.
inline double normalize_angle(GateKind kind, double angle) {
  const double period = angle_period(kind);
  double r = std::remainder(angle, period);
  if (r <= -period / 2) r += period;
  return r;
}

inline Matrix2c ry_matrix(double a) {
  const double c = std::cos(a / 2);
  const double s = std::sin(a / 2);
  Matrix2c m;
  m << c, s, -s, c;
  return m;
}

inline Matrix2c rz_matrix(double a) {
  Matrix2c m;
  m << std::polar(1.0, a / 2), 0.0, 0.0, std::polar(1.0, -a / 2);
  return m;
}

inline Matrix2c r1_matrix(double a) {
  Matrix2c m;
  m << 1.0, 0.0, 0.0, std::polar(1.0, a);
  return m;
}

struct Gate {
  GateKind kind = GateKind::X;
  int target = 0;
  /// Sorted, excludes target. Empty for X.
  std::vector<int> controls;
  /// Radians; set exactly for FCRy, FCRz, FCR1.
  std::optional<double> angle;

  static Gate x(int target) { return {GateKind::X, target, {}, std::nullopt}; }
  static Gate fcx(int target, std::vector<int> controls) {
    return {GateKind::FCX, target, sorted(std::move(controls)), std::nullopt};
  }
  static Gate rotation(GateKind kind, int target, std::vector<int> controls, double angle) {
    return {kind, target, sorted(std::move(controls)), normalize_angle(kind, angle)};
  }
  static Gate fcry(int target, std::vector<int> controls, double angle) {
    return rotation(GateKind::FCRy, target, std::move(controls), angle);
  }
  static Gate fcrz(int target, std::vector<int> controls, double angle) {
    return rotation(GateKind::FCRz, target, std::move(controls), angle);
  }
  static Gate fcr1(int target, std::vector<int> controls, double angle) {
    return rotation(GateKind::FCR1, target, std::move(controls), angle);
  }

  /// The 2x2 operator applied to the target when all controls are set.
  Matrix2c block() const {
    switch (kind) {
      case GateKind::X:
      case GateKind::FCX: {
        Matrix2c m;
        m << 0.0, 1.0, 1.0, 0.0;
        return m;
      }
      case GateKind::FCRy: return ry_matrix(angle.value_or(0.0));
      case GateKind::FCRz: return rz_matrix(angle.value_or(0.0));
      case GateKind::FCR1: return r1_matrix(angle.value_or(0.0));
    }
    return Matrix2c::Identity();
  }

  /// Throws DimensionError or RangeError when the gate does not fit n qubits.
  void validate(int n) const {
    if (target < 0 || target >= n) {
      throw DimensionError("gate target " + std::to_string(target) + " outside register of " +
                           std::to_string(n) + " qubits");
    }
    if (kind == GateKind::X && !controls.empty()) throw DimensionError("X gate takes no controls");
    if (!std::is_sorted(controls.begin(), controls.end()) ||
        std::adjacent_find(controls.begin(), controls.end()) != controls.end()) {
      throw DimensionError("gate controls must be sorted and distinct");
    }
    for (int c : controls) {
      if (c < 0 || c >= n) throw DimensionError("control " + std::to_string(c) + " out of range");
      if (c == target) throw DimensionError("control equals target");
    }
    if (has_angle(kind) != angle.has_value()) {
      throw RangeError(std::string(to_string(kind)) +
                       (has_angle(kind) ? " requires an angle" : " takes no angle"));
    }
    if (angle && !std::isfinite(*angle)) throw RangeError("gate angle must be finite");
  }

  friend bool operator==(const Gate&, const Gate&) = default;

 private:
  static std::vector<int> sorted(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    return v;
  }
};

/// Ordered gate list on n qubits; gates[0] is applied first, so the circuit's
/// matrix is M_{k-1} * ... * M_1 * M_0.
struct Circuit {
  int n = 1;
  std::vector<Gate> gates;

  void validate() const {
    if (n < 1 || n > 30) throw RangeError("circuit qubit count must be in 1..30");
    for (const Gate& g : gates) g.validate(n);
  }

  friend bool operator==(const Circuit&, const Circuit&) = default;
};

/// U = R1(phi) Rz(lambda + mu) Ry(2 theta) Rz(lambda - mu).
struct ZYZAngles {
  double phi = 0.0;
  double theta = 0.0;
  double lambda = 0.0;
  double mu = 0.0;

  Matrix2c reconstruct() const {
    return r1_matrix(phi) * rz_matrix(lambda + mu) * ry_matrix(2 * theta) * rz_matrix(lambda - mu);
  }
};

/// Splits off the determinant phase with R1 and reads the Euler angles of
/// the remaining special unitary. Undefined angles (mu when theta = 0,
/// lambda when theta = pi/2) are set to zero.
inline ZYZAngles zyz_decompose(const Matrix2c& u) {
  const double residual = unitarity_residual(CMatrix(u));
  if (residual > 1e-10) {
    throw ValidationError("2x2 block is not unitary (residual " + std::to_string(residual) + ")",
                          residual);
  }
  ZYZAngles out;
  out.phi = std::arg(u.determinant());
  Matrix2c special = u;
  special.row(1) *= std::polar(1.0, -out.phi);
  const double c = std::abs(special(0, 0));
  const double s = std::abs(special(0, 1));
  // atan2 is the same angle as arccos(|u00|) but stays accurate near 0 and pi/2.
  out.theta = std::atan2(s, c);
  out.lambda = c == 0.0 ? 0.0 : std::arg(special(0, 0));
  out.mu = s == 0.0 ? 0.0 : std::arg(special(0, 1));
  return out;
}

}  // namespace qdecomp
