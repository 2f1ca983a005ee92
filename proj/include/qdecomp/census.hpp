#pragma once

// Gate counting and the random-matrix gate-count benchmark.

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "qdecomp/emitters.hpp"
#include "qdecomp/simulator.hpp"
#include "qdecomp/synthesis.hpp"

namespace qdecomp {

struct GateCensus {
  int n = 0;
  std::size_t count_x = 0;
  std::size_t count_ry = 0;
  std::size_t count_rz = 0;
  std::size_t count_r1 = 0;
  std::size_t count_fcx = 0;

  std::size_t total() const { return count_x + count_ry + count_rz + count_r1 + count_fcx; }
  /// G(n) / 4^n.
  double ratio() const {
    return static_cast<double>(total()) / static_cast<double>(std::uint64_t{1} << (2 * n));
  }

  friend bool operator==(const GateCensus&, const GateCensus&) = default;
};

inline GateCensus census(const Circuit& c) {
  GateCensus g;
  g.n = c.n;
  for (const Gate& gate : c.gates) {
    switch (gate.kind) {
      case GateKind::X: ++g.count_x; break;
      case GateKind::FCX: ++g.count_fcx; break;
      case GateKind::FCRy: ++g.count_ry; break;
      case GateKind::FCRz: ++g.count_rz; break;
      case GateKind::FCR1: ++g.count_r1; break;
    }
  }
  return g;
}

struct BenchConfig {
  int n_min = 1;
  int n_max = 6;
  int seeds_per_n = 1;
  std::uint64_t seed0 = 42;
};

/// Per-n result. Counts are means over the seeds; for Haar-random input they
/// are identical across seeds with probability one.
struct BenchRow {
  int n = 0;
  int samples = 0;
  double x = 0, ry = 0, rz = 0, r1 = 0, fcx = 0;
  int verified = 0;
  double max_frobenius_error = 0.0;
  GateCensus first;

  double total() const { return x + ry + rz + r1 + fcx; }
  double ratio() const { return total() / static_cast<double>(std::uint64_t{1} << (2 * n)); }
  bool all_verified() const { return verified == samples; }
};

/// Decomposes seeds_per_n Haar matrices per n (seeds seed0, seed0 + 1, ...),
/// verifies each circuit against its matrix and tallies gate kinds.
inline std::vector<BenchRow> run_bench(const BenchConfig& cfg) {
  if (cfg.n_min < 1 || cfg.n_max > 9 || cfg.n_min > cfg.n_max) {
    throw RangeError("bench needs 1 <= n-min <= n-max <= 9");
  }
  if (cfg.seeds_per_n < 1) throw RangeError("seeds per n must be >= 1");
  std::vector<BenchRow> rows;
  for (int n = cfg.n_min; n <= cfg.n_max; ++n) {
    BenchRow row;
    row.n = n;
    for (int k = 0; k < cfg.seeds_per_n; ++k) {
      const UnitaryMatrix a = haar_random_unitary(n, cfg.seed0 + static_cast<std::uint64_t>(k));
      const Circuit c = matrix_to_circuit(a, true);
      const VerificationReport report = verify(a, c, default_verification_tolerance(n));
      const GateCensus g = census(c);
      if (k == 0) row.first = g;
      row.x += static_cast<double>(g.count_x);
      row.ry += static_cast<double>(g.count_ry);
      row.rz += static_cast<double>(g.count_rz);
      row.r1 += static_cast<double>(g.count_r1);
      row.fcx += static_cast<double>(g.count_fcx);
      row.verified += report.passed ? 1 : 0;
      row.max_frobenius_error = std::max(row.max_frobenius_error, report.frobenius_error);
      ++row.samples;
    }
    const double s = row.samples;
    row.x /= s;
    row.ry /= s;
    row.rz /= s;
    row.r1 /= s;
    row.fcx /= s;
    rows.push_back(row);
  }
  return rows;
}

namespace detail {

inline std::string fixed(double v, int digits) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(digits);
  os << v;
  return os.str();
}

inline std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

}  // namespace detail

/// Columns: n, x, ry, rz, r1, fcx, total, ratio.
inline std::string format_bench_csv(const std::vector<BenchRow>& rows) {
  std::string out = "n,x,ry,rz,r1,fcx,total,ratio\n";
  for (const BenchRow& r : rows) {
    out += std::to_string(r.n);
    for (double v : {r.x, r.ry, r.rz, r.r1, r.fcx, r.total()}) out += "," + format_angle(v);
    out += "," + detail::fixed(r.ratio(), 4) + "\n";
  }
  return out;
}

inline std::string format_bench_table(const std::vector<BenchRow>& rows) {
  const std::size_t w = 10;
  std::string out;
  for (const char* h : {"n", "#X", "#Ry", "#Rz", "#R1", "#FCX", "G(n)", "G(n)/4^n", "verified"}) {
    out += detail::pad(h, w);
  }
  out += "\n";
  for (const BenchRow& r : rows) {
    out += detail::pad(std::to_string(r.n), w);
    for (double v : {r.x, r.ry, r.rz, r.r1, r.fcx, r.total()}) out += detail::pad(format_angle(v), w);
    out += detail::pad(detail::fixed(r.ratio(), 2), w);
    out += detail::pad(std::to_string(r.verified) + "/" + std::to_string(r.samples), w);
    out += "\n";
  }
  return out;
}

}  // namespace qdecomp
