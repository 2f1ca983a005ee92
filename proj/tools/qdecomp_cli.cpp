// qdecomp: compile a unitary matrix into X and fully controlled Ry/Rz/R1 gates.
//
//   qdecomp decompose -i matrix.json [-o out] [--backend qsharp|qasm3|json] [--no-optimize]
//   qdecomp verify -i matrix.json --circuit circuit.json [--tol 1e-8]
//   qdecomp bench [--n-min 1] [--n-max 6] [--seeds 1] [--seed 42] [--csv table.csv]
//   qdecomp random -n 3 [--seed 7] [-o matrix.json]
//
// Exit codes: 0 success, 1 verification failure, 2 input error.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "qdecomp/qdecomp.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitInputError = 2;

struct StageError {
  std::string stage;
  std::string message;
};

std::string read_file(const std::string& path, const std::string& stage) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StageError{stage, "cannot open '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw StageError{"write", "cannot open '" + path + "' for writing"};
  out << text;
}

template <typename F>
auto at_stage(const std::string& stage, F&& f) {
  try {
    return f();
  } catch (const qdecomp::Error& e) {
    throw StageError{stage, e.what()};
  }
}

void print_report(const qdecomp::VerificationReport& r) {
  std::cerr << "verification: " << (r.passed ? "passed" : "FAILED")
            << "  frobenius_error=" << r.frobenius_error
            << "  max_abs_entry_error=" << r.max_abs_entry_error << "  tolerance=" << r.tolerance
            << "  gate_count=" << r.gate_count << "\n";
}

void print_census(const qdecomp::GateCensus& g) {
  std::cerr << "census: X=" << g.count_x << " Ry=" << g.count_ry << " Rz=" << g.count_rz
            << " R1=" << g.count_r1 << " FCX=" << g.count_fcx << " total=" << g.total()
            << " ratio=" << g.ratio() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compile a 2^n x 2^n unitary into X and fully controlled Ry/Rz/R1 gates"};
  app.require_subcommand(1);

  std::string input;
  std::string output;
  std::string backend_name = "qsharp";
  std::string op_name = "ApplyUnitary";
  bool no_optimize = false;
  double tol = -1.0;
  int precision = 17;
  auto* decompose = app.add_subcommand("decompose", "Decompose a matrix file and emit a circuit");
  decompose->add_option("-i,--input", input, "Matrix JSON file")->required();
  decompose->add_option("-o,--output", output, "Output file (default: standard output)");
  decompose->add_option("--backend", backend_name, "qsharp, qasm3 or json")
      ->check(CLI::IsMember({"qsharp", "qasm3", "json"}));
  decompose->add_flag("--no-optimize", no_optimize, "Skip X cancellation and identity removal");
  decompose->add_option("--tol", tol, "Unitarity tolerance for the input (default 1e-8 * dim)");
  decompose->add_option("--name", op_name, "Q# operation name");
  decompose->add_option("--precision", precision, "Significant digits for angles (17 = exact)");

  std::string circuit_path;
  double verify_tol = -1.0;
  auto* verify = app.add_subcommand("verify", "Check a circuit JSON against a matrix");
  verify->add_option("-i,--input", input, "Matrix JSON file")->required();
  verify->add_option("--circuit", circuit_path, "Circuit JSON IR file")->required();
  verify->add_option("--tol", verify_tol, "Frobenius tolerance (default 1e-8, 1e-6 for n > 6)");

  qdecomp::BenchConfig bench_cfg;
  std::string csv_path;
  auto* bench = app.add_subcommand("bench", "Gate counts for Haar-random matrices");
  bench->add_option("--n-min", bench_cfg.n_min, "Smallest qubit count")->check(CLI::Range(1, 9));
  bench->add_option("--n-max", bench_cfg.n_max, "Largest qubit count")->check(CLI::Range(1, 9));
  bench->add_option("--seeds", bench_cfg.seeds_per_n, "Matrices per qubit count");
  bench->add_option("--seed", bench_cfg.seed0, "First seed");
  bench->add_option("--csv", csv_path, "Also write the table as CSV");

  int random_n = 2;
  std::uint64_t random_seed = 42;
  auto* random = app.add_subcommand("random", "Write a Haar-random unitary matrix file");
  random->add_option("-n", random_n, "Qubit count")->check(CLI::Range(1, 9));
  random->add_option("--seed", random_seed, "Seed");
  random->add_option("-o,--output", output, "Output file (default: standard output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (*decompose) {
      const std::string text = read_file(input, "read");
      const auto matrix = at_stage("load", [&] { return qdecomp::load_matrix(text, tol); });
      const auto circuit =
          at_stage("decompose", [&] { return qdecomp::matrix_to_circuit(matrix, !no_optimize); });
      qdecomp::EmitOptions opts;
      opts.operation_name = op_name;
      opts.angle_precision = precision;
      opts.backend = *qdecomp::backend_from_string(backend_name);
      const std::string emitted = at_stage("emit", [&] { return qdecomp::emit(circuit, opts); });
      write_output(output, emitted);
      print_census(qdecomp::census(circuit));
      const auto report = qdecomp::verify(matrix, circuit,
                                          qdecomp::default_verification_tolerance(matrix.n()));
      print_report(report);
      return report.passed ? kExitOk : kExitVerifyFailed;
    }
    if (*verify) {
      const auto matrix =
          at_stage("load", [&] { return qdecomp::load_matrix(read_file(input, "read")); });
      const auto circuit = at_stage(
          "load circuit", [&] { return qdecomp::parse_json(read_file(circuit_path, "read")); });
      const double t =
          verify_tol >= 0 ? verify_tol : qdecomp::default_verification_tolerance(matrix.n());
      const auto report = at_stage("verify", [&] { return qdecomp::verify(matrix, circuit, t); });
      print_report(report);
      return report.passed ? kExitOk : kExitVerifyFailed;
    }
    if (*bench) {
      const auto rows = at_stage("bench", [&] { return qdecomp::run_bench(bench_cfg); });
      std::cout << qdecomp::format_bench_table(rows);
      if (!csv_path.empty()) write_output(csv_path, qdecomp::format_bench_csv(rows));
      for (const auto& r : rows) {
        if (!r.all_verified()) return kExitVerifyFailed;
      }
      return kExitOk;
    }
    if (*random) {
      const auto m =
          at_stage("random", [&] { return qdecomp::haar_random_unitary(random_n, random_seed); });
      write_output(output, qdecomp::save_matrix(m));
      return kExitOk;
    }
  } catch (const StageError& e) {
    std::cerr << "error [" << e.stage << "]: " << e.message << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
