#pragma once

// Text backends for circuits: Q#, OpenQASM 3 and a lossless JSON IR.
//
// Every backend uses the register's little-endian indexing: qubit j is bit j
// of the basis-state index, i.e. the j-th character of a ket string.

#include <json.hpp>

#include <array>
#include <charconv>
#include <string>
#include <string_view>

#include "qdecomp/gate.hpp"

namespace qdecomp {

enum class Backend { qsharp, qasm3, json };

inline std::optional<Backend> backend_from_string(std::string_view s) {
  if (s == "qsharp") return Backend::qsharp;
  if (s == "qasm3") return Backend::qasm3;
  if (s == "json") return Backend::json;
  return std::nullopt;
}

struct EmitOptions {
  std::string operation_name = "ApplyUnitary";
  /// Significant digits; 17 or more prints the shortest round-trip form.
  int angle_precision = 17;
  Backend backend = Backend::qsharp;

  void validate() const {
    const auto is_alpha = [](char ch) { return (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z'); };
    const auto is_digit = [](char ch) { return ch >= '0' && ch <= '9'; };
    bool ok = !operation_name.empty() && is_alpha(operation_name.front());
    for (char ch : operation_name) ok = ok && (is_alpha(ch) || is_digit(ch) || ch == '_');
    if (!ok) throw ParseError("invalid operation name '" + operation_name + "'");
    if (angle_precision < 1) throw RangeError("angle precision must be >= 1");
  }
};

inline std::string format_angle(double value, int precision = 17) {
  std::array<char, 64> buf{};
  const auto res = precision >= 17
                       ? std::to_chars(buf.data(), buf.data() + buf.size(), value)
                       : std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                       std::chars_format::general, precision);
  return std::string(buf.data(), res.ptr);
}

namespace detail {

// Ry and Rz flip sign: the backends define them as exp(-i a sigma / 2).
inline double backend_angle(const Gate& g) {
  const double a = g.angle.value_or(0.0);
  return g.kind == GateKind::FCR1 ? a : -a;
}

}  // namespace detail

inline std::string emit_qsharp(const Circuit& c, const EmitOptions& opts = {}) {
  opts.validate();
  c.validate();
  std::string out;
  out += "// Generated by qdecomp: " + std::to_string(c.gates.size()) + " gates on " +
         std::to_string(c.n) + " qubits.\n";
  out += "// Qubit j is bit j of the basis-state index (little-endian): qs[0] is the\n";
  out += "// leftmost character of a ket string.\n";
  out += "operation " + opts.operation_name + " (qs : Qubit[]) : Unit is Adj + Ctl {\n";
  for (const Gate& g : c.gates) {
    const std::string target = "qs[" + std::to_string(g.target) + "]";
    std::string ctrl = "[";
    for (std::size_t k = 0; k < g.controls.size(); ++k) {
      if (k > 0) ctrl += ", ";
      ctrl += "qs[" + std::to_string(g.controls[k]) + "]";
    }
    ctrl += "]";
    const bool controlled = !g.controls.empty();
    out += "    ";
    switch (g.kind) {
      case GateKind::X:
      case GateKind::FCX:
        out += controlled ? "Controlled X(" + ctrl + ", " + target + ");" : "X(" + target + ");";
        break;
      case GateKind::FCRy:
      case GateKind::FCRz:
      case GateKind::FCR1: {
        const std::string name = g.kind == GateKind::FCRy   ? "Ry"
                                 : g.kind == GateKind::FCRz ? "Rz"
                                                            : "R1";
        const std::string args =
            format_angle(detail::backend_angle(g), opts.angle_precision) + ", " + target;
        out += controlled ? "Controlled " + name + "(" + ctrl + ", (" + args + "));"
                          : name + "(" + args + ");";
        break;
      }
    }
    out += "\n";
  }
  out += "}\n";
  return out;
}

inline std::string emit_qasm3(const Circuit& c, const EmitOptions& opts = {}) {
  opts.validate();
  c.validate();
  std::string out = "OPENQASM 3.0;\ninclude \"stdgates.inc\";\n";
  out += "// Qubit j is bit j of the basis-state index (little-endian).\n";
  out += "qubit[" + std::to_string(c.n) + "] q;\n";
  for (const Gate& g : c.gates) {
    if (g.controls.size() == 1) {
      out += "ctrl @ ";
    } else if (!g.controls.empty()) {
      out += "ctrl(" + std::to_string(g.controls.size()) + ") @ ";
    }
    switch (g.kind) {
      case GateKind::X:
      case GateKind::FCX: out += "x"; break;
      case GateKind::FCRy: out += "ry"; break;
      case GateKind::FCRz: out += "rz"; break;
      case GateKind::FCR1: out += "p"; break;
    }
    if (has_angle(g.kind)) {
      out += "(" + format_angle(detail::backend_angle(g), opts.angle_precision) + ")";
    }
    out += " ";
    for (int q : g.controls) out += "q[" + std::to_string(q) + "], ";
    out += "q[" + std::to_string(g.target) + "];\n";
  }
  return out;
}

inline constexpr int kJsonIrVersion = 1;

inline std::string emit_json(const Circuit& c) {
  c.validate();
  nlohmann::ordered_json doc;
  doc["version"] = kJsonIrVersion;
  doc["n"] = c.n;
  auto gates = nlohmann::ordered_json::array();
  for (const Gate& g : c.gates) {
    nlohmann::ordered_json j;
    j["kind"] = std::string(to_string(g.kind));
    j["target"] = g.target;
    j["controls"] = g.controls;
    if (g.angle) j["angle"] = *g.angle;
    gates.push_back(std::move(j));
  }
  doc["gates"] = std::move(gates);
  return doc.dump();
}

inline Circuit parse_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed circuit JSON: ") + e.what());
  }
  try {
    if (!doc.is_object()) throw ParseError("circuit JSON must be an object");
    if (doc.contains("version") && doc["version"] != kJsonIrVersion) {
      throw ParseError("unsupported circuit IR version " + doc["version"].dump());
    }
    Circuit c;
    c.n = doc.at("n").get<int>();
    for (const auto& j : doc.at("gates")) {
      const auto kind_name = j.at("kind").get<std::string>();
      const auto kind = gate_kind_from_string(kind_name);
      if (!kind) throw ParseError("unknown gate kind '" + kind_name + "'");
      Gate g;
      g.kind = *kind;
      g.target = j.at("target").get<int>();
      g.controls = j.value("controls", std::vector<int>{});
      if (j.contains("angle")) g.angle = j["angle"].get<double>();
      c.gates.push_back(std::move(g));
    }
    c.validate();
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid circuit IR: ") + e.what());
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(std::string("invalid circuit IR: ") + e.what());
  }
}

inline std::string emit(const Circuit& c, const EmitOptions& opts) {
  switch (opts.backend) {
    case Backend::qsharp: return emit_qsharp(c, opts);
    case Backend::qasm3: return emit_qasm3(c, opts);
    case Backend::json: return emit_json(c) + "\n";
  }
  return {};
}

}  // namespace qdecomp
