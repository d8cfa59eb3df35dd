#pragma once

#include <json.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "structobs/error.hpp"
#include "structobs/graph.hpp"
#include "structobs/structural_matrix.hpp"
#include "structobs/system.hpp"

namespace structobs {

// Wire format (1-based throughout):
//   {"n": 5, "p": 1, "m": 2,
//    "modes": [{"A": [[3,1],[2,2]], "F": [[2,1]], "Q": []}, ...],
//    "metadata": {...}}
struct SystemDocument {
  SwitchedSystem system;
  nlohmann::json metadata;  // null when absent
};

namespace detail {

inline std::pair<std::size_t, std::size_t> line_col(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

inline nlohmann::json parse_json(std::string_view text) {
  try {
    return nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, col] = line_col(text, e.byte);
    throw ParseError("syntax error at line " + std::to_string(line) + ", column " +
                         std::to_string(col) + ": " + e.what(),
                     line, col);
  }
}

inline std::size_t get_count(const nlohmann::json& j, const char* key, bool required = true) {
  if (!j.contains(key)) {
    if (!required) return 0;
    throw ParseError(std::string("missing field \"") + key + "\"");
  }
  const auto& v = j.at(key);
  if (!v.is_number_integer()) throw ParseError(std::string("field \"") + key + "\" must be an integer");
  if (v.get<long long>() < 0) {
    throw ValidationError(ValidationKind::NonPositiveDimension,
                          std::string("field \"") + key + "\" is negative");
  }
  return v.get<std::size_t>();
}

inline std::vector<std::size_t> get_index_list(const nlohmann::json& j, const char* key) {
  std::vector<std::size_t> out;
  if (!j.contains(key)) return out;
  const auto& v = j.at(key);
  if (!v.is_array()) throw ParseError(std::string("field \"") + key + "\" must be an array");
  for (const auto& x : v) {
    if (!x.is_number_integer() || x.get<long long>() < 1) {
      throw ParseError(std::string("field \"") + key + "\" must hold positive integers");
    }
    out.push_back(x.get<std::size_t>());
  }
  return out;
}

inline StructuralMatrix read_matrix(const nlohmann::json& mode, const char* name, std::size_t rows,
                                    std::size_t cols, std::size_t k) {
  const std::string where = "mode " + std::to_string(k) + " " + name;
  std::vector<Entry> entries;
  if (mode.contains(name)) {
    const auto& list = mode.at(name);
    if (!list.is_array()) throw ParseError(where + ": expected a list of [row, col] pairs");
    for (const auto& pair : list) {
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer() ||
          !pair[1].is_number_integer()) {
        throw ParseError(where + ": expected [row, col] integer pairs");
      }
      const long long r = pair[0].get<long long>();
      const long long c = pair[1].get<long long>();
      if (r < 1 || c < 1 || static_cast<std::size_t>(r) > rows ||
          static_cast<std::size_t>(c) > cols) {
        throw ValidationError(ValidationKind::OutOfRange,
                              where + ": coordinate [" + std::to_string(r) + "," +
                                  std::to_string(c) + "] outside " + std::to_string(rows) + "x" +
                                  std::to_string(cols),
                              k);
      }
      entries.push_back({static_cast<std::size_t>(r), static_cast<std::size_t>(c)});
    }
  }
  return {rows, cols, std::move(entries)};
}

inline nlohmann::ordered_json matrix_json(const StructuralMatrix& m) {
  auto out = nlohmann::ordered_json::array();
  for (const Entry& e : m.entries()) out.push_back({e.row, e.col});
  return out;
}

inline nlohmann::ordered_json index_json(const std::vector<std::size_t>& v) {
  auto out = nlohmann::ordered_json::array();
  for (std::size_t x : v) out.push_back(x);
  return out;
}

// Prints arrays of scalars and [row, col] pairs on one line, objects indented.
inline void write_compact(std::ostream& os, const nlohmann::ordered_json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  if (j.is_object()) {
    if (j.empty()) {
      os << "{}";
      return;
    }
    os << "{\n";
    std::size_t i = 0;
    for (auto it = j.begin(); it != j.end(); ++it, ++i) {
      os << pad << "  " << nlohmann::json(it.key()).dump() << ": ";
      write_compact(os, it.value(), indent + 1);
      os << (i + 1 < j.size() ? ",\n" : "\n");
    }
    os << pad << "}";
  } else if (j.is_array() && std::any_of(j.begin(), j.end(), [](const auto& x) {
               return x.is_object() || (x.is_array() && x.size() > 2);
             })) {
    os << "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      os << pad << "  ";
      write_compact(os, j[i], indent + 1);
      os << (i + 1 < j.size() ? ",\n" : "\n");
    }
    os << pad << "]";
  } else {
    os << j.dump(-1, ' ', false);
  }
}

}  // namespace detail

inline SystemDocument parse_system_document(std::string_view text,
                                            bool allow_zero_f_columns = false) {
  const nlohmann::json j = detail::parse_json(text);
  if (!j.is_object()) throw ParseError("system document must be a JSON object");
  const std::size_t n = detail::get_count(j, "n");
  const std::size_t p = detail::get_count(j, "p", false);
  if (n == 0) throw ValidationError(ValidationKind::NonPositiveDimension, "n must be positive");
  if (!j.contains("modes") || !j.at("modes").is_array()) {
    throw ParseError("missing array field \"modes\"");
  }
  const auto& modes = j.at("modes");
  if (modes.empty()) {
    throw ValidationError(ValidationKind::NonPositiveDimension, "at least one mode is required");
  }
  if (j.contains("m") && detail::get_count(j, "m") != modes.size()) {
    throw ValidationError(ValidationKind::DimensionMismatch,
                          "m = " + std::to_string(detail::get_count(j, "m")) + " but " +
                              std::to_string(modes.size()) + " modes are listed");
  }

  SystemDocument doc;
  doc.system.n = n;
  doc.system.p = p;
  for (std::size_t k = 0; k < modes.size(); ++k) {
    const auto& mode = modes[k];
    if (!mode.is_object()) throw ParseError("mode " + std::to_string(k + 1) + " must be an object");
    doc.system.modes.push_back({detail::read_matrix(mode, "A", n, n, k + 1),
                                detail::read_matrix(mode, "F", n, p, k + 1),
                                detail::read_matrix(mode, "Q", p, p, k + 1)});
  }
  validate(doc.system, allow_zero_f_columns);
  if (j.contains("metadata")) doc.metadata = j.at("metadata");
  return doc;
}

inline SwitchedSystem parse_system(std::string_view text, bool allow_zero_f_columns = false) {
  return parse_system_document(text, allow_zero_f_columns).system;
}

inline std::string write_system(const SwitchedSystem& sys,
                                const nlohmann::json& metadata = nullptr) {
  nlohmann::ordered_json j;
  j["n"] = sys.n;
  j["p"] = sys.p;
  j["m"] = sys.m();
  j["modes"] = nlohmann::ordered_json::array();
  for (const Mode& mode : sys.modes) {
    nlohmann::ordered_json mj;
    mj["A"] = detail::matrix_json(mode.A);
    mj["F"] = detail::matrix_json(mode.F);
    mj["Q"] = detail::matrix_json(mode.Q);
    j["modes"].push_back(std::move(mj));
  }
  if (!metadata.is_null()) j["metadata"] = nlohmann::ordered_json::parse(metadata.dump());
  std::ostringstream os;
  detail::write_compact(os, j, 0);
  os << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Placement documents

inline std::string write_placement(const SensorPlacement& pl) {
  nlohmann::ordered_json j;
  j["J"] = detail::index_json(pl.J);
  j["J_d"] = detail::index_json(pl.J_d);
  j["J_x_states"] = detail::index_json(pl.J_x_states);
  j["cardinality"] = pl.cardinality();
  nlohmann::ordered_json prov = nlohmann::ordered_json::object();
  for (const auto& [idx, p] : pl.provenance) prov[std::to_string(idx)] = std::string(to_string(p));
  j["provenance"] = std::move(prov);
  j["algorithm"] = pl.algorithm;
  if (!pl.warnings.empty()) j["warnings"] = pl.warnings;
  std::ostringstream os;
  detail::write_compact(os, j, 0);
  os << "\n";
  return os.str();
}

/// `p` fixes the input/state split; without it the split is inferred from
/// J_d and J_x_states, which must then be present.
inline SensorPlacement parse_placement(std::string_view text,
                                       std::optional<std::size_t> p = std::nullopt) {
  const nlohmann::json j = detail::parse_json(text);
  if (!j.is_object()) throw ParseError("placement document must be a JSON object");
  if (!j.contains("J")) throw ParseError("missing field \"J\"");

  SensorPlacement pl;
  pl.J = detail::get_index_list(j, "J");
  std::sort(pl.J.begin(), pl.J.end());
  if (std::adjacent_find(pl.J.begin(), pl.J.end()) != pl.J.end()) {
    throw ParseError("J lists an index twice");
  }

  const bool has_split = j.contains("J_d") || j.contains("J_x_states");
  std::vector<std::size_t> jd = detail::get_index_list(j, "J_d");
  std::vector<std::size_t> js = detail::get_index_list(j, "J_x_states");
  std::sort(jd.begin(), jd.end());
  std::sort(js.begin(), js.end());

  std::size_t offset = 0;
  if (p) {
    offset = *p;
  } else if (!has_split) {
    throw ParseError("J_d / J_x_states missing and the input count is unknown");
  } else {
    std::vector<std::size_t> jx;
    std::set_difference(pl.J.begin(), pl.J.end(), jd.begin(), jd.end(), std::back_inserter(jx));
    if (!jx.empty() && !js.empty() && jx.front() > js.front()) offset = jx.front() - js.front();
    if (jx.empty() && !jd.empty()) offset = jd.back();
  }
  for (std::size_t idx : pl.J) {
    if (idx <= offset) {
      pl.J_d.push_back(idx);
    } else {
      pl.J_x.push_back(idx);
      pl.J_x_states.push_back(idx - offset);
    }
  }
  if (has_split && (jd != pl.J_d || js != pl.J_x_states)) {
    throw ParseError("J_d / J_x_states are inconsistent with J");
  }
  if (j.contains("cardinality") && detail::get_count(j, "cardinality") != pl.J.size()) {
    throw ParseError("cardinality does not match |J|");
  }

  if (j.contains("provenance")) {
    const auto& prov = j.at("provenance");
    if (!prov.is_object()) throw ParseError("provenance must be an object");
    for (auto it = prov.begin(); it != prov.end(); ++it) {
      std::size_t idx = 0;
      try {
        idx = std::stoul(it.key());
      } catch (const std::exception&) {
        throw ParseError("provenance key \"" + it.key() + "\" is not an index");
      }
      if (!std::binary_search(pl.J.begin(), pl.J.end(), idx)) {
        throw ParseError("provenance names index " + it.key() + " which is not in J");
      }
      const std::string tag = it.value().is_string() ? it.value().get<std::string>() : "";
      if (tag == "Jprime") {
        pl.provenance[idx] = Provenance::Jprime;
      } else if (tag == "Jdoubleprime") {
        pl.provenance[idx] = Provenance::Jdoubleprime;
      } else if (tag == "Jtripleprime") {
        pl.provenance[idx] = Provenance::Jtripleprime;
      } else if (tag == "classSpecific") {
        pl.provenance[idx] = Provenance::ClassSpecific;
      } else {
        throw ParseError("unknown provenance tag for index " + it.key());
      }
    }
  }
  if (j.contains("algorithm")) {
    if (!j.at("algorithm").is_string()) throw ParseError("algorithm must be a string");
    pl.algorithm = j.at("algorithm").get<std::string>();
  }
  if (j.contains("warnings")) {
    for (const auto& w : j.at("warnings")) {
      if (!w.is_string()) throw ParseError("warnings must be strings");
      pl.warnings.push_back(w.get<std::string>());
    }
  }
  return pl;
}

// ---------------------------------------------------------------------------
// DOT

/// Union digraph with one cluster per SCC (targets in blue), inputs d_i,
/// states x_i, and a square output node y_k per sensor when a placement is given.
inline std::string export_dot(const SwitchedSystem& sys, const SensorPlacement* pl = nullptr) {
  const AugmentedSystem aug = augment(sys);
  const Digraph g = build_union_digraph(aug);
  const SccDecomposition scc = scc_decompose(g);
  auto label = [&](std::size_t v) {
    return v <= sys.p ? "d" + std::to_string(v) : "x" + std::to_string(v - sys.p);
  };

  std::ostringstream os;
  os << "digraph structobs {\n";
  os << "  rankdir=LR;\n";
  os << "  node [shape=circle];\n";
  for (std::size_t c = 0; c < scc.component_count(); ++c) {
    os << "  subgraph cluster_" << c + 1 << " {\n";
    if (scc.is_target[c]) {
      os << "    style=dotted; color=blue; penwidth=2; label=\"target\";\n";
    } else {
      os << "    style=dotted; color=black; label=\"\";\n";
    }
    for (std::size_t v : scc.components[c]) {
      os << "    v" << v << " [label=\"" << label(v) << "\"];\n";
    }
    os << "  }\n";
  }
  for (std::size_t v = 1; v <= g.vertex_count(); ++v) {
    for (std::size_t w : g.out(v)) os << "  v" << v << " -> v" << w << ";\n";
  }
  if (pl != nullptr) {
    for (std::size_t k = 0; k < pl->J.size(); ++k) {
      os << "  y" << k + 1 << " [shape=square, label=\"y" << k + 1 << "\"];\n";
      os << "  v" << pl->J[k] << " -> y" << k + 1 << ";\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace structobs
