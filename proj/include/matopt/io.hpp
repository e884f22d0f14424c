#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "matopt/analysis.hpp"
#include "matopt/element.hpp"
#include "matopt/error.hpp"
#include "matopt/instances.hpp"
#include "matopt/matroid.hpp"
#include "matopt/rational.hpp"
#include "matopt/tropical.hpp"
#include "matopt/version.hpp"
#include "matopt/weighting.hpp"

namespace matopt::io {

using nlohmann::json;

/// A parsed instance file: the matroid, its weighting, and a digest of the
/// canonical form for tying reports back to inputs.
struct Instance {
  Matroid matroid;
  Weighting weights;
  std::map<std::string, ElementId> by_label;
  std::string digest;
};

[[nodiscard]] inline ElementId element_by_label(const Instance& inst, const std::string& label) {
  auto it = inst.by_label.find(label);
  if (it == inst.by_label.end()) {
    throw DomainError("unknown element '" + label + "'");
  }
  return it->second;
}

namespace detail {

inline const json& field(const json& j, const char* key, const char* where) {
  if (!j.is_object()) {
    throw ParseError(std::string(where) + ": expected an object");
  }
  auto it = j.find(key);
  if (it == j.end()) {
    throw ParseError(std::string(where) + ": missing field '" + key + "'");
  }
  return *it;
}

inline std::string string_field(const json& j, const char* key, const char* where) {
  const json& v = field(j, key, where);
  if (!v.is_string()) {
    throw ParseError(std::string(where) + ": field '" + key + "' must be a string");
  }
  return v.get<std::string>();
}

inline std::size_t index_field(const json& j, const char* key, const char* where) {
  const json& v = field(j, key, where);
  if (!v.is_number_unsigned()) {
    throw ParseError(std::string(where) + ": field '" + key +
                     "' must be a nonnegative integer");
  }
  return v.get<std::size_t>();
}

inline std::vector<std::string> string_list(const json& v, const char* where) {
  if (!v.is_array()) throw ParseError(std::string(where) + ": expected an array of strings");
  std::vector<std::string> out;
  for (const json& item : v) {
    if (!item.is_string()) {
      throw ParseError(std::string(where) + ": expected an array of strings");
    }
    out.push_back(item.get<std::string>());
  }
  return out;
}

/// FNV-1a over the canonical serialization, rendered as 16 hex digits.
inline std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

struct ParsedMatroid {
  Matroid matroid;
  json canonical;
};

inline ParsedMatroid parse_matroid(const json& node) {
  const std::string kind = string_field(node, "kind", "matroid");
  if (kind == "graphic") {
    GraphDescription g;
    g.vertex_count = index_field(node, "vertices", "matroid");
    const json& edges = field(node, "edges", "matroid");
    if (!edges.is_array()) throw ParseError("matroid: 'edges' must be an array");
    json canon_edges = json::array();
    for (const json& e : edges) {
      GraphDescription::Edge edge;
      edge.label = string_field(e, "id", "edge");
      edge.tail = index_field(e, "u", "edge");
      edge.head = index_field(e, "v", "edge");
      canon_edges.push_back({{"id", edge.label}, {"u", edge.tail}, {"v", edge.head}});
      g.edges.push_back(std::move(edge));
    }
    json canon = {{"kind", "graphic"}, {"vertices", g.vertex_count}, {"edges", canon_edges}};
    return ParsedMatroid{graphic(g), std::move(canon)};
  }
  if (kind == "uniform") {
    const std::size_t rank = index_field(node, "rank", "matroid");
    auto ground = string_list(field(node, "ground", "matroid"), "matroid.ground");
    json canon = {{"kind", "uniform"}, {"rank", rank}, {"ground", ground}};
    return ParsedMatroid{uniform(rank, std::move(ground)), std::move(canon)};
  }
  if (kind == "linear") {
    RationalMatrix a;
    a.column_labels = string_list(field(node, "columns", "matroid"), "matroid.columns");
    const json& rows = field(node, "rows", "matroid");
    if (!rows.is_array()) throw ParseError("matroid: 'rows' must be an array");
    json canon_rows = json::array();
    for (const json& row : rows) {
      std::vector<Rational> parsed;
      json canon_row = json::array();
      for (const std::string& cell : string_list(row, "matroid.rows")) {
        Rational value = parse_rational(cell);
        canon_row.push_back(to_string(value));
        parsed.push_back(std::move(value));
      }
      canon_rows.push_back(std::move(canon_row));
      a.rows.push_back(std::move(parsed));
    }
    json canon = {{"kind", "linear"}, {"columns", a.column_labels}, {"rows", canon_rows}};
    return ParsedMatroid{linear(a), std::move(canon)};
  }
  if (kind == "explicit") {
    ExplicitBases family;
    family.ground_labels = string_list(field(node, "ground", "matroid"), "matroid.ground");
    const json& bases = field(node, "bases", "matroid");
    if (!bases.is_array()) throw ParseError("matroid: 'bases' must be an array");
    json canon_bases = json::array();
    for (const json& b : bases) {
      auto labels = string_list(b, "matroid.bases");
      canon_bases.push_back(labels);
      family.bases.push_back(std::move(labels));
    }
    json canon = {{"kind", "explicit"},
                  {"ground", family.ground_labels},
                  {"bases", canon_bases}};
    return ParsedMatroid{explicit_bases(family), std::move(canon)};
  }
  throw ParseError("matroid: unknown kind '" + kind +
                   "' (expected graphic, uniform, linear or explicit)");
}

}  // namespace detail

/// Parses an instance document. Element ids are assigned in declaration
/// order, so every report sorted by id follows the order of the input file.
inline Instance parse_instance(const json& doc) {
  detail::ParsedMatroid parsed = detail::parse_matroid(detail::field(doc, "matroid", "instance"));
  const json& weights = detail::field(doc, "weights", "instance");
  if (!weights.is_object()) throw ParseError("instance: 'weights' must be an object");

  std::map<std::string, ElementId> by_label;
  for (ElementId e : parsed.matroid.ground()) {
    by_label[parsed.matroid.label(e)] = e;
  }

  Weighting x;
  json canon_weights = json::object();
  for (const auto& [label, value] : weights.items()) {
    auto it = by_label.find(label);
    if (it == by_label.end()) {
      throw ParseError("weights: unknown element '" + label + "'");
    }
    if (!value.is_string()) {
      throw ParseError("weights: weight of '" + label +
                       "' must be a rational in string form, like \"3\" or \"-7/2\"");
    }
    Rational w = parse_rational(value.get<std::string>());
    canon_weights[label] = to_string(w);
    x.set(it->second, std::move(w));
  }
  for (ElementId e : parsed.matroid.ground()) {
    if (!x.has(e)) {
      throw ParseError("weights: no weight for element '" + parsed.matroid.label(e) + "'");
    }
  }

  const json canonical = {{"matroid", parsed.canonical}, {"weights", canon_weights}};
  std::string digest = detail::fnv1a_hex(canonical.dump());
  return Instance{std::move(parsed.matroid), std::move(x), std::move(by_label),
                  std::move(digest)};
}

/// Reads and parses an instance file. I/O and JSON syntax problems are
/// reported as ParseError with the file name (and byte position for syntax).
inline Instance parse_instance_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open instance file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  json doc;
  try {
    doc = json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    throw ParseError("instance file '" + path + "': " + e.what());
  }
  try {
    return parse_instance(doc);
  } catch (ParseError& e) {
    throw ParseError("instance file '" + path + "': " + e.what());
  }
}

/// One row of the full analysis table.
struct ElementRecord {
  ElementId element;
  std::string label;
  Rational weight;
  Rational minmax;
  Rational bottleneck;
  Rational tolerance;
  std::string persistency;  // "all", "none" or "some"
  Rational contract_value;
  Rational delete_value;
};

/// Everything the analyze command reports: the optimum plus per-element
/// min-max, bottleneck, tolerance, persistency class and minor optima.
struct AnalysisReport {
  std::string digest;
  std::size_t element_count = 0;
  std::size_t rank = 0;
  Rational optimal_value;
  std::vector<std::string> optimal_basis;  // labels in id order
  std::vector<ElementRecord> elements;     // sorted by element id
};

namespace detail {

/// Consistency of a finished report with itself; a failure here is a bug.
inline void revalidate_report(const AnalysisReport& r) {
  for (const ElementRecord& rec : r.elements) {
    const Rational expected_bottleneck =
        rec.weight < rec.minmax ? rec.weight : rec.minmax;
    if (rec.bottleneck != expected_bottleneck ||
        rec.tolerance != rational_abs(rec.minmax - rec.weight) ||
        rec.contract_value != r.optimal_value - rec.bottleneck ||
        rec.delete_value != rec.contract_value + rec.minmax) {
      throw InternalError("analysis report failed re-validation for element '" + rec.label + "'");
    }
    const std::string expected_class = rec.weight < rec.minmax   ? "all"
                                       : rec.weight > rec.minmax ? "none"
                                                                 : "some";
    if (rec.persistency != expected_class) {
      throw InternalError("analysis report failed re-validation for element '" + rec.label + "'");
    }
  }
}

}  // namespace detail

/// Runs the full analysis. With verify set, every per-element value that has
/// a second, independent computation route is recomputed along it: the minor
/// optima are re-solved on the actual minors and compared against the closed
/// forms. Any disagreement raises InternalError.
inline AnalysisReport analyze_instance(const Instance& inst, bool verify = false) {
  const Matroid& m = inst.matroid;
  const Weighting& x = inst.weights;
  assert_loopless(m);
  require_total(m, x);
  const OptResult opt = matopt::detail::greedy_optimum(m, x);

  AnalysisReport report;
  report.digest = inst.digest;
  report.element_count = m.size();
  report.rank = m.rank();
  report.optimal_value = opt.value;
  for (ElementId e : opt.basis.elements) report.optimal_basis.push_back(m.label(e));

  for (ElementId e : m.ground()) {
    const Rational mm = matopt::detail::minmax_from_optimum(m, x, e, opt.basis);
    const Rational& w = x.at(e);
    ElementRecord rec;
    rec.element = e;
    rec.label = m.label(e);
    rec.weight = w;
    rec.minmax = mm;
    rec.bottleneck = w < mm ? w : mm;
    rec.tolerance = rational_abs(mm - w);
    rec.persistency = w < mm ? "all" : w > mm ? "none" : "some";
    rec.contract_value = opt.value - rec.bottleneck;
    rec.delete_value = rec.contract_value + mm;
    report.elements.push_back(std::move(rec));
  }
  detail::revalidate_report(report);

  if (verify) {
    for (const ElementRecord& rec : report.elements) {
      const Matroid contracted = m.minor(MinorSpec{{rec.element}, {}});
      const Matroid deleted = m.minor(MinorSpec{{}, {rec.element}});
      // greedy_optimum tolerates the loops and coloops a minor may acquire
      const Rational by_contract = matopt::detail::greedy_optimum(contracted, x).value;
      const Rational by_delete = matopt::detail::greedy_optimum(deleted, x).value;
      if (by_contract != rec.contract_value || by_delete != rec.delete_value) {
        throw InternalError("verification failed: minor optima for element '" + rec.label +
                            "' disagree with the closed-form values");
      }
    }
  }
  return report;
}

/// JSON rendering. Keys inside objects are emitted alphabetically, arrays in
/// element-id order, rationals as canonical strings; output is byte-stable
/// for a given instance.
inline json report_to_json(const AnalysisReport& r) {
  json elements = json::array();
  for (const ElementRecord& rec : r.elements) {
    elements.push_back({{"id", rec.element.value()},
                        {"label", rec.label},
                        {"weight", to_string(rec.weight)},
                        {"minmax", to_string(rec.minmax)},
                        {"bottleneck", to_string(rec.bottleneck)},
                        {"tolerance", to_string(rec.tolerance)},
                        {"persistency", rec.persistency},
                        {"contract_value", to_string(rec.contract_value)},
                        {"delete_value", to_string(rec.delete_value)}});
  }
  return json{{"schema", 1},
              {"tool", kToolName},
              {"tool_version", kVersion},
              {"instance",
               {{"digest", r.digest}, {"elements", r.element_count}, {"rank", r.rank}}},
              {"optimal", {{"value", to_string(r.optimal_value)}, {"basis", r.optimal_basis}}},
              {"elements", elements}};
}

namespace detail {

inline std::string format_row(const std::vector<std::string>& cells,
                              const std::vector<std::size_t>& widths) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    line += cells[i];
    if (i + 1 < cells.size()) {
      line.append(widths[i] - cells[i].size() + 2, ' ');
    }
  }
  return line;
}

}  // namespace detail

/// Plain-text rendering: a header block and a fixed-width table, one row per
/// element in id order.
inline std::string report_to_text(const AnalysisReport& r) {
  std::string basis = "{";
  for (std::size_t i = 0; i < r.optimal_basis.size(); ++i) {
    if (i > 0) basis += ", ";
    basis += r.optimal_basis[i];
  }
  basis += "}";

  std::ostringstream out;
  out << "instance: " << r.element_count << " elements, rank " << r.rank << ", digest "
      << r.digest << "\n";
  out << "optimal value: " << to_string(r.optimal_value) << "\n";
  out << "optimal basis: " << basis << "\n\n";

  std::vector<std::vector<std::string>> rows;
  rows.push_back({"element", "weight", "minmax", "bottleneck", "tolerance", "persistency",
                  "contract", "delete"});
  for (const ElementRecord& rec : r.elements) {
    rows.push_back({rec.label, to_string(rec.weight), to_string(rec.minmax),
                    to_string(rec.bottleneck), to_string(rec.tolerance), rec.persistency,
                    to_string(rec.contract_value), to_string(rec.delete_value)});
  }
  std::vector<std::size_t> widths(rows.front().size(), 0);
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) widths[i] = std::max(widths[i], row[i].size());
  }
  for (const auto& row : rows) out << detail::format_row(row, widths) << "\n";
  return out.str();
}

}  // namespace matopt::io
