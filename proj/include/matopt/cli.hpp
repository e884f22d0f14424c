#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "matopt/analysis.hpp"
#include "matopt/brute.hpp"
#include "matopt/element.hpp"
#include "matopt/error.hpp"
#include "matopt/io.hpp"
#include "matopt/matroid.hpp"
#include "matopt/rational.hpp"
#include "matopt/tropical.hpp"
#include "matopt/version.hpp"
#include "matopt/weighting.hpp"

namespace matopt::cli {

using nlohmann::json;

namespace detail {

struct Options {
  std::string file;
  std::string format = "text";
  bool verify = false;
  std::size_t cap = 16;
};

inline std::vector<std::string> split(const std::string& text, char sep, const char* what) {
  std::vector<std::string> out;
  std::string token;
  for (char c : text) {
    if (c == sep) {
      out.push_back(token);
      token.clear();
    } else {
      token += c;
    }
  }
  out.push_back(token);
  for (const std::string& t : out) {
    if (t.empty()) {
      throw UsageError(std::string(what) + ": empty entry in '" + text + "'");
    }
  }
  return out;
}

inline Rational flag_rational(const std::string& text, const char* flag) {
  try {
    return parse_rational(text);
  } catch (const ParseError& e) {
    throw UsageError(std::string(flag) + ": " + e.what());
  }
}

inline Basis basis_from_labels(const io::Instance& inst, const std::string& csv) {
  Basis b;
  for (const std::string& label : split(csv, ',', "--basis")) {
    b.elements.push_back(io::element_by_label(inst, label));
  }
  canonicalize(b.elements);
  return b;
}

inline std::string label_set(const Matroid& m, const ElementSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i > 0) out += ", ";
    out += m.label(s[i]);
  }
  return out + "}";
}

inline json label_array(const Matroid& m, const ElementSet& s) {
  json arr = json::array();
  for (ElementId e : s) arr.push_back(m.label(e));
  return arr;
}

inline void emit(std::ostream& out, const Options& opt, const json& doc,
                 const std::string& text) {
  if (opt.format == "json") {
    out << doc.dump(2) << "\n";
  } else {
    out << text;
  }
}

inline json output_skeleton(const io::Instance& inst) {
  return json{{"schema", 1},
              {"tool", kToolName},
              {"tool_version", kVersion},
              {"instance", {{"digest", inst.digest}}}};
}

inline int cmd_solve(const Options& opt, std::ostream& out) {
  const io::Instance inst = io::parse_instance_file(opt.file);
  const OptResult result = min_weight_basis(inst.matroid, inst.weights);
  if (opt.verify) {
    brute::EnumerationCap caps{opt.cap, opt.cap};
    const OptResult reference = brute::brute_optimum(inst.matroid, inst.weights, caps);
    if (reference.value != result.value) {
      throw InternalError("verification failed: greedy value " + to_string(result.value) +
                          " differs from exhaustive value " + to_string(reference.value));
    }
  }
  json doc = output_skeleton(inst);
  doc["optimal"] = {{"value", to_string(result.value)},
                    {"basis", label_array(inst.matroid, result.basis.elements)}};
  std::string text = "optimal value: " + to_string(result.value) + "\noptimal basis: " +
                     label_set(inst.matroid, result.basis.elements) + "\n";
  emit(out, opt, doc, text);
  return 0;
}

inline int cmd_analyze(const Options& opt, std::ostream& out) {
  const io::Instance inst = io::parse_instance_file(opt.file);
  const io::AnalysisReport report = io::analyze_instance(inst, opt.verify);
  emit(out, opt, io::report_to_json(report), io::report_to_text(report));
  return 0;
}

inline int cmd_postopt(const Options& opt, const std::string& element_label,
                       const std::string& weight_text, std::ostream& out) {
  const Rational new_weight = flag_rational(weight_text, "--new-weight");
  const io::Instance inst = io::parse_instance_file(opt.file);
  const ElementId e = io::element_by_label(inst, element_label);
  const Matroid& m = inst.matroid;
  const Weighting& x = inst.weights;

  const OptResult base = min_weight_basis(m, x);
  const Rational mm = minmax_weight(m, x, e);
  const Rational new_value = postopt_value(m, x, e, new_weight);
  if (opt.verify) {
    Weighting shifted = x;
    shifted.set(e, new_weight);
    const OptResult fresh = min_weight_basis(m, shifted);
    if (fresh.value != new_value) {
      throw InternalError("verification failed: closed-form optimum " + to_string(new_value) +
                          " differs from re-solved optimum " + to_string(fresh.value));
    }
  }

  json doc = output_skeleton(inst);
  doc["element"] = element_label;
  doc["old_weight"] = to_string(x.at(e));
  doc["new_weight"] = to_string(new_weight);
  doc["minmax"] = to_string(mm);
  doc["old_value"] = to_string(base.value);
  doc["new_value"] = to_string(new_value);

  std::string text;
  text += "element: " + element_label + "\n";
  text += "weight: " + to_string(x.at(e)) + " -> " + to_string(new_weight) + "\n";
  text += "minmax: " + to_string(mm) + "\n";
  text += "optimum: " + to_string(base.value) + " -> " + to_string(new_value) + "\n";
  emit(out, opt, doc, text);
  return 0;
}

inline int cmd_sensitivity(const Options& opt, const std::string& basis_csv,
                           const std::string& changes_csv, std::ostream& out) {
  const io::Instance inst = io::parse_instance_file(opt.file);
  const Matroid& m = inst.matroid;
  const Weighting& x = inst.weights;
  const Basis b = basis_from_labels(inst, basis_csv);

  std::map<ElementId, Rational> changes;
  for (const std::string& entry : split(changes_csv, ',', "--changes")) {
    const std::size_t eq = entry.find('=');
    if (eq == std::string::npos) {
      throw UsageError("--changes: expected LABEL=WEIGHT, got '" + entry + "'");
    }
    const ElementId e = io::element_by_label(inst, entry.substr(0, eq));
    if (!changes.emplace(e, flag_rational(entry.substr(eq + 1), "--changes")).second) {
      throw UsageError("--changes: element '" + entry.substr(0, eq) + "' changed twice");
    }
  }
  if (changes.empty()) throw UsageError("--changes: at least one change is required");

  Weighting x_new = x;
  for (const auto& [e, w] : changes) x_new.set(e, w);

  bool preserved = false;
  std::optional<OptResult> witness;
  std::string method;
  if (changes.size() == 1) {
    method = "single-change";
    const auto& [e, w] = *changes.begin();
    preserved = local_sensitivity(m, x, b, e, w);
    if (!preserved) witness = min_weight_basis(m, x_new);
  } else {
    method = "box";
    const PerturbationReport report = global_sensitivity_safe(m, x, b, x_new);
    preserved = !report.witness.has_value();
    if (report.witness) {
      witness = OptResult{*report.witness, x_new.total(report.witness->elements)};
    }
  }
  if (opt.verify) {
    const OptResult fresh = min_weight_basis(m, x_new);
    const bool still_optimal = fresh.value == x_new.total(b.elements);
    if (still_optimal != preserved) {
      throw InternalError("verification failed: re-solve disagrees with the sensitivity verdict");
    }
  }

  json changes_json = json::array();
  std::string changes_text;
  for (const auto& [e, w] : changes) {
    const Rational delta = rational_abs(w - x.at(e));
    const Rational tol = element_analysis(m, x, e).tolerance;
    changes_json.push_back({{"element", m.label(e)},
                            {"old_weight", to_string(x.at(e))},
                            {"new_weight", to_string(w)},
                            {"delta", to_string(delta)},
                            {"tolerance", to_string(tol)}});
    changes_text += "  " + m.label(e) + ": " + to_string(x.at(e)) + " -> " + to_string(w) +
                    "  (delta " + to_string(delta) + ", tolerance " + to_string(tol) + ")\n";
  }

  json doc = output_skeleton(inst);
  doc["basis"] = label_array(m, b.elements);
  doc["method"] = method;
  doc["changes"] = changes_json;
  doc["preserved"] = preserved;
  doc["witness"] = nullptr;
  if (witness) {
    doc["witness"] = {{"basis", label_array(m, witness->basis.elements)},
                      {"value", to_string(witness->value)}};
  }

  std::string text;
  text += "basis: " + label_set(m, b.elements) + " (value " + to_string(x.total(b.elements)) +
          ")\n";
  text += "method: " + method + "\n";
  text += "changes:\n" + changes_text;
  text += std::string("preserved: ") + (preserved ? "yes" : "no") + "\n";
  if (witness) {
    text += "better basis: " + label_set(m, witness->basis.elements) + " with value " +
            to_string(witness->value) + "\n";
  }
  emit(out, opt, doc, text);
  return 0;
}

inline int cmd_perturb(const Options& opt, const std::string& basis_csv,
                       const std::string& epsilon_text, std::ostream& out) {
  const Rational epsilon = flag_rational(epsilon_text, "--epsilon");
  const io::Instance inst = io::parse_instance_file(opt.file);
  const Matroid& m = inst.matroid;
  const Weighting& x = inst.weights;
  const Basis b = basis_from_labels(inst, basis_csv);

  const Weighting x_new = adversarial_perturbation(m, x, b, epsilon);

  // The perturbation changes exactly two weights: one raised basis element
  // and one lowered non-basis element.
  ElementId raised;
  ElementId lowered;
  for (ElementId g : m.ground()) {
    if (x_new.at(g) > x.at(g)) raised = g;
    if (x_new.at(g) < x.at(g)) lowered = g;
  }
  const Rational gap = x.at(lowered) - x.at(raised);
  Basis exchanged;
  exchanged.elements = with_element(without_element(b.elements, raised), lowered);
  const Rational basis_value = x_new.total(b.elements);
  const Rational exchanged_value = x_new.total(exchanged.elements);
  if (exchanged_value >= basis_value) {
    throw InternalError("perturbation failed to defeat the given basis");
  }
  if (opt.verify) {
    const OptResult fresh = min_weight_basis(m, x_new);
    if (fresh.value >= basis_value) {
      throw InternalError("verification failed: the basis stayed optimal after perturbation");
    }
  }

  json weights_json = json::object();
  for (ElementId g : m.ground()) weights_json[m.label(g)] = to_string(x_new.at(g));
  json doc = output_skeleton(inst);
  doc["epsilon"] = to_string(epsilon);
  doc["raise"] = {{"element", m.label(raised)},
                  {"old_weight", to_string(x.at(raised))},
                  {"new_weight", to_string(x_new.at(raised))}};
  doc["lower"] = {{"element", m.label(lowered)},
                  {"old_weight", to_string(x.at(lowered))},
                  {"new_weight", to_string(x_new.at(lowered))}};
  doc["gap"] = to_string(gap);
  doc["new_weights"] = weights_json;
  doc["basis_value"] = to_string(basis_value);
  doc["better_basis"] = label_array(m, exchanged.elements);
  doc["better_value"] = to_string(exchanged_value);

  std::string text;
  text += "epsilon: " + to_string(epsilon) + "\n";
  text += "pair gap: " + to_string(gap) + "\n";
  text += "raise " + m.label(raised) + ": " + to_string(x.at(raised)) + " -> " +
          to_string(x_new.at(raised)) + "\n";
  text += "lower " + m.label(lowered) + ": " + to_string(x.at(lowered)) + " -> " +
          to_string(x_new.at(lowered)) + "\n";
  text += "basis " + label_set(m, b.elements) + " now costs " + to_string(basis_value) + "\n";
  text += "better basis " + label_set(m, exchanged.elements) + " costs " +
          to_string(exchanged_value) + "\n";
  emit(out, opt, doc, text);
  return 0;
}

inline int cmd_oracle(const Options& opt, const std::string& mode, std::ostream& out) {
  const io::Instance inst = io::parse_instance_file(opt.file);
  const Matroid& m = inst.matroid;
  brute::EnumerationCap caps{opt.cap, opt.cap};

  std::vector<ElementSet> sets;
  std::optional<Rational> value;
  if (mode == "bases") {
    for (const Basis& b : brute::enumerate_bases(m, caps)) sets.push_back(b.elements);
  } else if (mode == "circuits") {
    for (const Circuit& c : brute::enumerate_circuits(m, caps)) sets.push_back(c.elements);
  } else if (mode == "cocircuits") {
    sets = brute::enumerate_cocircuits(m, caps);
  } else {
    const std::vector<Basis> optima = brute::all_optimal_bases(m, inst.weights, caps);
    for (const Basis& b : optima) sets.push_back(b.elements);
    value = inst.weights.total(optima.front().elements);
  }

  json sets_json = json::array();
  std::string text;
  if (value) text += "value: " + to_string(*value) + "\n";
  for (const ElementSet& s : sets) {
    sets_json.push_back(label_array(m, s));
    text += label_set(m, s) + "\n";
  }
  json doc = output_skeleton(inst);
  doc["mode"] = mode;
  doc["count"] = sets.size();
  doc["sets"] = sets_json;
  if (value) doc["value"] = to_string(*value);
  emit(out, opt, doc, text);
  return 0;
}

}  // namespace detail

/// Entry point behind main(). Takes the arguments without the program name
/// in natural order, writes results to `out` and diagnostics to `err`.
/// Returns 0 on success, 1 for analysis failures, 2 for bad invocations.
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  detail::Options opt;
  std::string element_label;
  std::string new_weight;
  std::string basis_csv;
  std::string changes_csv;
  std::string epsilon;
  std::string oracle_mode;

  CLI::App app{"minimum-weight matroid bases with postoptimality analysis", kToolName};
  app.require_subcommand(1);
  app.add_option("--format", opt.format, "output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  app.add_flag("--verify", opt.verify,
               "recompute results along an independent route and fail on any mismatch");
  app.add_option("--cap", opt.cap, "ground-set limit for exhaustive enumerations")
      ->capture_default_str();

  CLI::App* solve = app.add_subcommand("solve", "compute a minimum-weight basis");
  solve->add_option("file", opt.file, "instance file")->required();

  CLI::App* analyze = app.add_subcommand("analyze", "full per-element analysis");
  analyze->add_option("file", opt.file, "instance file")->required();

  CLI::App* postopt =
      app.add_subcommand("postopt", "new optimum after changing one element's weight");
  postopt->add_option("file", opt.file, "instance file")->required();
  postopt->add_option("--element", element_label, "element label")->required();
  postopt->add_option("--new-weight", new_weight, "replacement weight, e.g. 3 or -7/2")
      ->required();

  CLI::App* sensitivity =
      app.add_subcommand("sensitivity", "does a basis stay optimal under weight changes");
  sensitivity->add_option("file", opt.file, "instance file")->required();
  sensitivity->add_option("--basis", basis_csv, "comma-separated element labels")->required();
  sensitivity->add_option("--changes", changes_csv, "comma-separated LABEL=WEIGHT changes")
      ->required();

  CLI::App* perturb =
      app.add_subcommand("perturb", "sharpest perturbation that defeats an optimal basis");
  perturb->add_option("file", opt.file, "instance file")->required();
  perturb->add_option("--basis", basis_csv, "comma-separated element labels")->required();
  perturb->add_option("--epsilon", epsilon, "positive margin, e.g. 1/4")->required();

  CLI::App* oracle =
      app.add_subcommand("oracle", "exhaustive enumerations for cross-checking");
  oracle->add_option("file", opt.file, "instance file")->required();
  oracle->add_option("mode", oracle_mode, "bases, circuits, cocircuits or optima")
      ->required()
      ->check(CLI::IsMember({"bases", "circuits", "cocircuits", "optima"}));

  for (CLI::App* sub : {solve, analyze, postopt, sensitivity, perturb, oracle}) {
    sub->fallthrough();
  }

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(solve)) return detail::cmd_solve(opt, out);
    if (app.got_subcommand(analyze)) return detail::cmd_analyze(opt, out);
    if (app.got_subcommand(postopt)) {
      return detail::cmd_postopt(opt, element_label, new_weight, out);
    }
    if (app.got_subcommand(sensitivity)) {
      return detail::cmd_sensitivity(opt, basis_csv, changes_csv, out);
    }
    if (app.got_subcommand(perturb)) return detail::cmd_perturb(opt, basis_csv, epsilon, out);
    if (app.got_subcommand(oracle)) return detail::cmd_oracle(opt, oracle_mode, out);
    throw InternalError("no subcommand dispatched");
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace matopt::cli
