#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "matopt/brute.hpp"
#include "matopt/element.hpp"
#include "matopt/error.hpp"
#include "matopt/matroid.hpp"
#include "matopt/rational.hpp"
#include "matopt/tropical.hpp"
#include "matopt/weighting.hpp"

namespace matopt {

namespace detail {

/// Common entry checks for the analyses: loopless matroid, total weighting.
inline void require_analysis_ready(const Matroid& m, const Weighting& x) {
  assert_loopless(m);
  require_total(m, x);
}

/// Raises PreconditionError unless b is a basis whose weight matches the
/// optimum. Returns the optimal value.
inline Rational require_optimal_basis(const Matroid& m, const Weighting& x, const Basis& b,
                                      const char* op) {
  require_basis(m, b, op);
  const OptResult opt = greedy_optimum(m, x);
  if (x.total(b.elements) != opt.value) {
    throw PreconditionError(std::string(op) + ": the given basis is not optimal under the base "
                                              "weights");
  }
  return opt.value;
}

}  // namespace detail

/// Optimum of the instance next to the optima of both single-element minors.
/// All three values follow from one solve: contracting e lowers the optimum
/// by bottleneck(e), deleting e raises it by minmax(e) - bottleneck(e), so
/// delete minus contract always equals minmax(e).
struct KirchhoffValues {
  ElementId element;
  Rational base_value;
  Rational contract_value;
  Rational delete_value;
};

inline KirchhoffValues kirchhoff(const Matroid& m, const Weighting& x, ElementId e) {
  detail::require_analysis_ready(m, x);
  m.require_element(e, "kirchhoff");
  const OptResult opt = detail::greedy_optimum(m, x);
  const Rational mm = detail::minmax_from_optimum(m, x, e, opt.basis);
  const Rational& w = x.at(e);
  const Rational bottleneck = w < mm ? w : mm;
  return KirchhoffValues{e, opt.value, opt.value - bottleneck, opt.value - bottleneck + mm};
}

/// New optimum after changing only e's weight to new_weight, computed in
/// closed form: the bottleneck of e moves from min(old, minmax) to
/// min(new, minmax) while minmax itself does not depend on e's own weight.
inline Rational postopt_value(const Matroid& m, const Weighting& x, ElementId e,
                              const Rational& new_weight) {
  detail::require_analysis_ready(m, x);
  m.require_element(e, "postopt_value");
  const OptResult opt = detail::greedy_optimum(m, x);
  const Rational mm = detail::minmax_from_optimum(m, x, e, opt.basis);
  const Rational& w = x.at(e);
  const Rational old_bottleneck = w < mm ? w : mm;
  const Rational new_bottleneck = new_weight < mm ? new_weight : mm;
  return opt.value + new_bottleneck - old_bottleneck;
}

/// Reconstructs the optimum of a nonnegative weighting by telescoping
/// bottlenecks: walk the elements of any basis in ascending id order, add
/// the current bottleneck of each, then zero that element's weight. The
/// accumulated sum equals the optimum value.
inline Rational telescoping_value(const Matroid& m, const Weighting& x, const Basis& b) {
  detail::require_analysis_ready(m, x);
  detail::require_basis(m, b, "telescoping_value");
  for (ElementId g : m.ground()) {
    if (x.at(g) < 0) {
      throw PreconditionError("telescoping_value: weight of " + m.describe(g) +
                              " is negative; the telescoping identity needs nonnegative weights");
    }
  }
  Weighting current = x;
  Rational sum = 0;
  for (ElementId e : b.elements) {
    const OptResult opt = detail::greedy_optimum(m, current);
    const Rational mm = detail::minmax_from_optimum(m, current, e, opt.basis);
    const Rational& w = current.at(e);
    sum += w < mm ? w : mm;
    current.set(e, 0);
  }
  return sum;
}

/// Exact single-change test: after changing only e's weight, does the basis
/// b stay optimal? For e in b the answer is new_weight <= minmax(e); for e
/// outside b it is new_weight >= minmax(e). In particular a change of at
/// most tolerance(e) in absolute value is always safe.
inline bool local_sensitivity(const Matroid& m, const Weighting& x, const Basis& b, ElementId e,
                              const Rational& new_weight) {
  detail::require_analysis_ready(m, x);
  m.require_element(e, "local_sensitivity");
  detail::require_optimal_basis(m, x, b, "local_sensitivity");
  const Rational mm = detail::minmax_from_optimum(m, x, e, b);
  if (contains(b.elements, e)) return new_weight <= mm;
  return new_weight >= mm;
}

/// Outcome of a simultaneous weight change. `safe` reports the half-
/// tolerance test: if every element moves by at most half its tolerance the
/// basis is guaranteed to stay optimal and no re-solve happens. Otherwise
/// the instance is re-solved under the new weights; `witness` holds a
/// strictly better basis exactly when the old one lost optimality.
struct PerturbationReport {
  Weighting old_weights;
  Weighting new_weights;
  std::map<ElementId, Rational> deltas;  // absolute changes per element
  bool safe = false;
  std::optional<Basis> witness;
};

inline PerturbationReport global_sensitivity_safe(const Matroid& m, const Weighting& x,
                                                  const Basis& b, const Weighting& x_new) {
  detail::require_analysis_ready(m, x);
  require_total(m, x_new);
  detail::require_optimal_basis(m, x, b, "global_sensitivity_safe");

  PerturbationReport report;
  report.old_weights = x;
  report.new_weights = x_new;
  report.safe = true;
  for (ElementId g : m.ground()) {
    const Rational delta = rational_abs(x_new.at(g) - x.at(g));
    report.deltas[g] = delta;
    const Rational tolerance = rational_abs(detail::minmax_from_optimum(m, x, g, b) - x.at(g));
    if (2 * delta > tolerance) report.safe = false;
  }
  if (!report.safe) {
    const OptResult fresh = detail::greedy_optimum(m, x_new);
    if (fresh.value < x_new.total(b.elements)) report.witness = fresh.basis;
  }
  return report;
}

/// The sharpest simultaneous perturbation: finds the pair (e in b, f in the
/// fundamental cut of e) minimizing x(f) - x(e), raises e by half that gap
/// plus epsilon and lowers f by the same amount. The result moves every
/// element by at most half its tolerance plus epsilon yet makes b - e + f
/// strictly cheaper than b, showing the half-tolerance box of
/// global_sensitivity_safe cannot be widened.
inline Weighting adversarial_perturbation(const Matroid& m, const Weighting& x, const Basis& b,
                                          const Rational& epsilon) {
  detail::require_analysis_ready(m, x);
  if (epsilon <= 0) {
    throw PreconditionError("adversarial_perturbation: epsilon must be positive");
  }
  detail::require_optimal_basis(m, x, b, "adversarial_perturbation");
  if (m.size() == 0) {
    throw DomainError("adversarial_perturbation: the ground set is empty");
  }

  bool have = false;
  Rational best_gap;
  ElementId best_e;
  ElementId best_f;
  for (ElementId e : b.elements) {
    const ElementSet cut = detail::fundamental_cut_unchecked(m, b, e);
    for (ElementId f : cut) {
      const Rational gap = x.at(f) - x.at(e);
      if (!have || gap < best_gap) {
        best_gap = gap;
        best_e = e;
        best_f = f;
        have = true;
      }
    }
  }
  if (!have) {
    throw DomainError("adversarial_perturbation: no exchange pair exists");
  }
  if (best_gap < 0) {
    throw InternalError("adversarial_perturbation: negative exchange gap for an optimal basis");
  }

  Weighting out = x;
  const Rational shift = best_gap / 2 + epsilon;
  out.set(best_e, x.at(best_e) + shift);
  out.set(best_f, x.at(best_f) - shift);
  return out;
}

/// Trichotomy of the ground set by membership in optimal bases: `all` holds
/// elements of every optimal basis, `none` those of no optimal basis, and
/// `some` the rest. Decided per element by comparing minmax(e) with x(e).
struct PersistencyPartition {
  ElementSet all;
  ElementSet none;
  ElementSet some;
};

inline PersistencyPartition persistency(const Matroid& m, const Weighting& x) {
  detail::require_analysis_ready(m, x);
  const OptResult opt = detail::greedy_optimum(m, x);
  PersistencyPartition part;
  bool distinct = true;
  std::vector<Rational> seen;
  for (ElementId e : m.ground()) {
    const Rational mm = detail::minmax_from_optimum(m, x, e, opt.basis);
    const Rational& w = x.at(e);
    if (w < mm) {
      part.all.push_back(e);
    } else if (w > mm) {
      part.none.push_back(e);
    } else {
      part.some.push_back(e);
    }
    seen.push_back(w);
  }
  std::sort(seen.begin(), seen.end());
  distinct = std::adjacent_find(seen.begin(), seen.end()) == seen.end();
  if (distinct && part.all != opt.basis.elements) {
    throw InternalError("persistency: distinct weights must make the optimal basis unique");
  }
  return part;
}

/// The dual route to minmax_weight: the largest value, over cocircuits
/// through e, of the lightest other cocircuit member. Equal to
/// minmax_weight(e) on every loopless matroid; computed by exhaustive
/// cocircuit enumeration, so the ground set must fit under the cap.
inline Rational maxmin_cocircuit(const Matroid& m, const Weighting& x, ElementId e,
                                 std::size_t cap = 16) {
  detail::require_analysis_ready(m, x);
  m.require_element(e, "maxmin_cocircuit");
  if (m.size() > cap) {
    throw CapError("maxmin_cocircuit: ground set has " + std::to_string(m.size()) +
                   " elements, enumeration cap is " + std::to_string(cap));
  }
  brute::EnumerationCap caps;
  caps.subsets = cap;
  caps.circuits = cap;
  bool have = false;
  Rational best;
  for (const ElementSet& d : brute::enumerate_cocircuits(m, caps)) {
    if (!contains(d, e)) continue;
    bool first = true;
    Rational lightest;
    for (ElementId f : d) {
      if (f == e) continue;
      if (first || x.at(f) < lightest) {
        lightest = x.at(f);
        first = false;
      }
    }
    if (first) {
      throw InternalError("maxmin_cocircuit: singleton cocircuit in a loopless matroid");
    }
    if (!have || lightest > best) {
      best = lightest;
      have = true;
    }
  }
  if (!have) {
    throw InternalError("maxmin_cocircuit: no cocircuit through a non-loop element");
  }
  return best;
}

}  // namespace matopt
