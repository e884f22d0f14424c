#pragma once

#include <string>
#include <utility>
#include <vector>

#include "matopt/element.hpp"
#include "matopt/error.hpp"
#include "matopt/matroid.hpp"
#include "matopt/rational.hpp"
#include "matopt/weighting.hpp"

namespace matopt {

/// Per-element quantities around a minimum-weight basis.
///
/// minmax is the smallest possible value, over circuits through the element,
/// of the heaviest other circuit member. bottleneck = min(weight, minmax) is
/// the amount the optimum drops when the element is contracted or its weight
/// is zeroed. tolerance = |minmax - weight| bounds how far the weight may
/// move (down for non-basis elements, up for basis elements) before the set
/// of optimal bases changes.
struct ElementAnalysis {
  ElementId element;
  Rational minmax;
  Rational bottleneck;
  Rational tolerance;
};

namespace detail {

/// Ground elements ordered by (weight, id) ascending. This single ordering
/// fixes every tie-break in the library.
inline std::vector<ElementId> weight_order(const ElementSet& s, const Weighting& x) {
  std::vector<ElementId> order(s.begin(), s.end());
  std::sort(order.begin(), order.end(), [&x](ElementId a, ElementId b) {
    const Rational& wa = x.at(a);
    const Rational& wb = x.at(b);
    if (wa != wb) return wa < wb;
    return a < b;
  });
  return order;
}

/// Greedy minimum basis. Assumes looplessness and totality were checked.
inline OptResult greedy_optimum(const Matroid& m, const Weighting& x) {
  ElementSet acc;
  Rational value = 0;
  for (ElementId e : weight_order(m.ground(), x)) {
    ElementSet next = with_element(acc, e);
    if (m.is_independent(next)) {
      acc = std::move(next);
      value += x.at(e);
    }
  }
  if (acc.size() != m.rank()) {
    throw InternalError("greedy basis misses the rank; oracle is not a matroid");
  }
  return OptResult{Basis{std::move(acc)}, std::move(value)};
}

/// min-max circuit weight of e, given any minimum-weight basis.
///
/// For e outside the basis, grow the basis in (weight, id) order until
/// adding e creates a dependency; the element closing that dependency is the
/// heaviest member of the fundamental circuit, and its weight is the answer.
/// For e inside the basis the answer is the lightest replacement weight in
/// the fundamental cut. Both routes need at most |ground| oracle queries.
inline Rational minmax_from_optimum(const Matroid& m, const Weighting& x, ElementId e,
                                    const Basis& optimal) {
  if (!contains(optimal.elements, e)) {
    ElementSet prefix;
    for (ElementId f : weight_order(optimal.elements, x)) {
      prefix = with_element(prefix, f);
      if (!m.is_independent(with_element(prefix, e))) return x.at(f);
    }
    throw InternalError("element joins a full basis independently; oracle is not a matroid");
  }
  const ElementSet cut = fundamental_cut_unchecked(m, optimal, e);
  if (cut.empty()) {
    throw InternalError("empty fundamental cut in a loopless matroid");
  }
  bool first = true;
  Rational best;
  for (ElementId f : cut) {
    if (first || x.at(f) < best) {
      best = x.at(f);
      first = false;
    }
  }
  return best;
}

}  // namespace detail

/// Minimum-weight basis by the greedy algorithm, scanning elements in
/// ascending (weight, id) order. Requires a loopless matroid and a total
/// weighting; both are checked.
inline OptResult min_weight_basis(const Matroid& m, const Weighting& x) {
  assert_loopless(m);
  require_total(m, x);
  return detail::greedy_optimum(m, x);
}

/// Smallest possible weight of the heaviest other member of a circuit
/// through e. Computed from one greedy solve plus at most |ground| extra
/// queries; circuits are never enumerated.
inline Rational minmax_weight(const Matroid& m, const Weighting& x, ElementId e) {
  assert_loopless(m);
  require_total(m, x);
  m.require_element(e, "minmax_weight");
  const OptResult opt = detail::greedy_optimum(m, x);
  return detail::minmax_from_optimum(m, x, e, opt.basis);
}

/// min(x(e), minmax_weight(e)): the drop in the optimum when e's weight is
/// set to zero, or equivalently when e is contracted.
inline Rational bottleneck_weight(const Matroid& m, const Weighting& x, ElementId e) {
  assert_loopless(m);
  require_total(m, x);
  m.require_element(e, "bottleneck_weight");
  const OptResult opt = detail::greedy_optimum(m, x);
  const Rational mm = detail::minmax_from_optimum(m, x, e, opt.basis);
  const Rational& w = x.at(e);
  return w < mm ? w : mm;
}

/// minmax, bottleneck and tolerance of one element in one pass.
inline ElementAnalysis element_analysis(const Matroid& m, const Weighting& x, ElementId e) {
  assert_loopless(m);
  require_total(m, x);
  m.require_element(e, "element_analysis");
  const OptResult opt = detail::greedy_optimum(m, x);
  const Rational mm = detail::minmax_from_optimum(m, x, e, opt.basis);
  const Rational& w = x.at(e);
  return ElementAnalysis{e, mm, w < mm ? w : mm, rational_abs(mm - w)};
}

/// Cheapest basis that avoids e. When the global optimum already avoids e it
/// is returned unchanged; otherwise e is swapped for the lightest member of
/// its fundamental cut (ties to the smallest id).
inline OptResult next_best_avoiding(const Matroid& m, const Weighting& x, ElementId e) {
  assert_loopless(m);
  require_total(m, x);
  m.require_element(e, "next_best_avoiding");
  OptResult opt = detail::greedy_optimum(m, x);
  if (!contains(opt.basis.elements, e)) return opt;
  const ElementSet cut = detail::fundamental_cut_unchecked(m, opt.basis, e);
  if (cut.empty()) throw InternalError("empty fundamental cut in a loopless matroid");
  ElementId f = cut.front();
  for (ElementId g : cut) {
    if (x.at(g) < x.at(f)) f = g;
  }
  OptResult out;
  out.basis.elements = with_element(without_element(opt.basis.elements, e), f);
  out.value = opt.value - x.at(e) + x.at(f);
  return out;
}

/// Cheapest basis that contains e. When the global optimum already contains
/// e it is returned unchanged; otherwise the heaviest member of e's
/// fundamental path is swapped out for e (ties to the smallest id).
inline OptResult next_best_containing(const Matroid& m, const Weighting& x, ElementId e) {
  assert_loopless(m);
  require_total(m, x);
  m.require_element(e, "next_best_containing");
  OptResult opt = detail::greedy_optimum(m, x);
  if (contains(opt.basis.elements, e)) return opt;
  const ElementSet path = detail::fundamental_path_unchecked(m, opt.basis, e);
  if (path.empty()) throw InternalError("empty fundamental path in a loopless matroid");
  ElementId p = path.front();
  for (ElementId g : path) {
    if (x.at(g) > x.at(p)) p = g;
  }
  OptResult out;
  out.basis.elements = with_element(without_element(opt.basis.elements, p), e);
  out.value = opt.value - x.at(p) + x.at(e);
  return out;
}

}  // namespace matopt
