#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "matopt/element.hpp"
#include "matopt/error.hpp"
#include "matopt/matroid.hpp"
#include "matopt/rational.hpp"
#include "matopt/weighting.hpp"

// Exhaustive reference implementations. Everything here works straight from
// the independence oracle by walking subsets, with no shortcuts shared with
// the optimization layer, so the two sides can be tested against each other.
namespace matopt::brute {

/// Ground-set size limits for the exponential walks. `subsets` bounds the
/// full subset enumerations (bases, optima, exchange search) and `circuits`
/// bounds the minimal-set walks (circuits, cocircuits, min-max weights),
/// which sit inside larger loops and deserve a tighter default.
struct EnumerationCap {
  std::size_t subsets = 16;
  std::size_t circuits = 12;
};

namespace detail {

// All walks index the ground set by position and represent subsets as bit
// masks over those positions.
struct MaskUniverse {
  ElementSet ground;
  std::vector<char> independent;  // indexed by mask

  [[nodiscard]] std::size_t size() const { return ground.size(); }

  [[nodiscard]] ElementSet set_of(std::uint32_t mask) const {
    ElementSet s;
    for (std::size_t i = 0; i < ground.size(); ++i) {
      if (mask & (1u << i)) s.push_back(ground[i]);
    }
    return s;
  }

  [[nodiscard]] bool indep(std::uint32_t mask) const { return independent[mask] != 0; }
};

inline void require_within_cap(const Matroid& m, std::size_t cap, const char* op) {
  if (m.size() > cap) {
    throw CapError(std::string(op) + ": ground set has " + std::to_string(m.size()) +
                   " elements, enumeration cap is " + std::to_string(cap));
  }
  if (m.size() > 24) {
    throw CapError(std::string(op) + ": exhaustive enumeration is limited to 24 elements");
  }
}

// Queries the oracle once per subset and tabulates the answers for the
// duration of one operation. Nothing is cached across calls.
inline MaskUniverse tabulate(const Matroid& m) {
  MaskUniverse u;
  u.ground = m.ground();
  const std::uint32_t total = 1u << u.size();
  u.independent.resize(total);
  for (std::uint32_t mask = 0; mask < total; ++mask) {
    u.independent[mask] = m.is_independent(u.set_of(mask)) ? 1 : 0;
  }
  return u;
}

[[nodiscard]] inline std::vector<std::uint32_t> basis_masks(const MaskUniverse& u) {
  const std::uint32_t total = 1u << u.size();
  int best = 0;
  for (std::uint32_t mask = 0; mask < total; ++mask) {
    if (u.indep(mask)) best = std::max(best, std::popcount(mask));
  }
  std::vector<std::uint32_t> out;
  for (std::uint32_t mask = 0; mask < total; ++mask) {
    if (std::popcount(mask) == best && u.indep(mask)) out.push_back(mask);
  }
  return out;
}

inline const ElementSet& elements_of(const ElementSet& s) { return s; }
inline const ElementSet& elements_of(const Basis& b) { return b.elements; }
inline const ElementSet& elements_of(const Circuit& c) { return c.elements; }

template <typename T>
void sort_by_elements(std::vector<T>& sets) {
  std::sort(sets.begin(), sets.end(),
            [](const T& a, const T& b) { return elements_of(a) < elements_of(b); });
}

}  // namespace detail

/// All bases, sorted lexicographically by their element lists.
inline std::vector<Basis> enumerate_bases(const Matroid& m, EnumerationCap cap = {}) {
  detail::require_within_cap(m, cap.subsets, "enumerate_bases");
  const auto u = detail::tabulate(m);
  std::vector<Basis> out;
  for (std::uint32_t mask : detail::basis_masks(u)) out.push_back(Basis{u.set_of(mask)});
  detail::sort_by_elements(out);
  return out;
}

/// All circuits (minimal dependent sets), sorted lexicographically.
inline std::vector<Circuit> enumerate_circuits(const Matroid& m, EnumerationCap cap = {}) {
  detail::require_within_cap(m, cap.circuits, "enumerate_circuits");
  const auto u = detail::tabulate(m);
  const std::uint32_t total = 1u << u.size();
  std::vector<Circuit> out;
  for (std::uint32_t mask = 1; mask < total; ++mask) {
    if (u.indep(mask)) continue;
    bool minimal = true;
    for (std::uint32_t rest = mask; rest != 0 && minimal;) {
      const std::uint32_t bit = rest & (~rest + 1);
      rest ^= bit;
      if (!u.indep(mask ^ bit)) minimal = false;
    }
    if (minimal) out.push_back(Circuit{u.set_of(mask)});
  }
  detail::sort_by_elements(out);
  return out;
}

/// All cocircuits, i.e. circuits of the dual matroid, whose bases are the
/// complements of bases. Sorted lexicographically.
inline std::vector<ElementSet> enumerate_cocircuits(const Matroid& m, EnumerationCap cap = {}) {
  detail::require_within_cap(m, cap.circuits, "enumerate_cocircuits");
  const auto u = detail::tabulate(m);
  const auto bases = detail::basis_masks(u);
  const std::uint32_t full = (1u << u.size()) - 1;

  // Independence in the dual: the set fits inside the complement of a basis.
  auto dual_indep = [&](std::uint32_t mask) {
    for (std::uint32_t b : bases) {
      if ((mask & b) == 0) return true;
    }
    return false;
  };

  std::vector<ElementSet> out;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    if (dual_indep(mask)) continue;
    bool minimal = true;
    for (std::uint32_t rest = mask; rest != 0 && minimal;) {
      const std::uint32_t bit = rest & (~rest + 1);
      rest ^= bit;
      if (!dual_indep(mask ^ bit)) minimal = false;
    }
    if (minimal) out.push_back(u.set_of(mask));
  }
  detail::sort_by_elements(out);
  return out;
}

/// Minimum basis weight by evaluating every basis. Ties break toward the
/// lexicographically smallest element list.
inline OptResult brute_optimum(const Matroid& m, const Weighting& x, EnumerationCap cap = {}) {
  detail::require_within_cap(m, cap.subsets, "brute_optimum");
  require_total(m, x);
  const auto u = detail::tabulate(m);
  bool have = false;
  OptResult best;
  for (std::uint32_t mask : detail::basis_masks(u)) {
    ElementSet s = u.set_of(mask);
    Rational value = x.total(s);
    if (!have || value < best.value || (value == best.value && s < best.basis.elements)) {
      best = OptResult{Basis{std::move(s)}, std::move(value)};
      have = true;
    }
  }
  return best;
}

/// Every basis attaining the minimum weight, sorted lexicographically.
inline std::vector<Basis> all_optimal_bases(const Matroid& m, const Weighting& x,
                                            EnumerationCap cap = {}) {
  detail::require_within_cap(m, cap.subsets, "all_optimal_bases");
  require_total(m, x);
  const auto u = detail::tabulate(m);
  const auto bases = detail::basis_masks(u);
  bool have = false;
  Rational best;
  std::vector<Basis> out;
  for (std::uint32_t mask : bases) {
    ElementSet s = u.set_of(mask);
    const Rational value = x.total(s);
    if (!have || value < best) {
      best = value;
      have = true;
      out.clear();
    }
    if (value == best) out.push_back(Basis{std::move(s)});
  }
  detail::sort_by_elements(out);
  return out;
}

/// Over all circuits through e: the smallest value of the heaviest element
/// other than e. Raises DomainError when no circuit passes through e.
inline Rational brute_minmax(const Matroid& m, const Weighting& x, ElementId e,
                             EnumerationCap cap = {}) {
  detail::require_within_cap(m, cap.circuits, "brute_minmax");
  m.require_element(e, "brute_minmax");
  require_total(m, x);
  bool have = false;
  Rational best;
  for (const Circuit& c : enumerate_circuits(m, cap)) {
    if (!contains(c.elements, e)) continue;
    bool first = true;
    Rational heaviest;
    for (ElementId f : c.elements) {
      if (f == e) continue;
      if (first || x.at(f) > heaviest) {
        heaviest = x.at(f);
        first = false;
      }
    }
    if (first) {
      throw DomainError("brute_minmax: element " + m.describe(e) + " is a loop");
    }
    if (!have || heaviest < best) {
      best = heaviest;
      have = true;
    }
  }
  if (!have) {
    throw DomainError("brute_minmax: no circuit passes through element " + m.describe(e));
  }
  return best;
}

enum class BasisFilter { kAvoiding, kContaining };

/// Minimum weight over bases that avoid (or contain) element e, again by
/// direct evaluation, with the lexicographic tie rule of brute_optimum.
inline OptResult brute_next_best(const Matroid& m, const Weighting& x, ElementId e,
                                 BasisFilter filter, EnumerationCap cap = {}) {
  detail::require_within_cap(m, cap.subsets, "brute_next_best");
  m.require_element(e, "brute_next_best");
  require_total(m, x);
  const auto u = detail::tabulate(m);
  bool have = false;
  OptResult best;
  for (std::uint32_t mask : detail::basis_masks(u)) {
    ElementSet s = u.set_of(mask);
    const bool has_e = contains(s, e);
    if (filter == BasisFilter::kAvoiding ? has_e : !has_e) continue;
    Rational value = x.total(s);
    if (!have || value < best.value || (value == best.value && s < best.basis.elements)) {
      best = OptResult{Basis{std::move(s)}, std::move(value)};
      have = true;
    }
  }
  if (!have) {
    throw DomainError(std::string("brute_next_best: no basis ") +
                      (filter == BasisFilter::kAvoiding ? "avoids " : "contains ") +
                      m.describe(e));
  }
  return best;
}

/// A bijection p from basis a onto basis b such that a - e + p(e) is a basis
/// for every e in a. Common elements are fixed; the rest are matched by
/// augmenting paths. Such a bijection always exists for two bases of a
/// matroid, so failure to match raises InternalError.
inline std::map<ElementId, ElementId> find_exchange_bijection(const Matroid& m, const Basis& a,
                                                              const Basis& b,
                                                              EnumerationCap cap = {}) {
  detail::require_within_cap(m, cap.subsets, "find_exchange_bijection");
  matopt::detail::require_basis(m, a, "find_exchange_bijection");
  matopt::detail::require_basis(m, b, "find_exchange_bijection");

  std::map<ElementId, ElementId> out;
  for (ElementId e : set_intersection(a.elements, b.elements)) out[e] = e;

  const ElementSet left = set_difference(a.elements, b.elements);
  const ElementSet right = set_difference(b.elements, a.elements);

  std::vector<std::vector<std::size_t>> adj(left.size());
  for (std::size_t i = 0; i < left.size(); ++i) {
    const ElementSet removed = without_element(a.elements, left[i]);
    for (std::size_t j = 0; j < right.size(); ++j) {
      if (m.is_independent(with_element(removed, right[j]))) adj[i].push_back(j);
    }
  }

  std::vector<std::size_t> match_right(right.size(), SIZE_MAX);
  std::vector<char> visited;
  auto augment = [&](auto&& self, std::size_t i) -> bool {
    for (std::size_t j : adj[i]) {
      if (visited[j]) continue;
      visited[j] = 1;
      if (match_right[j] == SIZE_MAX || self(self, match_right[j])) {
        match_right[j] = i;
        return true;
      }
    }
    return false;
  };
  for (std::size_t i = 0; i < left.size(); ++i) {
    visited.assign(right.size(), 0);
    if (!augment(augment, i)) {
      throw InternalError(
          "find_exchange_bijection: no exchange bijection exists; the independence oracle does "
          "not describe a matroid");
    }
  }
  for (std::size_t j = 0; j < right.size(); ++j) out[left[match_right[j]]] = right[j];
  return out;
}

}  // namespace matopt::brute
