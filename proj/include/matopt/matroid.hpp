#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "matopt/element.hpp"
#include "matopt/error.hpp"

namespace matopt {

/// Decides whether a set of elements is independent. The set argument is
/// always sorted ascending and a subset of the universe the oracle was
/// created for. Oracles must be pure: same set, same answer.
using IndependenceOracle = std::function<bool(const ElementSet&)>;

/// A basis: maximal independent set. Invariants (size equals the matroid
/// rank, independence) are checked by the operations that accept one.
struct Basis {
  ElementSet elements;

  friend bool operator==(const Basis&, const Basis&) = default;
};

/// A circuit: minimal dependent set. Every constructor path in this library
/// yields circuits of cardinality at least 2; a would-be singleton circuit
/// means a loop and is reported as an error instead.
struct Circuit {
  ElementSet elements;

  friend bool operator==(const Circuit&, const Circuit&) = default;
};

/// Elements to contract and delete when forming a minor. The two sets must
/// be disjoint subsets of the ground set, and the contracted set must be
/// independent (contracting a loop is undefined).
struct MinorSpec {
  ElementSet contracted;
  ElementSet deleted;
};

/// A matroid given by an independence oracle over a finite ground set.
///
/// Minors are lazy views: they share the underlying oracle and translate
/// queries by padding with the contracted elements, so element ids never
/// shift. The rank of the ground set is computed once at construction; no
/// other answers are cached, and `oracle_calls()` exposes the number of
/// oracle invocations made so far for query-complexity observations.
class Matroid {
 public:
  /// Builds a matroid over elements 0..labels.size()-1. The oracle is
  /// probed once with the empty set, which must be independent.
  static Matroid from_oracle(std::vector<std::string> labels, IndependenceOracle oracle) {
    if (!oracle) throw PreconditionError("independence oracle must be callable");
    auto core = std::make_shared<Core>();
    core->labels = std::move(labels);
    core->oracle = std::move(oracle);
    ElementSet ground;
    ground.reserve(core->labels.size());
    for (std::uint32_t i = 0; i < core->labels.size(); ++i) ground.push_back(ElementId(i));
    Matroid m(std::move(core), std::move(ground), /*contracted=*/{});
    if (!m.raw_query({})) {
      throw DomainError("independence oracle rejects the empty set; not a matroid");
    }
    m.rank_ = m.closure_size(m.ground_);
    return m;
  }

  [[nodiscard]] const ElementSet& ground() const { return ground_; }
  [[nodiscard]] std::size_t size() const { return ground_.size(); }

  /// Rank of the full ground set.
  [[nodiscard]] std::size_t rank() const { return rank_; }

  [[nodiscard]] const std::string& label(ElementId e) const {
    if (e.value() >= core_->labels.size()) {
      throw DomainError("unknown element id " + std::to_string(e.value()));
    }
    return core_->labels[e.value()];
  }

  /// "'a' (id 0)" form used in diagnostics.
  [[nodiscard]] std::string describe(ElementId e) const {
    return "'" + label(e) + "' (id " + std::to_string(e.value()) + ")";
  }

  /// True if s is independent. Every id in s must belong to the ground set
  /// of this (possibly minor) matroid.
  [[nodiscard]] bool is_independent(const ElementSet& s) const {
    require_subset_of_ground(s, "is_independent");
    return raw_query(s);
  }

  /// Raises DomainError unless e belongs to the ground set of this view.
  void require_element(ElementId e, const char* op) const {
    if (!matopt::contains(ground_, e)) {
      throw DomainError(std::string(op) + ": element " + describe_or_id(e) +
                        " is not in the ground set");
    }
  }

  /// Total number of oracle invocations made through this matroid and every
  /// view sharing its core.
  [[nodiscard]] std::uint64_t oracle_calls() const { return core_->calls.load(); }

  /// Lazy minor view. Contractions are validated against the parent: each
  /// contracted element must keep the accumulated set independent, which is
  /// exactly the no-loop condition. Deleting and contracting commute, so the
  /// result only depends on the two sets, not on any ordering.
  [[nodiscard]] Matroid minor(const MinorSpec& spec) const {
    ElementSet contract = canonical(spec.contracted);
    ElementSet remove = canonical(spec.deleted);
    if (intersects(contract, remove)) {
      throw PreconditionError("minor arguments contract and delete a common element");
    }
    require_subset_of_ground(contract, "minor (contracted set)");
    require_subset_of_ground(remove, "minor (deleted set)");

    ElementSet accumulated = contracted_;
    for (ElementId e : contract) {
      ElementSet next = with_element(accumulated, e);
      if (!raw_query(next)) {
        throw DomainError("cannot contract " + describe(e) +
                          ": it is a loop in the intermediate matroid");
      }
      accumulated = std::move(next);
    }

    ElementSet new_ground = set_difference(set_difference(ground_, contract), remove);
    Matroid m(core_, std::move(new_ground), std::move(accumulated));
    m.rank_ = m.closure_size(m.ground_);
    return m;
  }

 private:
  struct Core {
    std::vector<std::string> labels;
    IndependenceOracle oracle;
    mutable std::atomic<std::uint64_t> calls{0};
  };

  Matroid(std::shared_ptr<const Core> core, ElementSet ground, ElementSet contracted)
      : core_(std::move(core)), ground_(std::move(ground)), contracted_(std::move(contracted)) {}

  // Queries the oracle through the minor translation: a set is independent
  // in the view iff its union with the contracted elements is independent
  // in the root matroid.
  bool raw_query(const ElementSet& s) const {
    core_->calls.fetch_add(1, std::memory_order_relaxed);
    if (contracted_.empty()) return core_->oracle(s);
    return core_->oracle(set_union(s, contracted_));
  }

  // Size of a maximal independent subset of s, built greedily in id order.
  std::size_t closure_size(const ElementSet& s) const {
    ElementSet acc;
    for (ElementId e : s) {
      ElementSet next = with_element(acc, e);
      if (raw_query(next)) acc = std::move(next);
    }
    return acc.size();
  }

  void require_subset_of_ground(const ElementSet& s, const char* op) const {
    for (ElementId e : s) {
      if (!matopt::contains(ground_, e)) {
        throw DomainError(std::string(op) + ": element " + describe_or_id(e) +
                          " is not in the ground set");
      }
    }
  }

  std::string describe_or_id(ElementId e) const {
    if (e.value() < core_->labels.size()) return describe(e);
    return "id " + std::to_string(e.value());
  }

  friend std::size_t rank(const Matroid&, const ElementSet&);

  std::shared_ptr<const Core> core_;
  ElementSet ground_;
  ElementSet contracted_;
  std::size_t rank_ = 0;
};

/// Rank of an arbitrary subset, via greedy closure in ascending id order.
[[nodiscard]] inline std::size_t rank(const Matroid& m, const ElementSet& s) {
  ElementSet t = canonical(s);
  m.require_subset_of_ground(t, "rank");
  return m.closure_size(t);
}

[[nodiscard]] inline bool is_basis(const Matroid& m, const ElementSet& s) {
  ElementSet t = canonical(s);
  return t.size() == m.rank() && m.is_independent(t);
}

namespace detail {

/// Throws PreconditionError unless b really is a basis of m.
inline void require_basis(const Matroid& m, const Basis& b, const char* op) {
  if (!is_basis(m, b.elements)) {
    throw PreconditionError(std::string(op) + ": the given set is not a basis");
  }
}

/// Path(e, b) = { f in b : b - f + e is a basis }. May be empty (e a loop).
[[nodiscard]] inline ElementSet fundamental_path_unchecked(const Matroid& m, const Basis& b,
                                                           ElementId e) {
  ElementSet path;
  for (ElementId f : b.elements) {
    if (m.is_independent(with_element(without_element(b.elements, f), e))) {
      path.push_back(f);
    }
  }
  return path;
}

/// Cut(e, b) = { f outside b : b - e + f is a basis }. May be empty (e a coloop).
[[nodiscard]] inline ElementSet fundamental_cut_unchecked(const Matroid& m, const Basis& b,
                                                          ElementId e) {
  ElementSet cut;
  const ElementSet base = without_element(b.elements, e);
  for (ElementId f : set_difference(m.ground(), b.elements)) {
    if (m.is_independent(with_element(base, f))) cut.push_back(f);
  }
  return cut;
}

}  // namespace detail

/// Elements of the basis b that e can replace: { f in b : b - f + e is a basis }.
/// Requires e outside b; raises DomainError when e is a loop (empty path).
[[nodiscard]] inline ElementSet fundamental_path(const Matroid& m, const Basis& b, ElementId e) {
  detail::require_basis(m, b, "fundamental_path");
  m.require_element(e, "fundamental_path");
  if (contains(b.elements, e)) {
    throw PreconditionError("fundamental_path: element " + m.describe(e) + " lies in the basis");
  }
  ElementSet path = detail::fundamental_path_unchecked(m, b, e);
  if (path.empty()) {
    throw DomainError("fundamental_path: element " + m.describe(e) + " is a loop");
  }
  return path;
}

/// The unique circuit inside b + e, for e outside the basis b. It is exactly
/// the fundamental path plus e itself.
[[nodiscard]] inline Circuit fundamental_circuit(const Matroid& m, const Basis& b, ElementId e) {
  return Circuit{with_element(fundamental_path(m, b, e), e)};
}

/// Elements that can replace e inside the basis b: { f outside b : b - e + f
/// is a basis }. Requires e in b; raises DomainError when e is a coloop.
[[nodiscard]] inline ElementSet fundamental_cut(const Matroid& m, const Basis& b, ElementId e) {
  detail::require_basis(m, b, "fundamental_cut");
  m.require_element(e, "fundamental_cut");
  if (!contains(b.elements, e)) {
    throw PreconditionError("fundamental_cut: element " + m.describe(e) +
                            " lies outside the basis");
  }
  ElementSet cut = detail::fundamental_cut_unchecked(m, b, e);
  if (cut.empty()) {
    throw DomainError("fundamental_cut: element " + m.describe(e) + " is a coloop");
  }
  return cut;
}

/// Loops ({e} dependent) and coloops (elements in every basis), by direct
/// rank probes. Returned as (loops, coloops), each sorted ascending.
[[nodiscard]] inline std::pair<ElementSet, ElementSet> loops_and_coloops(const Matroid& m) {
  ElementSet loops;
  ElementSet coloops;
  for (ElementId e : m.ground()) {
    if (!m.is_independent({e})) {
      loops.push_back(e);
    } else if (rank(m, without_element(m.ground(), e)) < m.rank()) {
      coloops.push_back(e);
    }
  }
  return {loops, coloops};
}

/// The optimization and analysis layers assume a loopless matroid: no loops
/// and no coloops. Violations raise DomainError naming every offender.
inline void assert_loopless(const Matroid& m) {
  auto [loops, coloops] = loops_and_coloops(m);
  if (loops.empty() && coloops.empty()) return;
  std::string msg = "matroid is not loopless:";
  for (ElementId e : loops) msg += " loop " + m.describe(e) + ";";
  for (ElementId e : coloops) msg += " coloop " + m.describe(e) + ";";
  msg.pop_back();
  throw DomainError(msg);
}

}  // namespace matopt
