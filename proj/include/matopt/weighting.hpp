#pragma once

#include <map>
#include <string>

#include "matopt/element.hpp"
#include "matopt/error.hpp"
#include "matopt/matroid.hpp"
#include "matopt/rational.hpp"

namespace matopt {

/// Assignment of an exact rational weight to each element. A weighting is a
/// plain value; analyses that vary weights work on copies.
class Weighting {
 public:
  Weighting() = default;

  void set(ElementId e, Rational w) { weights_[e] = std::move(w); }

  [[nodiscard]] bool has(ElementId e) const { return weights_.count(e) != 0; }

  [[nodiscard]] const Rational& at(ElementId e) const {
    auto it = weights_.find(e);
    if (it == weights_.end()) {
      throw DomainError("no weight assigned to element id " + std::to_string(e.value()));
    }
    return it->second;
  }

  /// Sum of weights over a set. Every element must carry a weight.
  [[nodiscard]] Rational total(const ElementSet& s) const {
    Rational sum = 0;
    for (ElementId e : s) sum += at(e);
    return sum;
  }

  [[nodiscard]] std::size_t size() const { return weights_.size(); }

  [[nodiscard]] auto begin() const { return weights_.begin(); }
  [[nodiscard]] auto end() const { return weights_.end(); }

  friend bool operator==(const Weighting&, const Weighting&) = default;

 private:
  std::map<ElementId, Rational> weights_;
};

/// Raises DomainError unless x assigns a weight to every ground element of m.
inline void require_total(const Matroid& m, const Weighting& x) {
  for (ElementId e : m.ground()) {
    if (!x.has(e)) {
      throw DomainError("weighting misses element " + m.describe(e));
    }
  }
}

/// A minimum-weight basis together with its weight.
struct OptResult {
  Basis basis;
  Rational value;

  friend bool operator==(const OptResult&, const OptResult&) = default;
};

}  // namespace matopt
