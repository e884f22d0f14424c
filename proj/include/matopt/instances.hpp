#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "matopt/element.hpp"
#include "matopt/error.hpp"
#include "matopt/matroid.hpp"
#include "matopt/rational.hpp"

namespace matopt {

/// A multigraph. Vertices are 0..vertex_count-1; parallel edges and
/// self-loops are allowed (a self-loop becomes a matroid loop).
struct GraphDescription {
  struct Edge {
    std::string label;
    std::size_t tail = 0;
    std::size_t head = 0;
  };

  std::size_t vertex_count = 0;
  std::vector<Edge> edges;
};

namespace detail {

inline void require_unique_labels(const std::vector<std::string>& labels, const char* what) {
  std::set<std::string> seen;
  for (const auto& l : labels) {
    if (!seen.insert(l).second) {
      throw DomainError(std::string(what) + ": duplicate label '" + l + "'");
    }
  }
}

}  // namespace detail

/// Cycle matroid of a multigraph: a set of edges is independent iff it
/// contains no cycle. Decided by union-find over the endpoints.
inline Matroid graphic(const GraphDescription& g) {
  std::vector<std::string> labels;
  std::vector<std::pair<std::size_t, std::size_t>> ends;
  labels.reserve(g.edges.size());
  ends.reserve(g.edges.size());
  for (const auto& e : g.edges) {
    if (e.tail >= g.vertex_count || e.head >= g.vertex_count) {
      throw DomainError("edge '" + e.label + "' has an endpoint outside 0.." +
                        std::to_string(g.vertex_count == 0 ? 0 : g.vertex_count - 1));
    }
    labels.push_back(e.label);
    ends.emplace_back(e.tail, e.head);
  }
  detail::require_unique_labels(labels, "graphic");

  const std::size_t n = g.vertex_count;
  auto oracle = [ends, n](const ElementSet& s) {
    std::vector<std::size_t> parent(n);
    for (std::size_t v = 0; v < n; ++v) parent[v] = v;
    auto find = [&parent](std::size_t v) {
      while (parent[v] != v) {
        parent[v] = parent[parent[v]];
        v = parent[v];
      }
      return v;
    };
    for (ElementId e : s) {
      const auto [u, w] = ends[e.value()];
      const std::size_t ru = find(u);
      const std::size_t rw = find(w);
      if (ru == rw) return false;  // closes a cycle (or is a self-loop)
      parent[ru] = rw;
    }
    return true;
  };
  return Matroid::from_oracle(std::move(labels), std::move(oracle));
}

/// Uniform matroid U(k, n): independent sets are those of size at most k.
inline Matroid uniform(std::size_t k, std::vector<std::string> ground_labels) {
  detail::require_unique_labels(ground_labels, "uniform");
  if (k > ground_labels.size()) {
    throw DomainError("uniform rank " + std::to_string(k) + " exceeds ground size " +
                      std::to_string(ground_labels.size()));
  }
  auto oracle = [k](const ElementSet& s) { return s.size() <= k; };
  return Matroid::from_oracle(std::move(ground_labels), std::move(oracle));
}

/// A matrix with labeled columns and exact rational entries, row-major.
struct RationalMatrix {
  std::vector<std::string> column_labels;
  std::vector<std::vector<Rational>> rows;
};

/// Linear matroid of a matrix: a set of columns is independent iff the
/// columns are linearly independent over the rationals. Decided by exact
/// Gaussian elimination, so there is no numerical error.
inline Matroid linear(const RationalMatrix& a) {
  detail::require_unique_labels(a.column_labels, "linear");
  const std::size_t cols = a.column_labels.size();
  for (std::size_t r = 0; r < a.rows.size(); ++r) {
    if (a.rows[r].size() != cols) {
      throw DomainError("matrix row " + std::to_string(r) + " has " +
                        std::to_string(a.rows[r].size()) + " entries, expected " +
                        std::to_string(cols));
    }
  }

  // Column-major storage; the oracle works on copies of the chosen columns.
  std::vector<std::vector<Rational>> columns(cols, std::vector<Rational>(a.rows.size()));
  for (std::size_t r = 0; r < a.rows.size(); ++r) {
    for (std::size_t c = 0; c < cols; ++c) columns[c][r] = a.rows[r][c];
  }

  const std::size_t row_count = a.rows.size();
  auto oracle = [columns, row_count](const ElementSet& s) {
    if (s.size() > row_count) return false;
    std::vector<std::vector<Rational>> work;
    work.reserve(s.size());
    for (ElementId e : s) work.push_back(columns[e.value()]);
    std::vector<bool> pivot_used(row_count, false);
    for (std::size_t c = 0; c < work.size(); ++c) {
      std::size_t pivot = row_count;
      for (std::size_t r = 0; r < row_count; ++r) {
        if (!pivot_used[r] && work[c][r] != 0) {
          pivot = r;
          break;
        }
      }
      if (pivot == row_count) return false;  // column vanished: dependent
      pivot_used[pivot] = true;
      for (std::size_t d = c + 1; d < work.size(); ++d) {
        if (work[d][pivot] == 0) continue;
        const Rational factor = work[d][pivot] / work[c][pivot];
        for (std::size_t r = 0; r < row_count; ++r) {
          work[d][r] -= factor * work[c][r];
        }
      }
    }
    return true;
  };
  return Matroid::from_oracle(a.column_labels, std::move(oracle));
}

/// An explicitly listed basis family over a labeled ground set.
struct ExplicitBases {
  std::vector<std::string> ground_labels;
  std::vector<std::vector<std::string>> bases;
};

/// Matroid given by listing all bases. The family is validated eagerly
/// against the basis exchange axiom, which takes time cubic in the family
/// size times the ground size; ground sets beyond 12 elements are refused.
inline Matroid explicit_bases(const ExplicitBases& family) {
  detail::require_unique_labels(family.ground_labels, "explicit_bases");
  const std::size_t n = family.ground_labels.size();
  if (n > 12) {
    throw CapError("explicit basis families are only supported for ground sets of at most "
                   "12 elements (got " +
                   std::to_string(n) + ")");
  }
  if (family.bases.empty()) {
    throw DomainError("explicit_bases: at least one basis is required");
  }

  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index[family.ground_labels[i]] = i;

  auto format_mask = [&](std::uint32_t mask) {
    std::string out = "{";
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) {
        if (out.size() > 1) out += ",";
        out += family.ground_labels[i];
      }
    }
    return out + "}";
  };

  std::vector<std::uint32_t> masks;
  for (const auto& basis : family.bases) {
    std::uint32_t mask = 0;
    for (const auto& label : basis) {
      auto it = index.find(label);
      if (it == index.end()) {
        throw DomainError("explicit_bases: basis element '" + label + "' is not in the ground set");
      }
      mask |= 1u << it->second;
    }
    if (std::popcount(mask) != static_cast<int>(basis.size())) {
      throw DomainError("explicit_bases: a listed basis repeats an element");
    }
    masks.push_back(mask);
  }
  std::sort(masks.begin(), masks.end());
  masks.erase(std::unique(masks.begin(), masks.end()), masks.end());

  const int cardinality = std::popcount(masks.front());
  for (std::uint32_t m : masks) {
    if (std::popcount(m) != cardinality) {
      throw DomainError("explicit_bases: bases " + format_mask(masks.front()) + " and " +
                        format_mask(m) + " differ in size");
    }
  }

  // Exchange axiom: for bases A, B and e in A - B there is f in B - A with
  // A - e + f again in the family. Checking all ordered pairs suffices.
  auto is_member = [&](std::uint32_t mask) {
    return std::binary_search(masks.begin(), masks.end(), mask);
  };
  for (std::uint32_t a : masks) {
    for (std::uint32_t b : masks) {
      std::uint32_t only_a = a & ~b;
      while (only_a != 0) {
        const std::uint32_t e_bit = only_a & (~only_a + 1);
        only_a ^= e_bit;
        bool exchanged = false;
        std::uint32_t only_b = b & ~a;
        while (only_b != 0) {
          const std::uint32_t f_bit = only_b & (~only_b + 1);
          only_b ^= f_bit;
          if (is_member((a ^ e_bit) | f_bit)) {
            exchanged = true;
            break;
          }
        }
        if (!exchanged) {
          throw DomainError("explicit_bases: exchange axiom fails for bases " + format_mask(a) +
                            " and " + format_mask(b) + " at element " + format_mask(e_bit));
        }
      }
    }
  }

  auto oracle = [masks](const ElementSet& s) {
    std::uint32_t smask = 0;
    for (ElementId e : s) smask |= 1u << e.value();
    for (std::uint32_t b : masks) {
      if ((smask & ~b) == 0) return true;
    }
    return false;
  };
  return Matroid::from_oracle(family.ground_labels, std::move(oracle));
}

}  // namespace matopt
