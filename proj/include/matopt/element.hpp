#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace matopt {

/// Identity of a ground-set element. Ids are dense indices assigned at
/// instance construction and stay stable across minors, so results about a
/// minor can be read back against the original instance.
class ElementId {
 public:
  constexpr ElementId() : value_(0) {}
  explicit constexpr ElementId(std::uint32_t value) : value_(value) {}

  [[nodiscard]] constexpr std::uint32_t value() const { return value_; }

  friend constexpr auto operator<=>(ElementId, ElementId) = default;

 private:
  std::uint32_t value_;
};

/// A set of elements, kept sorted ascending with no duplicates.
using ElementSet = std::vector<ElementId>;

/// Sorts and deduplicates in place.
inline void canonicalize(ElementSet& s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
}

[[nodiscard]] inline ElementSet canonical(ElementSet s) {
  canonicalize(s);
  return s;
}

/// Builds a canonical set from raw ids; convenient in tests and parsers.
[[nodiscard]] inline ElementSet make_elements(std::initializer_list<std::uint32_t> ids) {
  ElementSet s;
  s.reserve(ids.size());
  for (std::uint32_t id : ids) s.push_back(ElementId(id));
  canonicalize(s);
  return s;
}

[[nodiscard]] inline bool contains(const ElementSet& s, ElementId e) {
  return std::binary_search(s.begin(), s.end(), e);
}

/// s + e. Adding an element that is already present is a no-op.
[[nodiscard]] inline ElementSet with_element(const ElementSet& s, ElementId e) {
  ElementSet out;
  out.reserve(s.size() + 1);
  bool placed = false;
  for (ElementId x : s) {
    if (!placed && e < x) {
      out.push_back(e);
      placed = true;
    }
    if (x == e) placed = true;
    out.push_back(x);
  }
  if (!placed) out.push_back(e);
  return out;
}

/// s - e.
[[nodiscard]] inline ElementSet without_element(const ElementSet& s, ElementId e) {
  ElementSet out;
  out.reserve(s.size());
  for (ElementId x : s) {
    if (x != e) out.push_back(x);
  }
  return out;
}

[[nodiscard]] inline ElementSet set_union(const ElementSet& a, const ElementSet& b) {
  ElementSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

[[nodiscard]] inline ElementSet set_difference(const ElementSet& a, const ElementSet& b) {
  ElementSet out;
  out.reserve(a.size());
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

[[nodiscard]] inline ElementSet set_intersection(const ElementSet& a, const ElementSet& b) {
  ElementSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

[[nodiscard]] inline bool is_subset(const ElementSet& a, const ElementSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

[[nodiscard]] inline bool intersects(const ElementSet& a, const ElementSet& b) {
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia == *ib) return true;
    if (*ia < *ib) {
      ++ia;
    } else {
      ++ib;
    }
  }
  return false;
}

}  // namespace matopt
