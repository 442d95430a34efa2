#pragma once

#include <cstdint>
#include <functional>
#include <unordered_map>
#include <vector>

#include "avo/patterns.hpp"

namespace avo {

enum class SearchStatus { Found, Exhausted, BudgetExceeded };

struct SearchResult {
  SearchStatus status = SearchStatus::Exhausted;
  Pattern solution;
  std::uint64_t nodes = 0;
};

/// Backtracking search for locally valid patterns on a fixed finite domain.
/// Cells are assigned in the given order; every placement of a forbidden
/// pattern that fits inside the domain is checked as soon as its last cell
/// is assigned.
class ConstraintSystem {
 public:
  ConstraintSystem(const SftSpec& spec, std::vector<Point> order);

  const std::vector<Point>& cells() const { return cells_; }
  std::size_t constraint_count() const { return constraint_count_; }

  /// One locally valid pattern on the domain extending `fixed`.
  SearchResult find(const Pattern& fixed, std::uint64_t node_cap) const;
  /// Visits every locally valid pattern on the domain extending `fixed`, as a
  /// vector of symbols aligned with cells(). `visit` returns false to stop,
  /// which yields Found; a complete run yields Exhausted.
  SearchStatus enumerate(const Pattern& fixed, const std::function<bool(const std::vector<int>&)>& visit,
                         std::uint64_t node_cap, std::uint64_t* nodes = nullptr) const;

  Pattern to_pattern(const std::vector<int>& symbols) const;

 private:
  struct Constraint {
    std::vector<std::pair<int, int>> cells;  // (cell index, symbol)
  };
  const SftSpec* spec_;
  std::vector<Point> cells_;
  std::vector<int> alphabet_;
  std::unordered_map<Point, int, PointHash> index_;
  std::vector<std::vector<Constraint>> by_last_;
  std::size_t constraint_count_ = 0;
  bool dead_ = false;
};

/// dom ∪ ⋃_{d ∈ dom ∪ {e}} d·B_R (with both levels for relations), ordered
/// with dom first and then by distance from dom ∪ {e}.
std::vector<Point> padded_domain(const SftSpec& spec, const Shape& dom, int R);

/// Decides whether patterns on a fixed domain extend to locally valid
/// patterns on its R-neighbourhood.
class ExtensionChecker {
 public:
  ExtensionChecker(const SftSpec& spec, const Shape& dom, int R);
  SearchResult check(const Pattern& p, std::uint64_t node_cap) const;
  int radius() const { return radius_; }

 private:
  int radius_;
  ConstraintSystem system_;
};

SearchResult extendable_to_radius(const SftSpec& spec, const Pattern& p, int R, std::uint64_t node_cap);

}  // namespace avo
