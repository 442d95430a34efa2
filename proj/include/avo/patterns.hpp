#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "avo/group.hpp"
#include "avo/shapes.hpp"

namespace avo {

/// A finite pattern: cells sorted by point, one symbol index per cell.
struct Pattern {
  std::vector<std::pair<Point, int>> cells;

  Pattern() = default;
  /// Sorts the cells; throws std::invalid_argument on a repeated point.
  static Pattern from_cells(std::vector<std::pair<Point, int>> cells);

  bool empty() const { return cells.empty(); }
  std::size_t size() const { return cells.size(); }
  Shape domain() const;
  std::optional<int> at(const Point& p) const;
  /// Cells whose point lies in s.
  Pattern restrict_to(const Shape& s) const;
  /// Same pattern with p set to symbol (replacing any existing cell).
  Pattern with(const Point& p, int symbol) const;

  friend bool operator==(const Pattern&, const Pattern&) = default;
  friend auto operator<=>(const Pattern& a, const Pattern& b) { return a.cells <=> b.cells; }
};

/// Acts on the group part of p and keeps its level.
Point act(const Group& G, const Point& g, const Point& p);
Pattern translate(const Group& G, const Point& g, const Pattern& p);
/// Translate whose least point is the identity (at that point's level).
Pattern canonical_translate(const Group& G, const Pattern& p);
/// Whether every cell of a lies in b with the same symbol.
bool contained_in(const Pattern& a, const Pattern& b);
/// a ∪ b when they agree on their common cells.
std::optional<Pattern> merge(const Pattern& a, const Pattern& b);

/// A subshift of finite type given by a forbidden set. `levels == 2`
/// describes a relation in G x {1,2}: level-1 cells use `alphabet`, level-2
/// cells use `upper_alphabet`.
struct SftSpec {
  Group group;
  std::vector<std::string> alphabet;
  std::vector<Pattern> forbidden;
  int levels = 1;
  std::vector<std::string> upper_alphabet;
  std::string name;

  int alphabet_size(const Point& p) const {
    return static_cast<int>(p.level == 2 ? upper_alphabet.size() : alphabet.size());
  }
  /// Throws std::invalid_argument on bad symbols, levels or points.
  void validate() const;
  /// Whether the empty pattern is forbidden (the shift is empty outright).
  bool forbids_everything() const;
};

/// Canonical translates, duplicates and patterns containing a translate of
/// another forbidden pattern removed; result sorted.
std::vector<Pattern> normalize_forbidden(const Group& G, const std::vector<Pattern>& forbidden);
/// Whether some translate of `small` is contained in `big`.
bool contains_translate(const Group& G, const Pattern& small, const Pattern& big);

/// Maximum norm over the canonical translates of the forbidden patterns.
int window_size(const SftSpec& spec);
/// Maximum distance between two cells of one forbidden pattern.
int forbidden_diameter(const SftSpec& spec);

struct Occurrence {
  std::size_t forbidden_index;
  Point offset;  // the forbidden pattern translated by offset sits inside the pattern
};
std::vector<Occurrence> occurrences(const SftSpec& spec, const Pattern& p, std::size_t limit = 1);
/// No translate of a forbidden pattern occurs in p.
bool locally_valid(const SftSpec& spec, const Pattern& p);

std::string to_string(const SftSpec& spec, const Pattern& p);

}  // namespace avo
