#pragma once

#include <optional>
#include <string>
#include <vector>

#include "avo/group.hpp"

namespace avo {

/// A finite set of points kept sorted and duplicate-free.
using Shape = std::vector<Point>;

Shape make_shape(std::vector<Point> points);
bool shape_contains(const Shape& s, const Point& p);
/// g * S
Shape translate_shape(const Group& G, const Point& g, const Shape& s);
/// Points of s with norm <= r.
Shape truncate_shape(const Group& G, const Shape& s, int r);
std::string to_string(const Shape& s);

/// One axis of an inductive interval: an interval grazing 0.
struct AxisInterval {
  int sign = 0;     // -1, 0 (empty) or +1
  int length = 0;   // number of elements; -1 for an infinite ray

  static AxisInterval empty() { return {0, 0}; }
  static AxisInterval positive(int m) { return {+1, m}; }
  static AxisInterval negative(int m) { return {-1, m}; }
  static AxisInterval positive_ray() { return {+1, -1}; }
  static AxisInterval negative_ray() { return {-1, -1}; }

  bool infinite() const { return length < 0; }
  friend bool operator==(const AxisInterval&, const AxisInterval&) = default;
};

/// Inductive interval given by its axis intervals (I_1, ..., I_n).
struct AxisIntervalSpec {
  std::vector<AxisInterval> axes;
  friend bool operator==(const AxisIntervalSpec&, const AxisIntervalSpec&) = default;
};

/// Canonical form: on a finite axis Z_k the length is < k, rays collapse to
/// the full punctured group, and the punctured group is stored as positive.
AxisIntervalSpec normalize(const Group& G, AxisIntervalSpec spec);
void validate(const Group& G, const AxisIntervalSpec& spec);
std::string to_string(const AxisIntervalSpec& spec);

/// Whether tuple value t (torsion values in [0, k-1]) lies in the axis interval.
bool axis_contains(const AxisInterval& I, int order, long t);
bool ii_contains(const Group& G, const AxisIntervalSpec& spec, const Point& g);
/// C ∩ B_W for the inductive interval C.
Shape ii_truncate(const Group& G, const AxisIntervalSpec& spec, int W);

/// Exact, duplicate-free set {C ∩ B_R : C an inductive interval}, sorted.
/// Memoized per (group, R); safe for concurrent readers.
const std::vector<Shape>& ii_prefixes(const Group& G, int R);
bool is_ii_prefix(const Group& G, const Shape& s, int R);

// Order keys. Points are ordered by lexicographic comparison of their keys.
using OrderKey = std::vector<long>;
/// Well-order of H_m (default: all of G): coset t_m = 0 first, then the
/// positive cosets, then the negative ones, recursively inside each coset.
OrderKey whole_group_key(const Group& G, const Point& g, int m = -1);
OrderKey construction_key(const Group& G, const AxisIntervalSpec& spec, const Point& g);
OrderKey extension_key(const Group& G, const AxisIntervalSpec& spec, const Point& g);

struct OrderStep {
  Point point;
  int stage = 0;  // axis whose coset block the point belongs to (0 for the identity step)
  friend bool operator==(const OrderStep&, const OrderStep&) = default;
};

/// Well-order of the inductive interval (or of G when spec is empty),
/// truncated to B_W.
std::vector<OrderStep> construction_order(const Group& G, const std::optional<AxisIntervalSpec>& spec, int W);
/// Order of (B_W \ (C ∪ {e})) ∪ {e}, starting with e.
std::vector<OrderStep> extension_order(const Group& G, const AxisIntervalSpec& spec, int W);

struct OrderCheck {
  int steps_checked = 0;
  int failures = 0;
  std::optional<Point> first_failure;
  /// Points s with norm(s) > W - min_radius were not checkable at any radius.
  int truncated_steps = 0;
};

/// For each step s, checks that s^-1 (earlier ∪ base) ∩ B_R is a member of
/// ii_prefixes(R) for every R <= W - norm(s).
OrderCheck check_translated_prefixes(const Group& G, const std::vector<OrderStep>& order, const Shape& base, int W);

// Free groups.
bool tree_convex_check(const Group& G, const Shape& s);
/// e ∉ S and S ∪ {e} tree convex.
bool extension_set_check(const Group& G, const Shape& s);
/// {T \ {e} : T ⊆ B_R tree convex, e ∈ T}: the truncations of extension
/// sets of limit tree convex sets.
std::vector<Shape> tree_convex_extension_prefixes(const Group& G, int R);

/// All subsets of B_R \ {e}; throws ResourceError above `max_cells` cells.
std::vector<Shape> all_subset_prefixes(const Group& G, int R, int max_cells = 16);

/// A level-tagged shape in G x {1,2} with a distinguished corner outside it.
struct CorneredShape {
  Shape shape;
  Point corner;
  friend bool operator==(const CorneredShape&, const CorneredShape&) = default;
};

/// (B_R x {2}) ∪ (P x {1}) with corner (e,1), and P x {2} with corner (e,2),
/// for P in ii_prefixes(R).
std::vector<CorneredShape> cornered_prefixes(const Group& G, int R);

/// B_R x {1,2} when levels == 2, otherwise B_R.
Shape space_ball(const Group& G, int R, int levels);

}  // namespace avo
