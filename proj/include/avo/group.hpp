#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace avo {

/// Raised when an operation is asked of a group kind that does not support it
/// (tuple coordinates of a free group, tree convexity in Z^d, ...).
class UnsupportedOperation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Raised when an enumeration would exceed a configured memory or node cap.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An element of a catalog group, optionally tagged with a level.
///
/// Polycyclic kinds store their canonical coordinates in `c` (torsion entries
/// reduced to [0, k-1]; the Heisenberg group uses (a, b, c) with the law
/// (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a*b')). Free groups store a freely
/// reduced word: letter i+1 is generator i, -(i+1) its inverse.
///
/// `level` is 0 for ordinary points and 1 or 2 for the two-level spaces
/// G x {1,2} used by factor relations. Group translation never changes it.
struct Point {
  std::vector<int> c;
  int level = 0;

  Point() = default;
  explicit Point(std::vector<int> coords, int lvl = 0) : c(std::move(coords)), level(lvl) {}

  friend bool operator==(const Point&, const Point&) = default;
  friend std::strong_ordering operator<=>(const Point& a, const Point& b) {
    if (auto cmp = a.level <=> b.level; cmp != 0) return cmp;
    return a.c <=> b.c;
  }
};

struct PointHash {
  std::size_t operator()(const Point& p) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ULL ^ static_cast<std::size_t>(p.level);
    for (int v : p.c) h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

std::string to_string(const Point& p);

enum class GroupKind { FreeAbelian, AbelianWithTorsion, Heisenberg, Free };

struct Ball {
  int radius = 0;
  std::vector<Point> members;  // lexicographic
};

/// A catalog group: Z^d, Z^d x Z_k1 x ... x Z_km, the discrete Heisenberg
/// group, or the free group F_k, each with a fixed generating set.
///
/// Values are cheap to copy; ball and norm caches are shared between copies
/// and guarded internally, so a Group may be read from several threads.
class Group {
 public:
  /// Z with its standard generators.
  Group() : Group(GroupKind::FreeAbelian, 1, {}, 0) {}
  static Group free_abelian(int d);
  static Group abelian_with_torsion(int d, std::vector<int> torsion);
  static Group heisenberg();
  static Group free(int rank);
  /// Catalog keys: "Z", "Z^3", "Z^2xZ3", "ZxZ2xZ4", "heisenberg", "F2".
  static Group from_key(std::string_view key);

  std::string key() const;
  GroupKind kind() const { return kind_; }
  bool polycyclic() const { return kind_ != GroupKind::Free; }
  bool abelian() const { return kind_ == GroupKind::FreeAbelian || kind_ == GroupKind::AbelianWithTorsion; }
  int free_rank() const { return rank_; }
  /// Number of stored coordinates (polycyclic kinds).
  int arity() const;
  /// Polycycle size n: number of axes.
  int axis_count() const { return arity(); }
  /// Order k_i of axis i (1-based); 0 means infinite.
  int axis_order(int axis) const;
  const std::vector<std::string>& generator_names() const { return gen_names_; }

  Point identity() const;
  bool is_identity(const Point& p) const;
  Point compose(const Point& g, const Point& h) const;
  Point invert(const Point& g) const;
  /// Symmetric generating set (each generator and its inverse).
  const std::vector<Point>& generators() const { return gens_; }
  /// Throws std::invalid_argument when p is not a canonical point of this group.
  void validate(const Point& p) const;

  /// Word norm with respect to the fixed generating set.
  int norm(const Point& p) const;
  int distance(const Point& a, const Point& b) const;
  /// Exact metric ball, breadth-first over generator edges.
  const Ball& ball(int r) const;
  /// Ball members of norm exactly r.
  std::vector<Point> sphere(int r) const;

  // Polycycle coordinates.
  std::vector<long> to_tuple(const Point& g) const;
  Point from_tuple(const std::vector<long>& t) const;
  /// 1-based index of the last nonzero tuple coordinate; 0 for the identity.
  int last_nonzero(const Point& g) const;
  /// h_axis^e for the polycycle generator of the given (1-based) axis.
  Point axis_power(int axis, long e) const;
  /// Catalog group of H_i (first i axes) and the embedding of its points.
  Group subgroup(int axes) const;
  /// Coordinates of g (assumed in H_i) as a point of subgroup(i).
  Point to_subgroup(const Point& g, int axes) const;

  std::size_t ball_size_limit() const { return ball_limit_; }
  void set_ball_size_limit(std::size_t limit) { ball_limit_ = limit; }

  friend bool operator==(const Group& a, const Group& b) { return a.key() == b.key(); }

 private:
  struct Cache;
  Group(GroupKind kind, int d, std::vector<int> torsion, int rank);

  int reduce(int axis0, long v) const;

  GroupKind kind_;
  int dim_ = 0;               // free axes of the abelian kinds
  std::vector<int> torsion_;  // k_i >= 2
  int rank_ = 0;              // free group rank
  std::vector<Point> gens_;
  std::vector<std::string> gen_names_;
  std::size_t ball_limit_ = 2'000'000;
  std::shared_ptr<Cache> cache_;
};

}  // namespace avo
