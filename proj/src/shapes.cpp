#include "avo/shapes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <shared_mutex>
#include <sstream>
#include <unordered_set>

namespace avo {

Shape make_shape(std::vector<Point> points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

bool shape_contains(const Shape& s, const Point& p) { return std::binary_search(s.begin(), s.end(), p); }

Shape translate_shape(const Group& G, const Point& g, const Shape& s) {
  std::vector<Point> out;
  out.reserve(s.size());
  for (const Point& p : s) out.push_back(G.compose(g, p));
  return make_shape(std::move(out));
}

Shape truncate_shape(const Group& G, const Shape& s, int r) {
  Shape out;
  for (const Point& p : s)
    if (G.norm(p) <= r) out.push_back(p);
  return out;
}

std::string to_string(const Shape& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + to_string(s[i]);
  return out + "}";
}

namespace {

void require_polycyclic(const Group& G, const char* what) {
  if (!G.polycyclic()) throw UnsupportedOperation(std::string(what) + " needs a polycyclic group, got " + G.key());
}

}  // namespace

void validate(const Group& G, const AxisIntervalSpec& spec) {
  require_polycyclic(G, "inductive intervals");
  if (static_cast<int>(spec.axes.size()) != G.axis_count())
    throw std::invalid_argument("inductive interval has " + std::to_string(spec.axes.size()) + " axes, " + G.key() +
                                " has " + std::to_string(G.axis_count()));
  for (const auto& I : spec.axes) {
    if (I.sign < -1 || I.sign > 1) throw std::invalid_argument("axis interval sign must be -1, 0 or +1");
    if (I.length < -1) throw std::invalid_argument("axis interval length must be >= -1");
    if (I.sign != 0 && I.length == 0) throw std::invalid_argument("signed axis interval needs a nonzero length");
  }
}

AxisIntervalSpec normalize(const Group& G, AxisIntervalSpec spec) {
  validate(G, spec);
  for (int i = 1; i <= G.axis_count(); ++i) {
    auto& I = spec.axes[static_cast<std::size_t>(i - 1)];
    if (I.sign == 0 || I.length == 0) {
      I = AxisInterval::empty();
      continue;
    }
    const int k = G.axis_order(i);
    if (k == 0) continue;
    if (I.infinite() || I.length >= k - 1) I = AxisInterval::positive(k - 1);
  }
  return spec;
}

std::string to_string(const AxisIntervalSpec& spec) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < spec.axes.size(); ++i) {
    const auto& I = spec.axes[i];
    if (i) os << ',';
    if (I.sign == 0)
      os << "0";
    else
      os << (I.sign > 0 ? '+' : '-') << (I.infinite() ? std::string("inf") : std::to_string(I.length));
  }
  os << ')';
  return os.str();
}

bool axis_contains(const AxisInterval& I, int order, long t) {
  if (I.sign == 0) return false;
  if (order == 0) {
    if (I.sign > 0) return t >= 1 && (I.infinite() || t <= I.length);
    return t <= -1 && (I.infinite() || t >= -I.length);
  }
  const long len = I.infinite() ? order - 1 : std::min<long>(I.length, order - 1);
  if (I.sign > 0) return t >= 1 && t <= len;
  return t >= order - len && t <= order - 1;
}

bool ii_contains(const Group& G, const AxisIntervalSpec& spec, const Point& g) {
  const auto t = G.to_tuple(g);
  for (int i = static_cast<int>(t.size()); i >= 1; --i) {
    const long v = t[static_cast<std::size_t>(i - 1)];
    if (v != 0) return axis_contains(spec.axes[static_cast<std::size_t>(i - 1)], G.axis_order(i), v);
  }
  return false;
}

Shape ii_truncate(const Group& G, const AxisIntervalSpec& spec, int W) {
  Shape out;
  for (const Point& p : G.ball(W).members)
    if (ii_contains(G, spec, p)) out.push_back(p);
  return out;
}

namespace {

struct PrefixMemo {
  std::shared_mutex mutex;
  std::map<std::pair<std::string, int>, std::vector<Shape>> table;
};

PrefixMemo& prefix_memo() {
  static PrefixMemo memo;
  return memo;
}

std::vector<Shape> compute_ii_prefixes(const Group& G, int R) {
  const auto& ball = G.ball(R).members;
  const int n = G.axis_count();
  std::vector<std::vector<long>> tuples;
  tuples.reserve(ball.size());
  for (const Point& p : ball) tuples.push_back(G.to_tuple(p));

  std::vector<std::vector<AxisInterval>> options(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    auto& opts = options[static_cast<std::size_t>(i - 1)];
    opts.push_back(AxisInterval::empty());
    const int k = G.axis_order(i);
    if (k > 0) {
      for (int m = 1; m <= k - 1; ++m) opts.push_back(AxisInterval::positive(m));
      for (int m = 1; m <= k - 2; ++m) opts.push_back(AxisInterval::negative(m));
    } else {
      long L = 0;
      for (const auto& t : tuples) L = std::max(L, std::abs(t[static_cast<std::size_t>(i - 1)]));
      for (int m = 1; m <= L; ++m) {
        opts.push_back(AxisInterval::positive(m));
        opts.push_back(AxisInterval::negative(m));
      }
    }
  }

  std::set<Shape> found;
  AxisIntervalSpec spec;
  spec.axes.resize(static_cast<std::size_t>(n));
  std::function<void(int)> rec = [&](int axis) {
    if (axis == n) {
      Shape s;
      for (std::size_t j = 0; j < ball.size(); ++j) {
        const auto& t = tuples[j];
        for (int i = n; i >= 1; --i) {
          const long v = t[static_cast<std::size_t>(i - 1)];
          if (v == 0) continue;
          if (axis_contains(spec.axes[static_cast<std::size_t>(i - 1)], G.axis_order(i), v)) s.push_back(ball[j]);
          break;
        }
      }
      found.insert(std::move(s));
      return;
    }
    for (const auto& I : options[static_cast<std::size_t>(axis)]) {
      spec.axes[static_cast<std::size_t>(axis)] = I;
      rec(axis + 1);
    }
  };
  rec(0);
  return {found.begin(), found.end()};
}

}  // namespace

const std::vector<Shape>& ii_prefixes(const Group& G, int R) {
  require_polycyclic(G, "inductive interval prefixes");
  if (R < 0) throw std::invalid_argument("prefix radius must be non-negative");
  auto& memo = prefix_memo();
  const auto key = std::make_pair(G.key(), R);
  {
    std::shared_lock lock(memo.mutex);
    if (auto it = memo.table.find(key); it != memo.table.end()) return it->second;
  }
  auto computed = compute_ii_prefixes(G, R);
  std::unique_lock lock(memo.mutex);
  return memo.table.emplace(key, std::move(computed)).first->second;
}

bool is_ii_prefix(const Group& G, const Shape& s, int R) {
  const auto& all = ii_prefixes(G, R);
  return std::binary_search(all.begin(), all.end(), s);
}

OrderKey whole_group_key(const Group& G, const Point& g, int m) {
  require_polycyclic(G, "whole-group order");
  if (m < 0) m = G.axis_count();
  OrderKey key;
  Point cur = g;
  for (int axis = m; axis >= 1; --axis) {
    const long t = G.to_tuple(cur)[static_cast<std::size_t>(axis - 1)];
    if (G.axis_order(axis) > 0) {
      key.push_back(0);
      key.push_back(t);
    } else {
      key.push_back(t >= 0 ? 0 : 1);
      key.push_back(std::abs(t));
    }
    if (t != 0) cur = G.compose(G.axis_power(axis, -t), cur);
  }
  return key;
}

OrderKey construction_key(const Group& G, const AxisIntervalSpec& spec, const Point& g) {
  OrderKey key;
  const auto tuple = G.to_tuple(g);
  for (int axis = G.axis_count(); axis >= 1; --axis) {
    const long t = tuple[static_cast<std::size_t>(axis - 1)];
    if (t == 0) {
      key.push_back(1);
      continue;
    }
    const int k = G.axis_order(axis);
    long offset = std::abs(t);
    if (k > 0) offset = spec.axes[static_cast<std::size_t>(axis - 1)].sign > 0 ? t : k - t;
    key.push_back(0);
    key.push_back(offset);
    if (axis > 1) {
      auto rest = whole_group_key(G, G.compose(G.axis_power(axis, -t), g), axis - 1);
      key.insert(key.end(), rest.begin(), rest.end());
    }
    return key;
  }
  return key;
}

namespace {

// Position of the coset h^t in the alternating order of the complement of I.
long complement_rank(const AxisInterval& I, int k, long t) {
  if (k == 0) {
    if (I.sign == 0) return t > 0 ? 2 * (t - 1) : 2 * (-t - 1) + 1;
    if (I.sign > 0) {
      if (I.infinite()) return -t - 1;
      return t < 0 ? 2 * (-t - 1) : 2 * (t - I.length - 1) + 1;
    }
    if (I.infinite()) return t - 1;
    return t > 0 ? 2 * (t - 1) : 2 * (-t - I.length - 1) + 1;
  }
  if (I.sign == 0) return std::min(2 * (t - 1), 2 * (k - t - 1) + 1);
  const long m = I.infinite() ? k - 1 : I.length;
  if (I.sign > 0) return std::min(2 * (k - t - 1), 2 * (t - m - 1) + 1);
  return std::min(2 * (t - 1), 2 * (k - m - t - 1) + 1);
}

void append_extension_key(const Group& G, const AxisIntervalSpec* spec, Point g, OrderKey& key) {
  for (;;) {
    const int i = G.last_nonzero(g);
    if (i == 0) {
      key.push_back(0);
      return;
    }
    const long t = G.to_tuple(g)[static_cast<std::size_t>(i - 1)];
    const AxisInterval I = spec ? spec->axes[static_cast<std::size_t>(i - 1)] : AxisInterval::empty();
    key.push_back(i);
    key.push_back(complement_rank(I, G.axis_order(i), t));
    g = G.compose(G.axis_power(i, -t), g);
    spec = nullptr;
  }
}

}  // namespace

OrderKey extension_key(const Group& G, const AxisIntervalSpec& spec, const Point& g) {
  OrderKey key;
  append_extension_key(G, &spec, g, key);
  return key;
}

namespace {

std::vector<OrderStep> sorted_steps(const Group& G, const std::vector<Point>& pts,
                                    const std::function<OrderKey(const Point&)>& keyf) {
  std::vector<std::pair<OrderKey, Point>> keyed;
  keyed.reserve(pts.size());
  for (const Point& p : pts) keyed.emplace_back(keyf(p), p);
  std::sort(keyed.begin(), keyed.end());
  std::vector<OrderStep> out;
  out.reserve(keyed.size());
  for (auto& [k, p] : keyed) out.push_back({p, G.last_nonzero(p)});
  return out;
}

}  // namespace

std::vector<OrderStep> construction_order(const Group& G, const std::optional<AxisIntervalSpec>& spec, int W) {
  require_polycyclic(G, "construction orders");
  if (!spec) {
    return sorted_steps(G, G.ball(W).members, [&](const Point& p) { return whole_group_key(G, p); });
  }
  const auto norm = normalize(G, *spec);
  return sorted_steps(G, ii_truncate(G, norm, W), [&](const Point& p) { return construction_key(G, norm, p); });
}

std::vector<OrderStep> extension_order(const Group& G, const AxisIntervalSpec& spec, int W) {
  require_polycyclic(G, "extension orders");
  const auto norm = normalize(G, spec);
  std::vector<Point> pts;
  for (const Point& p : G.ball(W).members)
    if (!ii_contains(G, norm, p)) pts.push_back(p);
  return sorted_steps(G, pts, [&](const Point& p) { return extension_key(G, norm, p); });
}

OrderCheck check_translated_prefixes(const Group& G, const std::vector<OrderStep>& order, const Shape& base, int W) {
  OrderCheck result;
  std::vector<Point> seen(base.begin(), base.end());
  for (const auto& step : order) {
    const int R = W - G.norm(step.point);
    if (R < 0) {
      ++result.truncated_steps;
    } else {
      const Point inv = G.invert(step.point);
      std::vector<Point> view;
      for (const Point& q : seen) {
        Point u = G.compose(inv, q);
        if (G.norm(u) <= R) view.push_back(std::move(u));
      }
      ++result.steps_checked;
      if (!is_ii_prefix(G, make_shape(std::move(view)), R)) {
        ++result.failures;
        if (!result.first_failure) result.first_failure = step.point;
      }
    }
    seen.push_back(step.point);
  }
  return result;
}

namespace {

void require_free(const Group& G, const char* what) {
  if (G.kind() != GroupKind::Free) throw UnsupportedOperation(std::string(what) + " needs a free group, got " + G.key());
}

}  // namespace

bool tree_convex_check(const Group& G, const Shape& s) {
  require_free(G, "tree convexity");
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      const Point path = G.compose(G.invert(s[i]), s[j]);
      const int L = static_cast<int>(path.c.size());
      for (int k = 1; k < L; ++k) {
        const int r = std::min(k, L - k);
        const Point v = G.compose(s[i], Point(std::vector<int>(path.c.begin(), path.c.begin() + k)));
        for (const Point& b : G.ball(r - 1).members)
          if (!shape_contains(s, G.compose(v, b))) return false;
      }
    }
  return true;
}

bool extension_set_check(const Group& G, const Shape& s) {
  require_free(G, "extension sets");
  const Point e = G.identity();
  if (shape_contains(s, e)) return false;
  Shape with = s;
  with.push_back(e);
  return tree_convex_check(G, make_shape(std::move(with)));
}

std::vector<Shape> tree_convex_extension_prefixes(const Group& G, int R) {
  require_free(G, "tree convex extension prefixes");
  const auto& members = G.ball(R).members;
  std::vector<Point> nodes(members.begin(), members.end());
  std::stable_sort(nodes.begin(), nodes.end(), [](const Point& a, const Point& b) { return a.c.size() < b.c.size(); });
  constexpr std::size_t kCap = 2'000'000;
  // Subtrees of B_R containing e: (1 + N(R-1))^(2k) with N(h) = (1 + N(h-1))^(2k-1).
  const double branching = 2.0 * G.free_rank();
  double sub = 1;
  for (int h = 1; h < R; ++h) sub = std::pow(1 + sub, branching - 1);
  const double total = R == 0 ? 1 : std::pow(1 + sub, branching);
  if (total > static_cast<double>(kCap))
    throw ResourceError("tree convex prefix enumeration exceeds cap at radius " + std::to_string(R));
  std::vector<Shape> out;
  std::size_t visited = 0;
  std::unordered_set<Point, PointHash> chosen;
  std::vector<Point> current;
  std::function<void(std::size_t)> rec = [&](std::size_t idx) {
    if (++visited > kCap) throw ResourceError("tree convex prefix enumeration exceeds cap at radius " + std::to_string(R));
    if (idx == nodes.size()) {
      Shape t = make_shape(current);
      if (tree_convex_check(G, t)) {
        t.erase(std::remove(t.begin(), t.end(), G.identity()), t.end());
        out.push_back(std::move(t));
      }
      return;
    }
    const Point& p = nodes[idx];
    if (!p.c.empty()) {
      const Point parent(std::vector<int>(p.c.begin(), p.c.end() - 1));
      if (!chosen.count(parent)) {
        rec(idx + 1);
        return;
      }
      rec(idx + 1);
    }
    chosen.insert(p);
    current.push_back(p);
    rec(idx + 1);
    current.pop_back();
    chosen.erase(p);
  };
  rec(0);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Shape> all_subset_prefixes(const Group& G, int R, int max_cells) {
  std::vector<Point> cells;
  for (const Point& p : G.ball(R).members)
    if (!G.is_identity(p)) cells.push_back(p);
  if (static_cast<int>(cells.size()) > max_cells)
    throw ResourceError("all-subsets family over " + std::to_string(cells.size()) + " cells exceeds the cap of " +
                        std::to_string(max_cells));
  std::vector<Shape> out;
  const std::size_t n = cells.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    Shape s;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1U) s.push_back(cells[i]);
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end());
  return out;
}

Shape space_ball(const Group& G, int R, int levels) {
  const auto& members = G.ball(R).members;
  if (levels != 2) return members;
  std::vector<Point> out;
  for (int lvl = 1; lvl <= 2; ++lvl)
    for (const Point& p : members) out.emplace_back(p.c, lvl);
  return make_shape(std::move(out));
}

std::vector<CorneredShape> cornered_prefixes(const Group& G, int R) {
  require_polycyclic(G, "cornered two-level shapes");
  std::vector<CorneredShape> out;
  const Point e = G.identity();
  std::vector<Point> upper;
  for (const Point& p : G.ball(R).members) upper.emplace_back(p.c, 2);
  for (const Shape& P : ii_prefixes(G, R)) {
    std::vector<Point> lvl2;
    for (const Point& p : P) lvl2.emplace_back(p.c, 2);
    out.push_back({make_shape(lvl2), Point(e.c, 2)});
    std::vector<Point> lvl1 = upper;
    for (const Point& p : P) lvl1.emplace_back(p.c, 1);
    out.push_back({make_shape(std::move(lvl1)), Point(e.c, 1)});
  }
  return out;
}

}  // namespace avo
