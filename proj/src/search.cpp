#include "avo/search.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace avo {

ConstraintSystem::ConstraintSystem(const SftSpec& spec, std::vector<Point> order)
    : spec_(&spec), cells_(std::move(order)) {
  const Group& G = spec.group;
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (!index_.emplace(cells_[i], static_cast<int>(i)).second)
      throw std::invalid_argument("duplicate cell " + to_string(cells_[i]) + " in search domain");
    alphabet_.push_back(spec.alphabet_size(cells_[i]));
  }
  by_last_.resize(cells_.size());
  dead_ = spec.forbids_everything();
  for (const Pattern& f : spec.forbidden) {
    if (f.empty()) continue;
    const Point& f0 = f.cells.front().first;
    const Point f0inv = G.invert(Point(f0.c));
    for (const Point& x : cells_) {
      if (x.level != f0.level) continue;
      const Point g = G.compose(Point(x.c), f0inv);
      Constraint c;
      int last = -1;
      bool inside = true;
      for (const auto& [q, s] : f.cells) {
        auto it = index_.find(act(G, g, q));
        if (it == index_.end()) {
          inside = false;
          break;
        }
        c.cells.emplace_back(it->second, s);
        last = std::max(last, it->second);
      }
      if (!inside) continue;
      by_last_[static_cast<std::size_t>(last)].push_back(std::move(c));
      ++constraint_count_;
    }
  }
}

Pattern ConstraintSystem::to_pattern(const std::vector<int>& symbols) const {
  std::vector<std::pair<Point, int>> cells;
  cells.reserve(cells_.size());
  for (std::size_t i = 0; i < cells_.size(); ++i) cells.emplace_back(cells_[i], symbols[i]);
  std::sort(cells.begin(), cells.end());
  Pattern p;
  p.cells = std::move(cells);
  return p;
}

SearchStatus ConstraintSystem::enumerate(const Pattern& fixed, const std::function<bool(const std::vector<int>&)>& visit,
                                         std::uint64_t node_cap, std::uint64_t* nodes_out) const {
  std::uint64_t nodes = 0;
  auto finish = [&](SearchStatus s) {
    if (nodes_out) *nodes_out = nodes;
    return s;
  };
  if (dead_) return finish(SearchStatus::Exhausted);
  const std::size_t n = cells_.size();
  std::vector<int> forced(n, -1);
  for (const auto& [pt, sym] : fixed.cells) {
    auto it = index_.find(pt);
    if (it == index_.end()) throw std::invalid_argument("fixed cell " + to_string(pt) + " outside search domain");
    if (sym < 0 || sym >= alphabet_[static_cast<std::size_t>(it->second)])
      throw std::invalid_argument("symbol out of range at " + to_string(pt));
    forced[static_cast<std::size_t>(it->second)] = sym;
  }
  std::vector<int> assign(n, -1);
  auto consistent = [&](std::size_t i) {
    for (const Constraint& c : by_last_[i]) {
      bool all = true;
      for (const auto& [idx, s] : c.cells)
        if (assign[static_cast<std::size_t>(idx)] != s) {
          all = false;
          break;
        }
      if (all) return false;
    }
    return true;
  };
  // Iterative depth-first search; assign[i] holds the current candidate.
  std::size_t depth = 0;
  if (n == 0) return finish(visit(assign) ? SearchStatus::Exhausted : SearchStatus::Found);
  while (true) {
    int& v = assign[depth];
    const int f = forced[depth];
    bool advanced = false;
    if (f >= 0) {
      if (v < 0) {
        v = f;
        advanced = true;
      }
    } else if (v + 1 < alphabet_[depth]) {
      ++v;
      advanced = true;
    }
    if (!advanced) {
      v = -1;
      if (depth == 0) return finish(SearchStatus::Exhausted);
      --depth;
      continue;
    }
    if (++nodes > node_cap) return finish(SearchStatus::BudgetExceeded);
    if (!consistent(depth)) continue;
    if (depth + 1 == n) {
      if (!visit(assign)) return finish(SearchStatus::Found);
      continue;
    }
    ++depth;
  }
}

SearchResult ConstraintSystem::find(const Pattern& fixed, std::uint64_t node_cap) const {
  SearchResult r;
  std::vector<int> found;
  r.status = enumerate(
      fixed,
      [&](const std::vector<int>& a) {
        found = a;
        return false;
      },
      node_cap, &r.nodes);
  if (r.status == SearchStatus::Found) r.solution = to_pattern(found);
  return r;
}

std::vector<Point> padded_domain(const SftSpec& spec, const Shape& dom, int R) {
  const Group& G = spec.group;
  const Shape ball = space_ball(G, R, spec.levels);
  std::vector<Point> centers;
  for (const Point& d : dom) centers.emplace_back(d.c);
  centers.push_back(G.identity());
  centers = make_shape(std::move(centers));
  std::vector<Point> all;
  for (const Point& c : centers)
    for (const Point& b : ball) all.push_back(act(G, c, b));
  all = make_shape(std::move(all));
  std::vector<std::pair<int, Point>> rest;
  for (const Point& x : all) {
    if (shape_contains(dom, x)) continue;
    int best = std::numeric_limits<int>::max();
    for (const Point& c : centers) best = std::min(best, G.distance(c, Point(x.c)));
    rest.emplace_back(best, x);
  }
  std::sort(rest.begin(), rest.end());
  std::vector<Point> order(dom.begin(), dom.end());
  for (auto& [d, x] : rest) order.push_back(x);
  return order;
}

ExtensionChecker::ExtensionChecker(const SftSpec& spec, const Shape& dom, int R)
    : radius_(R), system_(spec, padded_domain(spec, dom, R)) {}

SearchResult ExtensionChecker::check(const Pattern& p, std::uint64_t node_cap) const { return system_.find(p, node_cap); }

SearchResult extendable_to_radius(const SftSpec& spec, const Pattern& p, int R, std::uint64_t node_cap) {
  return ExtensionChecker(spec, p.domain(), R).check(p, node_cap);
}

}  // namespace avo
