#pragma once

// Independent reference computations for the tests. They share only the
// group arithmetic and the plain Pattern/SftSpec containers with the library.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <set>
#include <vector>

#include "avo/group.hpp"
#include "avo/patterns.hpp"

namespace oracle {

using avo::Pattern;
using avo::Point;
using avo::SftSpec;

// A finite region with every forbidden placement that fits inside it.
struct Region {
  std::vector<Point> cells;
  std::map<Point, int> index;
  // placements[i]: (cell, symbol) lists whose largest cell index is i
  std::vector<std::vector<std::vector<std::pair<int, int>>>> placements;

  Region(const SftSpec& spec, std::vector<Point> order) : cells(std::move(order)) {
    const auto& G = spec.group;
    for (std::size_t i = 0; i < cells.size(); ++i) index[cells[i]] = static_cast<int>(i);
    placements.resize(cells.size());
    std::set<std::vector<std::pair<int, int>>> seen;
    for (const auto& f : spec.forbidden) {
      if (f.cells.empty()) continue;
      for (const auto& x : cells)
        for (const auto& [c0, s0] : f.cells) {
          if (c0.level != x.level) continue;
          const Point g = G.compose(Point(x.c), G.invert(Point(c0.c)));
          std::vector<std::pair<int, int>> pl;
          bool inside = true;
          for (const auto& [c, s] : f.cells) {
            Point y = G.compose(g, Point(c.c));
            y.level = c.level;
            auto it = index.find(y);
            if (it == index.end()) {
              inside = false;
              break;
            }
            pl.emplace_back(it->second, s);
          }
          if (!inside) continue;
          std::sort(pl.begin(), pl.end());
          if (!seen.insert(pl).second) continue;
          placements[static_cast<std::size_t>(pl.back().first)].push_back(pl);
        }
    }
  }

  bool ok_at(const std::vector<int>& a, std::size_t i) const {
    for (const auto& pl : placements[i]) {
      bool hit = true;
      for (const auto& [c, s] : pl)
        if (a[static_cast<std::size_t>(c)] != s) {
          hit = false;
          break;
        }
      if (hit) return false;
    }
    return true;
  }

  // Plain recursive backtracking from cell `from` on; a[0, from) is fixed.
  bool extend(std::vector<int>& a, std::size_t from, const SftSpec& spec) const {
    if (from == cells.size()) return true;
    const int n = spec.alphabet_size(cells[from]);
    for (int s = 0; s < n; ++s) {
      a[from] = s;
      if (ok_at(a, from) && extend(a, from + 1, spec)) return true;
    }
    return false;
  }
};

// D·B_m in order: D first, then by distance to D.
inline std::vector<Point> padded(const SftSpec& spec, const std::vector<Point>& D, int m) {
  const auto& G = spec.group;
  std::vector<Point> out(D.begin(), D.end());
  std::set<Point> have(D.begin(), D.end());
  for (int r = 1; r <= m; ++r) {
    for (const auto& d : D)
      for (const auto& b : G.ball(r).members) {
        if (G.norm(b) != r) continue;
        for (int lvl : spec.levels == 2 ? std::vector<int>{1, 2} : std::vector<int>{0}) {
          Point y = G.compose(Point(d.c), b);
          y.level = lvl;
          if (have.insert(y).second) out.push_back(y);
        }
      }
  }
  return out;
}

// Patterns on D extending to a locally valid pattern on D·B_m.
inline std::set<Pattern> margin_language(const SftSpec& spec, const std::vector<Point>& D, int m) {
  Region reg(spec, padded(spec, D, m));
  std::set<Pattern> out;
  std::vector<int> a(reg.cells.size(), 0);
  // enumerate D by the same backtracking, checking placements as cells fill
  std::vector<int> cur(D.size(), 0);
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == D.size()) {
      if (reg.extend(a, D.size(), spec)) {
        std::vector<std::pair<Point, int>> cells;
        for (std::size_t k = 0; k < D.size(); ++k) cells.emplace_back(D[k], a[k]);
        out.insert(Pattern::from_cells(std::move(cells)));
      }
      return;
    }
    for (int s = 0; s < spec.alphabet_size(D[i]); ++s) {
      a[i] = s;
      if (reg.ok_at(a, i)) self(self, i + 1);
    }
  };
  rec(rec, 0);
  return out;
}

// Margin stabilization: the first margin language equal to its successor.
inline std::set<Pattern> stabilized_language(const SftSpec& spec, const std::vector<Point>& D, int max_margin = 4,
                                             int* used = nullptr) {
  auto prev = margin_language(spec, D, 0);
  for (int m = 1; m <= max_margin; ++m) {
    auto next = margin_language(spec, D, m);
    if (next == prev) {
      if (used) *used = m - 1;
      return prev;
    }
    prev = std::move(next);
  }
  if (used) *used = max_margin;
  return prev;
}

inline std::set<Pattern> restrict_all(const std::set<Pattern>& ps, const std::vector<Point>& D) {
  std::set<Pattern> out;
  for (const auto& p : ps) out.insert(p.restrict_to(D));
  return out;
}

// Exact language of a Z-SFT on D: a word extends bi-infinitely iff it extends
// by more than |A|^w symbols on both sides (w the span of the forbidden
// patterns), since such an extension revisits a length-w window.
inline std::set<Pattern> z_exact_language(const SftSpec& spec, const std::vector<Point>& D) {
  int w = 1;
  for (const auto& f : spec.forbidden)
    if (!f.cells.empty()) w = std::max(w, f.cells.back().first.c[0] - f.cells.front().first.c[0]);
  int m = 1;
  for (int i = 0; i < w; ++i) m *= static_cast<int>(spec.alphabet.size());
  return margin_language(spec, D, m + 1);
}

// Random Z-spec: alphabet 1..3, forbidden patterns inside [0, 2].
// A positive `alphabet` fixes the alphabet size.
inline SftSpec random_z_spec(std::mt19937& rng, int alphabet = 0) {
  SftSpec s;
  s.group = avo::Group::from_key("Z");
  const int a = alphabet > 0 ? alphabet : std::uniform_int_distribution<int>(1, 3)(rng);
  for (int i = 0; i < a; ++i) s.alphabet.push_back(std::to_string(i));
  const int nf = std::uniform_int_distribution<int>(0, 5)(rng);
  for (int f = 0; f < nf; ++f) {
    std::vector<std::pair<Point, int>> cells{{Point({0}), std::uniform_int_distribution<int>(0, a - 1)(rng)}};
    for (int x = 1; x <= 2; ++x)
      if (rng() % 2) cells.emplace_back(Point({x}), std::uniform_int_distribution<int>(0, a - 1)(rng));
    s.forbidden.push_back(Pattern::from_cells(std::move(cells)));
  }
  return s;
}

}  // namespace oracle
