#include "avo/patterns.hpp"

#include <algorithm>
#include <stdexcept>

namespace avo {

Pattern Pattern::from_cells(std::vector<std::pair<Point, int>> cells) {
  std::sort(cells.begin(), cells.end());
  for (std::size_t i = 1; i < cells.size(); ++i)
    if (cells[i].first == cells[i - 1].first)
      throw std::invalid_argument("pattern assigns two symbols to " + to_string(cells[i].first));
  Pattern p;
  p.cells = std::move(cells);
  return p;
}

Shape Pattern::domain() const {
  Shape s;
  s.reserve(cells.size());
  for (const auto& [pt, sym] : cells) s.push_back(pt);
  return s;
}

std::optional<int> Pattern::at(const Point& p) const {
  auto it = std::lower_bound(cells.begin(), cells.end(), p, [](const auto& c, const Point& q) { return c.first < q; });
  if (it != cells.end() && it->first == p) return it->second;
  return std::nullopt;
}

Pattern Pattern::restrict_to(const Shape& s) const {
  Pattern out;
  for (const auto& c : cells)
    if (shape_contains(s, c.first)) out.cells.push_back(c);
  return out;
}

Pattern Pattern::with(const Point& p, int symbol) const {
  Pattern out = *this;
  auto it = std::lower_bound(out.cells.begin(), out.cells.end(), p, [](const auto& c, const Point& q) { return c.first < q; });
  if (it != out.cells.end() && it->first == p)
    it->second = symbol;
  else
    out.cells.insert(it, {p, symbol});
  return out;
}

Point act(const Group& G, const Point& g, const Point& p) {
  Point r = G.compose(Point(g.c), Point(p.c));
  r.level = p.level;
  return r;
}

Pattern translate(const Group& G, const Point& g, const Pattern& p) {
  std::vector<std::pair<Point, int>> cells;
  cells.reserve(p.cells.size());
  for (const auto& [pt, sym] : p.cells) cells.emplace_back(act(G, g, pt), sym);
  std::sort(cells.begin(), cells.end());
  Pattern out;
  out.cells = std::move(cells);
  return out;
}

Pattern canonical_translate(const Group& G, const Pattern& p) {
  if (p.empty()) return p;
  return translate(G, G.invert(Point(p.cells.front().first.c)), p);
}

bool contained_in(const Pattern& a, const Pattern& b) {
  for (const auto& [pt, sym] : a.cells) {
    auto v = b.at(pt);
    if (!v || *v != sym) return false;
  }
  return true;
}

std::optional<Pattern> merge(const Pattern& a, const Pattern& b) {
  Pattern out = a;
  for (const auto& [pt, sym] : b.cells) {
    auto v = a.at(pt);
    if (v && *v != sym) return std::nullopt;
    if (!v) out.cells.emplace_back(pt, sym);
  }
  std::sort(out.cells.begin(), out.cells.end());
  return out;
}

void SftSpec::validate() const {
  if (levels != 1 && levels != 2) throw std::invalid_argument("levels must be 1 or 2");
  if (alphabet.empty()) throw std::invalid_argument("alphabet must not be empty");
  if (levels == 2 && upper_alphabet.empty()) throw std::invalid_argument("relation needs a level-2 alphabet");
  for (std::size_t i = 0; i < forbidden.size(); ++i)
    for (const auto& [pt, sym] : forbidden[i].cells) {
      group.validate(Point(pt.c));
      const int lo = levels == 2 ? 1 : 0, hi = levels == 2 ? 2 : 0;
      if (pt.level < lo || pt.level > hi)
        throw std::invalid_argument("forbidden pattern " + std::to_string(i) + " has a cell at level " +
                                    std::to_string(pt.level));
      if (sym < 0 || sym >= alphabet_size(pt))
        throw std::invalid_argument("forbidden pattern " + std::to_string(i) + " uses symbol index " +
                                    std::to_string(sym) + " outside the alphabet");
    }
}

bool SftSpec::forbids_everything() const {
  return std::any_of(forbidden.begin(), forbidden.end(), [](const Pattern& p) { return p.empty(); });
}

bool contains_translate(const Group& G, const Pattern& small, const Pattern& big) {
  if (small.empty()) return true;
  const Point& f0 = small.cells.front().first;
  const Point f0inv = G.invert(Point(f0.c));
  for (const auto& [pt, sym] : big.cells) {
    if (pt.level != f0.level || sym != small.cells.front().second) continue;
    const Point g = G.compose(Point(pt.c), f0inv);
    bool ok = true;
    for (const auto& [q, s] : small.cells) {
      auto v = big.at(act(G, g, q));
      if (!v || *v != s) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

std::vector<Pattern> normalize_forbidden(const Group& G, const std::vector<Pattern>& forbidden) {
  std::vector<Pattern> canon;
  for (const auto& f : forbidden) canon.push_back(canonical_translate(G, f));
  std::sort(canon.begin(), canon.end(), [](const Pattern& a, const Pattern& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  canon.erase(std::unique(canon.begin(), canon.end()), canon.end());
  std::vector<Pattern> kept;
  for (const auto& f : canon) {
    bool redundant = false;
    for (const auto& k : kept)
      if (contains_translate(G, k, f)) {
        redundant = true;
        break;
      }
    if (!redundant) kept.push_back(f);
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

int window_size(const SftSpec& spec) {
  int w = 0;
  for (const auto& f : spec.forbidden)
    for (const auto& [pt, sym] : canonical_translate(spec.group, f).cells) w = std::max(w, spec.group.norm(pt));
  return w;
}

int forbidden_diameter(const SftSpec& spec) {
  int d = 0;
  for (const auto& f : spec.forbidden)
    for (std::size_t i = 0; i < f.cells.size(); ++i)
      for (std::size_t j = i + 1; j < f.cells.size(); ++j)
        d = std::max(d, spec.group.distance(f.cells[i].first, f.cells[j].first));
  return d;
}

std::vector<Occurrence> occurrences(const SftSpec& spec, const Pattern& p, std::size_t limit) {
  std::vector<Occurrence> out;
  const Group& G = spec.group;
  for (std::size_t fi = 0; fi < spec.forbidden.size(); ++fi) {
    const Pattern& f = spec.forbidden[fi];
    if (f.empty()) {
      out.push_back({fi, G.identity()});
      if (out.size() >= limit) return out;
      continue;
    }
    const Point& f0 = f.cells.front().first;
    const Point f0inv = G.invert(Point(f0.c));
    for (const auto& [pt, sym] : p.cells) {
      if (pt.level != f0.level || sym != f.cells.front().second) continue;
      const Point g = G.compose(Point(pt.c), f0inv);
      bool hit = true;
      for (const auto& [q, s] : f.cells) {
        auto v = p.at(act(G, g, q));
        if (!v || *v != s) {
          hit = false;
          break;
        }
      }
      if (hit) {
        out.push_back({fi, g});
        if (out.size() >= limit) return out;
      }
    }
  }
  return out;
}

bool locally_valid(const SftSpec& spec, const Pattern& p) { return occurrences(spec, p, 1).empty(); }

std::string to_string(const SftSpec& spec, const Pattern& p) {
  std::string out = "{";
  for (std::size_t i = 0; i < p.cells.size(); ++i) {
    const auto& [pt, sym] = p.cells[i];
    const auto& names = pt.level == 2 ? spec.upper_alphabet : spec.alphabet;
    out += (i ? ", " : "") + to_string(pt) + ":" +
           (sym >= 0 && sym < static_cast<int>(names.size()) ? names[static_cast<std::size_t>(sym)] : "?");
  }
  return out + "}";
}

}  // namespace avo
