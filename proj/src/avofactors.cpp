#include "avo/avofactors.hpp"

#include <stdexcept>

namespace avo {

std::size_t LocalMap::index_of(const std::vector<int>& local) const {
  std::size_t idx = 0, mul = 1;
  for (int v : local) {
    idx += static_cast<std::size_t>(v) * mul;
    mul *= static_cast<std::size_t>(source_alphabet);
  }
  return idx;
}

void LocalMap::validate() const {
  if (source_alphabet < 1) throw std::invalid_argument("local map needs a source alphabet");
  std::size_t expected = 1;
  for (std::size_t i = 0; i < neighborhood.size(); ++i) expected *= static_cast<std::size_t>(source_alphabet);
  if (rule.size() != expected)
    throw std::invalid_argument("local rule has " + std::to_string(rule.size()) + " entries, expected " +
                                std::to_string(expected));
  for (int v : rule)
    if (v < 0 || v >= static_cast<int>(target_alphabet.size()))
      throw std::invalid_argument("local rule produces a symbol outside the target alphabet");
}

LocalMap LocalMap::from_function(Shape neighborhood, int source_alphabet, std::vector<std::string> target_alphabet,
                                 const std::function<int(const std::vector<int>&)>& f) {
  LocalMap m;
  m.neighborhood = std::move(neighborhood);
  m.source_alphabet = source_alphabet;
  m.target_alphabet = std::move(target_alphabet);
  std::vector<int> cur(m.neighborhood.size(), 0);
  for (;;) {
    m.rule.push_back(f(cur));
    std::size_t i = 0;
    while (i < cur.size() && ++cur[i] == source_alphabet) cur[i++] = 0;
    if (i == cur.size()) break;
  }
  m.validate();
  return m;
}

SftSpec build_graph_sft(const SftSpec& x, const LocalMap& map) {
  if (x.levels != 1) throw std::invalid_argument("the source of a local map must be a one-level spec");
  if (map.source_alphabet != static_cast<int>(x.alphabet.size()))
    throw std::invalid_argument("local map source alphabet does not match the spec");
  map.validate();
  const Group& G = x.group;
  SftSpec rel;
  rel.group = G;
  rel.levels = 2;
  rel.alphabet = x.alphabet;
  rel.upper_alphabet = map.target_alphabet;
  rel.name = x.name.empty() ? "graph" : x.name + "-graph";
  for (const auto& f : x.forbidden) {
    Pattern p;
    for (const auto& [pt, s] : f.cells) p.cells.emplace_back(Point(pt.c, 1), s);
    rel.forbidden.push_back(std::move(p));
  }
  const Point top(G.identity().c, 2);
  const int B = static_cast<int>(map.target_alphabet.size());
  std::vector<int> cur(map.neighborhood.size(), 0);
  for (;;) {
    const int image = map.apply(cur);
    for (int b = 0; b < B; ++b) {
      if (b == image) continue;
      std::vector<std::pair<Point, int>> cells;
      for (std::size_t i = 0; i < cur.size(); ++i) cells.emplace_back(Point(map.neighborhood[i].c, 1), cur[i]);
      cells.emplace_back(top, b);
      rel.forbidden.push_back(Pattern::from_cells(std::move(cells)));
    }
    std::size_t i = 0;
    while (i < cur.size() && ++cur[i] == map.source_alphabet) cur[i++] = 0;
    if (i == cur.size()) break;
  }
  rel.forbidden = normalize_forbidden(G, rel.forbidden);
  return rel;
}

FindResult factor_certificate(const SftSpec& relation, const Budget& budget) {
  return find_certificate(relation, Family::Cornered2Level, budget);
}

SftSpec image_forbidden(const Certificate& cert) {
  SftSpec y;
  y.group = cert.q.group;
  y.alphabet = cert.q.upper_alphabet;
  y.name = cert.original.name.empty() ? "image" : cert.original.name + "-image";
  for (const auto& f : cert.q.forbidden) {
    bool upper = true;
    for (const auto& [pt, s] : f.cells) upper = upper && pt.level == 2;
    if (!upper) continue;
    Pattern p;
    for (const auto& [pt, s] : f.cells) p.cells.emplace_back(Point(pt.c), s);
    y.forbidden.push_back(std::move(p));
  }
  y.forbidden = normalize_forbidden(y.group, y.forbidden);
  return y;
}

Pattern apply_map(const Group& G, const LocalMap& map, const Pattern& x, const Shape& target) {
  Pattern out;
  std::vector<int> local(map.neighborhood.size());
  for (const Point& g : target) {
    for (std::size_t i = 0; i < map.neighborhood.size(); ++i) {
      auto v = x.at(act(G, g, map.neighborhood[i]));
      if (!v) throw std::invalid_argument("pattern does not cover the neighborhood of " + to_string(g));
      local[i] = *v;
    }
    out.cells.emplace_back(g, map.apply(local));
  }
  return out;
}

}  // namespace avo
