#include "avo/corpus.hpp"

#include <stdexcept>

namespace avo {

Pattern pattern_of(std::initializer_list<std::pair<std::vector<int>, int>> cells, int level) {
  std::vector<std::pair<Point, int>> out;
  for (const auto& [c, s] : cells) out.emplace_back(Point(c, level), s);
  return Pattern::from_cells(std::move(out));
}

SftSpec make_spec(const std::string& group, std::vector<std::string> alphabet, std::vector<Pattern> forbidden,
                  std::string name) {
  SftSpec s;
  s.group = Group::from_key(group);
  s.alphabet = std::move(alphabet);
  s.forbidden = normalize_forbidden(s.group, forbidden);
  s.name = std::move(name);
  s.validate();
  return s;
}

namespace {

// Forbid equal-nonzero adjacency along both axes of Z^2 for the listed pairs.
std::vector<Pattern> adjacency(const std::vector<std::pair<int, int>>& pairs) {
  std::vector<Pattern> out;
  for (auto [a, b] : pairs) {
    out.push_back(pattern_of({{{0, 0}, a}, {{1, 0}, b}}));
    out.push_back(pattern_of({{{0, 0}, a}, {{0, 1}, b}}));
  }
  return out;
}

int spacetime_rule(int a, int b) {
  if (a == 2) return 2;
  return (a + b) % 2;
}

}  // namespace

std::vector<std::string> corpus_names() {
  return {"goldenmean",    "ledrappier",           "hardsquare", "hardsquare-safe", "spacetimeF", "f2-goldenmean",
          "fullshift-conjugate-nonavo", "f2-geodesic-counterexample"};
}

CorpusEntry builtin_example(const std::string& name) {
  CorpusEntry e;
  e.name = name;
  if (name == "goldenmean") {
    e.description = "Z, no two adjacent 1s";
    e.spec = make_spec("Z", {"0", "1"}, {pattern_of({{{0}, 1}, {{1}, 1}})}, name);
  } else if (name == "ledrappier") {
    e.description = "Z^2, x(v) + x(v+(1,0)) + x(v+(0,1)) = 0 mod 2";
    std::vector<Pattern> f;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int c = 0; c < 2; ++c)
          if ((a + b + c) % 2) f.push_back(pattern_of({{{0, 0}, a}, {{1, 0}, b}, {{0, 1}, c}}));
    e.spec = make_spec("Z^2", {"0", "1"}, f, name);
  } else if (name == "hardsquare") {
    e.description = "Z^2, no two adjacent 1s";
    e.spec = make_spec("Z^2", {"0", "1"}, adjacency({{1, 1}}), name);
  } else if (name == "hardsquare-safe") {
    e.description = "Z^2 over {0,1,2}, nonzero symbols never adjacent; 0 is safe";
    e.spec = make_spec("Z^2", {"0", "1", "2"}, adjacency({{1, 1}, {1, 2}, {2, 1}, {2, 2}}), name);
  } else if (name == "spacetimeF") {
    e.description = "Z^2 spacetime of F(2,a)=2, F(a,b)=a+b mod 2 otherwise; row y+1 is the image of row y";
    std::vector<Pattern> f;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        for (int c = 0; c < 3; ++c)
          if (c != spacetime_rule(a, b)) f.push_back(pattern_of({{{0, 0}, a}, {{1, 0}, b}, {{0, 1}, c}}));
    e.spec = make_spec("Z^2", {"0", "1", "2"}, f, name);
  } else if (name == "f2-goldenmean") {
    e.description = "F2, no two 1s joined by an a- or b-edge";
    e.spec = make_spec("F2", {"0", "1"}, {pattern_of({{{}, 1}, {{1}, 1}}), pattern_of({{{}, 1}, {{2}, 1}})}, name);
  } else if (name == "fullshift-conjugate-nonavo") {
    e.description =
        "Z^2 binary full shift on track s (symbol s+2t, t=0); the map writes t(v) = s(v-(0,1)) + s(v+(1,-1)) mod 2";
    e.spec = make_spec("Z^2", {"0", "1", "2", "3"}, {pattern_of({{{0, 0}, 2}}), pattern_of({{{0, 0}, 3}})}, name);
    e.map = LocalMap::from_function(make_shape({Point({0, 0}), Point({0, -1}), Point({1, -1})}), 4, {"0", "1", "2", "3"},
                                    [](const std::vector<int>& w) {
                                      // neighborhood order: (0,-1), (0,0), (1,-1)
                                      const int s = w[1] % 2;
                                      const int t = (w[0] % 2 + w[2] % 2) % 2;
                                      return s + 2 * t;
                                    });
  } else if (name == "f2-geodesic-counterexample") {
    e.description = "F2 over Z2^2 (symbol s+2t): t(g) = s(gb) + s(gab) mod 2";
    std::vector<Pattern> f;
    for (int x3 = 0; x3 < 4; ++x3)
      for (int x1 = 0; x1 < 4; ++x1)
        for (int x2 = 0; x2 < 4; ++x2)
          if (x3 / 2 != (x1 % 2 + x2 % 2) % 2) f.push_back(pattern_of({{{}, x3}, {{2}, x1}, {{1, 2}, x2}}));
    e.spec = make_spec("F2", {"00", "10", "01", "11"}, f, name);
  } else {
    std::string known;
    for (const auto& n : corpus_names()) known += (known.empty() ? "" : ", ") + n;
    throw std::invalid_argument("unknown example '" + name + "'; available: " + known);
  }
  return e;
}

}  // namespace avo
