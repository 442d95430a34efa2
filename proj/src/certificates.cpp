#include "avo/certificates.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <set>
#include <stdexcept>

#include "avo/search.hpp"

namespace avo {

std::string family_name(Family f) {
  switch (f) {
    case Family::InductiveIntervals:
      return "ii";
    case Family::AllSubsets:
      return "all-subsets";
    case Family::TreeConvexExtensions:
      return "tree-convex";
    case Family::Cornered2Level:
      return "cornered";
  }
  return "?";
}

Family parse_family(const std::string& name) {
  if (name == "ii") return Family::InductiveIntervals;
  if (name == "all-subsets") return Family::AllSubsets;
  if (name == "tree-convex") return Family::TreeConvexExtensions;
  if (name == "cornered") return Family::Cornered2Level;
  throw std::invalid_argument("unknown family '" + name + "' (expected ii, all-subsets, tree-convex or cornered)");
}

std::vector<FamilyPrefix> family_prefixes(const SftSpec& spec, Family f, int R, int max_cells) {
  const Group& G = spec.group;
  const Point e = G.identity();
  std::vector<FamilyPrefix> out;
  if ((f == Family::Cornered2Level) != (spec.levels == 2))
    throw UnsupportedOperation("the cornered family is used exactly for two-level relations");
  switch (f) {
    case Family::InductiveIntervals:
      for (const Shape& s : ii_prefixes(G, R)) out.push_back({s, e});
      break;
    case Family::AllSubsets:
      for (Shape& s : all_subset_prefixes(G, R, max_cells)) out.push_back({std::move(s), e});
      break;
    case Family::TreeConvexExtensions:
      for (Shape& s : tree_convex_extension_prefixes(G, R)) out.push_back({std::move(s), e});
      break;
    case Family::Cornered2Level:
      for (auto& c : cornered_prefixes(G, R)) out.push_back({std::move(c.shape), std::move(c.corner)});
      break;
  }
  return out;
}

namespace {

// Placements of forbidden patterns that cover the corner and otherwise lie in M.
struct CornerConstraint {
  int corner_symbol;
  std::vector<std::pair<int, int>> cells;  // (index into M, symbol)
};

std::vector<CornerConstraint> corner_constraints(const SftSpec& q, const Shape& M, const Point& corner) {
  const Group& G = q.group;
  std::vector<CornerConstraint> out;
  for (const Pattern& f : q.forbidden) {
    for (const auto& [pt, sym] : f.cells) {
      if (pt.level != corner.level) continue;
      const Point g = G.compose(Point(corner.c), G.invert(Point(pt.c)));
      CornerConstraint c{sym, {}};
      bool inside = true;
      for (const auto& [other, s2] : f.cells) {
        if (other == pt) continue;
        const Point where = act(G, g, other);
        auto it = std::lower_bound(M.begin(), M.end(), where);
        if (it == M.end() || *it != where) {
          inside = false;
          break;
        }
        c.cells.emplace_back(static_cast<int>(it - M.begin()), s2);
      }
      if (inside) out.push_back(std::move(c));
    }
  }
  return out;
}

}  // namespace

UniformResult verify_uniform(const SftSpec& q, Family f, int R, const Budget& budget) {
  UniformResult res;
  const int diam = forbidden_diameter(q);
  if (R < diam) {
    res.reason = "radius " + std::to_string(R) + " is below the forbidden-pattern diameter " + std::to_string(diam);
    return res;
  }
  std::vector<FamilyPrefix> prefixes;
  try {
    prefixes = family_prefixes(q, f, R);
  } catch (const ResourceError& e) {
    res.reason = e.what();
    return res;
  }
  for (const auto& pre : prefixes) {
    const Shape& M = pre.shape;
    ConstraintSystem sys(q, std::vector<Point>(M.begin(), M.end()));
    const auto cons = corner_constraints(q, M, pre.corner);
    const int A = q.alphabet_size(pre.corner);
    std::size_t count = 0;
    bool failed = false, capped = false;
    std::vector<int> bad;
    const std::uint64_t node_cap = static_cast<std::uint64_t>(budget.pattern_cap) * (M.size() + 1) * 4 + 1000;
    auto status = sys.enumerate(
        Pattern{},
        [&](const std::vector<int>& x) {
          if (++count > budget.pattern_cap) {
            capped = true;
            return false;
          }
          for (int a = 0; a < A; ++a) {
            bool ok = true;
            for (const auto& c : cons) {
              if (c.corner_symbol != a) continue;
              bool all = true;
              for (const auto& [idx, s] : c.cells)
                if (x[static_cast<std::size_t>(idx)] != s) {
                  all = false;
                  break;
                }
              if (all) {
                ok = false;
                break;
              }
            }
            if (ok) return true;
          }
          failed = true;
          bad = x;
          return false;
        },
        node_cap);
    if (failed) {
      res.status = UniformResult::Status::FailsAt;
      res.failing_prefix = pre;
      res.failing_pattern = sys.to_pattern(bad);
      res.reason = "pattern on " + to_string(M) + " has no valid symbol at " + to_string(pre.corner);
      return res;
    }
    if (capped || status == SearchStatus::BudgetExceeded) {
      res.reason = "pattern enumeration on " + to_string(M) + " exceeded the budget";
      return res;
    }
    res.transcript.push_back({M, pre.corner, count});
  }
  res.status = UniformResult::Status::Verified;
  return res;
}

namespace {

std::unique_ptr<LanguageOracle> default_exact_oracle(const SftSpec& s) {
  if (s.group.key() == "Z" && s.levels == 1) return std::make_unique<TransferOracle>(s);
  return nullptr;
}

bool in_language(const LanguageOracle& oracle, const Pattern& p) {
  const auto lang = oracle.language(p.domain());
  return lang.exact && lang.complete && std::binary_search(lang.patterns.begin(), lang.patterns.end(), p);
}

}  // namespace

EquivalenceResult verify_equivalence(const SftSpec& p, const SftSpec& q, const Budget& budget,
                                     const LanguageOracle* exact_p, const LanguageOracle* exact_q) {
  if (!(p.group == q.group) || p.alphabet != q.alphabet || p.levels != q.levels || p.upper_alphabet != q.upper_alphabet)
    throw std::invalid_argument("equivalence needs the same group and alphabet");
  EquivalenceResult res;
  std::vector<const Pattern*> open_q, open_p;  // not refuted on the other side
  for (const auto& f : q.forbidden) {
    auto v = refute_global_validity(p, f, budget);
    if (v.refuted())
      res.forward_radius = std::max(res.forward_radius, v.radius);
    else
      open_q.push_back(&f);
  }
  for (const auto& f : p.forbidden) {
    auto v = refute_global_validity(q, f, budget);
    if (v.refuted())
      res.backward_radius = std::max(res.backward_radius, v.radius);
    else
      open_p.push_back(&f);
  }
  if (open_q.empty() && open_p.empty()) {
    res.status = EquivalenceResult::Status::Equivalent;
    return res;
  }
  auto own_p = exact_p ? nullptr : default_exact_oracle(p);
  auto own_q = exact_q ? nullptr : default_exact_oracle(q);
  if (!exact_p) exact_p = own_p.get();
  if (!exact_q) exact_q = own_q.get();
  if (exact_p)
    for (const Pattern* f : open_q)
      if (in_language(*exact_p, *f)) {
        res.status = EquivalenceResult::Status::NotEquivalent;
        res.witness = *f;
        res.witness_valid_in_p = true;
        return res;
      }
  if (exact_q)
    for (const Pattern* f : open_p)
      if (in_language(*exact_q, *f)) {
        res.status = EquivalenceResult::Status::NotEquivalent;
        res.witness = *f;
        res.witness_valid_in_p = false;
        return res;
      }
  res.reason = std::to_string(open_q.size() + open_p.size()) + " forbidden patterns neither refuted nor shown valid";
  return res;
}

namespace {

std::string fnv1a_hex(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace

std::string certificate_digest(const Certificate& c) {
  std::string s = family_name(c.family) + "|" + std::to_string(c.radius) + "|" + c.q.group.key() + "|";
  for (const auto& f : c.q.forbidden) s += to_string(c.q, f) + ";";
  s += "|";
  for (const auto& t : c.transcript) s += to_string(t.shape) + "@" + to_string(t.corner) + "#" + std::to_string(t.patterns) + ";";
  return fnv1a_hex(s);
}

namespace {

SftSpec with_forbidden(const SftSpec& base, std::vector<Pattern> forbidden) {
  SftSpec s = base;
  s.forbidden = normalize_forbidden(base.group, forbidden);
  return s;
}

// Shapes within the (space) ball whose least point has group part e, by size.
std::vector<Shape> candidate_shapes(const SftSpec& spec, int r, int max_cells) {
  const Group& G = spec.group;
  const Shape ball = space_ball(G, r, spec.levels);
  std::vector<Shape> out;
  for (const Point& start : ball) {
    if (!G.is_identity(Point(start.c))) continue;
    std::vector<Point> later;
    for (const Point& p : ball)
      if (start < p) later.push_back(p);
    Shape cur{start};
    std::function<void(std::size_t)> rec = [&](std::size_t from) {
      out.push_back(cur);
      if (static_cast<int>(cur.size()) >= max_cells) return;
      for (std::size_t i = from; i < later.size(); ++i) {
        cur.push_back(later[i]);
        rec(i + 1);
        cur.pop_back();
      }
    };
    rec(0);
  }
  for (auto& s : out) s = make_shape(std::move(s));
  std::stable_sort(out.begin(), out.end(), [](const Shape& a, const Shape& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

}  // namespace

void for_each_candidate(const SftSpec& spec, const Budget& budget, const std::vector<SftSpec>& injected,
                        const std::function<bool(const SftSpec&)>& visit) {
  std::set<std::vector<Pattern>> seen;
  auto push = [&](const SftSpec& s) { return !seen.insert(s.forbidden).second || visit(s); };
  for (const auto& s : injected)
    if (!push(with_forbidden(s, s.forbidden))) return;
  const SftSpec base = with_forbidden(spec, spec.forbidden);
  if (!push(base)) return;
  if (refute_global_validity(base, Pattern{}, budget).refuted()) {
    push(with_forbidden(base, {Pattern{}}));
    return;
  }
  std::vector<Pattern> q = base.forbidden;
  for (int r = 1; r <= budget.candidate_radius_cap; ++r) {
    for (const Shape& S : candidate_shapes(base, r, budget.candidate_max_cells)) {
      const SftSpec current = with_forbidden(base, q);
      const auto valid = locally_valid_patterns(current, S, budget.pattern_cap, budget.node_cap);
      for (const auto& p : valid.patterns)
        if (refute_global_validity(base, p, budget).refuted()) q.push_back(canonical_translate(base.group, p));
    }
    if (!push(with_forbidden(base, q))) return;
  }
}

std::vector<SftSpec> enumerate_candidates(const SftSpec& spec, const Budget& budget, const std::vector<SftSpec>& injected) {
  std::vector<SftSpec> out;
  for_each_candidate(spec, budget, injected, [&](const SftSpec& s) {
    out.push_back(s);
    return true;
  });
  return out;
}

FindResult find_certificate(const SftSpec& spec, Family f, const Budget& budget, const std::vector<SftSpec>& injected) {
  FindResult res;
  family_prefixes(spec, f, 0);  // rejects family/group mismatches up front
  std::size_t ci = 0;
  for_each_candidate(spec, budget, injected, [&](const SftSpec& q) {
    const std::string tag = "candidate " + std::to_string(ci) + " (" + std::to_string(q.forbidden.size()) + " patterns)";
    const auto eq = verify_equivalence(spec, q, budget);
    if (eq.status != EquivalenceResult::Status::Equivalent) {
      res.log.push_back(tag + ": equivalence not established");
      ++ci;
      return true;
    }
    for (int R = forbidden_diameter(q); R <= budget.verify_radius_cap; ++R) {
      auto u = verify_uniform(q, f, R, budget);
      if (u.status == UniformResult::Status::Verified) {
        Certificate c;
        c.original = spec;
        c.q = q;
        c.family = f;
        c.radius = R;
        c.transcript = std::move(u.transcript);
        c.forward_radius = eq.forward_radius;
        c.backward_radius = eq.backward_radius;
        res.log.push_back(tag + ": verified at R=" + std::to_string(R));
        res.certificate = std::move(c);
        return false;
      }
      res.log.push_back(tag + ": R=" + std::to_string(R) + " " +
                        (u.status == UniformResult::Status::FailsAt ? "fails: " : "unknown: ") + u.reason);
    }
    ++ci;
    return true;
  });
  if (res.certificate) return res;
  res.reason = "no candidate verified within " + budget.describe();
  return res;
}

RecheckResult reverify(const Certificate& c, const Budget& budget) {
  RecheckResult r;
  try {
    c.q.validate();
    if (!(c.q.group == c.original.group)) {
      r.reason = "certificate group differs from the original spec";
      return r;
    }
    if (c.radius < forbidden_diameter(c.q)) {
      r.reason = "radius below the forbidden-pattern diameter";
      return r;
    }
    Budget b = budget;
    std::size_t most = 0;
    for (const auto& t : c.transcript) most = std::max(most, t.patterns);
    b.pattern_cap = std::max(b.pattern_cap, most);
    auto u = verify_uniform(c.q, c.family, c.radius, b);
    if (u.status != UniformResult::Status::Verified) {
      r.reason = "uniform verification: " + u.reason;
      return r;
    }
    if (u.transcript.size() != c.transcript.size()) {
      r.reason = "transcript length differs";
      return r;
    }
    for (std::size_t i = 0; i < u.transcript.size(); ++i)
      if (!(u.transcript[i] == c.transcript[i])) {
        r.reason = "transcript entry " + std::to_string(i) + " differs";
        return r;
      }
    auto eq = verify_equivalence(c.original, c.q, b);
    if (eq.status != EquivalenceResult::Status::Equivalent) {
      r.reason = "equivalence with the original spec not re-established";
      return r;
    }
  } catch (const std::exception& e) {
    r.reason = e.what();
    return r;
  }
  r.ok = true;
  return r;
}

}  // namespace avo
