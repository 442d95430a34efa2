#include "avo/analysis.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

#include <boost/rational.hpp>

namespace avo {

namespace {

// Follower set at e of every C-pattern, read off a language on C ∪ {e}.
std::map<Pattern, std::vector<int>> followers_by_pattern(const Shape& C, const Point& e, const LanguageResult& lang) {
  std::map<Pattern, std::vector<int>> out;
  for (const auto& p : lang.patterns) out[p.restrict_to(C)].push_back(*p.at(e));
  for (auto& [x, f] : out) std::sort(f.begin(), f.end());
  return out;
}

ValidityVerdict oracle_verdict(bool in, const LanguageResult& lang, const std::string& name) {
  ValidityVerdict v;
  v.basis = name;
  if (lang.exact && lang.complete) {
    v.kind = ValidityVerdict::Kind::Exact;
    v.valid = in;
  } else {
    // Budgeted oracles only drop patterns they refuted.
    v.kind = in ? ValidityVerdict::Kind::NotRefuted : ValidityVerdict::Kind::Refuted;
    v.radius = -1;
  }
  return v;
}

}  // namespace

AvoFinding avoradius_for_shape(const SftSpec& spec, const Shape& C, int r_max, const LanguageOracle& oracle) {
  const Group& G = spec.group;
  const Point e = G.identity();
  if (shape_contains(C, e)) throw std::invalid_argument("the identity must not lie in the shape");
  Shape D = C;
  D.push_back(e);
  D = make_shape(std::move(D));
  const auto lang = oracle.language(D);
  AvoFinding out;
  out.shape = C;
  out.r_max = r_max;
  const bool exact = lang.exact && lang.complete;
  out.status = exact ? AvoFinding::Status::Established : AvoFinding::Status::BudgetedEvidence;
  out.backing = exact ? oracle.name() : oracle.name() + " (upper approximation; follower sets may be too large)";
  const auto follow = followers_by_pattern(C, e, lang);

  for (int r = 0; r <= r_max; ++r) {
    const Shape B = truncate_shape(G, C, r);
    std::map<Pattern, std::vector<const std::pair<const Pattern, std::vector<int>>*>> groups;
    for (const auto& entry : follow) groups[entry.first.restrict_to(B)].push_back(&entry);
    const std::pair<const Pattern, std::vector<int>>* first = nullptr;
    const std::pair<const Pattern, std::vector<int>>* other = nullptr;
    for (const auto& [key, members] : groups) {
      for (const auto* m : members)
        if (m->second != members.front()->second) {
          first = members.front();
          other = m;
          break;
        }
      if (first) break;
    }
    if (!first) {
      out.radius = r;
      return out;
    }
    AvoWitness w;
    w.r = r;
    w.x = first->first;
    w.y = other->first;
    w.follow_x = first->second;
    w.follow_y = other->second;
    std::vector<int> diff;
    std::set_symmetric_difference(w.follow_x.begin(), w.follow_x.end(), w.follow_y.begin(), w.follow_y.end(),
                                  std::back_inserter(diff));
    w.separating_symbol = diff.front();
    const auto has = [](const std::vector<int>& v, int a) { return std::binary_search(v.begin(), v.end(), a); };
    w.verdict_x = oracle_verdict(has(w.follow_x, w.separating_symbol), lang, oracle.name());
    w.verdict_y = oracle_verdict(has(w.follow_y, w.separating_symbol), lang, oracle.name());
    out.failures.push_back(std::move(w));
  }
  return out;
}

std::vector<ExtensionCount> equal_extension_counts(const SftSpec& spec, const std::vector<Shape>& shapes,
                                                   const LanguageOracle& oracle) {
  const Point e = spec.group.identity();
  std::vector<ExtensionCount> out;
  for (const Shape& C : shapes) {
    if (shape_contains(C, e)) throw std::invalid_argument("the identity must not lie in the shape");
    Shape D = C;
    D.push_back(e);
    const auto lang = oracle.language(make_shape(std::move(D)));
    ExtensionCount ec;
    ec.shape = C;
    ec.exact = lang.exact && lang.complete;
    const auto follow = followers_by_pattern(C, e, lang);
    if (ec.exact) {
      std::optional<std::size_t> k;
      bool constant = true;
      for (const auto& [x, f] : follow) {
        if (!k) {
          k = f.size();
          ec.witness_a = x;
          ec.count_a = f.size();
        } else if (f.size() != *k) {
          ec.witness_b = x;
          ec.count_b = f.size();
          constant = false;
          break;
        }
      }
      if (constant) ec.constant = k.value_or(0);
    }
    out.push_back(std::move(ec));
  }
  return out;
}

bool safe_symbol_check(const SftSpec& spec, int symbol) {
  if (symbol < 0 || symbol >= static_cast<int>(spec.alphabet.size())) throw std::invalid_argument("symbol outside the alphabet");
  std::set<Shape> domains;
  for (const auto& f : spec.forbidden) domains.insert(canonical_translate(spec.group, f).domain());
  for (const Shape& D : domains) {
    const std::size_t n = D.size();
    std::vector<int> cur(n, 0);
    for (;;) {
      Pattern p;
      for (std::size_t i = 0; i < n; ++i) p.cells.emplace_back(D[i], cur[i]);
      if (locally_valid(spec, p)) {
        for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
          Pattern q = p;
          for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1U) q.cells[i].second = symbol;
          if (!locally_valid(spec, q)) return false;
        }
      }
      std::size_t i = 0;
      while (i < n && ++cur[i] == spec.alphabet_size(D[i])) cur[i++] = 0;
      if (i == n) break;
    }
  }
  return true;
}

namespace {

using Q = boost::rational<long long>;

// Whether s is a convex combination of the affinely independent points T.
bool in_simplex(const std::vector<const Point*>& T, const Point& s) {
  const std::size_t d = s.c.size(), m = T.size();
  std::vector<std::vector<Q>> a(d + 1, std::vector<Q>(m + 1));
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t i = 0; i < m; ++i) a[j][i] = T[i]->c[j];
    a[j][m] = s.c[j];
  }
  for (std::size_t i = 0; i < m; ++i) a[d][i] = 1;
  a[d][m] = 1;
  std::size_t row = 0;
  std::vector<std::size_t> pivot_col;
  for (std::size_t col = 0; col < m && row <= d; ++col) {
    std::size_t piv = row;
    while (piv <= d && a[piv][col] == Q(0)) ++piv;
    if (piv > d) return false;  // dependent: a smaller subset covers this case
    std::swap(a[piv], a[row]);
    for (std::size_t r = 0; r <= d; ++r) {
      if (r == row || a[r][col] == Q(0)) continue;
      const Q factor = a[r][col] / a[row][col];
      for (std::size_t c = col; c <= m; ++c) a[r][c] -= factor * a[row][c];
    }
    pivot_col.push_back(col);
    ++row;
  }
  for (std::size_t r = row; r <= d; ++r)
    if (a[r][m] != Q(0)) return false;
  for (std::size_t r = 0; r < row; ++r)
    if (a[r][m] / a[r][pivot_col[r]] < Q(0)) return false;
  return true;
}

}  // namespace

std::vector<Point> hull_corners(const Shape& S) {
  std::vector<Point> out;
  for (const Point& s : S) {
    std::vector<const Point*> others;
    for (const Point& t : S)
      if (!(t == s)) others.push_back(&t);
    const std::size_t limit = std::min(others.size(), s.c.size() + 1);
    bool inside = false;
    std::vector<const Point*> pick;
    std::function<void(std::size_t)> rec = [&](std::size_t from) {
      if (inside) return;
      if (!pick.empty() && in_simplex(pick, s)) {
        inside = true;
        return;
      }
      if (pick.size() == limit) return;
      for (std::size_t i = from; i < others.size() && !inside; ++i) {
        pick.push_back(others[i]);
        rec(i + 1);
        pick.pop_back();
      }
    };
    rec(0);
    if (!inside) out.push_back(s);
  }
  return out;
}

bool ktep_check(const Group& G, const std::vector<Pattern>& patterns, int alphabet_size, int k) {
  if (G.kind() != GroupKind::FreeAbelian) throw UnsupportedOperation("k-TEP corners need Z^d, got " + G.key());
  if (patterns.empty()) return k == 0;
  const Shape S = patterns.front().domain();
  for (const auto& p : patterns)
    if (p.domain() != S) throw std::invalid_argument("k-TEP patterns must share one domain");
  const std::set<Pattern> set(patterns.begin(), patterns.end());
  for (const Point& corner : hull_corners(S)) {
    Shape rest;
    for (const Point& p : S)
      if (!(p == corner)) rest.push_back(p);
    std::map<Pattern, int> counts;
    for (const auto& p : set) ++counts[p.restrict_to(rest)];
    std::vector<int> cur(rest.size(), 0);
    for (;;) {
      Pattern q;
      for (std::size_t i = 0; i < rest.size(); ++i) q.cells.emplace_back(rest[i], cur[i]);
      auto it = counts.find(q);
      if ((it == counts.end() ? 0 : it->second) != k) return false;
      std::size_t i = 0;
      while (i < rest.size() && ++cur[i] == alphabet_size) cur[i++] = 0;
      if (i == rest.size()) break;
    }
  }
  return true;
}

TssmResult tssm_gap_check(const SftSpec& spec, int n, int W, const LanguageOracle& oracle, std::size_t combination_cap) {
  const Group& G = spec.group;
  TssmResult res;
  if (spec.levels != 1) throw UnsupportedOperation("gap checks need a one-level spec");
  const auto& cells = G.ball(W).members;
  const std::size_t m = cells.size();
  double total = 1;
  for (std::size_t i = 0; i < m; ++i) total *= 4;
  if (total > static_cast<double>(combination_cap)) {
    res.reason = "window B_" + std::to_string(W) + " has too many partitions";
    return res;
  }
  const Point e = G.identity();
  struct Split {
    Shape U, S, V;
  };
  std::vector<Split> splits;
  std::vector<int> role(m, 0);
  for (;;) {
    Split sp;
    for (std::size_t i = 0; i < m; ++i) {
      if (role[i] == 1) sp.U.push_back(cells[i]);
      if (role[i] == 2) sp.S.push_back(cells[i]);
      if (role[i] == 3) sp.V.push_back(cells[i]);
    }
    if (!sp.U.empty() && !sp.V.empty()) {
      int d = std::numeric_limits<int>::max();
      for (const Point& a : sp.U)
        for (const Point& b : sp.V) d = std::min(d, G.distance(a, b));
      if (d >= n) splits.push_back(std::move(sp));
    }
    std::size_t i = 0;
    while (i < m && ++role[i] == 4) role[i++] = 0;
    if (i == m) break;
  }
  std::stable_sort(splits.begin(), splits.end(), [&](const Split& a, const Split& b) {
    const auto sa = a.U.size() + a.S.size() + a.V.size(), sb = b.U.size() + b.S.size() + b.V.size();
    if (sa != sb) return sa < sb;
    return shape_contains(a.U, e) && !shape_contains(b.U, e);
  });

  std::map<Shape, LanguageResult> cache;
  bool all_exact = true;
  auto valid = [&](const Pattern& p) {
    const Shape dom = p.domain();
    auto it = cache.find(dom);
    if (it == cache.end()) it = cache.emplace(dom, oracle.language(dom)).first;
    all_exact = all_exact && it->second.exact && it->second.complete;
    return std::pair{std::binary_search(it->second.patterns.begin(), it->second.patterns.end(), p),
                     it->second.exact && it->second.complete};
  };
  auto each = [&](const Shape& D, const std::function<bool(const Pattern&)>& f) {
    std::vector<int> cur(D.size(), 0);
    for (;;) {
      Pattern p;
      for (std::size_t i = 0; i < D.size(); ++i) p.cells.emplace_back(D[i], cur[i]);
      if (!f(p)) return false;
      std::size_t i = 0;
      while (i < D.size() && ++cur[i] == spec.alphabet_size(D[i])) cur[i++] = 0;
      if (i == D.size()) return true;
    }
  };
  for (const auto& sp : splits) {
    bool failed = false;
    each(sp.S, [&](const Pattern& s) {
      return each(sp.U, [&](const Pattern& u) {
        const Pattern us = *merge(u, s);
        auto [us_ok, us_exact] = valid(us);
        if (!us_ok) return true;
        return each(sp.V, [&](const Pattern& v) {
          ++res.combinations;
          auto [sv_ok, sv_exact] = valid(*merge(s, v));
          if (!sv_ok) return true;
          auto [all_ok, all_ex] = valid(*merge(us, v));
          if (!all_ok && us_exact && sv_exact && all_ex) {
            res.status = TssmResult::Status::Fails;
            res.u = u;
            res.s = s;
            res.v = v;
            failed = true;
            return false;
          }
          return true;
        });
      });
    });
    if (failed) return res;
  }
  if (all_exact) {
    res.status = TssmResult::Status::HoldsOnWindow;
  } else {
    res.reason = "oracle answers were not exact";
  }
  return res;
}

int tssm_gap_from_certificate(const Certificate& cert) {
  if (cert.family != Family::AllSubsets) throw std::invalid_argument("a gap follows from an all-subsets certificate");
  return cert.radius + 1;
}

}  // namespace avo
