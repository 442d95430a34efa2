#include "avo/oracles.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace avo {

Budget Budget::small() {
  Budget b;
  b.radius_cap = 2;
  b.node_cap = 20'000;
  b.candidate_radius_cap = 1;
  b.candidate_max_cells = 3;
  b.verify_radius_cap = 2;
  b.pattern_cap = 20'000;
  return b;
}

Budget Budget::defaults() { return Budget{}; }

Budget Budget::large() {
  Budget b;
  b.radius_cap = 6;
  b.node_cap = 2'000'000;
  b.candidate_radius_cap = 3;
  b.candidate_max_cells = 4;
  b.verify_radius_cap = 4;
  b.pattern_cap = 2'000'000;
  return b;
}

Budget Budget::named(const std::string& name) {
  if (name == "small") return small();
  if (name == "default") return defaults();
  if (name == "large") return large();
  throw std::invalid_argument("unknown budget '" + name + "' (expected small, default or large)");
}

std::string Budget::describe() const {
  std::ostringstream os;
  os << "radius_cap=" << radius_cap << " node_cap=" << node_cap << " candidate_radius_cap=" << candidate_radius_cap
     << " candidate_max_cells=" << candidate_max_cells << " verify_radius_cap=" << verify_radius_cap
     << " pattern_cap=" << pattern_cap;
  return os.str();
}

std::string to_string(const ValidityVerdict& v) {
  switch (v.kind) {
    case ValidityVerdict::Kind::Refuted:
      return "Refuted(" + (v.radius < 0 ? "by " + v.basis : std::to_string(v.radius)) + ")";
    case ValidityVerdict::Kind::NotRefuted:
      return "NotRefuted(" + (v.radius < 0 ? "by " + v.basis : std::to_string(v.radius)) + (v.budget_exhausted ? ", budget exhausted" : "") + ")";
    case ValidityVerdict::Kind::Exact:
      return std::string(v.valid ? "Valid" : "Invalid") + "(" + v.basis + ")";
  }
  return "?";
}

ValidityVerdict refute_global_validity(const SftSpec& spec, const Pattern& p, const Budget& budget) {
  if (spec.forbids_everything() || !locally_valid(spec, p)) return ValidityVerdict::refuted_at(0);
  // Extendability is antitone in R: one run at the cap settles NotRefuted, and
  // a refutation there is then localized to its least radius.
  const int cap = std::max(0, budget.radius_cap);
  auto top = extendable_to_radius(spec, p, cap, budget.node_cap);
  if (top.status == SearchStatus::Found) return {ValidityVerdict::Kind::NotRefuted, cap, false, false, {}};
  int last_ok = -1;
  for (int R = 0; R <= cap; ++R) {
    auto r = R == cap ? top : extendable_to_radius(spec, p, R, budget.node_cap);
    if (r.status == SearchStatus::Exhausted) return ValidityVerdict::refuted_at(R);
    if (r.status == SearchStatus::BudgetExceeded) break;
    last_ok = R;
  }
  return {ValidityVerdict::Kind::NotRefuted, std::max(last_ok, 0), false, true, {}};
}

namespace {

void require_z(const SftSpec& spec) {
  if (spec.group.key() != "Z" || spec.levels != 1)
    throw UnsupportedOperation("the transfer-graph oracle needs a one-level spec over Z, got " + spec.group.key());
}

struct TransferGraph {
  int L = 1;
  std::vector<std::vector<int>> words;  // core vertices
  std::vector<std::vector<int>> next;   // core edges by index
  bool empty_shift = false;
};

bool word_valid(const SftSpec& spec, const std::vector<int>& w) {
  Pattern p;
  for (std::size_t i = 0; i < w.size(); ++i) p.cells.emplace_back(Point({static_cast<int>(i)}), w[i]);
  return locally_valid(spec, p);
}

TransferGraph build_transfer_graph(const SftSpec& spec) {
  require_z(spec);
  TransferGraph g;
  if (spec.forbids_everything()) {
    g.empty_shift = true;
    return g;
  }
  int w = 0;
  for (const auto& f : spec.forbidden)
    for (const auto& [pt, s] : canonical_translate(spec.group, f).cells) w = std::max(w, pt.c[0]);
  g.L = std::max(w, 1);
  const int A = static_cast<int>(spec.alphabet.size());
  double total = 1;
  for (int i = 0; i < g.L; ++i) total *= A;
  if (total > 2e6) throw ResourceError("transfer graph too large");

  std::vector<std::vector<int>> verts;
  std::vector<int> cur(static_cast<std::size_t>(g.L), 0);
  for (;;) {
    if (word_valid(spec, cur)) verts.push_back(cur);
    int i = g.L - 1;
    while (i >= 0 && ++cur[static_cast<std::size_t>(i)] == A) cur[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) break;
  }
  std::map<std::vector<int>, int> index;
  for (std::size_t i = 0; i < verts.size(); ++i) index[verts[i]] = static_cast<int>(i);
  std::vector<std::vector<int>> out(verts.size()), in(verts.size());
  for (std::size_t i = 0; i < verts.size(); ++i) {
    std::vector<int> ext = verts[i];
    ext.push_back(0);
    for (int a = 0; a < A; ++a) {
      ext.back() = a;
      if (!word_valid(spec, ext)) continue;
      auto it = index.find(std::vector<int>(ext.begin() + 1, ext.end()));
      if (it == index.end()) continue;
      out[i].push_back(it->second);
      in[static_cast<std::size_t>(it->second)].push_back(static_cast<int>(i));
    }
  }
  std::vector<bool> alive(verts.size(), true);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < verts.size(); ++i) {
      if (!alive[i]) continue;
      auto live = [&](const std::vector<int>& v) {
        return std::any_of(v.begin(), v.end(), [&](int j) { return alive[static_cast<std::size_t>(j)]; });
      };
      if (!live(out[i]) || !live(in[i])) {
        alive[i] = false;
        changed = true;
      }
    }
  }
  std::vector<int> renum(verts.size(), -1);
  for (std::size_t i = 0; i < verts.size(); ++i)
    if (alive[i]) {
      renum[i] = static_cast<int>(g.words.size());
      g.words.push_back(verts[i]);
    }
  g.next.resize(g.words.size());
  for (std::size_t i = 0; i < verts.size(); ++i)
    if (alive[i])
      for (int j : out[i])
        if (alive[static_cast<std::size_t>(j)]) g.next[static_cast<std::size_t>(renum[i])].push_back(renum[static_cast<std::size_t>(j)]);
  g.empty_shift = g.words.empty();
  return g;
}

}  // namespace

std::vector<Pattern> z_interval_language(const SftSpec& spec, int a, int b) {
  const auto g = build_transfer_graph(spec);
  if (g.empty_shift) return {};
  if (b < a) return {Pattern{}};
  const int n = b - a + 1;
  std::set<std::vector<int>> words;
  if (n <= g.L) {
    for (const auto& w : g.words) words.insert(std::vector<int>(w.begin(), w.begin() + n));
  } else {
    std::vector<int> cur;
    std::function<void(int, int)> walk = [&](int v, int remaining) {
      if (remaining == 0) {
        words.insert(cur);
        return;
      }
      for (int u : g.next[static_cast<std::size_t>(v)]) {
        cur.push_back(g.words[static_cast<std::size_t>(u)].back());
        walk(u, remaining - 1);
        cur.pop_back();
      }
    };
    for (std::size_t v = 0; v < g.words.size(); ++v) {
      cur = g.words[v];
      walk(static_cast<int>(v), n - g.L);
    }
  }
  std::vector<Pattern> out;
  for (const auto& w : words) {
    Pattern p;
    for (int i = 0; i < n; ++i) p.cells.emplace_back(Point({a + i}), w[static_cast<std::size_t>(i)]);
    out.push_back(std::move(p));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Pattern> z_interval_language(const SftSpec& spec, const Shape& D) {
  require_z(spec);
  if (D.empty()) return z_nonempty(spec) ? std::vector<Pattern>{Pattern{}} : std::vector<Pattern>{};
  const int a = D.front().c[0], b = D.back().c[0];
  std::set<Pattern> out;
  for (const auto& p : z_interval_language(spec, a, b)) out.insert(p.restrict_to(D));
  return {out.begin(), out.end()};
}

bool z_nonempty(const SftSpec& spec) { return !build_transfer_graph(spec).empty_shift; }

TransferOracle::TransferOracle(SftSpec spec) : spec_(std::move(spec)) { require_z(spec_); }

LanguageResult TransferOracle::language(const Shape& D) const { return {z_interval_language(spec_, D), true, true}; }

LanguageResult locally_valid_patterns(const SftSpec& spec, const Shape& D, std::size_t pattern_cap,
                                      std::uint64_t node_cap) {
  LanguageResult res;
  ConstraintSystem sys(spec, std::vector<Point>(D.begin(), D.end()));
  auto status = sys.enumerate(
      Pattern{},
      [&](const std::vector<int>& a) {
        if (res.patterns.size() >= pattern_cap) return false;
        res.patterns.push_back(sys.to_pattern(a));
        return true;
      },
      node_cap);
  res.complete = status == SearchStatus::Exhausted;
  std::sort(res.patterns.begin(), res.patterns.end());
  return res;
}

BudgetedOracle::BudgetedOracle(SftSpec spec, Budget budget) : spec_(std::move(spec)), budget_(budget) {}

LanguageResult BudgetedOracle::language(const Shape& D) const {
  auto res = locally_valid_patterns(spec_, D, budget_.pattern_cap, budget_.node_cap * 16);
  std::vector<Pattern> kept;
  for (auto& p : res.patterns)
    if (!refute_global_validity(spec_, p, budget_).refuted()) kept.push_back(std::move(p));
  res.patterns = std::move(kept);
  res.exact = false;
  return res;
}

Approximation m_sft_approximation(const SftSpec& spec, const Shape& M, const LanguageOracle& oracle) {
  const auto lang = oracle.language(M);
  Approximation out{spec, lang.exact && lang.complete};
  out.spec.forbidden.clear();
  std::vector<int> cur(M.size(), 0);
  for (;;) {
    Pattern p;
    for (std::size_t i = 0; i < M.size(); ++i) p.cells.emplace_back(M[i], cur[i]);
    if (!std::binary_search(lang.patterns.begin(), lang.patterns.end(), p)) out.spec.forbidden.push_back(p);
    std::size_t i = 0;
    while (i < M.size() && ++cur[i] == spec.alphabet_size(M[i])) cur[i++] = 0;
    if (i == M.size()) break;
  }
  out.spec.forbidden = normalize_forbidden(spec.group, out.spec.forbidden);
  return out;
}

FollowerResult follower_symbols(const SftSpec& spec, const Pattern& p, const Point& at, const LanguageOracle& oracle) {
  if (p.at(at)) throw std::invalid_argument("follower position lies in the pattern domain");
  Shape D = p.domain();
  D.push_back(at);
  D = make_shape(std::move(D));
  const auto lang = oracle.language(D);
  FollowerResult out;
  out.exact = lang.exact && lang.complete;
  for (int a = 0; a < spec.alphabet_size(at); ++a) {
    const bool in = std::binary_search(lang.patterns.begin(), lang.patterns.end(), p.with(at, a));
    ValidityVerdict v;
    if (out.exact)
      v = {ValidityVerdict::Kind::Exact, 0, in, false, oracle.name()};
    else
      v = in ? ValidityVerdict{ValidityVerdict::Kind::NotRefuted, 0, false, false, oracle.name()}
             : ValidityVerdict::refuted_at(0);
    out.verdicts.push_back(v);
    if (in) out.symbols.push_back(a);
  }
  return out;
}

FollowerResult follower_symbols(const SftSpec& spec, const Pattern& p, const Point& at, const Budget& budget) {
  if (p.at(at)) throw std::invalid_argument("follower position lies in the pattern domain");
  FollowerResult out;
  for (int a = 0; a < spec.alphabet_size(at); ++a) {
    auto v = refute_global_validity(spec, p.with(at, a), budget);
    if (!v.refuted()) out.symbols.push_back(a);
    out.verdicts.push_back(v);
  }
  return out;
}

}  // namespace avo
