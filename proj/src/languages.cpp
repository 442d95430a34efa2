#include "avo/languages.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>

#include "avo/search.hpp"

namespace avo {

ExactLanguage::ExactLanguage(Certificate cert, int working_radius, int radius_cap, std::uint64_t node_cap,
                             std::size_t closure_cap)
    : cert_(std::move(cert)),
      working_radius_(working_radius),
      radius_cap_(std::max(radius_cap, working_radius)),
      node_cap_(node_cap),
      closure_cap_(closure_cap) {
  diameter_ball_ = space_ball(cert_.q.group, forbidden_diameter(cert_.q), cert_.q.levels);
}

OrderKey ExactLanguage::order_key(const Point& p) const {
  const Group& G = cert_.q.group;
  OrderKey key;
  if (cert_.q.levels == 2) key.push_back(p.level == 2 ? 0 : 1);
  if (G.polycyclic()) {
    auto k = whole_group_key(G, Point(p.c));
    key.insert(key.end(), k.begin(), k.end());
  } else {
    key.push_back(static_cast<long>(p.c.size()));
    key.insert(key.end(), p.c.begin(), p.c.end());
  }
  return key;
}

std::optional<Shape> ExactLanguage::closure(const Shape& D) const {
  const Group& G = cert_.q.group;
  std::set<Point> F(D.begin(), D.end());
  std::vector<Point> work(D.begin(), D.end());
  while (!work.empty()) {
    const Point s = work.back();
    work.pop_back();
    const OrderKey ks = order_key(s);
    for (const Point& b : diameter_ball_) {
      Point t = G.compose(Point(s.c), Point(b.c));
      t.level = b.level;
      if (F.count(t) || !(order_key(t) < ks)) continue;
      F.insert(t);
      work.push_back(t);
      if (F.size() > closure_cap_) return std::nullopt;
    }
  }
  return Shape(F.begin(), F.end());
}

namespace {

std::vector<Point> fill_order(const Group& G, const Shape& dom, const Shape& F) {
  std::vector<std::pair<int, Point>> rest;
  for (const Point& x : F) {
    if (shape_contains(dom, x)) continue;
    int best = std::numeric_limits<int>::max();
    for (const Point& d : dom) best = std::min(best, G.distance(Point(d.c), Point(x.c)));
    rest.emplace_back(best, x);
  }
  std::sort(rest.begin(), rest.end());
  std::vector<Point> order(dom.begin(), dom.end());
  for (auto& [d, x] : rest) order.push_back(x);
  return order;
}

}  // namespace

std::optional<bool> ExactLanguage::contains(const Pattern& p) const {
  const SftSpec& q = cert_.q;
  if (q.forbids_everything()) return false;
  if (!locally_valid(q, p)) return false;
  const Shape dom = p.domain();
  auto F = closure(dom);
  if (!F) return std::nullopt;
  ConstraintSystem sys(q, fill_order(q.group, dom, *F));
  auto r = sys.find(p, node_cap_);
  if (r.status == SearchStatus::BudgetExceeded) return std::nullopt;
  return r.status == SearchStatus::Found;
}

std::optional<std::vector<Pattern>> ExactLanguage::language_on(const Shape& D) const {
  const SftSpec& q = cert_.q;
  const Group& G = q.group;
  if (q.forbids_everything()) return std::vector<Pattern>{};
  if (D.empty()) return std::vector<Pattern>{Pattern{}};
  const Point shift(D.front().c);
  const Shape canon = translate_shape(G, G.invert(shift), D);
  int reach = 0;
  for (const Point& p : canon) reach = std::max(reach, G.norm(Point(p.c)));
  if (reach > radius_cap_) return std::nullopt;
  std::vector<Pattern> result;
  bool cached = false;
  {
    std::lock_guard lock(mutex_);
    if (auto it = cache_.find(canon); it != cache_.end()) {
      result = it->second;
      cached = true;
    }
  }
  if (!cached) {
    auto F = closure(canon);
    if (!F) return std::nullopt;
    ConstraintSystem on_d(q, std::vector<Point>(canon.begin(), canon.end()));
    ConstraintSystem on_f(q, fill_order(G, canon, *F));
    bool capped = false;
    auto status = on_d.enumerate(
        Pattern{},
        [&](const std::vector<int>& a) {
          const Pattern p = on_d.to_pattern(a);
          auto r = on_f.find(p, node_cap_);
          if (r.status == SearchStatus::BudgetExceeded) {
            capped = true;
            return false;
          }
          if (r.status == SearchStatus::Found) result.push_back(p);
          return true;
        },
        node_cap_);
    if (capped || status != SearchStatus::Exhausted) return std::nullopt;
    std::sort(result.begin(), result.end());
    std::lock_guard lock(mutex_);
    cache_.emplace(canon, result);
  }
  if (G.is_identity(shift)) return result;
  std::vector<Pattern> moved;
  moved.reserve(result.size());
  for (const auto& p : result) moved.push_back(translate(G, shift, p));
  std::sort(moved.begin(), moved.end());
  return moved;
}

LanguageTable saturate_language(const Certificate& cert, int W) {
  ExactLanguage lang(cert, W);
  LanguageTable t;
  t.working_radius = W;
  const Shape ball = space_ball(cert.q.group, W, cert.q.levels);
  for (const Shape& s : {Shape{}, ball}) {
    if (auto l = lang.language_on(s)) {
      t.entries[s] = *l;
      t.provenance[s] = s.empty() ? "root" : "closure-derivation";
    }
  }
  return t;
}

CertificateOracle::CertificateOracle(Certificate cert, int working_radius) : engine_(std::move(cert), working_radius) {}

LanguageResult CertificateOracle::language(const Shape& D) const {
  auto l = engine_.language_on(D);
  if (!l) return {{}, false, false};
  return {std::move(*l), true, true};
}

Family natural_family(const SftSpec& spec) {
  if (spec.levels == 2) return Family::Cornered2Level;
  if (spec.group.kind() == GroupKind::Free) return Family::TreeConvexExtensions;
  return Family::InductiveIntervals;
}

InclusionResult decide_inclusion(const SftSpec& x, const SftSpec& y, const Budget& budget, const Certificate* x_cert) {
  if (!(x.group == y.group) || x.alphabet != y.alphabet || x.levels != y.levels)
    throw std::invalid_argument("inclusion needs the same group and alphabet");
  InclusionResult res;
  int worst = 0;
  bool all_refuted = true;
  for (const auto& f : y.forbidden) {
    auto v = refute_global_validity(x, f, budget);
    if (!v.refuted()) {
      all_refuted = false;
      break;
    }
    worst = std::max(worst, v.radius);
  }
  if (all_refuted) {
    res.status = InclusionResult::Status::Subset;
    res.evidence = "every forbidden pattern of Y is unextendable in X by radius " + std::to_string(worst);
    return res;
  }
  std::optional<Certificate> found;
  if (!x_cert) {
    auto r = find_certificate(x, natural_family(x), budget);
    if (!r.certificate) {
      res.evidence = "no certificate for X: " + r.reason;
      return res;
    }
    found = std::move(r.certificate);
    x_cert = &*found;
  }
  ExactLanguage lang(*x_cert);
  std::vector<Pattern> ys;
  for (const auto& f : y.forbidden) ys.push_back(canonical_translate(y.group, f));
  std::sort(ys.begin(), ys.end(), [](const Pattern& a, const Pattern& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  for (const auto& f : ys) {
    auto in = lang.contains(f);
    if (!in) {
      res.evidence = "language derivation hit a cap";
      return res;
    }
    if (*in) {
      res.status = InclusionResult::Status::NotSubset;
      res.witness = f;
      res.evidence = "pattern is in the exact language of X (certificate R=" + std::to_string(x_cert->radius) +
                     ") and forbidden in Y";
      return res;
    }
  }
  res.status = InclusionResult::Status::Subset;
  res.evidence = "no forbidden pattern of Y is in the exact language of X";
  return res;
}

EmptinessResult decide_emptiness(const SftSpec& spec, const Budget& budget) {
  EmptinessResult res;
  auto v = refute_global_validity(spec, Pattern{}, budget);
  if (v.refuted()) {
    res.status = EmptinessResult::Status::Empty;
    res.evidence = "no locally valid pattern on B_" + std::to_string(v.radius);
    return res;
  }
  auto r = find_certificate(spec, natural_family(spec), budget);
  if (!r.certificate) {
    res.evidence = "not refuted up to radius " + std::to_string(v.radius) + " and no certificate: " + r.reason;
    return res;
  }
  if (r.certificate->q.forbids_everything()) {
    res.status = EmptinessResult::Status::Empty;
    res.evidence = "certificate forbids the empty pattern";
  } else {
    res.status = EmptinessResult::Status::Nonempty;
    res.evidence = "certificate at R=" + std::to_string(r.certificate->radius) + " admits the empty pattern";
  }
  return res;
}

Pattern complete_pattern(const ExactLanguage& lang, const Pattern& p, const Shape& target) {
  auto ok = lang.contains(p);
  if (!ok) throw std::runtime_error("membership of the starting pattern hit a cap");
  if (!*ok) throw std::runtime_error("starting pattern is not globally valid");
  std::vector<std::pair<OrderKey, Point>> todo;
  for (const Point& s : target)
    if (!p.at(s)) todo.emplace_back(lang.order_key(s), s);
  std::sort(todo.begin(), todo.end());
  Pattern cur = p;
  for (const auto& [k, s] : todo) {
    bool placed = false;
    for (int a = 0; a < lang.spec().alphabet_size(s) && !placed; ++a) {
      Pattern next = cur.with(s, a);
      auto in = lang.contains(next);
      if (!in) throw std::runtime_error("membership check hit a cap at " + to_string(s));
      if (*in) {
        cur = std::move(next);
        placed = true;
      }
    }
    if (!placed) throw std::runtime_error("certificate violation: no valid symbol at " + to_string(s));
  }
  return cur;
}

SftSpec project_to_subgroup(const Certificate& cert, int axes) {
  const SftSpec& q = cert.q;
  const Group& G = q.group;
  if (!G.polycyclic() || q.levels != 1) throw UnsupportedOperation("projection needs a one-level spec on a polycyclic group");
  SftSpec out;
  out.group = G.subgroup(axes);
  out.alphabet = q.alphabet;
  out.name = q.name.empty() ? "" : q.name + "|H" + std::to_string(axes);
  for (const auto& f : q.forbidden) {
    if (f.empty()) {
      out.forbidden.push_back(f);
      continue;
    }
    for (const auto& [d0, s0] : f.cells) {
      const Pattern moved = translate(G, G.invert(Point(d0.c)), f);
      bool inside = true;
      for (const auto& [pt, s] : moved.cells) {
        const auto t = G.to_tuple(pt);
        for (std::size_t j = static_cast<std::size_t>(axes); j < t.size(); ++j) inside = inside && t[j] == 0;
      }
      if (!inside) continue;
      Pattern sub;
      for (const auto& [pt, s] : moved.cells) sub.cells.emplace_back(G.to_subgroup(pt, axes), s);
      std::sort(sub.cells.begin(), sub.cells.end());
      out.forbidden.push_back(std::move(sub));
      break;
    }
  }
  out.forbidden = normalize_forbidden(out.group, out.forbidden);
  return out;
}

}  // namespace avo
