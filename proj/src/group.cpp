#include "avo/group.hpp"

#include <algorithm>
#include <cstdlib>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <unordered_map>

namespace avo {

std::string to_string(const Point& p) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < p.c.size(); ++i) os << (i ? "," : "") << p.c[i];
  os << ')';
  if (p.level) os << '@' << p.level;
  return os.str();
}

struct Group::Cache {
  std::shared_mutex mutex;
  std::vector<std::vector<Point>> spheres;  // spheres[r] = norm exactly r, lexicographic
  std::vector<Ball> balls;
  std::unordered_map<Point, int, PointHash> norms;
};

Group::Group(GroupKind kind, int d, std::vector<int> torsion, int rank)
    : kind_(kind), dim_(d), torsion_(std::move(torsion)), rank_(rank), cache_(std::make_shared<Cache>()) {
  const int n = kind_ == GroupKind::Free ? 0 : arity();
  auto unit = [&](int i, int v) {
    std::vector<int> c(static_cast<std::size_t>(n), 0);
    c[static_cast<std::size_t>(i)] = v;
    return Point(std::move(c));
  };
  switch (kind_) {
    case GroupKind::FreeAbelian:
    case GroupKind::AbelianWithTorsion:
      for (int i = 0; i < n; ++i) {
        gens_.push_back(unit(i, 1));
        gens_.push_back(Point(unit(i, 1).c));
        gens_.back().c[static_cast<std::size_t>(i)] = reduce(i, -1);
        gen_names_.push_back("e" + std::to_string(i + 1));
      }
      break;
    case GroupKind::Heisenberg:
      gens_ = {unit(0, 1), unit(0, -1), unit(1, 1), unit(1, -1)};
      gen_names_ = {"a", "b"};
      break;
    case GroupKind::Free:
      for (int i = 0; i < rank_; ++i) {
        gens_.push_back(Point({i + 1}));
        gens_.push_back(Point({-(i + 1)}));
        gen_names_.push_back(std::string(1, static_cast<char>('a' + i)));
      }
      break;
  }
  // A torsion axis of order 2 makes +1 and -1 coincide.
  std::sort(gens_.begin(), gens_.end());
  gens_.erase(std::unique(gens_.begin(), gens_.end()), gens_.end());
}

Group Group::free_abelian(int d) {
  if (d < 1) throw std::invalid_argument("Z^d requires d >= 1");
  return Group(GroupKind::FreeAbelian, d, {}, 0);
}

Group Group::abelian_with_torsion(int d, std::vector<int> torsion) {
  if (d < 1) throw std::invalid_argument("Z^d x torsion requires d >= 1");
  for (int k : torsion)
    if (k < 2) throw std::invalid_argument("torsion orders must be >= 2");
  if (torsion.empty()) return free_abelian(d);
  return Group(GroupKind::AbelianWithTorsion, d, std::move(torsion), 0);
}

Group Group::heisenberg() { return Group(GroupKind::Heisenberg, 0, {}, 0); }

Group Group::free(int rank) {
  if (rank < 1 || rank > 26) throw std::invalid_argument("free group rank must be in [1, 26]");
  return Group(GroupKind::Free, 0, {}, rank);
}

namespace {

int parse_int(std::string_view s, std::string_view whole) {
  if (s.empty()) throw std::invalid_argument("bad group key '" + std::string(whole) + "'");
  int v = 0;
  for (char ch : s) {
    if (ch < '0' || ch > '9') throw std::invalid_argument("bad group key '" + std::string(whole) + "'");
    v = v * 10 + (ch - '0');
  }
  return v;
}

}  // namespace

Group Group::from_key(std::string_view key) {
  if (key == "heisenberg" || key == "H3") return heisenberg();
  if (!key.empty() && key[0] == 'F') return free(parse_int(key.substr(1), key));
  int d = 0;
  std::vector<int> torsion;
  std::size_t pos = 0;
  while (pos <= key.size()) {
    std::size_t next = key.find('x', pos);
    if (next == std::string_view::npos) next = key.size();
    std::string_view part = key.substr(pos, next - pos);
    if (part == "Z") {
      if (!torsion.empty()) throw std::invalid_argument("free axes must precede torsion axes in '" + std::string(key) + "'");
      d += 1;
    } else if (part.size() > 2 && part.substr(0, 2) == "Z^") {
      if (!torsion.empty()) throw std::invalid_argument("free axes must precede torsion axes in '" + std::string(key) + "'");
      d += parse_int(part.substr(2), key);
    } else if (part.size() > 1 && part[0] == 'Z') {
      torsion.push_back(parse_int(part.substr(1), key));
    } else {
      throw std::invalid_argument("unknown group key '" + std::string(key) + "'");
    }
    pos = next + 1;
  }
  if (d == 0) throw std::invalid_argument("unknown group key '" + std::string(key) + "'");
  return abelian_with_torsion(d, std::move(torsion));
}

std::string Group::key() const {
  switch (kind_) {
    case GroupKind::Heisenberg:
      return "heisenberg";
    case GroupKind::Free:
      return "F" + std::to_string(rank_);
    default: {
      std::string s = dim_ == 1 ? "Z" : "Z^" + std::to_string(dim_);
      for (int k : torsion_) s += "xZ" + std::to_string(k);
      return s;
    }
  }
}

int Group::arity() const {
  switch (kind_) {
    case GroupKind::Heisenberg:
      return 3;
    case GroupKind::Free:
      throw UnsupportedOperation("free groups have no tuple coordinates");
    default:
      return dim_ + static_cast<int>(torsion_.size());
  }
}

int Group::axis_order(int axis) const {
  if (axis < 1 || axis > arity()) throw std::out_of_range("axis out of range");
  if (kind_ == GroupKind::Heisenberg) return 0;
  return axis <= dim_ ? 0 : torsion_[static_cast<std::size_t>(axis - dim_ - 1)];
}

int Group::reduce(int axis0, long v) const {
  if (!abelian() || axis0 < dim_) return static_cast<int>(v);
  const long k = torsion_[static_cast<std::size_t>(axis0 - dim_)];
  return static_cast<int>(((v % k) + k) % k);
}

Point Group::identity() const {
  if (kind_ == GroupKind::Free) return Point(std::vector<int>{});
  return Point(std::vector<int>(static_cast<std::size_t>(arity()), 0));
}

bool Group::is_identity(const Point& p) const {
  return std::all_of(p.c.begin(), p.c.end(), [](int v) { return v == 0; });
}

void Group::validate(const Point& p) const {
  if (kind_ == GroupKind::Free) {
    for (std::size_t i = 0; i < p.c.size(); ++i) {
      const int l = p.c[i];
      if (l == 0 || std::abs(l) > rank_) throw std::invalid_argument("letter out of range for " + key());
      if (i > 0 && p.c[i - 1] == -l) throw std::invalid_argument("word not freely reduced: " + to_string(p));
    }
    return;
  }
  if (static_cast<int>(p.c.size()) != arity())
    throw std::invalid_argument("point " + to_string(p) + " has wrong arity for " + key());
  if (abelian())
    for (int i = dim_; i < arity(); ++i) {
      const int k = torsion_[static_cast<std::size_t>(i - dim_)];
      if (p.c[static_cast<std::size_t>(i)] < 0 || p.c[static_cast<std::size_t>(i)] >= k)
        throw std::invalid_argument("torsion coordinate not reduced in " + to_string(p));
    }
}

Point Group::compose(const Point& g, const Point& h) const {
  if (kind_ == GroupKind::Free) {
    std::vector<int> w = g.c;
    for (int l : h.c) {
      if (!w.empty() && w.back() == -l)
        w.pop_back();
      else
        w.push_back(l);
    }
    return Point(std::move(w), h.level);
  }
  const int n = arity();
  if (static_cast<int>(g.c.size()) != n || static_cast<int>(h.c.size()) != n)
    throw std::invalid_argument("compose: operands do not belong to " + key());
  std::vector<int> r(static_cast<std::size_t>(n));
  if (kind_ == GroupKind::Heisenberg) {
    r[0] = g.c[0] + h.c[0];
    r[1] = g.c[1] + h.c[1];
    r[2] = g.c[2] + h.c[2] + g.c[0] * h.c[1];
  } else {
    for (int i = 0; i < n; ++i)
      r[static_cast<std::size_t>(i)] = reduce(i, static_cast<long>(g.c[static_cast<std::size_t>(i)]) + h.c[static_cast<std::size_t>(i)]);
  }
  return Point(std::move(r), h.level);
}

Point Group::invert(const Point& g) const {
  if (kind_ == GroupKind::Free) {
    std::vector<int> w(g.c.rbegin(), g.c.rend());
    for (int& l : w) l = -l;
    return Point(std::move(w), g.level);
  }
  if (kind_ == GroupKind::Heisenberg) {
    const int a = g.c[0], b = g.c[1], c = g.c[2];
    return Point({-a, -b, -c + a * b}, g.level);
  }
  std::vector<int> r(g.c.size());
  for (std::size_t i = 0; i < g.c.size(); ++i) r[i] = reduce(static_cast<int>(i), -static_cast<long>(g.c[i]));
  return Point(std::move(r), g.level);
}

const Ball& Group::ball(int r) const {
  if (r < 0) throw std::invalid_argument("ball radius must be non-negative");
  {
    std::shared_lock lock(cache_->mutex);
    if (static_cast<int>(cache_->balls.size()) > r) return cache_->balls[static_cast<std::size_t>(r)];
  }
  std::unique_lock lock(cache_->mutex);
  auto& spheres = cache_->spheres;
  std::size_t total = 0;
  for (auto& s : spheres) total += s.size();
  if (spheres.empty()) {
    spheres.push_back({identity()});
    cache_->norms.emplace(identity(), 0);
    total = 1;
  }
  while (static_cast<int>(spheres.size()) <= r) {
    std::vector<Point> next;
    for (const Point& p : spheres.back())
      for (const Point& s : gens_) {
        Point q = compose(p, s);
        if (cache_->norms.emplace(q, static_cast<int>(spheres.size())).second) next.push_back(std::move(q));
      }
    total += next.size();
    if (total > ball_limit_) {
      // Roll back the partial layer so the cache stays consistent.
      for (const Point& q : next) cache_->norms.erase(q);
      throw ResourceError("ball of radius " + std::to_string(r) + " in " + key() + " exceeds the configured size limit");
    }
    std::sort(next.begin(), next.end());
    spheres.push_back(std::move(next));
  }
  while (static_cast<int>(cache_->balls.size()) <= r) {
    const int k = static_cast<int>(cache_->balls.size());
    Ball b;
    b.radius = k;
    if (k > 0) b.members = cache_->balls.back().members;
    b.members.insert(b.members.end(), spheres[static_cast<std::size_t>(k)].begin(), spheres[static_cast<std::size_t>(k)].end());
    std::sort(b.members.begin(), b.members.end());
    cache_->balls.push_back(std::move(b));
  }
  return cache_->balls[static_cast<std::size_t>(r)];
}

std::vector<Point> Group::sphere(int r) const {
  ball(r);
  std::shared_lock lock(cache_->mutex);
  return cache_->spheres[static_cast<std::size_t>(r)];
}

int Group::norm(const Point& p) const {
  Point q(p.c);
  switch (kind_) {
    case GroupKind::Free:
      return static_cast<int>(p.c.size());
    case GroupKind::FreeAbelian:
    case GroupKind::AbelianWithTorsion: {
      int s = 0;
      for (int i = 0; i < arity(); ++i) {
        const int v = p.c[static_cast<std::size_t>(i)];
        if (i < dim_)
          s += std::abs(v);
        else
          s += std::min(v, torsion_[static_cast<std::size_t>(i - dim_)] - v);
      }
      return s;
    }
    case GroupKind::Heisenberg:
      break;
  }
  {
    std::shared_lock lock(cache_->mutex);
    if (auto it = cache_->norms.find(q); it != cache_->norms.end()) return it->second;
  }
  // Heisenberg word norm grows like the square root of the central
  // coordinate, so this terminates quickly for the points we meet.
  for (int r = 0;; ++r) {
    ball(r);
    std::shared_lock lock(cache_->mutex);
    if (auto it = cache_->norms.find(q); it != cache_->norms.end()) return it->second;
  }
}

int Group::distance(const Point& a, const Point& b) const { return norm(compose(invert(a), b)); }

std::vector<long> Group::to_tuple(const Point& g) const {
  if (!polycyclic()) throw UnsupportedOperation("to_tuple is undefined for free groups");
  if (kind_ == GroupKind::Heisenberg) return {g.c[2], g.c[1], g.c[0]};
  return std::vector<long>(g.c.begin(), g.c.end());
}

Point Group::from_tuple(const std::vector<long>& t) const {
  if (!polycyclic()) throw UnsupportedOperation("from_tuple is undefined for free groups");
  if (static_cast<int>(t.size()) != arity()) throw std::invalid_argument("tuple has wrong arity for " + key());
  if (kind_ == GroupKind::Heisenberg) {
    // c^t1 b^t2 a^t3 with c central
    return Point({static_cast<int>(t[2]), static_cast<int>(t[1]), static_cast<int>(t[0])});
  }
  std::vector<int> c(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) c[i] = reduce(static_cast<int>(i), t[i]);
  return Point(std::move(c));
}

int Group::last_nonzero(const Point& g) const {
  const auto t = to_tuple(g);
  for (int i = static_cast<int>(t.size()); i >= 1; --i)
    if (t[static_cast<std::size_t>(i - 1)] != 0) return i;
  return 0;
}

Point Group::axis_power(int axis, long e) const {
  std::vector<long> t(static_cast<std::size_t>(arity()), 0);
  t[static_cast<std::size_t>(axis - 1)] = e;
  return from_tuple(t);
}

Group Group::subgroup(int axes) const {
  if (!polycyclic()) throw UnsupportedOperation("subgroups of the polycycle series need a polycyclic group");
  if (axes < 1 || axes > arity()) throw std::out_of_range("subgroup axis count out of range");
  if (axes == arity()) return *this;
  if (kind_ == GroupKind::Heisenberg) return free_abelian(axes);
  if (axes <= dim_) return free_abelian(axes);
  return abelian_with_torsion(dim_, std::vector<int>(torsion_.begin(), torsion_.begin() + (axes - dim_)));
}

Point Group::to_subgroup(const Point& g, int axes) const {
  const auto t = to_tuple(g);
  for (std::size_t i = static_cast<std::size_t>(axes); i < t.size(); ++i)
    if (t[i] != 0) throw std::invalid_argument(to_string(g) + " is not in H_" + std::to_string(axes));
  if (axes == arity()) return g;
  return Point(std::vector<int>(t.begin(), t.begin() + axes), g.level);
}

}  // namespace avo
