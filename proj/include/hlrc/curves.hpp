#pragma once

// Evaluation point sets and their nested repair partitions.

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "hlrc/galois.hpp"

namespace hlrc {

struct Point {
  std::map<std::string, Fe> coords;
  bool at_infinity = false;

  static Point infinity() { return Point{{}, true}; }
  static Point line(Fe x) { return Point{{{"x", x}}, false}; }

  Fe get(const std::string& var) const {
    auto it = coords.find(var);
    if (it == coords.end()) throw UsageError("point: no coordinate '" + var + "'");
    return it->second;
  }
  Fe x() const { return get("x"); }

  friend bool operator==(const Point&, const Point&) = default;
};

using Group = std::vector<std::size_t>;

struct Hierarchy {
  std::vector<Group> middle_groups;
  std::vector<std::vector<Group>> local_groups;  // per middle group, a partition of it
  std::size_t r1 = 0, rho1 = 0, r2 = 0, rho2 = 0;
  std::size_t nu = 0;
  std::size_t local_size = 0;
  // Local restrictions are polynomials of degree < r2 in (moving_var)^moving_exp.
  std::string moving_var = "x";
  std::uint64_t moving_exp = 1;
  // Optional: per middle group, the value of the local invariant on each local
  // group; restricted coefficients are polynomials with fiber_terms terms in it.
  std::vector<std::vector<Fe>> local_invariant;
  std::size_t fiber_terms = 0;

  std::size_t size() const {
    std::size_t n = 0;
    for (const auto& g : middle_groups) n += g.size();
    return n;
  }

  /// Throws InvariantError when the partition or claim invariants fail.
  void validate(std::size_t n) const {
    if (middle_groups.size() != local_groups.size()) throw InvariantError("hierarchy: local partition count mismatch");
    std::vector<char> seen(n, 0);
    for (std::size_t g = 0; g < middle_groups.size(); ++g) {
      const auto& mg = middle_groups[g];
      if (mg.size() != nu) throw InvariantError("hierarchy: middle group size differs from nu");
      for (auto i : mg) {
        if (i >= n || seen[i]) throw InvariantError("hierarchy: middle groups do not partition [0, n)");
        seen[i] = 1;
      }
      std::vector<std::size_t> cover;
      for (const auto& lg : local_groups[g]) {
        if (lg.size() != local_size) throw InvariantError("hierarchy: local group size not uniform");
        cover.insert(cover.end(), lg.begin(), lg.end());
      }
      std::vector<std::size_t> a = mg;
      std::sort(a.begin(), a.end());
      std::sort(cover.begin(), cover.end());
      if (a != cover) throw InvariantError("hierarchy: local groups do not cover their middle group");
    }
    if (std::find(seen.begin(), seen.end(), 0) != seen.end())
      throw InvariantError("hierarchy: middle groups do not cover all points");
    if (rho1 != 0 && !(rho2 < rho1 && r2 <= r1)) throw InvariantError("hierarchy: need rho2 < rho1 and r2 <= r1");
  }

  /// (middle index, local index) for every point.
  std::vector<std::pair<std::size_t, std::size_t>> locate(std::size_t n) const {
    std::vector<std::pair<std::size_t, std::size_t>> loc(n, {SIZE_MAX, SIZE_MAX});
    for (std::size_t g = 0; g < local_groups.size(); ++g)
      for (std::size_t l = 0; l < local_groups[g].size(); ++l)
        for (auto i : local_groups[g][l]) loc.at(i) = {g, l};
    return loc;
  }
};

struct PointSet {
  std::vector<Point> points;
  Hierarchy hierarchy;
};

/// Multiplicative cosets on the affine line. Points are contiguous by middle
/// group, then by local group.
inline PointSet rs_evaluation_set(const Field& f, std::size_t nu, std::size_t local_size, std::size_t n) {
  require_param(local_size >= 1 && nu % local_size == 0,
                "rs_evaluation_set: local_size = " + std::to_string(local_size) + " does not divide nu = " + std::to_string(nu));
  require_param(nu >= 1 && n % nu == 0, "rs_evaluation_set: nu = " + std::to_string(nu) + " does not divide n = " + std::to_string(n));
  require_param(n >= 1 && (f.q() - 1) % n == 0,
                "rs_evaluation_set: n = " + std::to_string(n) + " does not divide q-1 = " + std::to_string(f.q() - 1));
  auto middles = subgroup_cosets(f, nu);
  middles.resize(n / nu);
  const auto sub = roots_of_unity(f, local_size);

  PointSet out;
  Hierarchy& h = out.hierarchy;
  h.nu = nu;
  h.local_size = local_size;
  h.moving_exp = 1;
  for (const auto& coset : middles) {
    std::vector<char> used(f.q(), 0);
    std::vector<std::vector<Fe>> locals;
    for (Fe a : coset) {
      if (used[a.rep]) continue;
      std::vector<Fe> lg;
      for (Fe s : sub) {
        Fe e = f.mul(a, s);
        used[e.rep] = 1;
        lg.push_back(e);
      }
      std::sort(lg.begin(), lg.end());
      locals.push_back(std::move(lg));
    }
    Group mg;
    std::vector<Group> lgs;
    std::vector<Fe> inv;
    for (const auto& lg : locals) {
      Group idx;
      for (Fe e : lg) {
        idx.push_back(out.points.size());
        mg.push_back(out.points.size());
        out.points.push_back(Point::line(e));
      }
      lgs.push_back(std::move(idx));
      inv.push_back(f.pow(lg.front(), local_size));
    }
    h.middle_groups.push_back(std::move(mg));
    h.local_groups.push_back(std::move(lgs));
    h.local_invariant.push_back(std::move(inv));
  }
  return out;
}

/// Fractional-linear map x -> (a x + b) / (c x + d) on P^1(F_q).
struct Mobius {
  Fe a, b, c, d;

  Point apply(const Field& f, const Point& p) const {
    if (p.at_infinity) {
      if (c.rep == 0) return Point::infinity();
      return Point::line(f.div(a, c));
    }
    Fe den = f.add(f.mul(c, p.x()), d);
    if (den.rep == 0) return Point::infinity();
    return Point::line(f.div(f.add(f.mul(a, p.x()), b), den));
  }
};

struct TorusOrbits {
  std::vector<Point> points;
  Hierarchy hierarchy;
  std::vector<Mobius> group;  // all nu elements of the order-nu subgroup
};

namespace detail {

// Cayley coordinate w = (x - theta)/(x - theta^q) identifies P^1(F_q) with the
// norm-one torus; infinity maps to 1.
inline QuadExtElem cayley(const QuadExt& e, const Point& p) {
  if (p.at_infinity) return e.one();
  QuadExtElem th = e.theta();
  QuadExtElem x = e.embed(p.x());
  return e.div(e.sub(x, th), e.sub(x, e.frobenius(th)));
}

inline Point cayley_inverse(const QuadExt& e, const QuadExtElem& w) {
  if (w == e.one()) return Point::infinity();
  QuadExtElem th = e.theta();
  QuadExtElem x = e.div(e.sub(e.mul(w, e.frobenius(th)), th), e.sub(w, e.one()));
  if (!e.in_base(x)) throw InvariantError("torus: Cayley inverse left the base field");
  return Point::line(x.a);
}

}  // namespace detail

/// Orbits of the order-nu subgroup of the cyclic order-(q+1) torus acting on
/// P^1(F_q). Middle group 0 contains infinity as its first point.
inline TorusOrbits torus_orbits(FieldPtr fp, std::size_t nu, std::size_t local_size) {
  const Field& f = *fp;
  const std::uint64_t q1 = f.q() + 1ull;
  require_param(nu >= 1 && q1 % nu == 0, "torus_orbits: nu = " + std::to_string(nu) + " does not divide q+1 = " + std::to_string(q1));
  require_param(local_size >= 1 && nu % local_size == 0,
                "torus_orbits: local_size = " + std::to_string(local_size) + " does not divide nu = " + std::to_string(nu));
  QuadExt e(fp);
  const QuadExtElem zeta = e.pow(e.generator(), f.q() - 1);  // generates the norm-one torus
  const QuadExtElem lam = e.pow(zeta, q1 / nu);
  const QuadExtElem mu = e.pow(zeta, q1 / local_size);

  // Torus element w0 -> sort key for a canonical ordering of P^1: infinity first, then x rep.
  auto key = [&](const QuadExtElem& w) -> std::uint64_t {
    Point p = detail::cayley_inverse(e, w);
    return p.at_infinity ? 0 : 1ull + p.x().rep;
  };

  std::vector<char> used(e.order(), 0);
  std::vector<std::vector<std::vector<QuadExtElem>>> middles;  // middle -> local -> torus elements
  std::vector<std::uint64_t> middle_keys;
  QuadExtElem w = e.one();
  for (std::uint64_t i = 0; i < q1; ++i, w = e.mul(w, zeta)) {
    if (used[e.index(w)]) continue;
    std::vector<QuadExtElem> orbit;
    QuadExtElem v = w;
    for (std::size_t j = 0; j < nu; ++j, v = e.mul(v, lam)) {
      used[e.index(v)] = 1;
      orbit.push_back(v);
    }
    std::vector<char> lused(e.order(), 0);
    std::vector<std::vector<QuadExtElem>> locals;
    for (const auto& o : orbit) {
      if (lused[e.index(o)]) continue;
      std::vector<QuadExtElem> lg;
      QuadExtElem u = o;
      for (std::size_t j = 0; j < local_size; ++j, u = e.mul(u, mu)) {
        lused[e.index(u)] = 1;
        lg.push_back(u);
      }
      std::sort(lg.begin(), lg.end(), [&](auto& a, auto& b) { return key(a) < key(b); });
      locals.push_back(std::move(lg));
    }
    std::sort(locals.begin(), locals.end(), [&](auto& a, auto& b) { return key(a.front()) < key(b.front()); });
    middle_keys.push_back(key(locals.front().front()));
    middles.push_back(std::move(locals));
  }
  std::vector<std::size_t> order(middles.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return middle_keys[a] < middle_keys[b]; });

  TorusOrbits out;
  Hierarchy& h = out.hierarchy;
  h.nu = nu;
  h.local_size = local_size;
  for (auto mi : order) {
    Group mg;
    std::vector<Group> lgs;
    for (const auto& lg : middles[mi]) {
      Group idx;
      for (const auto& v : lg) {
        idx.push_back(out.points.size());
        mg.push_back(out.points.size());
        out.points.push_back(detail::cayley_inverse(e, v));
      }
      lgs.push_back(std::move(idx));
    }
    h.middle_groups.push_back(std::move(mg));
    h.local_groups.push_back(std::move(lgs));
  }

  // x -> C^{-1}(lambda^i C(x)) as a matrix over F_q, normalized by its first nonzero entry.
  const QuadExtElem th = e.theta(), thq = e.frobenius(th);
  QuadExtElem g = e.one();
  for (std::size_t i = 0; i < nu; ++i, g = e.mul(g, lam)) {
    // C = [[1, -th], [1, -thq]], D = diag(g, 1), Cinv ~ [[thq, -th], [1, -1]].
    QuadExtElem dc[2][2] = {{g, e.neg(e.mul(g, th))}, {e.one(), e.neg(thq)}};
    QuadExtElem ci[2][2] = {{thq, e.neg(th)}, {e.one(), e.neg(e.one())}};
    QuadExtElem m[2][2];
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) m[r][c] = e.add(e.mul(ci[r][0], dc[0][c]), e.mul(ci[r][1], dc[1][c]));
    QuadExtElem norm = e.zero();
    for (int r = 0; r < 2 && e.is_zero(norm); ++r)
      for (int c = 0; c < 2 && e.is_zero(norm); ++c)
        if (!e.is_zero(m[r][c])) norm = m[r][c];
    QuadExtElem ninv = e.inv(norm);
    Fe ent[4];
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) {
        QuadExtElem v = e.mul(m[r][c], ninv);
        if (!e.in_base(v)) throw InvariantError("torus_orbits: Mobius map not defined over F_q");
        ent[2 * r + c] = v.a;
      }
    out.group.push_back(Mobius{ent[0], ent[1], ent[2], ent[3]});
  }
  return out;
}

/// Affine points (x, z) with z^{q0} + z = x^{q0+1}, x != 0, ordered by x then z.
inline std::vector<Point> hermitian_points(const Field& f) {
  std::uint32_t q0 = 1;
  while (q0 * q0 < f.q()) ++q0;
  require_param(q0 * q0 == f.q(), "hermitian_points: q = " + std::to_string(f.q()) + " is not a square");
  // Trace-like map z -> z^{q0} + z, inverted by table.
  std::vector<std::vector<Fe>> pre(f.q());
  for (std::uint32_t r = 0; r < f.q(); ++r) {
    Fe z{r};
    pre[f.add(f.pow(z, q0), z).rep].push_back(z);
  }
  std::vector<Point> pts;
  for (std::uint32_t r = 1; r < f.q(); ++r) {
    Fe x{r};
    Fe rhs = f.pow(x, q0 + 1);
    for (Fe z : pre[rhs.rep]) pts.push_back(Point{{{"x", x}, {"z", z}}, false});
  }
  return pts;
}

/// Middle groups: fibers of (x^{(a+1)(b+1)}, z); local groups: fibers of (x^{a+1}, z).
inline Hierarchy hermitian_hierarchy(const Field& f, const std::vector<Point>& pts, std::size_t a, std::size_t b) {
  std::uint32_t q0 = 1;
  while (q0 * q0 < f.q()) ++q0;
  require_param(q0 * q0 == f.q(), "hermitian_hierarchy: q is not a square");
  require_param(a >= 1 && b >= 1, "hermitian_hierarchy: a, b must be >= 1");
  require_param((q0 + 1) % ((a + 1) * (b + 1)) == 0,
                "hermitian_hierarchy: (a+1)(b+1) = " + std::to_string((a + 1) * (b + 1)) +
                    " does not divide q0+1 = " + std::to_string(q0 + 1));
  const std::size_t nu = (a + 1) * (b + 1);
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::size_t> mid_index;
  std::vector<std::map<std::uint32_t, std::size_t>> loc_index;
  Hierarchy h;
  h.nu = nu;
  h.local_size = a + 1;
  h.fiber_terms = b;
  h.r1 = a * b;
  h.rho1 = a + 3;
  h.r2 = a;
  h.rho2 = 2;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    Fe x = pts[i].x(), z = pts[i].get("z");
    auto mk = std::make_pair(f.pow(x, nu).rep, z.rep);
    auto [it, fresh] = mid_index.emplace(mk, h.middle_groups.size());
    if (fresh) {
      h.middle_groups.emplace_back();
      h.local_groups.emplace_back();
      h.local_invariant.emplace_back();
      loc_index.emplace_back();
    }
    const std::size_t g = it->second;
    h.middle_groups[g].push_back(i);
    Fe y = f.pow(x, a + 1);
    auto [lt, lfresh] = loc_index[g].emplace(y.rep, h.local_groups[g].size());
    if (lfresh) {
      h.local_groups[g].emplace_back();
      h.local_invariant[g].push_back(y);
    }
    h.local_groups[g][lt->second].push_back(i);
  }
  h.validate(pts.size());
  return h;
}

struct AvailabilitySet {
  std::vector<Point> points;  // F* by rep
  Hierarchy h1, h2;
};

namespace detail {

inline Hierarchy coset_hierarchy(const Field& f, std::size_t nu, std::size_t local_size, std::uint64_t moving_exp) {
  Hierarchy h;
  h.nu = nu;
  h.local_size = local_size;
  h.moving_exp = moving_exp;
  for (const auto& mid : subgroup_cosets(f, nu)) {
    Group mg;
    for (Fe e : mid) mg.push_back(e.rep - 1);
    std::map<std::uint32_t, std::size_t> li;
    std::vector<Group> lgs;
    for (Fe e : mid) {
      auto [it, fresh] = li.emplace(f.pow(e, local_size).rep, lgs.size());
      if (fresh) lgs.emplace_back();
      lgs[it->second].push_back(e.rep - 1);
    }
    h.middle_groups.push_back(std::move(mg));
    h.local_groups.push_back(std::move(lgs));
  }
  return h;
}

}  // namespace detail

/// Two hierarchies on F*: cosets of orders (s1 s2 t2, s2) and (s1 s2 t1, s1).
inline AvailabilitySet availability_hierarchies(const Field& f, std::size_t s1, std::size_t s2, std::size_t t1,
                                                std::size_t t2, std::size_t c) {
  require_param(s1 >= 2 && s2 >= 2 && t1 >= 2 && t2 >= 2 && c >= 1, "availability: s_i, t_i must be >= 2 and c >= 1");
  require_param(static_cast<std::uint64_t>(c) * s1 * s2 * t1 * t2 == f.q() - 1ull,
                "availability: q-1 = " + std::to_string(f.q() - 1) + " != c*s1*s2*t1*t2");
  require_param(std::gcd(s1, s2) == 1, "availability: gcd(s1, s2) != 1");
  require_param(std::gcd(t1, t2) == 1, "availability: gcd(t1, t2) != 1");
  AvailabilitySet out;
  for (std::uint32_t r = 1; r < f.q(); ++r) out.points.push_back(Point::line(Fe{r}));
  out.h1 = detail::coset_hierarchy(f, s1 * s2 * t2, s2, s1);
  out.h2 = detail::coset_hierarchy(f, s1 * s2 * t1, s1, s2);
  out.h1.r1 = (s1 - 1) * (s2 - 1) * (t1 - 1);
  out.h2.r1 = (s1 - 1) * (s2 - 1) * (t2 - 1);
  out.h1.r2 = s2 - 1;
  out.h2.r2 = s1 - 1;
  out.h1.rho2 = out.h2.rho2 = 2;
  return out;
}

}  // namespace hlrc
