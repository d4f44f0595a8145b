#pragma once

// H-LRC codes as evaluation codes: function bases, generator matrices, claims.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hlrc/bounds.hpp"
#include "hlrc/curves.hpp"
#include "hlrc/galois.hpp"
#include "hlrc/linalg.hpp"
#include "hlrc/poly.hpp"
#include "hlrc/singleton.hpp"

namespace hlrc {

/// Monomial part times named rational factors in x, each raised to a power.
struct BasisFn {
  std::map<std::string, std::uint64_t> mono;
  std::vector<std::pair<std::string, std::uint64_t>> factors;

  static BasisFn monomial(std::uint64_t ex) { return BasisFn{{{"x", ex}}, {}}; }
  friend bool operator==(const BasisFn&, const BasisFn&) = default;
};

struct Claims {
  std::size_t n = 0, k = 0;
  std::int64_t d_lower = 0;
  std::int64_t d_upper_bound = 0;
  std::vector<Locality> locality;  // outermost level first
  std::string tag;
  std::map<std::string, std::int64_t> params;
  friend bool operator==(const Claims&, const Claims&) = default;
};

struct EvalCode {
  FieldPtr field;
  std::vector<Point> points;
  std::map<std::string, RationalFunc> functions;
  std::vector<BasisFn> basis;
  std::vector<Hierarchy> hierarchies;
  Mat G;
  Claims claims;
  std::optional<std::uint64_t> infinity_shift;  // value at infinity is (x^{-shift} F)(infinity)
  std::string invariant;

  std::size_t n() const { return points.size(); }
  std::size_t k() const { return basis.size(); }
  const Hierarchy& hierarchy(std::size_t i = 0) const { return hierarchies.at(i); }
};

/// Value of one basis function at one point; nullopt at a pole.
inline std::optional<Fe> eval_basis(const Field& f, const std::map<std::string, RationalFunc>& funcs, const BasisFn& b,
                                    const Point& p, std::optional<std::uint64_t> infinity_shift) {
  if (!p.at_infinity) {
    Fe v = f.one();
    for (const auto& [var, ex] : b.mono) v = f.mul(v, f.pow(p.get(var), ex));
    for (const auto& [name, ex] : b.factors) {
      auto it = funcs.find(name);
      if (it == funcs.end()) throw UsageError("basis: unknown function '" + name + "'");
      auto fv = it->second.eval(f, p.x());
      if (!fv) return std::nullopt;
      v = f.mul(v, f.pow(*fv, ex));
    }
    return v;
  }
  if (!infinity_shift) throw UsageError("basis: infinite point without an infinity rule");
  Poly num = Poly::constant(f.one()), den = Poly::constant(f.one());
  for (const auto& [var, ex] : b.mono) {
    if (var != "x") throw UsageError("basis: infinity rule needs a function of x alone");
    num = pmul(f, num, Poly::monomial(f, f.one(), ex));
  }
  for (const auto& [name, ex] : b.factors) {
    const auto& r = funcs.at(name);
    num = pmul(f, num, ppow(f, r.num(), ex));
    den = pmul(f, den, ppow(f, r.den(), ex));
  }
  den = pmul(f, den, Poly::monomial(f, f.one(), *infinity_shift));
  return RationalFunc(f, num, den).eval_infinity(f);
}

/// k x n matrix of basis evaluations; throws on poles or rank deficiency.
inline Mat build_generator(const FieldPtr& fp, const std::vector<Point>& points,
                           const std::map<std::string, RationalFunc>& funcs, const std::vector<BasisFn>& basis,
                           std::optional<std::uint64_t> infinity_shift) {
  const Field& f = *fp;
  Mat g(fp, basis.size(), points.size());
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < points.size(); ++j) {
      auto v = eval_basis(f, funcs, basis[i], points[j], infinity_shift);
      if (!v) throw InvariantError("build_generator: basis function " + std::to_string(i) + " has a pole at point " + std::to_string(j));
      g(i, j) = *v;
    }
  if (rank(g) != basis.size())
    throw InvariantError("build_generator: generator rank " + std::to_string(rank(g)) + " < " + std::to_string(basis.size()) +
                         " basis functions");
  return g;
}

inline Vec encode(const EvalCode& code, const Vec& message) {
  if (message.size() != code.k())
    throw UsageError("encode: message length " + std::to_string(message.size()) + " != k = " + std::to_string(code.k()));
  return vec_mat(*code.field, message, code.G);
}

namespace detail {

inline void finish(EvalCode& c) {
  c.G = build_generator(c.field, c.points, c.functions, c.basis, c.infinity_shift);
  c.claims.n = c.points.size();
  c.claims.k = c.basis.size();
  for (const auto& h : c.hierarchies) h.validate(c.points.size());
  std::int64_t ub = INT64_MAX;
  for (const auto& h : c.hierarchies) {
    std::vector<Locality> lv{{static_cast<std::int64_t>(h.r1), static_cast<std::int64_t>(h.rho1)},
                             {static_cast<std::int64_t>(h.r2), static_cast<std::int64_t>(h.rho2)}};
    ub = std::min(ub, bound_hlrc(c.claims.n, c.claims.k, lv));
  }
  c.claims.d_upper_bound = ub;
}

inline void set_levels(Hierarchy& h, std::size_t r1, std::size_t rho1, std::size_t r2, std::size_t rho2) {
  h.r1 = r1;
  h.rho1 = rho1;
  h.r2 = r2;
  h.rho2 = rho2;
}

}  // namespace detail

/// Two-level RS-like code with basis f^k y^j x^i, y = x^{r2+1}, f = x^{(s+1)(r2+1)}.
/// With `flat` the basis is x^{(r2+1) j + i}, j < s t: a one-level LRC of the same dimension.
inline EvalCode construct_rs_hlrc(const FieldPtr& fp, std::size_t r2, std::size_t s, std::size_t t, std::size_t n,
                                  bool flat = false) {
  require_param(r2 >= 1 && s >= 1 && t >= 1, "rs-hlrc: need r2, s, t >= 1");
  const std::size_t L = r2 + 1, nu = (s + 1) * L, r1 = s * r2;
  EvalCode c;
  c.field = fp;
  c.claims.params = {{"q", fp->q()}, {"r2", r2}, {"s", s}, {"t", t}, {"n", n}};
  if (!flat) {
    const std::int64_t d = static_cast<std::int64_t>(n) - static_cast<std::int64_t>(t * (r1 + r2 + 1 + s)) +
                           static_cast<std::int64_t>(r2 + 3);
    require_param(d >= 1, "rs-hlrc: claimed distance " + std::to_string(d) + " is not positive");
    auto ps = rs_evaluation_set(*fp, nu, L, n);
    c.points = std::move(ps.points);
    ps.hierarchy.fiber_terms = s;
    detail::set_levels(ps.hierarchy, r1, r2 + 3, r2, 2);
    c.hierarchies.push_back(std::move(ps.hierarchy));
    for (std::size_t k = 0; k < t; ++k)
      for (std::size_t j = 0; j < s; ++j)
        for (std::size_t i = 0; i < r2; ++i) c.basis.push_back(BasisFn::monomial(nu * k + L * j + i));
    c.claims.tag = "rs-hlrc";
    c.claims.d_lower = d;
    c.claims.locality = {{r1, r2 + 3}, {r2, 2}};
    detail::finish(c);
    return c;
  }
  const std::size_t k = s * t * r2;
  const std::int64_t d = static_cast<std::int64_t>(n) - static_cast<std::int64_t>(L * (s * t - 1) + r2 - 1);
  require_param(d >= 2, "rs-hlrc --flat: claimed distance " + std::to_string(d) + " is too small");
  require_param(n % L == 0 && (fp->q() - 1) % n == 0, "rs-hlrc --flat: need (r2+1) | n and n | q-1");
  auto ps = rs_evaluation_set(*fp, n, L, n);
  c.points = std::move(ps.points);
  detail::set_levels(ps.hierarchy, k, static_cast<std::size_t>(d), r2, 2);
  c.hierarchies.push_back(std::move(ps.hierarchy));
  for (std::size_t j = 0; j < s * t; ++j)
    for (std::size_t i = 0; i < r2; ++i) c.basis.push_back(BasisFn::monomial(L * j + i));
  c.claims.tag = "rs-flat";
  c.claims.params["flat"] = 1;
  c.claims.d_lower = d;
  c.claims.locality = {{r2, 2}};
  detail::finish(c);
  c.claims.d_upper_bound = bound_sb2(n, k, r2);
  return c;
}

/// Local groups of size r2 + rho2 - 1 tolerating rho2 - 1 erasures.
inline EvalCode construct_rs_hlrc_rho2(const FieldPtr& fp, std::size_t r2, std::size_t rho2, std::size_t s, std::size_t t,
                                       std::size_t n) {
  require_param(r2 >= 1 && s >= 1 && t >= 1, "rs-hlrc-rho2: need r2, s, t >= 1");
  require_param(rho2 >= 2, "rs-hlrc-rho2: need rho2 >= 2");
  const std::size_t L = r2 + rho2 - 1, nu = (s + 1) * L, r1 = s * r2;
  const std::int64_t d = static_cast<std::int64_t>(n) - static_cast<std::int64_t>(t * r1) + 1 -
                         static_cast<std::int64_t>((t - 1) * L) - static_cast<std::int64_t>((t * s - 1) * (rho2 - 1));
  require_param(d >= 1, "rs-hlrc-rho2: claimed distance " + std::to_string(d) + " is not positive");
  EvalCode c;
  c.field = fp;
  auto ps = rs_evaluation_set(*fp, nu, L, n);
  c.points = std::move(ps.points);
  ps.hierarchy.fiber_terms = s;
  detail::set_levels(ps.hierarchy, r1, r2 + 2 * rho2 - 1, r2, rho2);
  c.hierarchies.push_back(std::move(ps.hierarchy));
  for (std::size_t k = 0; k < t; ++k)
    for (std::size_t j = 0; j < s; ++j)
      for (std::size_t i = 0; i < r2; ++i) c.basis.push_back(BasisFn::monomial(nu * k + L * j + i));
  c.claims.tag = "rs-hlrc-rho2";
  c.claims.params = {{"q", fp->q()}, {"r2", r2}, {"rho2", rho2}, {"s", s}, {"t", t}, {"n", n}};
  c.claims.d_lower = d;
  c.claims.locality = {{r1, r2 + 2 * rho2 - 1}, {r2, rho2}};
  detail::finish(c);
  return c;
}

// ---------------------------------------------------------------------------
// Torus invariants on the projective line.

/// Sum over the group of sigma(x)^power, as a rational function.
inline RationalFunc orbit_sum(const Field& f, const std::vector<Mobius>& group, std::uint64_t power) {
  RationalFunc acc(f, Poly(), Poly::constant(f.one()));
  for (const auto& m : group) {
    RationalFunc s(f, Poly({m.b, m.a}), Poly({m.d, m.c}));
    acc = radd(f, acc, rpow(f, s, power));
  }
  return acc;
}

/// y = 1/(Y - Y0) with Y = C^{-1}(C(x)^h), C the Cayley map. Constant on the
/// orbits of the order-h torus subgroup, separating them, with no pole on P^1(F_q).
inline RationalFunc cayley_invariant(const FieldPtr& fp, std::uint64_t h) {
  const Field& f = *fp;
  QuadExt e(fp);
  require_param(h >= 2 && (f.q() + 1ull) % h == 0, "cayley_invariant: need h >= 2 dividing q+1");
  const QuadExtElem th = e.theta(), thq = e.frobenius(th);
  auto power_of_linear = [&](const QuadExtElem& root) {
    std::vector<QuadExtElem> p{e.one()};
    for (std::uint64_t i = 0; i < h; ++i) {
      std::vector<QuadExtElem> r(p.size() + 1, e.zero());
      for (std::size_t j = 0; j < p.size(); ++j) {
        r[j + 1] = e.add(r[j + 1], p[j]);
        r[j] = e.sub(r[j], e.mul(root, p[j]));
      }
      p = std::move(r);
    }
    return p;
  };
  const auto A = power_of_linear(th), B = power_of_linear(thq);
  const QuadExtElem kappa = e.sub(th, thq);
  std::vector<Fe> N(h + 1), D(h + 1);
  for (std::size_t i = 0; i <= h; ++i) {
    QuadExtElem n = e.mul(kappa, e.sub(e.mul(thq, A[i]), e.mul(th, B[i])));
    QuadExtElem d = e.mul(kappa, e.sub(A[i], B[i]));
    if (!e.in_base(n) || !e.in_base(d)) throw InvariantError("cayley_invariant: coefficients not in the base field");
    N[i] = n.a;
    D[i] = d.a;
  }
  const Poly Np(N), Dp(D);
  for (std::uint32_t r = 0; r < f.q(); ++r) {
    QuadExtElem y0 = e.embed(Fe{r});
    QuadExtElem v0 = e.div(e.sub(y0, th), e.sub(y0, thq));
    if (e.pow(v0, (f.q() + 1ull) / h) == e.one()) continue;
    return RationalFunc(f, Dp, psub(f, Np, pscale(f, Fe{r}, Dp)));
  }
  throw InvariantError("cayley_invariant: no non-split fiber found");
}

namespace detail {

inline std::optional<Fe> eval_point(const Field& f, const RationalFunc& r, const Point& p) {
  return p.at_infinity ? r.eval_infinity(f) : r.eval(f, p.x());
}

/// Pole-free on all points, constant on each group, distinct across the groups of each family.
inline bool separates(const Field& f, const RationalFunc& r, const std::vector<Point>& pts,
                      const std::vector<std::vector<Group>>& families) {
  std::vector<Fe> val(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    auto v = eval_point(f, r, pts[i]);
    if (!v) return false;
    val[i] = *v;
  }
  for (const auto& fam : families) {
    std::set<std::uint32_t> seen;
    for (const auto& g : fam) {
      for (auto i : g)
        if (val[i] != val[g.front()]) return false;
      if (!seen.insert(val[g.front()].rep).second) return false;
    }
  }
  return true;
}

}  // namespace detail

struct TorusInvariant {
  RationalFunc fn;
  std::string kind;  // "orbit-sum", "power-sum" or "cayley-power"
};

/// First invariant of the order-h subgroup passing the separation checks.
inline TorusInvariant torus_invariant(const FieldPtr& fp, const TorusOrbits& tor, std::size_t h,
                                      const std::vector<std::vector<Group>>& families) {
  const Field& f = *fp;
  std::vector<Mobius> sub;
  const std::size_t step = tor.group.size() / h;
  for (std::size_t i = 0; i < tor.group.size(); i += step) sub.push_back(tor.group[i]);
  RationalFunc cand = orbit_sum(f, sub, 1);
  if (detail::separates(f, cand, tor.points, families)) return {cand, "orbit-sum"};
  cand = orbit_sum(f, sub, 2);
  if (detail::separates(f, cand, tor.points, families)) return {cand, "power-sum"};
  cand = cayley_invariant(fp, h);
  if (detail::separates(f, cand, tor.points, families)) return {cand, "cayley-power"};
  throw InvariantError("torus_invariant: no separating invariant for subgroup of order " + std::to_string(h));
}

/// Length q+1 code on P^1(F_q) from torus orbits.
inline EvalCode construct_projline_qplus1(const FieldPtr& fp, std::size_t r2, std::size_t s, std::size_t t) {
  require_param(r2 >= 1 && s >= 1 && t >= 1, "projline-q1: need r2, s, t >= 1");
  const Field& f = *fp;
  const std::size_t L = r2 + 1, nu = (s + 1) * L, r1 = s * r2, n = f.q() + 1;
  require_param(n % nu == 0, "projline-q1: (s+1)(r2+1) = " + std::to_string(nu) + " does not divide q+1 = " + std::to_string(n));
  const std::int64_t d = static_cast<std::int64_t>(n) - static_cast<std::int64_t>(t * (r1 + r2 + 1 + s)) +
                         static_cast<std::int64_t>(r2 + 3);
  require_param(d >= 1, "projline-q1: claimed distance " + std::to_string(d) + " is not positive");
  auto tor = torus_orbits(fp, nu, L);
  EvalCode c;
  c.field = fp;
  c.points = tor.points;
  Hierarchy h = tor.hierarchy;

  std::vector<std::vector<Group>> local_families(h.local_groups.begin(), h.local_groups.end());
  auto y = torus_invariant(fp, tor, L, local_families);
  auto fi = torus_invariant(fp, tor, nu, {h.middle_groups});
  c.functions["y"] = y.fn;
  c.functions["f"] = fi.fn;
  c.invariant = y.kind == fi.kind ? y.kind : y.kind + "/" + fi.kind;

  for (std::size_t g = 0; g < h.local_groups.size(); ++g) {
    std::vector<Fe> inv;
    for (const auto& lg : h.local_groups[g]) inv.push_back(*detail::eval_point(f, y.fn, c.points[lg.front()]));
    h.local_invariant.push_back(std::move(inv));
  }
  h.fiber_terms = s;
  detail::set_levels(h, r1, r2 + 3, r2, 2);
  c.hierarchies.push_back(std::move(h));
  c.infinity_shift = r2 - 1;
  for (std::size_t k = 0; k < t; ++k)
    for (std::size_t j = 0; j < s; ++j)
      for (std::size_t i = 0; i < r2; ++i) {
        BasisFn b;
        if (i) b.mono["x"] = i;
        if (j) b.factors.push_back({"y", j});
        if (k) b.factors.push_back({"f", k});
        c.basis.push_back(std::move(b));
      }
  c.claims.tag = "projline-q1";
  c.claims.params = {{"q", f.q()}, {"r2", r2}, {"s", s}, {"t", t}};
  c.claims.d_lower = d;
  c.claims.locality = {{r1, r2 + 3}, {r2, 2}};
  detail::finish(c);
  return c;
}

/// Power-map code on the Hermitian curve z^{q0} + z = x^{q0+1}.
inline EvalCode construct_hermitian_hlrc(const FieldPtr& fp, std::size_t a, std::size_t b, std::size_t ell) {
  const Field& f = *fp;
  std::uint32_t q0 = 1;
  while (q0 * q0 < f.q()) ++q0;
  require_param(q0 * q0 == f.q(), "hermitian: q = " + std::to_string(f.q()) + " is not a square");
  require_param(a >= 1 && b >= 1, "hermitian: need a, b >= 1");
  const std::size_t nu = (a + 1) * (b + 1);
  require_param((q0 + 1) % nu == 0,
                "hermitian: (a+1)(b+1) = " + std::to_string(nu) + " does not divide q0+1 = " + std::to_string(q0 + 1));
  const std::size_t e = (q0 + 1) / nu;
  const std::size_t n = static_cast<std::size_t>(q0) * q0 * q0 - q0;
  const std::int64_t d = static_cast<std::int64_t>(n) - static_cast<std::int64_t>(ell * nu) -
                         static_cast<std::int64_t>(q0 * (a * b + b - 2));
  require_param(d >= 1, "hermitian: claimed distance " + std::to_string(d) + " is not positive");

  EvalCode c;
  c.field = fp;
  c.points = hermitian_points(f);
  c.hierarchies.push_back(hermitian_hierarchy(f, c.points, a, b));

  // Quotient-curve basis u^alpha z^beta by increasing pole order.
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> quot;  // (order, alpha, beta)
  for (std::size_t beta = 0; beta < q0; ++beta)
    for (std::size_t alpha = 0; alpha * q0 + beta * e <= ell; ++alpha) quot.emplace_back(alpha * q0 + beta * e, alpha, beta);
  std::sort(quot.begin(), quot.end());
  for (const auto& [ord, alpha, beta] : quot)
    for (std::size_t j = 0; j < b; ++j)
      for (std::size_t i = 0; i < a; ++i) {
        BasisFn bf;
        bf.mono["x"] = alpha * nu + (a + 1) * j + i;
        if (beta) bf.mono["z"] = beta;
        c.basis.push_back(std::move(bf));
      }
  c.claims.tag = "hermitian";
  c.claims.params = {{"q", f.q()}, {"a", a}, {"b", b}, {"ell", ell}, {"t", quot.size()}};
  c.claims.d_lower = d;
  c.claims.locality = {{a * b, a + 3}, {a, 2}};
  detail::finish(c);
  return c;
}

/// RS availability code on F* with the two orthogonal coset hierarchies.
inline EvalCode construct_rs_availability(const FieldPtr& fp, std::size_t s1, std::size_t s2, std::size_t t1, std::size_t t2,
                                          std::size_t cc, std::size_t m) {
  const Field& f = *fp;
  require_param(m >= 1, "rs-avail: need m >= 1");
  auto av = availability_hierarchies(f, s1, s2, t1, t2, cc);
  auto pred = predict_availability(rs_availability_params(cc, s1, s2, t1, t2, m));
  require_param(pred.d_lower >= 1, "rs-avail: claimed distance " + std::to_string(pred.d_lower) + " is not positive");
  const std::uint64_t st = s1 * s2 * t1 * t2;
  std::map<std::uint64_t, std::string> used;
  std::vector<std::uint64_t> exps;
  for (std::size_t i = 1; i <= m; ++i)
    for (std::size_t j1 = 0; j1 + 2 <= s1; ++j1)
      for (std::size_t j2 = 0; j2 + 2 <= s2; ++j2)
        for (std::size_t k1 = 0; k1 + 2 <= t1; ++k1)
          for (std::size_t k2 = 0; k2 + 2 <= t2; ++k2) {
            const std::uint64_t E = st * (i - 1) + s2 * j1 + s1 * j2 + s1 * s2 * t2 * k1 + s1 * s2 * t1 * k2;
            const std::string tag = "(i=" + std::to_string(i) + ",j1=" + std::to_string(j1) + ",j2=" + std::to_string(j2) +
                                    ",k1=" + std::to_string(k1) + ",k2=" + std::to_string(k2) + ")";
            auto [it, fresh] = used.emplace(E % (f.q() - 1), tag);
            if (!fresh)
              throw ParameterError("rs-avail: exponent collision " + std::to_string(E) + " mod q-1 between " + it->second +
                                   " and " + tag);
            exps.push_back(E);
          }
  std::sort(exps.begin(), exps.end());
  EvalCode c;
  c.field = fp;
  c.points = std::move(av.points);
  for (auto E : exps) c.basis.push_back(BasisFn::monomial(E));
  detail::set_levels(av.h1, pred.r11, pred.rho11_lower, s2 - 1, 2);
  detail::set_levels(av.h2, pred.r12, pred.rho12_lower, s1 - 1, 2);
  c.hierarchies = {std::move(av.h1), std::move(av.h2)};
  c.claims.tag = "rs-avail";
  c.claims.params = {{"q", f.q()}, {"s1", s1}, {"s2", s2}, {"t1", t1}, {"t2", t2}, {"c", cc}, {"m", m}};
  c.claims.d_lower = pred.d_lower;
  c.claims.locality = {{pred.r11, pred.rho11_lower}, {pred.r12, pred.rho12_lower}};
  detail::finish(c);
  return c;
}

}  // namespace hlrc
