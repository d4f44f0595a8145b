#pragma once

// Exact arithmetic in GF(p^m). An element is an integer `rep` whose base-p
// digits, least significant first, are the coefficients of its polynomial
// representative.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "hlrc/error.hpp"

namespace hlrc {

struct Fe {
  std::uint32_t rep = 0;
  friend constexpr auto operator<=>(const Fe&, const Fe&) = default;
};

struct FieldSpec {
  std::uint32_t p = 0;
  std::uint32_t m = 0;
  std::vector<std::uint32_t> modulus;  // monic, lowest degree first, size m + 1
  std::uint32_t q = 0;
  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

namespace detail {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

inline std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

// Dense polynomials over GF(p) used only while choosing the modulus.
using PPoly = std::vector<std::uint64_t>;

inline void ptrim(PPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::uint64_t pinv(std::uint64_t a, std::uint64_t p) {
  std::uint64_t r = 1, e = p - 2;
  a %= p;
  while (e) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r;
}

inline PPoly pmod(PPoly a, const PPoly& f, std::uint64_t p) {
  ptrim(a);
  const std::size_t df = f.size() - 1;
  const std::uint64_t lc_inv = pinv(f.back(), p);
  while (a.size() >= f.size()) {
    std::uint64_t c = a.back() * lc_inv % p;
    std::size_t shift = a.size() - 1 - df;
    for (std::size_t i = 0; i <= df; ++i) a[shift + i] = (a[shift + i] + (p - c) * f[i]) % p;
    ptrim(a);
  }
  return a;
}

inline PPoly pmulmod(const PPoly& a, const PPoly& b, const PPoly& f, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  PPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  return pmod(std::move(r), f, p);
}

inline PPoly pgcd(PPoly a, PPoly b, std::uint64_t p) {
  ptrim(a);
  ptrim(b);
  while (!b.empty()) {
    PPoly r = pmod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Ben-Or: f of degree m is irreducible iff gcd(f, x^{p^i} - x) = 1 for i <= m/2.
inline bool irreducible(const PPoly& f, std::uint64_t p) {
  const std::size_t m = f.size() - 1;
  if (m == 1) return true;
  PPoly h = pmod(PPoly{0, 1}, f, p);
  for (std::size_t i = 1; i <= m / 2; ++i) {
    // h <- h^p mod f
    PPoly acc{1}, base = h;
    std::uint64_t e = p;
    while (e) {
      if (e & 1) acc = pmulmod(acc, base, f, p);
      base = pmulmod(base, base, f, p);
      e >>= 1;
    }
    h = acc;
    PPoly g = h;
    g.resize(std::max<std::size_t>(g.size(), 2), 0);
    g[1] = (g[1] + p - 1) % p;
    ptrim(g);
    if (g.empty()) return false;
    if (pgcd(f, g, p).size() > 1) return false;
  }
  return true;
}

}  // namespace detail

class Field;
using FieldPtr = std::shared_ptr<const Field>;

class Field {
 public:
  static constexpr std::uint32_t kTableLimit = 1u << 16;
  static constexpr std::uint32_t kMaxOrder = 1u << 20;

  /// Lexicographically smallest monic irreducible modulus of degree m over GF(p).
  /// Ordering: the non-leading coefficients read as a base-p integer with the
  /// x^{m-1} coefficient most significant.
  static FieldPtr create(std::uint32_t p, std::uint32_t m) {
    require_param(detail::is_prime(p), "field: p = " + std::to_string(p) + " is not prime");
    require_param(m >= 1, "field: extension degree must be >= 1");
    const std::uint64_t q = detail::ipow(p, m);
    require_param(q <= kMaxOrder, "field: q = p^m exceeds 2^20");

    static std::mutex mu;
    static std::map<std::pair<std::uint32_t, std::uint32_t>, FieldPtr> cache;
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find({p, m}); it != cache.end()) return it->second;

    FieldSpec spec;
    spec.p = p;
    spec.m = m;
    spec.q = static_cast<std::uint32_t>(q);
    const std::uint64_t count = detail::ipow(p, m);  // candidates for low coefficients
    bool found = false;
    for (std::uint64_t code = 0; code < count && !found; ++code) {
      detail::PPoly f(m + 1, 0);
      std::uint64_t c = code;
      for (std::uint32_t i = 0; i < m; ++i) {
        f[i] = c % p;
        c /= p;
      }
      f[m] = 1;
      if (m > 1 && f[0] == 0) continue;  // divisible by x
      if (detail::irreducible(f, p)) {
        spec.modulus.assign(f.begin(), f.end());
        found = true;
      }
    }
    if (!found) throw InvariantError("field: no irreducible polynomial found");
    auto field = FieldPtr(new Field(std::move(spec)));
    cache.emplace(std::make_pair(p, m), field);
    return field;
  }

  const FieldSpec& spec() const { return spec_; }
  std::uint32_t p() const { return spec_.p; }
  std::uint32_t m() const { return spec_.m; }
  std::uint32_t q() const { return spec_.q; }
  bool uses_tables() const { return !exp_.empty(); }

  Fe zero() const { return Fe{0}; }
  Fe one() const { return Fe{1}; }

  Fe element(std::uint64_t rep) const {
    if (rep >= spec_.q) throw UsageError("field: rep " + std::to_string(rep) + " out of range");
    return Fe{static_cast<std::uint32_t>(rep)};
  }

  /// Image of an integer under Z -> GF(p) -> GF(q).
  Fe from_int(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(spec_.p);
    if (r < 0) r += spec_.p;
    return Fe{static_cast<std::uint32_t>(r)};
  }

  bool contains(Fe a) const { return a.rep < spec_.q; }

  Fe add(Fe a, Fe b) const {
    if (spec_.p == 2) return Fe{a.rep ^ b.rep};
    if (spec_.m == 1) {
      std::uint32_t s = a.rep + b.rep;
      return Fe{s >= spec_.p ? s - spec_.p : s};
    }
    std::uint32_t r = 0, scale = 1, x = a.rep, y = b.rep;
    for (std::uint32_t i = 0; i < spec_.m; ++i) {
      std::uint32_t d = x % spec_.p + y % spec_.p;
      if (d >= spec_.p) d -= spec_.p;
      r += d * scale;
      scale *= spec_.p;
      x /= spec_.p;
      y /= spec_.p;
    }
    return Fe{r};
  }

  Fe neg(Fe a) const {
    if (spec_.p == 2 || a.rep == 0) return a;
    if (spec_.m == 1) return Fe{spec_.p - a.rep};
    std::uint32_t r = 0, scale = 1, x = a.rep;
    for (std::uint32_t i = 0; i < spec_.m; ++i) {
      std::uint32_t d = x % spec_.p;
      r += (d == 0 ? 0 : spec_.p - d) * scale;
      scale *= spec_.p;
      x /= spec_.p;
    }
    return Fe{r};
  }

  Fe sub(Fe a, Fe b) const { return add(a, neg(b)); }

  Fe mul(Fe a, Fe b) const {
    if (a.rep == 0 || b.rep == 0) return Fe{0};
    if (!exp_.empty()) return Fe{exp_[log_[a.rep] + log_[b.rep]]};
    return poly_mul(a, b);
  }

  Fe inv(Fe a) const {
    if (a.rep == 0) throw DomainError("field: inverse of zero");
    if (!exp_.empty()) return Fe{exp_[(spec_.q - 1 - log_[a.rep]) % (spec_.q - 1)]};
    return pow(a, spec_.q - 2);
  }

  Fe div(Fe a, Fe b) const { return mul(a, inv(b)); }

  /// Multiplication modulo the defining polynomial, bypassing the tables.
  Fe mul_reference(Fe a, Fe b) const { return poly_mul(a, b); }

  /// Square-and-multiply; exponent reduced mod q-1 for nonzero bases.
  Fe pow(Fe a, std::uint64_t e) const {
    if (a.rep == 0) return e == 0 ? one() : zero();
    e %= (spec_.q - 1);
    if (!exp_.empty()) return Fe{exp_[(static_cast<std::uint64_t>(log_[a.rep]) * e) % (spec_.q - 1)]};
    Fe r = one();
    while (e) {
      if (e & 1) r = poly_mul(r, a);
      a = poly_mul(a, a);
      e >>= 1;
    }
    return r;
  }

  Fe pow_signed(Fe a, std::int64_t e) const {
    if (e >= 0) return pow(a, static_cast<std::uint64_t>(e));
    return pow(inv(a), static_cast<std::uint64_t>(-e));
  }

  /// Multiplicative order of a nonzero element.
  std::uint64_t order(Fe a) const {
    if (a.rep == 0) throw DomainError("field: order of zero");
    std::uint64_t ord = spec_.q - 1;
    for (auto l : detail::prime_factors(spec_.q - 1)) {
      while (ord % l == 0 && pow(a, ord / l) == one()) ord /= l;
    }
    return ord;
  }

  /// Smallest-rep element of multiplicative order q-1.
  Fe primitive_element() const { return primitive_; }

  /// Discrete log base primitive_element(); table regime only falls back to search.
  std::uint32_t log(Fe a) const {
    if (a.rep == 0) throw DomainError("field: log of zero");
    if (!log_.empty()) return log_[a.rep];
    Fe acc = one();
    for (std::uint32_t i = 0; i < spec_.q - 1; ++i) {
      if (acc == a) return i;
      acc = mul(acc, primitive_);
    }
    throw InvariantError("field: log not found");
  }

 private:
  explicit Field(FieldSpec spec) : spec_(std::move(spec)) {
    const auto primes = detail::prime_factors(spec_.q - 1);
    for (std::uint32_t r = 1; r < spec_.q; ++r) {
      Fe g{r};
      bool ok = true;
      for (auto l : primes) {
        if (pow(g, (spec_.q - 1) / l) == one()) {
          ok = false;
          break;
        }
      }
      if (ok) {
        primitive_ = g;
        break;
      }
    }
    if (spec_.q == 2) primitive_ = one();
    if (spec_.q <= kTableLimit) {
      const std::uint32_t n = spec_.q - 1;
      exp_.assign(2 * static_cast<std::size_t>(n) + 1, 0);
      log_.assign(spec_.q, 0);
      Fe acc = one();
      for (std::uint32_t i = 0; i < n; ++i) {
        exp_[i] = acc.rep;
        log_[acc.rep] = i;
        acc = poly_mul(acc, primitive_);
      }
      for (std::uint32_t i = n; i < exp_.size(); ++i) exp_[i] = exp_[i - n];
    }
  }

  Fe poly_mul(Fe a, Fe b) const {
    const std::uint32_t p = spec_.p, m = spec_.m;
    if (m == 1) return Fe{static_cast<std::uint32_t>(static_cast<std::uint64_t>(a.rep) * b.rep % p)};
    std::vector<std::uint64_t> x(m), y(m), r(2 * m - 1, 0);
    std::uint32_t u = a.rep, v = b.rep;
    for (std::uint32_t i = 0; i < m; ++i) {
      x[i] = u % p;
      y[i] = v % p;
      u /= p;
      v /= p;
    }
    for (std::uint32_t i = 0; i < m; ++i)
      for (std::uint32_t j = 0; j < m; ++j) r[i + j] = (r[i + j] + x[i] * y[j]) % p;
    for (std::size_t d = r.size() - 1; d >= m; --d) {
      std::uint64_t c = r[d];
      if (c == 0) continue;
      r[d] = 0;
      for (std::uint32_t i = 0; i < m; ++i)
        r[d - m + i] = (r[d - m + i] + (p - c) * spec_.modulus[i]) % p;
    }
    std::uint32_t out = 0, scale = 1;
    for (std::uint32_t i = 0; i < m; ++i) {
      out += static_cast<std::uint32_t>(r[i]) * scale;
      scale *= p;
    }
    return Fe{out};
  }

  FieldSpec spec_;
  Fe primitive_{1};
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;
};

inline FieldPtr field_create(std::uint32_t p, std::uint32_t m) { return Field::create(p, m); }

/// Accepts a prime power q and returns GF(q).
inline FieldPtr field_of_order(std::uint64_t q) {
  require_param(q >= 2, "field: q must be >= 2");
  auto primes = detail::prime_factors(q);
  require_param(primes.size() == 1, "field: q = " + std::to_string(q) + " is not a prime power");
  std::uint32_t m = 0;
  std::uint64_t t = q;
  while (t > 1) {
    t /= primes[0];
    ++m;
  }
  return Field::create(static_cast<std::uint32_t>(primes[0]), m);
}

inline Fe primitive_element(const Field& f) { return f.primitive_element(); }

/// All n-th roots of unity, sorted by rep.
inline std::vector<Fe> roots_of_unity(const Field& f, std::uint64_t n) {
  require_param(n >= 1 && (f.q() - 1) % n == 0,
                "roots_of_unity: n = " + std::to_string(n) + " does not divide q-1 = " + std::to_string(f.q() - 1));
  const Fe g = f.pow(f.primitive_element(), (f.q() - 1) / n);
  std::vector<Fe> out;
  out.reserve(n);
  Fe acc = f.one();
  for (std::uint64_t i = 0; i < n; ++i) {
    out.push_back(acc);
    acc = f.mul(acc, g);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Cosets of the order-h subgroup of F*, ordered by minimal representative;
/// coset 0 is the subgroup itself and each coset is sorted by rep.
inline std::vector<std::vector<Fe>> subgroup_cosets(const Field& f, std::uint64_t h) {
  require_param(h >= 1 && (f.q() - 1) % h == 0,
                "subgroup_cosets: h = " + std::to_string(h) + " does not divide q-1 = " + std::to_string(f.q() - 1));
  const auto sub = roots_of_unity(f, h);
  std::vector<char> seen(f.q(), 0);
  std::vector<std::vector<Fe>> out;
  for (std::uint32_t r = 1; r < f.q(); ++r) {
    if (seen[r]) continue;
    std::vector<Fe> coset;
    coset.reserve(h);
    for (Fe s : sub) {
      Fe e = f.mul(Fe{r}, s);
      seen[e.rep] = 1;
      coset.push_back(e);
    }
    std::sort(coset.begin(), coset.end());
    out.push_back(std::move(coset));
  }
  return out;
}

/// Field-bound element for expression-style code; mixing fields is a usage error.
class Elem {
 public:
  Elem(FieldPtr f, Fe v) : f_(std::move(f)), v_(v) {
    if (!f_->contains(v_)) throw UsageError("Elem: value outside field");
  }
  Fe value() const { return v_; }
  const FieldPtr& field() const { return f_; }

  friend Elem operator+(const Elem& a, const Elem& b) { return {a.f_, a.f_->add(a.v_, check(a, b).v_)}; }
  friend Elem operator-(const Elem& a, const Elem& b) { return {a.f_, a.f_->sub(a.v_, check(a, b).v_)}; }
  friend Elem operator*(const Elem& a, const Elem& b) { return {a.f_, a.f_->mul(a.v_, check(a, b).v_)}; }
  friend Elem operator/(const Elem& a, const Elem& b) { return {a.f_, a.f_->div(a.v_, check(a, b).v_)}; }
  Elem operator-() const { return {f_, f_->neg(v_)}; }
  Elem inv() const { return {f_, f_->inv(v_)}; }
  Elem pow(std::uint64_t e) const { return {f_, f_->pow(v_, e)}; }
  friend bool operator==(const Elem& a, const Elem& b) { return check(a, b).v_ == a.v_; }

 private:
  static const Elem& check(const Elem& a, const Elem& b) {
    if (a.f_ != b.f_ && !(a.f_->spec() == b.f_->spec()))
      throw UsageError("Elem: operands belong to different fields");
    return b;
  }
  FieldPtr f_;
  Fe v_;
};

// ---------------------------------------------------------------------------
// Degree-2 extension as pairs (a, b) = a + b*theta over the base field.

struct QuadExtElem {
  Fe a, b;
  friend constexpr auto operator<=>(const QuadExtElem&, const QuadExtElem&) = default;
};

/// GF(q^2) realized over GF(q). Odd characteristic: theta^2 = s with s the
/// smallest non-square. Characteristic 2: theta^2 + theta = s with s the
/// smallest element making the quadratic irreducible.
class QuadExt {
 public:
  explicit QuadExt(FieldPtr base) : f_(std::move(base)) {
    const Field& f = *f_;
    char2_ = f.p() == 2;
    std::vector<char> hit(f.q(), 0);
    for (std::uint32_t r = 0; r < f.q(); ++r) {
      Fe x{r};
      hit[char2_ ? f.add(f.mul(x, x), x).rep : f.mul(x, x).rep] = 1;
    }
    for (std::uint32_t r = 0; r < f.q(); ++r) {
      if (!hit[r]) {
        s_ = Fe{r};
        break;
      }
    }
  }

  const FieldPtr& base() const { return f_; }
  Fe nonresidue() const { return s_; }
  bool char2() const { return char2_; }
  std::uint64_t order() const { return static_cast<std::uint64_t>(f_->q()) * f_->q(); }

  QuadExtElem embed(Fe a) const { return {a, f_->zero()}; }
  QuadExtElem zero() const { return {f_->zero(), f_->zero()}; }
  QuadExtElem one() const { return {f_->one(), f_->zero()}; }
  QuadExtElem theta() const { return {f_->zero(), f_->one()}; }
  bool is_zero(const QuadExtElem& z) const { return z.a.rep == 0 && z.b.rep == 0; }
  bool in_base(const QuadExtElem& z) const { return z.b.rep == 0; }

  QuadExtElem add(const QuadExtElem& x, const QuadExtElem& y) const {
    return {f_->add(x.a, y.a), f_->add(x.b, y.b)};
  }
  QuadExtElem sub(const QuadExtElem& x, const QuadExtElem& y) const {
    return {f_->sub(x.a, y.a), f_->sub(x.b, y.b)};
  }
  QuadExtElem neg(const QuadExtElem& x) const { return {f_->neg(x.a), f_->neg(x.b)}; }
  QuadExtElem scale(Fe c, const QuadExtElem& x) const { return {f_->mul(c, x.a), f_->mul(c, x.b)}; }

  QuadExtElem mul(const QuadExtElem& x, const QuadExtElem& y) const {
    const Field& f = *f_;
    Fe ac = f.mul(x.a, y.a), bd = f.mul(x.b, y.b);
    Fe cross = f.add(f.mul(x.a, y.b), f.mul(x.b, y.a));
    if (char2_) return {f.add(ac, f.mul(bd, s_)), f.add(cross, bd)};
    return {f.add(ac, f.mul(bd, s_)), cross};
  }

  /// z^q.
  QuadExtElem frobenius(const QuadExtElem& z) const {
    if (char2_) return {f_->add(z.a, z.b), z.b};
    return {z.a, f_->neg(z.b)};
  }

  /// z^{q+1}, an element of the base field.
  Fe norm(const QuadExtElem& z) const {
    QuadExtElem n = mul(z, frobenius(z));
    if (n.b.rep != 0) throw InvariantError("quad_ext: norm left the base field");
    return n.a;
  }

  QuadExtElem inv(const QuadExtElem& z) const {
    if (is_zero(z)) throw DomainError("quad_ext: inverse of zero");
    return scale(f_->inv(norm(z)), frobenius(z));
  }

  QuadExtElem div(const QuadExtElem& x, const QuadExtElem& y) const { return mul(x, inv(y)); }

  QuadExtElem pow(QuadExtElem z, std::uint64_t e) const {
    QuadExtElem r = one();
    while (e) {
      if (e & 1) r = mul(r, z);
      z = mul(z, z);
      e >>= 1;
    }
    return r;
  }

  std::uint64_t index(const QuadExtElem& z) const { return z.a.rep + static_cast<std::uint64_t>(z.b.rep) * f_->q(); }
  QuadExtElem from_index(std::uint64_t i) const {
    return {Fe{static_cast<std::uint32_t>(i % f_->q())}, Fe{static_cast<std::uint32_t>(i / f_->q())}};
  }

  std::uint64_t mult_order(const QuadExtElem& z) const {
    if (is_zero(z)) throw DomainError("quad_ext: order of zero");
    std::uint64_t ord = order() - 1;
    for (auto l : detail::prime_factors(order() - 1))
      while (ord % l == 0 && pow(z, ord / l) == one()) ord /= l;
    return ord;
  }

  /// Smallest-index generator of the multiplicative group (order q^2 - 1).
  QuadExtElem generator() const {
    const auto primes = detail::prime_factors(order() - 1);
    for (std::uint64_t i = 1; i < order(); ++i) {
      QuadExtElem z = from_index(i);
      bool ok = true;
      for (auto l : primes) {
        if (pow(z, (order() - 1) / l) == one()) {
          ok = false;
          break;
        }
      }
      if (ok) return z;
    }
    throw InvariantError("quad_ext: no generator");
  }

 private:
  FieldPtr f_;
  Fe s_{0};
  bool char2_ = false;
};

inline QuadExt quad_ext(FieldPtr f) { return QuadExt(std::move(f)); }

}  // namespace hlrc
