#pragma once

// Univariate polynomials and rational functions over GF(q).

#include <optional>
#include <string>
#include <vector>

#include "hlrc/galois.hpp"

namespace hlrc {

class Poly {
 public:
  static constexpr int kMinusInf = -1;

  Poly() = default;
  explicit Poly(std::vector<Fe> c) : c_(std::move(c)) { trim(); }

  static Poly constant(Fe c) { return Poly({c}); }
  static Poly monomial(const Field& f, Fe c, std::size_t deg) {
    std::vector<Fe> v(deg + 1, f.zero());
    v[deg] = c;
    return Poly(std::move(v));
  }
  static Poly x(const Field& f) { return Poly({f.zero(), f.one()}); }

  /// -1 for the zero polynomial.
  int degree() const { return c_.empty() ? kMinusInf : static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Fe>& coeffs() const { return c_; }
  Fe coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Fe{0}; }
  Fe lead() const { return c_.empty() ? Fe{0} : c_.back(); }

  Fe eval(const Field& f, Fe x) const {
    Fe acc = f.zero();
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = f.add(f.mul(acc, x), *it);
    return acc;
  }

  friend bool operator==(const Poly&, const Poly&) = default;

 private:
  void trim() {
    while (!c_.empty() && c_.back().rep == 0) c_.pop_back();
  }
  std::vector<Fe> c_;
};

inline Poly padd(const Field& f, const Poly& a, const Poly& b) {
  std::vector<Fe> r(std::max(a.coeffs().size(), b.coeffs().size()), f.zero());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = f.add(a.coeff(i), b.coeff(i));
  return Poly(std::move(r));
}

inline Poly pneg(const Field& f, const Poly& a) {
  std::vector<Fe> r = a.coeffs();
  for (auto& c : r) c = f.neg(c);
  return Poly(std::move(r));
}

inline Poly psub(const Field& f, const Poly& a, const Poly& b) { return padd(f, a, pneg(f, b)); }

inline Poly pscale(const Field& f, Fe s, const Poly& a) {
  std::vector<Fe> r = a.coeffs();
  for (auto& c : r) c = f.mul(c, s);
  return Poly(std::move(r));
}

inline Poly pmul(const Field& f, const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  std::vector<Fe> r(a.coeffs().size() + b.coeffs().size() - 1, f.zero());
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    if (a.coeffs()[i].rep == 0) continue;
    for (std::size_t j = 0; j < b.coeffs().size(); ++j)
      r[i + j] = f.add(r[i + j], f.mul(a.coeffs()[i], b.coeffs()[j]));
  }
  return Poly(std::move(r));
}

inline Poly ppow(const Field& f, Poly a, std::uint64_t e) {
  Poly r = Poly::constant(f.one());
  while (e) {
    if (e & 1) r = pmul(f, r, a);
    e >>= 1;
    if (e) a = pmul(f, a, a);
  }
  return r;
}

/// (quotient, remainder).
inline std::pair<Poly, Poly> pdivmod(const Field& f, const Poly& a, const Poly& b) {
  if (b.is_zero()) throw DomainError("poly: division by zero polynomial");
  std::vector<Fe> rem = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {Poly(), a};
  std::vector<Fe> quo(a.degree() - db + 1, f.zero());
  const Fe lc_inv = f.inv(b.lead());
  for (int d = a.degree(); d >= db; --d) {
    Fe c = f.mul(rem[d], lc_inv);
    if (c.rep == 0) continue;
    quo[d - db] = c;
    for (int i = 0; i <= db; ++i) rem[d - db + i] = f.sub(rem[d - db + i], f.mul(c, b.coeffs()[i]));
  }
  return {Poly(std::move(quo)), Poly(std::move(rem))};
}

inline Poly pmonic(const Field& f, const Poly& a) {
  if (a.is_zero()) return a;
  return pscale(f, f.inv(a.lead()), a);
}

/// Monic gcd.
inline Poly pgcd(const Field& f, Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = pdivmod(f, a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return pmonic(f, a);
}

/// Lagrange interpolation through (xs[i], ys[i]); xs distinct.
inline Poly interpolate(const Field& f, const std::vector<Fe>& xs, const std::vector<Fe>& ys) {
  if (xs.size() != ys.size()) throw UsageError("interpolate: length mismatch");
  Poly acc;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    Poly basis = Poly::constant(f.one());
    Fe denom = f.one();
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (j == i) continue;
      basis = pmul(f, basis, Poly({f.neg(xs[j]), f.one()}));
      denom = f.mul(denom, f.sub(xs[i], xs[j]));
    }
    acc = padd(f, acc, pscale(f, f.div(ys[i], denom), basis));
  }
  return acc;
}

inline std::string to_string(const Poly& p) {
  if (p.is_zero()) return "0";
  std::string s;
  for (int i = p.degree(); i >= 0; --i) {
    Fe c = p.coeff(i);
    if (c.rep == 0) continue;
    if (!s.empty()) s += " + ";
    if (i == 0 || c.rep != 1) s += std::to_string(c.rep);
    if (i >= 1) s += (i == 0 || c.rep != 1) ? "*x" : "x";
    if (i >= 2) s += "^" + std::to_string(i);
  }
  return s;
}

/// num/den with monic den and gcd(num, den) = 1.
class RationalFunc {
 public:
  RationalFunc() = default;
  RationalFunc(const Field& f, Poly num, Poly den) {
    if (den.is_zero()) throw DomainError("rational: zero denominator");
    Poly g = pgcd(f, num, den);
    if (g.degree() > 0) {
      num = pdivmod(f, num, g).first;
      den = pdivmod(f, den, g).first;
    }
    Fe lc_inv = f.inv(den.lead());
    num_ = pscale(f, lc_inv, num);
    den_ = pscale(f, lc_inv, den);
  }
  static RationalFunc poly(const Field& f, Poly p) { return RationalFunc(f, std::move(p), Poly::constant(f.one())); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }

  /// Value at a finite point, nullopt at a pole.
  std::optional<Fe> eval(const Field& f, Fe x) const {
    Fe d = den_.eval(f, x);
    if (d.rep == 0) return std::nullopt;
    return f.div(num_.eval(f, x), d);
  }

  /// Value at infinity by degree comparison, nullopt at a pole.
  std::optional<Fe> eval_infinity(const Field& f) const {
    if (num_.degree() < den_.degree()) return f.zero();
    if (num_.degree() == den_.degree()) return f.div(num_.lead(), den_.lead());
    return std::nullopt;
  }

  /// Pole order at infinity (negative for a zero there).
  int pole_order_infinity() const { return num_.degree() - den_.degree(); }

  friend bool operator==(const RationalFunc&, const RationalFunc&) = default;

 private:
  Poly num_;
  Poly den_;
};

inline RationalFunc rmul(const Field& f, const RationalFunc& a, const RationalFunc& b) {
  return RationalFunc(f, pmul(f, a.num(), b.num()), pmul(f, a.den(), b.den()));
}

inline RationalFunc radd(const Field& f, const RationalFunc& a, const RationalFunc& b) {
  return RationalFunc(f, padd(f, pmul(f, a.num(), b.den()), pmul(f, b.num(), a.den())),
                      pmul(f, a.den(), b.den()));
}

inline RationalFunc rpow(const Field& f, const RationalFunc& a, std::uint64_t e) {
  return RationalFunc(f, ppow(f, a.num(), e), ppow(f, a.den(), e));
}

}  // namespace hlrc
