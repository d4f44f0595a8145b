#include <gtest/gtest.h>

#include <random>
#include <set>

#include "hlrc/poly.hpp"

using namespace hlrc;

namespace {

Poly random_poly(const Field& f, int deg, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> d(0, f.q() - 1);
  std::vector<Fe> c(deg + 1);
  for (auto& x : c) x = Fe{d(rng)};
  if (c.back().rep == 0) c.back() = f.one();
  return Poly(c);
}

}  // namespace

TEST(Poly, TrimAndDegree) {
  EXPECT_EQ(Poly().degree(), -1);
  EXPECT_EQ(Poly({Fe{1}, Fe{0}, Fe{0}}).degree(), 0);
  EXPECT_TRUE(Poly({Fe{0}}).is_zero());
}

TEST(Poly, InterpolationRoundTrip) {
  std::mt19937_64 rng(9);
  for (auto fp : {field_create(37, 1), field_create(3, 3), field_create(2, 6)}) {
    const Field& f = *fp;
    for (int t = 0; t < 40; ++t) {
      const int deg = static_cast<int>(rng() % 8);
      Poly p = random_poly(f, deg, rng);
      std::set<std::uint32_t> used;
      std::vector<Fe> xs, ys;
      while (static_cast<int>(xs.size()) < deg + 1 + static_cast<int>(rng() % 3)) {
        std::uint32_t x = rng() % f.q();
        if (!used.insert(x).second) continue;
        xs.push_back(Fe{x});
        ys.push_back(p.eval(f, Fe{x}));
      }
      EXPECT_EQ(interpolate(f, xs, ys), p);
    }
  }
}

TEST(Poly, DivmodAndGcd) {
  auto fp = field_create(41, 1);
  const Field& f = *fp;
  std::mt19937_64 rng(10);
  for (int t = 0; t < 50; ++t) {
    Poly a = random_poly(f, static_cast<int>(rng() % 9), rng), b = random_poly(f, static_cast<int>(rng() % 5), rng);
    auto [q, r] = pdivmod(f, a, b);
    EXPECT_EQ(padd(f, pmul(f, q, b), r), a);
    EXPECT_LT(r.degree(), b.degree());
    Poly c = random_poly(f, 2, rng);
    Poly g = pgcd(f, pmul(f, a, c), pmul(f, b, c));
    EXPECT_TRUE(pdivmod(f, g, pmonic(f, c)).second.is_zero());
    EXPECT_EQ(g.lead(), f.one());
  }
  EXPECT_THROW(pdivmod(f, Poly::x(f), Poly()), DomainError);
}

TEST(Poly, PowMatchesRepeatedProduct) {
  auto fp = field_create(37, 1);
  const Field& f = *fp;
  Poly p({Fe{3}, Fe{1}});
  Poly acc = Poly::constant(f.one());
  for (int e = 0; e < 7; ++e) {
    EXPECT_EQ(ppow(f, p, e), acc);
    acc = pmul(f, acc, p);
  }
}

TEST(Poly, ToString) {
  auto fp = field_create(37, 1);
  Poly p({Fe{17}, Fe{17}, Fe{17}});
  EXPECT_EQ(to_string(p), "17*x^2 + 17*x + 17");
  EXPECT_EQ(to_string(Poly::x(*fp)), "x");
}

TEST(RationalFunc, ReducedMonicAndEval) {
  auto fp = field_create(37, 1);
  const Field& f = *fp;
  // (x^2 - 1) / (2x - 2) = (x + 1) / 2
  Poly num({f.neg(f.one()), f.zero(), f.one()}), den({f.from_int(-2), f.from_int(2)});
  RationalFunc r(f, num, den);
  EXPECT_EQ(r.den(), Poly::constant(f.one()));
  EXPECT_EQ(*r.eval(f, Fe{5}), f.div(Fe{6}, Fe{2}));
  RationalFunc s(f, Poly::constant(f.one()), Poly({f.neg(Fe{3}), f.one()}));
  EXPECT_FALSE(s.eval(f, Fe{3}));
  EXPECT_EQ(*s.eval_infinity(f), f.zero());
  EXPECT_EQ(s.pole_order_infinity(), -1);
  RationalFunc t(f, Poly({Fe{1}, Fe{4}}), Poly({Fe{1}, Fe{2}}));
  EXPECT_EQ(*t.eval_infinity(f), Fe{2});
  EXPECT_FALSE(RationalFunc::poly(f, Poly::x(f)).eval_infinity(f));
  EXPECT_THROW(RationalFunc(f, num, Poly()), DomainError);
}

TEST(RationalFunc, FieldOpsAgreeWithPointwise) {
  auto fp = field_create(41, 1);
  const Field& f = *fp;
  std::mt19937_64 rng(12);
  for (int t = 0; t < 30; ++t) {
    RationalFunc a(f, random_poly(f, 3, rng), random_poly(f, 2, rng));
    RationalFunc b(f, random_poly(f, 2, rng), random_poly(f, 3, rng));
    auto sum = radd(f, a, b), prod = rmul(f, a, b), sq = rpow(f, a, 2);
    for (std::uint32_t x = 0; x < 41; ++x) {
      auto va = a.eval(f, Fe{x}), vb = b.eval(f, Fe{x});
      if (!va || !vb) continue;
      EXPECT_EQ(*sum.eval(f, Fe{x}), f.add(*va, *vb));
      EXPECT_EQ(*prod.eval(f, Fe{x}), f.mul(*va, *vb));
      EXPECT_EQ(*sq.eval(f, Fe{x}), f.mul(*va, *va));
    }
  }
}
