#include <gtest/gtest.h>

#include <random>
#include <set>

#include "hlrc/construct.hpp"

using namespace hlrc;

namespace {

std::size_t pos_of(const EvalCode& c, std::uint32_t x) {
  for (std::size_t i = 0; i < c.n(); ++i)
    if (!c.points[i].at_infinity && c.points[i].x().rep == x) return i;
  throw std::runtime_error("no point");
}

// True when the values on `grp` agree with a polynomial of degree < deg in (var)^exp.
bool low_degree_on(const Field& f, const EvalCode& c, const Group& grp, const Vec& row, std::size_t deg,
                   std::uint64_t exp = 1) {
  std::vector<Fe> xs, ys;
  for (auto i : grp) {
    xs.push_back(f.pow(c.points[i].x(), exp));
    ys.push_back(row[i]);
  }
  std::vector<Fe> bx(xs.begin(), xs.begin() + deg), by(ys.begin(), ys.begin() + deg);
  Poly p = interpolate(f, bx, by);
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (p.eval(f, xs[i]) != ys[i]) return false;
  return true;
}

}  // namespace

TEST(BuildGenerator, Trivial) {
  auto f = field_create(37, 1);
  std::vector<Point> pts{Point::line(Fe{1}), Point::line(Fe{2}), Point::line(Fe{3})};
  Mat g = build_generator(f, pts, {}, {BasisFn::monomial(0)}, std::nullopt);
  EXPECT_EQ(g.row(0), Vec(3, f->one()));
  Mat v = build_generator(f, pts, {}, {BasisFn::monomial(0), BasisFn::monomial(1), BasisFn::monomial(2)}, std::nullopt);
  EXPECT_NE(determinant(v), f->zero());
  std::map<std::string, RationalFunc> fn{{"r", RationalFunc(*f, Poly::constant(f->one()), Poly({f->neg(Fe{2}), f->one()}))}};
  BasisFn b;
  b.factors.push_back({"r", 1});
  EXPECT_THROW(build_generator(f, pts, fn, {b}, std::nullopt), InvariantError);
  EXPECT_THROW(build_generator(f, pts, {}, {BasisFn::monomial(0), BasisFn::monomial(36)}, std::nullopt), InvariantError);
}

TEST(RsHlrc, F37Claims) {
  auto f = field_create(37, 1);
  auto c = construct_rs_hlrc(f, 3, 2, 2, 36);
  EXPECT_EQ(c.n(), 36u);
  EXPECT_EQ(c.k(), 12u);
  EXPECT_EQ(rank(c.G), 12u);
  EXPECT_EQ(c.claims.d_lower, 18);
  EXPECT_EQ(c.claims.d_upper_bound, 18);
  EXPECT_EQ(c.hierarchy().nu, 12u);
  EXPECT_EQ(c.hierarchy().r1, 6u);
  EXPECT_EQ(c.hierarchy().rho1, 6u);
  EXPECT_EQ(c.claims.tag, "rs-hlrc");
}

TEST(RsHlrc, F37GoldenCodeword) {
  auto f = field_create(37, 1);
  auto c = construct_rs_hlrc(f, 3, 2, 2, 36);
  Vec cw = encode(c, Vec(12, f->one()));
  const std::vector<std::uint32_t> order{1, 6, 36, 31, 8, 11, 29, 26, 27, 14, 10, 23};
  const std::vector<std::uint32_t> expect{12, 24, 4, 13, 20, 4, 7, 0, 4, 17, 0, 30};
  for (std::size_t i = 0; i < order.size(); ++i) EXPECT_EQ(cw[pos_of(c, order[i])].rep, expect[i]) << order[i];
  // Oracle: v(x) = sum of x^{12i+4j+k} evaluated directly.
  for (std::size_t p = 0; p < 36; ++p) {
    Fe x = c.points[p].x(), acc = f->zero();
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 3; ++k) acc = f->add(acc, f->pow(x, 12 * i + 4 * j + k));
    EXPECT_EQ(cw[p], acc);
  }
}

TEST(RsHlrc, EncodeBasics) {
  auto f = field_create(37, 1);
  auto c = construct_rs_hlrc(f, 3, 2, 2, 36);
  EXPECT_EQ(encode(c, Vec(12, f->zero())), Vec(36, f->zero()));
  for (std::size_t i = 0; i < 12; ++i) {
    Vec e(12, f->zero());
    e[i] = f->one();
    EXPECT_EQ(encode(c, e), c.G.row(i));
  }
  EXPECT_THROW(encode(c, Vec(11, f->zero())), UsageError);
}

TEST(RsHlrc, SmallestInstance) {
  auto f = field_create(5, 1);
  auto c = construct_rs_hlrc(f, 1, 1, 1, 4);
  EXPECT_EQ(c.k(), 1u);
  EXPECT_EQ(c.claims.d_lower, 4);
  EXPECT_EQ(c.G.row(0), Vec(4, f->one()));
}

TEST(RsHlrc, Flat) {
  auto f = field_create(37, 1);
  auto c = construct_rs_hlrc(f, 3, 2, 2, 36, true);
  EXPECT_EQ(c.k(), 12u);
  EXPECT_EQ(c.claims.d_lower, 22);
  EXPECT_EQ(c.claims.tag, "rs-flat");
  EXPECT_EQ(c.claims.d_upper_bound, bound_sb2(36, 12, 3));
}

TEST(RsHlrc, RejectsBadParameters) {
  auto f = field_create(37, 1);
  EXPECT_THROW(construct_rs_hlrc(f, 3, 2, 2, 30), ParameterError);
  EXPECT_THROW(construct_rs_hlrc(f, 4, 2, 2, 36), ParameterError);
  EXPECT_THROW(construct_rs_hlrc(f, 3, 2, 4, 36), ParameterError);
  EXPECT_THROW(construct_rs_hlrc(f, 0, 2, 2, 36), ParameterError);
}

TEST(RsHlrc, RowsAreProductsOfFactorRows) {
  auto f = field_create(37, 1);
  auto c = construct_rs_hlrc(f, 3, 2, 2, 36);
  std::size_t row = 0;
  for (int k = 0; k < 2; ++k)
    for (int j = 0; j < 2; ++j)
      for (int i = 0; i < 3; ++i, ++row)
        for (std::size_t p = 0; p < 36; ++p) {
          Fe x = c.points[p].x();
          Fe prod = f->mul(f->pow(f->pow(x, 12), k), f->mul(f->pow(f->pow(x, 4), j), f->pow(x, i)));
          EXPECT_EQ(c.G(row, p), prod);
        }
}

TEST(RsHlrcRho2, Rho2TwoIsRsHlrc) {
  auto f = field_create(37, 1);
  for (auto [r2, s, t, n] : std::vector<std::array<std::size_t, 4>>{{3, 2, 2, 36}, {2, 1, 2, 36}, {1, 2, 3, 36}, {5, 1, 1, 36}}) {
    auto a = construct_rs_hlrc(f, r2, s, t, n);
    auto b = construct_rs_hlrc_rho2(f, r2, 2, s, t, n);
    EXPECT_EQ(a.G, b.G);
    EXPECT_EQ(a.claims.d_lower, b.claims.d_lower);
  }
}

TEST(RsHlrcRho2, LocalGroupsOfFour) {
  auto f = field_create(37, 1);
  auto c = construct_rs_hlrc_rho2(f, 2, 3, 2, 1, 36);
  EXPECT_EQ(c.hierarchy().local_size, 4u);
  EXPECT_EQ(c.hierarchy().rho1, 7u);
  // Every local group restricted code is [4, 2, 3]: any 2 columns have rank 2.
  for (const auto& lgs : c.hierarchy().local_groups)
    for (const auto& lg : lgs)
      for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = a + 1; b < 4; ++b) {
          std::vector<std::size_t> keep;
          for (std::size_t i = 0; i < 4; ++i)
            if (i != a && i != b) keep.push_back(lg[i]);
          EXPECT_EQ(column_rank(c.G, keep), column_rank(c.G, lg));
        }
}

TEST(RsHlrcRho2, ToyGf13Claim) {
  auto f = field_create(13, 1);
  auto c = construct_rs_hlrc_rho2(f, 1, 3, 1, 2, 12);
  EXPECT_EQ(c.k(), 2u);
  // n - t r1 + 1 - (t-1)(r2+rho2-1) - (ts-1)(rho2-1)
  EXPECT_EQ(c.claims.d_lower, 12 - 2 + 1 - 3 - 2);
  EXPECT_EQ(c.claims.d_lower, 6);
}

TEST(Projline, Gf27) {
  auto f = field_create(3, 3);
  auto c = construct_projline_qplus1(f, 6, 1, 1);
  EXPECT_EQ(c.n(), 28u);
  EXPECT_EQ(c.k(), 6u);
  EXPECT_EQ(rank(c.G), 6u);
  EXPECT_EQ(c.claims.d_lower, 23);
  EXPECT_TRUE(c.points[0].at_infinity);
  auto c2 = construct_projline_qplus1(f, 6, 1, 2);
  EXPECT_EQ(c2.k(), 12u);
  EXPECT_EQ(c2.claims.d_lower, 9);
  EXPECT_EQ(rank(c2.G), 12u);
  EXPECT_THROW(construct_projline_qplus1(f, 4, 1, 1), ParameterError);
}

TEST(Projline, InvariantsSeparateGroups) {
  for (auto [q, r2, s] : std::vector<std::array<std::uint32_t, 3>>{{27, 6, 1}, {27, 1, 6}, {31, 3, 3}, {16, 16, 0}, {37, 18, 1}}) {
    if (s == 0) continue;
    auto f = field_of_order(q);
    auto c = construct_projline_qplus1(f, r2, s, 1);
    const auto& h = c.hierarchy();
    const auto& y = c.functions.at("y");
    const auto& fn = c.functions.at("f");
    std::set<std::uint32_t> fvals;
    for (std::size_t g = 0; g < h.middle_groups.size(); ++g) {
      std::set<std::uint32_t> fv, yvals;
      for (auto i : h.middle_groups[g]) fv.insert(detail::eval_point(*f, fn, c.points[i])->rep);
      EXPECT_EQ(fv.size(), 1u);
      fvals.insert(*fv.begin());
      for (const auto& lg : h.local_groups[g]) {
        std::set<std::uint32_t> yv;
        for (auto i : lg) {
          auto v = detail::eval_point(*f, y, c.points[i]);
          ASSERT_TRUE(v);
          yv.insert(v->rep);
        }
        EXPECT_EQ(yv.size(), 1u);
        yvals.insert(*yv.begin());
      }
      EXPECT_EQ(yvals.size(), s + 1u);
    }
    EXPECT_EQ(fvals.size(), h.middle_groups.size());
    EXPECT_FALSE(c.invariant.empty());
  }
}

TEST(Hermitian, RankAndClaims) {
  auto f = field_create(2, 6);
  for (std::size_t ell = 0; ell < 3; ++ell) {
    auto c = construct_hermitian_hlrc(f, 2, 2, ell);
    EXPECT_EQ(c.n(), 504u);
    EXPECT_EQ(rank(c.G), 4u * (ell + 1));
    EXPECT_EQ(c.claims.d_lower, 472 - 9 * static_cast<std::int64_t>(ell));
    EXPECT_EQ(c.claims.params.at("t"), static_cast<std::int64_t>(ell + 1));
  }
  EXPECT_THROW(construct_hermitian_hlrc(f, 3, 3, 0), ParameterError);
}

TEST(Hermitian, MiddleBoundArithmetic) { EXPECT_EQ(bound_sb2(9, 4, 2), 5); }

TEST(Hermitian, LocalRestrictionsLowDegree) {
  auto f = field_create(2, 6);
  auto c = construct_hermitian_hlrc(f, 2, 2, 1);
  const auto& h = c.hierarchy();
  for (std::size_t r = 0; r < c.k(); ++r) {
    Vec row = c.G.row(r);
    const auto& b = c.basis[r];
    const bool from_quotient = b.mono.count("x") == 0 || b.mono.at("x") % 9 == 0;
    for (std::size_t g = 0; g < h.middle_groups.size(); ++g) {
      for (const auto& lg : h.local_groups[g]) EXPECT_TRUE(low_degree_on(*f, c, lg, row, 2));
      std::set<std::uint32_t> mv;
      for (auto i : h.middle_groups[g]) mv.insert(row[i].rep);
      if (from_quotient) EXPECT_EQ(mv.size(), 1u);
    }
  }
}

TEST(Availability, Gf1681) {
  auto f = field_create(41, 2);
  auto c = construct_rs_availability(f, 7, 3, 4, 5, 4, 1);
  EXPECT_EQ(c.k(), 144u);
  EXPECT_EQ(rank(c.G), 144u);
  EXPECT_EQ(c.claims.d_lower, 778);
  EXPECT_EQ(c.hierarchies.size(), 2u);
  EXPECT_EQ(c.hierarchy(0).nu, 105u);
  EXPECT_EQ(c.hierarchy(1).nu, 84u);
  EXPECT_EQ(c.hierarchy(1).r1, 48u);
  EXPECT_EQ(c.hierarchy(1).rho1, 13u);
  std::set<std::uint64_t> ex;
  for (const auto& b : c.basis) {
    EXPECT_LT(b.mono.at("x"), 1680u);
    ex.insert(b.mono.at("x"));
  }
  EXPECT_EQ(ex.size(), 144u);
}

TEST(Availability, LocalRestrictionsLowDegree) {
  auto f = field_create(41, 2);
  auto c = construct_rs_availability(f, 7, 3, 4, 5, 4, 1);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    Vec row = c.G.row(rng() % c.k());
    for (std::size_t hi = 0; hi < 2; ++hi) {
      const auto& h = c.hierarchy(hi);
      const auto& lgs = h.local_groups[rng() % h.local_groups.size()];
      const auto& lg = lgs[rng() % lgs.size()];
      EXPECT_TRUE(low_degree_on(*f, c, lg, row, h.r2, h.moving_exp));
    }
  }
}

TEST(Availability, RejectsCollision) {
  auto f = field_create(41, 2);
  EXPECT_THROW(construct_rs_availability(f, 7, 3, 4, 5, 4, 5), ParameterError);
}
