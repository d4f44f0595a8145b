#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "hlrc/decode.hpp"

using namespace hlrc;

namespace {

std::size_t pos_of(const EvalCode& c, std::uint32_t x) {
  for (std::size_t i = 0; i < c.n(); ++i)
    if (!c.points[i].at_infinity && c.points[i].x().rep == x) return i;
  throw std::runtime_error("no point");
}

Vec random_message(const EvalCode& c, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> d(0, c.field->q() - 1);
  Vec m(c.k());
  for (auto& x : m) x = Fe{d(rng)};
  return m;
}

const EvalCode& f37() {
  static const EvalCode c = construct_rs_hlrc(field_create(37, 1), 3, 2, 2, 36);
  return c;
}

const EvalCode& q27() {
  static const EvalCode c = construct_projline_qplus1(field_create(3, 3), 6, 1, 2);
  return c;
}

const EvalCode& herm() {
  static const EvalCode c = construct_hermitian_hlrc(field_create(2, 6), 2, 2, 1);
  return c;
}

const EvalCode& rho2() {
  static const EvalCode c = construct_rs_hlrc_rho2(field_create(37, 1), 2, 3, 2, 1, 36);
  return c;
}

const EvalCode& avail() {
  static const EvalCode c = construct_rs_availability(field_create(41, 2), 7, 3, 4, 5, 4, 1);
  return c;
}

}  // namespace

TEST(LocalRepair, WorkedExampleAtEight) {
  const auto& c = f37();
  auto f = c.field;
  Vec cw = encode(c, Vec(12, f->one()));
  const std::size_t p8 = pos_of(c, 8);
  EXPECT_EQ(cw[p8], Fe{20});
  Decoder dec(c);
  auto r = dec.local_repair(erase_at(cw, {p8}), p8);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->value, Fe{20});
  EXPECT_EQ(r->access.size(), 3u);
  std::set<std::uint32_t> acc;
  for (auto a : r->access) acc.insert(c.points[a].x().rep);
  EXPECT_EQ(acc, (std::set<std::uint32_t>{11, 26, 29}));
  EXPECT_EQ(r->interpolant, Poly({Fe{17}, Fe{17}, Fe{17}}));
}

TEST(LocalRepair, ZeroCodewordAndLimits) {
  const auto& c = f37();
  Vec z(36, c.field->zero());
  Decoder dec(c);
  EXPECT_EQ(dec.local_repair(erase_at(z, {5}), 5)->value, c.field->zero());
  const auto& lg = c.hierarchy().local_groups[0][0];
  EXPECT_FALSE(dec.local_repair(erase_at(z, {lg[0], lg[1]}), lg[0]));
  EXPECT_THROW(dec.local_repair(erase_at(z, {}), 3), UsageError);
}

TEST(LocalRepair, RandomSingleErasureAllConstructions) {
  std::mt19937_64 rng(21);
  for (const EvalCode* c : {&f37(), &q27(), &herm(), &rho2(), &avail()}) {
    Decoder dec(*c);
    for (int t = 0; t < 200; ++t) {
      Vec cw = encode(*c, random_message(*c, rng));
      std::size_t p = rng() % c->n();
      for (std::size_t h = 0; h < c->hierarchies.size(); ++h) {
        auto r = dec.local_repair(erase_at(cw, {p}), p, h);
        ASSERT_TRUE(r) << c->claims.tag;
        EXPECT_EQ(r->value, cw[p]) << c->claims.tag << " pos " << p;
        EXPECT_EQ(r->access.size(), c->hierarchy(h).r2);
      }
    }
  }
}

TEST(LocalRepair, InfinitePointOfProjline) {
  const auto& c = q27();
  ASSERT_TRUE(c.points[0].at_infinity);
  std::mt19937_64 rng(5);
  Decoder dec(c);
  for (int t = 0; t < 50; ++t) {
    Vec cw = encode(c, random_message(c, rng));
    EXPECT_EQ(dec.local_repair(erase_at(cw, {0}), 0)->value, cw[0]);
    // Repair a neighbour of infinity using the infinite symbol.
    const auto& lg = c.hierarchy().local_groups[0][0];
    const std::size_t other = lg[1];
    auto r = dec.local_repair(erase_at(cw, {other}), other);
    ASSERT_TRUE(r);
    EXPECT_EQ(r->value, cw[other]);
  }
}

TEST(MiddleRepair, FiveErasuresInD1) {
  const auto& c = f37();
  auto f = c.field;
  Vec cw = encode(c, Vec(12, f->one()));
  std::vector<std::size_t> pat;
  for (std::uint32_t x : {1u, 6u, 36u, 31u, 8u}) pat.push_back(pos_of(c, x));
  Decoder dec(c);
  auto r = dec.middle_repair(erase_at(cw, pat), 0);
  ASSERT_TRUE(r);
  ASSERT_EQ(r->values.size(), 5u);
  const auto& d1 = c.hierarchy().middle_groups[0];
  for (auto a : r->access) EXPECT_NE(std::find(d1.begin(), d1.end(), a), d1.end());
  // 2(1+x+x^2)(1+x^4) evaluated at the erased points.
  for (auto [pos, v] : r->values) {
    EXPECT_EQ(v, cw[pos]);
    Fe x = c.points[pos].x();
    Fe expect = f->mul(Fe{2}, f->mul(f->add(f->add(f->one(), x), f->mul(x, x)), f->add(f->one(), f->pow(x, 4))));
    EXPECT_EQ(v, expect);
  }
  auto fw = dec.middle_repair_fiberwise(erase_at(cw, pat), 0);
  ASSERT_TRUE(fw);
  EXPECT_EQ(fw->values, r->values);
}

TEST(MiddleRepair, ZeroErasures) {
  const auto& c = f37();
  auto r = Decoder(c).middle_repair(erase_at(Vec(36, c.field->zero()), {}), 1);
  ASSERT_TRUE(r);
  EXPECT_TRUE(r->values.empty());
}

TEST(MiddleRepair, OnePerLocalGroupAgreesWithLocal) {
  const auto& c = f37();
  std::mt19937_64 rng(8);
  Decoder dec(c);
  for (int t = 0; t < 50; ++t) {
    Vec cw = encode(c, random_message(c, rng));
    const std::size_t g = rng() % 3;
    std::vector<std::size_t> pat;
    for (const auto& lg : c.hierarchy().local_groups[g]) pat.push_back(lg[rng() % lg.size()]);
    auto w = erase_at(cw, pat);
    auto mr = dec.middle_repair(w, g);
    ASSERT_TRUE(mr);
    for (auto p : pat) EXPECT_EQ(dec.local_repair(w, p)->value, mr->values.at(p));
  }
}

TEST(MiddleRepair, AllPatternsUpToRho1MinusOne) {
  // Exhaustive over all <= 5-erasure patterns in D1 for one random codeword.
  const auto& c = f37();
  std::mt19937_64 rng(9);
  Vec cw = encode(c, random_message(c, rng));
  Decoder dec(c);
  const auto& d1 = c.hierarchy().middle_groups[0];
  std::size_t checked = 0;
  for (std::uint32_t mask = 1; mask < (1u << 12); ++mask) {
    if (__builtin_popcount(mask) > 5) continue;
    std::vector<std::size_t> pat;
    for (std::size_t i = 0; i < 12; ++i)
      if (mask >> i & 1) pat.push_back(d1[i]);
    auto w = erase_at(cw, pat);
    auto r = dec.middle_repair(w, 0);
    ASSERT_TRUE(r);
    for (auto [p, v] : r->values) EXPECT_EQ(v, cw[p]);
    auto fw = dec.middle_repair_fiberwise(w, 0);
    if (fw) EXPECT_EQ(fw->values, r->values);
    ++checked;
  }
  EXPECT_EQ(checked, 1585u);
}

TEST(MiddleRepair, HermitianFourErasures) {
  const auto& c = herm();
  std::mt19937_64 rng(10);
  Decoder dec(c);
  Vec cw = encode(c, random_message(c, rng));
  const std::size_t g = 17;
  const auto& grp = c.hierarchy().middle_groups[g];
  for (std::uint32_t mask = 1; mask < (1u << 9); ++mask) {
    if (__builtin_popcount(mask) != 4) continue;
    std::vector<std::size_t> pat;
    for (std::size_t i = 0; i < 9; ++i)
      if (mask >> i & 1) pat.push_back(grp[i]);
    auto r = dec.middle_repair(erase_at(cw, pat), g);
    ASSERT_TRUE(r);
    for (auto [p, v] : r->values) EXPECT_EQ(v, cw[p]);
  }
}

TEST(GlobalDecode, SeventeenErasures) {
  const auto& c = f37();
  std::mt19937_64 rng(11);
  Decoder dec(c);
  std::vector<std::size_t> idx(36);
  std::iota(idx.begin(), idx.end(), 0);
  for (int t = 0; t < 300; ++t) {
    Vec m = random_message(c, rng);
    Vec cw = encode(c, m);
    std::shuffle(idx.begin(), idx.end(), rng);
    std::vector<std::size_t> pat(idx.begin(), idx.begin() + 17);
    auto r = dec.global_decode(erase_at(cw, pat));
    ASSERT_TRUE(r);
    EXPECT_EQ(r->codeword, cw);
    EXPECT_EQ(r->message, m);
  }
  Vec cw = encode(c, random_message(c, rng));
  EXPECT_EQ(dec.global_decode(erase_at(cw, {}))->codeword, cw);
}

TEST(GlobalDecode, BeyondDistanceNeverWrong) {
  const auto& c = f37();
  std::mt19937_64 rng(12);
  Decoder dec(c);
  std::vector<std::size_t> idx(36);
  std::iota(idx.begin(), idx.end(), 0);
  int failures = 0;
  for (int t = 0; t < 300; ++t) {
    Vec cw = encode(c, random_message(c, rng));
    std::shuffle(idx.begin(), idx.end(), rng);
    const std::size_t e = 18 + rng() % 10;
    std::vector<std::size_t> pat(idx.begin(), idx.begin() + e);
    auto w = erase_at(cw, pat);
    auto r = dec.global_decode(w);
    if (!r) {
      ++failures;
      continue;
    }
    EXPECT_EQ(r->codeword, cw);
  }
  EXPECT_GT(failures, 0);
}

TEST(Hierarchical, SingleErasureIsLocal) {
  const auto& c = f37();
  std::mt19937_64 rng(13);
  Decoder dec(c);
  for (std::size_t p = 0; p < 36; ++p) {
    Vec cw = encode(c, random_message(c, rng));
    auto [res, rep] = dec.hierarchical_decode(erase_at(cw, {p}));
    ASSERT_TRUE(res);
    EXPECT_EQ(*res, cw);
    EXPECT_EQ(rep.entries.at(p).level, Level::Local);
    EXPECT_EQ(rep.entries.at(p).access.size(), 3u);
    EXPECT_TRUE(dec.report_consistent(rep));
  }
}

TEST(Hierarchical, FiveErasurePatternUsesMiddleAndLocal) {
  const auto& c = f37();
  Vec cw = encode(c, Vec(12, c.field->one()));
  std::vector<std::size_t> pat;
  for (std::uint32_t x : {1u, 6u, 36u, 31u, 8u}) pat.push_back(pos_of(c, x));
  Decoder dec(c);
  auto [res, rep] = dec.hierarchical_decode(erase_at(cw, pat));
  ASSERT_TRUE(res);
  EXPECT_EQ(*res, cw);
  EXPECT_TRUE(dec.report_consistent(rep));
  // x = 8 is the only erasure in its local group; the other four fill one local group.
  EXPECT_EQ(rep.entries.at(pos_of(c, 8)).level, Level::Local);
  for (std::uint32_t x : {1u, 6u, 36u, 31u}) EXPECT_EQ(rep.entries.at(pos_of(c, x)).level, Level::Middle);
  // With local repair disabled the whole pattern goes through the middle code.
  auto [res2, rep2] = dec.hierarchical_decode(erase_at(cw, pat), 0, Policy{false, true, true});
  ASSERT_TRUE(res2);
  for (auto p : pat) EXPECT_EQ(rep2.entries.at(p).level, Level::Middle);
}

TEST(Hierarchical, OverloadedGroupGoesGlobal) {
  const auto& c = f37();
  std::mt19937_64 rng(14);
  Vec cw = encode(c, random_message(c, rng));
  const auto& d1 = c.hierarchy().middle_groups[0];
  std::vector<std::size_t> pat(d1.begin(), d1.begin() + 8);
  Decoder dec(c);
  auto [res, rep] = dec.hierarchical_decode(erase_at(cw, pat));
  ASSERT_TRUE(res);
  EXPECT_EQ(*res, cw);
  bool any_global = false;
  for (auto p : pat) any_global |= rep.entries.at(p).level == Level::Global;
  EXPECT_TRUE(any_global);
  EXPECT_TRUE(dec.report_consistent(rep));
}

TEST(Hierarchical, RoundTripWithinLocalGuarantee) {
  std::mt19937_64 rng(15);
  for (const EvalCode* c : {&f37(), &q27(), &herm(), &rho2()}) {
    Decoder dec(*c);
    const auto& h = c->hierarchy();
    for (int t = 0; t < 100; ++t) {
      Vec cw = encode(*c, random_message(*c, rng));
      std::vector<std::size_t> pat;
      for (const auto& lgs : h.local_groups)
        for (const auto& lg : lgs)
          if (rng() % 3 == 0) {
            std::vector<std::size_t> tmp = lg;
            std::shuffle(tmp.begin(), tmp.end(), rng);
            pat.insert(pat.end(), tmp.begin(), tmp.begin() + 1 + rng() % (h.rho2 - 1));
          }
      auto [res, rep] = dec.hierarchical_decode(erase_at(cw, pat));
      ASSERT_TRUE(res) << c->claims.tag;
      EXPECT_EQ(*res, cw);
      for (auto p : pat) EXPECT_EQ(rep.entries.at(p).level, Level::Local);
      EXPECT_TRUE(dec.report_consistent(rep));
    }
  }
}

TEST(Hierarchical, MiddleAgreesWithGlobal) {
  const auto& c = q27();
  std::mt19937_64 rng(16);
  Decoder dec(c);
  for (int t = 0; t < 100; ++t) {
    Vec cw = encode(c, random_message(c, rng));
    const auto& grp = c.hierarchy().middle_groups[rng() % 2];
    std::vector<std::size_t> tmp = grp;
    std::shuffle(tmp.begin(), tmp.end(), rng);
    std::vector<std::size_t> pat(tmp.begin(), tmp.begin() + 1 + rng() % 8);
    auto w = erase_at(cw, pat);
    auto g = dec.global_decode(w);
    const std::size_t gi = &grp == &c.hierarchy().middle_groups[0] ? 0 : 1;
    auto m = dec.middle_repair(w, gi);
    if (g && m)
      for (auto [p, v] : m->values) EXPECT_EQ(v, g->codeword[p]);
  }
}

TEST(Availability, BothHierarchiesDisjointAccess) {
  const auto& c = avail();
  std::mt19937_64 rng(17);
  Decoder dec(c);
  for (int t = 0; t < 100; ++t) {
    Vec cw = encode(c, random_message(c, rng));
    const std::size_t p = rng() % c.n();
    auto w = erase_at(cw, {p});
    auto a1 = dec.availability_repair(w, p, 1);
    auto a2 = dec.availability_repair(w, p, 2);
    ASSERT_TRUE(a1 && a2);
    EXPECT_EQ(a1->value, cw[p]);
    EXPECT_EQ(a2->value, cw[p]);
    EXPECT_EQ(a1->access.size(), 2u);
    EXPECT_EQ(a2->access.size(), 6u);
    for (auto x : a1->access) EXPECT_EQ(std::count(a2->access.begin(), a2->access.end(), x), 0);
    auto au = dec.availability_repair(w, p, 0);
    EXPECT_EQ(au->hierarchy, 1u);
  }
}

TEST(Availability, BlockedFirstHierarchyFallsBack) {
  const auto& c = avail();
  std::mt19937_64 rng(18);
  Decoder dec(c);
  Vec cw = encode(c, random_message(c, rng));
  const std::size_t p = 100;
  const auto loc = c.hierarchy(0).locate(c.n());
  const auto& lg = c.hierarchy(0).local_groups[loc[p].first][loc[p].second];
  auto w = erase_at(cw, lg);
  auto r = dec.availability_repair(w, p, 2);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->value, cw[p]);
  EXPECT_EQ(r->hierarchy, 2u);
  EXPECT_EQ(r->level, Level::Local);
  auto z = dec.availability_repair(erase_at(Vec(c.n(), c.field->zero()), {p}), p, 0);
  EXPECT_EQ(z->value, c.field->zero());
}

TEST(Decoder, RejectsWrongLength) {
  const auto& c = f37();
  Decoder dec(c);
  EXPECT_THROW(dec.global_decode(ErasedWord(5)), UsageError);
  EXPECT_THROW(dec.availability_repair(erase_at(Vec(36, c.field->zero()), {0}), 0, 1), UsageError);
}
