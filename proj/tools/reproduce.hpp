#pragma once

// End-to-end reproductions of the worked examples, one Check per claim.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hlrc/hlrc.hpp"

namespace hlrc::reproduce {

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

using Checks = std::vector<Check>;

class Timer {
 public:
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count(); }

 private:
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

inline void add(Checks& out, std::string name, bool pass, std::string detail = "") {
  out.push_back({std::move(name), pass, std::move(detail)});
}

inline void add_runtime(Checks& out, const Timer& t, double limit) {
  std::ostringstream s;
  s.precision(3);
  s << t.seconds() << " s (limit " << limit << " s)";
  add(out, "runtime", t.seconds() < limit, s.str());
}

inline std::size_t position_of(const EvalCode& c, std::uint32_t x) {
  for (std::size_t i = 0; i < c.n(); ++i)
    if (!c.points[i].at_infinity && c.points[i].x().rep == x) return i;
  throw UsageError("no point with x = " + std::to_string(x));
}

inline std::string join(const std::vector<std::int64_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

inline Vec random_vec(const Field& f, std::size_t len, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> d(0, f.q() - 1);
  Vec v(len);
  for (auto& x : v) x = Fe{d(rng)};
  return v;
}

// ---------------------------------------------------------------------------

inline Checks f37(unsigned threads = 0) {
  Timer timer;
  Checks out;
  auto c = construct_rs_hlrc(field_create(37, 1), 3, 2, 2, 36);
  const Field& f = *c.field;
  add(out, "rank(G) = 12", rank(c.G) == 12 && c.k() == 12, "rank " + std::to_string(rank(c.G)));

  const std::vector<std::uint32_t> order{1, 6, 36, 31, 8, 11, 29, 26, 27, 14, 10, 23};
  const std::vector<std::int64_t> golden{12, 24, 4, 13, 20, 4, 7, 0, 4, 17, 0, 30};
  Vec cw = encode(c, Vec(12, f.one()));
  std::vector<std::int64_t> got, direct;
  for (auto x : order) {
    got.push_back(cw[position_of(c, x)].rep);
    Fe s = f.zero();
    for (const auto& b : c.basis) s = f.add(s, f.pow(Fe{x}, b.mono.at("x")));
    direct.push_back(s.rep);
  }
  add(out, "all-ones codeword on D1", got == golden && direct == golden, "(" + join(got) + ")");

  Decoder dec(c);
  const std::size_t p8 = position_of(c, 8);
  auto lr = dec.local_repair(erase_at(cw, {p8}), p8);
  bool local_ok = lr && lr->value == Fe{20} && lr->access.size() == 3 && lr->interpolant == Poly({Fe{17}, Fe{17}, Fe{17}});
  if (lr) {
    const auto loc = c.hierarchy().locate(c.n());
    for (auto a : lr->access) local_ok = local_ok && loc[a] == loc[p8];
  }
  add(out, "local repair of x=8", local_ok,
      lr ? "value " + std::to_string(lr->value.rep) + ", " + std::to_string(lr->access.size()) + " reads, interpolant " +
               to_string(lr->interpolant)
         : "failed");

  std::vector<std::size_t> pat;
  for (std::uint32_t x : {1u, 6u, 36u, 31u, 8u}) pat.push_back(position_of(c, x));
  auto mr = dec.middle_repair(erase_at(cw, pat), 0);
  bool mid_ok = mr && mr->values.size() == 5;
  if (mr) {
    const auto& d1 = c.hierarchy().middle_groups[0];
    for (auto a : mr->access) mid_ok = mid_ok && std::find(d1.begin(), d1.end(), a) != d1.end();
    for (auto [p, v] : mr->values) {
      Fe x = c.points[p].x();
      Fe expect = f.mul(Fe{2}, f.mul(f.add(f.add(f.one(), x), f.mul(x, x)), f.add(f.one(), f.pow(x, 4))));
      mid_ok = mid_ok && v == cw[p] && v == expect;
    }
  }
  add(out, "middle repair of 5 erasures in D1", mid_ok, mr ? std::to_string(mr->access.size()) + " reads inside D1" : "failed");

  DistanceOptions opt;
  opt.threads = threads;
  Mat mid = restricted_generator(c.G, c.hierarchy().middle_groups[0]);
  auto md = min_distance_exact(mid, opt);
  add(out, "middle code distance = 6", md.exact && md.upper == 6,
      std::to_string(md.lower) + ".." + std::to_string(md.upper) + " (" + md.method_lower + ")");
  auto d = min_distance_exact(c, opt);
  const bool witness_ok = dec.is_codeword(d.witness) && weight(d.witness) == 18;
  add(out, "full distance = 18", d.exact && d.lower == 18 && d.method_lower == "degree" && witness_ok,
      "lower " + std::to_string(d.lower) + " via " + d.method_lower + ", upper " + std::to_string(d.upper) + " via " +
          d.method_upper);

  auto br = check_optimal(c, d, md);
  add(out, "hierarchical bound equality at d = 18", br.eq4 == 18 && br.full == Verdict::Optimal,
      "bound " + std::to_string(br.eq4) + ", " + to_string(br.full));
  add(out, "middle bound equality at rho1 = 6", br.middle_eq3 == 6 && br.middle == Verdict::Optimal,
      "bound " + std::to_string(br.middle_eq3) + ", " + to_string(br.middle));
  add_runtime(out, timer, 10);
  return out;
}

inline Checks q27(unsigned threads = 0) {
  Timer timer;
  Checks out;
  auto fp = field_create(3, 3);
  auto c = construct_projline_qplus1(fp, 6, 1, 1);
  add(out, "claims [28, 6, 23]", c.claims.n == 28 && c.claims.k == 6 && c.claims.d_lower == 23 && rank(c.G) == 6);
  std::uint64_t work = 0;
  auto bad = detail::first_deficient_subset(c.G, 6, detail::thread_count(threads), work);
  add(out, "all 6-column minors nonsingular", !bad && work == 376740, std::to_string(work) + " minors tested");
  auto c2 = construct_projline_qplus1(fp, 6, 1, 2);
  add(out, "t = 2 claims [28, 12, 9]", c2.claims.n == 28 && c2.claims.k == 12 && c2.claims.d_lower == 9 && rank(c2.G) == 12);
  DistanceOptions opt;
  opt.threads = threads;
  auto rep = verify_locality(c2, opt);
  std::string why = rep.ok() ? "ok" : rep.hierarchies[0].violations.front();
  add(out, "t = 2 verify_locality", rep.ok(), why);
  add_runtime(out, timer, 120);
  return out;
}

inline std::string hermitian_note() {
  return "note: the a = b = 3 table at q0 = 8 is not reproduced because (a+1)(b+1) = 16 does not divide q0+1 = 9; "
         "the a = b = 2 variant is used";
}

inline Checks hermitian8(unsigned threads = 0) {
  Timer timer;
  Checks out;
  auto fp = field_create(2, 6);
  std::vector<EvalCode> codes;
  for (std::size_t ell = 0; ell <= 2; ++ell) codes.push_back(construct_hermitian_hlrc(fp, 2, 2, ell));
  add(out, "n = 504 points", codes[0].n() == 504 && 8 * 8 * 8 - 8 == 504);
  bool rk = true;
  std::string ranks;
  for (std::size_t ell = 0; ell <= 2; ++ell) {
    const auto r = rank(codes[ell].G);
    const auto t = predict_pow(8, 2, 2, 2, static_cast<std::int64_t>(ell)).t;
    rk = rk && r == 4 * static_cast<std::size_t>(t) && codes[ell].k() == r;
    ranks += (ell ? "," : "") + std::to_string(r);
  }
  add(out, "rank(G) = 4t for ell = 0, 1, 2", rk, "ranks " + ranks);

  const auto& c = codes[1];
  DistanceOptions opt;
  opt.threads = threads;
  bool groups_ok = true;
  for (std::size_t g = 0; g < c.hierarchy().middle_groups.size(); ++g) {
    Mat r = restricted_generator(c.G, c.hierarchy().middle_groups[g]);
    DistanceOptions o = opt;
    o.strategy = Strategy::Support;
    auto d = min_distance_exact(r, o);
    groups_ok = groups_ok && r.cols() == 9 && r.rows() == 4 && d.exact && d.upper == 5;
  }
  add(out, "every middle code is [9, 4, 5]", groups_ok, std::to_string(c.hierarchy().middle_groups.size()) + " groups");

  std::mt19937_64 rng(8);
  Decoder dec(c);
  Vec cw = encode(c, random_vec(*fp, c.k(), rng));
  bool local_ok = true;
  for (int i = 0; i < 100; ++i) {
    std::size_t p = rng() % c.n();
    auto lr = dec.local_repair(erase_at(cw, {p}), p);
    local_ok = local_ok && lr && lr->access.size() == 2 && lr->value == cw[p];
  }
  add(out, "local repair reads 2 symbols", local_ok, "100 sampled positions");

  const std::size_t g = rng() % c.hierarchy().middle_groups.size();
  const auto& grp = c.hierarchy().middle_groups[g];
  std::size_t ok = 0, total = 0;
  for (std::uint32_t mask = 0; mask < (1u << 9); ++mask) {
    if (__builtin_popcount(mask) != 4) continue;
    std::vector<std::size_t> pat;
    for (std::size_t i = 0; i < 9; ++i)
      if (mask >> i & 1) pat.push_back(grp[i]);
    auto mr = dec.middle_repair(erase_at(cw, pat), g);
    bool good = mr && mr->values.size() == 4;
    if (mr)
      for (auto [p, v] : mr->values) good = good && v == cw[p];
    ok += good;
    ++total;
  }
  add(out, "all 4-erasure patterns in one middle group", ok == 126 && total == 126,
      std::to_string(ok) + "/" + std::to_string(total) + " in group " + std::to_string(g));
  add_runtime(out, timer, 60);
  return out;
}

inline Checks avail41(unsigned threads = 0) {
  (void)threads;
  Timer timer;
  Checks out;
  auto fp = field_create(41, 2);
  auto c = construct_rs_availability(fp, 7, 3, 4, 5, 4, 1);
  add(out, "rank(G) = 144", rank(c.G) == 144 && c.k() == 144);

  std::vector<std::size_t> sizes, ranks;
  for (const auto& h : c.hierarchies) {
    sizes.push_back(h.nu);
    std::size_t mx = 0;
    for (const auto& g : h.middle_groups) mx = std::max(mx, restricted_generator(c.G, g).rows());
    ranks.push_back(mx);
  }
  add(out, "middle sizes 105 and 84", sizes == std::vector<std::size_t>{105, 84});
  add(out, "restricted ranks 36 and 48", ranks == std::vector<std::size_t>{36, 48},
      "measured " + std::to_string(ranks[0]) + " on the " + std::to_string(sizes[0]) + "-groups and " +
          std::to_string(ranks[1]) + " on the " + std::to_string(sizes[1]) + "-groups");

  std::mt19937_64 rng(41);
  Decoder dec(c);
  bool both = true;
  for (int t = 0; t < 1000; ++t) {
    Vec cw = encode(c, random_vec(*fp, c.k(), rng));
    const std::size_t p = rng() % c.n();
    auto w = erase_at(cw, {p});
    auto a1 = dec.availability_repair(w, p, 1);
    auto a2 = dec.availability_repair(w, p, 2);
    bool good = a1 && a2 && a1->value == cw[p] && a2->value == cw[p] && a1->access.size() == 2 && a2->access.size() == 6;
    if (good) {
      std::set<std::size_t> s1(a1->access.begin(), a1->access.end());
      for (auto x : a2->access) good = good && !s1.count(x) && x != p;
      good = good && !s1.count(p);
    }
    both = both && good;
  }
  add(out, "repair through both hierarchies, disjoint reads", both, "1000 sampled positions");

  const auto& h2 = c.hierarchy(1);
  bool twelve = true;
  Vec cw = encode(c, random_vec(*fp, c.k(), rng));
  for (int t = 0; t < 100; ++t) {
    const std::size_t g = rng() % h2.middle_groups.size();
    std::vector<std::size_t> grp = h2.middle_groups[g];
    std::shuffle(grp.begin(), grp.end(), rng);
    std::vector<std::size_t> pat(grp.begin(), grp.begin() + 12);
    auto mr = dec.middle_repair(erase_at(cw, pat), g, 1);
    bool good = mr && mr->values.size() == 12;
    if (mr)
      for (auto [p, v] : mr->values) good = good && v == cw[p];
    twelve = twelve && good;
  }
  add(out, "12-erasure patterns in a hierarchy-2 middle group", twelve, "100 sampled patterns");

  std::size_t minw = c.n();
  for (int t = 0; t < 1000; ++t) {
    Vec m = random_vec(*fp, c.k(), rng);
    if (std::all_of(m.begin(), m.end(), [](Fe x) { return x.rep == 0; })) m[0] = fp->one();
    minw = std::min(minw, weight(encode(c, m)));
  }
  add(out, "random codewords have weight >= 778", minw >= 778 && c.claims.d_lower == 778,
      "minimum sampled weight " + std::to_string(minw));
  add_runtime(out, timer, 300);
  return out;
}

// Weight distribution of the [6,3] RS code over GF(7) by listing all 343 codewords.
inline std::vector<std::int64_t> rs63_weights_exhaustive() {
  std::vector<std::int64_t> A(7, 0);
  for (int a = 0; a < 7; ++a)
    for (int b = 0; b < 7; ++b)
      for (int e = 0; e < 7; ++e) {
        int w = 0;
        for (int x = 1; x <= 6; ++x) w += (a + b * x + e * x * x) % 7 != 0;
        ++A[w];
      }
  return A;
}

inline Checks gv19(unsigned threads = 0) {
  (void)threads;
  Timer timer;
  Checks out;
  auto gv = gv_rate(20, 12, rs_weight_enumerator(20, 15, 361), 0.5, 361);
  auto pa = asympt_pa(19, 3, 4, 0.5);
  std::ostringstream s1, s2;
  s1.precision(4);
  s2.precision(4);
  s1 << gv.rate;
  s2 << pa;
  add(out, "gv rate 0.198", std::abs(gv.rate - 0.198) <= 0.002, s1.str());
  add(out, "asymptotic rate 0.243", std::abs(pa - 0.243) <= 0.001, s2.str());
  auto we = rs_weight_enumerator(6, 3, 7);
  std::vector<std::int64_t> lib;
  for (const auto& a : we.A) lib.push_back(static_cast<std::int64_t>(a));
  add(out, "[6,3] enumerator over GF(7)", lib == rs63_weights_exhaustive(), "(" + join(lib) + ")");
  add_runtime(out, timer, 10);
  return out;
}

struct Example {
  std::string name;
  std::function<Checks(unsigned)> run;
};

inline const std::vector<Example>& examples() {
  static const std::vector<Example> v{
      {"f37", f37}, {"q27", q27}, {"hermitian8", hermitian8}, {"avail41", avail41}, {"gv19", gv19}};
  return v;
}

}  // namespace hlrc::reproduce
