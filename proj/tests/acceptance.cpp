// Acceptance checks. Usage: acceptance [1-6 ...]; no arguments runs all.

#include <cstdlib>
#include <iostream>
#include <numeric>
#include <random>

#include "../tools/reproduce.hpp"

using namespace hlrc;
using reproduce::add;
using reproduce::Checks;

namespace {

Checks field_axioms() {
  Checks out;
  std::mt19937_64 rng(6);
  for (auto [p, m] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 6}, {3, 3}, {37, 1}, {41, 2}, {2, 8}, {5, 3}}) {
    auto fp = field_create(p, m);
    const Field& f = *fp;
    std::uniform_int_distribution<std::uint32_t> d(0, f.q() - 1);
    bool ok = true;
    for (int i = 0; i < 10000 && ok; ++i) {
      Fe a{d(rng)}, b{d(rng)}, c{d(rng)};
      ok = f.add(a, f.add(b, c)) == f.add(f.add(a, b), c) && f.mul(a, f.mul(b, c)) == f.mul(f.mul(a, b), c) &&
           f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)) && f.add(a, f.neg(a)) == f.zero() &&
           f.mul(a, b) == f.mul_reference(a, b) && f.mul(a, b) == f.mul(b, a) &&
           (a == f.zero() || f.mul(a, f.inv(a)) == f.one()) && f.pow(a, f.q()) == a;
    }
    add(out, "field axioms GF(" + std::to_string(f.q()) + ")", ok, "10000 sampled triples");
  }
  return out;
}

Checks interpolation() {
  Checks out;
  std::mt19937_64 rng(7);
  bool ok = true;
  for (auto q : {37u, 64u, 1681u}) {
    auto fp = field_of_order(q);
    const Field& f = *fp;
    for (int t = 0; t < 1000; ++t) {
      const std::size_t k = 1 + rng() % 12;
      Poly p(reproduce::random_vec(f, k, rng));
      std::vector<std::uint32_t> reps(f.q());
      std::iota(reps.begin(), reps.end(), 0);
      std::shuffle(reps.begin(), reps.end(), rng);
      std::vector<Fe> xs, ys;
      for (std::size_t i = 0; i < k; ++i) {
        xs.push_back(Fe{reps[i]});
        ys.push_back(p.eval(f, xs.back()));
      }
      ok = ok && interpolate(f, xs, ys) == p;
    }
  }
  add(out, "interpolation round-trips", ok, "3000 random polynomials");
  return out;
}

struct Tally {
  std::size_t trials = 0, decoded = 0, failed = 0, wrong = 0, missed = 0;
};

Tally never_wrong(const EvalCode& c, std::size_t trials, std::size_t max_erasures, std::uint64_t seed) {
  Tally t;
  std::mt19937_64 rng(seed);
  Decoder dec(c);
  std::vector<std::size_t> idx(c.n());
  std::iota(idx.begin(), idx.end(), 0);
  for (std::size_t i = 0; i < trials; ++i) {
    Vec cw = encode(c, reproduce::random_vec(*c.field, c.k(), rng));
    const std::size_t e = 1 + rng() % max_erasures;
    std::vector<std::size_t> pat(e);
    for (std::size_t j = 0; j < e; ++j) std::swap(idx[j], idx[j + rng() % (c.n() - j)]);
    std::copy(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(e), pat.begin());
    auto [res, rep] = dec.hierarchical_decode(erase_at(cw, pat));
    ++t.trials;
    if (res) {
      ++t.decoded;
      t.wrong += *res != cw || !dec.report_consistent(rep);
    } else {
      ++t.failed;
      t.missed += static_cast<std::int64_t>(e) < c.claims.d_lower;
    }
  }
  return t;
}

Checks decode_contract() {
  Checks out;
  struct Case {
    std::string name;
    EvalCode code;
    std::size_t max_erasures;
  };
  std::vector<Case> cases;
  auto f37 = field_create(37, 1);
  cases.push_back({"rs-hlrc GF(37)", construct_rs_hlrc(f37, 3, 2, 2, 36), 27});
  cases.push_back({"rs-flat GF(37)", construct_rs_hlrc(f37, 3, 2, 2, 36, true), 27});
  cases.push_back({"rs-hlrc-rho2 GF(37)", construct_rs_hlrc_rho2(f37, 2, 3, 2, 1, 36), 34});
  cases.push_back({"projline GF(27)", construct_projline_qplus1(field_create(3, 3), 6, 1, 2), 19});
  cases.push_back({"hermitian GF(64)", construct_hermitian_hlrc(field_create(2, 6), 2, 2, 1), 500});
  cases.push_back({"rs-avail GF(1681)", construct_rs_availability(field_create(41, 2), 7, 3, 4, 5, 4, 1), 24});
  std::uint64_t seed = 60;
  for (const auto& cs : cases) {
    auto t = never_wrong(cs.code, 10000, cs.max_erasures, seed++);
    add(out, "never wrong: " + cs.name, t.trials == 10000 && t.wrong == 0 && t.missed == 0,
        std::to_string(t.decoded) + " decoded, " + std::to_string(t.failed) + " explicit failures, " +
            std::to_string(t.wrong) + " wrong, " + std::to_string(t.missed) + " failures below d");
  }
  return out;
}

Checks strategy_agreement() {
  Checks out;
  std::mt19937_64 rng(50);
  const std::vector<std::uint32_t> qs{2, 3, 4, 5, 7, 8, 9, 11};
  std::size_t agree = 0;
  for (int t = 0; t < 50; ++t) {
    auto fp = field_of_order(qs[t % qs.size()]);
    std::size_t kmax = 1;
    while (std::pow(double(fp->q()), double(kmax + 1)) <= 1e5) ++kmax;
    const std::size_t k = 1 + rng() % std::min<std::size_t>(kmax, 7);
    const std::size_t n = k + 1 + rng() % 10;
    Mat g;
    do {
      std::vector<Vec> rows;
      for (std::size_t i = 0; i < k; ++i) rows.push_back(reproduce::random_vec(*fp, n, rng));
      g = Mat::from_rows(fp, rows);
    } while (rank(g) != k);
    DistanceOptions a, b;
    a.strategy = Strategy::Enumerate;
    b.strategy = Strategy::Support;
    auto da = min_distance_exact(g, a);
    auto db = min_distance_exact(g, b);
    agree += da.exact && db.exact && da.upper == db.upper && weight(db.witness) == static_cast<std::size_t>(db.upper);
  }
  add(out, "strategy A/B agreement", agree == 50, std::to_string(agree) + "/50 random codes");
  return out;
}

Checks bound_grid() {
  Checks out;
  std::mt19937_64 rng(1000);
  std::size_t same = 0;
  for (int i = 0; i < 1000; ++i) {
    const std::int64_t n = 2 + rng() % 500, k = 1 + rng() % n, r = 1 + rng() % k, rho = 2 + rng() % 10;
    same += bound_hlrc(n, k, {{r, rho}}) == bound_sb(n, k, r, rho);
  }
  add(out, "one-level hierarchical bound equals LRC bound", same == 1000, std::to_string(same) + "/1000 grid points");
  return out;
}

Checks properties(unsigned) {
  reproduce::Timer timer;
  Checks out;
  for (auto part : {field_axioms, interpolation, decode_contract, strategy_agreement, bound_grid}) {
    auto c = part();
    out.insert(out.end(), c.begin(), c.end());
  }
  reproduce::add_runtime(out, timer, 300);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::function<Checks(unsigned)>> criteria;
  for (const auto& e : reproduce::examples()) criteria.push_back(e.run);
  criteria.push_back(properties);
  std::vector<int> which;
  for (int i = 1; i < argc; ++i) which.push_back(std::atoi(argv[i]));
  if (which.empty())
    for (int i = 1; i <= static_cast<int>(criteria.size()); ++i) which.push_back(i);
  bool all = true;
  for (int w : which) {
    if (w < 1 || w > static_cast<int>(criteria.size())) {
      std::cerr << "unknown criterion " << w << "\n";
      return 2;
    }
    Checks cs;
    try {
      cs = criteria[w - 1](0);
    } catch (const std::exception& e) {
      cs.push_back({"completed", false, e.what()});
    }
    for (const auto& c : cs) {
      std::cout << "[" << (c.pass ? "PASS" : "FAIL") << "] " << w << ". " << c.name
                << (c.detail.empty() ? "" : ": " + c.detail) << std::endl;
      all = all && c.pass;
    }
  }
  return all ? 0 : 1;
}
