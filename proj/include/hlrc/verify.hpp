#pragma once

// Minimum distance, locality and optimality checks.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "hlrc/construct.hpp"
#include "hlrc/singleton.hpp"

namespace hlrc {

struct DistanceResult {
  std::int64_t lower = 1;
  std::int64_t upper = 0;
  bool exact = false;
  std::string method_lower;
  std::string method_upper;
  Vec witness;  // lightest nonzero codeword seen, weight = upper when exact
  std::uint64_t seed = 0;
  std::uint64_t work = 0;  // codewords enumerated plus rank tests run
};

enum class Strategy { Auto, Enumerate, Support };

struct DistanceOptions {
  std::uint64_t codeword_budget = 10'000'000;
  std::uint64_t rank_budget = 10'000'000;
  unsigned threads = 0;  // 0 = hardware concurrency
  std::uint64_t seed = 1;
  int restarts = 24;
  Strategy strategy = Strategy::Auto;
  std::int64_t lower_hint = 1;
  const Hierarchy* cluster = nullptr;  // groups used to order the witness search
};

inline std::size_t weight(const Vec& v) {
  return static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [](Fe e) { return e.rep != 0; }));
}

namespace detail {

inline unsigned thread_count(unsigned t) {
  if (t) return t;
  unsigned h = std::thread::hardware_concurrency();
  return h ? h : 1;
}

/// C(n, k), saturating at UINT64_MAX.
inline std::uint64_t choose_sat(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(r);
}

/// Rank of the k x |cols| column submatrix, stopping once it reaches k.
inline std::size_t small_rank(const Field& f, const Mat& g, const std::size_t* cols, std::size_t nc, std::vector<Fe>& buf) {
  const std::size_t k = g.rows();
  buf.resize(k * nc);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < nc; ++j) buf[i * nc + j] = g(i, cols[j]);
  std::size_t r = 0;
  for (std::size_t c = 0; c < nc && r < k; ++c) {
    std::size_t p = r;
    while (p < k && buf[p * nc + c].rep == 0) ++p;
    if (p == k) continue;
    if (p != r)
      for (std::size_t j = c; j < nc; ++j) std::swap(buf[p * nc + j], buf[r * nc + j]);
    const Fe inv = f.inv(buf[r * nc + c]);
    for (std::size_t i = r + 1; i < k; ++i) {
      Fe a = buf[i * nc + c];
      if (a.rep == 0) continue;
      Fe fac = f.neg(f.mul(a, inv));
      for (std::size_t j = c; j < nc; ++j) buf[i * nc + j] = f.add(buf[i * nc + j], f.mul(fac, buf[r * nc + j]));
    }
    ++r;
  }
  return r;
}

/// Lexicographically first c-subset of columns whose rank is below k, if any.
inline std::optional<std::vector<std::size_t>> first_deficient_subset(const Mat& g, std::size_t c, unsigned threads,
                                                                      std::uint64_t& work) {
  const Field& f = *g.field();
  const std::size_t n = g.cols(), k = g.rows();
  if (c < k) {
    std::vector<std::size_t> s(c);
    std::iota(s.begin(), s.end(), 0);
    return s;
  }
  if (c > n) return std::nullopt;
  const unsigned T = thread_count(threads);
  std::atomic<std::size_t> best_first{SIZE_MAX};
  std::vector<std::optional<std::vector<std::size_t>>> found(n);
  std::atomic<std::uint64_t> tests{0};
  auto worker = [&](unsigned tid) {
    std::vector<Fe> buf;
    std::vector<std::size_t> s(c);
    std::uint64_t local = 0;
    for (std::size_t first = tid; first + c <= n; first += T) {
      if (first > best_first.load()) break;
      s[0] = first;
      for (std::size_t i = 1; i < c; ++i) s[i] = first + i;
      while (true) {
        ++local;
        if (small_rank(f, g, s.data(), c, buf) < k) {
          found[first] = s;
          std::size_t cur = best_first.load();
          while (first < cur && !best_first.compare_exchange_weak(cur, first)) {
          }
          break;
        }
        // Next combination with s[0] fixed.
        std::size_t i = c - 1;
        while (i >= 1 && s[i] == n - c + i) --i;
        if (i == 0) break;
        ++s[i];
        for (std::size_t j = i + 1; j < c; ++j) s[j] = s[j - 1] + 1;
      }
    }
    tests += local;
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < T; ++t) pool.emplace_back(worker, t);
  worker(0);
  for (auto& th : pool) th.join();
  work += tests.load();
  for (std::size_t i = 0; i < n; ++i)
    if (found[i]) return found[i];
  return std::nullopt;
}

/// Nonzero codeword vanishing on `cols`, which must have rank < k.
inline Vec codeword_vanishing_on(const Mat& g, const std::vector<std::size_t>& cols) {
  const Field& f = *g.field();
  auto ns = nullspace_basis(g.select_cols(cols).transpose());
  if (ns.empty()) throw InvariantError("codeword_vanishing_on: columns have full rank");
  return vec_mat(f, ns.front(), g);
}

/// Column order for the greedy witness search: grouped by middle and local
/// group when a hierarchy is supplied, random otherwise.
inline std::vector<std::size_t> clustered_order(std::size_t n, const Hierarchy* h, std::mt19937_64& rng) {
  std::vector<std::size_t> order;
  if (h && h->size() == n) {
    std::vector<std::size_t> mids(h->middle_groups.size());
    std::iota(mids.begin(), mids.end(), 0);
    std::shuffle(mids.begin(), mids.end(), rng);
    for (auto g : mids) {
      std::vector<std::size_t> locs(h->local_groups[g].size());
      std::iota(locs.begin(), locs.end(), 0);
      std::shuffle(locs.begin(), locs.end(), rng);
      for (auto l : locs) {
        auto grp = h->local_groups[g][l];
        std::shuffle(grp.begin(), grp.end(), rng);
        order.insert(order.end(), grp.begin(), grp.end());
      }
    }
    return order;
  }
  order.resize(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  return order;
}

/// Greedy descent: repeatedly force the largest projective class of columns
/// to vanish until a single codeword remains.
inline Vec greedy_witness(const Mat& g, const std::vector<std::size_t>& order) {
  const Field& f = *g.field();
  const std::size_t n = g.cols();
  std::vector<std::size_t> rank_of(n);
  for (std::size_t i = 0; i < n; ++i) rank_of[order[i]] = i;
  std::vector<Vec> K;  // message-space basis
  for (std::size_t i = 0; i < g.rows(); ++i) {
    Vec e(g.rows(), f.zero());
    e[i] = f.one();
    K.push_back(e);
  }
  while (K.size() > 1) {
    Mat C = Mat::from_rows(g.field(), K) * g;
    std::unordered_map<std::string, std::pair<std::size_t, std::size_t>> classes;  // key -> (count, best column)
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t lead = 0;
      while (lead < C.rows() && C(lead, j).rep == 0) ++lead;
      if (lead == C.rows()) continue;
      Fe inv = f.inv(C(lead, j));
      std::string key;
      key.reserve(C.rows() * 4);
      for (std::size_t i = 0; i < C.rows(); ++i) {
        std::uint32_t v = f.mul(C(i, j), inv).rep;
        key.append(reinterpret_cast<const char*>(&v), sizeof v);
      }
      auto& cls = classes[key];
      if (cls.first == 0 || rank_of[j] < rank_of[cls.second]) cls.second = j;
      ++cls.first;
    }
    std::size_t best_col = SIZE_MAX, best_cnt = 0;
    for (const auto& [key, cls] : classes)
      if (cls.first > best_cnt || (cls.first == best_cnt && rank_of[cls.second] < rank_of[best_col])) {
        best_cnt = cls.first;
        best_col = cls.second;
      }
    if (best_col == SIZE_MAX) break;  // all remaining codewords are zero: cannot happen for full rank g
    std::size_t piv = 0;
    while (C(piv, best_col).rep == 0) ++piv;
    const Fe vp_inv = f.inv(C(piv, best_col));
    std::vector<Vec> next;
    for (std::size_t i = 0; i < K.size(); ++i) {
      if (i == piv) continue;
      Fe fac = f.neg(f.mul(C(i, best_col), vp_inv));
      Vec b = K[i];
      for (std::size_t t = 0; t < b.size(); ++t) b[t] = f.add(b[t], f.mul(fac, K[piv][t]));
      next.push_back(std::move(b));
    }
    K = std::move(next);
  }
  return vec_mat(f, K.front(), g);
}

/// Projective enumeration of all nonzero codewords (first nonzero message coordinate = 1).
inline Vec enumerate_lightest(const Mat& g, unsigned threads, std::uint64_t& work) {
  const Field& f = *g.field();
  const std::size_t k = g.rows(), n = g.cols();
  const std::uint32_t q = f.q();
  const unsigned T = thread_count(threads);
  // Task = (leading index, value of the next coordinate) to spread work across threads.
  struct Task {
    std::size_t lead;
    std::int64_t second;  // -1: no following coordinate
  };
  std::vector<Task> tasks;
  for (std::size_t lead = 0; lead < k; ++lead) {
    if (lead + 1 == k) tasks.push_back({lead, -1});
    else
      for (std::uint32_t v = 0; v < q; ++v) tasks.push_back({lead, static_cast<std::int64_t>(v)});
  }
  std::vector<std::size_t> best_w(tasks.size(), SIZE_MAX);
  std::vector<Vec> best_c(tasks.size());
  std::atomic<std::size_t> next{0};
  std::atomic<std::uint64_t> count{0};
  auto worker = [&] {
    std::uint64_t local = 0;
    for (std::size_t ti; (ti = next.fetch_add(1)) < tasks.size();) {
      const Task t = tasks[ti];
      Vec base = g.row(t.lead);
      std::size_t start = t.lead + 1;
      if (t.second >= 0) {
        Fe v{static_cast<std::uint32_t>(t.second)};
        for (std::size_t j = 0; j < n; ++j) base[j] = f.add(base[j], f.mul(v, g(t.lead + 1, j)));
        start = t.lead + 2;
      }
      // Depth-first over the remaining coordinates; partial sums per level.
      const std::size_t depth = k - start;
      std::vector<Vec> partial(depth + 1, base);
      std::vector<std::uint32_t> digit(depth, 0);
      std::size_t level = depth;  // partial[depth] holds the current full codeword
      auto visit = [&](const Vec& c) {
        ++local;
        std::size_t w = weight(c);
        if (w < best_w[ti]) {
          best_w[ti] = w;
          best_c[ti] = c;
        }
      };
      if (depth == 0) {
        visit(base);
        continue;
      }
      // Initialize all digits to zero.
      level = 0;
      while (true) {
        // Ensure partial[level+1..depth] consistent with digits.
        for (std::size_t d = level; d < depth; ++d) {
          const std::size_t row = start + d;
          Vec& out = partial[d + 1];
          const Vec& in = partial[d];
          const Fe v{digit[d]};
          if (v.rep == 0) out = in;
          else
            for (std::size_t j = 0; j < n; ++j) out[j] = f.add(in[j], f.mul(v, g(row, j)));
        }
        visit(partial[depth]);
        // Increment.
        std::size_t d = depth;
        while (d > 0) {
          --d;
          if (++digit[d] < q) break;
          digit[d] = 0;
          if (d == 0) {
            d = SIZE_MAX;
            break;
          }
        }
        if (d == SIZE_MAX) break;
        level = d;
      }
    }
    count += local;
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < T; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  work += count.load();
  std::size_t bi = 0;
  for (std::size_t i = 1; i < tasks.size(); ++i)
    if (best_w[i] < best_w[bi]) bi = i;
  return best_c[bi];
}

inline std::uint64_t projective_count(std::uint64_t q, std::size_t k) {
  unsigned __int128 total = 1;
  for (std::size_t i = 0; i < k; ++i) {
    total *= q;
    if (total > (static_cast<unsigned __int128>(1) << 100)) return UINT64_MAX;
  }
  total = (total - 1) / (q - 1);
  return total > UINT64_MAX ? UINT64_MAX : static_cast<std::uint64_t>(total);
}

}  // namespace detail

/// Lightest codeword found by seeded greedy restarts.
inline Vec witness_search(const Mat& g, std::uint64_t seed, int restarts, const Hierarchy* cluster = nullptr) {
  std::mt19937_64 rng(seed);
  Vec best;
  for (int r = 0; r < std::max(restarts, 1); ++r) {
    auto order = detail::clustered_order(g.cols(), r % 2 == 0 ? cluster : nullptr, rng);
    Vec c = detail::greedy_witness(g, order);
    if (best.empty() || weight(c) < weight(best)) best = std::move(c);
  }
  return best;
}

/// Distance interval for the code generated by the rows of g (full row rank).
inline DistanceResult min_distance_exact(const Mat& g, const DistanceOptions& opt = {}) {
  const Field& f = *g.field();
  const std::size_t k = g.rows(), n = g.cols();
  if (k == 0 || rank(g) != k) throw UsageError("min_distance_exact: generator must have full row rank >= 1");
  DistanceResult res;
  res.seed = opt.seed;
  res.lower = std::max<std::int64_t>(1, opt.lower_hint);
  res.method_lower = res.lower > 1 ? "hint" : "trivial";

  const std::uint64_t count_a = detail::projective_count(f.q(), k);
  auto run_enumeration = [&] {
    res.witness = detail::enumerate_lightest(g, opt.threads, res.work);
    res.lower = res.upper = static_cast<std::int64_t>(weight(res.witness));
    res.exact = true;
    res.method_lower = res.method_upper = "enumeration";
  };
  if (opt.strategy == Strategy::Enumerate) {
    run_enumeration();
    return res;
  }

  res.witness = witness_search(g, opt.seed, opt.restarts, opt.cluster);
  res.upper = static_cast<std::int64_t>(weight(res.witness));
  res.method_upper = "witness-search";
  const std::int64_t singleton = static_cast<std::int64_t>(n - k + 1);
  if (res.upper > singleton) throw InvariantError("min_distance_exact: witness heavier than the Singleton bound");
  if (res.lower > res.upper) throw InvariantError("min_distance_exact: lower hint exceeds a codeword weight");

  if (opt.strategy == Strategy::Auto && count_a <= opt.codeword_budget &&
      count_a <= detail::choose_sat(n, static_cast<std::uint64_t>(res.upper - 1))) {
    run_enumeration();
    return res;
  }

  std::uint64_t spent = 0;
  while (res.lower < res.upper) {
    std::int64_t delta = 0;
    for (std::int64_t d = res.upper; d > res.lower; --d) {
      if (spent + detail::choose_sat(n, static_cast<std::uint64_t>(d - 1)) <= opt.rank_budget) {
        delta = d;
        break;
      }
    }
    if (!delta) break;
    std::uint64_t before = res.work;
    auto bad = detail::first_deficient_subset(g, n - static_cast<std::size_t>(delta) + 1, opt.threads, res.work);
    spent += res.work - before;
    if (!bad) {
      res.lower = delta;
      res.method_lower = "support-enumeration";
    } else {
      Vec c = detail::codeword_vanishing_on(g, *bad);
      res.witness = c;
      res.upper = static_cast<std::int64_t>(weight(c));
      res.method_upper = "support-enumeration";
    }
  }
  res.exact = res.lower == res.upper;
  if (!res.exact && opt.strategy == Strategy::Auto && count_a <= opt.codeword_budget) run_enumeration();
  return res;
}

/// Pole-order bound n - max pole order over the basis. nullopt for bases with
/// rational factors or an infinite evaluation point.
inline std::optional<std::int64_t> distance_lower_from_degree(const EvalCode& c) {
  std::uint64_t wx = 1, wz = 0;
  bool has_z = false;
  for (const auto& p : c.points) {
    if (p.at_infinity) return std::nullopt;
    has_z |= p.coords.count("z") > 0;
  }
  if (has_z) {
    std::uint32_t q0 = 1;
    while (q0 * q0 < c.field->q()) ++q0;
    wx = q0;
    wz = q0 + 1;
  }
  std::uint64_t maxp = 0;
  for (const auto& b : c.basis) {
    if (!b.factors.empty()) return std::nullopt;
    std::uint64_t p = 0;
    for (const auto& [var, ex] : b.mono) {
      if (var == "x") p += wx * ex;
      else if (var == "z" && has_z) p += wz * ex;
      else return std::nullopt;
    }
    maxp = std::max(maxp, p);
  }
  return static_cast<std::int64_t>(c.n()) - static_cast<std::int64_t>(maxp);
}

/// Distance with the degree bound as lower hint and the code's hierarchy for the witness search.
inline DistanceResult min_distance_exact(const EvalCode& c, DistanceOptions opt = {}) {
  if (auto lb = distance_lower_from_degree(c)) {
    if (*lb > opt.lower_hint) {
      opt.lower_hint = *lb;
    }
  }
  if (!opt.cluster && !c.hierarchies.empty()) opt.cluster = &c.hierarchy(0);
  auto r = min_distance_exact(c.G, opt);
  if (auto lb = distance_lower_from_degree(c); lb && *lb == r.lower && r.method_lower == "hint") r.method_lower = "degree";
  return r;
}

/// Basis of the code restricted to `cols`: independent rows of G on those columns.
inline Mat restricted_generator(const Mat& g, const std::vector<std::size_t>& cols) {
  const Mat gm = g.select_cols(cols);
  auto rows = rref(gm.transpose(), false).pivots;
  std::vector<std::size_t> all(cols.size());
  std::iota(all.begin(), all.end(), 0);
  return gm.select(rows, all);
}

struct GroupCheck {
  std::size_t group = 0;
  std::size_t rank = 0;
  DistanceResult distance;
  bool rank_ok = true;
  bool distance_ok = true;      // distance >= claim proven or not refuted
  bool distance_proven = false; // claim proven by exhaustive means
};

struct HierarchyCheck {
  std::vector<GroupCheck> middle;
  std::vector<GroupCheck> local;  // flattened over middle groups
  std::size_t max_middle_rank = 0, max_local_rank = 0;
  std::int64_t min_middle_distance = INT64_MAX, min_local_distance = INT64_MAX;
  bool middle_exact = true, local_exact = true;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

struct LocalityReport {
  std::vector<HierarchyCheck> hierarchies;
  bool ok() const {
    return std::all_of(hierarchies.begin(), hierarchies.end(), [](const HierarchyCheck& h) { return h.ok(); });
  }
};

namespace detail {

inline GroupCheck check_group(const Mat& G, const Group& grp, std::size_t g, std::size_t r_claim, std::size_t rho_claim,
                              const DistanceOptions& opt, std::int64_t lower_hint = 1) {
  GroupCheck gc;
  gc.group = g;
  Mat R = restricted_generator(G, grp);
  gc.rank = R.rows();
  gc.rank_ok = gc.rank <= r_claim;
  if (gc.rank == 0) {
    gc.distance.lower = gc.distance.upper = static_cast<std::int64_t>(grp.size()) + 1;
    gc.distance.exact = true;
    gc.distance_proven = true;
    return gc;
  }
  DistanceOptions o = opt;
  o.threads = 1;
  o.cluster = nullptr;
  if (gc.rank == G.rows() && grp.size() == G.cols()) o.lower_hint = std::max(o.lower_hint, lower_hint);
  gc.distance = min_distance_exact(R, o);
  const auto rho = static_cast<std::int64_t>(rho_claim);
  if (gc.distance.lower >= rho) {
    gc.distance_proven = true;
  } else if (gc.distance.upper < rho) {
    gc.distance_ok = false;
  }
  return gc;
}

}  // namespace detail

/// Per-group restricted rank and distance against the claimed (r, rho) pairs.
/// Budgets apply per group.
inline LocalityReport verify_locality(const EvalCode& c, DistanceOptions opt = {}) {
  LocalityReport rep;
  const std::int64_t degree = distance_lower_from_degree(c).value_or(1);
  for (std::size_t hi = 0; hi < c.hierarchies.size(); ++hi) {
    const Hierarchy& h = c.hierarchy(hi);
    HierarchyCheck hc;
    auto fold = [&](GroupCheck&& gc, bool middle) {
      auto& mx = middle ? hc.max_middle_rank : hc.max_local_rank;
      auto& mn = middle ? hc.min_middle_distance : hc.min_local_distance;
      auto& ex = middle ? hc.middle_exact : hc.local_exact;
      const char* lvl = middle ? "middle" : "local";
      mx = std::max(mx, gc.rank);
      mn = std::min(mn, gc.distance.lower);
      ex = ex && gc.distance.exact;
      const std::size_t rc = middle ? h.r1 : h.r2, pc = middle ? h.rho1 : h.rho2;
      const std::string where = "hierarchy " + std::to_string(hi + 1) + " " + lvl + " group " + std::to_string(gc.group);
      if (!gc.rank_ok)
        hc.violations.push_back(where + ": restricted rank " + std::to_string(gc.rank) + " > claimed " + std::to_string(rc));
      if (!gc.distance_ok)
        hc.violations.push_back(where + ": restricted distance <= " + std::to_string(gc.distance.upper) + " < claimed " +
                                std::to_string(pc));
      (middle ? hc.middle : hc.local).push_back(std::move(gc));
    };
    for (std::size_t g = 0; g < h.middle_groups.size(); ++g) {
      fold(detail::check_group(c.G, h.middle_groups[g], g, h.r1, h.rho1, opt, degree), true);
      for (const auto& lg : h.local_groups[g]) fold(detail::check_group(c.G, lg, g, h.r2, h.rho2, opt), false);
    }
    rep.hierarchies.push_back(std::move(hc));
  }
  return rep;
}

enum class Verdict { Optimal, OptimalIfClaimed, Suboptimal, NotEvaluated };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Optimal: return "optimal";
    case Verdict::OptimalIfClaimed: return "optimal-if-claimed";
    case Verdict::Suboptimal: return "suboptimal";
    case Verdict::NotEvaluated: return "not-evaluated";
  }
  return "?";
}

struct BoundReport {
  std::int64_t eq2 = 0;  // LRC bound with the local (r, rho)
  std::int64_t eq3 = 0;  // LRC bound with rho = 2
  std::int64_t eq4 = 0;  // hierarchical bound, 0 when not evaluated
  std::int64_t middle_eq2 = 0, middle_eq3 = 0;
  bool hierarchical = true;
  Verdict full = Verdict::NotEvaluated;
  Verdict middle = Verdict::NotEvaluated;
};

namespace detail {

inline Verdict judge(std::int64_t lower, std::int64_t upper, bool exact, std::int64_t claim, std::int64_t bound) {
  if (exact) return upper == bound ? Verdict::Optimal : Verdict::Suboptimal;
  if (upper < bound) return Verdict::Suboptimal;
  return claim == bound && lower <= bound ? Verdict::OptimalIfClaimed : Verdict::Suboptimal;
}

}  // namespace detail

/// Compares the measured distance with the bounds; middle codes use the measured
/// minimum over groups when given, otherwise the claim.
inline BoundReport check_optimal(const EvalCode& c, const DistanceResult& d,
                                 std::optional<DistanceResult> middle = std::nullopt) {
  BoundReport r;
  const Hierarchy& h = c.hierarchy(0);
  const auto n = static_cast<std::int64_t>(c.n()), k = static_cast<std::int64_t>(c.k());
  const auto r1 = static_cast<std::int64_t>(h.r1), rho1 = static_cast<std::int64_t>(h.rho1);
  const auto r2 = static_cast<std::int64_t>(h.r2), rho2 = static_cast<std::int64_t>(h.rho2);
  r.eq2 = bound_sb(n, k, r2, rho2);
  r.eq3 = bound_sb2(n, k, r2);
  r.hierarchical = c.claims.tag != "rs-flat";
  const auto nu = static_cast<std::int64_t>(h.nu);
  if (r.hierarchical) {
    r.eq4 = bound_hlrc(n, k, {{r1, rho1}, {r2, rho2}});
    r.full = detail::judge(d.lower, d.upper, d.exact, c.claims.d_lower, r.eq4);
    r.middle_eq2 = bound_sb(nu, r1, r2, rho2);
    r.middle_eq3 = bound_sb2(nu, r1, r2);
    if (middle) r.middle = detail::judge(middle->lower, middle->upper, middle->exact, rho1, r.middle_eq2);
    else r.middle = rho1 == r.middle_eq2 ? Verdict::OptimalIfClaimed : Verdict::Suboptimal;
  } else {
    r.full = detail::judge(d.lower, d.upper, d.exact, c.claims.d_lower, r.eq2);
  }
  return r;
}

}  // namespace hlrc
