#pragma once

// Erasure repair at local, middle and global level.

#include <algorithm>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "hlrc/construct.hpp"

namespace hlrc {

using ErasedWord = std::vector<std::optional<Fe>>;

enum class Level { Local, Middle, Global };

inline std::string to_string(Level l) {
  switch (l) {
    case Level::Local: return "local";
    case Level::Middle: return "middle";
    case Level::Global: return "global";
  }
  return "?";
}

struct RepairEntry {
  Fe value;
  Level level = Level::Local;
  std::vector<std::size_t> access;
  std::size_t hierarchy = 0;
};

struct RepairReport {
  std::map<std::size_t, RepairEntry> entries;
  bool success = false;
};

inline ErasedWord erase_at(const Vec& word, const std::vector<std::size_t>& positions) {
  ErasedWord w(word.begin(), word.end());
  for (auto p : positions) w.at(p) = std::nullopt;
  return w;
}

inline std::vector<std::size_t> erased_positions(const ErasedWord& w) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (!w[i]) out.push_back(i);
  return out;
}

struct LocalResult {
  Fe value;
  std::vector<std::size_t> access;
  Poly interpolant;  // in the moving coordinate
};

struct MiddleResult {
  std::map<std::size_t, Fe> values;
  std::vector<std::size_t> access;
  std::vector<std::size_t> basis_rows;  // generator rows spanning the restricted code
  Vec coeffs;                           // restricted codeword = sum coeffs[i] * row basis_rows[i]
};

struct GlobalResult {
  Vec codeword;
  Vec message;
  std::vector<std::size_t> access;
};

struct Policy {
  bool local = true, middle = true, global = true;
};

class Decoder {
 public:
  explicit Decoder(const EvalCode& code) : c_(code), f_(*code.field) {
    for (const auto& h : c_.hierarchies) loc_.push_back(h.locate(c_.n()));
  }

  const EvalCode& code() const { return c_; }

  /// Interpolation row for one point: powers of the moving coordinate, or the
  /// top unit vector at the infinite point.
  Vec local_row(const Hierarchy& h, std::size_t pos) const {
    Vec row(h.r2, f_.zero());
    const Point& p = c_.points[pos];
    if (p.at_infinity) {
      row[h.r2 - 1] = f_.one();
      return row;
    }
    Fe u = f_.pow(p.get(h.moving_var), h.moving_exp);
    Fe acc = f_.one();
    for (std::size_t i = 0; i < h.r2; ++i, acc = f_.mul(acc, u)) row[i] = acc;
    return row;
  }

  std::optional<LocalResult> local_repair(const ErasedWord& w, std::size_t pos, std::size_t hier = 0) const {
    check_word(w);
    if (w.at(pos)) throw UsageError("local_repair: position " + std::to_string(pos) + " is not erased");
    const Hierarchy& h = c_.hierarchy(hier);
    const auto [g, l] = loc_.at(hier).at(pos);
    const auto& group = h.local_groups[g][l];
    std::size_t erased = 0;
    for (auto i : group) erased += !w[i];
    if (erased > h.rho2 - 1) return std::nullopt;

    std::vector<Vec> rows;
    std::vector<std::size_t> access;
    Vec rhs;
    for (auto i : group) {
      if (!w[i] || access.size() == h.r2) continue;
      rows.push_back(local_row(h, i));
      if (rank(Mat::from_rows(c_.field, rows)) < rows.size()) {
        rows.pop_back();
        continue;
      }
      access.push_back(i);
      rhs.push_back(*w[i]);
    }
    if (access.size() < h.r2) return std::nullopt;
    auto a = solve(Mat::from_rows(c_.field, rows), rhs);
    if (!a) throw InvariantError("local_repair: singular interpolation system");
    Fe v = f_.zero();
    Vec phi = local_row(h, pos);
    for (std::size_t i = 0; i < h.r2; ++i) v = f_.add(v, f_.mul(phi[i], (*a)[i]));
    return LocalResult{v, access, Poly(*a)};
  }

  /// One linear solve on the generator restricted to the middle group.
  std::optional<MiddleResult> middle_repair(const ErasedWord& w, std::size_t g, std::size_t hier = 0) const {
    check_word(w);
    const Hierarchy& h = c_.hierarchy(hier);
    const auto& group = h.middle_groups.at(g);
    MiddleResult out;
    std::vector<std::size_t> unerased, erased;
    for (auto i : group) (w[i] ? unerased : erased).push_back(i);
    if (erased.empty()) return out;

    const Mat GM = c_.G.select_cols(group);
    out.basis_rows = rref(GM.transpose(), false).pivots;
    const std::size_t r = out.basis_rows.size();
    const Mat B = c_.G.select(out.basis_rows, unerased);
    auto piv = rref(B, false).pivots;
    if (piv.size() < r) return std::nullopt;
    for (auto p : piv) out.access.push_back(unerased[p]);
    Mat BA = c_.G.select(out.basis_rows, out.access);
    Vec wa;
    for (auto p : out.access) wa.push_back(*w[p]);
    auto coeffs = solve(BA.transpose(), wa);
    if (!coeffs) throw InvariantError("middle_repair: singular restricted system");
    out.coeffs = *coeffs;
    const Mat full = c_.G.select(out.basis_rows, group);
    Vec vals = vec_mat(f_, out.coeffs, full);
    for (std::size_t j = 0; j < group.size(); ++j) {
      if (w[group[j]]) {
        if (vals[j] != *w[group[j]]) return std::nullopt;  // word is not a codeword restriction
      } else {
        out.values[group[j]] = vals[j];
      }
    }
    return out;
  }

  /// Fiber-by-fiber route: recover local groups, then interpolate each local
  /// coefficient across fibers in the local invariant.
  std::optional<MiddleResult> middle_repair_fiberwise(const ErasedWord& w, std::size_t g, std::size_t hier = 0) const {
    check_word(w);
    const Hierarchy& h = c_.hierarchy(hier);
    if (h.local_invariant.empty() || h.fiber_terms == 0) return std::nullopt;
    const auto& locals = h.local_groups.at(g);
    std::vector<std::size_t> good;
    std::vector<Vec> coeffs(locals.size());
    MiddleResult out;
    for (std::size_t l = 0; l < locals.size() && good.size() < h.fiber_terms; ++l) {
      std::size_t erased = 0;
      std::size_t first_erased = SIZE_MAX;
      for (auto i : locals[l])
        if (!w[i]) {
          ++erased;
          if (first_erased == SIZE_MAX) first_erased = i;
        }
      if (erased > h.rho2 - 1) continue;
      if (erased == 0) {
        // Interpolate from the first r2 independent positions directly.
        ErasedWord tmp = w;
        tmp[locals[l].front()] = std::nullopt;
        auto lr = local_repair(tmp, locals[l].front(), hier);
        if (!lr) continue;
        coeffs[l] = lr->interpolant.coeffs();
        out.access.insert(out.access.end(), lr->access.begin(), lr->access.end());
      } else {
        auto lr = local_repair(w, first_erased, hier);
        if (!lr) continue;
        coeffs[l] = lr->interpolant.coeffs();
        out.access.insert(out.access.end(), lr->access.begin(), lr->access.end());
      }
      coeffs[l].resize(h.r2, f_.zero());
      good.push_back(l);
    }
    if (good.size() < h.fiber_terms) return std::nullopt;
    std::vector<Fe> ys;
    for (auto l : good) ys.push_back(h.local_invariant[g][l]);
    std::vector<Poly> gi(h.r2);
    for (std::size_t i = 0; i < h.r2; ++i) {
      std::vector<Fe> vals;
      for (auto l : good) vals.push_back(coeffs[l][i]);
      gi[i] = interpolate(f_, ys, vals);
    }
    for (std::size_t l = 0; l < locals.size(); ++l) {
      Vec a(h.r2);
      for (std::size_t i = 0; i < h.r2; ++i) a[i] = gi[i].eval(f_, h.local_invariant[g][l]);
      for (auto pos : locals[l]) {
        Vec phi = local_row(h, pos);
        Fe v = f_.zero();
        for (std::size_t i = 0; i < h.r2; ++i) v = f_.add(v, f_.mul(phi[i], a[i]));
        if (!w[pos]) out.values[pos] = v;
        else if (*w[pos] != v) return std::nullopt;
      }
    }
    std::sort(out.access.begin(), out.access.end());
    return out;
  }

  std::optional<GlobalResult> global_decode(const ErasedWord& w) const {
    check_word(w);
    std::vector<std::size_t> unerased;
    for (std::size_t i = 0; i < w.size(); ++i)
      if (w[i]) unerased.push_back(i);
    const Mat GU = c_.G.select_cols(unerased);
    auto piv = rref(GU, false).pivots;
    if (piv.size() < c_.k()) return std::nullopt;
    GlobalResult out;
    for (auto p : piv) out.access.push_back(unerased[p]);
    Vec wa;
    for (auto p : out.access) wa.push_back(*w[p]);
    auto m = solve(c_.G.select_cols(out.access).transpose(), wa);
    if (!m) throw InvariantError("global_decode: singular information set");
    out.message = *m;
    out.codeword = vec_mat(f_, out.message, c_.G);
    for (std::size_t i = 0; i < w.size(); ++i)
      if (w[i] && *w[i] != out.codeword[i]) return std::nullopt;
    return out;
  }

  /// Local, then middle per group, then global; each step reads only the
  /// symbols that were present in the input word.
  std::pair<std::optional<Vec>, RepairReport> hierarchical_decode(const ErasedWord& w, std::size_t hier = 0,
                                                                  Policy policy = Policy{}) const {
    check_word(w);
    RepairReport rep;
    const Hierarchy& h = c_.hierarchy(hier);
    const auto era = erased_positions(w);
    if (policy.local)
      for (auto p : era)
        if (auto lr = local_repair(w, p, hier)) rep.entries[p] = RepairEntry{lr->value, Level::Local, lr->access, hier};
    if (policy.middle) {
      for (std::size_t g = 0; g < h.middle_groups.size(); ++g) {
        bool pending = false;
        for (auto i : h.middle_groups[g]) pending |= !w[i] && !rep.entries.count(i);
        if (!pending) continue;
        auto mr = middle_repair(w, g, hier);
        if (!mr) continue;
        for (auto [pos, v] : mr->values)
          if (!rep.entries.count(pos)) rep.entries[pos] = RepairEntry{v, Level::Middle, mr->access, hier};
      }
    }
    bool done = rep.entries.size() == era.size();
    if (!done && policy.global) {
      auto gr = global_decode(w);
      if (gr)
        for (auto p : era)
          if (!rep.entries.count(p)) rep.entries[p] = RepairEntry{gr->codeword[p], Level::Global, gr->access, hier};
      done = rep.entries.size() == era.size();
    }
    if (!done) return {std::nullopt, rep};
    Vec out(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) out[i] = w[i] ? *w[i] : rep.entries.at(i).value;
    if (!is_codeword(out)) throw InvariantError("hierarchical_decode: repaired word is not a codeword");
    rep.success = true;
    return {out, rep};
  }

  struct AvailabilityResult {
    Fe value;
    std::vector<std::size_t> access;
    std::size_t hierarchy;
    Level level;
  };

  /// which: 0 = auto (hierarchy 1, then 2), 1 or 2.
  std::optional<AvailabilityResult> availability_repair(const ErasedWord& w, std::size_t pos, int which = 0) const {
    check_word(w);
    if (w.at(pos)) throw UsageError("availability_repair: position " + std::to_string(pos) + " is not erased");
    if (which < 0 || which > 2 || c_.hierarchies.size() < 2) {
      if (c_.hierarchies.size() < 2) throw UsageError("availability_repair: code has fewer than two hierarchies");
      throw UsageError("availability_repair: which must be 1, 2 or auto");
    }
    std::vector<std::size_t> order = which == 0 ? std::vector<std::size_t>{0, 1} : std::vector<std::size_t>{std::size_t(which - 1)};
    for (auto hi : order) {
      if (auto lr = local_repair(w, pos, hi)) return AvailabilityResult{lr->value, lr->access, hi + 1, Level::Local};
      const auto g = loc_[hi][pos].first;
      if (auto mr = middle_repair(w, g, hi)) return AvailabilityResult{mr->values.at(pos), mr->access, hi + 1, Level::Middle};
    }
    return std::nullopt;
  }

  /// Membership test through a cached information set.
  bool is_codeword(const Vec& v) const {
    if (v.size() != c_.n()) return false;
    ensure_info_set();
    Vec vi;
    for (auto p : info_) vi.push_back(v[p]);
    Vec m = vec_mat(f_, vi, info_inv_);
    return vec_mat(f_, m, c_.G) == v;
  }

  /// Report invariants: access excludes the position; local/middle access stays inside its group.
  bool report_consistent(const RepairReport& rep) const {
    for (const auto& [pos, e] : rep.entries) {
      if (std::find(e.access.begin(), e.access.end(), pos) != e.access.end()) return false;
      if (e.level == Level::Global) continue;
      const Hierarchy& h = c_.hierarchy(e.hierarchy);
      const auto [g, l] = loc_.at(e.hierarchy).at(pos);
      const Group& grp = e.level == Level::Local ? h.local_groups[g][l] : h.middle_groups[g];
      for (auto a : e.access)
        if (std::find(grp.begin(), grp.end(), a) == grp.end()) return false;
    }
    return true;
  }

 private:
  void check_word(const ErasedWord& w) const {
    if (w.size() != c_.n()) throw UsageError("decode: word length " + std::to_string(w.size()) + " != n = " + std::to_string(c_.n()));
    for (const auto& s : w)
      if (s && !f_.contains(*s)) throw UsageError("decode: symbol outside field");
  }

  void ensure_info_set() const {
    std::call_once(info_once_, [&] {
      info_ = rref(c_.G, false).pivots;
      Mat GI = c_.G.select_cols(info_);  // k x k, v_I = m GI
      info_inv_ = rref(GI, true).t;  // t * GI = I
    });
  }

  const EvalCode& c_;
  const Field& f_;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> loc_;
  mutable std::once_flag info_once_;
  mutable std::vector<std::size_t> info_;
  mutable Mat info_inv_;
};

inline std::optional<LocalResult> local_repair(const EvalCode& c, const ErasedWord& w, std::size_t pos, std::size_t hier = 0) {
  return Decoder(c).local_repair(w, pos, hier);
}

inline std::optional<MiddleResult> middle_repair(const EvalCode& c, const ErasedWord& w, std::size_t g, std::size_t hier = 0) {
  return Decoder(c).middle_repair(w, g, hier);
}

inline std::optional<MiddleResult> middle_repair_fiberwise(const EvalCode& c, const ErasedWord& w, std::size_t g,
                                                           std::size_t hier = 0) {
  return Decoder(c).middle_repair_fiberwise(w, g, hier);
}

inline std::optional<GlobalResult> global_erasure_decode(const EvalCode& c, const ErasedWord& w) {
  return Decoder(c).global_decode(w);
}

inline std::pair<std::optional<Vec>, RepairReport> hierarchical_decode(const EvalCode& c, const ErasedWord& w,
                                                                       std::size_t hier = 0, Policy policy = Policy{}) {
  return Decoder(c).hierarchical_decode(w, hier, policy);
}

inline std::optional<Decoder::AvailabilityResult> availability_repair(const EvalCode& c, const ErasedWord& w, std::size_t pos,
                                                                      int which = 0) {
  return Decoder(c).availability_repair(w, pos, which);
}

}  // namespace hlrc
