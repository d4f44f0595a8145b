#pragma once

// Code descriptor files: JSON with integer element reps.

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "hlrc/construct.hpp"

namespace hlrc {

using json = nlohmann::json;

inline constexpr int kDescriptorVersion = 1;

namespace detail {

inline json reps(const std::vector<Fe>& v) {
  json a = json::array();
  for (Fe e : v) a.push_back(e.rep);
  return a;
}

inline std::vector<Fe> from_reps(const Field& f, const json& a) {
  std::vector<Fe> v;
  for (const auto& x : a) {
    Fe e{x.get<std::uint32_t>()};
    if (!f.contains(e)) throw UsageError("descriptor: element rep " + std::to_string(e.rep) + " outside field");
    v.push_back(e);
  }
  return v;
}

inline json groups_json(const std::vector<Group>& gs) {
  json a = json::array();
  for (const auto& g : gs) a.push_back(g);
  return a;
}

}  // namespace detail

inline json to_json(const EvalCode& c) {
  const Field& f = *c.field;
  json j;
  j["version"] = kDescriptorVersion;
  j["construction"] = {{"tag", c.claims.tag}, {"params", c.claims.params}};
  j["field"] = {{"p", f.p()}, {"m", f.m()}, {"modulus", f.spec().modulus}};
  json pts = json::array();
  for (const auto& p : c.points) {
    if (p.at_infinity) {
      pts.push_back({{"infinity", true}});
      continue;
    }
    json o = json::object();
    for (const auto& [var, v] : p.coords) o[var] = v.rep;
    pts.push_back(o);
  }
  j["points"] = pts;
  json fns = json::object();
  for (const auto& [name, r] : c.functions) fns[name] = {{"num", detail::reps(r.num().coeffs())}, {"den", detail::reps(r.den().coeffs())}};
  j["functions"] = fns;
  j["invariant"] = c.invariant;
  j["infinity_shift"] = c.infinity_shift ? json(*c.infinity_shift) : json(nullptr);
  json hs = json::array();
  for (const auto& h : c.hierarchies) {
    json loc = json::array();
    for (const auto& lg : h.local_groups) loc.push_back(detail::groups_json(lg));
    json inv = json::array();
    for (const auto& v : h.local_invariant) inv.push_back(detail::reps(v));
    hs.push_back({{"middle", detail::groups_json(h.middle_groups)},
                  {"local", loc},
                  {"r1", h.r1},
                  {"rho1", h.rho1},
                  {"r2", h.r2},
                  {"rho2", h.rho2},
                  {"nu", h.nu},
                  {"local_size", h.local_size},
                  {"moving_var", h.moving_var},
                  {"moving_exp", h.moving_exp},
                  {"local_invariant", inv},
                  {"fiber_terms", h.fiber_terms}});
  }
  j["hierarchies"] = hs;
  json basis = json::array();
  for (const auto& b : c.basis) {
    json fac = json::array();
    for (const auto& [name, ex] : b.factors) fac.push_back({name, ex});
    basis.push_back({{"mono", b.mono}, {"factors", fac}});
  }
  j["basis"] = basis;
  json gen = json::array();
  for (std::size_t i = 0; i < c.G.rows(); ++i) gen.push_back(detail::reps(c.G.row(i)));
  j["generator"] = gen;
  json loc = json::array();
  for (const auto& [r, rho] : c.claims.locality) loc.push_back({r, rho});
  j["claims"] = {{"n", c.claims.n},
                 {"k", c.claims.k},
                 {"d_lower", c.claims.d_lower},
                 {"d_upper_bound", c.claims.d_upper_bound},
                 {"locality", loc}};
  return j;
}

inline std::string save_string(const EvalCode& c) { return to_json(c).dump(2) + "\n"; }

/// Rebuilds the code; with verify_load the generator is re-derived from basis
/// and points and must match the stored one.
inline EvalCode from_json(const json& j, bool verify_load = false) {
  try {
    if (j.at("version").get<int>() != kDescriptorVersion)
      throw UsageError("descriptor: unsupported version " + j.at("version").dump());
    EvalCode c;
    const auto& jf = j.at("field");
    c.field = field_create(jf.at("p").get<std::uint32_t>(), jf.at("m").get<std::uint32_t>());
    if (c.field->spec().modulus != jf.at("modulus").get<std::vector<std::uint32_t>>())
      throw UsageError("descriptor: modulus differs from the canonical one");
    const Field& f = *c.field;
    auto elem = [&](const json& x) {
      Fe e{x.get<std::uint32_t>()};
      if (!f.contains(e)) throw UsageError("descriptor: element rep " + std::to_string(e.rep) + " outside field");
      return e;
    };
    for (const auto& p : j.at("points")) {
      if (p.contains("infinity")) {
        c.points.push_back(Point::infinity());
        continue;
      }
      Point pt;
      for (const auto& [var, v] : p.items()) pt.coords[var] = elem(v);
      c.points.push_back(pt);
    }
    for (const auto& [name, r] : j.at("functions").items())
      c.functions.emplace(name, RationalFunc(f, Poly(detail::from_reps(f, r.at("num"))), Poly(detail::from_reps(f, r.at("den")))));
    c.invariant = j.at("invariant").get<std::string>();
    if (!j.at("infinity_shift").is_null()) c.infinity_shift = j.at("infinity_shift").get<std::uint64_t>();
    for (const auto& jh : j.at("hierarchies")) {
      Hierarchy h;
      h.middle_groups = jh.at("middle").get<std::vector<Group>>();
      h.local_groups = jh.at("local").get<std::vector<std::vector<Group>>>();
      h.r1 = jh.at("r1");
      h.rho1 = jh.at("rho1");
      h.r2 = jh.at("r2");
      h.rho2 = jh.at("rho2");
      h.nu = jh.at("nu");
      h.local_size = jh.at("local_size");
      h.moving_var = jh.at("moving_var");
      h.moving_exp = jh.at("moving_exp");
      for (const auto& v : jh.at("local_invariant")) h.local_invariant.push_back(detail::from_reps(f, v));
      h.fiber_terms = jh.at("fiber_terms");
      h.validate(c.points.size());
      c.hierarchies.push_back(std::move(h));
    }
    for (const auto& jb : j.at("basis")) {
      BasisFn b;
      b.mono = jb.at("mono").get<std::map<std::string, std::uint64_t>>();
      for (const auto& fac : jb.at("factors")) b.factors.emplace_back(fac.at(0).get<std::string>(), fac.at(1).get<std::uint64_t>());
      c.basis.push_back(std::move(b));
    }
    std::vector<Vec> rows;
    for (const auto& r : j.at("generator")) rows.push_back(detail::from_reps(f, r));
    c.G = Mat::from_rows(c.field, rows);
    if (c.G.rows() != c.basis.size() || (c.G.rows() && c.G.cols() != c.points.size()))
      throw UsageError("descriptor: generator shape does not match basis and points");
    const auto& jc = j.at("claims");
    c.claims.tag = j.at("construction").at("tag");
    c.claims.params = j.at("construction").at("params").get<std::map<std::string, std::int64_t>>();
    c.claims.n = jc.at("n");
    c.claims.k = jc.at("k");
    c.claims.d_lower = jc.at("d_lower");
    c.claims.d_upper_bound = jc.at("d_upper_bound");
    for (const auto& l : jc.at("locality")) c.claims.locality.emplace_back(l.at(0).get<std::int64_t>(), l.at(1).get<std::int64_t>());
    if (verify_load) {
      Mat g = build_generator(c.field, c.points, c.functions, c.basis, c.infinity_shift);
      if (!(g == c.G)) throw InvariantError("descriptor: stored generator differs from the one derived from basis and points");
    }
    return c;
  } catch (const json::exception& e) {
    throw UsageError(std::string("descriptor: malformed document: ") + e.what());
  }
}

inline EvalCode load_string(const std::string& s, bool verify_load = false) {
  json j;
  try {
    j = json::parse(s);
  } catch (const json::exception& e) {
    throw UsageError(std::string("descriptor: parse error: ") + e.what());
  }
  return from_json(j, verify_load);
}

inline void save_file(const EvalCode& c, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << save_string(c);
}

inline EvalCode load_file(const std::string& path, bool verify_load = false) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return load_string(ss.str(), verify_load);
}

}  // namespace hlrc
