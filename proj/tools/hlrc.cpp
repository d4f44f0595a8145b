#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "hlrc/hlrc.hpp"
#include "reproduce.hpp"

using namespace hlrc;

namespace {

enum Exit { kOk = 0, kDecodeFailure = 1, kBadParams = 2, kInvariant = 3 };

std::string read_all(const std::string& path) {
  if (path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_all(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text;
}

// Words: whitespace-separated integer reps, '?' for an erased symbol.
ErasedWord parse_word(const std::string& text) {
  std::istringstream in(text);
  ErasedWord w;
  std::string tok;
  while (in >> tok) {
    if (tok == "?") {
      w.push_back(std::nullopt);
      continue;
    }
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size()) throw UsageError("word: bad token '" + tok + "'");
    w.push_back(Fe{static_cast<std::uint32_t>(v)});
  }
  return w;
}

std::string format_word(const ErasedWord& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ' ';
    s += w[i] ? std::to_string(w[i]->rep) : "?";
  }
  return s + "\n";
}

std::string format_word(const Vec& v) { return format_word(ErasedWord(v.begin(), v.end())); }

Vec full_word(const ErasedWord& w) {
  Vec v;
  for (const auto& s : w) {
    if (!s) throw UsageError("word has erased symbols");
    v.push_back(*s);
  }
  return v;
}

std::vector<std::size_t> parse_index_list(const std::string& s) {
  std::vector<std::size_t> out;
  std::string tok;
  std::istringstream in(s);
  while (std::getline(in, tok, ',')) {
    std::istringstream t(tok);
    std::size_t v;
    if (!(t >> v)) throw UsageError("positions: bad entry '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

template <class T>
std::vector<T> parse_list(const std::string& s) {
  std::vector<T> out;
  std::string tok;
  std::istringstream in(s);
  while (std::getline(in, tok, ',')) {
    std::istringstream t(tok);
    T v;
    if (!(t >> v)) throw UsageError("bad list entry '" + tok + "'");
    out.push_back(v);
  }
  if (out.empty()) throw UsageError("empty list");
  return out;
}

json access_json(const std::vector<std::size_t>& a) { return json(a); }

// ---------------------------------------------------------------------------

struct ConstructArgs {
  std::uint64_t q = 0;
  std::size_t r2 = 0, s = 0, t = 0, n = 0, rho2 = 0, a = 0, b = 0, ell = 0;
  std::size_t s1 = 0, s2 = 0, t1 = 0, t2 = 0, c = 1, m = 1;
  bool flat = false;
  std::string out;
};

void add_construct(CLI::App& app, int& rc) {
  auto* cmd = app.add_subcommand("construct", "Build a code and write its descriptor");
  cmd->require_subcommand(1);
  auto args = std::make_shared<ConstructArgs>();
  auto common = [&, args](CLI::App* sub) {
    sub->add_option("--q", args->q, "Field size (prime power)")->required();
    sub->add_option("--out", args->out, "Descriptor file (default stdout)");
  };
  auto finish = [&rc, args](const EvalCode& c) {
    write_all(args->out, save_string(c));
    if (!args->out.empty())
      std::cerr << c.claims.tag << ": [" << c.claims.n << ", " << c.claims.k << ", " << c.claims.d_lower << "] -> "
                << args->out << "\n";
    rc = kOk;
  };

  auto* rs = cmd->add_subcommand("rs-hlrc", "RS-based H-LRC on a multiplicative subgroup");
  common(rs);
  rs->add_option("--r2", args->r2)->required();
  rs->add_option("--s", args->s)->required();
  rs->add_option("--t", args->t)->required();
  rs->add_option("--n", args->n)->required();
  rs->add_flag("--flat", args->flat, "One-level comparison code");
  rs->callback([=] { finish(construct_rs_hlrc(field_of_order(args->q), args->r2, args->s, args->t, args->n, args->flat)); });

  auto* rho = cmd->add_subcommand("rs-hlrc-rho2", "RS-based H-LRC with local distance rho2");
  common(rho);
  rho->add_option("--r2", args->r2)->required();
  rho->add_option("--rho2", args->rho2)->required();
  rho->add_option("--s", args->s)->required();
  rho->add_option("--t", args->t)->required();
  rho->add_option("--n", args->n)->required();
  rho->callback([=] {
    finish(construct_rs_hlrc_rho2(field_of_order(args->q), args->r2, args->rho2, args->s, args->t, args->n));
  });

  auto* pl = cmd->add_subcommand("projline-q1", "Length q+1 code on the projective line");
  common(pl);
  pl->add_option("--r2", args->r2)->required();
  pl->add_option("--s", args->s)->required();
  pl->add_option("--t", args->t)->required();
  pl->callback([=] { finish(construct_projline_qplus1(field_of_order(args->q), args->r2, args->s, args->t)); });

  auto* he = cmd->add_subcommand("hermitian", "Code on the Hermitian curve");
  common(he);
  he->add_option("--a", args->a)->required();
  he->add_option("--b", args->b)->required();
  he->add_option("--ell", args->ell)->required();
  he->callback([=] { finish(construct_hermitian_hlrc(field_of_order(args->q), args->a, args->b, args->ell)); });

  auto* av = cmd->add_subcommand("rs-avail", "RS code with two hierarchies");
  common(av);
  av->add_option("--s1", args->s1)->required();
  av->add_option("--s2", args->s2)->required();
  av->add_option("--t1", args->t1)->required();
  av->add_option("--t2", args->t2)->required();
  av->add_option("--c", args->c);
  av->add_option("--m", args->m);
  av->callback([=] {
    finish(construct_rs_availability(field_of_order(args->q), args->s1, args->s2, args->t1, args->t2, args->c, args->m));
  });
}

struct EncodeArgs {
  std::string code, message, out;
  bool random = false;
  std::uint64_t seed = 1;
  bool verify_load = false;
};

void add_encode(CLI::App& app, int& rc) {
  auto args = std::make_shared<EncodeArgs>();
  auto* cmd = app.add_subcommand("encode", "Encode a message");
  cmd->add_option("--code", args->code)->required();
  auto* msg = cmd->add_option("--message", args->message, "Message symbols, whitespace or comma separated");
  auto* rnd = cmd->add_flag("--random", args->random, "Random message");
  msg->excludes(rnd);
  cmd->add_option("--seed", args->seed);
  cmd->add_option("--out", args->out);
  cmd->add_flag("--verify-load", args->verify_load);
  cmd->callback([args, &rc] {
    EvalCode c = load_file(args->code, args->verify_load);
    Vec m;
    if (args->random) {
      std::mt19937_64 rng(args->seed);
      m = reproduce::random_vec(*c.field, c.k(), rng);
    } else {
      if (args->message.empty()) throw UsageError("encode: give --message or --random");
      std::string s = args->message;
      std::replace(s.begin(), s.end(), ',', ' ');
      m = full_word(parse_word(s));
    }
    write_all(args->out, format_word(encode(c, m)));
    rc = kOk;
  });
}

struct EraseArgs {
  std::string word, positions, mask, out;
  std::size_t count = 0;
  std::uint64_t seed = 1;
};

void add_erase(CLI::App& app, int& rc) {
  auto args = std::make_shared<EraseArgs>();
  auto* cmd = app.add_subcommand("erase", "Erase positions of a word");
  cmd->add_option("--word", args->word, "Word file, '-' for stdin")->required();
  auto* pos = cmd->add_option("--positions", args->positions, "Comma separated indices");
  auto* cnt = cmd->add_option("--random-count", args->count, "Erase this many random positions");
  auto* msk = cmd->add_option("--mask", args->mask, "File of 0/1 flags, 1 = erased");
  pos->excludes(cnt)->excludes(msk);
  cnt->excludes(msk);
  cmd->add_option("--seed", args->seed);
  cmd->add_option("--out", args->out);
  cmd->callback([args, pos, cnt, msk, &rc] {
    ErasedWord w = parse_word(read_all(args->word));
    std::vector<std::size_t> era;
    if (*pos) {
      era = parse_index_list(args->positions);
    } else if (*cnt) {
      if (args->count > w.size()) throw UsageError("erase: count exceeds word length");
      std::vector<std::size_t> idx(w.size());
      std::iota(idx.begin(), idx.end(), 0);
      std::mt19937_64 rng(args->seed);
      std::shuffle(idx.begin(), idx.end(), rng);
      era.assign(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(args->count));
      std::sort(era.begin(), era.end());
    } else if (*msk) {
      std::istringstream in(read_all(args->mask));
      int flag;
      std::size_t i = 0;
      for (; in >> flag; ++i) {
        if (flag != 0 && flag != 1) throw UsageError("mask: entries must be 0 or 1");
        if (flag) era.push_back(i);
      }
      if (i != w.size()) throw UsageError("mask: length " + std::to_string(i) + " != word length " + std::to_string(w.size()));
    } else {
      throw UsageError("erase: give --positions, --random-count or --mask");
    }
    for (auto p : era) {
      if (p >= w.size()) throw UsageError("erase: position " + std::to_string(p) + " out of range");
      w[p] = std::nullopt;
    }
    write_all(args->out, format_word(w));
    rc = kOk;
  });
}

struct DecodeArgs {
  std::string code, word, level = "auto", availability, out;
  std::size_t hierarchy = 1;
  bool verify_load = false;
};

void add_decode(CLI::App& app, int& rc) {
  auto args = std::make_shared<DecodeArgs>();
  auto* cmd = app.add_subcommand("decode", "Repair erasures");
  cmd->add_option("--code", args->code)->required();
  cmd->add_option("--word", args->word, "Erased word file, '-' for stdin")->required();
  cmd->add_option("--level", args->level, "auto|local|middle|global")
      ->check(CLI::IsMember({"auto", "local", "middle", "global"}));
  cmd->add_option("--availability", args->availability, "1|2|auto: per-position repair on a two-hierarchy code")
      ->check(CLI::IsMember({"1", "2", "auto"}));
  cmd->add_option("--hierarchy", args->hierarchy, "Hierarchy used by --level (1-based)");
  cmd->add_option("--out", args->out, "Write the repaired word here instead of stdout");
  cmd->add_flag("--verify-load", args->verify_load);
  cmd->callback([args, &rc] {
    EvalCode c = load_file(args->code, args->verify_load);
    ErasedWord w = parse_word(read_all(args->word));
    Decoder dec(c);
    RepairReport rep;
    std::optional<Vec> res;
    if (!args->availability.empty()) {
      const int which = args->availability == "auto" ? 0 : std::stoi(args->availability);
      rep.success = true;
      for (auto p : erased_positions(w)) {
        auto a = dec.availability_repair(w, p, which);
        if (!a) {
          rep.success = false;
          continue;
        }
        rep.entries[p] = RepairEntry{a->value, a->level, a->access, a->hierarchy - 1};
      }
      if (rep.success) {
        Vec v(w.size());
        for (std::size_t i = 0; i < w.size(); ++i) v[i] = w[i] ? *w[i] : rep.entries.at(i).value;
        if (!dec.is_codeword(v)) throw InvariantError("decode: repaired word is not a codeword");
        res = v;
      }
    } else {
      if (args->hierarchy < 1 || args->hierarchy > c.hierarchies.size())
        throw UsageError("decode: --hierarchy must be in 1.." + std::to_string(c.hierarchies.size()));
      Policy pol;
      if (args->level != "auto") pol = Policy{args->level == "local", args->level == "middle", args->level == "global"};
      std::tie(res, rep) = dec.hierarchical_decode(w, args->hierarchy - 1, pol);
    }
    std::ostringstream text;
    json j;
    j["success"] = res.has_value();
    j["erased"] = erased_positions(w);
    json ent = json::array();
    for (const auto& [p, e] : rep.entries) {
      text << "repair " << p << ": value " << e.value.rep << ", level " << to_string(e.level) << ", hierarchy "
           << e.hierarchy + 1 << ", reads " << e.access.size() << "\n";
      ent.push_back({{"position", p},
                     {"value", e.value.rep},
                     {"level", to_string(e.level)},
                     {"hierarchy", e.hierarchy + 1},
                     {"access", access_json(e.access)}});
    }
    j["repairs"] = ent;
    if (res) {
      write_all(args->out, format_word(*res));
    } else {
      for (auto p : erased_positions(w))
        if (!rep.entries.count(p)) text << "unrepaired " << p << "\n";
    }
    std::ostream& os = args->out.empty() ? std::cerr : std::cout;
    os << "status: " << (res ? "decoded" : "failed") << "\n" << text.str() << j.dump(2) << "\n";
    rc = res ? kOk : kDecodeFailure;
  });
}

struct VerifyArgs {
  std::string code;
  std::uint64_t budget = 10'000'000, seed = 1;
  bool verify_load = false, skip_locality = false;
};

json distance_json(const DistanceResult& d) {
  return {{"lower", d.lower},   {"upper", d.upper},         {"exact", d.exact}, {"method_lower", d.method_lower},
          {"method_upper", d.method_upper}, {"seed", d.seed}, {"work", d.work}};
}

void add_verify(CLI::App& app, int& rc, const unsigned& threads) {
  auto args = std::make_shared<VerifyArgs>();
  auto* cmd = app.add_subcommand("verify", "Measure distance and locality, compare with the bounds");
  cmd->add_option("--code", args->code)->required();
  cmd->add_option("--distance-budget", args->budget, "Codeword and rank-test budget");
  cmd->add_option("--seed", args->seed, "Witness search seed");
  cmd->add_flag("--skip-locality", args->skip_locality);
  cmd->add_flag("--verify-load", args->verify_load);
  cmd->callback([args, &rc, &threads] {
    EvalCode c = load_file(args->code, args->verify_load);
    DistanceOptions opt;
    opt.codeword_budget = opt.rank_budget = args->budget;
    opt.seed = args->seed;
    opt.threads = threads;
    const auto d = min_distance_exact(c, opt);
    std::cout << "code: " << c.claims.tag << " [" << c.n() << ", " << c.k() << "] over GF(" << c.field->q() << ")\n";
    std::cout << "rank: " << rank(c.G) << "\n";
    std::cout << "claimed_distance: " << c.claims.d_lower << "\n";
    std::cout << "distance: " << d.lower << (d.exact ? "" : ".." + std::to_string(d.upper)) << " (lower via "
              << d.method_lower << ", upper via " << d.method_upper << ")\n";
    json j;
    j["distance"] = distance_json(d);
    bool ok = d.upper >= c.claims.d_lower;
    std::optional<DistanceResult> mid;
    if (!args->skip_locality) {
      auto rep = verify_locality(c, opt);
      json hs = json::array();
      for (std::size_t i = 0; i < rep.hierarchies.size(); ++i) {
        const auto& h = rep.hierarchies[i];
        const auto& ch = c.hierarchy(i);
        std::cout << "hierarchy " << i + 1 << ": middle rank " << h.max_middle_rank << " (claim " << ch.r1
                  << "), middle distance " << h.min_middle_distance << (h.middle_exact ? "" : "+") << " (claim " << ch.rho1
                  << "), local rank " << h.max_local_rank << " (claim " << ch.r2 << "), local distance "
                  << h.min_local_distance << (h.local_exact ? "" : "+") << " (claim " << ch.rho2 << ")\n";
        for (const auto& v : h.violations) std::cout << "violation: " << v << "\n";
        hs.push_back({{"max_middle_rank", h.max_middle_rank},
                      {"min_middle_distance", h.min_middle_distance},
                      {"middle_exact", h.middle_exact},
                      {"max_local_rank", h.max_local_rank},
                      {"min_local_distance", h.min_local_distance},
                      {"local_exact", h.local_exact},
                      {"violations", h.violations}});
      }
      j["locality"] = hs;
      ok = ok && rep.ok();
      if (!rep.hierarchies.empty()) {
        const auto& h0 = rep.hierarchies[0];
        DistanceResult m;
        m.lower = h0.min_middle_distance;
        m.upper = h0.min_middle_distance;
        for (const auto& g : h0.middle) m.upper = std::min(m.upper, g.distance.upper);
        m.exact = h0.middle_exact;
        mid = m;
      }
    }
    auto br = check_optimal(c, d, mid);
    std::cout << "bound_lrc: " << br.eq2 << "\n";
    std::cout << "bound_lrc_rho2: " << br.eq3 << "\n";
    if (br.hierarchical) {
      std::cout << "bound_hlrc: " << br.eq4 << "\n";
      std::cout << "middle_bound_lrc: " << br.middle_eq2 << "\n";
      std::cout << "middle_bound_lrc_rho2: " << br.middle_eq3 << "\n";
      std::cout << "verdict_middle: " << to_string(br.middle) << "\n";
    } else {
      std::cout << "bound_hlrc: not evaluated (one-level code)\n";
    }
    std::cout << "verdict_full: " << to_string(br.full) << "\n";
    std::cout << "claims: " << (ok ? "consistent" : "refuted") << "\n";
    j["bounds"] = {{"eq2", br.eq2},
                   {"eq3", br.eq3},
                   {"eq4", br.eq4},
                   {"middle_eq2", br.middle_eq2},
                   {"middle_eq3", br.middle_eq3},
                   {"hierarchical", br.hierarchical},
                   {"full", to_string(br.full)},
                   {"middle", to_string(br.middle)}};
    j["claims_consistent"] = ok;
    std::cout << j.dump(2) << "\n";
    rc = ok ? kOk : kInvariant;
  });
}

// ---------------------------------------------------------------------------

struct Table {
  std::vector<std::string> head;
  std::vector<std::vector<std::string>> rows;

  std::string render(bool csv) const {
    std::ostringstream out;
    if (csv) {
      for (const auto& r : [&] {
             auto all = rows;
             all.insert(all.begin(), head);
             return all;
           }()) {
        for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << r[i];
        out << "\n";
      }
      return out.str();
    }
    std::vector<std::size_t> w(head.size());
    for (std::size_t i = 0; i < head.size(); ++i) w[i] = head[i].size();
    for (const auto& r : rows)
      for (std::size_t i = 0; i < r.size(); ++i) w[i] = std::max(w[i], r[i].size());
    auto line = [&](const std::vector<std::string>& r) {
      for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "  " : "") << std::setw(static_cast<int>(w[i])) << r[i];
      out << "\n";
    };
    line(head);
    for (const auto& r : rows) line(r);
    return out.str();
  }
};

std::string num(double v, int prec = 4) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(prec) << v;
  return s.str();
}

struct BoundArgs {
  std::int64_t n = 0, r = 0, rho = 2, q0 = 0, j = 1, ell = 0, a = 0, b = 0, c = 1, s1 = 0, s2 = 0, t1 = 0, t2 = 0, m = 1;
  std::int64_t t = 0, r2 = 0, s = 0, deg_y = 1, deg_x = 1, deg_psi = 0, g_Z = 0, deg_Qinf = 0, nu = 0, r1 = 0, enum_k = 0;
  std::uint64_t q = 0;
  std::string k, levels, delta = "0.5";
  bool csv = false;
};

void add_bounds(CLI::App& app, int& rc) {
  auto args = std::make_shared<BoundArgs>();
  auto* cmd = app.add_subcommand("bounds", "Evaluate distance bounds and parameter predictors");
  cmd->require_subcommand(1);
  cmd->add_flag("--csv", args->csv, "CSV instead of aligned text");
  auto emit = [args, &rc](const Table& t) {
    std::cout << t.render(args->csv);
    rc = kOk;
  };

  auto* sb = cmd->add_subcommand("sb", "LRC Singleton-type bound");
  sb->add_option("--n", args->n)->required();
  sb->add_option("--k", args->k, "k or comma list")->required();
  sb->add_option("--r", args->r)->required();
  sb->add_option("--rho", args->rho);
  sb->callback([args, emit] {
    Table t{{"n", "k", "r", "rho", "d_max"}, {}};
    for (auto k : parse_list<std::int64_t>(args->k))
      t.rows.push_back({std::to_string(args->n), std::to_string(k), std::to_string(args->r), std::to_string(args->rho),
                        std::to_string(bound_sb(args->n, k, args->r, args->rho))});
    emit(t);
  });

  auto* sb2 = cmd->add_subcommand("sb2", "LRC bound with rho = 2");
  sb2->add_option("--n", args->n)->required();
  sb2->add_option("--k", args->k)->required();
  sb2->add_option("--r", args->r)->required();
  sb2->callback([args, emit] {
    Table t{{"n", "k", "r", "d_max"}, {}};
    for (auto k : parse_list<std::int64_t>(args->k))
      t.rows.push_back({std::to_string(args->n), std::to_string(k), std::to_string(args->r),
                        std::to_string(bound_sb2(args->n, k, args->r))});
    emit(t);
  });

  auto* hl = cmd->add_subcommand("hlrc", "Hierarchical bound");
  hl->add_option("--n", args->n)->required();
  hl->add_option("--k", args->k)->required();
  hl->add_option("--levels", args->levels, "r1:rho1,r2:rho2,... outermost first")->required();
  hl->callback([args, emit] {
    std::vector<Locality> lv;
    for (const auto& item : parse_list<std::string>(args->levels)) {
      auto colon = item.find(':');
      if (colon == std::string::npos) throw UsageError("levels: expected r:rho, got '" + item + "'");
      lv.emplace_back(std::stoll(item.substr(0, colon)), std::stoll(item.substr(colon + 1)));
    }
    std::string shown = args->levels;
    std::replace(shown.begin(), shown.end(), ',', ';');
    Table t{{"n", "k", "levels", "d_max"}, {}};
    for (auto k : parse_list<std::int64_t>(args->k))
      t.rows.push_back({std::to_string(args->n), std::to_string(k), shown, std::to_string(bound_hlrc(args->n, k, lv))});
    emit(t);
  });

  auto* pg = cmd->add_subcommand("predict-general", "Parameters of the general covering construction");
  for (auto [name, ref] : std::vector<std::pair<const char*, std::int64_t*>>{{"--t", &args->t},
                                                                             {"--r2", &args->r2},
                                                                             {"--s", &args->s},
                                                                             {"--deg-y", &args->deg_y},
                                                                             {"--deg-x", &args->deg_x},
                                                                             {"--deg-psi", &args->deg_psi},
                                                                             {"--genus", &args->g_Z},
                                                                             {"--deg-qinf", &args->deg_Qinf},
                                                                             {"--n", &args->n}})
    pg->add_option(name, *ref);
  pg->callback([args, emit] {
    GeneralParams p{args->t, args->r2, args->s, args->deg_y, args->deg_x, args->deg_psi ? args->deg_psi : 1,
                    args->g_Z, args->deg_Qinf, args->n};
    auto o = predict_general(p);
    emit({{"nu", "r1", "rho1_lower", "k", "k_lower", "d_lower"},
          {{std::to_string(o.nu), std::to_string(o.r1), std::to_string(o.rho1_lower), std::to_string(o.k),
            std::to_string(o.k_lower), std::to_string(o.d_lower)}}});
  });

  auto* gs = cmd->add_subcommand("predict-gs", "Parameters on the Garcia-Stichtenoth tower");
  gs->add_option("--q0", args->q0)->required();
  gs->add_option("--j", args->j)->required();
  gs->add_option("--ell", args->ell)->required();
  gs->add_option("--deg-psi", args->deg_psi);
  gs->callback([args, emit] {
    auto o = predict_gs(args->q0, args->j, args->ell, args->deg_psi ? std::optional<std::int64_t>(args->deg_psi) : std::nullopt);
    emit({{"n", "r1", "rho1_lower", "r2", "rho2", "genus_upper", "k_lower", "d_lower"},
          {{std::to_string(o.n), std::to_string(o.r1), std::to_string(o.rho1_lower) + (o.rho1_from_deg_psi ? "" : "*"),
            std::to_string(o.r2), std::to_string(o.rho2), std::to_string(o.genus_upper), std::to_string(o.k_lower),
            std::to_string(o.d_lower)}}});
  });

  auto* pw = cmd->add_subcommand("predict-pow", "Parameters of the power-map construction on the tower");
  pw->add_option("--q0", args->q0)->required();
  pw->add_option("--j", args->j)->required();
  pw->add_option("--a", args->a)->required();
  pw->add_option("--b", args->b)->required();
  pw->add_option("--ell", args->ell)->required();
  pw->callback([args, emit] {
    auto o = predict_pow(args->q0, args->j, args->a, args->b, args->ell);
    emit({{"n", "nu", "t", "k", "d_lower", "r1", "rho1", "r2", "rho2"},
          {{std::to_string(o.n), std::to_string(o.nu), std::to_string(o.t) + (o.t_exact ? "" : "*"), std::to_string(o.k),
            std::to_string(o.d_lower), std::to_string(o.r1), std::to_string(o.rho1), std::to_string(o.r2),
            std::to_string(o.rho2)}}});
  });

  auto* pa = cmd->add_subcommand("predict-avail", "Parameters of the RS availability code");
  for (auto [name, ref] : std::vector<std::pair<const char*, std::int64_t*>>{
           {"--s1", &args->s1}, {"--s2", &args->s2}, {"--t1", &args->t1}, {"--t2", &args->t2}})
    pa->add_option(name, *ref)->required();
  pa->add_option("--c", args->c);
  pa->add_option("--m", args->m);
  pa->callback([args, emit] {
    auto o = predict_availability(rs_availability_params(args->c, args->s1, args->s2, args->t1, args->t2, args->m));
    emit({{"n", "k", "d_lower", "nu1", "r11", "rho11_lower", "nu2", "r12", "rho12_lower"},
          {{std::to_string(o.n), std::to_string(o.k), std::to_string(o.d_lower), std::to_string(o.nu1),
            std::to_string(o.r11), std::to_string(o.rho11_lower), std::to_string(o.nu2), std::to_string(o.r12),
            std::to_string(o.rho12_lower)}}});
  });

  auto* gv = cmd->add_subcommand("gv", "Gilbert-Varshamov rate with an RS local code");
  gv->add_option("--nu", args->nu)->required();
  gv->add_option("--r1", args->r1)->required();
  gv->add_option("--q", args->q)->required();
  gv->add_option("--enum-k", args->enum_k, "Dimension of the RS code whose enumerator is used (default r1)");
  gv->add_option("--delta", args->delta, "delta or comma list");
  gv->callback([args, emit] {
    auto we = rs_weight_enumerator(args->nu, args->enum_k ? args->enum_k : args->r1, args->q);
    Table t{{"delta", "rate", "s_star", "objective", "objective_lo", "objective_hi"}, {}};
    for (double d : parse_list<double>(args->delta)) {
      auto g = gv_rate(args->nu, args->r1, we, d, args->q);
      t.rows.push_back({num(d, 3), num(g.rate), num(g.s_star, 6), num(g.objective), num(g.objective_lo), num(g.objective_hi)});
    }
    emit(t);
  });

  auto* as = cmd->add_subcommand("asymptotic", "Asymptotic rate of the tower families");
  as->add_option("--q0", args->q0)->required();
  as->add_option("--delta", args->delta, "delta or comma list");
  as->add_option("--a", args->a, "power-map a");
  as->add_option("--b", args->b);
  as->add_option("--s", args->s);
  as->add_option("--r2", args->r2);
  as->callback([args, emit] {
    const double q0 = static_cast<double>(args->q0);
    Table t{{"delta", "gs", "prop2", "pow"}, {}};
    for (double d : parse_list<double>(args->delta)) {
      std::string p2 = args->s && args->r2 ? num(asympt_prop2(q0, args->s, args->r2, d)) : "-";
      std::string pw = args->a && args->b ? num(asympt_pa(q0, args->a, args->b, d)) : "-";
      t.rows.push_back({num(d, 3), num(asympt_ab(q0, d)), p2, pw});
    }
    emit(t);
  });
}

void add_examples(CLI::App& app, int& rc, const unsigned& threads) {
  auto name = std::make_shared<std::string>();
  auto* cmd = app.add_subcommand("paper", "Reproduce a worked example: f37, q27, hermitian8, avail41, gv19")->alias("examples");
  std::vector<std::string> names;
  for (const auto& e : reproduce::examples()) names.push_back(e.name);
  cmd->add_option("example", *name)->required()->check(CLI::IsMember(names));
  cmd->callback([name, &rc, &threads] {
    for (const auto& e : reproduce::examples()) {
      if (e.name != *name) continue;
      if (e.name == "hermitian8") std::cout << reproduce::hermitian_note() << "\n";
      bool all = true;
      for (const auto& c : e.run(threads)) {
        std::cout << (c.pass ? "PASS" : "FAIL") << "  " << c.name << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
        all = all && c.pass;
      }
      rc = all ? kOk : kInvariant;
    }
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hierarchical locally recoverable codes"};
  app.require_subcommand(1);
  unsigned threads = 0;
  app.add_option("--threads", threads, "Worker threads for verification (0 = all cores)");
  int rc = kOk;
  add_construct(app, rc);
  add_encode(app, rc);
  add_erase(app, rc);
  add_decode(app, rc);
  add_verify(app, rc, threads);
  add_bounds(app, rc);
  add_examples(app, rc, threads);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadParams;
  } catch (const InvariantError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvariant;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadParams;
  }
  return rc;
}
