#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "lr/errors.hpp"
#include "lr/exact/fp.hpp"
#include "lr/level/grid.hpp"
#include "lr/local/rank_one.hpp"
#include "lr/local/satake.hpp"
#include "lr/local/tables.hpp"

using json = nlohmann::json;
using namespace lr;

namespace {

const char* kHypotheses = R"(Enforced hypotheses (violations exit with status 1):
  p       prime; the quaternion algebra is ramified exactly at p and infinity.
  q       prime, q != p; the level is raised at q (K = maximal, J = Iwahori).
  ell     prime, ell not dividing q * [K':J]_K.
  raise-level additionally refuses unless, for the chosen old eigensystem f
  and the place above ell:
    - f is not abelian mod ell (not congruent to the trivial or the
      quadratic character twist of the Eisenstein system);
    - the level-raising criterion holds:
        eta_f(e_{K,K'}) = eta_1(e_{K,K'}) mod ell, where
        e_{K,K'} = [K:J][K':J]_K e_K e_K' e_K;
    - at least two finite places v have ell not dividing |K_v|.
  Comparisons of eigensystems use the primes r <= rbound with r not dividing pq.
Exit status: 0 success, 1 hypothesis violation, 2 internal invariant failure
or a falsified identity.)";

struct Common {
  std::uint64_t seed = 1;
  std::string output;
  std::string format = "json";
};

void add_common(CLI::App* sub, Common& c, bool csv) {
  sub->add_option("--seed", c.seed, "Random seed, recorded in the output")->capture_default_str();
  sub->add_option("-o,--output", c.output, "Write to this file instead of stdout");
  auto* fmt = sub->add_option("--out", c.format, "Output format")->capture_default_str();
  fmt->check(CLI::IsMember(csv ? std::vector<std::string>{"json", "csv"} : std::vector<std::string>{"json"}));
}

void emit(const Common& c, const std::string& text) {
  if (c.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.output, std::ios::binary);
  if (!f) throw HypothesisError("cannot open output file " + c.output);
  f << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return out + "\"";
}

void require_prime(long n, const std::string& name) {
  if (n < 2 || !fp::is_prime(static_cast<fp::u64>(n))) throw HypothesisError(name + " = " + std::to_string(n) + " is not prime");
}

bool is_prime_power(long n) {
  if (n < 2) return false;
  long p = 2;
  while (n % p) ++p;
  while (n % p == 0) n /= p;
  return n == 1;
}

json valuation_json(const Valuation& v) { return v.infinite ? json(nullptr) : json(v.value); }

quat::ClassSet class_set(long p) {
  require_prime(p, "p");
  auto alg = quat::build_algebra(p);
  return quat::ideal_classes(alg, quat::maximal_order(alg));
}

// brandt ----------------------------------------------------------------

struct BrandtArgs {
  Common c;
  long p = 0, nmax = 10;
};

int run_brandt(const BrandtArgs& a) {
  if (a.nmax < 1) throw HypothesisError("nmax must be positive");
  auto cs = class_set(a.p);
  quat::ThetaTable theta(cs.alg, cs.objects(), a.nmax);
  json mats = json::array();
  std::ostringstream csv;
  csv << "n,row,col,value\n";
  for (long n = 1; n <= a.nmax; ++n) {
    if (n % a.p == 0) continue;
    IntMatrix b = theta.brandt(n);
    json rows = json::array();
    for (std::size_t i = 0; i < b.rows; ++i) {
      json row = json::array();
      for (std::size_t j = 0; j < b.cols; ++j) {
        row.push_back(b(i, j).get_si());
        csv << n << ',' << i << ',' << j << ',' << b(i, j).get_str() << '\n';
      }
      rows.push_back(row);
    }
    mats.push_back({{"n", n}, {"entries", rows}});
  }
  if (a.c.format == "csv") {
    emit(a.c, csv.str());
    return 0;
  }
  json out{{"p", a.p}, {"h", cs.size()}, {"weights", cs.weights}, {"matrices", mats}, {"seed", a.c.seed}};
  emit(a.c, dump(out));
  return 0;
}

// raise-level -----------------------------------------------------------

struct RaiseArgs {
  Common c;
  long p = 0, q = 0, ell = 0, rbound = 50;
  std::size_t form = 0;
};

int run_raise(const RaiseArgs& a) {
  require_prime(a.q, "q");
  require_prime(a.ell, "ell");
  if (a.rbound < 2) throw HypothesisError("rbound must be at least 2");
  auto cs = class_set(a.p);
  level::Instance inst = level::make_instance(cs, a.q, a.rbound);
  auto ix = level::parahoric_indices(inst.ls);
  if ((Int(a.q) * ix.kp_rel()) % a.ell == 0) throw HypothesisError("hypothesis violated: ell divides q[K':J]_K");
  auto forms = level::old_eigenforms(inst);
  const auto ell = static_cast<std::uint32_t>(a.ell);

  struct Target {
    std::size_t form;
    level::LocalData ld;
  };
  std::vector<Target> targets;
  json old = json::array();
  for (std::size_t fi = 0; fi < forms.size(); ++fi) {
    const auto& f = forms[fi];
    if (level::is_eisenstein(f)) continue;
    for (auto& ld : level::local_data(f, ell)) {
      json ev = json::object();
      for (long r : f.labels) ev[std::to_string(r)] = f.field.to_string(f.value(r));
      ZPoly phi;
      for (auto x : ld.place.phi) phi.push_back(Int(x));
      old.push_back({{"index", targets.size()},
                     {"dim", f.dim()},
                     {"generator_minpoly", poly_to_string(f.field.g)},
                     {"place", poly_to_string(phi)},
                     {"eigenvalues", ev}});
      targets.push_back({fi, ld});
    }
  }
  if (targets.empty()) throw HypothesisError("no cuspidal old eigensystem at this level");
  if (a.form >= targets.size())
    throw HypothesisError("--form " + std::to_string(a.form) + " out of range (" + std::to_string(targets.size()) +
                          " old eigensystems)");
  Target& t = targets[a.form];
  const auto& f = forms[t.form];
  auto st = level::star_criterion(inst, f, t.ld);
  auto ab = level::abelian_test(f, t.ld, a.p, inst.rbound);
  level::NewSpace ns = level::new_space(inst);
  level::RaiseResult rr = level::raise_level(inst, ns, f, t.ld);

  json cong = json::array();
  for (const auto& es : rr.congruent) {
    GF Fk = GF::canonical(ell, es.k);
    json vals = json::object();
    for (std::size_t i = 0; i < inst.labels.size(); ++i) vals[std::to_string(inst.labels[i])] = Fk.to_string(es.values[i]);
    cong.push_back({{"k", es.k}, {"multiplicity", es.multiplicity}, {"values", vals}});
  }
  json out{{"p", a.p},
           {"q", a.q},
           {"ell", a.ell},
           {"rbound", a.rbound},
           {"seed", a.c.seed},
           {"form", a.form},
           {"old_eigensystems", old},
           {"star_holds", st.holds},
           {"abelian", ab.has_value()},
           {"m", f.field.to_string(st.m)},
           {"n0", valuation_json(st.n0)},
           {"new_congruent", cong},
           {"lift_exponent", rr.lift_exponent}};
  emit(a.c, dump(out));
  return 0;
}

// ihara-check -----------------------------------------------------------

struct IharaArgs {
  Common c;
  long p = 0, q = 0;
  std::size_t trials = 200;
};

int run_ihara(const IharaArgs& a) {
  require_prime(a.q, "q");
  auto cs = class_set(a.p);
  auto ls = level::build_level_structure(cs, a.q);
  auto r = level::ihara_trials(ls, a.trials, a.c.seed);
  json out{{"p", a.p},   {"q", a.q},           {"trials", r.trials}, {"seed", a.c.seed},
           {"pass", r.passed}, {"fail", r.failed}, {"off_image_refused", r.refused_off_image}};
  emit(a.c, dump(out));
  return r.failed == 0 ? 0 : 2;
}

// tables ----------------------------------------------------------------

struct TablesArgs {
  Common c;
  std::string group;
  long q = 0;
  bool verify = false;
};

json index_json(const std::vector<local::IndexEntry>& es) {
  json a = json::array();
  for (const auto& e : es) a.push_back({{"label", e.label}, {"value", e.value.get_str()}, {"source", e.source}});
  return a;
}

int run_tables(const TablesArgs& a) {
  if (!is_prime_power(a.q)) throw HypothesisError("q = " + std::to_string(a.q) + " is not a prime power");
  const auto q = static_cast<unsigned>(a.q);
  json out{{"group", a.group}, {"q", a.q}, {"seed", a.c.seed}};
  std::ostringstream csv;
  std::vector<local::GoldenCheck> checks;
  if (a.group == "u3") {
    auto closed = local::parahoric_indices(local::IndexKind::U3, q);
    auto model = local::model_indices(local::IndexKind::U3, q);
    out["indices"] = index_json(closed);
    out["model_indices"] = index_json(model);
    json chars = json::array();
    for (const auto& ch : local::iwahori_rank1_characters(a.q))
      chars.push_back({{"name", ch.name}, {"T", to_string(ch.t)}, {"T'", to_string(ch.tp)}, {"T_K", to_string(ch.tk())},
                       {"T_K'", to_string(ch.tkp())}});
    out["iwahori_characters"] = chars;
    json scan = json::array();
    for (const auto& x : local::reducibility_scan(a.q)) scan.push_back(to_string(x));
    out["module_reducibility_points"] = scan;
    if (a.q % 2) {
      json pts = json::array();
      for (const auto& x : local::u3_reducibility_points(a.q)) pts.push_back(to_string(x));
      out["unipotent_reducibility_points"] = pts;
    } else {
      out["unipotent_reducibility_points"] = "unhandled: even q";
    }
    csv << "label,value,source\n";
    for (const auto& e : closed) csv << csv_field(e.label) << ',' << e.value.get_str() << ',' << csv_field(e.source) << '\n';
    for (const auto& e : model) csv << csv_field(e.label) << ',' << e.value.get_str() << ',' << csv_field(e.source) << '\n';
    if (a.verify)
      for (const auto& m : model)
        for (const auto& e : closed)
          if (e.label == m.label)
            checks.push_back({m.label, static_cast<long>(e.value.get_si()), static_cast<long>(m.value.get_si()), m.source});
  } else {
    auto kind = local::parse_kind(a.group);
    const auto& t = local::dimension_table(kind);
    auto ik = kind == local::GroupKind::GL3 ? local::IndexKind::GL3 : local::IndexKind::GSp4;
    json rows = json::array();
    csv << "type,representation,remarks";
    for (const auto& col : t.columns) csv << ',' << csv_field(col);
    csv << '\n';
    for (const auto& r : t.rows) {
      rows.push_back({{"type", r.type}, {"representation", r.representation}, {"remarks", r.remarks}, {"dims", r.dims}});
      csv << csv_field(r.type) << ',' << csv_field(r.representation) << ',' << csv_field(r.remarks);
      for (long d : r.dims) csv << ',' << d;
      csv << '\n';
    }
    out["columns"] = t.columns;
    out["rows"] = rows;
    out["indices"] = index_json(local::parahoric_indices(ik, q));
    out["model_indices"] = index_json(local::model_indices(ik, q));
    out["raised_unitary"] = local::classify_raised(kind, true);
    if (a.verify) {
      local::check_enumerable(kind, q);
      checks = local::verify_golden(kind, q);
    }
  }
  bool ok = true;
  if (a.verify) {
    json cj = json::array();
    csv << "\ncheck,expected,computed,method,pass\n";
    for (const auto& ch : checks) {
      ok = ok && ch.pass();
      cj.push_back({{"what", ch.what}, {"expected", ch.expected}, {"computed", ch.computed}, {"method", ch.method},
                    {"pass", ch.pass()}});
      csv << csv_field(ch.what) << ',' << ch.expected << ',' << ch.computed << ',' << csv_field(ch.method) << ','
          << (ch.pass() ? "true" : "false") << '\n';
    }
    out["checks"] = cj;
    out["all_pass"] = ok;
  }
  emit(a.c, a.c.format == "csv" ? csv.str() : dump(out));
  return ok ? 0 : 2;
}

// satake-check ----------------------------------------------------------

struct SatakeArgs {
  Common c;
  std::string group = "gsp4", type;
  long q = 0, ell = 0;
};

int run_satake(const SatakeArgs& a) {
  if (a.q < 2) throw HypothesisError("q must be at least 2");
  require_prime(a.ell, "ell");
  auto fam = a.type == "Va" ? local::SatakeFamily::Va : local::SatakeFamily::VIa;
  auto r = local::satake_check(fam, a.q, static_cast<std::uint32_t>(a.ell));
  json target = json::array();
  for (const auto& x : local::satake_target(a.q)) target.push_back(to_string(x));
  json out{{"group", a.group},  {"type", a.type},       {"q", a.q},
           {"ell", a.ell},      {"twist", r.twist},     {"target", target},
           {"sigmas", r.sigmas}, {"solvable", r.solvable}, {"predicted", r.predicted},
           {"seed", a.c.seed}};
  emit(a.c, dump(out));
  return r.agrees() ? 0 : 2;
}

// grid-search -----------------------------------------------------------

std::vector<long> first_two(const std::vector<long>& v) { return {v.begin(), v.begin() + std::min<long>(2, static_cast<long>(v.size()))}; }

struct GridArgs {
  Common c;
  level::GridOptions opt;
  unsigned jobs = 0;
};

int run_grid(GridArgs a) {
  for (long p : a.opt.ps) require_prime(p, "p");
  for (long q : a.opt.qs) require_prime(q, "q");
  for (auto ell : a.opt.ells) require_prime(ell, "ell");
  a.opt.jobs = a.jobs ? a.jobs : std::max(1u, std::thread::hardware_concurrency());
  auto grid = level::run_grid(a.opt);
  json inst = json::array();
  std::size_t eligible = 0, raised = 0, hard = 0;
  for (const auto& gi : grid) {
    json entries = json::array();
    for (const auto& e : gi.entries) {
      if (!e.eisenstein && e.eligible()) {
        ++eligible;
        if (e.congruent > 0) ++raised;
        else ++hard;
      }
      entries.push_back({{"form", e.form},
                         {"field", e.field},
                         {"place", e.place},
                         {"eisenstein", e.eisenstein},
                         {"star_holds", e.star},
                         {"classical", e.classical},
                         {"m", e.m},
                         {"n0", valuation_json(e.n0)},
                         {"abelian", e.abelian ? json(*e.abelian) : json(nullptr)},
                         {"two_places", first_two(e.two_places)},
                         {"status", e.status},
                         {"new_congruent", e.congruent},
                         {"lift_exponent", e.lift_exponent}});
    }
    json gj{{"p", gi.p}, {"q", gi.q}, {"ell", gi.ell}, {"new_dim", gi.new_dim}, {"entries", entries}};
    if (a.opt.congruence_module) {
      json inv = json::array();
      for (const auto& x : gi.module_invariants) inv.push_back(x.get_str());
      gj["module_invariants"] = inv;
    }
    inst.push_back(gj);
  }
  json out{{"seed", a.c.seed},
           {"rbound", a.opt.rbound},
           {"instances", inst},
           {"summary", {{"instances", grid.size()}, {"eligible", eligible}, {"raised", raised}, {"empty", hard}}}};
  emit(a.c, dump(out));
  return hard == 0 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Level raising for definite quaternion algebras and local parahoric checks"};
  app.footer(kHypotheses);
  app.require_subcommand(1);

  BrandtArgs brandt;
  auto* sb = app.add_subcommand("brandt", "Brandt matrices B(n), n <= nmax, n prime to p");
  sb->add_option("--p", brandt.p, "Discriminant (prime)")->required();
  sb->add_option("--nmax", brandt.nmax, "Largest index")->capture_default_str();
  add_common(sb, brandt.c, true);

  RaiseArgs raise;
  auto* sr = app.add_subcommand("raise-level", "New-level eigensystems congruent to an old one");
  sr->add_option("--p", raise.p, "Discriminant (prime)")->required();
  sr->add_option("--q", raise.q, "Level-raising prime")->required();
  sr->add_option("--ell", raise.ell, "Residue characteristic")->required();
  sr->add_option("--rbound", raise.rbound, "Largest Hecke label compared")->capture_default_str();
  sr->add_option("--form", raise.form, "Index of the old eigensystem (see old_eigensystems)")->capture_default_str();
  add_common(sr, raise.c, false);

  IharaArgs ihara;
  auto* si = app.add_subcommand("ihara-check", "Integral decomposition of random image functions");
  si->add_option("--p", ihara.p, "Discriminant (prime)")->required();
  si->add_option("--q", ihara.q, "Level-raising prime")->required();
  si->add_option("--trials", ihara.trials, "Number of random functions")->capture_default_str();
  add_common(si, ihara.c, false);

  TablesArgs tables;
  auto* st = app.add_subcommand("tables", "Parahoric indices and fixed-vector dimension tables");
  st->add_option("--group", tables.group, "gl3, gsp4 or u3")->required()->check(CLI::IsMember({"gl3", "gsp4", "u3"}));
  st->add_option("--q", tables.q, "Residue field size")->required();
  st->add_flag("--verify-golden", tables.verify, "Recompute every entry with a finite model");
  add_common(st, tables.c, true);

  SatakeArgs satake;
  auto* ss = app.add_subcommand("satake-check", "Congruence of a Satake parameter with the trivial one");
  ss->add_option("--group", satake.group, "Group")->capture_default_str()->check(CLI::IsMember({"gsp4"}));
  ss->add_option("--type", satake.type, "Va or VIa")->required()->check(CLI::IsMember({"Va", "VIa"}));
  ss->add_option("--q", satake.q, "Residue field size")->required();
  ss->add_option("--ell", satake.ell, "Residue characteristic")->required();
  add_common(ss, satake.c, false);

  GridArgs grid;
  auto* sg = app.add_subcommand("grid-search", "Level raising over a grid of (p, q, ell)");
  sg->add_option("--p", grid.opt.ps, "Discriminants")->capture_default_str()->delimiter(',');
  sg->add_option("--q", grid.opt.qs, "Level-raising primes")->capture_default_str()->delimiter(',');
  sg->add_option("--ell", grid.opt.ells, "Residue characteristics")->capture_default_str()->delimiter(',');
  sg->add_option("--rbound", grid.opt.rbound, "Largest Hecke label compared")->capture_default_str();
  sg->add_flag("--congruence-module", grid.opt.congruence_module, "Also report congruence module invariants");
  sg->add_option("--jobs", grid.jobs, "Worker threads (0: all cores); output does not depend on it")->capture_default_str();
  add_common(sg, grid.c, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*sb) return run_brandt(brandt);
    if (*sr) return run_raise(raise);
    if (*si) return run_ihara(ihara);
    if (*st) return run_tables(tables);
    if (*ss) return run_satake(satake);
    if (*sg) return run_grid(grid);
  } catch (const HypothesisError& e) {
    std::cerr << e.what() << '\n';
    return 1;
  } catch (const InvariantError& e) {
    std::cerr << "internal invariant failure: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
