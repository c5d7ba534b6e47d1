// One line per acceptance criterion; exit status is the number of failures.
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "lr/errors.hpp"
#include "lr/exact/fp.hpp"
#include "lr/exact/linalg.hpp"
#include "lr/level/grid.hpp"
#include "lr/local/rank_one.hpp"
#include "lr/local/satake.hpp"
#include "lr/local/tables.hpp"
#include "support.hpp"

using namespace lr;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& title, const std::function<Outcome()>& body, double limit_s = 0) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit_s > 0 && s >= limit_s) {
    o.pass = false;
    o.detail += "; over the time limit";
  }
  if (!o.pass) ++failures;
  std::printf("[%s] criterion %2d: %s: %s (%.2f s%s)\n", o.pass ? "PASS" : "FAIL", id, title.c_str(), o.detail.c_str(), s,
              limit_s > 0 ? (", limit " + std::to_string(static_cast<int>(limit_s)) + " s").c_str() : "");
  std::fflush(stdout);
}

bool prime(long n) { return n >= 2 && fp::is_prime(static_cast<fp::u64>(n)); }

struct Space {
  quat::ClassSet cs;
  std::map<long, IntMatrix> b;
};

const quat::ClassSet& classes(long p) {
  static std::map<long, quat::ClassSet> cache;
  auto it = cache.find(p);
  if (it == cache.end()) {
    auto alg = quat::build_algebra(p);
    it = cache.emplace(p, quat::ideal_classes(alg, quat::maximal_order(alg))).first;
  }
  return it->second;
}

// Brandt matrices for n <= 50 prime to p
const std::map<long, IntMatrix>& brandt_range(long p) {
  static std::map<long, std::map<long, IntMatrix>> cache;
  auto it = cache.find(p);
  if (it == cache.end()) {
    const auto& cs = classes(p);
    quat::ThetaTable th(cs.alg, cs.objects(), 50);
    std::map<long, IntMatrix> b;
    for (long n = 1; n <= 50; ++n)
      if (n % p) b[n] = th.brandt(n);
    it = cache.emplace(p, std::move(b)).first;
  }
  return it->second;
}

const std::vector<std::pair<long, long>> kBlockCases{{11, 2}, {11, 3}, {23, 2}};

template <class T>
std::string join(const std::vector<T>& v) {
  std::ostringstream s;
  for (std::size_t i = 0; i < v.size(); ++i) s << (i ? "," : "") << v[i];
  return s.str();
}

}  // namespace

int main() {
  report(
      1, "Brandt construction at p = 11",
      [] {
        auto alg = quat::build_algebra(11);
        auto cs = quat::ideal_classes(alg, quat::maximal_order(alg));
        std::vector<long> enumerated;
        for (const auto& ro : cs.right_orders) enumerated.push_back(static_cast<long>(quat::units(alg, ro).size()));
        Rat mass = cs.mass();
        bool ok = cs.size() == 2 && cs.weights == std::vector<long>{4, 6} && enumerated == cs.weights &&
                  mass == Rat(5, 12) && mass == Rat(11 - 1) / 24;
        return Outcome{ok, "h=" + std::to_string(cs.size()) + ", weights {" + join(cs.weights) + "}, enumerated units {" +
                               join(enumerated) + "}, mass " + to_string(mass) + " vs (p-1)/24"};
      },
      1.0);

  report(
      2, "Eisenstein row sums",
      [] {
        std::size_t checked = 0, bad = 0;
        for (long p : {11L, 23L})
          for (const auto& [n, m] : brandt_range(p)) {
            Int sigma = 0;
            for (long d = 1; d <= n; ++d)
              if (n % d == 0) sigma += d;
            for (std::size_t i = 0; i < m.rows; ++i) {
              Int row = 0;
              for (std::size_t j = 0; j < m.cols; ++j) row += m(i, j);
              ++checked;
              if (row != sigma) ++bad;
            }
          }
        return Outcome{bad == 0, std::to_string(checked) + " rows, p in {11,23}, n <= 50, " + std::to_string(bad) + " mismatches"};
      },
      30.0);

  report(3, "Hecke structure", [] {
    std::size_t comm = 0, mult = 0, rec = 0, bad = 0;
    for (long p : {11L, 23L}) {
      const auto& b = brandt_range(p);
      for (const auto& [m, bm] : b)
        for (const auto& [n, bn] : b) {
          ++comm;
          if (bm * bn != bn * bm) ++bad;
          if (std::gcd(m, n) == 1 && b.count(m * n)) {
            ++mult;
            if (bm * bn != b.at(m * n)) ++bad;
          }
        }
      for (long r : quat::primes_coprime(50, p))
        for (long prev = 1, cur = r; cur * r <= 50; prev = cur, cur *= r) {
          ++rec;
          if (b.at(cur * r) != b.at(r) * b.at(cur) - scaled(b.at(prev), Int(r))) ++bad;
        }
    }
    return Outcome{bad == 0, std::to_string(comm) + " commutations, " + std::to_string(mult) + " coprime products, " +
                                 std::to_string(rec) + " prime-power steps, " + std::to_string(bad) + " failures"};
  });

  report(4, "self-adjointness", [] {
    std::size_t checked = 0, bad = 0;
    for (long p : {11L, 23L}) {
      const auto& w = classes(p).weights;
      for (const auto& [n, m] : brandt_range(p))
        for (std::size_t i = 0; i < m.rows; ++i)
          for (std::size_t j = 0; j < m.cols; ++j) {
            ++checked;
            if (w[j] * m(i, j) != w[i] * m(j, i)) ++bad;
          }
    }
    return Outcome{bad == 0, std::to_string(checked) + " entry pairs, " + std::to_string(bad) + " failures"};
  });

  std::map<std::pair<long, long>, level::Instance> instances;
  auto instance = [&](long p, long q) -> const level::Instance& {
    auto key = std::make_pair(p, q);
    auto it = instances.find(key);
    if (it == instances.end()) it = instances.emplace(key, level::make_instance(classes(p), q)).first;
    return it->second;
  };

  report(5, "degeneracy composite equals the block formula", [&] {
    std::vector<std::string> seen;
    bool ok = true;
    for (auto [p, q] : kBlockCases) {
      const auto& inst = instance(p, q);
      QMatrix lhs = delta_dual_delta(inst.setup), rhs = level::block_formula(inst.ls);
      bool eq = lhs == rhs;
      ok = ok && eq;
      seen.push_back("(" + std::to_string(p) + "," + std::to_string(q) + "):" + std::to_string(lhs.rows) + "x" +
                     std::to_string(lhs.cols) + (eq ? " equal" : " DIFFER"));
    }
    return Outcome{ok, join(seen)};
  });

  report(
      6, "integral decomposition of image functions",
      [&] {
        std::vector<std::string> parts;
        bool ok = true;
        for (auto [p, q] : kBlockCases) {
          auto r = level::ihara_trials(instance(p, q).ls, 200, 0x1a2b + static_cast<std::uint64_t>(p * 100 + q));
          ok = ok && r.trials == 200 && r.passed == 200 && r.failed == 0;
          parts.push_back("(" + std::to_string(p) + "," + std::to_string(q) + "): " + std::to_string(r.passed) + "/" +
                          std::to_string(r.trials));
        }
        return Outcome{ok, join(parts)};
      },
      60.0);

  // criteria 7, 9, 10, 11 share one pass over the grid
  std::vector<level::GridInstance> grid;
  double grid_seconds = 0;
  std::string grid_error;
  {
    auto t0 = std::chrono::steady_clock::now();
    level::GridOptions opt;
    opt.congruence_module = true;
    try {
      grid = level::run_grid(opt);
    } catch (const std::exception& e) {
      grid_error = e.what();
    }
    grid_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
  auto grid_ok = [&] { if (!grid_error.empty()) throw InvariantError("grid failed: " + grid_error); };

  report(7, "criterion agrees with the classical congruence", [&] {
    grid_ok();
    std::size_t checked = 0, bad = 0;
    for (const auto& gi : grid) {
      if ((1 + gi.q) % static_cast<long>(gi.ell) == 0) continue;
      for (const auto& e : gi.entries) {
        ++checked;
        if (e.star != e.classical) ++bad;
      }
    }
    return Outcome{bad == 0 && checked > 0,
                   std::to_string(checked) + " eigensystem-place pairs with ell not dividing 1+q, " + std::to_string(bad) + " disagreements"};
  });

  report(8, "negative control (11, 2, 5)", [&] {
    const auto& inst = instance(11, 2);
    auto forms = level::old_eigenforms(inst);
    for (const auto& f : forms) {
      if (level::is_eisenstein(f)) continue;
      auto lds = level::local_data(f, 5);
      if (lds.size() != 1) return Outcome{false, "expected one place above 5"};
      auto st = level::star_criterion(inst, f, lds[0]);
      auto ab = level::abelian_test(f, lds[0], 11, inst.rbound);
      std::string refusal;
      try {
        level::raise_level(inst, level::new_space(inst), f, lds[0]);
      } catch (const HypothesisError& e) {
        refusal = e.what();
      }
      bool ok = st.holds && ab && *ab == "trivial" && refusal == "abelian mod 5: Eisenstein congruence detected";
      return Outcome{ok, std::string("criterion holds=") + (st.holds ? "yes" : "no") + ", abelian=" + (ab ? *ab : "no") +
                             ", refusal \"" + refusal + "\""};
    }
    return Outcome{false, "no cuspidal eigenform"};
  });

  {
    bool ok = grid_error.empty();
    std::size_t eligible = 0, empty = 0;
    std::vector<std::string> found;
    for (const auto& gi : grid)
      for (const auto& e : gi.entries)
        if (!e.eisenstein && e.eligible()) {
          ++eligible;
          if (e.congruent == 0) ++empty;
          found.push_back("(" + std::to_string(gi.p) + "," + std::to_string(gi.q) + "," + std::to_string(gi.ell) + ")");
        }
    ok = ok && eligible > 0 && empty == 0 && grid_seconds < 300;
    if (!ok) ++failures;
    std::printf("[%s] criterion  9: end-to-end level raising: %zu grid instances, %zu eligible %s, %zu empty results%s (%.2f s, limit 300 s)\n",
                ok ? "PASS" : "FAIL", grid.size(), eligible, join(found).c_str(), empty,
                grid_error.empty() ? "" : ("; " + grid_error).c_str(), grid_seconds);
    std::fflush(stdout);
  }

  report(10, "bound n0 and verified modulus", [&] {
    grid_ok();
    std::size_t n = 0, bad = 0;
    std::vector<std::string> parts;
    for (const auto& gi : grid)
      for (const auto& e : gi.entries) {
        if (e.eisenstein || !e.eligible()) continue;
        ++n;
        bool n0_ok = !e.n0.infinite && e.n0.value >= 1;
        // matched mod ell at every label; a rational lift must reach ell^n0
        bool lift_ok = e.lift_exponent < 0 || (!e.n0.infinite && e.lift_exponent >= e.n0.value);
        if (!(n0_ok && e.congruent > 0 && lift_ok)) ++bad;
        parts.push_back("n0=" + e.n0.to_string() + (e.lift_exponent < 0 ? " mod ell" : " lift ell^" + std::to_string(e.lift_exponent)));
      }
    return Outcome{bad == 0 && n > 0, std::to_string(n) + " instances [" + join(parts) + "], " + std::to_string(bad) + " failures"};
  });

  report(11, "congruence module sees ell", [&] {
    grid_ok();
    std::size_t n = 0, bad = 0;
    std::vector<std::string> parts;
    for (const auto& gi : grid) {
      bool any = false;
      for (const auto& e : gi.entries) any = any || (!e.eisenstein && e.eligible());
      if (!any) continue;
      ++n;
      bool divides = false;
      for (const auto& x : gi.module_invariants) divides = divides || x % gi.ell == 0;
      if (!divides) ++bad;
      parts.push_back("ell=" + std::to_string(gi.ell) + ":{" + join(gi.module_invariants) + "}");
    }
    return Outcome{bad == 0 && n > 0, join(parts)};
  });

  report(
      12, "full induced row by double cosets",
      [] {
        using namespace lr::local;
        bool ok = true;
        std::vector<std::string> parts;
        for (unsigned q : {2u, 3u}) {
          FiniteGroup gl(GroupKind::GL3, q), gs(GroupKind::GSp4, q);
          std::vector<std::size_t> a, b;
          for (Shape h : {Shape::K, Shape::J, Shape::I}) a.push_back(double_coset_count(gl, Shape::I, h));
          for (Shape h : {Shape::K, Shape::Kp, Shape::J, Shape::Jp, Shape::I})
            b.push_back(h == Shape::Kp ? weyl_coset_count(GroupKind::GSp4, h) : double_coset_count(gs, Shape::I, h));
          ok = ok && a == std::vector<std::size_t>{1, 3, 6} && b == std::vector<std::size_t>{1, 2, 4, 4, 8};
          parts.push_back("q=" + std::to_string(q) + " GL3 (" + join(a) + ") GSp4 (" + join(b) + ")");
        }
        return Outcome{ok, join(parts) + "; the K' entry is |W/W_K'| since K' has no reduction in G(F_q)"};
      },
      60.0);

  report(13, "induced rows IIa and IIb", [] {
    using namespace lr::local;
    bool ok = true;
    std::vector<std::string> parts;
    for (unsigned q : {2u, 3u}) {
      FiniteGroup G(GroupKind::GL3, q);
      std::vector<std::size_t> st, tr;
      for (Shape h : {Shape::K, Shape::J, Shape::I}) {
        st.push_back(induced_fixed_dim(G, Shape::J, LeviRep::Steinberg, h));
        tr.push_back(induced_fixed_dim(G, Shape::J, LeviRep::Trivial, h));
      }
      ok = ok && st == std::vector<std::size_t>{0, 1, 3} && tr == std::vector<std::size_t>{1, 2, 3};
      parts.push_back("q=" + std::to_string(q) + " St (" + join(st) + ") triv (" + join(tr) + ")");
    }
    return Outcome{ok, join(parts)};
  });

  report(14, "parahoric index formulas", [] {
    using namespace lr::local;
    bool ok = true;
    std::size_t crosschecks = 0;
    auto get = [](const std::vector<IndexEntry>& es, const std::string& l) {
      for (const auto& e : es)
        if (e.label == l) return e.value;
      throw InvariantError("missing index " + l);
    };
    for (unsigned q : {2u, 3u, 4u, 5u}) {
      Int Q = q;
      auto u = parahoric_indices(IndexKind::U3, q), g = parahoric_indices(IndexKind::GL3, q),
           s = parahoric_indices(IndexKind::GSp4, q);
      ok = ok && get(u, "[K:I]") == Q * Q * Q + 1 && get(u, "[K':I]") == Q + 1 && get(g, "[K:J]") == 1 + Q + Q * Q &&
           get(s, "[K:J]") == (Q * Q * Q * Q - 1) / (Q - 1) && get(s, "[K':J]") == Q && get(s, "[K':J]_K") == Q;
      for (auto kind : {IndexKind::U3, IndexKind::GL3, IndexKind::GSp4}) {
        auto closed = parahoric_indices(kind, q);
        for (const auto& m : model_indices(kind, q)) {
          ++crosschecks;
          ok = ok && get(closed, m.label) == m.value;
        }
      }
    }
    return Outcome{ok, "q in {2,3,4,5}, " + std::to_string(crosschecks) + " finite-model cross-checks"};
  });

  report(15, "classification of raised representations", [] {
    using namespace lr::local;
    auto a = classify_raised(GroupKind::GSp4, true), b = classify_raised(GroupKind::GL3, true);
    bool ok = a == std::vector<std::string>{"I", "IIa", "IIIa", "Va", "VIa"} && b == std::vector<std::string>{"I", "IIa"};
    return Outcome{ok, "GSp4 {" + join(a) + "}, GL3 {" + join(b) + "}"};
  });

  report(16, "rank-one Iwahori characters", [] {
    using namespace lr::local;
    bool ok = true;
    std::vector<std::string> parts;
    for (long q : {2L, 3L, 5L}) {
      Rat a = Rat(1 + q * q * q), b = Rat(1 + q);
      std::set<std::pair<Rat, Rat>> want{{a, b}, {0, 0}, {a, 0}, {0, b}}, got;
      for (const auto& c : iwahori_rank1_characters(q)) {
        ok = ok && relation_t(q, c.t) && relation_tp(q, c.tp);
        got.insert({c.tk(), c.tkp()});
      }
      ok = ok && got == want;
      std::string s = "q=" + std::to_string(q) + ":";
      for (const auto& [x, y] : got) s += " (" + to_string(x) + "," + to_string(y) + ")";
      parts.push_back(s);
    }
    return Outcome{ok, join(parts)};
  });

  report(17, "unitary unipotent solve", [] {
    using namespace lr::local;
    bool ok = true;
    std::vector<std::string> parts;
    for (long q = 3; q <= 13; q += 2) {
      auto pts = u3_reducibility_points(q);
      ok = ok && pts == std::vector<Rat>{Rat(-q), Rat(q * q)};
      parts.push_back("q=" + std::to_string(q) + ":{" + to_string(pts[0]) + (pts.size() > 1 ? "," + to_string(pts[1]) : "") + "}");
    }
    return Outcome{ok, join(parts)};
  });

  report(18, "Satake case analysis", [] {
    using namespace lr::local;
    std::size_t cases = 0, bad = 0, solvable = 0;
    for (long q = 2; q <= 20; ++q) {
      if (!prime(q)) continue;
      for (std::uint32_t ell = 2; ell <= 50; ++ell) {
        if (!prime(ell)) continue;
        for (auto f : {SatakeFamily::Va, SatakeFamily::VIa}) {
          auto r = satake_check(f, q, ell);
          ++cases;
          solvable += r.solvable;
          if (!r.agrees()) ++bad;
        }
      }
    }
    return Outcome{bad == 0, std::to_string(cases) + " (family, q, ell) cases, " + std::to_string(solvable) + " solvable, " +
                                 std::to_string(bad) + " disagreements with the predicted conditions"};
  });

  report(19, "table additivity", [] {
    using namespace lr::local;
    auto a = additivity_failures(table_b()), b = additivity_failures(table_d());
    return Outcome{a.empty() && b.empty(), std::to_string(table_b().rows.size()) + " + " + std::to_string(table_d().rows.size()) +
                                               " rows, " + std::to_string(a.size() + b.size()) + " column mismatches"};
  });

  report(20, "CLI determinism", [] {
    std::vector<std::string> runs{"brandt --p 11 --nmax 10",
                                  "brandt --p 23 --nmax 8 --out csv",
                                  "raise-level --p 11 --q 5 --ell 7",
                                  "ihara-check --p 11 --q 2 --trials 50 --seed 123",
                                  "tables --group gsp4 --q 2 --verify-golden",
                                  "tables --group gl3 --q 3 --verify-golden --out csv",
                                  "tables --group u3 --q 5",
                                  "satake-check --type VIa --q 5 --ell 3",
                                  "grid-search --p 11,23 --q 2,3,5 --ell 5,7,11 --jobs 2"};
    std::size_t same = 0;
    for (const auto& args : runs) {
      auto x = testsupport::run_tool(args), y = testsupport::run_tool(args);
      if (x.status == y.status && x.out == y.out && !x.out.empty()) ++same;
    }
    bool seeded = testsupport::run_tool("ihara-check --p 11 --q 2 --trials 5 --seed 1").out.find("\"seed\": 1") != std::string::npos;
    return Outcome{same == runs.size() && seeded,
                   std::to_string(same) + "/" + std::to_string(runs.size()) + " subcommand runs byte-identical on repeat, seed recorded"};
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
