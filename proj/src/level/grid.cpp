#include "lr/level/grid.hpp"

#include <atomic>
#include <algorithm>
#include <map>
#include <mutex>
#include <random>
#include <thread>

#include "lr/errors.hpp"
#include "lr/exact/linalg.hpp"

namespace lr::level {

namespace {

// Runs body(i) for i < n on up to jobs threads; the first exception wins.
template <class F>
void parallel_for(std::size_t n, unsigned jobs, F body) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(n)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex mu;
  auto work = [&] {
    for (std::size_t i; (i = next++) < n;) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!err) err = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

std::string fp_poly_string(const fp::Poly& f) {
  ZPoly z;
  for (auto c : f) z.push_back(Int(c));
  return poly_to_string(z);
}

void fill_instance(const Instance& inst, const NewSpace& ns, const std::vector<HeckeOrbit>& forms, GridInstance& gi) {
  for (std::size_t fi = 0; fi < forms.size(); ++fi) {
    const HeckeOrbit& f = forms[fi];
    for (LocalData& ld : local_data(f, gi.ell)) {
      GridEntry e;
      e.form = fi;
      e.field = poly_to_string(f.field.g);
      e.place = fp_poly_string(ld.place.phi);
      e.eisenstein = is_eisenstein(f);
      StarResult st = star_criterion(inst, f, ld);
      e.star = st.holds;
      e.classical = st.classical;
      e.n0 = st.n0;
      e.m = f.field.to_string(st.m);
      e.abelian = abelian_test(f, ld, inst.p(), inst.rbound);
      e.two_places = two_place_witnesses(inst.p(), inst.q(), gi.ell);
      if (e.eisenstein) {
        e.status = "Eisenstein";
      } else {
        try {
          RaiseResult r = raise_level(inst, ns, f, ld);
          e.status = "raised";
          e.congruent = r.congruent.size();
          e.lift_exponent = r.lift_exponent;
        } catch (const HypothesisError& err) {
          e.status = err.what();
        }
      }
      gi.entries.push_back(std::move(e));
    }
  }
}

}  // namespace

std::vector<GridInstance> run_grid(const GridOptions& opt) {
  std::map<long, ClassSet> classes;
  for (long p : opt.ps) classes.emplace(p, ClassSet{});
  std::vector<long> ps;
  for (const auto& kv : classes) ps.push_back(kv.first);
  parallel_for(ps.size(), opt.jobs, [&](std::size_t i) {
    auto alg = quat::build_algebra(ps[i]);
    classes.at(ps[i]) = quat::ideal_classes(alg, quat::maximal_order(alg));
  });

  std::vector<std::pair<long, long>> pairs;
  for (long p : ps)
    for (long q : opt.qs)
      if (q != p) pairs.emplace_back(p, q);
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  std::vector<std::uint32_t> ells = opt.ells;
  std::sort(ells.begin(), ells.end());
  ells.erase(std::unique(ells.begin(), ells.end()), ells.end());

  std::vector<std::vector<GridInstance>> per_pair(pairs.size());
  parallel_for(pairs.size(), opt.jobs, [&](std::size_t i) {
    auto [p, q] = pairs[i];
    Instance inst = make_instance(classes.at(p), q, opt.rbound);
    NewSpace ns = new_space(inst);
    auto forms = old_eigenforms(inst);
    std::vector<Int> inv;
    if (opt.congruence_module) inv = congruence_module(inst.setup).invariants;
    for (std::uint32_t ell : ells) {
      if (q % static_cast<long>(ell) == 0 || p == static_cast<long>(ell)) continue;
      GridInstance gi;
      gi.p = p;
      gi.q = q;
      gi.ell = ell;
      gi.new_dim = ns.lattice.rows;
      gi.module_invariants = inv;
      fill_instance(inst, ns, forms, gi);
      per_pair[i].push_back(std::move(gi));
    }
  });
  std::vector<GridInstance> out;
  for (auto& v : per_pair)
    for (auto& gi : v) out.push_back(std::move(gi));
  return out;
}

IharaTrials ihara_trials(const LevelStructure& ls, std::size_t trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto range = [&](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); };
  const std::size_t h = ls.h(), n = ls.edges.size();
  IntMatrix d = degeneracy_matrix(ls);
  QMatrix dq = to_q(d), ker = right_kernel(dq);
  IharaTrials out;
  while (out.trials < trials) {
    std::vector<Rat> pre(2 * h);
    for (auto& x : pre) x = Rat(range(-6, 6));
    for (std::size_t r = 0; r < ker.rows; ++r) {
      Rat s = Rat(range(-3, 3)) / 2;
      for (std::size_t c = 0; c < 2 * h; ++c) pre[c] += s * ker(r, c);
    }
    std::vector<Rat> img = mat_vec(dq, pre);
    std::vector<Int> g(n);
    bool integral = true;
    for (std::size_t e = 0; e < n; ++e) {
      integral = integral && img[e].get_den() == 1;
      g[e] = img[e].get_num();
    }
    if (!integral) continue;
    ++out.trials;
    try {
      auto [a, b] = ihara_decompose(ls, g);
      a.insert(a.end(), b.begin(), b.end());
      if (mat_vec(d, a) == g)
        ++out.passed;
      else
        ++out.failed;
    } catch (const HypothesisError&) {
      ++out.failed;
    }
  }
  if (rank(d) < n) {
    QMatrix coker = left_kernel(dq);
    Int den = common_denominator(coker);
    std::vector<Int> g(n);
    for (std::size_t e = 0; e < n; ++e) g[e] = coker(0, e).get_num() * (den / coker(0, e).get_den());
    try {
      ihara_decompose(ls, g);
    } catch (const HypothesisError&) {
      ++out.refused_off_image;
    }
  }
  return out;
}

}  // namespace lr::level
