#include "lr/level/level.hpp"

#include <algorithm>
#include <deque>

#include "lr/errors.hpp"
#include "lr/exact/fp.hpp"

namespace lr::level {

std::vector<HeckeObject> LevelStructure::edge_objects() const {
  std::vector<HeckeObject> out;
  for (const Edge& e : edges) out.push_back({{classes.ideals[e.base], e.sub}, e.weight});
  return out;
}

IntMatrix LevelStructure::line_counts() const {
  IntMatrix c(h(), h());
  for (std::size_t i = 0; i < h(); ++i)
    for (std::size_t j : line_class[i]) c(i, j) += 1;
  return c;
}

LevelStructure build_level_structure(const ClassSet& classes, long q) {
  const auto& alg = classes.alg;
  if (q < 2 || !fp::is_prime(static_cast<fp::u64>(q))) throw HypothesisError("level-raising prime " + std::to_string(q) + " is not prime");
  if (q == alg.p) throw HypothesisError("level-raising prime equals the discriminant");
  auto idem = quat::splitting_idempotent(alg, classes.order, q);
  if (!idem) throw HypothesisError("level-raising prime ramifies in the algebra");
  LevelStructure ls;
  ls.classes = classes;
  ls.q = q;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    auto nb = quat::neighbors(alg, classes.order, classes.ideals[i], q, *idem);
    std::vector<std::size_t> cls;
    for (const Ideal& j : nb) cls.push_back(quat::class_index(classes, j));
    ls.line_class.push_back(cls);
    auto us = quat::units(alg, classes.right_orders[i]);
    // action of each unit on the lines
    std::vector<std::vector<std::size_t>> act;
    for (const auto& u : us) {
      std::vector<std::size_t> img;
      for (const Ideal& j : nb) {
        QMatrix moved = quat::right_multiply(alg, j.basis, u);
        auto it = std::find_if(nb.begin(), nb.end(), [&](const Ideal& x) { return x.basis == moved; });
        ensure(it != nb.end(), "unit does not permute the neighbor lines");
        img.push_back(static_cast<std::size_t>(it - nb.begin()));
      }
      act.push_back(img);
    }
    std::vector<bool> seen(nb.size(), false);
    for (std::size_t t = 0; t < nb.size(); ++t) {
      if (seen[t]) continue;
      Edge e;
      e.base = i;
      e.line = t;
      e.target = cls[t];
      e.sub = nb[t];
      long stab = 0;
      for (const auto& img : act) {
        if (!seen[img[t]]) {
          seen[img[t]] = true;
          e.orbit.push_back(img[t]);
        }
        if (img[t] == t) ++stab;
      }
      std::sort(e.orbit.begin(), e.orbit.end());
      e.weight = stab;
      ensure(static_cast<long>(e.orbit.size()) * stab == classes.weights[i], "orbit-stabilizer count mismatch");
      ls.edges.push_back(e);
    }
  }
  for (const HeckeObject& obj : ls.edge_objects())
    ensure(static_cast<long>(quat::chain_units(alg, obj).size()) == obj.weight,
           "edge stabilizer differs from the Eichler unit group");
  return ls;
}

IntMatrix degeneracy_matrix(const LevelStructure& ls) {
  std::size_t h = ls.h();
  IntMatrix d(ls.edges.size(), 2 * h);
  for (std::size_t e = 0; e < ls.edges.size(); ++e) {
    d(e, ls.edges[e].base) += 1;
    d(e, h + ls.edges[e].target) += 1;
  }
  return d;
}

namespace {

// sum over edges with key(e) == i of W_i / W_e
std::vector<Rat> fiber_sums(const LevelStructure& ls, bool by_target) {
  std::vector<Rat> s(ls.h(), 0);
  for (const Edge& e : ls.edges) {
    std::size_t i = by_target ? e.target : e.base;
    s[i] += Rat(ls.classes.weights[i]) / e.weight;
  }
  return s;
}

Int constant_index(const std::vector<Rat>& s, const char* what) {
  for (const Rat& x : s) ensure(x == s[0] && x.get_den() == 1, std::string(what) + " fiber sum not a constant integer");
  return s[0].get_num();
}

}  // namespace

Indices parahoric_indices(const LevelStructure& ls) {
  return {constant_index(fiber_sums(ls, false), "[K:J]"), constant_index(fiber_sums(ls, true), "[K':J]")};
}

QMatrix average_to_k(const LevelStructure& ls) {
  Indices ix = parahoric_indices(ls);
  QMatrix m(ls.h(), ls.h());
  for (const Edge& e : ls.edges) m(e.base, e.target) += Rat(ls.classes.weights[e.base]) / e.weight / Rat(ix.k);
  return m;
}

QMatrix average_to_kprime(const LevelStructure& ls) {
  Indices ix = parahoric_indices(ls);
  QMatrix m(ls.h(), ls.h());
  for (const Edge& e : ls.edges) m(e.target, e.base) += Rat(ls.classes.weights[e.target]) / e.weight / Rat(ix.kp);
  return m;
}

namespace {
QMatrix fiber_projector(const LevelStructure& ls, bool by_target, const Int& index) {
  std::size_t n = ls.edges.size();
  QMatrix m(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const Edge &x = ls.edges[a], &y = ls.edges[b];
      std::size_t kx = by_target ? x.target : x.base, ky = by_target ? y.target : y.base;
      if (kx == ky) m(a, b) = Rat(ls.classes.weights[kx]) / y.weight / Rat(index);
    }
  return m;
}
}  // namespace

QMatrix projector_k(const LevelStructure& ls) { return fiber_projector(ls, false, parahoric_indices(ls).k); }
QMatrix projector_kprime(const LevelStructure& ls) { return fiber_projector(ls, true, parahoric_indices(ls).kp); }

QMatrix e_kkprime(const LevelStructure& ls) {
  Indices ix = parahoric_indices(ls);
  return scaled(average_to_k(ls) * average_to_kprime(ls), Rat(ix.k * ix.kp_rel()));
}

QMatrix block_formula(const LevelStructure& ls) {
  Indices ix = parahoric_indices(ls);
  std::size_t h = ls.h();
  QMatrix ek = average_to_k(ls), ekp = average_to_kprime(ls);
  QMatrix m(2 * h, 2 * h);
  for (std::size_t i = 0; i < h; ++i) {
    m(i, i) = Rat(ix.k);
    m(h + i, h + i) = Rat(ix.kp);
    for (std::size_t j = 0; j < h; ++j) {
      m(i, h + j) = Rat(ix.k) * ek(i, j);
      m(h + i, j) = Rat(ix.kp) * ekp(i, j);
    }
  }
  return m;
}

SimClasses sim_classes(const LevelStructure& ls) {
  std::size_t n = ls.edges.size();
  SimClasses sc;
  sc.cls.assign(n, n);
  sc.radius.assign(n, 0);
  for (std::size_t s = 0; s < n; ++s) {
    if (sc.cls[s] != n) continue;
    std::size_t id = sc.reps.size();
    sc.reps.push_back(s);
    sc.cls[s] = id;
    std::deque<std::size_t> queue{s};
    while (!queue.empty()) {
      std::size_t x = queue.front();
      queue.pop_front();
      for (std::size_t y = 0; y < n; ++y) {
        if (sc.cls[y] != n) continue;
        if (ls.edges[y].base == ls.edges[x].base || ls.edges[y].target == ls.edges[x].target) {
          sc.cls[y] = id;
          sc.radius[y] = sc.radius[x] + 1;
          queue.push_back(y);
        }
      }
    }
  }
  return sc;
}

std::pair<std::vector<Int>, std::vector<Int>> ihara_decompose(const LevelStructure& ls, const std::vector<Int>& g) {
  std::size_t n = ls.edges.size(), h = ls.h();
  ensure(g.size() == n, "ihara: function has the wrong length");
  IntMatrix d = degeneracy_matrix(ls);
  QMatrix aug(n, 2 * h + 1);
  for (std::size_t e = 0; e < n; ++e) {
    for (std::size_t c = 0; c < 2 * h; ++c) aug(e, c) = d(e, c);
    aug(e, 2 * h) = g[e];
  }
  if (rank(aug) != rank(d)) throw HypothesisError("function is not in the image of the degeneracy map");

  SimClasses sc = sim_classes(ls);
  std::vector<std::optional<Int>> f(h), fp(h);
  for (std::size_t rep : sc.reps) f[ls.edges[rep].base] = Int(0);
  std::vector<std::size_t> order(n);
  for (std::size_t e = 0; e < n; ++e) order[e] = e;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return sc.radius[a] < sc.radius[b]; });
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t e : order) {
      const Edge& x = ls.edges[e];
      if (f[x.base] && !fp[x.target]) {
        fp[x.target] = g[e] - *f[x.base];
        changed = true;
      } else if (fp[x.target] && !f[x.base]) {
        f[x.base] = g[e] - *fp[x.target];
        changed = true;
      }
    }
  }
  std::vector<Int> fo(h), fpo(h);
  for (std::size_t i = 0; i < h; ++i) {
    ensure(f[i].has_value() && fp[i].has_value(), "ihara: propagation did not reach every class");
    fo[i] = *f[i];
    fpo[i] = *fp[i];
  }
  for (std::size_t e = 0; e < n; ++e)
    ensure(fo[ls.edges[e].base] + fpo[ls.edges[e].target] == g[e], "ihara: decomposition does not reproduce g");
  return {fo, fpo};
}

Instance make_instance(const ClassSet& classes, long q, long rbound) {
  Instance inst;
  inst.ls = build_level_structure(classes, q);
  inst.rbound = rbound;
  long p = classes.alg.p;
  inst.k_labels = quat::primes_coprime(rbound, p);
  inst.labels = quat::primes_coprime(rbound, p * q);
  inst.theta_k.emplace(classes.alg, classes.objects(), std::max(rbound, q));
  inst.theta_j.emplace(classes.alg, inst.ls.edge_objects(), rbound);
  HeckeFamily tu, tv;
  for (long r : inst.labels) {
    IntMatrix bk = inst.theta_k->brandt(r);
    tu.add("T" + std::to_string(r), block_diag(bk, bk));
    tv.add("T" + std::to_string(r), inst.theta_j->brandt(r));
  }
  std::vector<long> wu = classes.weights;
  wu.insert(wu.end(), classes.weights.begin(), classes.weights.end());
  std::vector<long> wv;
  for (const Edge& e : inst.ls.edges) wv.push_back(e.weight);
  inst.setup = make_setup(quat::weighted_pairing(wu), tu, quat::weighted_pairing(wv), tv,
                          RatMatrix(degeneracy_matrix(inst.ls)));
  ensure(inst.setup.c == 1, "Ihara constant is not 1");
  validate_setup(inst.setup);
  return inst;
}

}  // namespace lr::level
