#include "lr/quaternion/brandt.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "lr/errors.hpp"
#include "lr/exact/fp.hpp"
#include "lr/quaternion/short_vectors.hpp"

namespace lr::quat {

namespace {

QMatrix inverse_times(const Algebra& alg, const Ideal& from, const Ideal& to) {
  return scaled(lattice_product(alg, conjugate_lattice(from.basis), to.basis), Rat(1 / from.norm));
}

bool lex_less(const QMatrix& x, const QMatrix& y) {
  return std::lexicographical_compare(x.a.begin(), x.a.end(), y.a.begin(), y.a.end());
}

QMatrix normalized_gram(const Algebra& alg, const Ideal& id) {
  return scaled(norm_gram(alg, id.basis), Rat(1 / id.norm));
}

}  // namespace

QMatrix hom_lattice(const Algebra& alg, const HeckeObject& from, const HeckeObject& to) {
  ensure(from.chain.size() == to.chain.size() && !from.chain.empty(), "hom lattice: chain mismatch");
  QMatrix l = inverse_times(alg, from.chain[0], to.chain[0]);
  for (std::size_t k = 1; k < from.chain.size(); ++k)
    l = rational_lattice_intersection(l, inverse_times(alg, from.chain[k], to.chain[k]));
  return l;
}

std::vector<Elt> chain_units(const Algebra& alg, const HeckeObject& obj) {
  QMatrix o = right_order(alg, obj.chain[0]);
  for (std::size_t k = 1; k < obj.chain.size(); ++k)
    o = rational_lattice_intersection(o, right_order(alg, obj.chain[k]));
  return units(alg, o);
}

Rat ClassSet::mass() const {
  Rat m = 0;
  for (long w : weights) m += Rat(1, w);
  return m;
}

std::vector<HeckeObject> ClassSet::objects() const {
  std::vector<HeckeObject> out;
  for (std::size_t i = 0; i < ideals.size(); ++i) out.push_back({{ideals[i]}, weights[i]});
  return out;
}

std::optional<Elt> find_isomorphism(const Algebra& alg, const Ideal& left, const Ideal& right) {
  QMatrix l = inverse_times(alg, right, left);
  Rat target = left.norm / right.norm;
  QMatrix g = scaled(norm_gram(alg, l), Rat(1 / target));
  std::optional<Elt> found;
  for_each_short_vector(g, Rat(1), [&](const std::vector<long>& c, const Rat& v) {
    if (!found && v == 1) found = combine(l, c);
  });
  return found;
}

std::size_t class_index(const ClassSet& cs, const Ideal& ideal) {
  for (std::size_t i = 0; i < cs.ideals.size(); ++i)
    if (find_isomorphism(cs.alg, ideal, cs.ideals[i])) return i;
  throw InvariantError("class_index: ideal matches no class representative");
}

ClassSet ideal_classes(const Algebra& alg, const Order& order) {
  ClassSet cs;
  cs.alg = alg;
  cs.order = order;
  for (long q = 2;; ++q) {
    if (q == alg.p || !fp::is_prime(static_cast<fp::u64>(q))) continue;
    auto e = splitting_idempotent(alg, order, q);
    if (e) {
      cs.neighbor_prime = q;
      cs.idempotent = *e;
      break;
    }
  }
  std::vector<Ideal> reps{make_left_ideal(alg, order, order.basis)};
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    std::size_t cur = queue.front();
    queue.pop_front();
    for (const Ideal& j : neighbors(alg, order, reps[cur], cs.neighbor_prime, cs.idempotent)) {
      bool known = false;
      for (const Ideal& r : reps)
        if (find_isomorphism(alg, j, r)) {
          known = true;
          break;
        }
      if (!known) {
        reps.push_back(j);
        queue.push_back(reps.size() - 1);
      }
    }
  }
  struct Rec {
    Ideal ideal;
    QMatrix ro;
    long w;
    QMatrix gram;
  };
  std::vector<Rec> recs;
  for (const Ideal& r : reps) {
    QMatrix ro = right_order(alg, r);
    recs.push_back({r, ro, static_cast<long>(units(alg, ro).size()), normalized_gram(alg, r)});
  }
  std::stable_sort(recs.begin(), recs.end(), [](const Rec& x, const Rec& y) {
    if (x.w != y.w) return x.w < y.w;
    return lex_less(x.gram, y.gram);
  });
  for (auto& r : recs) {
    ensure(r.w >= 2 && r.w % 2 == 0, "class weight is not an even number >= 2");
    cs.ideals.push_back(r.ideal);
    cs.right_orders.push_back(r.ro);
    cs.weights.push_back(r.w);
  }
  if (alg.p > 3) ensure(cs.mass() == Rat(alg.p - 1) / 24, "mass formula fails for the enumerated classes");
  return cs;
}

ThetaTable::ThetaTable(Algebra alg, std::vector<HeckeObject> objs, long nmax)
    : alg_(std::move(alg)), objs_(std::move(objs)), nmax_(nmax) {
  std::size_t h = objs_.size();
  counts_.assign(h, std::vector<std::vector<Int>>(h));
  for (std::size_t i = 0; i < h; ++i)
    for (std::size_t j = 0; j < h; ++j) {
      QMatrix l = hom_lattice(alg_, objs_[j], objs_[i]);
      Rat scale = objs_[j].chain[0].norm / objs_[i].chain[0].norm;
      counts_[i][j] = theta_counts(scaled(norm_gram(alg_, l), scale), nmax_);
    }
}

const Int& ThetaTable::count(std::size_t i, std::size_t j, long n) const {
  ensure(n >= 0 && n <= nmax_, "theta table: index beyond the cached range");
  return counts_[i][j][static_cast<std::size_t>(n)];
}

IntMatrix ThetaTable::brandt(long n) const {
  if (n < 1) throw HypothesisError("Brandt index must be positive");
  if (std::gcd(n, alg_.p) != 1)
    throw HypothesisError("Brandt index " + std::to_string(n) + " is not coprime to " + std::to_string(alg_.p));
  std::size_t h = objs_.size();
  IntMatrix b(h, h);
  for (std::size_t i = 0; i < h; ++i)
    for (std::size_t j = 0; j < h; ++j) {
      const Int& c = count(i, j, n);
      ensure(c % objs_[j].weight == 0, "Brandt entry not integral");
      b(i, j) = c / objs_[j].weight;
    }
  return b;
}

PairedLattice weighted_pairing(const std::vector<long>& weights) {
  QMatrix g(weights.size(), weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) g(i, i) = Rat(1, weights[i]);
  return PairedLattice(RatMatrix::from_q(g));
}

std::vector<std::pair<long, Int>> eisenstein_system(const ThetaTable& theta, const std::vector<long>& primes) {
  std::vector<std::pair<long, Int>> out;
  std::vector<Int> ones(theta.size(), 1);
  for (long r : primes) {
    IntMatrix b = theta.brandt(r);
    std::vector<Int> img = mat_vec(b, ones);
    for (const Int& v : img) ensure(v == 1 + r, "all-ones vector is not an eigenvector of B(" + std::to_string(r) + ")");
    out.emplace_back(r, Int(1 + r));
  }
  return out;
}

std::vector<long> primes_coprime(long bound, long m) {
  std::vector<long> out;
  for (long r = 2; r <= bound; ++r)
    if (fp::is_prime(static_cast<fp::u64>(r)) && m % r != 0) out.push_back(r);
  return out;
}

}  // namespace lr::quat
