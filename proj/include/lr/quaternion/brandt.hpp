#pragma once

#include <map>
#include <string>

#include "lr/congruence/core.hpp"
#include "lr/quaternion/algebra.hpp"

namespace lr::quat {

// A point of a weighted double-coset space: a chain of left ideals (one ideal
// at maximal level, an ideal and a neighbor for an edge) with its unit weight.
struct HeckeObject {
  std::vector<Ideal> chain;
  long weight = 0;
};

// Elements x with chain_from[k] * x inside chain_to[k] for every k.
QMatrix hom_lattice(const Algebra& alg, const HeckeObject& from, const HeckeObject& to);
// Order of the common unit group of the right orders of the chain.
std::vector<Elt> chain_units(const Algebra& alg, const HeckeObject& obj);

struct ClassSet {
  Algebra alg;
  Order order;
  long neighbor_prime = 0;
  std::vector<long> idempotent;
  std::vector<Ideal> ideals;
  std::vector<QMatrix> right_orders;
  std::vector<long> weights;

  std::size_t size() const { return ideals.size(); }
  Rat mass() const;
  std::vector<HeckeObject> objects() const;
};

// x with right * x = left when the ideals are isomorphic.
std::optional<Elt> find_isomorphism(const Algebra& alg, const Ideal& left, const Ideal& right);
ClassSet ideal_classes(const Algebra& alg, const Order& order);
// Index of the class of a left ideal; throws InvariantError if none matches.
std::size_t class_index(const ClassSet& cs, const Ideal& ideal);

// Representation numbers of the Hom lattices, cached up to nmax.
class ThetaTable {
 public:
  ThetaTable(Algebra alg, std::vector<HeckeObject> objs, long nmax);
  std::size_t size() const { return objs_.size(); }
  long nmax() const { return nmax_; }
  const std::vector<HeckeObject>& objects() const { return objs_; }
  // #{x in Hom(obj_j, obj_i) : nrd(x) = n N_i / N_j}
  const Int& count(std::size_t i, std::size_t j, long n) const;
  // B(n)_{ij} = count(i, j, n) / W_j. Throws HypothesisError if p | n.
  IntMatrix brandt(long n) const;

 private:
  Algebra alg_;
  std::vector<HeckeObject> objs_;
  long nmax_;
  std::vector<std::vector<std::vector<Int>>> counts_;
};

// Diagonal pairing with entries 1/W_i.
PairedLattice weighted_pairing(const std::vector<long>& weights);
// r -> 1 + r for primes r not dividing p, after checking the all-ones vector
// is an eigenvector of B(r).
std::vector<std::pair<long, Int>> eisenstein_system(const ThetaTable& theta, const std::vector<long>& primes);

// Primes r <= bound with r not dividing m, in increasing order.
std::vector<long> primes_coprime(long bound, long m);

}  // namespace lr::quat
