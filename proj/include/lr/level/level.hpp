#pragma once

#include <optional>
#include <utility>

#include "lr/congruence/core.hpp"
#include "lr/quaternion/brandt.hpp"

namespace lr::level {

using quat::ClassSet;
using quat::HeckeObject;
using quat::Ideal;
using quat::ThetaTable;

// One point of X_J: a unit-group orbit of neighbor lines at a base class.
struct Edge {
  std::size_t base = 0;                // pi(e)
  std::size_t target = 0;              // pi'(e): class of the neighbor
  std::size_t line = 0;                // least line index in the orbit
  std::vector<std::size_t> orbit;      // all line indices in the orbit
  long weight = 0;                     // stabilizer order
  Ideal sub;                           // the neighbor ideal of the representative line
};

struct LevelStructure {
  ClassSet classes;
  long q = 0;
  std::vector<Edge> edges;
  std::vector<std::vector<std::size_t>> line_class;  // [i][t]: class of neighbor t at class i

  std::size_t h() const { return classes.size(); }
  std::vector<HeckeObject> edge_objects() const;
  // #{lines at class i whose neighbor lies in class j}
  IntMatrix line_counts() const;
};

LevelStructure build_level_structure(const ClassSet& classes, long q);

// Degeneracy map (f, f') -> f o pi + f' o pi' as an |X_J| x 2h matrix.
IntMatrix degeneracy_matrix(const LevelStructure& ls);

// Weighted fiber sums k = [K:J], k' = [K':J] (checked constant over the base).
struct Indices {
  Int k, kp;
  Int kp_rel() const { return kp / gcd(kp, k); }  // [K':J]_K
};
Indices parahoric_indices(const LevelStructure& ls);

// Averaging maps: e_K : A(K') -> A(K) and e_K' : A(K) -> A(K'), both h x h.
QMatrix average_to_k(const LevelStructure& ls);
QMatrix average_to_kprime(const LevelStructure& ls);
// Pull back then average over the fibers of pi (resp. pi'), acting on A(J).
QMatrix projector_k(const LevelStructure& ls);
QMatrix projector_kprime(const LevelStructure& ls);
// e_{K,K'} = [K:J][K':J]_K (e_K e_K' e_K) as an operator on A(K).
QMatrix e_kkprime(const LevelStructure& ls);
// The block matrix [[k Id, k e_K], [k' e_K', k' Id]].
QMatrix block_formula(const LevelStructure& ls);

// Connected classes of X_J under "same pi or same pi'" and the BFS radius
// from the least-index member of each class.
struct SimClasses {
  std::vector<std::size_t> cls;
  std::vector<std::size_t> radius;
  std::vector<std::size_t> reps;
  std::size_t count() const { return reps.size(); }
};
SimClasses sim_classes(const LevelStructure& ls);

// Integral (f, f') with delta(f, f') = g; throws HypothesisError when g is
// not in the rational image of delta.
std::pair<std::vector<Int>, std::vector<Int>> ihara_decompose(const LevelStructure& ls, const std::vector<Int>& g);

// Everything needed for level raising at q with Hecke labels r <= rbound, r not dividing pq.
struct Instance {
  LevelStructure ls;
  std::vector<long> labels;        // primes r <= rbound, r not dividing pq
  std::vector<long> k_labels;      // primes r <= rbound, r != p (level K)
  std::optional<ThetaTable> theta_k, theta_j;
  DegeneracySetup setup;           // U = A(K) + A(K'), V = A(J)
  long rbound = 50;

  long p() const { return ls.classes.alg.p; }
  long q() const { return ls.q; }
};

Instance make_instance(const ClassSet& classes, long q, long rbound = 50);

}  // namespace lr::level
