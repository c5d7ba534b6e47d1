#pragma once

#include <optional>
#include <string>

#include "lr/exact/eigensystem.hpp"
#include "lr/exact/number_field.hpp"
#include "lr/level/level.hpp"

namespace lr::level {

// A Galois orbit of joint eigenvectors of commuting integer operators: the
// eigenvalue of operator `generator` generates the coefficient field and
// every other eigenvalue is a polynomial in it.
struct HeckeOrbit {
  NumberField field{ZPoly{Int(0), Int(1)}};
  std::size_t generator = 0;
  std::vector<long> labels;
  std::vector<QPoly> values;  // one per label, reduced mod field.g
  IntMatrix space;            // saturated row basis of the rational subspace
  QMatrix gen_matrix;         // the generating operator restricted to space
  bool rational() const { return field.degree() == 1; }
  std::size_t dim() const { return space.rows; }
  const QPoly& value(long label) const;
};

// ops act on column vectors; labels name them.
std::vector<HeckeOrbit> decompose(const std::vector<IntMatrix>& ops, const std::vector<long>& labels);
// Eigenvalue on the orbit of a further commuting operator (column action).
QPoly orbit_eigenvalue(const HeckeOrbit& orbit, const QMatrix& op);
bool is_eisenstein(const HeckeOrbit& orbit);

// A place of an orbit's field with a fixed embedding of its residue field.
struct LocalData {
  Place place;
  GF residue_field;
  GF::Elem root;
};
std::vector<LocalData> local_data(const HeckeOrbit& orbit, std::uint32_t ell);
GF::Elem reduce_at(const HeckeOrbit& orbit, const LocalData& ld, const QPoly& x);

// Level-K eigenforms for all labels r <= rbound, r != p.
std::vector<HeckeOrbit> old_eigenforms(const Instance& inst);

struct StarResult {
  bool holds = false;       // v_lambda(eta_f(e) - eta_1(e)) >= 1
  bool classical = false;   // v_lambda(a_q^2 - (1+q)^2) >= 1
  QPoly m;                  // eta_f(e_{K,K'}) - [K:J][K':J]_K
  Valuation vm;
  Valuation n0;             // v(m) - v([K':J]_K)
};
// Throws HypothesisError when ell divides q [K':J]_K.
StarResult star_criterion(const Instance& inst, const HeckeOrbit& f, LocalData& ld);

// Name of a character chi (trivial or the quadratic character mod p) with
// a_r = chi(r)(1+r) mod lambda for all labels r <= bound; empty if none.
std::optional<std::string> abelian_test(const HeckeOrbit& f, const LocalData& ld, long p, long bound);

// Places v (v not dividing q ell, v <= bound) with ell not dividing the
// order of the reduction of K_v. Two are required.
std::vector<long> two_place_witnesses(long p, long q, std::uint32_t ell, long bound = 200);

// Hecke family of the level-J new space, restricted to its saturated lattice.
struct NewSpace {
  IntMatrix lattice;
  std::vector<IntMatrix> ops;  // column action, one per inst.labels entry
};
NewSpace new_space(const Instance& inst);

struct RaiseResult {
  std::vector<ModEigensystem> congruent;  // sorted by (k, values)
  std::vector<GF::Elem> target;           // canonical reduction of f at the labels
  unsigned target_k = 1;
  long lift_exponent = -1;  // largest n with a rational new form = f mod ell^n, when defined
};
// Checks the hypotheses, then matches f mod lambda against the new space.
RaiseResult raise_level(const Instance& inst, const NewSpace& ns, const HeckeOrbit& f, LocalData& ld);

struct Semisimplicity {
  bool semisimple = true;
  std::size_t algebra_dim = 0;
  std::size_t nilradical_dim = 0;
};
// Over F_ell, for the commutative algebra generated by the operators.
Semisimplicity semisimple_mod_ell(const std::vector<IntMatrix>& ops, std::uint32_t ell);

}  // namespace lr::level
