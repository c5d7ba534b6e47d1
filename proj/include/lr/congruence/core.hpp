#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lr/exact/linalg.hpp"
#include "lr/exact/valuation.hpp"

namespace lr {

// Z^n with a nondegenerate symmetric rational pairing given by its Gram.
struct PairedLattice {
  RatMatrix gram;

  PairedLattice() = default;
  explicit PairedLattice(RatMatrix g);
  std::size_t rank() const { return gram.rows(); }
  QMatrix gram_q() const { return gram.to_q(); }
};

// Commuting integral operators on column vectors with a label involution.
struct HeckeFamily {
  std::vector<std::string> labels;
  std::vector<IntMatrix> ops;
  std::vector<std::size_t> dual;  // index of the adjoint label

  void add(const std::string& label, const IntMatrix& op);  // self-dual label
  std::size_t size() const { return ops.size(); }
  std::size_t index_of(const std::string& label) const;
};

// Throws InvariantError naming the first failed check: commutation,
// Gram-adjointness of op and dual op.
void validate_family(const PairedLattice& L, const HeckeFamily& T);

struct Annihilators {
  Int a;  // least A with A Z^n inside the dual lattice
  Int b;  // least B with B (dual lattice) inside Z^n
};
Annihilators dual_annihilators(const PairedLattice& L);

struct DegeneracySetup {
  PairedLattice u_space, v_space;
  HeckeFamily u_ops, v_ops;  // same labels in the same order
  RatMatrix delta;           // V-coordinates = delta * U-coordinates
  Int a_u = 1, b_v = 1, c = 1;

  Int e() const { return a_u * b_v * c * c; }
};

// Fills a_u, b_v (minimal) and c = exponent of sat(delta U_Z) / delta U_Z.
DegeneracySetup make_setup(PairedLattice u, HeckeFamily tu, PairedLattice v, HeckeFamily tv, RatMatrix delta);
// Exponent of (V_Z cap delta(U)) / delta(U_Z); delta must be integral.
Int ihara_constant(const IntMatrix& delta);
// Checks every stated invariant of a setup; throws InvariantError on failure.
void validate_setup(const DegeneracySetup& s);

QMatrix adjoint_map(const DegeneracySetup& s);
QMatrix delta_dual_delta(const DegeneracySetup& s);

struct OldNewSplit {
  QMatrix old_basis, new_basis;        // rows, Q-bases of im delta and its orthogonal
  IntMatrix old_lattice, new_lattice;  // saturated Z-bases
};
OldNewSplit old_new_split(const DegeneracySetup& s);

// Rows: Q-basis of ker delta, then a saturated integral basis.
IntMatrix kernel_lattice(const DegeneracySetup& s);

struct CongruenceModule {
  std::vector<Int> invariants;  // nontrivial invariant factors (empty = trivial group)
  IntMatrix u_prime;            // saturated basis of (ker delta)^perp
  QMatrix target;               // basis of U'_Z cap E^{-1} delta^v delta (U_Z)
  bool factors_through_new = false;
  bool factors_through_old = false;
  Int order() const;
};
CongruenceModule congruence_module(const DegeneracySetup& s);

struct CongruenceReport {
  std::uint32_t ell = 0;
  Rat m;
  Valuation vm, ve, vcurly;
  long n0 = 0;
  std::vector<std::pair<std::string, Int>> character;  // eta mod ell^n0 when n0 > 0
  Int modulus;                                         // ell^n0 (1 when n0 <= 0)
  std::string to_json() const;
};

// u: integral eigenvector of every U-operator with eigenvalues eta. When
// m_claim is given it must satisfy delta^v delta u in m_claim * Z^n and is
// used instead of the maximal content.
CongruenceReport cor22_bound(const DegeneracySetup& s, const std::vector<Int>& u, const std::vector<Int>& eta,
                             std::uint32_t ell, std::optional<Rat> m_claim = std::nullopt);

// Maximal rational m with w in m Z^n (w nonzero).
Rat lattice_content(const std::vector<Rat>& w);

}  // namespace lr
