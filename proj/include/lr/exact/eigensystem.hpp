#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lr/exact/gf.hpp"

namespace lr {

// A joint eigensystem of commuting operators reduced mod ell, normalized to
// the lexicographically least member of its Frobenius orbit and written in
// GF::canonical(ell, k), k the degree of the field the values generate.
struct ModEigensystem {
  std::uint32_t ell = 0;
  unsigned k = 1;
  std::vector<GF::Elem> values;       // one per operator
  std::vector<GF::Elem> eigenvector;  // column eigenvector for the canonical values
  std::size_t multiplicity = 0;       // dim over F_{ell^k} of the generalized joint eigenspace

  bool same_values(const ModEigensystem& o) const { return ell == o.ell && k == o.k && values == o.values; }
  std::string key() const;
};

// Least member of the Frobenius orbit of a tuple over F (componentwise
// order GF::less, tuples compared lexicographically).
std::vector<GF::Elem> canonical_conjugate(const GF& F, const std::vector<GF::Elem>& t,
                                          unsigned* frob_power = nullptr);
// Smallest k' dividing F.k() with every entry in F_{ell^k'}.
unsigned generated_degree(const GF& F, const std::vector<GF::Elem>& t);
// Re-expresses a tuple from F into the canonical field of degree k' (k' | F.k()),
// returning the canonical conjugate there.
std::vector<GF::Elem> to_canonical_field(const GF& F, const std::vector<GF::Elem>& t, unsigned kprime);

// All joint eigensystems of the commuting integer operators (acting on
// column vectors) after reduction mod ell, sorted by (k, values).
std::vector<ModEigensystem> joint_eigensystems_mod(const std::vector<IntMatrix>& ops, std::uint32_t ell);

// Verifies ops[r] v = values[r] v over GF::canonical(ell, k).
bool verify_eigensystem(const std::vector<IntMatrix>& ops, const ModEigensystem& e);

}  // namespace lr
