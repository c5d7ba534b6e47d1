#pragma once

#include <cstdint>
#include <vector>

#include "lr/exact/gf.hpp"
#include "lr/exact/poly.hpp"
#include "lr/exact/valuation.hpp"

namespace lr {

// Q(a) = Q[t]/(g) for a monic irreducible integer polynomial g. Elements are
// coefficient vectors of length deg g. The rational field is g = t.
struct NumberField {
  ZPoly g;

  explicit NumberField(ZPoly minpoly);
  static NumberField rationals() { return NumberField(ZPoly{Int(0), Int(1)}); }

  std::size_t degree() const { return g.size() - 1; }
  using Elem = QPoly;
  Elem from_rat(const Rat& c) const;
  Elem gen() const;
  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem inv(const Elem& a) const;
  bool is_zero(const Elem& a) const;
  bool is_rational(const Elem& a) const;
  Rat to_rat(const Elem& a) const;
  Elem normalize(const Elem& a) const;
  std::string to_string(const Elem& a) const;
};

// A prime of the field above ell, singled out by an irreducible factor phi of
// g mod ell. The local factor G satisfies G = phi^s (mod ell) and g = G*H
// modulo ell^precision with H coprime to phi.
struct Place {
  std::uint32_t ell = 0;
  fp::Poly phi;
  unsigned s = 1;
  unsigned precision = 0;
  ZPoly local;       // G, symmetric residues mod ell^precision
  fp::Poly cofactor; // H mod ell
  bool exact = false; // G == g, no lifting involved
};

// Places above ell, one per irreducible factor of g mod ell (sorted as in
// fp::factor). Throws HypothesisError when a repeated factor does not give a
// single totally ramified prime that this code can certify.
std::vector<Place> places_above(const NumberField& K, std::uint32_t ell);

// Normalized valuation v_lambda (v_lambda(uniformizer) = 1).
Valuation place_valuation(const NumberField& K, Place& P, const NumberField::Elem& x);

// Image of a lambda-integral element in the residue field F, with t sent to
// the given root of phi in F. Throws when x has ell in its denominator.
GF::Elem place_residue(const NumberField& K, const Place& P, const GF& F, const GF::Elem& root,
                       const NumberField::Elem& x);

}  // namespace lr
