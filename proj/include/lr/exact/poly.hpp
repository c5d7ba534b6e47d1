#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lr/exact/matrix.hpp"

namespace lr {

// Coefficients from the constant term upward; the zero polynomial is empty.
using ZPoly = std::vector<Int>;
using QPoly = std::vector<Rat>;

void trim(ZPoly& f);
void trim(QPoly& f);
long degree(const ZPoly& f);
long degree(const QPoly& f);

ZPoly zmul(const ZPoly& a, const ZPoly& b);
Int content(const ZPoly& f);
// Primitive part with positive leading coefficient.
ZPoly primitive_part(const ZPoly& f);
QPoly to_qpoly(const ZPoly& f);
// Clears denominators and returns the primitive part.
ZPoly primitive_from_q(const QPoly& f);

QPoly qmul(const QPoly& a, const QPoly& b);
QPoly qsub(const QPoly& a, const QPoly& b);
void qdivmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r);
QPoly qderivative(const QPoly& f);
// Monic gcd; gcd(0, 0) = 0.
QPoly qgcd(QPoly a, QPoly b);

// Characteristic polynomial det(x I - m), division free.
ZPoly char_poly(const IntMatrix& m);
IntMatrix eval_poly(const ZPoly& f, const IntMatrix& m);
// Monic minimal polynomial (integral for integer matrices).
ZPoly minimal_polynomial(const IntMatrix& m);
Int eval_poly(const ZPoly& f, const Int& x);

struct ZFactor {
  ZPoly f;  // primitive, irreducible over Q, positive leading coefficient
  unsigned mult = 1;
};

// Factorization over Q of a nonzero polynomial into primitive irreducible
// integer polynomials (the constant content is dropped). Sorted by degree,
// then by coefficient list.
std::vector<ZFactor> factor_z(const ZPoly& f);

// Lifts F = g*h (mod p), with g and h monic and coprime mod p, to a
// factorization modulo p^a; coefficients end up as symmetric residues.
void hensel_lift(const ZPoly& F, ZPoly& g, ZPoly& h, std::uint32_t p, unsigned a);

std::string poly_to_string(const ZPoly& f);

}  // namespace lr
