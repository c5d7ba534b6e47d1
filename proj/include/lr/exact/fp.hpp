#pragma once

#include <cstdint>
#include <vector>

#include "lr/exact/poly.hpp"

// Polynomials over a prime field Z/p with p < 2^31.
namespace lr::fp {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using Poly = std::vector<u32>;  // constant term first, trimmed

u32 reduce(const Int& x, u32 p);
u32 inv_mod(u32 a, u32 p);
u32 pow_mod(u32 a, u64 e, u32 p);
bool is_prime(u64 n);

void trim(Poly& f);
long degree(const Poly& f);
Poly add(const Poly& a, const Poly& b, u32 p);
Poly sub(const Poly& a, const Poly& b, u32 p);
Poly mul(const Poly& a, const Poly& b, u32 p);
Poly scale(const Poly& a, u32 c, u32 p);
void divmod(const Poly& a, const Poly& b, u32 p, Poly& q, Poly& r);
Poly mod(const Poly& a, const Poly& b, u32 p);
Poly monic(const Poly& a, u32 p);
Poly gcd(Poly a, Poly b, u32 p);
// s*a + t*b = g (g monic)
Poly ext_gcd(const Poly& a, const Poly& b, u32 p, Poly& s, Poly& t);
Poly derivative(const Poly& f, u32 p);
Poly powmod(const Poly& base, const Int& e, const Poly& m, u32 p);
Poly from_z(const ZPoly& f, u32 p);
u32 eval(const Poly& f, u32 x, u32 p);

bool is_irreducible(const Poly& f, u32 p);

struct Factor {
  Poly f;  // monic irreducible
  unsigned mult = 1;
};
// Monic irreducible factorization of a nonzero polynomial; the leading
// coefficient is dropped. Sorted by degree then coefficients.
std::vector<Factor> factor(const Poly& f, u32 p);
// Berlekamp splitting of a monic squarefree polynomial.
std::vector<Poly> berlekamp(const Poly& f, u32 p);

}  // namespace lr::fp
