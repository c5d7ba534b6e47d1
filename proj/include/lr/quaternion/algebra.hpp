#pragma once

#include <array>
#include <optional>
#include <vector>

#include "lr/exact/linalg.hpp"

namespace lr::quat {

// Definite algebra with i^2 = a, j^2 = b, k = ij = -ji, ramified at p and infinity.
struct Algebra {
  long p = 0;
  Int a, b;
};

using Elt = std::array<Rat, 4>;  // coordinates in (1, i, j, k)

Algebra build_algebra(long p);
// Local Hilbert symbol (a, b)_ell at a finite prime.
int hilbert_symbol(const Int& a, const Int& b, long ell);
// Finite primes at which the algebra is ramified.
std::vector<long> ramified_primes(const Algebra& alg);

Elt mul(const Algebra& alg, const Elt& x, const Elt& y);
Elt conj(const Elt& x);
Rat nrd(const Algebra& alg, const Elt& x);
Rat trd(const Elt& x);
Elt one();

// Lattices are rational 4-column matrices whose rows are a Z-basis.
Elt row_elt(const QMatrix& basis, std::size_t i);
Elt combine(const QMatrix& basis, const std::vector<long>& coeffs);
QMatrix from_elts(const std::vector<Elt>& xs);
// Canonical (HNF) basis of the Z-span of all products x*y.
QMatrix lattice_product(const Algebra& alg, const QMatrix& x, const QMatrix& y);
QMatrix conjugate_lattice(const QMatrix& x);
QMatrix right_multiply(const Algebra& alg, const QMatrix& x, const Elt& u);
// Gram of the reduced norm on the basis rows: nrd(c * basis) = c G c^T.
QMatrix norm_gram(const Algebra& alg, const QMatrix& basis);
Rat covolume(const QMatrix& basis);
bool lattice_contains(const QMatrix& big, const QMatrix& small);

struct Order {
  QMatrix basis;
  std::vector<IntMatrix> left_mult;  // row t of left_mult[s]: coordinates of basis_s * basis_t
};

// Throws InvariantError unless the lattice is a ring containing 1 with
// integral reduced traces and norms.
Order make_order(const Algebra& alg, const QMatrix& basis);
Order maximal_order(const Algebra& alg);
// Determinant of the reduced-trace pairing trd(x conj(y)) on the basis.
Rat trace_form_det(const Algebra& alg, const QMatrix& basis);

struct Ideal {
  QMatrix basis;  // HNF
  Rat norm;
};

Ideal make_left_ideal(const Algebra& alg, const Order& order, const QMatrix& gens);
QMatrix right_order(const Algebra& alg, const Ideal& ideal);
// All elements of reduced norm one in the order spanned by basis.
std::vector<Elt> units(const Algebra& alg, const QMatrix& order_basis);

// Coordinates c in F_q^4 (order basis) of the lexicographically least
// nontrivial idempotent of O/qO; empty when q ramifies.
std::optional<std::vector<long>> splitting_idempotent(const Algebra& alg, const Order& order, long q);
// The q+1 left O-ideals J with qI < J < I of index q^2, in a fixed order.
std::vector<Ideal> neighbors(const Algebra& alg, const Order& order, const Ideal& ideal, long q,
                             const std::vector<long>& idempotent);

}  // namespace lr::quat
