#pragma once

#include <vector>

#include "lr/exact/matrix.hpp"

namespace lr {

// ---- rational linear algebra -------------------------------------------

struct Rref {
  QMatrix r;                      // reduced row echelon form
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

Rref rref(const QMatrix& m);
std::size_t rank(const QMatrix& m);
std::size_t rank(const IntMatrix& m);
// Rows form a basis of {v : m v = 0}.
QMatrix right_kernel(const QMatrix& m);
// Rows form a basis of {x : x m = 0}.
QMatrix left_kernel(const QMatrix& m);
Rat det(const QMatrix& m);
// Throws InvariantError when singular.
QMatrix inverse(const QMatrix& m);
// Solves a x = b for x (one column per column of b); throws if inconsistent.
QMatrix solve(const QMatrix& a, const QMatrix& b);
// Rows spanning the Q-row-space of m (a row echelon subset, deterministic).
QMatrix row_space_basis(const QMatrix& m);

// ---- integer normal forms ----------------------------------------------

struct Smith {
  IntMatrix u, d, v;      // u * m * v = d
  IntMatrix v_inv;        // inverse of v
  std::vector<Int> diag;  // d_1 | d_2 | ... (length min(rows, cols)), zeros last
  std::size_t rank = 0;
};

// Pivot rule: the nonzero entry of least absolute value, ties broken by
// row-major position.
Smith smith_normal_form(const IntMatrix& m);
std::vector<Int> invariant_factors(const IntMatrix& m);

// Row Hermite normal form; only nonzero rows are returned.
IntMatrix hnf_rows(const IntMatrix& m);

// Basis (rows) of (Q-span of rows) intersected with Z^n.
IntMatrix saturate(const IntMatrix& basis);
// Saturated basis of {x in Z^rows : x m = 0}.
IntMatrix integer_left_kernel(const IntMatrix& m);
// Saturated basis of {v in Z^cols : m v = 0}.
IntMatrix integer_right_kernel(const IntMatrix& m);
// Row lattices of full column dimension n; returns a basis of L1 cap L2.
IntMatrix lattice_intersection(const IntMatrix& l1, const IntMatrix& l2);
// Coordinates of each row of x in the row basis b (rows independent);
// throws if some row is not in the Q-span.
QMatrix coordinates(const QMatrix& x, const QMatrix& b);
// True iff every row of sub lies in the Z-row-lattice of b.
bool lattice_contains(const IntMatrix& b, const IntMatrix& sub);
// Rational row lattices: scaled to integers, intersected, and scaled back.
QMatrix rational_lattice_intersection(const QMatrix& l1, const QMatrix& l2);
QMatrix rational_hnf(const QMatrix& gens);

}  // namespace lr
