#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lr/exact/matrix.hpp"

namespace lr::local {

// One-dimensional characters of the rank-one Iwahori-Hecke algebra of
// unramified U(3): generators T (for K) and T' (for K') with
// (T + 1)(T - q^3) = 0 and (T' + 1)(T' - q) = 0.
struct IwahoriCharacter {
  std::string name;  // tr, St, pi_x (K-fixed only), pi_+ (K'-fixed only)
  Rat t, tp;
  Rat tk() const { return 1 + t; }   // eigenvalue of the characteristic function of K
  Rat tkp() const { return 1 + tp; }
};

// Rational roots of x^2 + b x + c (sorted), empty when irrational.
std::vector<Rat> rational_roots(const Rat& b, const Rat& c);
bool relation_t(long q, const Rat& t);
bool relation_tp(long q, const Rat& tp);
bool relations_hold(long q, const QMatrix& T, const QMatrix& Tp);

// The four characters, from the roots of the two relations.
std::vector<IwahoriCharacter> iwahori_rank1_characters(long q);

// Two-dimensional module of I(eta)^I: T, T' triangular with the relation
// eigenvalues and TT' having eigenvalues q^2 a and q^2 / a.
struct PrincipalModule {
  Rat a;
  QMatrix T, Tp;
};
PrincipalModule principal_series_module(long q, const Rat& a);

struct ModuleAnalysis {
  std::vector<Rat> tt_eigenvalues;  // sorted
  bool reducible = false;
  std::optional<IwahoriCharacter> sub, quotient;  // when reducible
};
ModuleAnalysis analyze_module(long q, const PrincipalModule& m);

// Points a among +-q^k, +-q^-k (k <= 4) where the module is reducible.
std::vector<Rat> reducibility_scan(long q);

// s' sigma(u) s'^-1 = u^q for the upper unipotent u = [x, y, z] != 1 and
// s' = diag(a, 1, 1), solved over Q for odd q.
struct UnipotentSolution {
  Rat a, x, y, z;
};
std::vector<UnipotentSolution> u3_unipotent_solutions(long q);
// Sorted distinct values of a; HypothesisError for even q.
std::vector<Rat> u3_reducibility_points(long q);
// The two sides of the relation for given (a, x, y, z), as 3x3 matrices.
QMatrix u3_relation_lhs(long q, const Rat& a, const Rat& x, const Rat& y, const Rat& z);
QMatrix u3_relation_rhs(long q, const Rat& x, const Rat& y, const Rat& z);

}  // namespace lr::local
