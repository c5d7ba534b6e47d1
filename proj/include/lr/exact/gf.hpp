#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lr/exact/fp.hpp"

namespace lr {

// Finite field F_{p^k} = F_p[x]/(modulus). Elements are coordinate vectors of
// length k in the power basis.
class GF {
 public:
  using Elem = std::vector<std::uint32_t>;

  // Modulus = lexicographically least monic irreducible of degree k, ordered
  // by (c_{k-1}, ..., c_0).
  static GF canonical(std::uint32_t p, unsigned k);
  GF(std::uint32_t p, fp::Poly modulus);

  std::uint32_t p() const { return p_; }
  unsigned k() const { return k_; }
  const fp::Poly& modulus() const { return mod_; }
  Int order() const;

  Elem zero() const { return Elem(k_, 0); }
  Elem one() const { return from_u(1); }
  Elem from_u(std::uint32_t c) const;
  Elem from_int(const Int& c) const;
  // Class of x, a generator of the field over F_p.
  Elem gen() const;

  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem inv(const Elem& a) const;
  Elem pow(const Elem& a, const Int& e) const;
  Elem frob(const Elem& a) const;  // a^p
  bool is_zero(const Elem& a) const;
  // Evaluate a polynomial over F_p at a.
  Elem eval(const fp::Poly& f, const Elem& a) const;
  // Value in F_p when a lies in the prime field.
  bool in_prime_field(const Elem& a) const;
  // Order used for canonical forms: compares (c_{k-1}, ..., c_0).
  static bool less(const Elem& a, const Elem& b);
  std::string to_string(const Elem& a) const;

  bool operator==(const GF& o) const { return p_ == o.p_ && mod_ == o.mod_; }

 private:
  std::uint32_t p_;
  unsigned k_;
  fp::Poly mod_;
  Elem from_poly(fp::Poly f) const;
};

// Lexicographically least monic irreducible polynomial of degree k over F_p.
fp::Poly least_irreducible(std::uint32_t p, unsigned k);

// All distinct roots in F of a polynomial over F_p, sorted by GF::less.
std::vector<GF::Elem> roots_in(const GF& F, const fp::Poly& f);

struct GFMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<GF::Elem> a;
  GFMatrix() = default;
  GFMatrix(const GF& F, std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, F.zero()) {}
  GF::Elem& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const GF::Elem& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

GFMatrix gf_from_int(const GF& F, const IntMatrix& m);
GFMatrix gf_mul(const GF& F, const GFMatrix& x, const GFMatrix& y);
// In-place reduced row echelon form; returns pivot columns.
std::vector<std::size_t> gf_rref(const GF& F, GFMatrix& m);
// Rows span the null space {v : m v = 0}; dimension cols - rank.
GFMatrix kernel_mod_ell(const GF& F, const GFMatrix& m);

}  // namespace lr
