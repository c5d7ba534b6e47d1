#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "lr/exact/matrix.hpp"

namespace lr::local {

// F_q for a prime power q <= 64, elements encoded as 0..q-1 (coordinates
// in the power basis of GF::canonical, base p).
class SmallField {
 public:
  explicit SmallField(unsigned q);
  unsigned q() const { return q_; }
  unsigned p() const { return p_; }
  unsigned add(unsigned a, unsigned b) const { return add_[a * q_ + b]; }
  unsigned mul(unsigned a, unsigned b) const { return mul_[a * q_ + b]; }
  unsigned neg(unsigned a) const { return neg_[a]; }
  unsigned sub(unsigned a, unsigned b) const { return add(a, neg(b)); }
  unsigned inv(unsigned a) const;
  unsigned pow(unsigned a, unsigned long e) const;
  // Image of the integer n in the prime field.
  unsigned from_int(long n) const;

 private:
  unsigned q_, p_;
  std::vector<std::uint8_t> add_, mul_, neg_, inv_;
};

enum class GroupKind { GL3, GSp4 };
std::string kind_name(GroupKind k);
GroupKind parse_kind(const std::string& s);

// K: the whole group; I: Borel; J: (2,1) parabolic for GL3, Heisenberg
// (Klingen) parabolic for GSp4; Jp: the (1,2) parabolic for GL3, Siegel
// parabolic for GSp4; Kp: the second maximal compact, which has no
// reduction inside G(F_q).
enum class Shape { K, Kp, J, Jp, I };
std::string shape_name(Shape s);

using Elt = std::array<std::uint8_t, 16>;

// G(F_q) as an explicit element list with an index.
class FiniteGroup {
 public:
  FiniteGroup(GroupKind kind, unsigned q);
  GroupKind kind() const { return kind_; }
  const SmallField& field() const { return F_; }
  unsigned n() const { return n_; }
  std::size_t order() const { return elts_.size(); }
  const Elt& elt(std::size_t i) const { return elts_[i]; }
  std::size_t index_of(const Elt& g) const;
  Elt mul(const Elt& x, const Elt& y) const;
  Elt inverse(const Elt& x) const;
  Elt identity() const;
  unsigned at(const Elt& g, unsigned i, unsigned j) const { return g[i * n_ + j]; }

  bool in_shape(const Elt& g, Shape s) const;
  // Indices of the elements of the shape subgroup; throws for Kp.
  std::vector<std::size_t> subgroup(Shape s) const;

 private:
  GroupKind kind_;
  SmallField F_;
  unsigned n_;
  std::vector<Elt> elts_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
  std::uint64_t key(const Elt& g) const;
  void enumerate_gl3();
  void enumerate_gsp4();
};

// Closed forms for |GL(3, q)| and |GSp(4, q)|.
Int classical_order(GroupKind kind, unsigned q);
// Refuses (HypothesisError with the order) beyond q <= 4 (GL3), q <= 3 (GSp4).
void check_enumerable(GroupKind kind, unsigned q);

// A small generating set of a subgroup given by its element indices, with
// a closure check: throws InvariantError when the set is not a subgroup.
std::vector<std::size_t> generators(const FiniteGroup& G, const std::vector<std::size_t>& sub);

struct DoubleCosets {
  std::vector<std::size_t> reps;   // least element index of each double coset
  std::vector<std::size_t> sizes;
};
DoubleCosets double_cosets(const FiniteGroup& G, const std::vector<std::size_t>& left,
                           const std::vector<std::size_t>& right);
std::size_t double_coset_count(const FiniteGroup& G, Shape h1, Shape h2);

// |W / W_H|, W the Weyl group acting on diagonal positions and W_H the
// subgroup generated by the reflections of the parahoric H.
std::size_t weyl_coset_count(GroupKind kind, Shape h);
std::size_t weyl_order(GroupKind kind);

enum class LeviRep { Trivial, Steinberg };
// dim Ind_P^G(tau)^H as a sum over P\G/H of fixed dimensions of tau under
// the Levi image of P cap gHg^-1. Supported: P = I with tau trivial, or P a
// maximal parabolic with a GL2 Levi factor (GL3: J; GSp4: J or Jp).
std::size_t induced_fixed_dim(const FiniteGroup& G, Shape parabolic, LeviRep tau, Shape h);

struct IndexEntry {
  std::string label;
  Int value;
  std::string source;
};
enum class IndexKind { U3, GL3, GSp4 };
// Closed forms: U3 ([K:I], [K':I], [K':I]_K); GL3 ([K:J], [K':J]_K);
// GSp4 ([K:J], [K':J], [K':J]_K). The relative index is computed as
// [K':J] / gcd([K':J], [K:J]).
std::vector<IndexEntry> parahoric_indices(IndexKind kind, unsigned q);
// Finite-model values of the same labels where a model exists (line counts
// and order ratios); labels without a model are omitted.
std::vector<IndexEntry> model_indices(IndexKind kind, unsigned q);

// Number of lines in F_{q^2}^n isotropic for the antidiagonal hermitian form.
std::size_t hermitian_isotropic_lines(unsigned q, unsigned n);
// Number of lines in F_q^n, by enumeration.
std::size_t projective_points(unsigned q, unsigned n);

}  // namespace lr::local
