#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lr/exact/matrix.hpp"

namespace lr::local {

// Weyl group as permutations of tuple positions: S3 on 3-tuples, and the
// order-8 signed permutations of GSp4 on 4-tuples (t0 t3 = t1 t2).
std::vector<std::vector<unsigned>> satake_weyl_group(std::size_t n);

// Is some w(param) congruent to target mod ell, entrywise?
// HypothesisError if ell divides a denominator.
bool satake_congruent(const std::vector<Rat>& param, const std::vector<Rat>& target, std::uint32_t ell);

enum class SatakeFamily { Va, VIa };
std::string family_name(SatakeFamily f);

// Twisted by q^{3/2}; target (1, q, q^2, q^3) is the trivial representation.
std::vector<Rat> satake_target(long q);
std::vector<Rat> satake_parameter(SatakeFamily f, long q, const Rat& sigma);

struct SatakeReport {
  SatakeFamily family;
  long q = 0;
  std::uint32_t ell = 0;
  std::string twist = "q^(3/2)";
  std::vector<long> sigmas;  // all sigma in F_ell^x that work
  bool solvable = false;
  bool predicted = false;    // Va: q = -1 or q^2 = -1; VIa: q^2 = 1 (mod ell)
  bool agrees() const { return solvable == predicted; }
};
SatakeReport satake_check(SatakeFamily f, long q, std::uint32_t ell);
bool satake_prediction(SatakeFamily f, long q, std::uint32_t ell);

}  // namespace lr::local
