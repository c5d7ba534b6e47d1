#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lr/level/eigen.hpp"

namespace lr::level {

// One old eigensystem at one place above ell.
struct GridEntry {
  std::size_t form = 0;   // index among the old eigenforms
  std::string field;      // minimal polynomial of the eigenvalue field
  std::string place;      // residue polynomial of the place above ell
  bool eisenstein = false;
  bool star = false;
  bool classical = false;
  Valuation n0;
  std::string m;
  std::optional<std::string> abelian;
  std::vector<long> two_places;
  // "raised" when all hypotheses hold, otherwise the refusal reason
  std::string status;
  std::size_t congruent = 0;
  long lift_exponent = -1;
  bool eligible() const { return star && !abelian && two_places.size() >= 2; }
};

struct GridInstance {
  long p = 0, q = 0;
  std::uint32_t ell = 0;
  std::size_t new_dim = 0;
  std::vector<Int> module_invariants;  // filled when requested
  std::vector<GridEntry> entries;
};

struct GridOptions {
  std::vector<long> ps{11, 23, 29, 31};
  std::vector<long> qs{2, 3, 5, 7};
  std::vector<std::uint32_t> ells{3, 5, 7, 11, 13};
  long rbound = 50;
  bool congruence_module = false;
  unsigned jobs = 1;
};

// Sorted by (p, q, ell). Pairs with q = p or ell | q are skipped.
std::vector<GridInstance> run_grid(const GridOptions& opt);

struct IharaTrials {
  std::size_t trials = 0, passed = 0, failed = 0, refused_off_image = 0;
};
// Random rational preimages (integral plus half-integral kernel shifts)
// whose image is integral; each image must decompose integrally.
IharaTrials ihara_trials(const LevelStructure& ls, std::size_t trials, std::uint64_t seed);

}  // namespace lr::level
