#pragma once

#include <cstdint>
#include <vector>

#include "lr/exact/matrix.hpp"

namespace lr {

// Dense matrix over Z/p, entries in [0, p). Row operations go through the
// dispatched SIMD kernels.
struct ModMatrix {
  std::size_t rows = 0, cols = 0;
  std::uint32_t p = 2;
  std::vector<std::uint32_t> a;

  ModMatrix() = default;
  ModMatrix(std::size_t r, std::size_t c, std::uint32_t mod) : rows(r), cols(c), p(mod), a(r * c, 0) {}
  std::uint32_t& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  std::uint32_t operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
  std::uint32_t* row(std::size_t i) { return a.data() + i * cols; }
  const std::uint32_t* row(std::size_t i) const { return a.data() + i * cols; }
  bool operator==(const ModMatrix& o) const {
    return rows == o.rows && cols == o.cols && p == o.p && a == o.a;
  }
  static ModMatrix identity(std::size_t n, std::uint32_t mod);
};

ModMatrix reduce_mod(const IntMatrix& m, std::uint32_t p);
ModMatrix mod_mul(const ModMatrix& x, const ModMatrix& y);
ModMatrix mod_transpose(const ModMatrix& x);

// In-place reduced row echelon form; returns pivot columns.
std::vector<std::size_t> mod_rref(ModMatrix& m);
std::size_t mod_rank(ModMatrix m);
// Rows span {v : m v = 0}.
ModMatrix mod_right_kernel(const ModMatrix& m);
// Rows span {x : x m = 0}.
ModMatrix mod_left_kernel(const ModMatrix& m);
// Coordinates of the rows of x in the independent row basis b; throws if a row
// is outside the span.
ModMatrix mod_coordinates(const ModMatrix& x, const ModMatrix& b);

}  // namespace lr
