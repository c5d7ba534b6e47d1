#include "lr/exact/modmat.hpp"

#include <utility>

#include "lr/errors.hpp"
#include "lr/exact/fp.hpp"
#include "lr/kernels/mod_axpy.hpp"

namespace lr {

ModMatrix ModMatrix::identity(std::size_t n, std::uint32_t mod) {
  ModMatrix m(n, n, mod);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1 % mod;
  return m;
}

ModMatrix reduce_mod(const IntMatrix& m, std::uint32_t p) {
  ModMatrix r(m.rows, m.cols, p);
  for (std::size_t i = 0; i < m.a.size(); ++i) r.a[i] = fp::reduce(m.a[i], p);
  return r;
}

ModMatrix mod_mul(const ModMatrix& x, const ModMatrix& y) {
  ensure(x.cols == y.rows && x.p == y.p, "mod_mul: shape mismatch");
  ModMatrix r(x.rows, y.cols, x.p);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t k = 0; k < x.cols; ++k)
      if (x(i, k) != 0) kernels::axpy_mod(r.row(i), y.row(k), x(i, k), x.p, y.cols);
  return r;
}

ModMatrix mod_transpose(const ModMatrix& x) {
  ModMatrix r(x.cols, x.rows, x.p);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t j = 0; j < x.cols; ++j) r(j, i) = x(i, j);
  return r;
}

std::vector<std::size_t> mod_rref(ModMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  const std::uint32_t p = m.p;
  for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
    std::size_t piv = m.rows;
    for (std::size_t i = r; i < m.rows; ++i)
      if (m(i, c) != 0) {
        piv = i;
        break;
      }
    if (piv == m.rows) continue;
    if (piv != r)
      for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(piv, j), m(r, j));
    kernels::scale_mod(m.row(r), fp::inv_mod(m(r, c), p), p, m.cols);
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (i == r || m(i, c) == 0) continue;
      kernels::axpy_mod(m.row(i), m.row(r), p - m(i, c), p, m.cols);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t mod_rank(ModMatrix m) { return mod_rref(m).size(); }

ModMatrix mod_right_kernel(const ModMatrix& m) {
  ModMatrix r = m;
  auto piv = mod_rref(r);
  std::vector<bool> is_piv(m.cols, false);
  for (auto c : piv) is_piv[c] = true;
  ModMatrix k(m.cols - piv.size(), m.cols, m.p);
  std::size_t row = 0;
  for (std::size_t f = 0; f < m.cols; ++f) {
    if (is_piv[f]) continue;
    k(row, f) = 1;
    for (std::size_t t = 0; t < piv.size(); ++t) k(row, piv[t]) = (m.p - r(t, f)) % m.p;
    ++row;
  }
  return k;
}

ModMatrix mod_left_kernel(const ModMatrix& m) { return mod_right_kernel(mod_transpose(m)); }

ModMatrix mod_coordinates(const ModMatrix& x, const ModMatrix& b) {
  // Solve c b = x: row reduce [b^T | x^T].
  std::size_t n = b.cols, k = b.rows;
  ModMatrix aug(n, k + x.rows, b.p);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) aug(i, j) = b(j, i);
    for (std::size_t j = 0; j < x.rows; ++j) aug(i, k + j) = x(j, i);
  }
  auto piv = mod_rref(aug);
  ModMatrix c(x.rows, k, b.p);
  for (std::size_t t = 0; t < piv.size(); ++t) {
    ensure(piv[t] < k, "mod_coordinates: vector outside the span");
    for (std::size_t j = 0; j < x.rows; ++j) c(j, piv[t]) = aug(t, k + j);
  }
  return c;
}

}  // namespace lr
