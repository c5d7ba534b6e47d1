#include "lr/exact/linalg.hpp"

#include <algorithm>
#include <utility>

#include "lr/errors.hpp"

namespace lr {

// ---- rational ------------------------------------------------------------

Rref rref(const QMatrix& m) {
  Rref out{m, {}};
  QMatrix& a = out.r;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols && r < a.rows; ++c) {
    std::size_t piv = a.rows;
    for (std::size_t i = r; i < a.rows; ++i)
      if (a(i, c) != 0) {
        piv = i;
        break;
      }
    if (piv == a.rows) continue;
    if (piv != r)
      for (std::size_t j = 0; j < a.cols; ++j) std::swap(a(piv, j), a(r, j));
    Rat inv = 1 / a(r, c);
    for (std::size_t j = c; j < a.cols; ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < a.rows; ++i) {
      if (i == r || a(i, c) == 0) continue;
      Rat f = a(i, c);
      for (std::size_t j = c; j < a.cols; ++j) a(i, j) -= f * a(r, j);
    }
    out.pivots.push_back(c);
    ++r;
  }
  return out;
}

std::size_t rank(const QMatrix& m) { return rref(m).pivots.size(); }
std::size_t rank(const IntMatrix& m) { return rank(to_q(m)); }

QMatrix right_kernel(const QMatrix& m) {
  Rref rr = rref(m);
  std::vector<bool> is_piv(m.cols, false);
  for (auto c : rr.pivots) is_piv[c] = true;
  std::vector<std::vector<Rat>> basis;
  for (std::size_t f = 0; f < m.cols; ++f) {
    if (is_piv[f]) continue;
    std::vector<Rat> v(m.cols, Rat(0));
    v[f] = 1;
    for (std::size_t k = 0; k < rr.pivots.size(); ++k) v[rr.pivots[k]] = -rr.r(k, f);
    basis.push_back(v);
  }
  return from_rows(basis, m.cols);
}

QMatrix left_kernel(const QMatrix& m) { return right_kernel(transpose(m)); }

Rat det(const QMatrix& m) {
  ensure(m.rows == m.cols, "det: matrix not square");
  QMatrix a = m;
  Rat d = 1;
  for (std::size_t c = 0; c < a.cols; ++c) {
    std::size_t piv = a.rows;
    for (std::size_t i = c; i < a.rows; ++i)
      if (a(i, c) != 0) {
        piv = i;
        break;
      }
    if (piv == a.rows) return 0;
    if (piv != c) {
      for (std::size_t j = 0; j < a.cols; ++j) std::swap(a(piv, j), a(c, j));
      d = -d;
    }
    d *= a(c, c);
    for (std::size_t i = c + 1; i < a.rows; ++i) {
      if (a(i, c) == 0) continue;
      Rat f = a(i, c) / a(c, c);
      for (std::size_t j = c; j < a.cols; ++j) a(i, j) -= f * a(c, j);
    }
  }
  return d;
}

QMatrix inverse(const QMatrix& m) {
  ensure(m.rows == m.cols, "inverse: matrix not square");
  std::size_t n = m.rows;
  QMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  Rref rr = rref(aug);
  ensure(rr.pivots.size() >= n && rr.pivots[n - 1] == n - 1, "inverse: singular matrix");
  QMatrix r(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r(i, j) = rr.r(i, n + j);
  return r;
}

QMatrix solve(const QMatrix& a, const QMatrix& b) {
  ensure(a.rows == b.rows, "solve: dimension mismatch");
  QMatrix aug(a.rows, a.cols + b.cols);
  for (std::size_t i = 0; i < a.rows; ++i) {
    for (std::size_t j = 0; j < a.cols; ++j) aug(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols; ++j) aug(i, a.cols + j) = b(i, j);
  }
  Rref rr = rref(aug);
  QMatrix x(a.cols, b.cols);
  for (std::size_t k = 0; k < rr.pivots.size(); ++k) {
    std::size_t c = rr.pivots[k];
    ensure(c < a.cols, "solve: inconsistent system");
    for (std::size_t j = 0; j < b.cols; ++j) x(c, j) = rr.r(k, a.cols + j);
  }
  return x;
}

QMatrix row_space_basis(const QMatrix& m) {
  Rref rr = rref(m);
  QMatrix r(rr.pivots.size(), m.cols);
  for (std::size_t i = 0; i < r.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) r(i, j) = rr.r(i, j);
  return r;
}

// ---- integer -------------------------------------------------------------

namespace {

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(a, j), m(b, j));
}
void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows; ++i) std::swap(m(i, a), m(i, b));
}
// row_dst += f * row_src
void add_row(IntMatrix& m, std::size_t dst, std::size_t src, const Int& f) {
  for (std::size_t j = 0; j < m.cols; ++j) m(dst, j) += f * m(src, j);
}
// col_dst += f * col_src
void add_col(IntMatrix& m, std::size_t dst, std::size_t src, const Int& f) {
  for (std::size_t i = 0; i < m.rows; ++i) m(i, dst) += f * m(i, src);
}

}  // namespace

Smith smith_normal_form(const IntMatrix& m) {
  Smith s;
  s.d = m;
  s.u = IntMatrix::identity(m.rows);
  s.v = IntMatrix::identity(m.cols);
  s.v_inv = IntMatrix::identity(m.cols);
  IntMatrix& d = s.d;
  std::size_t lim = std::min(m.rows, m.cols);
  std::size_t t = 0;
  for (; t < lim; ++t) {
    bool found_any = true;
    while (true) {
      std::size_t pi = 0, pj = 0;
      bool found = false;
      Int best;
      for (std::size_t i = t; i < d.rows; ++i)
        for (std::size_t j = t; j < d.cols; ++j) {
          if (d(i, j) == 0) continue;
          Int av = abs(d(i, j));
          if (!found || av < best) {
            found = true;
            best = av;
            pi = i;
            pj = j;
          }
        }
      if (!found) {
        found_any = false;
        break;
      }
      swap_rows(d, t, pi);
      swap_rows(s.u, t, pi);
      swap_cols(d, t, pj);
      swap_cols(s.v, t, pj);
      swap_rows(s.v_inv, t, pj);
      bool clean = true;
      for (std::size_t i = t + 1; i < d.rows; ++i) {
        if (d(i, t) == 0) continue;
        Int q = d(i, t) / d(t, t);
        add_row(d, i, t, -q);
        add_row(s.u, i, t, -q);
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < d.cols; ++j) {
        if (d(t, j) == 0) continue;
        Int q = d(t, j) / d(t, t);
        add_col(d, j, t, -q);
        add_col(s.v, j, t, -q);
        add_row(s.v_inv, t, j, q);
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      bool fixed = false;
      for (std::size_t i = t + 1; i < d.rows && !fixed; ++i)
        for (std::size_t j = t + 1; j < d.cols; ++j)
          if (d(i, j) % d(t, t) != 0) {
            add_row(d, t, i, Int(1));
            add_row(s.u, t, i, Int(1));
            fixed = true;
            break;
          }
      if (fixed) continue;
      break;
    }
    if (!found_any) break;
    if (d(t, t) < 0) {
      for (std::size_t j = 0; j < d.cols; ++j) d(t, j) = -d(t, j);
      for (std::size_t j = 0; j < s.u.cols; ++j) s.u(t, j) = -s.u(t, j);
    }
  }
  s.rank = t;
  s.diag.resize(lim);
  for (std::size_t i = 0; i < lim; ++i) s.diag[i] = d(i, i);
  return s;
}

std::vector<Int> invariant_factors(const IntMatrix& m) { return smith_normal_form(m).diag; }

IntMatrix hnf_rows(const IntMatrix& m) {
  IntMatrix a = m;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols && r < a.rows; ++c) {
    while (true) {
      std::size_t best = a.rows;
      for (std::size_t k = r; k < a.rows; ++k)
        if (a(k, c) != 0 && (best == a.rows || abs(a(k, c)) < abs(a(best, c)))) best = k;
      if (best == a.rows) break;
      swap_rows(a, r, best);
      bool done = true;
      for (std::size_t i = r + 1; i < a.rows; ++i) {
        if (a(i, c) == 0) continue;
        Int q = floor_div(a(i, c), a(r, c));
        add_row(a, i, r, -q);
        if (a(i, c) != 0) done = false;
      }
      if (done) break;
    }
    if (a(r, c) == 0) continue;
    if (a(r, c) < 0)
      for (std::size_t j = 0; j < a.cols; ++j) a(r, j) = -a(r, j);
    for (std::size_t i = 0; i < r; ++i) {
      Int q = floor_div(a(i, c), a(r, c));
      if (q != 0) add_row(a, i, r, -q);
    }
    ++r;
  }
  IntMatrix out(r, a.cols);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < a.cols; ++j) out(i, j) = a(i, j);
  return out;
}

IntMatrix saturate(const IntMatrix& basis) {
  if (basis.rows == 0) return IntMatrix(0, basis.cols);
  Smith s = smith_normal_form(basis);
  IntMatrix out(s.rank, basis.cols);
  for (std::size_t i = 0; i < s.rank; ++i)
    for (std::size_t j = 0; j < basis.cols; ++j) out(i, j) = s.v_inv(i, j);
  return hnf_rows(out);
}

IntMatrix integer_left_kernel(const IntMatrix& m) {
  if (m.rows == 0) return IntMatrix(0, 0);
  Smith s = smith_normal_form(m);
  IntMatrix out(m.rows - s.rank, m.rows);
  for (std::size_t i = s.rank; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.rows; ++j) out(i - s.rank, j) = s.u(i, j);
  return hnf_rows(out);
}

IntMatrix integer_right_kernel(const IntMatrix& m) {
  if (m.cols == 0) return IntMatrix(0, 0);
  if (m.rows == 0) return IntMatrix::identity(m.cols);
  return integer_left_kernel(transpose(m));
}

IntMatrix lattice_intersection(const IntMatrix& l1, const IntMatrix& l2) {
  ensure(l1.cols == l2.cols, "lattice_intersection: dimension mismatch");
  std::size_t n = l1.cols;
  if (l1.rows == 0 || l2.rows == 0) return IntMatrix(0, n);
  IntMatrix st(l1.rows + l2.rows, n);
  for (std::size_t i = 0; i < l1.rows; ++i)
    for (std::size_t j = 0; j < n; ++j) st(i, j) = l1(i, j);
  for (std::size_t i = 0; i < l2.rows; ++i)
    for (std::size_t j = 0; j < n; ++j) st(l1.rows + i, j) = -l2(i, j);
  IntMatrix k = integer_left_kernel(st);
  IntMatrix a(k.rows, l1.rows);
  for (std::size_t i = 0; i < k.rows; ++i)
    for (std::size_t j = 0; j < l1.rows; ++j) a(i, j) = k(i, j);
  return hnf_rows(a * l1);
}

QMatrix coordinates(const QMatrix& x, const QMatrix& b) {
  if (x.rows == 0) return QMatrix(0, b.rows);
  QMatrix sol = solve(transpose(b), transpose(x));
  QMatrix chk = transpose(sol) * b;
  ensure(chk == x, "coordinates: vector outside the span");
  return transpose(sol);
}

bool lattice_contains(const IntMatrix& b, const IntMatrix& sub) {
  if (sub.rows == 0) return true;
  QMatrix bq = to_q(b), sq = to_q(sub);
  QMatrix sol = solve(transpose(bq), transpose(sq));
  if (transpose(sol) * bq != sq) return false;
  return is_integral(sol);
}

namespace {
IntMatrix scale_to_int(const QMatrix& m, const Int& d) {
  IntMatrix r(m.rows, m.cols);
  for (std::size_t i = 0; i < m.a.size(); ++i) {
    Rat v = m.a[i] * d;
    ensure(v.get_den() == 1, "scale_to_int: denominator not cleared");
    r.a[i] = v.get_num();
  }
  return r;
}
QMatrix unscale(const IntMatrix& m, const Int& d) {
  QMatrix r(m.rows, m.cols);
  for (std::size_t i = 0; i < m.a.size(); ++i) {
    r.a[i] = Rat(m.a[i], d);
    r.a[i].canonicalize();
  }
  return r;
}
}  // namespace

QMatrix rational_lattice_intersection(const QMatrix& l1, const QMatrix& l2) {
  Int d = lcm(common_denominator(l1), common_denominator(l2));
  return unscale(lattice_intersection(scale_to_int(l1, d), scale_to_int(l2, d)), d);
}

QMatrix rational_hnf(const QMatrix& gens) {
  Int d = common_denominator(gens);
  return unscale(hnf_rows(scale_to_int(gens, d)), d);
}

}  // namespace lr
