#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

namespace lr {

using Int = mpz_class;
using Rat = mpq_class;

Int gcd(const Int& a, const Int& b);
Int lcm(const Int& a, const Int& b);
// floor(a / b) for b != 0
Int floor_div(const Int& a, const Int& b);
// integer square root of a >= 0
Int isqrt(const Int& a);

// Dense row-major matrix over a ring T.
template <class T>
struct Mat {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<T> a;

  Mat() = default;
  Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, T(0)) {}

  T& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

  static Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  bool operator==(const Mat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
  bool operator!=(const Mat& o) const { return !(*this == o); }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(a.begin() + static_cast<long>(i * cols),
                          a.begin() + static_cast<long>((i + 1) * cols));
  }
  std::vector<T> col(std::size_t j) const {
    std::vector<T> v(rows);
    for (std::size_t i = 0; i < rows; ++i) v[i] = (*this)(i, j);
    return v;
  }
  bool is_zero() const {
    for (const auto& x : a)
      if (x != 0) return false;
    return true;
  }
};

template <class T>
Mat<T> operator*(const Mat<T>& x, const Mat<T>& y) {
  Mat<T> r(x.rows, y.cols);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t k = 0; k < x.cols; ++k) {
      const T& v = x(i, k);
      if (v == 0) continue;
      for (std::size_t j = 0; j < y.cols; ++j) r(i, j) += v * y(k, j);
    }
  return r;
}

template <class T>
Mat<T> operator+(const Mat<T>& x, const Mat<T>& y) {
  Mat<T> r = x;
  for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] += y.a[i];
  return r;
}

template <class T>
Mat<T> operator-(const Mat<T>& x, const Mat<T>& y) {
  Mat<T> r = x;
  for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] -= y.a[i];
  return r;
}

template <class T>
Mat<T> scaled(const Mat<T>& x, const T& s) {
  Mat<T> r = x;
  for (auto& v : r.a) v *= s;
  return r;
}

template <class T>
Mat<T> transpose(const Mat<T>& x) {
  Mat<T> r(x.cols, x.rows);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t j = 0; j < x.cols; ++j) r(j, i) = x(i, j);
  return r;
}

template <class T>
std::vector<T> mat_vec(const Mat<T>& m, const std::vector<T>& v) {
  std::vector<T> r(m.rows, T(0));
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) r[i] += m(i, j) * v[j];
  return r;
}

template <class T>
Mat<T> from_rows(const std::vector<std::vector<T>>& rows, std::size_t ncols) {
  Mat<T> m(rows.size(), ncols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < ncols; ++j) m(i, j) = rows[i][j];
  return m;
}

template <class T>
Mat<T> block_diag(const Mat<T>& x, const Mat<T>& y) {
  Mat<T> r(x.rows + y.rows, x.cols + y.cols);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t j = 0; j < x.cols; ++j) r(i, j) = x(i, j);
  for (std::size_t i = 0; i < y.rows; ++i)
    for (std::size_t j = 0; j < y.cols; ++j) r(x.rows + i, x.cols + j) = y(i, j);
  return r;
}

using IntMatrix = Mat<Int>;
using QMatrix = Mat<Rat>;

QMatrix to_q(const IntMatrix& m);
// Throws if some entry is not integral.
IntMatrix to_int(const QMatrix& m);
bool is_integral(const QMatrix& m);
// Least common multiple of the entry denominators.
Int common_denominator(const QMatrix& m);

// Rational matrix stored as integer numerator over a positive common
// denominator, kept in lowest terms.
struct RatMatrix {
  IntMatrix num;
  Int den = 1;

  RatMatrix() = default;
  explicit RatMatrix(const IntMatrix& n, const Int& d = 1);
  static RatMatrix from_q(const QMatrix& m);
  QMatrix to_q() const;
  Rat at(std::size_t i, std::size_t j) const;
  std::size_t rows() const { return num.rows; }
  std::size_t cols() const { return num.cols; }
  void normalize();
  bool operator==(const RatMatrix& o) const { return num == o.num && den == o.den; }
};

std::string to_string(const Int& x);
std::string to_string(const Rat& x);

}  // namespace lr
