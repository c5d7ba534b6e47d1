#include "lr/exact/matrix.hpp"

#include "lr/errors.hpp"

namespace lr {

Int gcd(const Int& a, const Int& b) {
  Int r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Int lcm(const Int& a, const Int& b) {
  Int r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Int floor_div(const Int& a, const Int& b) {
  Int r;
  mpz_fdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Int isqrt(const Int& a) {
  ensure(a >= 0, "isqrt of negative value");
  Int r;
  mpz_sqrt(r.get_mpz_t(), a.get_mpz_t());
  return r;
}

QMatrix to_q(const IntMatrix& m) {
  QMatrix r(m.rows, m.cols);
  for (std::size_t i = 0; i < m.a.size(); ++i) r.a[i] = Rat(m.a[i]);
  return r;
}

bool is_integral(const QMatrix& m) {
  for (const auto& x : m.a)
    if (x.get_den() != 1) return false;
  return true;
}

IntMatrix to_int(const QMatrix& m) {
  IntMatrix r(m.rows, m.cols);
  for (std::size_t i = 0; i < m.a.size(); ++i) {
    ensure(m.a[i].get_den() == 1, "to_int: non-integral entry");
    r.a[i] = m.a[i].get_num();
  }
  return r;
}

Int common_denominator(const QMatrix& m) {
  Int d = 1;
  for (const auto& x : m.a) d = lcm(d, x.get_den());
  return d;
}

RatMatrix::RatMatrix(const IntMatrix& n, const Int& d) : num(n), den(d) {
  ensure(d != 0, "RatMatrix: zero denominator");
  normalize();
}

void RatMatrix::normalize() {
  if (den < 0) {
    den = -den;
    for (auto& x : num.a) x = -x;
  }
  Int g = den;
  for (const auto& x : num.a) {
    if (g == 1) break;
    g = gcd(g, x);
  }
  if (g != 1) {
    den /= g;
    for (auto& x : num.a) x /= g;
  }
}

RatMatrix RatMatrix::from_q(const QMatrix& m) {
  Int d = common_denominator(m);
  IntMatrix n(m.rows, m.cols);
  for (std::size_t i = 0; i < m.a.size(); ++i) {
    Rat v = m.a[i] * d;
    n.a[i] = v.get_num();
  }
  return RatMatrix(n, d);
}

QMatrix RatMatrix::to_q() const {
  QMatrix r(num.rows, num.cols);
  for (std::size_t i = 0; i < num.a.size(); ++i) {
    r.a[i] = Rat(num.a[i], den);
    r.a[i].canonicalize();
  }
  return r;
}

Rat RatMatrix::at(std::size_t i, std::size_t j) const {
  Rat r(num(i, j), den);
  r.canonicalize();
  return r;
}

std::string to_string(const Int& x) { return x.get_str(); }
std::string to_string(const Rat& x) { return x.get_str(); }

}  // namespace lr
