#include "lr/exact/poly.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "lr/errors.hpp"
#include "lr/exact/fp.hpp"
#include "lr/exact/linalg.hpp"

namespace lr {

void trim(ZPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}
void trim(QPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}
long degree(const ZPoly& f) { return static_cast<long>(f.size()) - 1; }
long degree(const QPoly& f) { return static_cast<long>(f.size()) - 1; }

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1, Int(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

Int content(const ZPoly& f) {
  Int g = 0;
  for (const auto& c : f) g = gcd(g, c);
  return g;
}

ZPoly primitive_part(const ZPoly& f) {
  ZPoly r = f;
  trim(r);
  if (r.empty()) return r;
  Int c = content(r);
  if (r.back() < 0) c = -c;
  for (auto& x : r) x /= c;
  return r;
}

QPoly to_qpoly(const ZPoly& f) {
  QPoly r(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) r[i] = f[i];
  return r;
}

ZPoly primitive_from_q(const QPoly& f) {
  Int d = 1;
  for (const auto& c : f) d = lcm(d, c.get_den());
  ZPoly r(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) r[i] = Rat(f[i] * d).get_num();
  return primitive_part(r);
}

QPoly qmul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly r(a.size() + b.size() - 1, Rat(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

QPoly qsub(const QPoly& a, const QPoly& b) {
  QPoly r(std::max(a.size(), b.size()), Rat(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

void qdivmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r) {
  ensure(!b.empty(), "qdivmod: division by zero");
  r = a;
  trim(r);
  long db = degree(b);
  q.assign(degree(r) >= db ? static_cast<std::size_t>(degree(r) - db + 1) : 0, Rat(0));
  while (!r.empty() && degree(r) >= db) {
    long s = degree(r) - db;
    Rat c = r.back() / b.back();
    q[static_cast<std::size_t>(s)] = c;
    for (long i = 0; i <= db; ++i) r[static_cast<std::size_t>(i + s)] -= c * b[static_cast<std::size_t>(i)];
    trim(r);
  }
  trim(q);
}

QPoly qderivative(const QPoly& f) {
  if (f.size() <= 1) return {};
  QPoly d(f.size() - 1);
  for (std::size_t i = 1; i < f.size(); ++i) d[i - 1] = f[i] * Rat(static_cast<long>(i));
  trim(d);
  return d;
}

namespace {
QPoly qmonic(QPoly f) {
  trim(f);
  if (f.empty()) return f;
  Rat lc = f.back();
  for (auto& c : f) c /= lc;
  return f;
}
}  // namespace

QPoly qgcd(QPoly a, QPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    QPoly q, r;
    qdivmod(a, b, q, r);
    a = std::move(b);
    b = qmonic(std::move(r));
  }
  return qmonic(a);
}

ZPoly char_poly(const IntMatrix& m) {
  ensure(m.rows == m.cols, "char_poly: matrix not square");
  std::size_t n = m.rows;
  if (n == 0) return {Int(1)};
  // Berkowitz: coefficients kept high to low during the recursion.
  std::vector<Int> vect{Int(1), -m(0, 0)};
  for (std::size_t r = 1; r < n; ++r) {
    std::vector<Int> t(r + 2);
    t[0] = 1;
    t[1] = -m(r, r);
    std::vector<Int> v(r);
    for (std::size_t i = 0; i < r; ++i) v[i] = m(i, r);
    for (std::size_t k = 2; k < r + 2; ++k) {
      Int s = 0;
      for (std::size_t i = 0; i < r; ++i) s += m(r, i) * v[i];
      t[k] = -s;
      if (k + 1 < r + 2) {
        std::vector<Int> w(r, Int(0));
        for (std::size_t i = 0; i < r; ++i)
          for (std::size_t j = 0; j < r; ++j) w[i] += m(i, j) * v[j];
        v = std::move(w);
      }
    }
    std::vector<Int> nv(r + 2, Int(0));
    for (std::size_t i = 0; i < r + 2; ++i)
      for (std::size_t j = 0; j <= std::min(i, r); ++j) nv[i] += t[i - j] * vect[j];
    vect = std::move(nv);
  }
  ZPoly out(vect.rbegin(), vect.rend());
  trim(out);
  return out;
}

IntMatrix eval_poly(const ZPoly& f, const IntMatrix& m) {
  IntMatrix r(m.rows, m.cols);
  for (std::size_t i = f.size(); i-- > 0;) {
    r = r * m;
    for (std::size_t d = 0; d < m.rows; ++d) r(d, d) += f[i];
  }
  return r;
}

ZPoly minimal_polynomial(const IntMatrix& m) {
  ensure(m.rows == m.cols, "minimal_polynomial: matrix not square");
  std::size_t n = m.rows;
  // First linear dependency among I, m, m^2, ... as flattened rows.
  std::vector<IntMatrix> powers{IntMatrix::identity(n)};
  for (std::size_t d = 1; d <= n; ++d) {
    powers.push_back(powers.back() * m);
    QMatrix rows(d + 1, n * n);
    for (std::size_t i = 0; i <= d; ++i)
      for (std::size_t j = 0; j < n * n; ++j) rows(i, j) = powers[i].a[j];
    QMatrix dep = left_kernel(rows);
    if (dep.rows == 0) continue;
    QPoly f(d + 1);
    for (std::size_t i = 0; i <= d; ++i) f[i] = dep(0, i) / dep(0, d);
    ZPoly out(d + 1);
    for (std::size_t i = 0; i <= d; ++i) {
      ensure(f[i].get_den() == 1, "minimal_polynomial: non-integral coefficient");
      out[i] = f[i].get_num();
    }
    return out;
  }
  return char_poly(m);
}

Int eval_poly(const ZPoly& f, const Int& x) {
  Int r = 0;
  for (std::size_t i = f.size(); i-- > 0;) r = r * x + f[i];
  return r;
}

// ---- factoring over Z ------------------------------------------------------

namespace {

// Polynomial arithmetic modulo m with symmetric representatives.
Int smod(const Int& a, const Int& m) {
  Int r = a % m;
  if (r < 0) r += m;
  if (2 * r > m) r -= m;
  return r;
}

ZPoly reduce_poly(const ZPoly& f, const Int& m) {
  ZPoly r(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) r[i] = smod(f[i], m);
  trim(r);
  return r;
}

ZPoly lift_fp(const fp::Poly& f) {
  ZPoly r(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) r[i] = f[i];
  return r;
}

// Exact division over Z; false if b does not divide a.
bool zdivides(const ZPoly& a, const ZPoly& b, ZPoly& quot) {
  QPoly q, r;
  qdivmod(to_qpoly(a), to_qpoly(b), q, r);
  if (!r.empty()) return false;
  quot.assign(q.size(), Int(0));
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (q[i].get_den() != 1) return false;
    quot[i] = q[i].get_num();
  }
  return true;
}

}  // namespace

void hensel_lift(const ZPoly& F, ZPoly& g, ZPoly& h, std::uint32_t p, unsigned a) {
  fp::Poly gp = fp::from_z(g, p), hp = fp::from_z(h, p), s, t;
  fp::Poly one = fp::ext_gcd(gp, hp, p, s, t);
  ensure(one == fp::Poly{1}, "hensel: factors not coprime");
  Int pk = p;
  for (unsigned k = 1; k < a; ++k) {
    Int pk1 = pk * p;
    ZPoly gh = reduce_poly(zmul(g, h), pk1);
    ZPoly e = reduce_poly(F, pk1);
    std::size_t n = std::max(e.size(), gh.size());
    e.resize(n, Int(0));
    for (std::size_t i = 0; i < gh.size(); ++i) e[i] -= gh[i];
    for (auto& c : e) {
      ensure(c % pk == 0, "hensel: lifting invariant broken");
      c /= pk;
    }
    trim(e);
    fp::Poly ep = fp::from_z(e, p);
    fp::Poly dg = fp::mod(fp::mul(t, ep, p), gp, p);
    fp::Poly dh = fp::mod(fp::mul(s, ep, p), hp, p);
    ZPoly dgz = lift_fp(dg), dhz = lift_fp(dh);
    for (std::size_t i = 0; i < dgz.size(); ++i) g[i] += pk * dgz[i];
    for (std::size_t i = 0; i < dhz.size(); ++i) h[i] += pk * dhz[i];
    g = reduce_poly(g, pk1);
    h = reduce_poly(h, pk1);
    pk = pk1;
  }
}

namespace {

// Squarefree primitive f with positive leading coefficient.
std::vector<ZPoly> factor_squarefree(const ZPoly& f) {
  long n = degree(f);
  if (n <= 1) return {f};
  Int lc = f.back();
  std::uint32_t p = 3;
  for (;; p += 2) {
    if (!fp::is_prime(p) || lc % p == 0) continue;
    fp::Poly fb = fp::from_z(f, p);
    if (fp::degree(fp::gcd(fb, fp::derivative(fb, p), p)) == 0) break;
  }
  fp::Poly fm = fp::monic(fp::from_z(f, p), p);
  std::vector<fp::Poly> local = fp::berlekamp(fm, p);
  std::sort(local.begin(), local.end());
  if (local.size() == 1) return {f};

  // Coefficient bound for any factor: 2^n * ||f||_2 * |lc|.
  Int norm2 = 0;
  for (const auto& c : f) norm2 += c * c;
  Int bound = (isqrt(norm2) + 1) * lc;
  bound <<= static_cast<unsigned long>(n);
  unsigned a = 1;
  Int pa = p;
  while (pa <= 2 * bound) {
    pa *= p;
    ++a;
  }
  // Monic target F = lc^{-1} f mod p^a.
  Int lcinv;
  mpz_invert(lcinv.get_mpz_t(), lc.get_mpz_t(), pa.get_mpz_t());
  ZPoly F(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) F[i] = smod(f[i] * lcinv, pa);

  std::vector<ZPoly> lifted;
  ZPoly rest = F;
  for (std::size_t i = 0; i + 1 < local.size(); ++i) {
    ZPoly g = lift_fp(local[i]);
    fp::Poly hp = local[i + 1];
    for (std::size_t j = i + 2; j < local.size(); ++j) hp = fp::mul(hp, local[j], p);
    ZPoly h = lift_fp(hp);
    hensel_lift(rest, g, h, p, a);
    lifted.push_back(g);
    rest = h;
  }
  lifted.push_back(rest);

  std::vector<ZPoly> out;
  ZPoly cur = f;
  std::vector<ZPoly> pool = lifted;
  std::size_t s = 1;
  while (2 * s <= pool.size()) {
    bool found = false;
    std::vector<std::size_t> idx(s);
    for (std::size_t i = 0; i < s; ++i) idx[i] = i;
    while (true) {
      ZPoly g{cur.back()};
      for (auto i : idx) g = reduce_poly(zmul(g, pool[i]), pa);
      g = primitive_part(g);
      ZPoly quot;
      if (zdivides(cur, g, quot)) {
        out.push_back(g);
        cur = primitive_part(quot);
        std::vector<ZPoly> np;
        for (std::size_t i = 0, k = 0; i < pool.size(); ++i) {
          if (k < s && idx[k] == i) {
            ++k;
            continue;
          }
          np.push_back(pool[i]);
        }
        pool = std::move(np);
        found = true;
        break;
      }
      // next combination
      std::size_t k = s;
      while (k > 0 && idx[k - 1] == pool.size() - s + k - 1) --k;
      if (k == 0) break;
      ++idx[k - 1];
      for (std::size_t j = k; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!found) ++s;
  }
  if (degree(cur) > 0) out.push_back(primitive_part(cur));
  return out;
}

}  // namespace

std::vector<ZFactor> factor_z(const ZPoly& f0) {
  ZPoly f = f0;
  trim(f);
  ensure(!f.empty(), "factor_z: zero polynomial");
  std::vector<ZFactor> out;
  if (degree(f) == 0) return out;
  // Yun squarefree decomposition over Q.
  QPoly fq = to_qpoly(primitive_part(f));
  QPoly d = qderivative(fq);
  QPoly a0 = qgcd(fq, d);
  QPoly b, c, r;
  qdivmod(fq, a0, b, r);
  qdivmod(d, a0, c, r);
  QPoly dd = qsub(c, qderivative(b));
  unsigned i = 1;
  while (degree(b) > 0) {
    QPoly a = qgcd(b, dd);
    if (degree(a) > 0)
      for (auto& g : factor_squarefree(primitive_from_q(a))) out.push_back({g, i});
    QPoly nb;
    qdivmod(b, a, nb, r);
    b = nb;
    QPoly nc;
    qdivmod(dd, a, nc, r);
    dd = qsub(nc, qderivative(b));
    ++i;
  }
  std::sort(out.begin(), out.end(), [](const ZFactor& x, const ZFactor& y) {
    if (x.f.size() != y.f.size()) return x.f.size() < y.f.size();
    return x.f < y.f;
  });
  return out;
}

std::string poly_to_string(const ZPoly& f) {
  if (f.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = f.size(); i-- > 0;) {
    if (f[i] == 0) continue;
    Int c = f[i];
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    Int ac = abs(c);
    if (ac != 1 || i == 0) os << ac.get_str();
    if (i > 0) os << "x";
    if (i > 1) os << "^" << i;
    first = false;
  }
  return os.str();
}

}  // namespace lr
