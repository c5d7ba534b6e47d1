#include "lr/exact/gf.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "lr/errors.hpp"
#include "lr/exact/modmat.hpp"

namespace lr {

fp::Poly least_irreducible(std::uint32_t p, unsigned k) {
  ensure(k >= 1, "least_irreducible: degree must be positive");
  ensure(fp::is_prime(p), "least_irreducible: characteristic not prime");
  fp::Poly f(k + 1, 0);
  f[k] = 1;
  // Count through (c_{k-1}, ..., c_0) as a base-p number.
  while (true) {
    if (fp::is_irreducible(f, p)) return f;
    std::size_t i = 0;
    while (i < k) {
      if (++f[i] < p) break;
      f[i] = 0;
      ++i;
    }
    ensure(i < k, "least_irreducible: search exhausted");
  }
}

GF GF::canonical(std::uint32_t p, unsigned k) { return GF(p, least_irreducible(p, k)); }

GF::GF(std::uint32_t p, fp::Poly modulus) : p_(p), mod_(std::move(modulus)) {
  fp::trim(mod_);
  ensure(fp::degree(mod_) >= 1, "GF: modulus degree must be positive");
  mod_ = fp::monic(mod_, p_);
  k_ = static_cast<unsigned>(fp::degree(mod_));
  ensure(fp::is_irreducible(mod_, p_), "GF: modulus not irreducible");
}

Int GF::order() const {
  Int q;
  mpz_ui_pow_ui(q.get_mpz_t(), p_, k_);
  return q;
}

GF::Elem GF::from_poly(fp::Poly f) const {
  f = fp::mod(f, mod_, p_);
  Elem e(k_, 0);
  for (std::size_t i = 0; i < f.size(); ++i) e[i] = f[i];
  return e;
}

namespace {
fp::Poly as_poly(const GF::Elem& a) {
  fp::Poly f(a.begin(), a.end());
  fp::trim(f);
  return f;
}
}  // namespace

GF::Elem GF::from_u(std::uint32_t c) const {
  Elem e(k_, 0);
  e[0] = c % p_;
  return e;
}

GF::Elem GF::from_int(const Int& c) const { return from_u(fp::reduce(c, p_)); }

GF::Elem GF::gen() const { return from_poly(fp::Poly{0, 1}); }

GF::Elem GF::add(const Elem& a, const Elem& b) const {
  Elem r(k_);
  for (unsigned i = 0; i < k_; ++i) r[i] = (a[i] + b[i]) % p_;
  return r;
}

GF::Elem GF::sub(const Elem& a, const Elem& b) const {
  Elem r(k_);
  for (unsigned i = 0; i < k_; ++i) r[i] = (a[i] + p_ - b[i]) % p_;
  return r;
}

GF::Elem GF::neg(const Elem& a) const { return sub(zero(), a); }

GF::Elem GF::mul(const Elem& a, const Elem& b) const {
  if (k_ == 1) return Elem{static_cast<std::uint32_t>(static_cast<std::uint64_t>(a[0]) * b[0] % p_)};
  return from_poly(fp::mul(as_poly(a), as_poly(b), p_));
}

GF::Elem GF::inv(const Elem& a) const {
  ensure(!is_zero(a), "GF::inv: zero has no inverse");
  if (k_ == 1) return Elem{fp::inv_mod(a[0], p_)};
  fp::Poly s, t;
  fp::Poly g = fp::ext_gcd(as_poly(a), mod_, p_, s, t);
  ensure(g == fp::Poly{1}, "GF::inv: modulus not irreducible");
  return from_poly(s);
}

GF::Elem GF::pow(const Elem& a, const Int& e) const {
  ensure(e >= 0, "GF::pow: negative exponent");
  Elem r = one();
  std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  if (e == 0) return r;
  for (std::size_t i = bits; i-- > 0;) {
    r = mul(r, r);
    if (mpz_tstbit(e.get_mpz_t(), i)) r = mul(r, a);
  }
  return r;
}

GF::Elem GF::frob(const Elem& a) const { return pow(a, Int(p_)); }

bool GF::is_zero(const Elem& a) const {
  for (auto c : a)
    if (c) return false;
  return true;
}

GF::Elem GF::eval(const fp::Poly& f, const Elem& a) const {
  Elem r = zero();
  for (std::size_t i = f.size(); i-- > 0;) r = add(mul(r, a), from_u(f[i]));
  return r;
}

bool GF::in_prime_field(const Elem& a) const {
  for (unsigned i = 1; i < k_; ++i)
    if (a[i]) return false;
  return true;
}

bool GF::less(const Elem& a, const Elem& b) {
  return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
}

std::string GF::to_string(const Elem& a) const {
  if (k_ == 1) return std::to_string(a[0]);
  std::ostringstream os;
  os << "[";
  for (unsigned i = 0; i < k_; ++i) os << (i ? "," : "") << a[i];
  os << "]";
  return os.str();
}

// ---- polynomials over GF, used only for root finding -----------------------

namespace {

using GPoly = std::vector<GF::Elem>;

void gtrim(const GF& F, GPoly& f) {
  while (!f.empty() && F.is_zero(f.back())) f.pop_back();
}

GPoly gmul(const GF& F, const GPoly& a, const GPoly& b) {
  if (a.empty() || b.empty()) return {};
  GPoly r(a.size() + b.size() - 1, F.zero());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  gtrim(F, r);
  return r;
}

void gdivmod(const GF& F, const GPoly& a, const GPoly& b, GPoly& q, GPoly& r) {
  r = a;
  gtrim(F, r);
  long db = static_cast<long>(b.size()) - 1;
  long dr = static_cast<long>(r.size()) - 1;
  q.assign(dr >= db ? static_cast<std::size_t>(dr - db + 1) : 0, F.zero());
  GF::Elem inv = F.inv(b.back());
  while (static_cast<long>(r.size()) - 1 >= db && !r.empty()) {
    std::size_t s = r.size() - b.size();
    GF::Elem c = F.mul(r.back(), inv);
    q[s] = c;
    for (std::size_t i = 0; i < b.size(); ++i) r[i + s] = F.sub(r[i + s], F.mul(c, b[i]));
    gtrim(F, r);
  }
  gtrim(F, q);
}

GPoly gmod(const GF& F, const GPoly& a, const GPoly& b) {
  GPoly q, r;
  gdivmod(F, a, b, q, r);
  return r;
}

GPoly gmonic(const GF& F, GPoly f) {
  gtrim(F, f);
  if (f.empty()) return f;
  GF::Elem inv = F.inv(f.back());
  for (auto& c : f) c = F.mul(c, inv);
  return f;
}

GPoly ggcd(const GF& F, GPoly a, GPoly b) {
  gtrim(F, a);
  gtrim(F, b);
  while (!b.empty()) {
    GPoly r = gmod(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return gmonic(F, a);
}

GPoly gpowmod(const GF& F, const GPoly& base, const Int& e, const GPoly& m) {
  GPoly r = gmod(F, GPoly{F.one()}, m);
  GPoly b = gmod(F, base, m);
  std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  if (e == 0) return r;
  for (std::size_t i = bits; i-- > 0;) {
    r = gmod(F, gmul(F, r, r), m);
    if (mpz_tstbit(e.get_mpz_t(), i)) r = gmod(F, gmul(F, r, b), m);
  }
  return r;
}

GF::Elem random_elem(const GF& F, std::mt19937_64& rng) {
  GF::Elem e(F.k());
  for (auto& c : e) c = static_cast<std::uint32_t>(rng() % F.p());
  return e;
}

// h monic, squarefree, split into linear factors over F.
void split_linear(const GF& F, const GPoly& h, std::mt19937_64& rng, std::vector<GF::Elem>& roots) {
  long d = static_cast<long>(h.size()) - 1;
  if (d <= 0) return;
  if (d == 1) {
    roots.push_back(F.neg(h[0]));
    return;
  }
  Int q = F.order();
  for (int attempt = 0; attempt < 10000; ++attempt) {
    GF::Elem a = random_elem(F, rng);
    GPoly g;
    if (F.p() == 2) {
      GPoly w = gmod(F, GPoly{F.zero(), a}, h);
      GPoly t = w;
      for (unsigned i = 1; i < F.k(); ++i) {
        w = gmod(F, gmul(F, w, w), h);
        t.resize(std::max(t.size(), w.size()), F.zero());
        for (std::size_t j = 0; j < w.size(); ++j) t[j] = F.add(t[j], w[j]);
        gtrim(F, t);
      }
      g = ggcd(F, h, t);
    } else {
      GPoly w = gpowmod(F, GPoly{a, F.one()}, (q - 1) / 2, h);
      if (w.empty()) w.push_back(F.zero());
      w[0] = F.sub(w[0], F.one());
      gtrim(F, w);
      g = ggcd(F, h, w);
    }
    long dg = static_cast<long>(g.size()) - 1;
    if (dg > 0 && dg < d) {
      GPoly other, r;
      gdivmod(F, h, g, other, r);
      split_linear(F, g, rng, roots);
      split_linear(F, gmonic(F, other), rng, roots);
      return;
    }
  }
  throw InvariantError("split_linear: no splitting found");
}

}  // namespace

std::vector<GF::Elem> roots_in(const GF& F, const fp::Poly& f0) {
  fp::Poly f = f0;
  fp::trim(f);
  ensure(!f.empty(), "roots_in: zero polynomial");
  if (fp::degree(f) == 0) return {};
  GPoly h(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) h[i] = F.from_u(f[i]);
  h = gmonic(F, h);
  // Keep only the product of distinct linear factors: gcd(h, x^q - x).
  GPoly xq = gpowmod(F, GPoly{F.zero(), F.one()}, F.order(), h);
  xq.resize(std::max<std::size_t>(xq.size(), 2), F.zero());
  xq[1] = F.sub(xq[1], F.one());
  gtrim(F, xq);
  GPoly lin = xq.empty() ? h : ggcd(F, h, xq);
  std::mt19937_64 rng(0x5eedULL);
  std::vector<GF::Elem> roots;
  split_linear(F, lin, rng, roots);
  std::sort(roots.begin(), roots.end(), GF::less);
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

GFMatrix gf_from_int(const GF& F, const IntMatrix& m) {
  GFMatrix r(F, m.rows, m.cols);
  for (std::size_t i = 0; i < m.a.size(); ++i) r.a[i] = F.from_int(m.a[i]);
  return r;
}

GFMatrix gf_mul(const GF& F, const GFMatrix& x, const GFMatrix& y) {
  ensure(x.cols == y.rows, "gf_mul: shape mismatch");
  GFMatrix r(F, x.rows, y.cols);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t k = 0; k < x.cols; ++k) {
      if (F.is_zero(x(i, k))) continue;
      for (std::size_t j = 0; j < y.cols; ++j) r(i, j) = F.add(r(i, j), F.mul(x(i, k), y(k, j)));
    }
  return r;
}

std::vector<std::size_t> gf_rref(const GF& F, GFMatrix& m) {
  std::vector<std::size_t> pivots;
  if (F.k() == 1) {
    ModMatrix mm(m.rows, m.cols, F.p());
    for (std::size_t i = 0; i < m.a.size(); ++i) mm.a[i] = m.a[i][0];
    pivots = mod_rref(mm);
    for (std::size_t i = 0; i < m.a.size(); ++i) m.a[i][0] = mm.a[i];
    return pivots;
  }
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
    std::size_t piv = m.rows;
    for (std::size_t i = r; i < m.rows; ++i)
      if (!F.is_zero(m(i, c))) {
        piv = i;
        break;
      }
    if (piv == m.rows) continue;
    if (piv != r)
      for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(piv, j), m(r, j));
    GF::Elem inv = F.inv(m(r, c));
    for (std::size_t j = c; j < m.cols; ++j) m(r, j) = F.mul(m(r, j), inv);
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (i == r || F.is_zero(m(i, c))) continue;
      GF::Elem f = m(i, c);
      for (std::size_t j = c; j < m.cols; ++j) m(i, j) = F.sub(m(i, j), F.mul(f, m(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

GFMatrix kernel_mod_ell(const GF& F, const GFMatrix& m) {
  GFMatrix r = m;
  auto piv = gf_rref(F, r);
  std::vector<bool> is_piv(m.cols, false);
  for (auto c : piv) is_piv[c] = true;
  GFMatrix k(F, m.cols - piv.size(), m.cols);
  std::size_t row = 0;
  for (std::size_t f = 0; f < m.cols; ++f) {
    if (is_piv[f]) continue;
    k(row, f) = F.one();
    for (std::size_t t = 0; t < piv.size(); ++t) k(row, piv[t]) = F.neg(r(t, f));
    ++row;
  }
  return k;
}

}  // namespace lr
