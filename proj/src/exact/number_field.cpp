#include "lr/exact/number_field.hpp"

#include <sstream>

#include "lr/errors.hpp"

namespace lr {

NumberField::NumberField(ZPoly minpoly) : g(std::move(minpoly)) {
  trim(g);
  ensure(lr::degree(g) >= 1 && g.back() == 1, "NumberField: minimal polynomial must be monic");
}

NumberField::Elem NumberField::normalize(const Elem& a) const {
  QPoly q, r;
  qdivmod(a, to_qpoly(g), q, r);
  r.resize(degree(), Rat(0));
  return r;
}

NumberField::Elem NumberField::from_rat(const Rat& c) const {
  Elem e(degree(), Rat(0));
  e[0] = c;
  return e;
}

NumberField::Elem NumberField::gen() const { return normalize(QPoly{Rat(0), Rat(1)}); }

NumberField::Elem NumberField::add(const Elem& a, const Elem& b) const {
  Elem r(degree(), Rat(0));
  for (std::size_t i = 0; i < degree(); ++i) r[i] = a[i] + b[i];
  return r;
}

NumberField::Elem NumberField::sub(const Elem& a, const Elem& b) const {
  Elem r(degree(), Rat(0));
  for (std::size_t i = 0; i < degree(); ++i) r[i] = a[i] - b[i];
  return r;
}

NumberField::Elem NumberField::mul(const Elem& a, const Elem& b) const {
  QPoly x = a, y = b;
  trim(x);
  trim(y);
  return normalize(qmul(x, y));
}

NumberField::Elem NumberField::inv(const Elem& a) const {
  ensure(!is_zero(a), "NumberField::inv: zero");
  // Extended Euclid over Q on (a, g).
  QPoly r0 = to_qpoly(g), r1 = a, s0{}, s1{Rat(1)};
  trim(r1);
  while (lr::degree(r1) > 0) {
    QPoly q, r;
    qdivmod(r0, r1, q, r);
    QPoly s2 = qsub(s0, qmul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  ensure(!r1.empty(), "NumberField::inv: minimal polynomial not irreducible");
  Rat c = r1[0];
  for (auto& x : s1) x /= c;
  return normalize(s1);
}

bool NumberField::is_zero(const Elem& a) const {
  for (const auto& c : a)
    if (c != 0) return false;
  return true;
}

bool NumberField::is_rational(const Elem& a) const {
  for (std::size_t i = 1; i < a.size(); ++i)
    if (a[i] != 0) return false;
  return true;
}

Rat NumberField::to_rat(const Elem& a) const {
  ensure(is_rational(a), "NumberField::to_rat: element not rational");
  return a.empty() ? Rat(0) : a[0];
}

std::string NumberField::to_string(const Elem& a) const {
  if (is_rational(a)) return (a.empty() ? Rat(0) : a[0]).get_str();
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] == 0) continue;
    if (!first) os << " + ";
    os << "(" << a[i].get_str() << ")";
    if (i > 0) os << "*a";
    if (i > 1) os << "^" << i;
    first = false;
  }
  return first ? "0" : os.str();
}

namespace {

Int power(std::uint32_t ell, unsigned n) {
  Int r;
  mpz_ui_pow_ui(r.get_mpz_t(), ell, n);
  return r;
}

ZPoly lift(const fp::Poly& f) {
  ZPoly r(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) r[i] = f[i];
  return r;
}

void relift(const NumberField& K, Place& P) {
  if (P.exact) return;
  fp::Poly a{1};
  for (unsigned i = 0; i < P.s; ++i) a = fp::mul(a, P.phi, P.ell);
  ZPoly G = lift(a), H = lift(P.cofactor);
  hensel_lift(K.g, G, H, P.ell, P.precision);
  P.local = G;
}

// Coefficients of G(u + r) for the root r of a linear phi.
ZPoly shift(const ZPoly& G, const Int& r) {
  ZPoly out(G.size(), Int(0));
  // Horner in u: out = out*(u + r) + c
  for (std::size_t i = G.size(); i-- > 0;) {
    ZPoly next(G.size(), Int(0));
    for (std::size_t j = 0; j + 1 < G.size(); ++j) {
      next[j + 1] += out[j];
      next[j] += out[j] * r;
    }
    next[0] += G[i];
    out = std::move(next);
  }
  return out;
}

// Single-segment Newton polygon from (0, v0) to (s, 0) with gcd(v0, s) = 1
// certifies a totally ramified irreducible local factor.
void certify_ramified(const NumberField& K, Place& P) {
  if (fp::degree(P.phi) != 1)
    throw HypothesisError("repeated residue factor of degree > 1 at ell = " + std::to_string(P.ell));
  Int mod = power(P.ell, P.precision);
  Int r = Int((P.ell - P.phi[0]) % P.ell);
  ZPoly sh = shift(P.local, r);
  for (auto& c : sh) {
    c %= mod;
    if (c < 0) c += mod;
  }
  long s = static_cast<long>(P.s);
  if (sh[0] == 0) throw HypothesisError("local factor has a root at the residue; precision exhausted");
  long v0 = v_ell_finite(sh[0], P.ell);
  Int gg = gcd(Int(v0), Int(s));
  bool ok = gg == 1;
  for (long i = 1; i < s && ok; ++i) {
    // Require (s - i) * v0 / s < v(c_i), i.e. strictly above the segment.
    if (sh[static_cast<std::size_t>(i)] == 0) continue;
    long vi = v_ell_finite(sh[static_cast<std::size_t>(i)], P.ell);
    if (vi * s < (s - i) * v0) ok = false;
  }
  (void)K;
  if (!ok)
    throw HypothesisError("ell = " + std::to_string(P.ell) +
                          " has a repeated residue factor without a certified single prime");
}

}  // namespace

std::vector<Place> places_above(const NumberField& K, std::uint32_t ell) {
  fp::Poly gb = fp::from_z(K.g, ell);
  std::vector<Place> out;
  for (const auto& f : fp::factor(gb, ell)) {
    Place P;
    P.ell = ell;
    P.phi = f.f;
    P.s = f.mult;
    fp::Poly a{1};
    for (unsigned i = 0; i < P.s; ++i) a = fp::mul(a, P.phi, ell);
    fp::Poly q, r;
    fp::divmod(fp::monic(gb, ell), a, ell, q, r);
    P.cofactor = q;
    P.precision = 16;
    if (fp::degree(q) == 0) {
      P.exact = true;
      P.local = K.g;
    } else {
      relift(K, P);
    }
    if (P.s > 1) certify_ramified(K, P);
    out.push_back(std::move(P));
  }
  return out;
}

namespace {

// Valuation of det(m) over Z/ell^N by local pivoting; false if precision ran out.
bool local_det_valuation(IntMatrix m, std::uint32_t ell, unsigned N, long& out) {
  Int mod = power(ell, N);
  for (auto& x : m.a) {
    x %= mod;
    if (x < 0) x += mod;
  }
  std::size_t n = m.rows;
  long total = 0;
  for (std::size_t t = 0; t < n; ++t) {
    long best = -1;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = t; i < n; ++i)
      for (std::size_t j = t; j < n; ++j) {
        if (m(i, j) == 0) continue;
        long v = v_ell_finite(m(i, j), ell);
        if (best < 0 || v < best) {
          best = v;
          bi = i;
          bj = j;
        }
      }
    if (best < 0) return false;
    for (std::size_t j = 0; j < n; ++j) std::swap(m(t, j), m(bi, j));
    for (std::size_t i = 0; i < n; ++i) std::swap(m(i, t), m(i, bj));
    total += best;
    Int pv = power(ell, static_cast<unsigned>(best));
    Int unit = m(t, t) / pv, uinv;
    mpz_invert(uinv.get_mpz_t(), unit.get_mpz_t(), mod.get_mpz_t());
    for (std::size_t i = t + 1; i < n; ++i) {
      if (m(i, t) == 0) continue;
      Int f = (m(i, t) / pv) * uinv % mod;
      for (std::size_t j = t; j < n; ++j) {
        m(i, j) = (m(i, j) - f * m(t, j)) % mod;
        if (m(i, j) < 0) m(i, j) += mod;
      }
    }
  }
  out = total;
  return true;
}

}  // namespace

Valuation place_valuation(const NumberField& K, Place& P, const NumberField::Elem& x) {
  if (K.is_zero(x)) return Valuation::inf();
  Int d = 1;
  for (const auto& c : x) d = lcm(d, c.get_den());
  ZPoly a(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) a[i] = Rat(x[i] * d).get_num();
  trim(a);
  long k = fp::degree(P.phi);
  std::size_t n = P.local.size() - 1;
  long vd = v_ell_finite(d, P.ell) * static_cast<long>(P.s);
  for (int attempt = 0; attempt < 8; ++attempt) {
    // Multiplication by a on Z/ell^N[t]/(G), rows t^i * a mod G.
    IntMatrix m(n, n);
    QPoly q, r;
    for (std::size_t i = 0; i < n; ++i) {
      ZPoly shifted(i, Int(0));
      shifted.insert(shifted.end(), a.begin(), a.end());
      qdivmod(to_qpoly(shifted), to_qpoly(P.local), q, r);
      for (std::size_t j = 0; j < r.size(); ++j) {
        ensure(r[j].get_den() == 1, "place_valuation: local factor not monic");
        m(i, j) = r[j].get_num();
      }
    }
    long v = 0;
    if (local_det_valuation(m, P.ell, P.precision, v)) {
      if (v % k != 0) throw InvariantError("place_valuation: norm valuation not divisible by residue degree");
      return Valuation::of(v / k - vd);
    }
    P.precision *= 2;
    relift(K, P);
  }
  throw InvariantError("place_valuation: precision limit reached");
}

GF::Elem place_residue(const NumberField& K, const Place& P, const GF& F, const GF::Elem& root,
                       const NumberField::Elem& x) {
  (void)K;
  Int d = 1;
  for (const auto& c : x) d = lcm(d, c.get_den());
  if (d % P.ell == 0) throw HypothesisError("place_residue: denominator divisible by ell");
  GF::Elem acc = F.zero();
  for (std::size_t i = x.size(); i-- > 0;) {
    Int ci = Rat(x[i] * d).get_num();
    acc = F.add(F.mul(acc, root), F.from_int(ci));
  }
  return F.mul(acc, F.inv(F.from_int(d)));
}

}  // namespace lr
