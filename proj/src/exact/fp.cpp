#include "lr/exact/fp.hpp"

#include <algorithm>

#include "lr/errors.hpp"
#include "lr/exact/modmat.hpp"

namespace lr::fp {

u32 reduce(const Int& x, u32 p) {
  Int r;
  mpz_fdiv_r_ui(r.get_mpz_t(), x.get_mpz_t(), p);
  return static_cast<u32>(r.get_ui());
}

u32 pow_mod(u32 a, u64 e, u32 p) {
  u64 r = 1 % p, b = a % p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<u32>(r);
}

u32 inv_mod(u32 a, u32 p) {
  long long t = 0, nt = 1, r = p, nr = a % p;
  ensure(nr != 0, "inv_mod: zero has no inverse");
  while (nr) {
    long long q = r / nr;
    long long tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  ensure(r == 1, "inv_mod: not invertible");
  if (t < 0) t += p;
  return static_cast<u32>(t);
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

long degree(const Poly& f) { return static_cast<long>(f.size()) - 1; }

Poly add(const Poly& a, const Poly& b, u32 p) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = static_cast<u32>((r[i] + static_cast<u64>(b[i])) % p);
  trim(r);
  return r;
}

Poly sub(const Poly& a, const Poly& b, u32 p) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = static_cast<u32>((r[i] + static_cast<u64>(p - b[i])) % p);
  trim(r);
  return r;
}

Poly mul(const Poly& a, const Poly& b, u32 p) {
  if (a.empty() || b.empty()) return {};
  std::vector<u64> acc(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) acc[i + j] = (acc[i + j] + static_cast<u64>(a[i]) * b[j]) % p;
  }
  Poly r(acc.begin(), acc.end());
  trim(r);
  return r;
}

Poly scale(const Poly& a, u32 c, u32 p) {
  Poly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = static_cast<u32>(static_cast<u64>(a[i]) * c % p);
  trim(r);
  return r;
}

void divmod(const Poly& a, const Poly& b, u32 p, Poly& q, Poly& r) {
  ensure(!b.empty(), "fp::divmod: division by zero");
  r = a;
  trim(r);
  long db = degree(b);
  if (degree(r) < db) {
    q.clear();
    return;
  }
  q.assign(static_cast<std::size_t>(degree(r) - db + 1), 0);
  u32 inv = inv_mod(b.back(), p);
  while (degree(r) >= db) {
    long s = degree(r) - db;
    u32 c = static_cast<u32>(static_cast<u64>(r.back()) * inv % p);
    q[static_cast<std::size_t>(s)] = c;
    for (long i = 0; i <= db; ++i) {
      auto idx = static_cast<std::size_t>(i + s);
      r[idx] = static_cast<u32>((r[idx] + static_cast<u64>(p - c) * b[static_cast<std::size_t>(i)]) % p);
    }
    trim(r);
  }
  trim(q);
}

Poly mod(const Poly& a, const Poly& b, u32 p) {
  Poly q, r;
  divmod(a, b, p, q, r);
  return r;
}

Poly monic(const Poly& a, u32 p) {
  if (a.empty()) return a;
  return scale(a, inv_mod(a.back(), p), p);
}

Poly gcd(Poly a, Poly b, u32 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a, p);
}

Poly ext_gcd(const Poly& a, const Poly& b, u32 p, Poly& s, Poly& t) {
  Poly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
  trim(r0);
  trim(r1);
  while (!r1.empty()) {
    Poly q, r;
    divmod(r0, r1, p, q, r);
    Poly s2 = sub(s0, mul(q, s1, p), p);
    Poly t2 = sub(t0, mul(q, t1, p), p);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  ensure(!r0.empty(), "fp::ext_gcd: both inputs zero");
  u32 inv = inv_mod(r0.back(), p);
  s = scale(s0, inv, p);
  t = scale(t0, inv, p);
  return scale(r0, inv, p);
}

Poly derivative(const Poly& f, u32 p) {
  if (f.size() <= 1) return {};
  Poly d(f.size() - 1);
  for (std::size_t i = 1; i < f.size(); ++i) d[i - 1] = static_cast<u32>(static_cast<u64>(f[i]) * (i % p) % p);
  trim(d);
  return d;
}

Poly powmod(const Poly& base, const Int& e, const Poly& m, u32 p) {
  Poly result{1 % p};
  result = mod(result, m, p);
  Poly b = mod(base, m, p);
  std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  if (e == 0) return result;
  for (std::size_t i = bits; i-- > 0;) {
    result = mod(mul(result, result, p), m, p);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = mod(mul(result, b, p), m, p);
  }
  return result;
}

Poly from_z(const ZPoly& f, u32 p) {
  Poly r(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) r[i] = reduce(f[i], p);
  trim(r);
  return r;
}

u32 eval(const Poly& f, u32 x, u32 p) {
  u64 r = 0;
  for (std::size_t i = f.size(); i-- > 0;) r = (r * x + f[i]) % p;
  return static_cast<u32>(r);
}

bool is_irreducible(const Poly& f, u32 p) {
  long n = degree(f);
  if (n <= 0) return false;
  if (n == 1) return true;
  Poly x{0, 1};
  Poly xp = x;
  for (long i = 1; 2 * i <= n; ++i) {
    xp = powmod(xp, Int(p), f, p);
    Poly g = gcd(f, sub(xp, x, p), p);
    if (degree(g) > 0) return false;
  }
  return true;
}

std::vector<Poly> berlekamp(const Poly& f, u32 p) {
  long n = degree(f);
  if (n <= 1) return {f};
  auto nn = static_cast<std::size_t>(n);
  // Row i holds x^{ip} mod f, minus the identity.
  ModMatrix q(nn, nn, p);
  Poly xp = powmod(Poly{0, 1}, Int(p), f, p);
  Poly cur{1};
  for (std::size_t i = 0; i < nn; ++i) {
    for (std::size_t j = 0; j < cur.size(); ++j) q(i, j) = cur[j];
    q(i, i) = (q(i, i) + p - 1) % p;
    cur = mod(mul(cur, xp, p), f, p);
  }
  ModMatrix ker = mod_left_kernel(q);
  std::size_t r = ker.rows;
  std::vector<Poly> result{f};
  for (std::size_t b = 0; b < ker.rows && result.size() < r; ++b) {
    Poly v(ker.row(b), ker.row(b) + nn);
    trim(v);
    if (degree(v) <= 0) continue;
    std::vector<Poly> next;
    for (const auto& u : result) {
      if (degree(u) == 1) {
        next.push_back(u);
        continue;
      }
      Poly rem = u;
      for (u32 s = 0; s < p && degree(rem) > 0; ++s) {
        Poly vs = sub(v, Poly{s}, p);
        Poly g = gcd(rem, vs, p);
        if (degree(g) >= 1) {
          next.push_back(g);
          Poly qq, rr;
          divmod(rem, g, p, qq, rr);
          rem = monic(qq, p);
        }
      }
      ensure(degree(rem) <= 0, "berlekamp: incomplete split");
    }
    result = std::move(next);
  }
  ensure(result.size() == r, "berlekamp: factor count mismatch");
  return result;
}

namespace {

void squarefree_parts(const Poly& f, u32 p, unsigned mult, std::vector<std::pair<Poly, unsigned>>& out) {
  Poly fd = derivative(f, p);
  Poly c = fd.empty() ? f : gcd(f, fd, p);
  Poly w, r;
  divmod(f, c, p, w, r);
  w = monic(w, p);
  unsigned i = 1;
  while (degree(w) > 0) {
    Poly y = gcd(w, c, p);
    Poly z;
    divmod(w, y, p, z, r);
    if (degree(z) > 0) out.emplace_back(monic(z, p), i * mult);
    ++i;
    w = y;
    Poly cq;
    divmod(c, y, p, cq, r);
    c = monic(cq, p);
  }
  if (degree(c) > 0) {
    // c is a p-th power
    Poly root;
    for (std::size_t k = 0; k < c.size(); k += p) root.push_back(c[k]);
    trim(root);
    squarefree_parts(monic(root, p), p, mult * p, out);
  }
}

}  // namespace

std::vector<Factor> factor(const Poly& f0, u32 p) {
  Poly f = f0;
  trim(f);
  ensure(!f.empty(), "fp::factor: zero polynomial");
  std::vector<Factor> out;
  if (degree(f) == 0) return out;
  std::vector<std::pair<Poly, unsigned>> parts;
  squarefree_parts(monic(f, p), p, 1, parts);
  for (auto& [g, m] : parts)
    for (auto& h : berlekamp(g, p)) {
      bool merged = false;
      Poly hm = monic(h, p);
      for (auto& fo : out)
        if (fo.f == hm) {
          fo.mult += m;
          merged = true;
        }
      if (!merged) out.push_back({hm, m});
    }
  std::sort(out.begin(), out.end(), [](const Factor& a, const Factor& b) {
    if (a.f.size() != b.f.size()) return a.f.size() < b.f.size();
    return std::lexicographical_compare(a.f.rbegin(), a.f.rend(), b.f.rbegin(), b.f.rend());
  });
  return out;
}

}  // namespace lr::fp
