#include "lr/quaternion/algebra.hpp"

#include <algorithm>

#include "lr/errors.hpp"
#include "lr/exact/fp.hpp"
#include "lr/exact/modmat.hpp"
#include "lr/quaternion/short_vectors.hpp"

namespace lr::quat {

namespace {

int legendre(const Int& u, long ell) {
  auto r = fp::reduce(u, static_cast<fp::u32>(ell));
  if (r == 0) return 0;
  return fp::pow_mod(r, static_cast<fp::u64>((ell - 1) / 2), static_cast<fp::u32>(ell)) == 1 ? 1 : -1;
}

// x = ell^v * unit
long split_off(Int& x, long ell) {
  long v = 0;
  while (x % ell == 0) {
    x /= ell;
    ++v;
  }
  return v;
}

std::vector<long> prime_divisors(Int x) {
  x = abs(x);
  std::vector<long> out;
  for (long d = 2; Int(d) * d <= x; ++d)
    if (x % d == 0) {
      out.push_back(d);
      while (x % d == 0) x /= d;
    }
  if (x > 1) out.push_back(x.get_si());
  return out;
}

Rat rat_sqrt(const Rat& x) {
  ensure(x >= 0, "rat_sqrt: negative");
  Int n = isqrt(x.get_num()), d = isqrt(x.get_den());
  ensure(n * n == x.get_num() && d * d == x.get_den(), "rat_sqrt: not a square");
  Rat r(n, d);
  r.canonicalize();
  return r;
}

}  // namespace

int hilbert_symbol(const Int& a0, const Int& b0, long ell) {
  ensure(a0 != 0 && b0 != 0, "hilbert symbol of zero");
  Int u = a0, v = b0;
  long alpha = split_off(u, ell), beta = split_off(v, ell);
  if (ell == 2) {
    auto m8 = [](const Int& x) {
      Int r = x % 8;
      if (r < 0) r += 8;
      return r.get_si();
    };
    long uu = m8(u), vv = m8(v);
    long eps_u = ((uu - 1) / 2) % 2, eps_v = ((vv - 1) / 2) % 2;
    long om_u = ((uu * uu - 1) / 8) % 2, om_v = ((vv * vv - 1) / 8) % 2;
    long e = eps_u * eps_v + alpha * om_v + beta * om_u;
    return e % 2 == 0 ? 1 : -1;
  }
  int s = ((alpha * beta) % 2 == 1 && (ell - 1) / 2 % 2 == 1) ? -1 : 1;
  if (beta % 2 == 1) s *= legendre(u, ell);
  if (alpha % 2 == 1) s *= legendre(v, ell);
  return s;
}

std::vector<long> ramified_primes(const Algebra& alg) {
  std::vector<long> cand = prime_divisors(Int(2) * alg.a * alg.b * alg.p);
  std::vector<long> out;
  for (long ell : cand)
    if (hilbert_symbol(alg.a, alg.b, ell) == -1) out.push_back(ell);
  return out;
}

Algebra build_algebra(long p) {
  if (p < 2 || !fp::is_prime(static_cast<fp::u64>(p))) throw HypothesisError("discriminant " + std::to_string(p) + " is not prime");
  Algebra alg;
  alg.p = p;
  if (p == 2) {
    alg.a = -1;
    alg.b = -1;
  } else if (p % 4 == 3) {
    alg.a = -1;
    alg.b = -p;
  } else if (p % 8 == 5) {
    alg.a = -2;
    alg.b = -p;
  } else {
    long r = 3;
    while (!(fp::is_prime(static_cast<fp::u64>(r)) && r % 4 == 3 && legendre(Int(r), p) == -1)) r += 4;
    alg.a = -r;
    alg.b = -p;
  }
  ensure(ramified_primes(alg) == std::vector<long>{p}, "algebra ramification is not {p, infinity}");
  return alg;
}

Elt mul(const Algebra& alg, const Elt& x, const Elt& y) {
  const Rat a(alg.a), b(alg.b);
  Elt r;
  r[0] = x[0] * y[0] + a * x[1] * y[1] + b * x[2] * y[2] - a * b * x[3] * y[3];
  r[1] = x[0] * y[1] + x[1] * y[0] - b * x[2] * y[3] + b * x[3] * y[2];
  r[2] = x[0] * y[2] + x[2] * y[0] + a * x[1] * y[3] - a * x[3] * y[1];
  r[3] = x[0] * y[3] + x[3] * y[0] + x[1] * y[2] - x[2] * y[1];
  return r;
}

Elt conj(const Elt& x) { return {x[0], -x[1], -x[2], -x[3]}; }

Rat nrd(const Algebra& alg, const Elt& x) {
  const Rat a(alg.a), b(alg.b);
  return x[0] * x[0] - a * x[1] * x[1] - b * x[2] * x[2] + a * b * x[3] * x[3];
}

Rat trd(const Elt& x) { return 2 * x[0]; }

Elt one() { return {Rat(1), Rat(0), Rat(0), Rat(0)}; }

Elt row_elt(const QMatrix& basis, std::size_t i) {
  return {basis(i, 0), basis(i, 1), basis(i, 2), basis(i, 3)};
}

Elt combine(const QMatrix& basis, const std::vector<long>& coeffs) {
  Elt r{Rat(0), Rat(0), Rat(0), Rat(0)};
  for (std::size_t s = 0; s < basis.rows; ++s)
    if (coeffs[s] != 0)
      for (std::size_t t = 0; t < 4; ++t) r[t] += basis(s, t) * coeffs[s];
  return r;
}

QMatrix from_elts(const std::vector<Elt>& xs) {
  QMatrix m(xs.size(), 4);
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t t = 0; t < 4; ++t) m(i, t) = xs[i][t];
  return m;
}

QMatrix lattice_product(const Algebra& alg, const QMatrix& x, const QMatrix& y) {
  std::vector<Elt> gens;
  for (std::size_t s = 0; s < x.rows; ++s)
    for (std::size_t t = 0; t < y.rows; ++t) gens.push_back(mul(alg, row_elt(x, s), row_elt(y, t)));
  return rational_hnf(from_elts(gens));
}

QMatrix conjugate_lattice(const QMatrix& x) {
  QMatrix r = x;
  for (std::size_t s = 0; s < r.rows; ++s)
    for (std::size_t t = 1; t < 4; ++t) r(s, t) = -r(s, t);
  return rational_hnf(r);
}

QMatrix right_multiply(const Algebra& alg, const QMatrix& x, const Elt& u) {
  std::vector<Elt> gens;
  for (std::size_t s = 0; s < x.rows; ++s) gens.push_back(mul(alg, row_elt(x, s), u));
  return rational_hnf(from_elts(gens));
}

QMatrix norm_gram(const Algebra& alg, const QMatrix& basis) {
  QMatrix g(basis.rows, basis.rows);
  for (std::size_t s = 0; s < basis.rows; ++s)
    for (std::size_t t = 0; t < basis.rows; ++t)
      g(s, t) = trd(mul(alg, row_elt(basis, s), conj(row_elt(basis, t)))) / 2;
  return g;
}

Rat covolume(const QMatrix& basis) { return abs(det(basis)); }

bool lattice_contains(const QMatrix& big, const QMatrix& small) {
  return is_integral(coordinates(small, big));
}

Rat trace_form_det(const Algebra& alg, const QMatrix& basis) { return det(scaled(norm_gram(alg, basis), Rat(2))); }

Order make_order(const Algebra& alg, const QMatrix& basis) {
  Order o;
  o.basis = rational_hnf(basis);
  ensure(o.basis.rows == 4, "order: basis not of rank 4");
  ensure(lattice_contains(o.basis, from_elts({one()})), "order: 1 missing");
  for (std::size_t s = 0; s < 4; ++s) {
    Elt x = row_elt(o.basis, s);
    ensure(trd(x).get_den() == 1 && nrd(alg, x).get_den() == 1, "order: non-integral trace or norm");
    std::vector<Elt> prods;
    for (std::size_t t = 0; t < 4; ++t) prods.push_back(mul(alg, x, row_elt(o.basis, t)));
    QMatrix c = coordinates(from_elts(prods), o.basis);
    ensure(is_integral(c), "order: not closed under multiplication");
    o.left_mult.push_back(to_int(c));
  }
  return o;
}

Order maximal_order(const Algebra& alg) {
  const Rat h(1, 2);
  std::vector<Elt> b;
  if (alg.p == 2) {
    b = {one(), {0, 1, 0, 0}, {0, 0, 1, 0}, {h, h, h, h}};
  } else if (alg.p % 4 == 3) {
    b = {one(), {0, 1, 0, 0}, {0, h, h, 0}, {h, 0, 0, h}};
  } else if (alg.p % 8 == 5) {
    b = {{h, 0, h, h}, {0, Rat(1, 4), h, Rat(1, 4)}, {0, 0, 1, 0}, {0, 0, 0, 1}};
  } else {
    long r = -alg.a.get_si(), c = 0;
    while ((c * c * alg.p + 1) % r != 0) ++c;
    b = {{h, h, 0, 0}, {0, 0, h, -h}, {0, Rat(1, r), 0, Rat(-c, r)}, {0, 0, 0, 1}};
  }
  Order o = make_order(alg, from_elts(b));
  ensure(trace_form_det(alg, o.basis) == Rat(alg.p * alg.p), "order: discriminant is not p");
  return o;
}

Ideal make_left_ideal(const Algebra& alg, const Order& order, const QMatrix& gens) {
  Ideal id;
  id.basis = rational_hnf(gens);
  ensure(id.basis.rows == 4, "ideal: not of full rank");
  ensure(lattice_contains(id.basis, lattice_product(alg, order.basis, id.basis)), "ideal: not a left ideal");
  id.norm = rat_sqrt(covolume(id.basis) / covolume(order.basis));
  return id;
}

QMatrix right_order(const Algebra& alg, const Ideal& ideal) {
  return scaled(lattice_product(alg, conjugate_lattice(ideal.basis), ideal.basis), Rat(1 / ideal.norm));
}

std::vector<Elt> units(const Algebra& alg, const QMatrix& order_basis) {
  std::vector<Elt> out;
  for_each_short_vector(norm_gram(alg, order_basis), Rat(1), [&](const std::vector<long>& c, const Rat& v) {
    if (v == 1) out.push_back(combine(order_basis, c));
  });
  return out;
}

std::optional<std::vector<long>> splitting_idempotent(const Algebra& alg, const Order& order, long q) {
  (void)alg;
  std::vector<std::vector<std::vector<long>>> lm(4, std::vector<std::vector<long>>(4, std::vector<long>(4)));
  for (std::size_t s = 0; s < 4; ++s)
    for (std::size_t t = 0; t < 4; ++t)
      for (std::size_t u = 0; u < 4; ++u) {
        Int r = order.left_mult[s](t, u) % q;
        if (r < 0) r += q;
        lm[s][t][u] = r.get_si();
      }
  QMatrix c1 = coordinates(from_elts({one()}), order.basis);
  std::vector<long> unit(4);
  for (std::size_t t = 0; t < 4; ++t) {
    Int r = c1(0, t).get_num() % q;
    if (r < 0) r += q;
    unit[t] = r.get_si();
  }
  std::vector<long> c(4, 0);
  long total = q * q * q * q;
  for (long idx = 0; idx < total; ++idx) {
    long rest = idx;
    for (int t = 3; t >= 0; --t) {
      c[static_cast<std::size_t>(t)] = rest % q;
      rest /= q;
    }
    bool zero = std::all_of(c.begin(), c.end(), [](long v) { return v == 0; });
    if (zero || c == unit) continue;
    std::vector<long> sq(4, 0);
    for (std::size_t s = 0; s < 4; ++s)
      for (std::size_t t = 0; t < 4; ++t)
        for (std::size_t u = 0; u < 4; ++u) sq[u] += c[s] * c[t] * lm[s][t][u];
    bool idem = true;
    for (std::size_t u = 0; u < 4; ++u)
      if (sq[u] % q != c[u]) idem = false;
    if (idem) return c;
  }
  return std::nullopt;
}

std::vector<Ideal> neighbors(const Algebra& alg, const Order& order, const Ideal& ideal, long q,
                             const std::vector<long>& idempotent) {
  const auto uq = static_cast<std::uint32_t>(q);
  // action of each order basis element on I/qI, row-vector convention
  std::vector<ModMatrix> act;
  for (std::size_t s = 0; s < 4; ++s) {
    std::vector<Elt> prods;
    for (std::size_t k = 0; k < 4; ++k) prods.push_back(mul(alg, row_elt(order.basis, s), row_elt(ideal.basis, k)));
    act.push_back(reduce_mod(to_int(coordinates(from_elts(prods), ideal.basis)), uq));
  }
  ModMatrix e(4, 4, uq);
  for (std::size_t s = 0; s < 4; ++s)
    for (std::size_t i = 0; i < 16; ++i)
      e.a[i] = static_cast<std::uint32_t>((e.a[i] + static_cast<std::uint64_t>(idempotent[s]) * act[s].a[i]) % uq);
  mod_rref(e);
  ensure(mod_rank(e) == 2, "neighbors: idempotent image is not 2-dimensional");
  std::vector<std::vector<std::uint32_t>> lines;
  for (long t = 0; t <= q; ++t) {
    std::vector<std::uint32_t> w(4);
    for (std::size_t k = 0; k < 4; ++k)
      w[k] = t < q ? static_cast<std::uint32_t>((e(0, k) + static_cast<std::uint64_t>(t) * e(1, k)) % uq) : e(1, k);
    lines.push_back(w);
  }
  std::vector<Ideal> out;
  for (const auto& w : lines) {
    ModMatrix span(4, 4, uq);
    for (std::size_t s = 0; s < 4; ++s)
      for (std::size_t k = 0; k < 4; ++k) {
        std::uint64_t acc = 0;
        for (std::size_t m = 0; m < 4; ++m) acc += static_cast<std::uint64_t>(w[m]) * act[s](m, k);
        span(s, k) = static_cast<std::uint32_t>(acc % uq);
      }
    mod_rref(span);
    ensure(mod_rank(span) == 2, "neighbors: submodule is not 2-dimensional");
    QMatrix gens(6, 4);
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t t = 0; t < 4; ++t) gens(r, t) = ideal.basis(r, t) * q;
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t k = 0; k < 4; ++k)
        for (std::size_t t = 0; t < 4; ++t) gens(4 + r, t) += ideal.basis(k, t) * span(r, k);
    Ideal j = make_left_ideal(alg, order, gens);
    ensure(j.norm == ideal.norm * q, "neighbors: wrong norm");
    out.push_back(j);
  }
  return out;
}

}  // namespace lr::quat
