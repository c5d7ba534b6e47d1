#include "lr/exact/eigensystem.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "lr/errors.hpp"
#include "lr/exact/modmat.hpp"
#include "lr/exact/poly.hpp"

namespace lr {

std::string ModEigensystem::key() const {
  GF F = GF::canonical(ell, k);
  std::ostringstream os;
  os << "k=" << k << ":";
  for (std::size_t i = 0; i < values.size(); ++i) os << (i ? "," : "") << F.to_string(values[i]);
  return os.str();
}

namespace {

bool tuple_less(const std::vector<GF::Elem>& a, const std::vector<GF::Elem>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), GF::less);
}

GFMatrix gf_transpose(const GF& F, const GFMatrix& m) {
  GFMatrix r(F, m.cols, m.rows);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) r(j, i) = m(i, j);
  return r;
}

// Rows c with c m = 0.
GFMatrix left_kernel(const GF& F, const GFMatrix& m) { return kernel_mod_ell(F, gf_transpose(F, m)); }

// Coordinates c with c b = x for an independent row basis b.
GFMatrix gf_coordinates(const GF& F, const GFMatrix& x, const GFMatrix& b) {
  std::size_t n = b.cols, k = b.rows;
  GFMatrix aug(F, n, k + x.rows);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) aug(i, j) = b(j, i);
    for (std::size_t j = 0; j < x.rows; ++j) aug(i, k + j) = x(j, i);
  }
  auto piv = gf_rref(F, aug);
  GFMatrix c(F, x.rows, k);
  for (std::size_t t = 0; t < piv.size(); ++t) {
    ensure(piv[t] < k, "gf_coordinates: vector outside the span");
    for (std::size_t j = 0; j < x.rows; ++j) c(j, piv[t]) = aug(t, k + j);
  }
  return c;
}

GFMatrix shifted(const GF& F, const GFMatrix& r, const GF::Elem& a) {
  GFMatrix s = r;
  for (std::size_t i = 0; i < r.rows; ++i) s(i, i) = F.sub(s(i, i), a);
  return s;
}

GFMatrix gf_power(const GF& F, GFMatrix m, std::size_t e) {
  GFMatrix r(F, m.rows, m.cols);
  for (std::size_t i = 0; i < m.rows; ++i) r(i, i) = F.one();
  while (e) {
    if (e & 1) r = gf_mul(F, r, m);
    e >>= 1;
    if (e) m = gf_mul(F, m, m);
  }
  return r;
}

// Operators act on row coordinates by right multiplication. restrict(R, C)
// solves C R = R' C.
ModMatrix mod_restrict(const ModMatrix& r, const ModMatrix& c) { return mod_coordinates(mod_mul(c, r), c); }
GFMatrix gf_restrict(const GF& F, const GFMatrix& r, const GFMatrix& c) {
  return gf_coordinates(F, gf_mul(F, c, r), c);
}

ModMatrix eval_mod(const fp::Poly& f, const ModMatrix& m) {
  ModMatrix r(m.rows, m.cols, m.p);
  for (std::size_t i = f.size(); i-- > 0;) {
    r = mod_mul(r, m);
    for (std::size_t d = 0; d < m.rows; ++d) r(d, d) = (r(d, d) + f[i]) % m.p;
  }
  return r;
}

fp::Poly char_poly_mod(const ModMatrix& m) {
  IntMatrix z(m.rows, m.cols);
  for (std::size_t i = 0; i < m.a.size(); ++i) z.a[i] = m.a[i];
  return fp::from_z(char_poly(z), m.p);
}

struct Component {
  ModMatrix basis;                // rows over F_ell in ambient coordinates
  std::vector<ModMatrix> ops;     // restricted, right action on coordinates
  std::vector<fp::Poly> phis;
};

struct Leaf {
  std::vector<GF::Elem> values;
  std::vector<GF::Elem> vec;
  std::size_t dim;
};

void branch(const GF& F, const std::vector<fp::Poly>& phis, const std::vector<GFMatrix>& ops,
            const GFMatrix& basis, std::size_t r, std::vector<GF::Elem>& values, std::vector<Leaf>& out) {
  std::size_t d = basis.rows;
  if (r == ops.size()) {
    // Common eigenvector: c (R_i - a_i) = 0 for all i.
    GFMatrix stacked(F, d, d * ops.size());
    for (std::size_t i = 0; i < ops.size(); ++i) {
      GFMatrix s = shifted(F, ops[i], values[i]);
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) stacked(a, i * d + b) = s(a, b);
    }
    GFMatrix ker = left_kernel(F, stacked);
    ensure(ker.rows > 0, "joint eigensystem without a common eigenvector");
    GFMatrix c(F, 1, d);
    for (std::size_t j = 0; j < d; ++j) c(0, j) = ker(0, j);
    GFMatrix v = gf_mul(F, c, basis);
    out.push_back({values, v.a, d});
    return;
  }
  for (const auto& a : roots_in(F, phis[r])) {
    GFMatrix gen = gf_power(F, shifted(F, ops[r], a), d);
    GFMatrix sub = left_kernel(F, gen);
    if (sub.rows == 0) continue;
    std::vector<GFMatrix> rops;
    for (const auto& op : ops) rops.push_back(gf_restrict(F, op, sub));
    values.push_back(a);
    branch(F, phis, rops, gf_mul(F, sub, basis), r + 1, values, out);
    values.pop_back();
  }
}

GF::Elem frob_power(const GF& F, GF::Elem a, unsigned times) {
  for (unsigned i = 0; i < times; ++i) a = F.frob(a);
  return a;
}

}  // namespace

std::vector<GF::Elem> canonical_conjugate(const GF& F, const std::vector<GF::Elem>& t, unsigned* power) {
  std::vector<GF::Elem> best = t, cur = t;
  unsigned bp = 0;
  for (unsigned i = 1; i < F.k(); ++i) {
    for (auto& x : cur) x = F.frob(x);
    if (tuple_less(cur, best)) {
      best = cur;
      bp = i;
    }
  }
  if (power) *power = bp;
  return best;
}

unsigned generated_degree(const GF& F, const std::vector<GF::Elem>& t) {
  for (unsigned d = 1; d <= F.k(); ++d) {
    if (F.k() % d) continue;
    bool ok = true;
    for (const auto& x : t)
      if (frob_power(F, x, d) != x) {
        ok = false;
        break;
      }
    if (ok) return d;
  }
  return F.k();
}

std::vector<GF::Elem> to_canonical_field(const GF& F, const std::vector<GF::Elem>& t, unsigned kp) {
  ensure(F.k() % kp == 0, "to_canonical_field: degree does not divide");
  GF Fp = GF::canonical(F.p(), kp);
  if (kp == F.k() && Fp == F) return canonical_conjugate(F, t);
  auto rts = roots_in(F, Fp.modulus());
  ensure(!rts.empty(), "to_canonical_field: no embedding");
  const GF::Elem& beta = rts[0];
  // Rows beta^i, i < kp, as vectors over F_p.
  ModMatrix pw(kp, F.k(), F.p());
  GF::Elem cur = F.one();
  for (unsigned i = 0; i < kp; ++i) {
    for (unsigned j = 0; j < F.k(); ++j) pw(i, j) = cur[j];
    cur = F.mul(cur, beta);
  }
  ModMatrix xs(t.size(), F.k(), F.p());
  for (std::size_t i = 0; i < t.size(); ++i)
    for (unsigned j = 0; j < F.k(); ++j) xs(i, j) = t[i][j];
  ModMatrix c = mod_coordinates(xs, pw);
  std::vector<GF::Elem> out(t.size(), Fp.zero());
  for (std::size_t i = 0; i < t.size(); ++i)
    for (unsigned j = 0; j < kp; ++j) out[i][j] = c(i, j);
  return canonical_conjugate(Fp, out);
}

std::vector<ModEigensystem> joint_eigensystems_mod(const std::vector<IntMatrix>& ops, std::uint32_t ell) {
  ensure(!ops.empty(), "joint_eigensystems_mod: no operators");
  std::size_t n = ops[0].rows;
  if (n == 0) return {};
  // Right action on row vectors is by the transpose.
  std::vector<ModMatrix> rops;
  for (const auto& m : ops) rops.push_back(reduce_mod(transpose(m), ell));

  std::vector<Component> comps{{ModMatrix::identity(n, ell), rops, {}}};
  for (std::size_t r = 0; r < ops.size(); ++r) {
    std::vector<Component> next;
    for (auto& c : comps) {
      std::size_t d = c.basis.rows;
      for (const auto& fac : fp::factor(char_poly_mod(c.ops[r]), ell)) {
        fp::Poly pe{1};
        for (unsigned i = 0; i < fac.mult; ++i) pe = fp::mul(pe, fac.f, ell);
        ModMatrix sub = mod_left_kernel(eval_mod(pe, c.ops[r]));
        if (sub.rows == 0) continue;
        Component nc;
        nc.basis = mod_mul(sub, c.basis);
        for (const auto& op : c.ops) nc.ops.push_back(mod_restrict(op, sub));
        nc.phis = c.phis;
        nc.phis.push_back(fac.f);
        next.push_back(std::move(nc));
      }
      (void)d;
    }
    comps = std::move(next);
  }

  std::vector<ModEigensystem> out;
  for (const auto& c : comps) {
    unsigned k = 1;
    for (const auto& phi : c.phis) k = std::lcm(k, static_cast<unsigned>(fp::degree(phi)));
    GF F = GF::canonical(ell, k);
    std::vector<GFMatrix> gops;
    for (const auto& op : c.ops) {
      GFMatrix g(F, op.rows, op.cols);
      for (std::size_t i = 0; i < op.a.size(); ++i) g.a[i] = F.from_u(op.a[i]);
      gops.push_back(std::move(g));
    }
    GFMatrix basis(F, c.basis.rows, c.basis.cols);
    for (std::size_t i = 0; i < c.basis.a.size(); ++i) basis.a[i] = F.from_u(c.basis.a[i]);
    std::vector<Leaf> leaves;
    std::vector<GF::Elem> vals;
    branch(F, c.phis, gops, basis, 0, vals, leaves);
    for (const auto& leaf : leaves) {
      unsigned pw = 0;
      auto canon = canonical_conjugate(F, leaf.values, &pw);
      bool dup = false;
      for (const auto& e : out)
        if (e.k == k && e.values == canon) dup = true;
      if (dup) continue;
      ModEigensystem e;
      e.ell = ell;
      e.k = k;
      e.values = canon;
      e.eigenvector = leaf.vec;
      for (auto& x : e.eigenvector) x = frob_power(F, x, pw);
      e.multiplicity = leaf.dim;
      out.push_back(std::move(e));
    }
  }
  std::sort(out.begin(), out.end(), [](const ModEigensystem& a, const ModEigensystem& b) {
    if (a.k != b.k) return a.k < b.k;
    return tuple_less(a.values, b.values);
  });
  return out;
}

bool verify_eigensystem(const std::vector<IntMatrix>& ops, const ModEigensystem& e) {
  GF F = GF::canonical(e.ell, e.k);
  std::size_t n = e.eigenvector.size();
  bool nonzero = false;
  for (const auto& x : e.eigenvector)
    if (!F.is_zero(x)) nonzero = true;
  if (!nonzero) return false;
  for (std::size_t r = 0; r < ops.size(); ++r) {
    for (std::size_t i = 0; i < n; ++i) {
      GF::Elem acc = F.zero();
      for (std::size_t j = 0; j < n; ++j) acc = F.add(acc, F.mul(F.from_int(ops[r](i, j)), e.eigenvector[j]));
      if (acc != F.mul(e.values[r], e.eigenvector[i])) return false;
    }
  }
  return true;
}

}  // namespace lr
