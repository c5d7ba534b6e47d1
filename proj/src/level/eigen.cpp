#include "lr/level/eigen.hpp"

#include <algorithm>

#include "lr/errors.hpp"
#include "lr/exact/modmat.hpp"

namespace lr::level {

namespace {

// Column-action operator restricted to an invariant row lattice.
IntMatrix restrict_op(const IntMatrix& op, const IntMatrix& basis) {
  QMatrix r = coordinates(to_q(basis * transpose(op)), to_q(basis));
  return transpose(to_int(r));
}

QMatrix restrict_q(const QMatrix& op, const IntMatrix& basis) {
  QMatrix b = to_q(basis);
  return transpose(coordinates(b * transpose(op), b));
}

ZPoly zpow(const ZPoly& f, unsigned e) {
  ZPoly r{Int(1)};
  for (unsigned i = 0; i < e; ++i) r = zmul(r, f);
  return r;
}

// c with m = sum_k c_k g^k, k < d
QPoly express_in_powers(const QMatrix& m, const QMatrix& g, std::size_t d) {
  std::size_t n = m.rows;
  QMatrix a(n * n, d), b(n * n, 1);
  QMatrix pw = QMatrix::identity(n);
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t i = 0; i < n * n; ++i) a(i, k) = pw.a[i];
    pw = pw * g;
  }
  for (std::size_t i = 0; i < n * n; ++i) b(i, 0) = m.a[i];
  QMatrix x = solve(a, b);
  ensure(a * x == b, "operator is not a polynomial in the generator on this orbit");
  QPoly c(d);
  for (std::size_t k = 0; k < d; ++k) c[k] = x(k, 0);
  trim(c);
  return c;
}

bool qpoly_less(const QPoly& x, const QPoly& y) {
  if (x.size() != y.size()) return x.size() < y.size();
  for (std::size_t i = x.size(); i-- > 0;)
    if (x[i] != y[i]) return x[i] < y[i];
  return false;
}

}  // namespace

const QPoly& HeckeOrbit::value(long label) const {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == label) return values[i];
  throw InvariantError("orbit has no eigenvalue for label " + std::to_string(label));
}

std::vector<HeckeOrbit> decompose(const std::vector<IntMatrix>& ops, const std::vector<long>& labels) {
  ensure(!ops.empty() && ops.size() == labels.size(), "decompose: operator list");
  std::size_t n = ops[0].rows;
  std::vector<IntMatrix> spaces{IntMatrix::identity(n)};
  for (const IntMatrix& op : ops) {
    std::vector<IntMatrix> next;
    for (const IntMatrix& w : spaces) {
      IntMatrix m = restrict_op(op, w);
      auto fac = factor_z(char_poly(m));
      if (fac.size() == 1) {
        next.push_back(w);
        continue;
      }
      for (const auto& f : fac) {
        IntMatrix k = integer_right_kernel(eval_poly(zpow(f.f, f.mult), m));
        next.push_back(saturate(k * w));
      }
    }
    spaces = next;
  }
  std::vector<HeckeOrbit> out;
  for (const IntMatrix& w : spaces) {
    HeckeOrbit o;
    o.space = w;
    o.labels = labels;
    std::vector<IntMatrix> rs;
    for (const IntMatrix& op : ops) rs.push_back(restrict_op(op, w));
    bool found = false;
    for (std::size_t g = 0; g < rs.size() && !found; ++g) {
      auto fac = factor_z(char_poly(rs[g]));
      if (fac.size() == 1 && fac[0].mult == 1) {
        o.generator = g;
        o.field = NumberField(char_poly(rs[g]));
        found = true;
      }
    }
    ensure(found, "Hecke orbit of dimension " + std::to_string(w.rows) + " has no generating operator");
    QMatrix gen = to_q(rs[o.generator]);
    o.gen_matrix = gen;
    for (const IntMatrix& r : rs) o.values.push_back(o.field.normalize(express_in_powers(to_q(r), gen, w.rows)));
    out.push_back(o);
  }
  std::sort(out.begin(), out.end(), [](const HeckeOrbit& x, const HeckeOrbit& y) {
    if (x.dim() != y.dim()) return x.dim() < y.dim();
    if (x.field.g != y.field.g) return std::lexicographical_compare(x.field.g.begin(), x.field.g.end(), y.field.g.begin(), y.field.g.end());
    return std::lexicographical_compare(x.values.begin(), x.values.end(), y.values.begin(), y.values.end(), qpoly_less);
  });
  return out;
}

QPoly orbit_eigenvalue(const HeckeOrbit& orbit, const QMatrix& op) {
  return orbit.field.normalize(express_in_powers(restrict_q(op, orbit.space), orbit.gen_matrix, orbit.dim()));
}

bool is_eisenstein(const HeckeOrbit& orbit) {
  if (orbit.dim() != 1) return false;
  for (std::size_t i = 0; i < orbit.labels.size(); ++i) {
    const QPoly& v = orbit.values[i];
    Rat c = v.empty() ? Rat(0) : v[0];
    if (v.size() > 1 || c != 1 + orbit.labels[i]) return false;
  }
  return true;
}

std::vector<LocalData> local_data(const HeckeOrbit& orbit, std::uint32_t ell) {
  std::vector<LocalData> out;
  for (Place& pl : places_above(orbit.field, ell)) {
    GF f = GF::canonical(ell, static_cast<unsigned>(fp::degree(pl.phi)));
    auto roots = roots_in(f, pl.phi);
    ensure(!roots.empty(), "residue polynomial has no root in its field");
    out.push_back({pl, f, roots[0]});
  }
  return out;
}

GF::Elem reduce_at(const HeckeOrbit& orbit, const LocalData& ld, const QPoly& x) {
  return place_residue(orbit.field, ld.place, ld.residue_field, ld.root, x);
}

std::vector<HeckeOrbit> old_eigenforms(const Instance& inst) {
  std::vector<IntMatrix> ops;
  for (long r : inst.k_labels) ops.push_back(inst.theta_k->brandt(r));
  return decompose(ops, inst.k_labels);
}

StarResult star_criterion(const Instance& inst, const HeckeOrbit& f, LocalData& ld) {
  const std::uint32_t ell = ld.place.ell;
  Indices ix = parahoric_indices(inst.ls);
  if ((Int(inst.q()) * ix.kp_rel()) % ell == 0)
    throw HypothesisError("hypothesis violated: ell divides q[K':J]_K");
  QMatrix e = e_kkprime(inst.ls);
  const NumberField& K = f.field;
  QPoly eta_f = orbit_eigenvalue(f, e);
  // eigenvalue on the constant function
  std::vector<Rat> ones(inst.ls.h(), Rat(1));
  std::vector<Rat> img = mat_vec(e, ones);
  for (const Rat& v : img) ensure(v == img[0], "constant function is not an eigenvector of e_{K,K'}");
  QPoly eta_1 = K.from_rat(img[0]);
  StarResult r;
  r.m = K.sub(eta_f, K.from_rat(Rat(ix.k * ix.kp_rel())));
  r.vm = place_valuation(K, ld.place, r.m);
  Valuation vrel = v_ell(ix.kp_rel(), ell);
  r.n0 = r.vm.infinite ? Valuation::inf() : Valuation::of(r.vm.value - vrel.value * static_cast<long>(ld.place.s));
  Valuation vd = place_valuation(K, ld.place, K.sub(eta_f, eta_1));
  r.holds = Valuation::of(1) <= vd;
  const QPoly& aq = f.value(inst.q());
  QPoly cls = K.sub(K.mul(aq, aq), K.from_rat(Rat((1 + inst.q()) * (1 + inst.q()))));
  r.classical = Valuation::of(1) <= place_valuation(K, ld.place, cls);
  return r;
}

std::optional<std::string> abelian_test(const HeckeOrbit& f, const LocalData& ld, long p, long bound) {
  const GF& F = ld.residue_field;
  std::vector<std::pair<std::string, int>> chars{{"trivial", 0}};
  if (p > 2) chars.push_back({"quadratic mod " + std::to_string(p), 1});
  for (const auto& [name, kind] : chars) {
    bool all = true;
    for (std::size_t i = 0; i < f.labels.size() && all; ++i) {
      long r = f.labels[i];
      if (r > bound || r % p == 0) continue;
      long chi = 1;
      if (kind == 1) {
        auto u = fp::pow_mod(static_cast<fp::u32>(r % p), static_cast<fp::u64>((p - 1) / 2), static_cast<fp::u32>(p));
        chi = u == 1 ? 1 : -1;
      }
      GF::Elem lhs = reduce_at(f, ld, f.values[i]);
      GF::Elem rhs = F.from_int(Int(chi * (1 + r)));
      if (lhs != rhs) all = false;
    }
    if (all) return name;
  }
  return std::nullopt;
}

std::vector<long> two_place_witnesses(long p, long q, std::uint32_t ell, long bound) {
  std::vector<long> out;
  for (long v = 2; v <= bound; ++v) {
    if (!fp::is_prime(static_cast<fp::u64>(v)) || v == q || v == static_cast<long>(ell)) continue;
    Int order = v == p ? Int(Int(v) * (Int(v) * v - 1)) : Int(Int(v) * (v - 1) * (v - 1) * (v + 1));
    if (order % ell != 0) out.push_back(v);
  }
  return out;
}

NewSpace new_space(const Instance& inst) {
  NewSpace ns;
  ns.lattice = old_new_split(inst.setup).new_lattice;
  for (const IntMatrix& op : inst.setup.v_ops.ops) ns.ops.push_back(restrict_op(op, ns.lattice));
  return ns;
}

RaiseResult raise_level(const Instance& inst, const NewSpace& ns, const HeckeOrbit& f, LocalData& ld) {
  const std::uint32_t ell = ld.place.ell;
  StarResult st = star_criterion(inst, f, ld);
  if (auto chi = abelian_test(f, ld, inst.p(), inst.rbound)) {
    if (*chi == "trivial")
      throw HypothesisError("abelian mod " + std::to_string(ell) + ": Eisenstein congruence detected");
    throw HypothesisError("abelian mod " + std::to_string(ell) + ": congruent to the " + *chi + " character");
  }
  if (!st.holds) throw HypothesisError("criterion (star) fails mod " + std::to_string(ell));
  if (two_place_witnesses(inst.p(), inst.q(), ell).size() < 2)
    throw HypothesisError("fewer than two places v with ell not dividing |K_v|");
  RaiseResult res;
  const GF& F = ld.residue_field;
  std::vector<GF::Elem> tuple;
  for (long r : inst.labels) tuple.push_back(reduce_at(f, ld, f.value(r)));
  res.target_k = generated_degree(F, tuple);
  res.target = to_canonical_field(F, tuple, res.target_k);
  if (ns.lattice.rows == 0) return res;
  for (const ModEigensystem& es : joint_eigensystems_mod(ns.ops, ell)) {
    if (es.k != res.target_k || es.values != res.target) continue;
    ensure(verify_eigensystem(ns.ops, es), "returned new eigensystem fails re-verification");
    res.congruent.push_back(es);
  }
  // integral lift: a unique rational new form reducing to the match
  if (f.rational() && res.congruent.size() == 1 && res.congruent[0].k == 1 && res.congruent[0].multiplicity == 1) {
    for (const HeckeOrbit& g : decompose(ns.ops, inst.labels)) {
      if (!g.rational()) continue;
      bool match = true;
      long n = -1;
      for (long r : inst.labels) {
        Rat diff = g.field.to_rat(g.value(r)) - f.field.to_rat(f.value(r));
        Valuation v = v_ell(diff, ell);
        if (!v.infinite && v.value < 1) match = false;
        if (!v.infinite) n = n < 0 ? v.value : std::min(n, v.value);
      }
      if (match) res.lift_exponent = n < 0 ? 1000 : n;
    }
  }
  return res;
}

Semisimplicity semisimple_mod_ell(const std::vector<IntMatrix>& ops, std::uint32_t ell) {
  Semisimplicity out;
  if (ops.empty()) return out;
  std::size_t n = ops[0].rows;
  std::vector<ModMatrix> gens;
  for (const IntMatrix& op : ops) gens.push_back(reduce_mod(op, ell));
  auto flatten = [&](const ModMatrix& m) {
    ModMatrix v(1, n * n, ell);
    v.a = m.a;
    return v;
  };
  // basis of the algebra by closure under multiplication with generators
  std::vector<ModMatrix> basis{ModMatrix::identity(n, ell)};
  ModMatrix span = flatten(basis[0]);
  for (std::size_t idx = 0; idx < basis.size(); ++idx)
    for (const ModMatrix& g : gens) {
      ModMatrix c = mod_mul(basis[idx], g);
      ModMatrix trial(span.rows + 1, n * n, ell);
      std::copy(span.a.begin(), span.a.end(), trial.a.begin());
      std::copy(c.a.begin(), c.a.end(), trial.a.begin() + static_cast<long>(span.a.size()));
      if (mod_rank(trial) > span.rows) {
        span = trial;
        basis.push_back(c);
      }
    }
  out.algebra_dim = basis.size();
  // Frobenius a -> a^(ell^e) is F_ell-linear on a commutative algebra of
  // characteristic ell; for ell^e >= dim its kernel is the nilradical.
  std::size_t e = 1;
  Int pe = ell;
  while (pe < Int(static_cast<unsigned long>(out.algebra_dim))) {
    pe *= ell;
    ++e;
  }
  ModMatrix images(basis.size(), n * n, ell);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    ModMatrix x = basis[i];
    for (std::size_t s = 0; s < e; ++s) {
      ModMatrix acc = ModMatrix::identity(n, ell);
      for (std::uint32_t t = 0; t < ell; ++t) acc = mod_mul(acc, x);
      x = acc;
    }
    std::copy(x.a.begin(), x.a.end(), images.a.begin() + static_cast<long>(i * n * n));
  }
  ModMatrix coords = mod_coordinates(images, span);
  out.nilradical_dim = mod_left_kernel(coords).rows;
  out.semisimple = out.nilradical_dim == 0;
  return out;
}

}  // namespace lr::level
