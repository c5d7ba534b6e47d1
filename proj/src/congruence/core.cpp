#include "lr/congruence/core.hpp"

#include <json.hpp>

#include "lr/errors.hpp"
#include "lr/exact/poly.hpp"

namespace lr {

namespace {

IntMatrix integral_rows(const QMatrix& m) {
  IntMatrix r(m.rows, m.cols);
  for (std::size_t i = 0; i < m.rows; ++i) {
    Int d = 1;
    for (std::size_t j = 0; j < m.cols; ++j) d = lcm(d, m(i, j).get_den());
    for (std::size_t j = 0; j < m.cols; ++j) r(i, j) = Rat(m(i, j) * d).get_num();
  }
  return r;
}

bool is_square_symmetric(const QMatrix& g) {
  if (g.rows != g.cols) return false;
  return transpose(g) == g;
}

nlohmann::json int_json(const Int& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

}  // namespace

PairedLattice::PairedLattice(RatMatrix g) : gram(std::move(g)) {
  QMatrix q = gram.to_q();
  ensure(is_square_symmetric(q), "PairedLattice: Gram not symmetric");
  ensure(det(q) != 0, "PairedLattice: Gram degenerate");
}

void HeckeFamily::add(const std::string& label, const IntMatrix& op) {
  labels.push_back(label);
  ops.push_back(op);
  dual.push_back(ops.size() - 1);
}

std::size_t HeckeFamily::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == label) return i;
  throw InvariantError("HeckeFamily: unknown label " + label);
}

void validate_family(const PairedLattice& L, const HeckeFamily& T) {
  QMatrix g = L.gram_q(), gi = inverse(g);
  for (std::size_t i = 0; i < T.size(); ++i) {
    ensure(T.ops[i].rows == L.rank() && T.ops[i].cols == L.rank(), "HeckeFamily: operator shape");
    for (std::size_t j = i + 1; j < T.size(); ++j)
      ensure(T.ops[i] * T.ops[j] == T.ops[j] * T.ops[i], "HeckeFamily: operators " + T.labels[i] + " and " +
                                                             T.labels[j] + " do not commute");
    QMatrix adj = gi * transpose(to_q(T.ops[i])) * g;
    ensure(adj == to_q(T.ops[T.dual[i]]), "HeckeFamily: adjoint of " + T.labels[i] + " mismatch");
  }
}

Annihilators dual_annihilators(const PairedLattice& L) {
  // Gram = N / d with SNF invariants n_i of N.
  const IntMatrix& n = L.gram.num;
  const Int& d = L.gram.den;
  Annihilators out{1, 1};
  for (const auto& ni : invariant_factors(n)) {
    if (ni == 0) throw InvariantError("dual_annihilators: degenerate Gram");
    out.a = lcm(out.a, d / gcd(d, ni));
    out.b = lcm(out.b, ni / gcd(ni, d));
  }
  return out;
}

Int ihara_constant(const IntMatrix& delta) {
  Int c = 1;
  for (const auto& x : invariant_factors(delta))
    if (x != 0) c = x;
  return c;
}

DegeneracySetup make_setup(PairedLattice u, HeckeFamily tu, PairedLattice v, HeckeFamily tv, RatMatrix delta) {
  DegeneracySetup s;
  s.u_space = std::move(u);
  s.v_space = std::move(v);
  s.u_ops = std::move(tu);
  s.v_ops = std::move(tv);
  s.delta = std::move(delta);
  s.a_u = dual_annihilators(s.u_space).a;
  s.b_v = dual_annihilators(s.v_space).b;
  ensure(s.delta.den == 1, "make_setup: delta must be integral");
  s.c = ihara_constant(s.delta.num);
  return s;
}

void validate_setup(const DegeneracySetup& s) {
  validate_family(s.u_space, s.u_ops);
  validate_family(s.v_space, s.v_ops);
  ensure(s.u_ops.labels == s.v_ops.labels, "setup: label lists differ");
  ensure(s.delta.rows() == s.v_space.rank() && s.delta.cols() == s.u_space.rank(), "setup: delta shape");
  ensure(s.delta.den == 1, "setup: delta(U_Z) not inside V_Z");
  const IntMatrix& d = s.delta.num;
  for (std::size_t i = 0; i < s.u_ops.size(); ++i)
    ensure(d * s.u_ops.ops[i] == s.v_ops.ops[i] * d, "setup: delta not equivariant for " + s.u_ops.labels[i]);
  QMatrix gu = s.u_space.gram_q(), gv = s.v_space.gram_q();
  ensure(is_integral(scaled(gu, Rat(s.a_u))), "setup: A_U does not map U_Z into its dual");
  ensure(is_integral(scaled(inverse(gv), Rat(s.b_v))), "setup: B_V does not map the dual of V_Z into V_Z");
  ensure(s.c % ihara_constant(d) == 0, "setup: C does not kill sat(delta U)/delta U_Z");
  QMatrix k = right_kernel(to_q(d));
  if (k.rows > 0) ensure(det(k * gu * transpose(k)) != 0, "setup: pairing degenerate on ker delta");
  QMatrix im = row_space_basis(transpose(to_q(d)));
  if (im.rows > 0) ensure(det(im * gv * transpose(im)) != 0, "setup: pairing degenerate on im delta");
}

QMatrix adjoint_map(const DegeneracySetup& s) {
  return inverse(s.u_space.gram_q()) * transpose(s.delta.to_q()) * s.v_space.gram_q();
}

QMatrix delta_dual_delta(const DegeneracySetup& s) { return adjoint_map(s) * s.delta.to_q(); }

OldNewSplit old_new_split(const DegeneracySetup& s) {
  OldNewSplit out;
  std::size_t n = s.v_space.rank();
  out.old_basis = row_space_basis(transpose(s.delta.to_q()));
  if (out.old_basis.rows == 0) {
    out.new_basis = QMatrix::identity(n);
  } else {
    out.new_basis = right_kernel(out.old_basis * s.v_space.gram_q());
  }
  out.old_lattice = out.old_basis.rows ? saturate(integral_rows(out.old_basis)) : IntMatrix(0, n);
  out.new_lattice = out.new_basis.rows ? saturate(integral_rows(out.new_basis)) : IntMatrix(0, n);
  return out;
}

IntMatrix kernel_lattice(const DegeneracySetup& s) { return integer_right_kernel(s.delta.num); }

Int CongruenceModule::order() const {
  Int o = 1;
  for (const auto& d : invariants) o *= d;
  return o;
}

namespace {

// Matrix of an operator (column action) restricted to an invariant row lattice.
IntMatrix restrict_op(const IntMatrix& op, const IntMatrix& basis) {
  QMatrix c = coordinates(to_q(basis * transpose(op)), to_q(basis));
  return to_int(c);
}

bool maps_into(const IntMatrix& op, const IntMatrix& from, const QMatrix& target) {
  if (from.rows == 0) return true;
  QMatrix img = to_q(from * transpose(op));
  if (img.is_zero()) return true;
  if (target.rows == 0) return false;
  QMatrix sol = solve(transpose(target), transpose(img));
  if (transpose(sol) * target != img) return false;
  return is_integral(sol);
}

}  // namespace

CongruenceModule congruence_module(const DegeneracySetup& s) {
  CongruenceModule out;
  std::size_t n = s.u_space.rank();
  IntMatrix k = kernel_lattice(s);
  QMatrix gu = s.u_space.gram_q();
  if (k.rows == 0) {
    out.u_prime = IntMatrix::identity(n);
  } else {
    QMatrix perp = right_kernel(to_q(k) * gu);
    out.u_prime = perp.rows ? saturate(integral_rows(perp)) : IntMatrix(0, n);
  }
  QMatrix gens = scaled(transpose(delta_dual_delta(s)), Rat(Rat(1) / Rat(s.e())));
  out.target = out.u_prime.rows ? rational_lattice_intersection(to_q(out.u_prime), gens) : QMatrix(0, n);
  ensure(out.target.rows == out.u_prime.rows, "congruence_module: E^{-1} delta^v delta (U) does not span U'");
  if (out.u_prime.rows > 0) {
    IntMatrix coords = to_int(coordinates(out.target, to_q(out.u_prime)));
    for (const auto& d : invariant_factors(coords))
      if (d != 1) out.invariants.push_back(d);
  }
  OldNewSplit split = old_new_split(s);
  out.factors_through_new = true;
  out.factors_through_old = true;
  for (std::size_t i = 0; i < s.u_ops.size(); ++i) {
    ZPoly pn = split.new_lattice.rows ? minimal_polynomial(restrict_op(s.v_ops.ops[i], split.new_lattice))
                                      : ZPoly{Int(1)};
    if (!maps_into(eval_poly(pn, s.u_ops.ops[i]), out.u_prime, out.target)) out.factors_through_new = false;
    ZPoly po = split.old_lattice.rows ? minimal_polynomial(restrict_op(s.v_ops.ops[i], split.old_lattice))
                                      : ZPoly{Int(1)};
    if (!maps_into(eval_poly(po, s.u_ops.ops[i]), out.u_prime, out.target)) out.factors_through_old = false;
  }
  return out;
}

Rat lattice_content(const std::vector<Rat>& w) {
  Int num = 0, den = 1;
  for (const auto& x : w) {
    if (x == 0) continue;
    num = gcd(num, x.get_num());
    den = lcm(den, x.get_den());
  }
  ensure(num != 0, "lattice_content: zero vector");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

CongruenceReport cor22_bound(const DegeneracySetup& s, const std::vector<Int>& u, const std::vector<Int>& eta,
                             std::uint32_t ell, std::optional<Rat> m_claim) {
  std::size_t n = s.u_space.rank();
  if (u.size() != n) throw HypothesisError("cor22_bound: vector has wrong length");
  if (eta.size() != s.u_ops.size()) throw HypothesisError("cor22_bound: eigenvalue list has wrong length");
  bool nonzero = false;
  for (const auto& x : u)
    if (x != 0) nonzero = true;
  if (!nonzero) throw HypothesisError("cor22_bound: u = 0");
  for (std::size_t i = 0; i < s.u_ops.size(); ++i) {
    auto tu = mat_vec(s.u_ops.ops[i], u);
    for (std::size_t j = 0; j < n; ++j)
      if (tu[j] != eta[i] * u[j])
        throw HypothesisError("cor22_bound: u is not an eigenvector of " + s.u_ops.labels[i]);
  }
  std::vector<Rat> uq(u.begin(), u.end());
  std::vector<Rat> w = mat_vec(delta_dual_delta(s), uq);
  bool wz = true;
  for (const auto& x : w)
    if (x != 0) wz = false;
  if (wz) throw HypothesisError("cor22_bound: delta^v delta u = 0, u is old-degenerate, no bound");

  CongruenceReport r;
  r.ell = ell;
  if (m_claim) {
    ensure(*m_claim != 0, "cor22_bound: zero content claim");
    for (const auto& x : w)
      if (Rat(x / *m_claim).get_den() != 1)
        throw HypothesisError("cor22_bound: delta^v delta u not in m * U_Z for the claimed m");
    r.m = *m_claim;
  } else {
    r.m = lattice_content(w);
  }
  r.vm = v_ell(r.m, ell);
  r.ve = v_ell(s.e(), ell);
  // Coordinates of u in a unimodular basis whose first rows span ker delta.
  IntMatrix k = kernel_lattice(s);
  std::vector<Int> b;
  if (k.rows == 0) {
    b = u;
  } else {
    Smith sk = smith_normal_form(k);
    std::vector<Int> full(n, Int(0));
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) full[j] += u[i] * sk.v(i, j);
    b.assign(full.begin() + static_cast<long>(k.rows), full.end());
  }
  Int g = 0;
  for (const auto& x : b) g = gcd(g, x);
  ensure(g != 0, "cor22_bound: u lies in ker delta");
  r.vcurly = v_ell(g, ell);
  ensure(!r.vm.infinite, "cor22_bound: zero content");
  r.n0 = r.vm.value - r.ve.value - r.vcurly.value;
  r.modulus = 1;
  if (r.n0 > 0) {
    mpz_ui_pow_ui(r.modulus.get_mpz_t(), ell, static_cast<unsigned long>(r.n0));
    for (std::size_t i = 0; i < eta.size(); ++i) {
      Int v = eta[i] % r.modulus;
      if (v < 0) v += r.modulus;
      r.character.emplace_back(s.u_ops.labels[i], v);
    }
  }
  return r;
}

std::string CongruenceReport::to_json() const {
  nlohmann::ordered_json j;
  j["ell"] = ell;
  j["m_num"] = int_json(m.get_num());
  j["m_den"] = int_json(m.get_den());
  j["vE"] = ve.value;
  j["vCurlyE"] = vcurly.value;
  j["n0"] = n0;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& [label, v] : character) arr.push_back({{"label", label}, {"value_mod", int_json(v)}});
  j["character"] = arr;
  return j.dump();
}

}  // namespace lr
