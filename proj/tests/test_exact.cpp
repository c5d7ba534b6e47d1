#include <functional>

#include "doctest.h"
#include "lr/errors.hpp"
#include "lr/exact/eigensystem.hpp"
#include "lr/exact/fp.hpp"
#include "lr/exact/gf.hpp"
#include "lr/exact/linalg.hpp"
#include "lr/exact/modmat.hpp"
#include "lr/exact/number_field.hpp"
#include "lr/exact/poly.hpp"
#include "lr/exact/valuation.hpp"
#include "lr/kernels/mod_axpy.hpp"
#include "support.hpp"

using namespace lr;

namespace {

IntMatrix M(std::vector<std::vector<long>> rows) {
  IntMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

// Determinantal divisors: gcd of all k x k minors, by direct enumeration.
std::vector<Int> determinantal_invariants(const IntMatrix& m) {
  std::size_t lim = std::min(m.rows, m.cols);
  std::vector<Int> dk(lim + 1, Int(0));
  dk[0] = 1;
  for (std::size_t k = 1; k <= lim; ++k) {
    std::vector<std::size_t> rs, cs;
    Int g = 0;
    std::function<void(std::size_t)> rows_pick, cols_pick;
    rows_pick = [&](std::size_t start) {
      if (rs.size() == k) {
        cols_pick(0);
        return;
      }
      for (std::size_t i = start; i < m.rows; ++i) {
        rs.push_back(i);
        rows_pick(i + 1);
        rs.pop_back();
      }
    };
    cols_pick = [&](std::size_t start) {
      if (cs.size() == k) {
        QMatrix sub(k, k);
        for (std::size_t a = 0; a < k; ++a)
          for (std::size_t b = 0; b < k; ++b) sub(a, b) = m(rs[a], cs[b]);
        g = gcd(g, det(sub).get_num());
        return;
      }
      for (std::size_t j = start; j < m.cols; ++j) {
        cs.push_back(j);
        cols_pick(j + 1);
        cs.pop_back();
      }
    };
    rows_pick(0);
    dk[k] = g;
  }
  std::vector<Int> inv(lim, Int(0));
  for (std::size_t k = 1; k <= lim; ++k)
    inv[k - 1] = dk[k] == 0 ? Int(0) : Int(dk[k] / dk[k - 1]);
  return inv;
}

bool unimodular(const IntMatrix& u) {
  Rat d = det(to_q(u));
  return d == 1 || d == -1;
}

}  // namespace

TEST_CASE("smith normal form: worked examples") {
  CHECK(invariant_factors(IntMatrix::identity(2)) == std::vector<Int>{1, 1});
  CHECK(invariant_factors(M({{2, 0}, {0, 4}})) == std::vector<Int>{2, 4});
  auto d = invariant_factors(M({{2, 0}, {0, 3}}));
  CHECK(d == std::vector<Int>{1, 6});
  CHECK(d == determinantal_invariants(M({{2, 0}, {0, 3}})));
}

TEST_CASE("smith normal form: transforms and determinantal oracle") {
  testsupport::Gen g(101);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t r = static_cast<std::size_t>(g.range(1, 4)), c = static_cast<std::size_t>(g.range(1, 4));
    IntMatrix m = g.matrix(r, c, -6, 6);
    Smith s = smith_normal_form(m);
    CHECK(s.u * m * s.v == s.d);
    CHECK(s.v * s.v_inv == IntMatrix::identity(c));
    CHECK(unimodular(s.u));
    CHECK(unimodular(s.v));
    for (std::size_t i = 0; i + 1 < s.diag.size(); ++i)
      if (s.diag[i] != 0) CHECK(s.diag[i + 1] % s.diag[i] == 0);
    CHECK(s.diag == determinantal_invariants(m));
    // invariance under unimodular change of basis
    IntMatrix m2 = g.unimodular(r) * m * g.unimodular(c);
    CHECK(invariant_factors(m2) == s.diag);
  }
}

TEST_CASE("hnf and integer kernels") {
  IntMatrix h = hnf_rows(M({{2, 4, 0}, {0, 6, 0}, {2, 10, 0}}));
  CHECK(h.rows == 2);
  CHECK(lattice_contains(h, M({{2, 4, 0}, {0, 6, 0}})));
  testsupport::Gen g(7);
  for (int trial = 0; trial < 40; ++trial) {
    IntMatrix m = g.matrix(static_cast<std::size_t>(g.range(1, 4)), 4, -5, 5);
    IntMatrix k = integer_right_kernel(m);
    CHECK(k.rows == 4 - rank(m));
    CHECK((m * transpose(k)).is_zero());
    CHECK(saturate(k) == hnf_rows(k));
    // hnf is a canonical form of the row lattice
    IntMatrix u = g.unimodular(m.rows);
    CHECK(hnf_rows(u * m) == hnf_rows(m));
  }
}

TEST_CASE("saturate: worked examples and properties") {
  CHECK(saturate(M({{2, 0}})) == M({{1, 0}}));
  CHECK(saturate(M({{1, 1}})) == M({{1, 1}}));
  IntMatrix s = saturate(M({{2, 4, 0}, {0, 6, 0}}));
  CHECK(s.rows == 2);
  // torsion-free quotient: all invariant factors of the basis equal 1
  for (const auto& d : invariant_factors(s)) CHECK(d == 1);
  CHECK(saturate(s) == s);
  CHECK(lattice_contains(s, M({{2, 4, 0}, {0, 6, 0}})));
  testsupport::Gen g(11);
  for (int trial = 0; trial < 40; ++trial) {
    IntMatrix b = g.matrix(2, 4, -6, 6);
    if (rank(b) < 2) continue;
    IntMatrix sb = saturate(b);
    CHECK(saturate(sb) == sb);
    for (const auto& d : invariant_factors(sb)) CHECK(d == 1);
    CHECK(lattice_contains(sb, b));
  }
}

TEST_CASE("lattice intersection") {
  IntMatrix a = M({{2, 0}, {0, 1}}), b = M({{1, 0}, {0, 3}});
  CHECK(lattice_intersection(a, b) == M({{2, 0}, {0, 3}}));
  QMatrix qa(1, 2), qb(1, 2);
  qa(0, 0) = Rat(1, 2);
  qb(0, 0) = Rat(1, 3);
  QMatrix qi = rational_lattice_intersection(qa, qb);
  CHECK(qi.rows == 1);
  CHECK(qi(0, 0) == 1);
}

TEST_CASE("rational linear algebra") {
  QMatrix a = to_q(M({{1, 2}, {3, 4}}));
  CHECK(det(a) == -2);
  CHECK(a * inverse(a) == QMatrix::identity(2));
  CHECK_THROWS_AS(inverse(to_q(M({{1, 2}, {2, 4}}))), InvariantError);
  QMatrix k = right_kernel(to_q(M({{1, 2}, {2, 4}})));
  CHECK(k.rows == 1);
  CHECK((to_q(M({{1, 2}, {2, 4}})) * transpose(k)).is_zero());
}

TEST_CASE("char_poly: examples, evaluation oracle and Cayley-Hamilton") {
  CHECK(char_poly(M({{3, 0}, {0, -2}})) == ZPoly{-6, -1, 1});
  CHECK(char_poly(IntMatrix(3, 3)) == ZPoly{0, 0, 0, 1});
  testsupport::Gen g(5);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = static_cast<std::size_t>(g.range(1, 5));
    IntMatrix m = g.matrix(n, n, -4, 4);
    ZPoly f = char_poly(m);
    CHECK(eval_poly(f, m).is_zero());
    for (long x = -2; x <= static_cast<long>(n); ++x) {
      QMatrix xm = to_q(m);
      for (auto& e : xm.a) e = -e;
      for (std::size_t i = 0; i < n; ++i) xm(i, i) += x;
      CHECK(Rat(eval_poly(f, Int(x))) == det(xm));
    }
  }
}

TEST_CASE("factor over Z") {
  auto f = factor_z(ZPoly{-6, -1, 1});
  REQUIRE(f.size() == 2);
  CHECK(f[0].f == ZPoly{-3, 1});
  CHECK(f[1].f == ZPoly{2, 1});
  auto h = factor_z(ZPoly{-1, 0, 0, 0, 1});
  CHECK(h.size() == 3);
  CHECK(factor_z(ZPoly{1, 0, 0, 0, 1}).size() == 1);
  testsupport::Gen g(3);
  for (int trial = 0; trial < 25; ++trial) {
    ZPoly prod{1};
    int parts = static_cast<int>(g.range(1, 4));
    for (int i = 0; i < parts; ++i) {
      ZPoly q(static_cast<std::size_t>(g.range(2, 4)));
      for (auto& c : q) c = g.range(-5, 5);
      q.back() = 1;
      prod = zmul(prod, q);
      if (g.range(0, 3) == 0) prod = zmul(prod, q);
    }
    auto fac = factor_z(prod);
    ZPoly back{1};
    for (const auto& fz : fac)
      for (unsigned m = 0; m < fz.mult; ++m) back = zmul(back, fz.f);
    CHECK(back == primitive_part(prod));
    for (const auto& fz : fac) {
      // no factor of degree >= 2 has a rational root +-1, +-2 (cheap partial oracle)
      if (degree(fz.f) >= 2)
        for (long r : {-2L, -1L, 0L, 1L, 2L}) CHECK(eval_poly(fz.f, Int(r)) != 0);
    }
  }
}

TEST_CASE("polynomials mod p: factorization and irreducibility") {
  testsupport::Gen g(9);
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    for (int trial = 0; trial < 20; ++trial) {
      fp::Poly f(static_cast<std::size_t>(g.range(2, 8)));
      for (auto& c : f) c = static_cast<std::uint32_t>(g.range(0, p - 1));
      f.back() = 1;
      auto fac = fp::factor(f, p);
      fp::Poly back{1};
      for (const auto& x : fac) {
        CHECK(fp::is_irreducible(x.f, p));
        for (unsigned m = 0; m < x.mult; ++m) back = fp::mul(back, x.f, p);
      }
      CHECK(back == f);
      // linear factors are exactly the roots (enumeration oracle)
      std::size_t lin = 0, roots = 0;
      for (const auto& x : fac)
        if (fp::degree(x.f) == 1) ++lin;
      for (std::uint32_t v = 0; v < p; ++v)
        if (fp::eval(f, v, p) == 0) ++roots;
      CHECK(lin == roots);
    }
  }
}

TEST_CASE("finite fields: canonical moduli, axioms, roots") {
  CHECK(least_irreducible(2, 2) == fp::Poly{1, 1, 1});
  CHECK(least_irreducible(3, 2) == fp::Poly{1, 0, 1});
  CHECK(least_irreducible(2, 3) == fp::Poly{1, 1, 0, 1});
  testsupport::Gen g(13);
  for (auto [p, k] : std::vector<std::pair<std::uint32_t, unsigned>>{{2, 3}, {3, 2}, {5, 2}, {7, 3}}) {
    GF F = GF::canonical(p, k);
    auto rnd = [&] {
      GF::Elem e(k);
      for (auto& c : e) c = static_cast<std::uint32_t>(g.range(0, p - 1));
      return e;
    };
    for (int t = 0; t < 30; ++t) {
      auto a = rnd(), b = rnd(), c = rnd();
      CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
      CHECK(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)));
      if (!F.is_zero(a)) CHECK(F.mul(a, F.inv(a)) == F.one());
      CHECK(F.pow(a, F.order()) == a);
    }
    // roots of random polynomials versus full enumeration of the field
    for (int t = 0; t < 10; ++t) {
      fp::Poly f(static_cast<std::size_t>(g.range(2, 5)));
      for (auto& c : f) c = static_cast<std::uint32_t>(g.range(0, p - 1));
      f.back() = 1;
      auto rts = roots_in(F, f);
      std::size_t brute = 0;
      std::size_t total = 1;
      for (unsigned i = 0; i < k; ++i) total *= p;
      for (std::size_t idx = 0; idx < total; ++idx) {
        GF::Elem e(k);
        std::size_t v = idx;
        for (unsigned i = 0; i < k; ++i) {
          e[i] = static_cast<std::uint32_t>(v % p);
          v /= p;
        }
        if (F.is_zero(F.eval(f, e))) ++brute;
      }
      CHECK(rts.size() == brute);
      for (const auto& r : rts) CHECK(F.is_zero(F.eval(f, r)));
    }
  }
}

TEST_CASE("kernel_mod_ell: worked examples and enumeration oracle") {
  GF F2 = GF::canonical(2, 1), F5 = GF::canonical(5, 1);
  CHECK(kernel_mod_ell(F2, gf_from_int(F2, IntMatrix(3, 3))).rows == 3);
  CHECK(kernel_mod_ell(F5, gf_from_int(F5, IntMatrix::identity(3))).rows == 0);
  GFMatrix k = kernel_mod_ell(F2, gf_from_int(F2, M({{1, 1}, {1, 1}})));
  REQUIRE(k.rows == 1);
  CHECK(k(0, 0) == F2.one());
  CHECK(k(0, 1) == F2.one());
  testsupport::Gen g(17);
  for (int t = 0; t < 20; ++t) {
    IntMatrix m = g.matrix(3, 4, 0, 2);
    GF F3 = GF::canonical(3, 1);
    GFMatrix kk = kernel_mod_ell(F3, gf_from_int(F3, m));
    std::size_t count = 0;
    for (int v = 0; v < 81; ++v) {
      long x[4] = {v % 3, (v / 3) % 3, (v / 9) % 3, (v / 27) % 3};
      bool zero = true;
      for (std::size_t i = 0; i < 3; ++i) {
        long s = 0;
        for (std::size_t j = 0; j < 4; ++j) s += m(i, j).get_si() * x[j];
        if (s % 3 != 0) zero = false;
      }
      if (zero) ++count;
    }
    std::size_t expect = 1;
    for (std::size_t i = 0; i < kk.rows; ++i) expect *= 3;
    CHECK(count == expect);
  }
}

TEST_CASE("simd kernels agree with the scalar path") {
  testsupport::Gen g(23);
  for (std::uint32_t p : {2u, 3u, 13u, 251u, 32749u}) {
    for (std::size_t n : {1u, 7u, 8u, 9u, 33u, 100u}) {
      std::vector<std::uint32_t> x(n), y(n);
      for (auto& v : x) v = static_cast<std::uint32_t>(g.range(0, p - 1));
      for (auto& v : y) v = static_cast<std::uint32_t>(g.range(0, p - 1));
      auto a = static_cast<std::uint32_t>(g.range(0, p - 1));
      auto y1 = y, y2 = y, y3 = y;
      kernels::axpy_mod_scalar(y1.data(), x.data(), a, p, n);
      kernels::axpy_mod_avx2(y2.data(), x.data(), a, p, n);
      kernels::axpy_mod(y3.data(), x.data(), a, p, n);
      CHECK(y1 == y2);
      CHECK(y1 == y3);
      kernels::scale_mod_scalar(y1.data(), a, p, n);
      kernels::scale_mod_avx2(y2.data(), a, p, n);
      CHECK(y1 == y2);
    }
  }
}

TEST_CASE("valuation axioms") {
  CHECK(v_ell(Int(0), 5).infinite);
  CHECK(v_ell(Int(50), 5).value == 2);
  CHECK(v_ell(Rat(3, 25), 5).value == -2);
  testsupport::Gen g(29);
  for (int t = 0; t < 200; ++t) {
    Rat x(g.range(-500, 500), g.range(1, 300)), y(g.range(-500, 500), g.range(1, 300));
    x.canonicalize();
    y.canonicalize();
    for (std::uint32_t l : {2u, 3u, 5u}) {
      CHECK(v_ell(Rat(x * y), l) == v_ell(x, l) + v_ell(y, l));
      CHECK(vmin(v_ell(x, l), v_ell(y, l)) <= v_ell(Rat(x + y), l));
    }
  }
}

TEST_CASE("number field places and valuations") {
  NumberField K(ZPoly{1, 0, 1});  // t^2 + 1
  auto P5 = places_above(K, 5);
  REQUIRE(P5.size() == 2);
  NumberField::Elem two_plus_i{Rat(2), Rat(1)};
  long v0 = place_valuation(K, P5[0], two_plus_i).value, v1 = place_valuation(K, P5[1], two_plus_i).value;
  CHECK(v0 + v1 == 1);
  auto P2 = places_above(K, 2);
  REQUIRE(P2.size() == 1);
  CHECK(P2[0].s == 2);
  CHECK(place_valuation(K, P2[0], NumberField::Elem{Rat(1), Rat(1)}).value == 1);
  CHECK(place_valuation(K, P2[0], K.from_rat(2)).value == 2);
  auto P3 = places_above(K, 3);
  REQUIRE(P3.size() == 1);
  CHECK(place_valuation(K, P3[0], K.from_rat(Rat(1, 3))).value == -1);
  // residue map is a ring homomorphism on 3-integral elements
  GF F9 = GF::canonical(3, 2);
  auto root = roots_in(F9, P3[0].phi)[0];
  NumberField::Elem a{Rat(1), Rat(2)}, b{Rat(2), Rat(5)};
  CHECK(place_residue(K, P3[0], F9, root, K.mul(a, b)) ==
        F9.mul(place_residue(K, P3[0], F9, root, a), place_residue(K, P3[0], F9, root, b)));
  // x^2 - 17 at 2: two primes with the same residue, refused rather than guessed
  NumberField K17(ZPoly{-17, 0, 1});
  CHECK_THROWS_AS(places_above(K17, 2), HypothesisError);
}

TEST_CASE("joint eigensystems mod ell") {
  auto d = joint_eigensystems_mod({M({{1, 0}, {0, 2}})}, 5);
  REQUIRE(d.size() == 2);
  for (const auto& e : d) CHECK(verify_eigensystem({M({{1, 0}, {0, 2}})}, e));
  auto rot = joint_eigensystems_mod({M({{0, -1}, {1, 0}})}, 3);
  REQUIRE(rot.size() == 1);
  CHECK(rot[0].k == 2);
  CHECK(verify_eigensystem({M({{0, -1}, {1, 0}})}, rot[0]));
  // two commuting operators whose joint systems are not separated by either alone
  IntMatrix a = M({{1, 0, 0}, {0, 1, 0}, {0, 0, 2}}), b = M({{1, 0, 0}, {0, 3, 0}, {0, 0, 3}});
  auto j = joint_eigensystems_mod({a, b}, 7);
  CHECK(j.size() == 3);
  for (const auto& e : j) CHECK(verify_eigensystem({a, b}, e));
  // Galois conjugation: to_canonical_field recovers prime-field tuples
  GF F = GF::canonical(5, 2);
  auto t = to_canonical_field(F, {F.from_u(3)}, 1);
  CHECK(t[0] == GF::Elem{3});
}
