#include <numeric>

#include "doctest.h"
#include "lr/errors.hpp"
#include "lr/exact/fp.hpp"
#include "lr/exact/poly.hpp"
#include "lr/quaternion/brandt.hpp"
#include "lr/quaternion/short_vectors.hpp"
#include "support.hpp"

using namespace lr;
using namespace lr::quat;

namespace {

struct Space {
  ClassSet cs;
  ThetaTable theta;
};

const Space& space(long p) {
  static std::map<long, Space> cache;
  auto it = cache.find(p);
  if (it == cache.end()) {
    Algebra alg = build_algebra(p);
    ClassSet cs = ideal_classes(alg, maximal_order(alg));
    ThetaTable th(alg, cs.objects(), 50);
    it = cache.emplace(p, Space{cs, th}).first;
  }
  return it->second;
}

// Left-regular representation: an independent route to the product.
QMatrix left_regular(const Algebra& alg, const Elt& x) {
  const Rat a(alg.a), b(alg.b);
  QMatrix m(4, 4);
  // columns: images of 1, i, j, k
  Rat rows[4][4] = {{x[0], a * x[1], b * x[2], -a * b * x[3]},
                    {x[1], x[0], b * x[3], -b * x[2]},
                    {x[2], -a * x[3], x[0], a * x[1]},
                    {x[3], -x[2], x[1], x[0]}};
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = rows[r][c];
  return m;
}

// Primitive solution of z^2 = a x^2 + b y^2 modulo m = ell^k.
bool locally_solvable(long a, long b, long ell, long m) {
  for (long x = 0; x < m; ++x)
    for (long y = 0; y < m; ++y)
      for (long z = 0; z < m; ++z) {
        if (x % ell == 0 && y % ell == 0 && z % ell == 0) continue;
        long lhs = (z * z - a * x * x - b * y * y) % m;
        if (lhs == 0) return true;
      }
  return false;
}

bool squarefree(long n) {
  n = std::labs(n);
  for (long d = 2; d * d <= n; ++d)
    if (n % (d * d) == 0) return false;
  return true;
}

}  // namespace

TEST_CASE("algebra parameters follow the residue class of p") {
  auto a11 = build_algebra(11);
  CHECK(a11.a == -1);
  CHECK(a11.b == -11);
  auto a2 = build_algebra(2);
  CHECK(a2.a == -1);
  CHECK(a2.b == -1);
  auto a13 = build_algebra(13);
  CHECK(a13.a == -2);
  CHECK(a13.b == -13);
  auto a17 = build_algebra(17);
  CHECK(a17.a == -3);
  CHECK(a17.b == -17);
  CHECK_THROWS_AS(build_algebra(15), HypothesisError);
  CHECK_THROWS_AS(build_algebra(1), HypothesisError);
  for (long p = 2; p < 400; ++p)
    if (fp::is_prime(static_cast<fp::u64>(p))) CHECK(ramified_primes(build_algebra(p)) == std::vector<long>{p});
}

TEST_CASE("Hilbert symbol agrees with local solvability and the product formula") {
  for (long a = -12; a <= 12; ++a)
    for (long b = -12; b <= 12; ++b) {
      if (a == 0 || b == 0 || !squarefree(a) || !squarefree(b)) continue;
      for (long ell : {3L, 5L}) {
        bool sol = locally_solvable(a, b, ell, ell * ell * ell);
        CHECK((hilbert_symbol(a, b, ell) == 1) == sol);
      }
      CHECK((hilbert_symbol(a, b, 2) == 1) == locally_solvable(a, b, 2, 16));
      // product over all places
      int prod = (a < 0 && b < 0) ? -1 : 1;
      for (long ell = 2; ell <= 13; ++ell)
        if (fp::is_prime(static_cast<fp::u64>(ell))) prod *= hilbert_symbol(a, b, ell);
      CHECK(prod == 1);
    }
}

TEST_CASE("maximal orders: examples and discriminant certificate") {
  const Rat h(1, 2);
  auto a11 = build_algebra(11);
  Order o11 = maximal_order(a11);
  QMatrix expected = rational_hnf(from_elts({one(), {0, 1, 0, 0}, {0, h, h, 0}, {h, 0, 0, h}}));
  CHECK(o11.basis == expected);
  CHECK(trace_form_det(a11, o11.basis) == 121);
  auto a2 = build_algebra(2);
  Order o2 = maximal_order(a2);
  CHECK(o2.basis == rational_hnf(from_elts({one(), {0, 1, 0, 0}, {0, 0, 1, 0}, {h, h, h, h}})));
  CHECK(trace_form_det(a2, o2.basis) == 4);
  for (long p = 2; p < 200; ++p) {
    if (!fp::is_prime(static_cast<fp::u64>(p))) continue;
    auto alg = build_algebra(p);
    Order o = maximal_order(alg);
    CHECK(trace_form_det(alg, o.basis) == Rat(p * p));
    // closure through the left-regular representation
    for (std::size_t s = 0; s < 4; ++s) {
      Elt x = row_elt(o.basis, s);
      CHECK(trd(x).get_den() == 1);
      QMatrix imgs = transpose(left_regular(alg, x) * transpose(o.basis));
      CHECK(is_integral(coordinates(imgs, o.basis)));
    }
  }
  CHECK_THROWS_AS(make_order(a11, from_elts({one(), {0, h, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}})), InvariantError);
}

TEST_CASE("left-regular product matches the multiplication rule") {
  testsupport::Gen g(101);
  auto alg = build_algebra(23);
  for (int t = 0; t < 200; ++t) {
    Elt x, y;
    for (auto& c : x) c = Rat(g.range(-5, 5));
    for (auto& c : y) c = Rat(g.range(-5, 5));
    Elt xy = mul(alg, x, y);
    QMatrix col(4, 1);
    for (std::size_t k = 0; k < 4; ++k) col(k, 0) = y[k];
    QMatrix r = left_regular(alg, x) * col;
    for (std::size_t k = 0; k < 4; ++k) CHECK(r(k, 0) == xy[k]);
    CHECK(nrd(alg, xy) == nrd(alg, x) * nrd(alg, y));
    CHECK(mul(alg, x, conj(x))[0] == nrd(alg, x));
  }
}

TEST_CASE("short vector enumeration matches a box scan") {
  testsupport::Gen g(103);
  for (int t = 0; t < 25; ++t) {
    // G = A^T A + I with small A, positive definite and integral
    IntMatrix a = g.matrix(3, 3, -2, 2);
    IntMatrix gi = transpose(a) * a + IntMatrix::identity(3);
    QMatrix gq = to_q(gi);
    long nmax = 12;
    std::vector<Int> th = theta_counts(gq, nmax);
    std::vector<Int> brute(static_cast<std::size_t>(nmax + 1), 0);
    for (long x = -12; x <= 12; ++x)
      for (long y = -12; y <= 12; ++y)
        for (long z = -12; z <= 12; ++z) {
          if (x == 0 && y == 0 && z == 0) continue;
          std::vector<Int> v{x, y, z};
          Int val = 0;
          for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) val += v[i] * gi(i, j) * v[j];
          if (val <= nmax) brute[val.get_ui()] += 1;
        }
    CHECK(th == brute);
  }
}

TEST_CASE("ideal classes: examples, mass and unit counts") {
  const auto& s11 = space(11).cs;
  CHECK(s11.size() == 2);
  CHECK(s11.weights == std::vector<long>{4, 6});
  CHECK(s11.mass() == Rat(5, 12));
  auto a2 = build_algebra(2);
  ClassSet s2 = ideal_classes(a2, maximal_order(a2));
  CHECK(s2.size() == 1);
  CHECK(s2.weights == std::vector<long>{24});
  // Hurwitz units by a coordinate box scan
  long hurwitz = 0;
  Order o2 = maximal_order(a2);
  for (long c0 = -2; c0 <= 2; ++c0)
    for (long c1 = -2; c1 <= 2; ++c1)
      for (long c2 = -2; c2 <= 2; ++c2)
        for (long c3 = -2; c3 <= 2; ++c3)
          if (nrd(a2, combine(o2.basis, {c0, c1, c2, c3})) == 1) ++hurwitz;
  CHECK(hurwitz == 24);
  for (long p = 5; p < 110; ++p) {
    if (!fp::is_prime(static_cast<fp::u64>(p))) continue;
    auto alg = build_algebra(p);
    ClassSet cs = ideal_classes(alg, maximal_order(alg));
    CHECK(cs.mass() == Rat(p - 1) / 24);
    for (std::size_t i = 0; i < cs.size(); ++i)
      for (std::size_t j = i + 1; j < cs.size(); ++j) CHECK_FALSE(find_isomorphism(alg, cs.ideals[i], cs.ideals[j]));
  }
}

TEST_CASE("neighbors: q+1 distinct sublattices of norm q") {
  for (long p : {11L, 23L}) {
    const auto& cs = space(p).cs;
    for (long q : {2L, 3L, 5L}) {
      auto e = splitting_idempotent(cs.alg, cs.order, q);
      REQUIRE(e);
      for (const Ideal& id : cs.ideals) {
        auto nb = neighbors(cs.alg, cs.order, id, q, *e);
        REQUIRE(nb.size() == static_cast<std::size_t>(q + 1));
        for (std::size_t a = 0; a < nb.size(); ++a) {
          CHECK(nb[a].norm == id.norm * q);
          CHECK(quat::lattice_contains(id.basis, nb[a].basis));
          CHECK(quat::lattice_contains(nb[a].basis, scaled(id.basis, Rat(q))));
          for (std::size_t b = a + 1; b < nb.size(); ++b) CHECK(nb[a].basis != nb[b].basis);
        }
      }
    }
  }
  // q ramified: no nontrivial idempotent
  const auto& cs = space(11).cs;
  CHECK_FALSE(splitting_idempotent(cs.alg, cs.order, 11));
}

TEST_CASE("Brandt matrices: examples") {
  const auto& th = space(11).theta;
  CHECK(th.brandt(1) == IntMatrix::identity(2));
  IntMatrix b2 = th.brandt(2);
  for (std::size_t i = 0; i < 2; ++i) CHECK(b2(i, 0) + b2(i, 1) == 3);
  // eigenvalues 3 and -2
  CHECK(char_poly(b2) == ZPoly{Int(-6), Int(-1), Int(1)});
  CHECK(th.brandt(2) * th.brandt(3) == th.brandt(6));
  CHECK(th.brandt(3) * th.brandt(2) == th.brandt(6));
  CHECK_THROWS_AS(th.brandt(11), HypothesisError);
  CHECK_THROWS_AS(th.brandt(22), HypothesisError);
}

TEST_CASE("Brandt matrices: Hecke relations, adjointness, Eisenstein row sums") {
  for (long p : {11L, 23L, 29L}) {
    const auto& sp = space(p);
    const auto& w = sp.cs.weights;
    std::map<long, IntMatrix> b;
    for (long n = 1; n <= 50; ++n)
      if (n % p != 0) b[n] = sp.theta.brandt(n);
    for (auto& [n, m] : b) {
      Int sigma = 0;
      for (long d = 1; d <= n; ++d)
        if (n % d == 0) sigma += d;
      for (std::size_t i = 0; i < m.rows; ++i) {
        Int row = 0;
        for (std::size_t j = 0; j < m.cols; ++j) {
          row += m(i, j);
          CHECK(w[j] * m(i, j) == w[i] * m(j, i));
          CHECK(m(i, j) >= 0);
        }
        CHECK(row == sigma);
      }
    }
    for (auto& [m, bm] : b)
      for (auto& [n, bn] : b) {
        CHECK(bm * bn == bn * bm);
        if (std::gcd(m, n) == 1 && b.count(m * n)) CHECK(bm * bn == b[m * n]);
      }
    for (long r : primes_coprime(50, p)) {
      long prev = 1, cur = r;
      while (cur * r <= 50) {
        CHECK(b[cur * r] == b[r] * b[cur] - scaled(b[prev], Int(r)));
        prev = cur;
        cur *= r;
      }
    }
  }
}

TEST_CASE("weighted pairing and the Eisenstein system") {
  auto a2 = build_algebra(2);
  ClassSet s2 = ideal_classes(a2, maximal_order(a2));
  CHECK(weighted_pairing(s2.weights).gram_q()(0, 0) == Rat(1, 24));
  const auto& s11 = space(11);
  auto pl = weighted_pairing(s11.cs.weights);
  CHECK(pl.gram_q()(0, 0) == Rat(1, 4));
  CHECK(pl.gram_q()(1, 1) == Rat(1, 6));
  auto an = dual_annihilators(pl);
  CHECK(an.a == 12);
  CHECK(an.b == 1);
  auto es = eisenstein_system(s11.theta, {2, 3});
  CHECK(es[0].second == 3);
  CHECK(es[1].second == 4);
  auto all = eisenstein_system(s11.theta, primes_coprime(50, 11));
  CHECK(all.size() == 14);
  HeckeFamily fam;
  for (long r : primes_coprime(50, 11)) fam.add("T" + std::to_string(r), s11.theta.brandt(r));
  validate_family(pl, fam);
}
