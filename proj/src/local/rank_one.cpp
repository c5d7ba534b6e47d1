#include "lr/local/rank_one.hpp"

#include <algorithm>
#include <functional>

#include "lr/errors.hpp"
#include "lr/exact/linalg.hpp"

namespace lr::local {

namespace {

Rat qpow(long q, long e) {
  Rat r = 1;
  for (long i = 0; i < std::labs(e); ++i) r *= q;
  return e < 0 ? Rat(1 / r) : r;
}

bool rat_sqrt(const Rat& x, Rat& out) {
  if (x < 0) return false;
  Int n = isqrt(x.get_num()), d = isqrt(x.get_den());
  if (n * n != x.get_num() || d * d != x.get_den()) return false;
  out = Rat(n) / d;
  return true;
}

QMatrix mat2(const Rat& a, const Rat& b, const Rat& c, const Rat& d) {
  QMatrix m(2, 2);
  m(0, 0) = a;
  m(0, 1) = b;
  m(1, 0) = c;
  m(1, 1) = d;
  return m;
}

std::string name_of(long q, const Rat& t, const Rat& tp) {
  bool kfix = t == qpow(q, 3), kpfix = tp == q;
  if (kfix && kpfix) return "tr";
  if (kfix) return "pi_x";
  if (kpfix) return "pi_+";
  return "St";
}

}  // namespace

std::vector<Rat> rational_roots(const Rat& b, const Rat& c) {
  Rat disc = b * b - 4 * c, s;
  if (!rat_sqrt(disc, s)) return {};
  std::vector<Rat> r{Rat((-b - s) / 2), Rat((-b + s) / 2)};
  if (r[0] == r[1]) r.pop_back();
  return r;
}

bool relation_t(long q, const Rat& t) { return (t + 1) * (t - qpow(q, 3)) == 0; }
bool relation_tp(long q, const Rat& tp) { return (tp + 1) * (tp - q) == 0; }

bool relations_hold(long q, const QMatrix& T, const QMatrix& Tp) {
  QMatrix id = QMatrix::identity(T.rows);
  QMatrix r1 = (T + id) * (T - scaled(id, qpow(q, 3)));
  QMatrix r2 = (Tp + id) * (Tp - scaled(id, Rat(q)));
  return r1.is_zero() && r2.is_zero();
}

std::vector<IwahoriCharacter> iwahori_rank1_characters(long q) {
  if (q < 2) throw HypothesisError("q must be at least 2");
  Rat q3 = qpow(q, 3);
  // (X + 1)(X - c) = X^2 + (1 - c) X - c
  auto ts = rational_roots(1 - q3, -q3);
  auto tps = rational_roots(Rat(1 - q), Rat(-q));
  ensure(ts.size() == 2 && tps.size() == 2, "quadratic relations must have two rational roots");
  std::vector<IwahoriCharacter> out;
  for (const Rat& t : ts)
    for (const Rat& tp : tps) {
      ensure(relation_t(q, t) && relation_tp(q, tp), "root fails its relation");
      out.push_back({name_of(q, t, tp), t, tp});
    }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    auto rank = [](const std::string& n) { return n == "tr" ? 0 : n == "St" ? 1 : n == "pi_x" ? 2 : 3; };
    return rank(x.name) < rank(y.name);
  });
  return out;
}

PrincipalModule principal_series_module(long q, const Rat& a) {
  if (a == 0) throw HypothesisError("a must be nonzero");
  Rat q3 = qpow(q, 3);
  // T = [[-1, 0], [1, q^3]], T' = [[q, y], [0, -1]]: trace(TT') = y - q^3 - q
  Rat y = qpow(q, 2) * (a + 1 / a) + q3 + q;
  PrincipalModule m{a, mat2(-1, 0, 1, q3), mat2(Rat(q), y, 0, -1)};
  ensure(relations_hold(q, m.T, m.Tp), "module violates the quadratic relations");
  return m;
}

ModuleAnalysis analyze_module(long q, const PrincipalModule& m) {
  ModuleAnalysis out;
  QMatrix tt = m.T * m.Tp;
  Rat tr = tt(0, 0) + tt(1, 1), dt = tt(0, 0) * tt(1, 1) - tt(0, 1) * tt(1, 0);
  out.tt_eigenvalues = rational_roots(-tr, dt);
  if (out.tt_eigenvalues.size() == 1) out.tt_eigenvalues.push_back(out.tt_eigenvalues[0]);
  // a common eigenline of T and T'
  Rat q3 = qpow(q, 3);
  for (const Rat& lt : {Rat(-1), q3})
    for (const Rat& ltp : {Rat(-1), Rat(q)}) {
      QMatrix stack(4, 2);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          stack(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = m.T(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) - (i == j ? lt : Rat(0));
          stack(static_cast<std::size_t>(2 + i), static_cast<std::size_t>(j)) = m.Tp(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) - (i == j ? ltp : Rat(0));
        }
      if (rank(stack) < 2 && !out.reducible) {
        out.reducible = true;
        out.sub = IwahoriCharacter{name_of(q, lt, ltp), lt, ltp};
        Rat qt = m.T(0, 0) + m.T(1, 1) - lt, qtp = m.Tp(0, 0) + m.Tp(1, 1) - ltp;
        out.quotient = IwahoriCharacter{name_of(q, qt, qtp), qt, qtp};
      }
    }
  return out;
}

std::vector<Rat> reducibility_scan(long q) {
  std::vector<Rat> out;
  for (long k = -4; k <= 4; ++k)
    for (int sign : {1, -1}) {
      Rat a = sign * qpow(q, k);
      if (analyze_module(q, principal_series_module(q, a)).reducible) out.push_back(a);
    }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

QMatrix unipotent(const Rat& x, const Rat& y, const Rat& z) {
  QMatrix u = QMatrix::identity(3);
  u(0, 1) = x;
  u(0, 2) = y;
  u(1, 2) = z;
  return u;
}

// sigma(u) = w (u^-1)^T w^-1 with w = antidiag(1, -1, 1)
QMatrix sigma(const QMatrix& u) {
  QMatrix w(3, 3);
  w(0, 2) = 1;
  w(1, 1) = -1;
  w(2, 0) = 1;
  return w * transpose(inverse(u)) * inverse(w);
}

// root of an affine function of one rational variable; nullopt when the
// coefficient vanishes (then *free says whether every value works)
std::optional<Rat> affine_root(const std::function<Rat(const Rat&)>& f, bool* free) {
  // sampled away from 0 so that a = 0 never reaches the torus inverse
  Rat f1 = f(1), f2 = f(2), f3 = f(3);
  ensure(f3 - f2 == f2 - f1, "relation entry is not affine in the variable");
  Rat c = f2 - f1, f0 = f1 - c;
  *free = c == 0 && f0 == 0;
  if (c == 0) return std::nullopt;
  return Rat(-f0 / c);
}

}  // namespace

QMatrix u3_relation_lhs(long, const Rat& a, const Rat& x, const Rat& y, const Rat& z) {
  QMatrix s = QMatrix::identity(3);
  s(0, 0) = a;
  return s * sigma(unipotent(x, y, z)) * inverse(s);
}

QMatrix u3_relation_rhs(long q, const Rat& x, const Rat& y, const Rat& z) {
  QMatrix u = unipotent(x, y, z), r = QMatrix::identity(3);
  for (long i = 0; i < q; ++i) r = r * u;
  return r;
}

std::vector<UnipotentSolution> u3_unipotent_solutions(long q) {
  if (q < 2) throw HypothesisError("q must be at least 2");
  if (q % 2 == 0) throw HypothesisError("even q is not handled by the unipotent solve");
  auto diff = [&](const Rat& a, const Rat& x, const Rat& y, const Rat& z, int i, int j) {
    QMatrix d = u3_relation_lhs(q, a, x, y, z) - u3_relation_rhs(q, x, y, z);
    return d(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  };
  std::vector<UnipotentSolution> out;
  bool free = false;
  // z != 0: scale to z = 1
  {
    Rat z = 1;
    auto x = affine_root([&](const Rat& t) { return diff(1, t, 0, z, 1, 2); }, &free);
    ensure(x.has_value(), "entry (1,2) does not determine x");
    auto a = affine_root([&](const Rat& t) { return diff(t, *x, 0, z, 0, 1); }, &free);
    if (a) {
      auto y = affine_root([&](const Rat& t) { return diff(*a, *x, t, z, 0, 2); }, &free);
      if (y) out.push_back({*a, *x, *y, z});
    }
  }
  // z = 0: then x is forced, and u != 1 needs y != 0 (scale to y = 1)
  {
    Rat z = 0;
    auto x = affine_root([&](const Rat& t) { return diff(1, t, 0, z, 1, 2); }, &free);
    ensure(x.has_value() && *x == 0, "z = 0 must force x = 0");
    auto a = affine_root([&](const Rat& t) { return diff(t, *x, 1, z, 0, 2); }, &free);
    if (a) out.push_back({*a, *x, 1, z});
  }
  for (const auto& s : out) {
    ensure(u3_relation_lhs(q, s.a, s.x, s.y, s.z) == u3_relation_rhs(q, s.x, s.y, s.z), "solution fails the relation");
    // torus scaling (x, y, z) -> (t x, t^2 y, t z) preserves solutions
    for (long t : {2L, -3L})
      ensure(u3_relation_lhs(q, s.a, t * s.x, t * t * s.y, t * s.z) == u3_relation_rhs(q, t * s.x, t * t * s.y, t * s.z),
             "scaled solution fails the relation");
  }
  return out;
}

std::vector<Rat> u3_reducibility_points(long q) {
  std::vector<Rat> out;
  for (const auto& s : u3_unipotent_solutions(q)) out.push_back(s.a);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace lr::local
