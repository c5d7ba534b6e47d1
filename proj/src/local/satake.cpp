#include "lr/local/satake.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "lr/errors.hpp"

namespace lr::local {

namespace {

std::vector<unsigned> compose(const std::vector<unsigned>& a, const std::vector<unsigned>& b) {
  std::vector<unsigned> c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[b[i]];
  return c;
}

Int reduce(const Rat& x, std::uint32_t ell) {
  Int m = ell;
  if (x.get_den() % m == 0) throw HypothesisError("ell divides a denominator of the Satake parameter");
  Int inv;
  mpz_invert(inv.get_mpz_t(), Int(x.get_den() % m).get_mpz_t(), m.get_mpz_t());
  Int r = (x.get_num() * inv) % m;
  if (r < 0) r += m;
  return r;
}

}  // namespace

std::vector<std::vector<unsigned>> satake_weyl_group(std::size_t n) {
  std::vector<std::vector<unsigned>> gens;
  if (n == 3) {
    gens = {{1, 0, 2}, {0, 2, 1}};
  } else if (n == 4) {
    gens = {{1, 0, 3, 2}, {0, 2, 1, 3}, {3, 1, 2, 0}};
  } else {
    throw HypothesisError("Weyl group only for 3- and 4-tuples");
  }
  std::vector<unsigned> id(n);
  std::iota(id.begin(), id.end(), 0u);
  std::set<std::vector<unsigned>> seen{id};
  std::vector<std::vector<unsigned>> frontier{id};
  while (!frontier.empty()) {
    std::vector<std::vector<unsigned>> next;
    for (const auto& w : frontier)
      for (const auto& g : gens) {
        auto c = compose(g, w);
        if (seen.insert(c).second) next.push_back(c);
      }
    frontier = std::move(next);
  }
  ensure(seen.size() == (n == 3 ? 6u : 8u), "Weyl group has the wrong order");
  return {seen.begin(), seen.end()};
}

bool satake_congruent(const std::vector<Rat>& param, const std::vector<Rat>& target, std::uint32_t ell) {
  if (param.size() != target.size()) throw HypothesisError("parameter and target differ in length");
  std::vector<Int> p, t;
  for (const auto& x : param) p.push_back(reduce(x, ell));
  for (const auto& x : target) t.push_back(reduce(x, ell));
  for (const auto& w : satake_weyl_group(p.size())) {
    bool ok = true;
    for (std::size_t i = 0; i < p.size() && ok; ++i) ok = p[w[i]] == t[i];
    if (ok) return true;
  }
  return false;
}

std::string family_name(SatakeFamily f) { return f == SatakeFamily::Va ? "Va" : "VIa"; }

std::vector<Rat> satake_target(long q) {
  return {Rat(1), Rat(q), Rat(q * q), Rat(q * q * q)};
}

std::vector<Rat> satake_parameter(SatakeFamily f, long q, const Rat& sigma) {
  Rat a = q * sigma, b = Rat(q * q) * sigma;
  std::vector<Rat> v = f == SatakeFamily::Va ? std::vector<Rat>{a, Rat(-a), Rat(-b), b} : std::vector<Rat>{a, a, b, b};
  ensure(v[0] * v[3] == v[1] * v[2], "parameter leaves the GSp4 torus");
  return v;
}

bool satake_prediction(SatakeFamily f, long q, std::uint32_t ell) {
  long m = static_cast<long>(ell), r = ((q % m) + m) % m, r2 = (r * r) % m;
  if (f == SatakeFamily::Va) return r == m - 1 || r2 == m - 1;
  return r2 == 1 % m;
}

SatakeReport satake_check(SatakeFamily f, long q, std::uint32_t ell) {
  if (ell < 2) throw HypothesisError("ell must be prime");
  for (std::uint32_t d = 2; d * d <= ell; ++d)
    if (ell % d == 0) throw HypothesisError("ell must be prime");
  SatakeReport r;
  r.family = f;
  r.q = q;
  r.ell = ell;
  auto target = satake_target(q);
  for (long s = 1; s < static_cast<long>(ell); ++s)
    if (satake_congruent(satake_parameter(f, q, Rat(s)), target, ell)) r.sigmas.push_back(s);
  r.solvable = !r.sigmas.empty();
  r.predicted = satake_prediction(f, q, ell);
  return r;
}

}  // namespace lr::local
