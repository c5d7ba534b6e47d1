#include "lr/quaternion/short_vectors.hpp"

#include "lr/errors.hpp"

namespace lr {

namespace {

struct Enumerator {
  std::size_t n;
  std::vector<Rat> diag;               // q_ii
  std::vector<std::vector<Rat>> mu;    // q_ij, j > i
  const std::function<void(const std::vector<long>&, const Rat&)>* visit;
  Rat bound;
  std::vector<long> x;

  void run(std::size_t level, const Rat& remaining) {
    // center of coordinate `level` given the fixed coordinates above it
    Rat c = 0;
    for (std::size_t j = level + 1; j < n; ++j)
      if (x[j] != 0) c -= mu[level][j] * x[j];
    Rat t = remaining / diag[level];
    Int s = isqrt(floor_div(t.get_num(), t.get_den())) + 1;
    Rat lo_r = c - Rat(s), hi_r = c + Rat(s);
    Int lo = -floor_div(-lo_r.get_num(), lo_r.get_den());
    Int hi = floor_div(hi_r.get_num(), hi_r.get_den());
    for (long v = lo.get_si(); v <= hi.get_si(); ++v) {
      Rat d = Rat(v) - c;
      Rat used = diag[level] * d * d;
      if (used > remaining) continue;
      x[level] = v;
      Rat rest = remaining - used;
      if (level == 0) {
        bool zero = true;
        for (long e : x)
          if (e != 0) zero = false;
        if (!zero) (*visit)(x, bound - rest);
      } else {
        run(level - 1, rest);
      }
    }
    x[level] = 0;
  }
};

}  // namespace

void for_each_short_vector(const QMatrix& g, const Rat& bound,
                           const std::function<void(const std::vector<long>&, const Rat&)>& visit) {
  ensure(g.rows == g.cols, "short vectors: Gram not square");
  std::size_t n = g.rows;
  if (n == 0 || bound < 0) return;
  std::vector<std::vector<Rat>> q(n, std::vector<Rat>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) q[i][j] = g(i, j);
  for (std::size_t i = 0; i < n; ++i) {
    ensure(q[i][i] > 0, "short vectors: form not positive definite");
    for (std::size_t j = i + 1; j < n; ++j) {
      q[j][i] = q[i][j];
      q[i][j] /= q[i][i];
    }
    for (std::size_t k = i + 1; k < n; ++k)
      for (std::size_t l = k; l < n; ++l) q[k][l] -= q[k][i] * q[i][l];
  }
  Enumerator e;
  e.n = n;
  e.diag.resize(n);
  e.mu.assign(n, std::vector<Rat>(n));
  for (std::size_t i = 0; i < n; ++i) {
    e.diag[i] = q[i][i];
    for (std::size_t j = i + 1; j < n; ++j) e.mu[i][j] = q[i][j];
  }
  e.visit = &visit;
  e.bound = bound;
  e.x.assign(n, 0);
  e.run(n - 1, bound);
}

std::vector<Int> theta_counts(const QMatrix& g, long nmax) {
  std::vector<Int> counts(static_cast<std::size_t>(nmax + 1), 0);
  for_each_short_vector(g, Rat(nmax), [&](const std::vector<long>&, const Rat& v) {
    ensure(v.get_den() == 1, "theta: form not integral on the lattice");
    counts[v.get_num().get_ui()] += 1;
  });
  return counts;
}

}  // namespace lr
