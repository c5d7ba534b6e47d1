#include "lr/local/groups.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "lr/errors.hpp"
#include "lr/exact/fp.hpp"
#include "lr/exact/gf.hpp"

namespace lr::local {

SmallField::SmallField(unsigned q) : q_(q), p_(0) {
  if (q < 2 || q > 64) throw HypothesisError("field size " + std::to_string(q) + " outside 2..64");
  unsigned k = 0;
  for (unsigned p = 2; p <= q; ++p)
    if (q % p == 0) {
      p_ = p;
      break;
    }
  unsigned r = q;
  while (r % p_ == 0) {
    r /= p_;
    ++k;
  }
  if (r != 1) throw HypothesisError(std::to_string(q) + " is not a prime power");
  GF F = GF::canonical(p_, k);
  std::vector<GF::Elem> elems(q);
  for (unsigned x = 0; x < q; ++x) {
    GF::Elem e(k, 0);
    unsigned t = x;
    for (unsigned i = 0; i < k; ++i) {
      e[i] = t % p_;
      t /= p_;
    }
    elems[x] = e;
  }
  auto code = [&](const GF::Elem& e) {
    unsigned c = 0;
    for (unsigned i = k; i-- > 0;) c = c * p_ + e[i];
    return c;
  };
  add_.resize(q * q);
  mul_.resize(q * q);
  neg_.resize(q);
  inv_.assign(q, 0);
  for (unsigned a = 0; a < q; ++a) {
    neg_[a] = static_cast<std::uint8_t>(code(F.neg(elems[a])));
    if (a) inv_[a] = static_cast<std::uint8_t>(code(F.inv(elems[a])));
    for (unsigned b = 0; b < q; ++b) {
      add_[a * q + b] = static_cast<std::uint8_t>(code(F.add(elems[a], elems[b])));
      mul_[a * q + b] = static_cast<std::uint8_t>(code(F.mul(elems[a], elems[b])));
    }
  }
}

unsigned SmallField::inv(unsigned a) const {
  ensure(a != 0, "SmallField: inverse of zero");
  return inv_[a];
}

unsigned SmallField::pow(unsigned a, unsigned long e) const {
  unsigned r = 1;
  for (; e; e >>= 1, a = mul(a, a))
    if (e & 1) r = mul(r, a);
  return r;
}

unsigned SmallField::from_int(long n) const {
  long m = ((n % static_cast<long>(p_)) + p_) % p_;
  unsigned r = 0;
  for (long i = 0; i < m; ++i) r = add(r, 1);
  return r;
}

std::string kind_name(GroupKind k) { return k == GroupKind::GL3 ? "gl3" : "gsp4"; }

GroupKind parse_kind(const std::string& s) {
  if (s == "gl3") return GroupKind::GL3;
  if (s == "gsp4") return GroupKind::GSp4;
  throw HypothesisError("unknown group kind " + s);
}

std::string shape_name(Shape s) {
  switch (s) {
    case Shape::K: return "K";
    case Shape::Kp: return "K'";
    case Shape::J: return "J";
    case Shape::Jp: return "J'";
    case Shape::I: return "I";
  }
  return "?";
}

Int classical_order(GroupKind kind, unsigned q) {
  Int Q = q;
  if (kind == GroupKind::GL3) return Q * Q * Q * (Q - 1) * (Q * Q - 1) * (Q * Q * Q - 1);
  return Q * Q * Q * Q * (Q - 1) * (Q * Q - 1) * (Q * Q * Q * Q - 1);
}

void check_enumerable(GroupKind kind, unsigned q) {
  unsigned limit = kind == GroupKind::GL3 ? 4 : 3;
  if (q > limit)
    throw HypothesisError("group too large to enumerate: |" + std::string(kind == GroupKind::GL3 ? "GL(3," : "GSp(4,") +
                          std::to_string(q) + ")| = " + classical_order(kind, q).get_str());
}

FiniteGroup::FiniteGroup(GroupKind kind, unsigned q) : kind_(kind), F_(q), n_(kind == GroupKind::GL3 ? 3 : 4) {
  check_enumerable(kind, q);
  if (kind == GroupKind::GL3)
    enumerate_gl3();
  else
    enumerate_gsp4();
  std::sort(elts_.begin(), elts_.end(), [&](const Elt& a, const Elt& b) { return key(a) < key(b); });
  for (std::size_t i = 0; i < elts_.size(); ++i) index_.emplace(key(elts_[i]), i);
  ensure(Int(static_cast<unsigned long>(elts_.size())) == classical_order(kind, q), "group order differs from the closed form");
}

std::uint64_t FiniteGroup::key(const Elt& g) const {
  std::uint64_t k = 0;
  for (unsigned i = 0; i < n_ * n_; ++i) k = k * F_.q() + g[i];
  return k;
}

std::size_t FiniteGroup::index_of(const Elt& g) const {
  auto it = index_.find(key(g));
  ensure(it != index_.end(), "element not in the group");
  return it->second;
}

Elt FiniteGroup::identity() const {
  Elt e{};
  for (unsigned i = 0; i < n_; ++i) e[i * n_ + i] = 1;
  return e;
}

Elt FiniteGroup::mul(const Elt& x, const Elt& y) const {
  Elt r{};
  for (unsigned i = 0; i < n_; ++i)
    for (unsigned j = 0; j < n_; ++j) {
      unsigned s = 0;
      for (unsigned k = 0; k < n_; ++k) s = F_.add(s, F_.mul(x[i * n_ + k], y[k * n_ + j]));
      r[i * n_ + j] = static_cast<std::uint8_t>(s);
    }
  return r;
}

Elt FiniteGroup::inverse(const Elt& x) const {
  unsigned n = n_;
  std::vector<unsigned> a(n * 2 * n, 0);
  for (unsigned i = 0; i < n; ++i) {
    for (unsigned j = 0; j < n; ++j) a[i * 2 * n + j] = x[i * n + j];
    a[i * 2 * n + n + i] = 1;
  }
  for (unsigned c = 0; c < n; ++c) {
    unsigned piv = c;
    while (piv < n && a[piv * 2 * n + c] == 0) ++piv;
    ensure(piv < n, "inverse of a singular matrix");
    for (unsigned j = 0; j < 2 * n; ++j) std::swap(a[c * 2 * n + j], a[piv * 2 * n + j]);
    unsigned s = F_.inv(a[c * 2 * n + c]);
    for (unsigned j = 0; j < 2 * n; ++j) a[c * 2 * n + j] = F_.mul(s, a[c * 2 * n + j]);
    for (unsigned r = 0; r < n; ++r) {
      if (r == c || a[r * 2 * n + c] == 0) continue;
      unsigned f = a[r * 2 * n + c];
      for (unsigned j = 0; j < 2 * n; ++j) a[r * 2 * n + j] = F_.sub(a[r * 2 * n + j], F_.mul(f, a[c * 2 * n + j]));
    }
  }
  Elt r{};
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) r[i * n + j] = static_cast<std::uint8_t>(a[i * 2 * n + n + j]);
  return r;
}

void FiniteGroup::enumerate_gl3() {
  const unsigned q = F_.q();
  std::size_t total = 1;
  for (int i = 0; i < 9; ++i) total *= q;
  for (std::size_t code = 0; code < total; ++code) {
    Elt g{};
    std::size_t c = code;
    for (int i = 8; i >= 0; --i) {
      g[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(c % q);
      c /= q;
    }
    auto m = [&](int i, int j) { return static_cast<unsigned>(g[static_cast<std::size_t>(i * 3 + j)]); };
    unsigned d = F_.mul(m(0, 0), F_.sub(F_.mul(m(1, 1), m(2, 2)), F_.mul(m(1, 2), m(2, 1))));
    d = F_.sub(d, F_.mul(m(0, 1), F_.sub(F_.mul(m(1, 0), m(2, 2)), F_.mul(m(1, 2), m(2, 0)))));
    d = F_.add(d, F_.mul(m(0, 2), F_.sub(F_.mul(m(1, 0), m(2, 1)), F_.mul(m(1, 1), m(2, 0)))));
    if (d != 0) elts_.push_back(g);
  }
}

// Columns c0..c3 with B(c_i, c_j) = nu * J_ij for the skew-diagonal form
// B(u, v) = u0 v3 + u1 v2 - u2 v1 - u3 v0.
void FiniteGroup::enumerate_gsp4() {
  const unsigned q = F_.q();
  std::vector<std::array<unsigned, 4>> vecs;
  for (unsigned c = 0; c < q * q * q * q; ++c) vecs.push_back({c % q, c / q % q, c / (q * q) % q, c / (q * q * q)});
  auto form = [&](const std::array<unsigned, 4>& u, const std::array<unsigned, 4>& v) {
    unsigned s = F_.add(F_.mul(u[0], v[3]), F_.mul(u[1], v[2]));
    return F_.sub(s, F_.add(F_.mul(u[2], v[1]), F_.mul(u[3], v[0])));
  };
  for (unsigned nu = 1; nu < q; ++nu)
    for (const auto& c0 : vecs) {
      if (c0 == std::array<unsigned, 4>{0, 0, 0, 0}) continue;
      for (const auto& c3 : vecs) {
        if (form(c0, c3) != nu) continue;
        for (const auto& c1 : vecs) {
          if (form(c0, c1) != 0 || form(c1, c3) != 0) continue;
          for (const auto& c2 : vecs) {
            if (form(c0, c2) != 0 || form(c2, c3) != 0 || form(c1, c2) != nu) continue;
            Elt g{};
            const std::array<unsigned, 4>* cols[4] = {&c0, &c1, &c2, &c3};
            for (unsigned i = 0; i < 4; ++i)
              for (unsigned j = 0; j < 4; ++j) g[i * 4 + j] = static_cast<std::uint8_t>((*cols[j])[i]);
            elts_.push_back(g);
          }
        }
      }
    }
}

bool FiniteGroup::in_shape(const Elt& g, Shape s) const {
  auto z = [&](unsigned i, unsigned j) { return at(g, i, j) == 0; };
  switch (s) {
    case Shape::K: return true;
    case Shape::Kp: throw HypothesisError("K' has no reduction inside G(F_q)");
    case Shape::I:
      for (unsigned i = 1; i < n_; ++i)
        for (unsigned j = 0; j < i; ++j)
          if (!z(i, j)) return false;
      return true;
    case Shape::J:
      if (kind_ == GroupKind::GL3) return z(2, 0) && z(2, 1);
      return z(1, 0) && z(2, 0) && z(3, 0);
    case Shape::Jp:
      if (kind_ == GroupKind::GL3) return z(1, 0) && z(2, 0);
      return z(2, 0) && z(2, 1) && z(3, 0) && z(3, 1);
  }
  return false;
}

std::vector<std::size_t> FiniteGroup::subgroup(Shape s) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < elts_.size(); ++i)
    if (in_shape(elts_[i], s)) out.push_back(i);
  return out;
}

std::vector<std::size_t> generators(const FiniteGroup& G, const std::vector<std::size_t>& sub) {
  std::vector<char> member(G.order(), 0);
  for (std::size_t i : sub) member[i] = 1;
  std::vector<std::size_t> gens;
  std::vector<char> closed(G.order(), 0);
  std::size_t closed_size = 0;
  auto close = [&]() {
    std::fill(closed.begin(), closed.end(), 0);
    std::size_t id = G.index_of(G.identity());
    std::deque<std::size_t> queue{id};
    closed[id] = 1;
    closed_size = 1;
    while (!queue.empty()) {
      std::size_t x = queue.front();
      queue.pop_front();
      for (std::size_t g : gens) {
        std::size_t y = G.index_of(G.mul(G.elt(x), G.elt(g)));
        if (closed[y]) continue;
        ensure(member[y], "shape is not closed under multiplication");
        closed[y] = 1;
        ++closed_size;
        queue.push_back(y);
      }
    }
  };
  close();
  for (std::size_t s : sub) {
    if (closed[s]) continue;
    gens.push_back(s);
    close();
  }
  ensure(closed_size == sub.size(), "shape is not a subgroup");
  return gens;
}

DoubleCosets double_cosets(const FiniteGroup& G, const std::vector<std::size_t>& left,
                           const std::vector<std::size_t>& right) {
  auto lg = generators(G, left), rg = generators(G, right);
  std::vector<char> seen(G.order(), 0);
  DoubleCosets out;
  for (std::size_t s = 0; s < G.order(); ++s) {
    if (seen[s]) continue;
    out.reps.push_back(s);
    std::size_t size = 0;
    std::deque<std::size_t> queue{s};
    seen[s] = 1;
    while (!queue.empty()) {
      std::size_t x = queue.front();
      queue.pop_front();
      ++size;
      auto visit = [&](const Elt& y) {
        std::size_t j = G.index_of(y);
        if (!seen[j]) {
          seen[j] = 1;
          queue.push_back(j);
        }
      };
      for (std::size_t g : lg) visit(G.mul(G.elt(g), G.elt(x)));
      for (std::size_t g : rg) visit(G.mul(G.elt(x), G.elt(g)));
    }
    out.sizes.push_back(size);
  }
  ensure(std::accumulate(out.sizes.begin(), out.sizes.end(), std::size_t{0}) == G.order(),
         "double cosets do not partition the group");
  return out;
}

std::size_t double_coset_count(const FiniteGroup& G, Shape h1, Shape h2) {
  return double_cosets(G, G.subgroup(h1), G.subgroup(h2)).reps.size();
}

namespace {

using Perm = std::vector<unsigned>;

Perm compose(const Perm& a, const Perm& b) {
  Perm r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[b[i]];
  return r;
}

std::vector<Perm> perm_closure(std::size_t n, const std::vector<Perm>& gens) {
  Perm id(n);
  std::iota(id.begin(), id.end(), 0u);
  std::vector<Perm> out{id};
  for (std::size_t i = 0; i < out.size(); ++i)
    for (const Perm& g : gens) {
      Perm y = compose(out[i], g);
      if (std::find(out.begin(), out.end(), y) == out.end()) out.push_back(y);
    }
  return out;
}

// Reflections on diagonal positions.
std::vector<Perm> reflections(GroupKind kind, Shape h) {
  if (kind == GroupKind::GL3) {
    Perm s1{1, 0, 2}, s2{0, 2, 1};
    switch (h) {
      case Shape::K:
      case Shape::Kp: return {s1, s2};
      case Shape::J: return {s1};
      case Shape::Jp: return {s2};
      case Shape::I: return {};
    }
  }
  Perm s_short{1, 0, 3, 2}, s_long{0, 2, 1, 3}, s_highest{3, 1, 2, 0};
  switch (h) {
    case Shape::K: return {s_short, s_long};
    case Shape::Kp: return {s_long, s_highest};
    case Shape::J: return {s_long};
    case Shape::Jp: return {s_short};
    case Shape::I: return {};
  }
  return {};
}

}  // namespace

std::size_t weyl_order(GroupKind kind) {
  return perm_closure(kind == GroupKind::GL3 ? 3 : 4, reflections(kind, Shape::K)).size();
}

std::size_t weyl_coset_count(GroupKind kind, Shape h) {
  std::size_t n = kind == GroupKind::GL3 ? 3 : 4;
  std::size_t sub = perm_closure(n, reflections(kind, h)).size();
  return weyl_order(kind) / sub;
}

std::size_t induced_fixed_dim(const FiniteGroup& G, Shape parabolic, LeviRep tau, Shape h) {
  unsigned b0 = 0;
  bool levi_gl2 = false;
  if (parabolic == Shape::I) {
    if (tau != LeviRep::Trivial) throw HypothesisError("unsupported Levi representation for the Borel");
  } else if (G.kind() == GroupKind::GL3 && parabolic == Shape::J) {
    levi_gl2 = true;
  } else if (G.kind() == GroupKind::GSp4 && (parabolic == Shape::J || parabolic == Shape::Jp)) {
    levi_gl2 = true;
    b0 = parabolic == Shape::J ? 1 : 0;
  } else {
    throw HypothesisError("unsupported parabolic for induced_fixed_dim");
  }
  const SmallField& F = G.field();
  const unsigned q = F.q();
  auto P = G.subgroup(parabolic);
  auto H = G.subgroup(h);
  DoubleCosets dc = double_cosets(G, P, H);
  std::size_t total = 0;
  for (std::size_t r : dc.reps) {
    if (tau == LeviRep::Trivial) {
      ++total;
      continue;
    }
    ensure(levi_gl2, "Steinberg needs a GL2 Levi factor");
    const Elt& g = G.elt(r);
    Elt gi = G.inverse(g);
    // orbits of the Levi image on P^1(F_q): points (1:t) as t, (0:1) as q
    std::vector<std::size_t> parent(q + 1);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (std::size_t hi : H) {
      Elt c = G.mul(G.mul(g, G.elt(hi)), gi);
      if (!G.in_shape(c, parabolic)) continue;
      unsigned a = G.at(c, b0, b0), b = G.at(c, b0, b0 + 1), cc = G.at(c, b0 + 1, b0), d = G.at(c, b0 + 1, b0 + 1);
      for (unsigned pt = 0; pt <= q; ++pt) {
        unsigned x = pt < q ? 1 : 0, y = pt < q ? pt : 1;
        unsigned nx = F.add(F.mul(a, x), F.mul(b, y)), ny = F.add(F.mul(cc, x), F.mul(d, y));
        std::size_t img = nx == 0 ? q : F.mul(ny, F.inv(nx));
        parent[find(pt)] = find(img);
      }
    }
    std::size_t orbits = 0;
    for (std::size_t x = 0; x <= q; ++x) orbits += find(x) == x;
    total += orbits - 1;
  }
  return total;
}

std::size_t projective_points(unsigned q, unsigned n) {
  SmallField F(q);
  std::size_t total = 1, count = 0;
  for (unsigned i = 0; i < n; ++i) total *= q;
  for (std::size_t c = 1; c < total; ++c) {
    std::size_t t = c;
    unsigned lead = 0;
    for (unsigned i = 0; i < n && lead == 0; ++i, t /= q) lead = static_cast<unsigned>(t % q);
    count += lead == 1;
  }
  return count;
}

std::size_t hermitian_isotropic_lines(unsigned q, unsigned n) {
  SmallField F(q * q);
  std::size_t total = 1, count = 0;
  for (unsigned i = 0; i < n; ++i) total *= q * q;
  auto conj = [&](unsigned x) { return F.pow(x, q); };
  for (std::size_t c = 1; c < total; ++c) {
    std::vector<unsigned> v(n);
    std::size_t t = c;
    for (unsigned i = 0; i < n; ++i, t /= q * q) v[i] = static_cast<unsigned>(t % (q * q));
    unsigned lead = 0;
    for (unsigned x : v)
      if (x) {
        lead = x;
        break;
      }
    if (lead != 1) continue;
    unsigned s = 0;
    for (unsigned i = 0; i < n; ++i) s = F.add(s, F.mul(v[i], conj(v[n - 1 - i])));
    count += s == 0;
  }
  return count;
}

std::vector<IndexEntry> parahoric_indices(IndexKind kind, unsigned q) {
  SmallField check(q);  // validates the prime power
  Int Q = q;
  auto rel = [](const Int& kp, const Int& k) { return Int(kp / gcd(kp, k)); };
  const std::string src = "closed form";
  switch (kind) {
    case IndexKind::U3: {
      Int ki = Q * Q * Q + 1, kpi = Q + 1;
      return {{"[K:I]", ki, src}, {"[K':I]", kpi, src}, {"[K':I]_K", rel(kpi, ki), src}};
    }
    case IndexKind::GL3: {
      Int kj = 1 + Q + Q * Q;
      // K' is conjugate to K
      return {{"[K:J]", kj, src}, {"[K':J]", kj, src}, {"[K':J]_K", rel(kj, kj), src}};
    }
    case IndexKind::GSp4: {
      Int kj = (Q * Q * Q * Q - 1) / (Q - 1), kpj = Q;
      return {{"[K:J]", kj, src}, {"[K':J]", kpj, src}, {"[K':J]_K", rel(kpj, kj), src}};
    }
  }
  return {};
}

std::vector<IndexEntry> model_indices(IndexKind kind, unsigned q) {
  std::vector<IndexEntry> out;
  auto ul = [](std::size_t x) { return Int(static_cast<unsigned long>(x)); };
  switch (kind) {
    case IndexKind::U3:
      out.push_back({"[K:I]", ul(hermitian_isotropic_lines(q, 3)), "isotropic lines, hermitian 3-space"});
      out.push_back({"[K':I]", ul(hermitian_isotropic_lines(q, 2)), "isotropic lines, hermitian plane"});
      break;
    case IndexKind::GL3:
      out.push_back({"[K:J]", ul(projective_points(q, 3)), "lines in F_q^3"});
      if (q <= 4) {
        FiniteGroup G(GroupKind::GL3, q);
        out.push_back({"[K:J]", ul(G.order() / G.subgroup(Shape::J).size()), "order ratio"});
      }
      break;
    case IndexKind::GSp4:
      out.push_back({"[K:J]", ul(projective_points(q, 4)), "lines in F_q^4 (all isotropic)"});
      if (q <= 3) {
        FiniteGroup G(GroupKind::GSp4, q);
        out.push_back({"[K:J]", ul(G.order() / G.subgroup(Shape::J).size()), "order ratio"});
      }
      break;
  }
  return out;
}

}  // namespace lr::local
