#include <algorithm>
#include <map>

#include "doctest.h"
#include "lr/errors.hpp"
#include "lr/local/rank_one.hpp"
#include "lr/local/satake.hpp"
#include "lr/local/tables.hpp"
#include "support.hpp"

using namespace lr;
using namespace lr::local;

namespace {

const FiniteGroup& group(GroupKind k, unsigned q) {
  static std::map<std::pair<int, unsigned>, FiniteGroup> cache;
  auto key = std::make_pair(static_cast<int>(k), q);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, FiniteGroup(k, q)).first;
  return it->second;
}

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Int find(const std::vector<IndexEntry>& es, const std::string& label) {
  for (const auto& e : es)
    if (e.label == label) return e.value;
  FAIL("missing index " << label);
  return 0;
}

}  // namespace

TEST_CASE("small fields satisfy the field axioms") {
  for (unsigned q : {2u, 3u, 4u, 5u, 8u, 9u}) {
    SmallField F(q);
    for (unsigned a = 0; a < q; ++a) {
      CHECK(F.add(a, F.neg(a)) == 0);
      if (a) CHECK(F.mul(a, F.inv(a)) == 1);
      CHECK(F.pow(a, q) == a);
      for (unsigned b = 0; b < q; ++b)
        for (unsigned c = 0; c < q; ++c) CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
    }
  }
}

TEST_CASE("group orders match the closed forms") {
  CHECK(classical_order(GroupKind::GL3, 2) == 168);
  CHECK(classical_order(GroupKind::GSp4, 2) == 720);
  for (unsigned q : {2u, 3u, 4u}) CHECK(Int(group(GroupKind::GL3, q).order()) == classical_order(GroupKind::GL3, q));
  for (unsigned q : {2u, 3u}) CHECK(Int(group(GroupKind::GSp4, q).order()) == classical_order(GroupKind::GSp4, q));
  CHECK_THROWS_AS(check_enumerable(GroupKind::GSp4, 4), HypothesisError);
  CHECK_THROWS_AS(check_enumerable(GroupKind::GL3, 5), HypothesisError);
}

TEST_CASE("group law is associative with inverses on random triples") {
  testsupport::Gen gen(41);
  for (auto [k, q] : {std::pair{GroupKind::GL3, 3u}, std::pair{GroupKind::GSp4, 2u}}) {
    const FiniteGroup& G = group(k, q);
    auto pick = [&] { return G.elt(static_cast<std::size_t>(gen.range(0, static_cast<long>(G.order()) - 1))); };
    for (int t = 0; t < 200; ++t) {
      Elt a = pick(), b = pick(), c = pick();
      CHECK(G.mul(G.mul(a, b), c) == G.mul(a, G.mul(b, c)));
      CHECK(G.mul(a, G.inverse(a)) == G.identity());
      CHECK(G.index_of(G.mul(a, b)) < G.order());
    }
  }
}

TEST_CASE("parabolic subgroups are closed and K' has no finite model") {
  const FiniteGroup& G = group(GroupKind::GSp4, 2);
  for (Shape s : {Shape::K, Shape::J, Shape::Jp, Shape::I}) CHECK_NOTHROW(generators(G, G.subgroup(s)));
  CHECK_THROWS(G.subgroup(Shape::Kp));
}

TEST_CASE("Bruhat count equals the Weyl group order") {
  CHECK(weyl_order(GroupKind::GL3) == 6);
  CHECK(weyl_order(GroupKind::GSp4) == 8);
  for (unsigned q : {2u, 3u, 4u}) CHECK(double_coset_count(group(GroupKind::GL3, q), Shape::I, Shape::I) == 6);
  for (unsigned q : {2u, 3u}) CHECK(double_coset_count(group(GroupKind::GSp4, q), Shape::I, Shape::I) == 8);
}

TEST_CASE("full induced row by double cosets and by Weyl cosets") {
  for (unsigned q : {2u, 3u}) {
    const FiniteGroup& G = group(GroupKind::GL3, q);
    std::vector<std::size_t> got;
    for (Shape h : {Shape::K, Shape::J, Shape::I}) got.push_back(double_coset_count(G, Shape::I, h));
    CHECK(got == std::vector<std::size_t>{1, 3, 6});
    const FiniteGroup& H = group(GroupKind::GSp4, q);
    got.clear();
    for (Shape h : {Shape::K, Shape::J, Shape::Jp, Shape::I}) got.push_back(double_coset_count(H, Shape::I, h));
    CHECK(got == std::vector<std::size_t>{1, 4, 4, 8});
  }
  std::vector<std::size_t> w;
  for (Shape h : {Shape::K, Shape::Kp, Shape::J, Shape::Jp, Shape::I}) w.push_back(weyl_coset_count(GroupKind::GSp4, h));
  CHECK(w == std::vector<std::size_t>{1, 2, 4, 4, 8});
}

TEST_CASE("induced rows from a maximal parabolic") {
  for (unsigned q : {2u, 3u}) {
    const FiniteGroup& G = group(GroupKind::GL3, q);
    std::vector<std::size_t> st, tr;
    for (Shape h : {Shape::K, Shape::J, Shape::I}) {
      st.push_back(induced_fixed_dim(G, Shape::J, LeviRep::Steinberg, h));
      tr.push_back(induced_fixed_dim(G, Shape::J, LeviRep::Trivial, h));
    }
    CHECK(st == std::vector<std::size_t>{0, 1, 3});
    CHECK(tr == std::vector<std::size_t>{1, 2, 3});
  }
}

TEST_CASE("golden tables recomputed where a finite model exists") {
  for (auto [k, q] : {std::pair{GroupKind::GL3, 2u}, {GroupKind::GL3, 3u}, {GroupKind::GL3, 4u}, {GroupKind::GSp4, 2u},
                      {GroupKind::GSp4, 3u}}) {
    auto checks = verify_golden(k, q);
    CHECK(checks.size() > 10);
    for (const auto& c : checks) {
      INFO(kind_name(k) << " q=" << q << " " << c.what << " via " << c.method);
      CHECK(c.expected == c.computed);
    }
  }
}

TEST_CASE("parahoric index closed forms and finite models") {
  for (unsigned q : {2u, 3u, 4u, 5u}) {
    Int Q = q;
    auto u = parahoric_indices(IndexKind::U3, q);
    CHECK(find(u, "[K:I]") == Q * Q * Q + 1);
    CHECK(find(u, "[K':I]") == Q + 1);
    auto g = parahoric_indices(IndexKind::GL3, q);
    CHECK(find(g, "[K:J]") == 1 + Q + Q * Q);
    CHECK(find(g, "[K':J]_K") == 1);
    auto s = parahoric_indices(IndexKind::GSp4, q);
    CHECK(find(s, "[K:J]") == (Q * Q * Q * Q - 1) / (Q - 1));
    CHECK(find(s, "[K':J]") == Q);
    CHECK(find(s, "[K':J]_K") == Q);
    for (auto kind : {IndexKind::U3, IndexKind::GL3, IndexKind::GSp4}) {
      auto closed = parahoric_indices(kind, q);
      auto model = model_indices(kind, q);
      CHECK(!model.empty());
      for (const auto& m : model) {
        INFO(m.label << " from " << m.source);
        CHECK(find(closed, m.label) == m.value);
      }
    }
  }
  CHECK(hermitian_isotropic_lines(2, 3) == 9);
  CHECK(hermitian_isotropic_lines(3, 2) == 4);
  CHECK(projective_points(3, 3) == 13);
}

TEST_CASE("csv parser handles quotes, commas and blank lines") {
  auto rows = parse_csv("a,b,c\n\"x, y\",\"say \"\"hi\"\"\",\n\n1,2,3");
  REQUIRE(rows.size() == 3);
  CHECK(rows[1][0] == "x, y");
  CHECK(rows[1][1] == "say \"hi\"");
  CHECK(rows[1][2] == "");
  CHECK(rows[2] == std::vector<std::string>{"1", "2", "3"});
  CHECK_THROWS_AS(parse_csv("\"open"), InvariantError);
}

TEST_CASE("embedded tables parse with the printed columns") {
  CHECK(table_b().columns == std::vector<std::string>{"K", "J", "I"});
  CHECK(table_d().columns == std::vector<std::string>{"K", "K'", "J", "J'", "I"});
  CHECK(table_b().row("I").dims == std::vector<long>{1, 3, 6});
  CHECK(table_d().row("I").dims == std::vector<long>{1, 2, 4, 4, 8});
  CHECK(table_d().row("IVa").dims == std::vector<long>{0, 0, 0, 0, 1});
  for (const char* name : {"table_a", "table_c"}) CHECK(parse_csv(golden_csv(name)).size() > 1);
  CHECK_THROWS_AS(table_b().row("XII"), HypothesisError);
}

TEST_CASE("table rows are additive within each family") {
  CHECK(additivity_failures(table_b()).empty());
  CHECK(additivity_failures(table_d()).empty());
  DimensionTable broken = table_d();
  broken.rows[1].dims[2] += 1;
  CHECK(additivity_failures(broken).size() == 1);
}

TEST_CASE("classification of representations gaining fixed vectors") {
  CHECK(classify_raised(GroupKind::GSp4, true) == std::vector<std::string>{"I", "IIa", "IIIa", "Va", "VIa"});
  CHECK(classify_raised(GroupKind::GL3, true) == std::vector<std::string>{"I", "IIa"});
  auto all = classify_raised(GroupKind::GSp4, false);
  CHECK(std::count(all.begin(), all.end(), "IVb") == 1);
  for (const auto& t : classify_raised(GroupKind::GSp4, true)) CHECK(is_generic(GroupKind::GSp4, t));
  CHECK(match_dimensions(GroupKind::GL3, {0, 1, 3}) == std::vector<std::string>{"IIa"});
  CHECK(is_square_integrable(GroupKind::GSp4, "IVa"));
  CHECK(!is_square_integrable(GroupKind::GL3, "I"));
}

TEST_CASE("rank-one Iwahori characters") {
  for (long q : {2L, 3L, 5L}) {
    Rat q3 = Rat(q * q * q);
    auto cs = iwahori_rank1_characters(q);
    REQUIRE(cs.size() == 4);
    std::map<std::string, std::pair<Rat, Rat>> want{
        {"tr", {1 + q3, Rat(1 + q)}}, {"St", {0, 0}}, {"pi_x", {1 + q3, 0}}, {"pi_+", {0, Rat(1 + q)}}};
    for (const auto& c : cs) {
      CHECK(relation_t(q, c.t));
      CHECK(relation_tp(q, c.tp));
      REQUIRE(want.count(c.name) == 1);
      CHECK(c.tk() == want[c.name].first);
      CHECK(c.tkp() == want[c.name].second);
    }
  }
  CHECK(rational_roots(0, -2).empty());
  CHECK(rational_roots(-2, 1) == std::vector<Rat>{1});
}

TEST_CASE("two-dimensional Iwahori module and its reducibility points") {
  testsupport::Gen gen(7);
  for (long q : {2L, 3L, 5L}) {
    Rat q2 = Rat(q * q);
    for (int t = 0; t < 40; ++t) {
      Rat a(gen.range(1, 50), gen.range(1, 50));
      a.canonicalize();
      if (gen.range(0, 1)) a = -a;
      auto m = principal_series_module(q, a);
      CHECK(relations_hold(q, m.T, m.Tp));
      auto an = analyze_module(q, m);
      std::vector<Rat> ev{Rat(q2 * a), Rat(q2 / a)};
      std::sort(ev.begin(), ev.end());
      CHECK(an.tt_eigenvalues == ev);
    }
    std::vector<Rat> want{Rat(-q), Rat(Rat(-1) / q), Rat(1 / q2), q2};
    std::sort(want.begin(), want.end());
    CHECK(reducibility_scan(q) == want);
    auto at_q2 = analyze_module(q, principal_series_module(q, q2));
    CHECK(at_q2.sub->name == "St");
    CHECK(at_q2.quotient->name == "tr");
    auto at_mq = analyze_module(q, principal_series_module(q, Rat(-q)));
    CHECK(at_mq.sub->name == "pi_x");
    CHECK(at_mq.quotient->name == "pi_+");
  }
}

TEST_CASE("unitary unipotent equation has exactly two solutions for odd q") {
  for (long q = 3; q <= 13; q += 2) {
    CHECK(u3_reducibility_points(q) == std::vector<Rat>{Rat(-q), Rat(q * q)});
    for (const auto& s : u3_unipotent_solutions(q)) {
      CHECK(u3_relation_lhs(q, s.a, s.x, s.y, s.z) == u3_relation_rhs(q, s.x, s.y, s.z));
      // any other a breaks the relation
      CHECK(u3_relation_lhs(q, s.a + 1, s.x, s.y, s.z) != u3_relation_rhs(q, s.x, s.y, s.z));
    }
  }
  CHECK_THROWS_AS(u3_reducibility_points(2), HypothesisError);
  CHECK_THROWS_AS(u3_reducibility_points(4), HypothesisError);
}

TEST_CASE("Weyl groups acting on Satake tuples") {
  CHECK(satake_weyl_group(3).size() == 6);
  auto w = satake_weyl_group(4);
  CHECK(w.size() == 8);
  // each element preserves the pairing {0,3}, {1,2}
  for (const auto& p : w)
    for (unsigned i = 0; i < 4; ++i) CHECK(p[3 - i] == 3 - p[i]);
  CHECK_THROWS_AS(satake_weyl_group(5), HypothesisError);
  CHECK(satake_congruent({1, 2, 3}, {3, 1, 2}, 7));
  CHECK(!satake_congruent({1, 1, 3}, {3, 3, 1}, 7));
  CHECK_THROWS_AS(satake_congruent({Rat(1, 7)}, {Rat(1)}, 7), HypothesisError);
}

TEST_CASE("Satake congruence case analysis matches the predicted conditions") {
  for (long q = 2; q <= 20; ++q) {
    if (!is_prime(q)) continue;
    for (std::uint32_t ell = 2; ell <= 50; ++ell) {
      if (!is_prime(ell)) continue;
      for (auto f : {SatakeFamily::Va, SatakeFamily::VIa}) {
        auto r = satake_check(f, q, ell);
        INFO(family_name(f) << " q=" << q << " ell=" << ell);
        CHECK(r.solvable == r.predicted);
        CHECK(r.twist == "q^(3/2)");
      }
    }
  }
  CHECK_THROWS_AS(satake_check(SatakeFamily::Va, 3, 9), HypothesisError);
}
