#include <catch_amalgamated.hpp>

#include <map>
#include <set>
#include <tuple>

#include <gwcalc/calculus_towers.hpp>

using namespace gwcalc;

namespace {

std::vector<StableComplex> spheres(std::initializer_list<int> dims) {
  std::vector<StableComplex> out;
  for (int d : dims) out.push_back(StableComplex::sphere(d));
  return out;
}

// Every weight vector in {1..max_a}^k.
std::vector<std::vector<int>> weight_vectors(int k, int max_a) {
  std::vector<std::vector<int>> out;
  std::vector<int> a(static_cast<std::size_t>(k), 1);
  while (true) {
    out.push_back(a);
    int i = k - 1;
    while (i >= 0 && a[static_cast<std::size_t>(i)] == max_a) a[static_cast<std::size_t>(i--)] = 1;
    if (i < 0) break;
    ++a[static_cast<std::size_t>(i)];
  }
  return out;
}

}  // namespace

TEST_CASE("truncation poset") {
  const auto p22 = un_poset(2, 2);
  CHECK(p22.tuples ==
        std::vector<std::vector<int>>{{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}});
  CHECK(un_poset(4, 1).tuples.size() == 5);
  CHECK(un_poset(5, 3).tuples.size() == 56);
  CHECK(static_cast<std::int64_t>(un_poset(7, 4).tuples.size()) == combinatorics::binomial(11, 4));

  // the listing is a linear extension of the componentwise order
  const auto p = un_poset(4, 3);
  for (std::size_t i = 0; i < p.tuples.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      CHECK_FALSE((TruncationPoset::leq(p.tuples[i], p.tuples[j]) && p.tuples[i] != p.tuples[j]));
    }
  }
}

TEST_CASE("floor rules") {
  CHECK(multivar_truncation(std::vector<int>{3, 2}, std::vector<int>{1, 2}) == 1);
  CHECK(multivar_truncation(std::vector<int>{4, 4}, std::vector<int>{1, 1}) == 4);
  CHECK(multivar_truncation(std::vector<int>{7, 3, 5}, std::vector<int>{2, 1, 5}) == 1);
  CHECK(single_from_multi(5, std::vector<int>{1, 2}) == 1);
  CHECK(single_from_multi(6, std::vector<int>{1, 2}) == 2);
  CHECK(single_from_multi(3, std::vector<int>{4, 4}) == 0);
  CHECK_THROWS_AS(multivar_truncation(std::vector<int>{1}, std::vector<int>{0}), Error);
  CHECK_THROWS_AS(multivar_truncation(std::vector<int>{1, 2}, std::vector<int>{1}), Error);
}

TEST_CASE("floor identity on small cases") {
  for (int k = 1; k <= 3; ++k) {
    for (const auto& a : weight_vectors(k, 3)) {
      int total = 0;
      for (int v : a) total += v;
      for (int n = 0; n <= 10; ++n) CHECK(single_from_multi(n, a) == n / total);
    }
  }
}

TEST_CASE("hilton-milnor factors") {
  const auto s22 = spheres({2, 2});
  const auto f1 = hm_factors(s22, 1);
  REQUIRE(f1.size() == 2);
  CHECK(f1[0].word.to_string() == "x1");
  CHECK(f1[0].target == StableComplex::sphere(3));
  CHECK(f1[1].target == StableComplex::sphere(3));

  const auto f3 = hm_factors(s22, 3);
  REQUIRE(f3.size() == 5);
  CHECK(f3[3].target == StableComplex::sphere(7));
  CHECK(f3[4].target == StableComplex::sphere(7));

  const std::vector<StableComplex> moore{StableComplex::moore(5)};
  for (int len : {1, 4, 9}) {
    const auto f = hm_factors(moore, len);
    REQUIRE(f.size() == 1);
    CHECK(f[0].target == StableComplex::moore(6));
  }
  CHECK_THROWS_AS(hm_factors(std::vector<StableComplex>{StableComplex::zero()}, 2), Error);
  CHECK_THROWS_AS(hm_factors(std::vector<StableComplex>{}, 2), Error);
}

TEST_CASE("tower stages") {
  const auto s22 = spheres({2, 2});
  const auto t1 = tower_stage(1, s22);
  REQUIRE(t1.factors.size() == 2);
  CHECK(t1.factors[0].trunc == 1);
  CHECK(t1.factors[1].trunc == 1);

  const auto t2 = tower_stage(2, s22);
  REQUIRE(t2.factors.size() == 3);
  CHECK(t2.factors[0].trunc == 2);
  CHECK(t2.factors[1].trunc == 2);
  CHECK(t2.factors[2].word.to_string() == "[x1,x2]");
  CHECK(t2.factors[2].trunc == 1);
  CHECK(t2.factors[2].factor_complex == StableComplex::sphere(5));

  CHECK(tower_stage(4, s22).factors.size() == 8);

  const std::vector<StableComplex> moore{StableComplex::moore(5), StableComplex::sphere(2)};
  for (const auto& f : tower_stage(3, moore).factors) CHECK_FALSE(f.stab_stage.has_value());
}

TEST_CASE("tower stages grow monotonically") {
  const auto xs = spheres({1, 2, 4});
  for (int n = 1; n <= 6; ++n) {
    const auto now = tower_stage(n, xs);
    const auto next = tower_stage(n + 1, xs);
    REQUIRE(next.factors.size() >= now.factors.size());
    for (std::size_t i = 0; i < now.factors.size(); ++i) {
      CHECK(next.factors[i].word == now.factors[i].word);
      CHECK(next.factors[i].trunc >= now.factors[i].trunc);
    }
    for (std::size_t i = now.factors.size(); i < next.factors.size(); ++i) {
      CHECK(next.factors[i].word.length() == n + 1);
      CHECK(next.factors[i].trunc == 1);
    }
  }
}

TEST_CASE("stabilization stages") {
  const StabilizationConfig p2{2, 1, ParityRule::odd_at_p_h};
  const StabilizationConfig p3{3, 1, ParityRule::odd_at_p_h};
  CHECK(stabilization_stage(LieWord::parse("[x1,x2]"), std::vector<int>{2, 2}, p2) == 4);
  CHECK(stabilization_stage(LieWord::letter(1), std::vector<int>{3}, p3) == 6);
  for (const auto& w : hall_basis(2, 6)) {
    CHECK(stabilization_stage(w, std::vector<int>{2, 4}, p3) == 3 * w.length());
  }
  const StabilizationConfig flipped{3, 1, ParityRule::even_at_p_h};
  CHECK(stabilization_stage(LieWord::letter(1), std::vector<int>{3}, flipped) == 3);
  const StabilizationConfig h2{2, 2, ParityRule::odd_at_p_h};
  CHECK(stabilization_stage(LieWord::parse("[x1,x2]"), std::vector<int>{2, 2}, h2) == 8);
  CHECK_THROWS_AS(sphere_stabilization_stage(3, {4, 1, ParityRule::odd_at_p_h}), Error);
}

TEST_CASE("layers of a wedge") {
  const std::vector<StableComplex> xs{StableComplex::sphere(2), StableComplex::moore(3)};
  const auto l2 = wedge_layer_decomposition(2, xs);
  REQUIRE(l2.terms.size() == 3);
  CHECK(l2.terms[0].composition == std::vector<int>{2, 0});
  CHECK(l2.terms[0].divisor == 2);
  CHECK(l2.terms[0].word.to_string() == "x1");
  CHECK(l2.terms[0].target == StableComplex::sphere(3));
  CHECK(l2.terms[1].composition == std::vector<int>{1, 1});
  CHECK(l2.terms[1].divisor == 1);
  CHECK(l2.terms[1].word.to_string() == "[x1,x2]");
  CHECK(l2.terms[1].target == StableComplex::moore(6));
  CHECK(l2.terms[2].composition == std::vector<int>{0, 2});
  CHECK(l2.terms[2].divisor == 2);
  CHECK(l2.terms[2].target == StableComplex::moore(4));

  const auto l1 = wedge_layer_decomposition(1, xs);
  REQUIRE(l1.terms.size() == 2);
  CHECK(l1.terms[0].divisor == 1);
  CHECK(l1.terms[1].divisor == 1);

  const auto single = wedge_layer_decomposition(3, std::vector<StableComplex>{StableComplex::sphere(4)});
  REQUIRE(single.terms.size() == 1);
  CHECK(single.terms[0].divisor == 3);
  CHECK(single.terms[0].word.to_string() == "x1");
}

TEST_CASE("layer terms are the tower's jumps") {
  // (w, d) with d |w| = n, read off the tower, against the layer index set.
  for (int k = 1; k <= 3; ++k) {
    std::vector<StableComplex> xs;
    for (int i = 0; i < k; ++i) xs.push_back(StableComplex::sphere(i + 1));
    const auto basis = hall_basis(k, 9);
    for (int n = 1; n <= 9; ++n) {
      std::set<std::tuple<std::vector<int>, int, std::string>> from_tower;
      for (const auto& w : basis) {
        if (n % w.length() != 0) continue;
        const int d = n / w.length();
        auto composition = w.multidegree(k);
        for (auto& v : composition) v *= d;
        from_tower.insert({composition, d, w.to_string()});
      }
      std::set<std::tuple<std::vector<int>, int, std::string>> from_layers;
      for (const auto& t : wedge_layer_decomposition(n, xs).terms) {
        from_layers.insert({t.composition, t.divisor, t.word.to_string()});
        CHECK(t.target == suspend(evaluate(t.word, xs), 1));
      }
      INFO("k=" << k << " n=" << n);
      CHECK(from_layers == from_tower);
    }
  }
}

TEST_CASE("divergence report on wedges of spheres") {
  const StabilizationConfig p2{2, 1, ParityRule::odd_at_p_h};
  const auto r = wedge_divergence_report(std::vector<int>{2, 2}, p2, 4);
  std::map<int, std::set<std::int64_t>> stages;
  for (const auto& e : r.entries) stages[e.word.length()].insert(e.stab_stage);
  CHECK(stages == std::map<int, std::set<std::int64_t>>{{1, {2}}, {2, {4}}, {3, {6}}, {4, {8}}});
  CHECK(r.increasing_stages == std::vector<std::int64_t>{2, 4, 6, 8});
  CHECK(r.stages_unbounded);
  CHECK(r.counts_match_necklaces);

  const StabilizationConfig p3{3, 1, ParityRule::odd_at_p_h};
  const auto mixed = wedge_divergence_report(std::vector<int>{2, 3}, p3, 3);
  std::set<std::pair<int, std::int64_t>> seen;
  for (const auto& e : mixed.entries) seen.insert({e.word.length(), e.stab_stage});
  CHECK(seen.count({1, 3}) == 1);   // x1 -> S^3
  CHECK(seen.count({1, 6}) == 1);   // x2 -> S^4
  CHECK(seen.count({2, 12}) == 1);  // [x1,x2] -> S^6
  CHECK(seen.count({3, 18}) == 1);  // [x1,[x1,x2]] -> S^8
  CHECK(seen.count({3, 9}) == 1);   // [[x1,x2],x2] -> S^9

  const auto wide = wedge_divergence_report(std::vector<int>{3, 3}, p3, 12);
  CHECK(wide.counts_positive);
  CHECK(wide.counts_match_necklaces);
  CHECK(wide.stages_unbounded);

  const auto one = wedge_divergence_report(std::vector<int>{2}, p2, 5);
  CHECK_FALSE(one.counts_positive);
  CHECK_FALSE(one.stages_unbounded);
  CHECK_FALSE(one.notes.empty());
}
