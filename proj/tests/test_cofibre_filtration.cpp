#include <catch_amalgamated.hpp>

#include <gwcalc/cofibre_filtration.hpp>

using namespace gwcalc;

namespace {

StableComplex moore_pair(int dim) {
  auto out = StableComplex::moore(dim);
  out.add(Cell::moore(dim + 1), 1);
  return out;
}

}  // namespace

TEST_CASE("map descriptors") {
  const auto p = MapDescriptor::degree_p(5);
  CHECK(p.is_degree_p());
  CHECK(p.source() == StableComplex::sphere(5));
  CHECK(p.cofibre() == StableComplex::moore(5));
  CHECK(p.to_string() == "3: S^5 -> S^5");

  const auto z = MapDescriptor::zero_map(StableComplex::sphere(2), StableComplex::moore(4));
  CHECK_FALSE(z.is_degree_p());
  auto cof = StableComplex::sphere(3);
  cof.add(Cell::moore(4), 1);
  CHECK(z.cofibre() == cof);
  CHECK_THROWS_AS(MapDescriptor::degree_p(5, 9), Error);
  CHECK_THROWS_AS(MapDescriptor::zero_map(StableComplex::moore(1, 3), StableComplex::moore(1, 5)), Error);
}

TEST_CASE("graded pieces of smash powers of a cofibre") {
  const int ell = 5;
  const auto f = MapDescriptor::degree_p(ell);

  const auto g21 = smash_power_graded(f, 2, 1);
  CHECK(g21.induction_multiplicity == 2);
  CHECK(suspend(g21.underlying, g21.shift) == StableComplex::moore(2 * ell + 1));
  CHECK(g21.expanded() == StableComplex::of(Cell::moore(2 * ell + 1), 2));

  const auto g32 = smash_power_graded(f, 3, 2);
  CHECK(g32.induction_multiplicity == 3);
  CHECK(suspend(g32.underlying, g32.shift) == moore_pair(3 * ell + 1));

  const auto g0 = smash_power_graded(f, 3, 0);
  REQUIRE(g0.bottom.has_value());
  CHECK_FALSE(g0.bottom->expanded.has_value());
  CHECK_FALSE(g0.bottom->null_flag);

  const auto to_zero = MapDescriptor::zero_map(StableComplex::sphere(2), StableComplex::zero());
  const auto z0 = smash_power_graded(to_zero, 2, 0);
  REQUIRE(z0.bottom.has_value());
  CHECK(z0.bottom->expanded == StableComplex::sphere(5));
  CHECK_FALSE(z0.bottom->null_flag);

  const auto null = MapDescriptor::zero_map(StableComplex::zero(), StableComplex::zero());
  CHECK(smash_power_graded(null, 3, 0).bottom->null_flag);

  CHECK_THROWS_AS(smash_power_graded(f, 3, 3), Error);
  CHECK_THROWS_AS(smash_power_graded(f, 0, 0), Error);
}

TEST_CASE("induction multiplicities count subsets") {
  for (int n = 1; n <= 12; ++n) {
    std::int64_t subsets = 0;
    for (int k = 1; k <= n - 1; ++k) {
      const auto g = smash_power_graded(MapDescriptor::degree_p(3), n, k);
      std::int64_t of_size_k = 0;
      for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (__builtin_popcount(mask) == k) ++of_size_k;
      }
      CHECK(g.induction_multiplicity == of_size_k);
      subsets += of_size_k;
    }
    CHECK(subsets == (std::int64_t{1} << n) - 2);
  }
}

TEST_CASE("layer filtration examples") {
  const int ell = 5;
  const auto f = MapDescriptor::degree_p(ell);

  const auto l2 = layer_filtration(f, 2);
  REQUIRE(l2.pieces.size() == 2);
  REQUIRE(l2.pieces[1].terms.size() == 1);
  const auto& t = l2.pieces[1].terms[0];
  CHECK(t.derivative_index == 1);
  CHECK(t.word->to_string() == "[x1,x2]");
  CHECK(t.expanded() == StableComplex::moore(2 * ell));
  CHECK(2 - 2 + ell * (2 - 1) == ell);

  const auto l4 = layer_filtration(f, 4);
  std::vector<int> ds;
  for (const auto& term : l4.pieces[2].terms) ds.push_back(term.derivative_index);
  CHECK(ds == std::vector<int>{1, 2});
  const auto& symbolic = l4.pieces[2].terms[1];
  CHECK_FALSE(symbolic.expanded().has_value());
  CHECK(symbolic.inner == suspend(smash(StableComplex::sphere(ell - 1), StableComplex::moore(ell - 1)), 1));
  CHECK_FALSE(expand_piece(l4.pieces[2], 3).has_value());

  for (int n : {2, 3, 5, 7, 11, 13}) {
    for (const auto& piece : layer_filtration(f, n, WordListing::count).pieces) {
      for (const auto& term : piece.terms) CHECK(term.derivative_index == 1);
    }
  }
}

TEST_CASE("bottom piece nullity") {
  const auto f = MapDescriptor::degree_p(5);
  CHECK_FALSE(layer_filtration(f, 6).pieces[0].bottom->null_flag);
  CHECK(layer_filtration(f, 7).pieces[0].bottom->null_flag);
  CHECK_FALSE(bottom_piece_null(MapDescriptor::degree_p(5, 5), 7));
  CHECK(bottom_piece_null(MapDescriptor::degree_p(5, 5), 11));
  CHECK(moore_layer_simplified(5, 7).pieces[0].bottom->null_flag);
  CHECK(moore_layer_simplified(5, 7).pieces[0].bottom->expanded == StableComplex::zero());
}

TEST_CASE("simplified Moore filtration") {
  const auto m = moore_layer_simplified(5, 7);
  REQUIRE(m.pieces.size() == 7);
  REQUIRE(m.pieces[1].terms.size() == 1);
  CHECK(m.pieces[1].terms[0].expanded() == StableComplex::moore(30));
  CHECK(m.pieces[2].terms.size() == static_cast<std::size_t>(witt_count(std::vector<int>{5, 2})));
  for (const auto& term : m.pieces[2].terms) CHECK(term.expanded() == moore_pair(30));
  for (int k = 1; k < 7; ++k) {
    CHECK(static_cast<std::int64_t>(m.pieces[static_cast<std::size_t>(k)].terms.size()) ==
          witt_count(std::vector<int>{7 - k, k}));
  }
  CHECK_THROWS_AS(moore_layer_simplified(5, 8), Error);
}

TEST_CASE("count listing groups words without changing the expansion") {
  for (int n : {3, 5, 7, 11}) {
    const auto listed = moore_layer_simplified(6, n);
    const auto counted = moore_layer_simplified(6, n, kDefaultPrime, WordListing::count);
    for (int k = 1; k < n; ++k) {
      const auto idx = static_cast<std::size_t>(k);
      CHECK(expand_piece(listed.pieces[idx], 3) == expand_piece(counted.pieces[idx], 3));
      REQUIRE(counted.pieces[idx].terms.size() == 1);
      CHECK_FALSE(counted.pieces[idx].terms[0].word.has_value());
    }
  }
}

TEST_CASE("general filtration matches the Moore closed form") {
  for (int ell : {5, 6}) {
    for (int n : {2, 3, 5, 7, 11, 13}) {
      const auto general = layer_filtration(MapDescriptor::degree_p(ell), n);
      const auto closed = moore_layer_simplified(ell, n);
      REQUIRE(general.pieces.size() == closed.pieces.size());
      for (int k = 1; k < n; ++k) {
        const auto idx = static_cast<std::size_t>(k);
        INFO("ell=" << ell << " n=" << n << " k=" << k);
        CHECK(expand_piece(general.pieces[idx], 3) == expand_piece(closed.pieces[idx], 3));
        // the same words, in the same order
        REQUIRE(general.pieces[idx].terms.size() == closed.pieces[idx].terms.size());
        for (std::size_t i = 0; i < closed.pieces[idx].terms.size(); ++i) {
          CHECK(*general.pieces[idx].terms[i].word == *closed.pieces[idx].terms[i].word);
        }
      }
    }
  }
}
