#include <catch_amalgamated.hpp>

#include <random>

#include <gwcalc/k_euler.hpp>

#include "differentials.hpp"
#include "generators.hpp"

using namespace gwcalc;

TEST_CASE("euler characteristic of Moore complexes") {
  CHECK(euler_char(StableComplex::moore(5)) == -1);
  CHECK(euler_char(StableComplex::moore(6)) == 1);
  for (int k = 2; k <= 6; ++k) CHECK(euler_char(smash_power(StableComplex::moore(5), k)) == 0);
  CHECK(euler_char(StableComplex::zero()) == 0);
  try {
    euler_char(StableComplex::sphere(3));
    FAIL("sphere accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::precondition);
    CHECK(std::string(e.what()).find("non-torsion K-theory") != std::string::npos);
  }
}

TEST_CASE("euler characteristic under suspension and smash") {
  std::mt19937_64 rng(gwtest::kSeed);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = gwtest::random_moore(rng);
    const auto b = gwtest::random_moore(rng);
    CHECK(euler_char(suspend(a, 1)) == -euler_char(a));
    CHECK(euler_char(smash(a, b)) == 0);
  }
}

TEST_CASE("homology euler check examples") {
  const ModMatrix zero01(1, 2, 3);
  const ModMatrix zero10(2, 1, 3);
  const auto r = homology_euler_check({2, 1}, {zero01, zero10});
  CHECK(r.before == 1);
  CHECK(r.after == 1);

  const auto iso = ModMatrix::from_rows({{1}}, 1, 3);
  const auto acyclic = homology_euler_check({1, 1}, {iso, ModMatrix(1, 1, 3)});
  CHECK(acyclic.before == 0);
  CHECK(acyclic.after == 0);

  CHECK_THROWS_AS(homology_euler_check({1, 1}, {iso, iso}), Error);
  CHECK_THROWS_AS(homology_euler_check({2, 1}, {iso, iso}), Error);
}

TEST_CASE("odd differentials preserve euler characteristic, small ranks exhaustively") {
  std::size_t visited = 0;
  for (std::size_t even = 0; even <= 2; ++even) {
    for (std::size_t odd = 0; odd <= 2; ++odd) {
      gwtest::for_each_differential(even, odd, 3, [&](const OddDifferential& d) {
        const auto r = homology_euler_check({static_cast<std::int64_t>(even), static_cast<std::int64_t>(odd)}, d);
        CHECK(r.after == r.before);
        ++visited;
      });
    }
  }
  CHECK(visited == 1 + 1 + 1 + 1 + 5 + 17 + 1 + 17 + 225);
}

TEST_CASE("odd differentials preserve euler characteristic, random") {
  std::mt19937_64 rng(gwtest::kSeed + 3);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t even = rng() % 7;
    const std::size_t odd = rng() % 7;
    const auto d = gwtest::random_differential(rng, even, odd, 3);
    const auto r = homology_euler_check({static_cast<std::int64_t>(even), static_cast<std::int64_t>(odd)}, d);
    CHECK(r.after == r.before);
  }
}

TEST_CASE("layer euler characteristics") {
  CHECK(layer_euler(5, 7) == 1);
  CHECK(layer_euler(6, 7) == -1);
  CHECK(layer_euler(5, 11) == 1);
  CHECK(layer_euler_closed_form(5, 11) == 1);
  CHECK_THROWS_AS(layer_euler(5, 5), Error);
  CHECK_THROWS_AS(layer_euler(5, 9), Error);
  CHECK_THROWS_AS(layer_euler(5, 7, 5), Error);
  CHECK(layer_euler(5, 11, 5) == 1);
}

TEST_CASE("only the k = 1 line contributes") {
  const auto filtration = moore_layer_simplified(5, 13, 3, WordListing::count);
  for (int k = 2; k < 13; ++k) {
    CHECK(euler_char(*expand_piece(filtration.pieces[static_cast<std::size_t>(k)], 3)) == 0);
  }
  CHECK(euler_char(*expand_piece(filtration.pieces[1], 3)) == layer_euler_closed_form(5, 13));
}

TEST_CASE("nonvanishing reports") {
  const auto r = moore_nonvanishing_report(5, 30);
  std::vector<int> primes;
  for (const auto& e : r.entries) {
    primes.push_back(e.n);
    CHECK((e.chi == 1 || e.chi == -1));
  }
  CHECK(primes == std::vector<int>{7, 11, 13, 17, 19, 23, 29});
  CHECK(r.all_nonzero);
  CHECK(r.closed_form_agrees);
  CHECK_FALSE(r.citations.empty());

  CHECK(moore_nonvanishing_report(5, 6).entries.empty());

  const auto r6 = moore_nonvanishing_report(6, 14);
  REQUIRE(r6.entries.size() == 3);
  for (const auto& e : r6.entries) CHECK(e.chi == -1);
}

TEST_CASE("split limit report") {
  const auto r = moore_split_limit_report(5, 30);
  CHECK(r.certificate.entries.size() == 7);
  CHECK_FALSE(r.limit_statement.empty());
  CHECK(r.conclusion_route.size() >= 3);
  CHECK_THROWS_AS(moore_split_limit_report(4, 30), Error);

  const auto r7 = moore_split_limit_report(7, 40, 5);
  std::vector<int> primes;
  for (const auto& e : r7.certificate.entries) primes.push_back(e.n);
  CHECK(primes == std::vector<int>{11, 13, 17, 19, 23, 29, 31, 37});
}
