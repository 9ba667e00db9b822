#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "combinatorics.hpp"
#include "error.hpp"
#include "lie_words.hpp"
#include "stable_complex.hpp"

namespace gwcalc {

/// Multiplication by p on S^ell. Its cofibre is the Moore spectrum M^ell.
struct DegreePMap {
  int source_dim = 0;
};

/// The null map source -> target; its cofibre is target v Sigma source.
struct ZeroMap {
  StableComplex source;
  StableComplex target;
};

/// A map of spectra f : E -> F in the closed cell universe.
class MapDescriptor {
 public:
  static MapDescriptor degree_p(int source_dim, int prime = kDefaultPrime) {
    StableComplex::check_prime(prime);
    return MapDescriptor(DegreePMap{source_dim}, prime);
  }
  static MapDescriptor zero_map(StableComplex source, StableComplex target) {
    const int prime = detail::shared_prime(source, target);
    return MapDescriptor(ZeroMap{std::move(source), std::move(target)}, prime);
  }

  bool is_degree_p() const { return std::holds_alternative<DegreePMap>(map_); }
  int prime() const { return prime_; }
  const std::variant<DegreePMap, ZeroMap>& get() const { return map_; }

  StableComplex source() const {
    if (auto* d = std::get_if<DegreePMap>(&map_)) return StableComplex::sphere(d->source_dim, prime_);
    return std::get<ZeroMap>(map_).source;
  }
  StableComplex target() const {
    if (auto* d = std::get_if<DegreePMap>(&map_)) return StableComplex::sphere(d->source_dim, prime_);
    return std::get<ZeroMap>(map_).target;
  }
  StableComplex cofibre() const {
    if (auto* d = std::get_if<DegreePMap>(&map_)) return StableComplex::moore(d->source_dim, prime_);
    const auto& z = std::get<ZeroMap>(map_);
    return wedge(z.target, suspend(z.source, 1));
  }

  std::string to_string() const {
    if (auto* d = std::get_if<DegreePMap>(&map_)) {
      return std::to_string(prime_) + ": S^" + std::to_string(d->source_dim) + " -> S^" +
             std::to_string(d->source_dim);
    }
    const auto& z = std::get<ZeroMap>(map_);
    return "0: " + z.source.to_string() + " -> " + z.target.to_string();
  }

 private:
  MapDescriptor(std::variant<DegreePMap, ZeroMap> map, int prime) : map_(std::move(map)), prime_(prime) {}

  std::variant<DegreePMap, ZeroMap> map_;
  int prime_ = kDefaultPrime;
};

/// multiplicity copies of Sigma^shift D_d(inner). With d = 1 the functor D_1
/// is the identity. A term either names its basis word (multiplicity 1) or
/// stands for a whole group of words counted by the Witt formula.
struct LayerTerm {
  int shift = 0;
  int derivative_index = 1;
  StableComplex inner;
  std::optional<LieWord> word;
  std::int64_t multiplicity = 1;

  std::optional<StableComplex> expanded() const {
    if (derivative_index != 1) return std::nullopt;
    const auto single = suspend(inner, shift);
    StableComplex out(single.prime());
    for (const auto& [cell, mult] : single.cells()) {
      out.add(cell, combinatorics::checked_mul(mult, multiplicity));
    }
    return out;
  }
};

/// Whether filtration terms list each basis word or only count them.
enum class WordListing { enumerate, count };

/// The bottom graded piece: the cofibre of a map between two spectra that the
/// cell universe cannot always express (for f = p it is a mod p^n Moore
/// spectrum). It is kept as a token, expanded only when the map is null.
struct BottomPiece {
  std::string description;
  std::optional<StableComplex> expanded;
  bool null_flag = false;
};

struct FiltrationPiece {
  int k = 0;
  std::optional<BottomPiece> bottom;  // set exactly when k == 0
  std::vector<LayerTerm> terms;       // used when k >= 1
};

struct GradedFiltration {
  int n = 0;
  std::vector<FiltrationPiece> pieces;
};

// ---------------------------------------------------------------------------
// Filtration of cof(f)^{smash n}
// ---------------------------------------------------------------------------

/// gr_k of the filtration of cof(f)^{smash n}: for k >= 1 it is
/// Sigma Ind_{S_{n-k} x S_k}^{S_n}(E^{n-k} smash cof(f)^k); nonequivariantly a
/// wedge of C(n, k) copies of Sigma(E^{n-k} smash cof(f)^k).
struct SmashPowerPiece {
  int n = 0;
  int k = 0;
  std::optional<BottomPiece> bottom;
  int shift = 0;
  StableComplex underlying;
  std::int64_t induction_multiplicity = 0;

  std::optional<StableComplex> expanded() const {
    if (bottom) return bottom->expanded;
    StableComplex single = suspend(underlying, shift);
    StableComplex out(single.prime());
    for (const auto& [cell, mult] : single.cells()) {
      out.add(cell, combinatorics::checked_mul(mult, induction_multiplicity));
    }
    return out;
  }
};

inline SmashPowerPiece smash_power_graded(const MapDescriptor& f, int n, int k) {
  require(n >= 1, ErrorCode::precondition, "smash power index n must be at least 1");
  require(k >= 0 && k <= n - 1, ErrorCode::precondition,
          "graded index k = " + std::to_string(k) + " outside 0.." + std::to_string(n - 1));
  SmashPowerPiece out;
  out.n = n;
  out.k = k;
  if (k == 0) {
    BottomPiece bottom;
    bottom.description = "cof(E^" + std::to_string(n) + " -> F^" + std::to_string(n) + ") for f = " +
                         f.to_string();
    if (!f.is_degree_p()) {
      // f^{smash n} is null, so its cofibre splits.
      auto expanded = wedge(smash_power(f.target(), n), suspend(smash_power(f.source(), n), 1));
      bottom.null_flag = expanded.is_zero();
      bottom.expanded = std::move(expanded);
    }
    out.bottom = std::move(bottom);
    return out;
  }
  out.shift = 1;
  out.underlying = smash(smash_power(f.source(), n - k), smash_power(f.cofibre(), k));
  out.induction_multiplicity = combinatorics::binomial(n, k);
  return out;
}

// ---------------------------------------------------------------------------
// Filtration of D_n(cof f)
// ---------------------------------------------------------------------------

/// Nullity of the bottom piece cof(D_n S^ell -> D_n S^ell) for f = p: the
/// v_1-periodic tower of a sphere is constant after stage p or 2p, so the
/// piece vanishes once n > 2p.
inline bool bottom_piece_null(const MapDescriptor& f, int n) {
  if (f.is_degree_p()) return n > 2 * f.prime();
  return f.source().is_zero() && f.target().is_zero();
}

inline BottomPiece layer_bottom_piece(const MapDescriptor& f, int n) {
  BottomPiece bottom;
  bottom.description = "cof(D_" + std::to_string(n) + "E -> D_" + std::to_string(n) +
                       "F) for f = " + f.to_string();
  bottom.null_flag = bottom_piece_null(f, n);
  if (bottom.null_flag) bottom.expanded = StableComplex::zero(f.prime());
  return bottom;
}

/// Filtration of D_n(cof f) whose k-th piece, k >= 1, is the sum over
/// d | gcd(k, n-k) and w in B((n-k)/d, k/d) of
/// Sigma D_d Sigma((Sigma^{-1}E)^{(n-k)/d} smash (Sigma^{-1}cof f)^{k/d}).
inline GradedFiltration layer_filtration(const MapDescriptor& f, int n,
                                         WordListing listing = WordListing::enumerate) {
  require(n >= 1, ErrorCode::precondition, "layer index n must be at least 1");
  const auto desuspended_source = suspend(f.source(), -1);
  const auto desuspended_cofibre = suspend(f.cofibre(), -1);

  GradedFiltration out;
  out.n = n;
  out.pieces.push_back({0, layer_bottom_piece(f, n), {}});
  for (int k = 1; k <= n - 1; ++k) {
    FiltrationPiece piece{k, std::nullopt, {}};
    for (int d : combinatorics::divisors(std::gcd(k, n - k))) {
      const std::vector<int> degree{(n - k) / d, k / d};
      const auto inner = suspend(smash(smash_power(desuspended_source, (n - k) / d),
                                       smash_power(desuspended_cofibre, k / d)),
                                 1);
      if (listing == WordListing::count) {
        const auto count = witt_count(degree);
        if (count > 0) piece.terms.push_back({1, d, inner, std::nullopt, count});
        continue;
      }
      for (auto& word : basis_multidegree(degree).words) {
        piece.terms.push_back({1, d, inner, std::move(word), 1});
      }
    }
    out.pieces.push_back(std::move(piece));
  }
  return out;
}

/// The same filtration for f = p on S^ell and prime n, in closed form: the k-th
/// piece is |B(n-k, k)| copies of Sigma^{2-n+ell(n-k)} (M^ell)^{smash k}.
inline GradedFiltration moore_layer_simplified(int ell, int n, int prime = kDefaultPrime,
                                               WordListing listing = WordListing::enumerate) {
  require(combinatorics::is_prime(n), ErrorCode::not_prime,
          "the simplified Moore filtration needs a prime layer index, got " + std::to_string(n));
  const auto f = MapDescriptor::degree_p(ell, prime);
  const auto moore = StableComplex::moore(ell, prime);

  GradedFiltration out;
  out.n = n;
  out.pieces.push_back({0, layer_bottom_piece(f, n), {}});
  for (int k = 1; k <= n - 1; ++k) {
    FiltrationPiece piece{k, std::nullopt, {}};
    const auto power = smash_power(moore, k);
    const int shift = 2 - n + ell * (n - k);
    const std::vector<int> degree{n - k, k};
    if (listing == WordListing::count) {
      piece.terms.push_back({shift, 1, power, std::nullopt, witt_count(degree)});
    } else {
      for (auto& word : basis_multidegree(degree).words) {
        piece.terms.push_back({shift, 1, power, std::move(word), 1});
      }
    }
    out.pieces.push_back(std::move(piece));
  }
  return out;
}

/// Wedge of the expanded d = 1 terms of one piece; nullopt if any term has d >= 2.
inline std::optional<StableComplex> expand_piece(const FiltrationPiece& piece, int prime) {
  if (piece.bottom) return piece.bottom->expanded;
  StableComplex out(prime);
  for (const auto& term : piece.terms) {
    auto expanded = term.expanded();
    if (!expanded) return std::nullopt;
    out = wedge(out, *expanded);
  }
  return out;
}

}  // namespace gwcalc
