#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "combinatorics.hpp"
#include "error.hpp"

namespace gwcalc {

inline constexpr int kDefaultPrime = 3;

enum class CellKind { sphere = 0, moore = 1 };

/// A single stable cell: the sphere spectrum S^dim, or the mod-p Moore
/// spectrum M^dim = S^dim / p with cells in dimensions dim and dim + 1.
/// Ordering is the normal-form order: spheres before Moore cells, then by dim.
struct Cell {
  CellKind kind = CellKind::sphere;
  int dim = 0;

  static constexpr Cell sphere(int d) { return {CellKind::sphere, d}; }
  static constexpr Cell moore(int d) { return {CellKind::moore, d}; }

  friend constexpr auto operator<=>(const Cell&, const Cell&) = default;
};

/// Finite formal wedge of sphere and Moore cells with positive multiplicities.
/// The empty wedge is the zero spectrum. All Moore cells share one prime, which
/// the complex carries so that mismatches can be rejected.
class StableComplex {
 public:
  using Multiplicity = std::int64_t;
  using CellMap = std::map<Cell, Multiplicity>;

  StableComplex() = default;
  explicit StableComplex(int prime) : prime_(prime) { check_prime(prime); }

  static StableComplex zero(int prime = kDefaultPrime) { return StableComplex(prime); }
  static StableComplex sphere(int dim, int prime = kDefaultPrime) {
    return of(Cell::sphere(dim), 1, prime);
  }
  static StableComplex moore(int dim, int prime = kDefaultPrime) {
    return of(Cell::moore(dim), 1, prime);
  }
  static StableComplex of(Cell cell, Multiplicity mult, int prime = kDefaultPrime) {
    StableComplex out(prime);
    out.add(cell, mult);
    return out;
  }

  int prime() const noexcept { return prime_; }
  const CellMap& cells() const noexcept { return cells_; }
  bool is_zero() const noexcept { return cells_.empty(); }

  Multiplicity multiplicity(Cell cell) const {
    auto it = cells_.find(cell);
    return it == cells_.end() ? 0 : it->second;
  }

  Multiplicity cell_count() const {
    Multiplicity total = 0;
    for (const auto& [cell, mult] : cells_) total = combinatorics::checked_add(total, mult);
    return total;
  }

  bool has_sphere_cells() const {
    return std::any_of(cells_.begin(), cells_.end(),
                       [](const auto& entry) { return entry.first.kind == CellKind::sphere; });
  }
  bool has_moore_cells() const {
    return std::any_of(cells_.begin(), cells_.end(),
                       [](const auto& entry) { return entry.first.kind == CellKind::moore; });
  }

  /// The single sphere dimension when this complex is exactly one S^d.
  std::optional<int> single_sphere_dim() const {
    if (cells_.size() != 1) return std::nullopt;
    const auto& [cell, mult] = *cells_.begin();
    if (cell.kind != CellKind::sphere || mult != 1) return std::nullopt;
    return cell.dim;
  }

  /// Adds mult copies of cell; a zero multiplicity is a no-op.
  void add(Cell cell, Multiplicity mult) {
    require(mult >= 0, ErrorCode::precondition, "cell multiplicity must be positive");
    if (mult == 0) return;
    auto& slot = cells_[cell];
    slot = combinatorics::checked_add(slot, mult);
  }

  friend bool operator==(const StableComplex&, const StableComplex&) = default;

  std::string to_string() const {
    if (cells_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [cell, mult] : cells_) {
      if (!first) out << " v ";
      first = false;
      if (mult != 1) out << mult << '*';
      out << (cell.kind == CellKind::sphere ? "S^" : "M^") << cell.dim;
    }
    return out.str();
  }

  static void check_prime(int prime) {
    require(prime > 2 && combinatorics::is_prime(prime), ErrorCode::not_prime,
            "Moore prime must be an odd prime, got " + std::to_string(prime));
  }

 private:
  int prime_ = kDefaultPrime;
  CellMap cells_;
};

namespace detail {

inline int shared_prime(const StableComplex& a, const StableComplex& b) {
  require(a.prime() == b.prime(), ErrorCode::prime_mismatch,
          "complexes carry different primes: " + std::to_string(a.prime()) + " and " +
              std::to_string(b.prime()));
  return a.prime();
}

}  // namespace detail

inline StableComplex wedge(const StableComplex& a, const StableComplex& b) {
  StableComplex out(detail::shared_prime(a, b));
  for (const auto& [cell, mult] : a.cells()) out.add(cell, mult);
  for (const auto& [cell, mult] : b.cells()) out.add(cell, mult);
  return out;
}

inline StableComplex suspend(const StableComplex& a, int shift) {
  StableComplex out(a.prime());
  for (const auto& [cell, mult] : a.cells()) out.add({cell.kind, cell.dim + shift}, mult);
  return out;
}

/// Smash product of two cells as a formal wedge. The Moore-Moore rule is the
/// odd-primary splitting M^a ∧ M^b ≃ M^{a+b} ∨ M^{a+b+1}.
inline StableComplex smash_cells(Cell a, Cell b, int prime) {
  StableComplex out(prime);
  const int dim = a.dim + b.dim;
  if (a.kind == CellKind::sphere && b.kind == CellKind::sphere) {
    out.add(Cell::sphere(dim), 1);
  } else if (a.kind == CellKind::moore && b.kind == CellKind::moore) {
    out.add(Cell::moore(dim), 1);
    out.add(Cell::moore(dim + 1), 1);
  } else {
    out.add(Cell::moore(dim), 1);
  }
  return out;
}

inline StableComplex smash(const StableComplex& a, const StableComplex& b) {
  const int prime = detail::shared_prime(a, b);
  StableComplex out(prime);
  for (const auto& [ca, ma] : a.cells()) {
    for (const auto& [cb, mb] : b.cells()) {
      const auto mult = combinatorics::checked_mul(ma, mb);
      const auto product = smash_cells(ca, cb, prime);
      for (const auto& [cell, m] : product.cells()) {
        out.add(cell, combinatorics::checked_mul(mult, m));
      }
    }
  }
  return out;
}

/// k-fold smash power by iterated squaring; k = 0 gives the unit S^0.
inline StableComplex smash_power(const StableComplex& a, int k) {
  require(k >= 0, ErrorCode::precondition, "smash power exponent must be nonnegative");
  StableComplex result = StableComplex::sphere(0, a.prime());
  StableComplex base = a;
  while (k > 0) {
    if (k & 1) result = smash(result, base);
    k >>= 1;
    if (k > 0) base = smash(base, base);
  }
  return result;
}

}  // namespace gwcalc
