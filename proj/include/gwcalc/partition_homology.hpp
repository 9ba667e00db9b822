#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "combinatorics.hpp"
#include "error.hpp"
#include "modular.hpp"
#include "stable_complex.hpp"

namespace gwcalc {

/// A set partition of {1..n}, stored as the sorted list of its blocks, each block
/// a bitmask (bit i-1 stands for element i).
struct SetPartition {
  std::vector<std::uint32_t> blocks;

  std::size_t block_count() const { return blocks.size(); }

  /// True when every block of *this lies inside a block of other.
  bool refines(const SetPartition& other) const {
    return std::all_of(blocks.begin(), blocks.end(), [&](std::uint32_t b) {
      return std::any_of(other.blocks.begin(), other.blocks.end(),
                         [b](std::uint32_t c) { return (b & c) == b; });
    });
  }

  std::string to_string() const {
    std::string out;
    for (auto block : blocks) {
      out += '{';
      bool first = true;
      for (int i = 0; i < 32; ++i) {
        if (!(block & (1u << i))) continue;
        if (!first) out += ',';
        first = false;
        out += std::to_string(i + 1);
      }
      out += '}';
    }
    return out;
  }

  friend auto operator<=>(const SetPartition&, const SetPartition&) = default;
};

/// Proper nondiscrete partitions of {1..n} under strict refinement. Elements
/// are listed finest first (most blocks), so every strict chain is an
/// increasing index sequence.
struct PartitionPoset {
  int n = 0;
  std::vector<SetPartition> elements;
  std::vector<std::vector<std::uint32_t>> coarser;  // strictly coarser elements, ascending

  bool less(std::size_t a, std::size_t b) const {
    return std::binary_search(coarser[a].begin(), coarser[a].end(), static_cast<std::uint32_t>(b));
  }
};

inline std::vector<SetPartition> set_partitions(int n) {
  require(n >= 1 && n <= 16, ErrorCode::precondition, "set_partitions supports 1 <= n <= 16");
  std::vector<SetPartition> out;
  std::vector<int> growth(static_cast<std::size_t>(n), 0);
  auto rec = [&](auto&& self, int index, int used) -> void {
    if (index == n) {
      SetPartition partition;
      partition.blocks.assign(static_cast<std::size_t>(used), 0);
      for (int i = 0; i < n; ++i) partition.blocks[static_cast<std::size_t>(growth[static_cast<std::size_t>(i)])] |= 1u << i;
      std::sort(partition.blocks.begin(), partition.blocks.end());
      out.push_back(std::move(partition));
      return;
    }
    for (int b = 0; b <= used && b < n; ++b) {
      growth[static_cast<std::size_t>(index)] = b;
      self(self, index + 1, b == used ? used + 1 : used);
    }
  };
  rec(rec, 0, 0);
  return out;
}

inline PartitionPoset partition_poset(int n) {
  require(n >= 2, ErrorCode::precondition, "the partition poset needs n >= 2");
  PartitionPoset poset;
  poset.n = n;
  for (auto& p : set_partitions(n)) {
    const auto blocks = static_cast<int>(p.block_count());
    if (blocks > 1 && blocks < n) poset.elements.push_back(std::move(p));
  }
  std::sort(poset.elements.begin(), poset.elements.end(), [](const auto& a, const auto& b) {
    if (a.block_count() != b.block_count()) return a.block_count() > b.block_count();
    return a.blocks < b.blocks;
  });
  const auto size = poset.elements.size();
  poset.coarser.resize(size);
  for (std::size_t a = 0; a < size; ++a) {
    for (std::size_t b = a + 1; b < size; ++b) {
      const auto& pa = poset.elements[a];
      const auto& pb = poset.elements[b];
      if (pa.block_count() > pb.block_count() && pa.refines(pb)) {
        poset.coarser[a].push_back(static_cast<std::uint32_t>(b));
      }
    }
  }
  return poset;
}

/// Coefficients for homology: Z/p, or the rationals (characteristic 0).
struct Coefficients {
  std::uint32_t characteristic = 0;

  static Coefficients rationals() { return {0}; }
  static Coefficients mod(std::uint32_t p) { return {p}; }
  bool is_rational() const { return characteristic == 0; }
  std::string name() const { return is_rational() ? "Q" : "F_" + std::to_string(characteristic); }
};

/// Primes whose ranks bound the rational ranks from below. Rational Betti
/// numbers are then bounded above by the resulting ones, so when those are
/// concentrated in one degree the Euler characteristic pins the rational answer.
inline const std::vector<std::uint32_t> kRationalWitnessPrimes{2, 3, 5, 2147483647u};

struct ChainComplexTable {
  int n = 0;
  Coefficients coefficients;
  std::vector<std::uint32_t> computed_mod;  // primes actually used for ranks

  /// simplex_counts[i] = number of i-simplices (chains of i+1 elements).
  std::vector<std::size_t> simplex_counts;
  /// boundaries[i] is d_i : C_i -> C_{i-1} with +-1 entries; boundaries[0] is the
  /// augmentation to the one-dimensional C_{-1}.
  std::vector<std::vector<SparseColumn>> boundaries;
  /// ranks[i] = rank of boundaries[i] over the coefficients.
  std::vector<std::size_t> ranks;
  /// Reduced Betti numbers for degrees -1 .. top, zeros included.
  std::map<int, std::int64_t> reduced_betti;
  /// For rational coefficients: whether the certificate above applied.
  bool rational_certified = false;

  std::map<int, std::int64_t> nonzero_betti() const {
    std::map<int, std::int64_t> out;
    for (auto [degree, value] : reduced_betti) {
      if (value != 0) out[degree] = value;
    }
    return out;
  }

  std::int64_t reduced_euler() const {
    std::int64_t sum = 0;
    for (auto [degree, value] : reduced_betti) sum += (degree % 2 == 0 ? 1 : -1) * value;
    return sum;
  }
};

inline constexpr int kDefaultPartitionBound = 7;

namespace detail {

using Chain = std::vector<std::uint16_t>;

/// Strict chains of the poset grouped by number of elements minus one.
inline std::vector<std::vector<Chain>> enumerate_chains(const PartitionPoset& poset) {
  std::vector<std::vector<Chain>> by_degree;
  Chain current;
  auto rec = [&](auto&& self, std::uint32_t element) -> void {
    current.push_back(static_cast<std::uint16_t>(element));
    const auto degree = current.size() - 1;
    if (by_degree.size() <= degree) by_degree.resize(degree + 1);
    by_degree[degree].push_back(current);
    for (auto next : poset.coarser[element]) self(self, next);
    current.pop_back();
  };
  for (std::uint32_t e = 0; e < poset.elements.size(); ++e) rec(rec, e);
  for (auto& chains : by_degree) std::sort(chains.begin(), chains.end());
  return by_degree;
}

inline std::vector<std::vector<SparseColumn>> build_boundaries(
    const std::vector<std::vector<Chain>>& chains) {
  std::vector<std::vector<SparseColumn>> out(chains.size());
  if (chains.empty()) return out;
  out[0].resize(chains[0].size());
  for (auto& column : out[0]) column.entries = {{0u, 1}};
  for (std::size_t degree = 1; degree < chains.size(); ++degree) {
    const auto& faces = chains[degree - 1];
    auto& columns = out[degree];
    columns.resize(chains[degree].size());
    Chain face;
    for (std::size_t c = 0; c < chains[degree].size(); ++c) {
      const auto& simplex = chains[degree][c];
      auto& entries = columns[c].entries;
      for (std::size_t drop = 0; drop < simplex.size(); ++drop) {
        face.clear();
        for (std::size_t v = 0; v < simplex.size(); ++v) {
          if (v != drop) face.push_back(simplex[v]);
        }
        auto it = std::lower_bound(faces.begin(), faces.end(), face);
        require(it != faces.end() && *it == face, ErrorCode::invariant, "missing face in nerve");
        entries.emplace_back(static_cast<std::uint32_t>(it - faces.begin()), drop % 2 == 0 ? 1 : -1);
      }
      std::sort(entries.begin(), entries.end());
    }
  }
  return out;
}

/// Ranks of all boundary maps mod p, reduced from the top degree down so that
/// pivots of d_{i+1} clear columns of d_i.
inline std::vector<std::size_t> boundary_ranks(const std::vector<std::vector<SparseColumn>>& boundaries,
                                               std::uint32_t p) {
  std::vector<std::size_t> ranks(boundaries.size(), 0);
  std::vector<std::uint32_t> cleared;
  for (std::size_t degree = boundaries.size(); degree-- > 0;) {
    std::vector<bool> skip(boundaries[degree].size(), false);
    for (auto row : cleared) skip[row] = true;
    auto reduction = sparse_rank(boundaries[degree], p, &skip);
    ranks[degree] = reduction.rank;
    cleared = std::move(reduction.pivot_rows);
  }
  return ranks;
}

}  // namespace detail

/// Reduced homology of the nerve of the partition poset.
inline ChainComplexTable order_complex_betti(int n, Coefficients coefficients,
                                             int max_n = kDefaultPartitionBound) {
  require(n >= 2, ErrorCode::precondition, "partition complex needs n >= 2");
  require(n <= max_n, ErrorCode::bound_exceeded,
          "partition complex for n = " + std::to_string(n) + " exceeds the bound " +
              std::to_string(max_n));
  const auto poset = partition_poset(n);
  const auto chains = detail::enumerate_chains(poset);

  ChainComplexTable table;
  table.n = n;
  table.coefficients = coefficients;
  table.computed_mod = coefficients.is_rational() ? kRationalWitnessPrimes
                                                  : std::vector<std::uint32_t>{coefficients.characteristic};
  for (const auto& c : chains) table.simplex_counts.push_back(c.size());
  table.boundaries = detail::build_boundaries(chains);
  table.ranks.assign(table.boundaries.size(), 0);
  for (auto p : table.computed_mod) {
    const auto ranks = detail::boundary_ranks(table.boundaries, p);
    for (std::size_t i = 0; i < ranks.size(); ++i) table.ranks[i] = std::max(table.ranks[i], ranks[i]);
  }

  const auto top = static_cast<int>(table.simplex_counts.size()) - 1;
  auto rank_of = [&](int degree) -> std::int64_t {
    if (degree < 0 || degree > top) return 0;
    return static_cast<std::int64_t>(table.ranks[static_cast<std::size_t>(degree)]);
  };
  table.reduced_betti[-1] = 1 - rank_of(0);
  for (int degree = 0; degree <= top; ++degree) {
    table.reduced_betti[degree] =
        static_cast<std::int64_t>(table.simplex_counts[static_cast<std::size_t>(degree)]) -
        rank_of(degree) - rank_of(degree + 1);
  }
  if (coefficients.is_rational()) table.rational_certified = table.nonzero_betti().size() <= 1;
  return table;
}

/// Reduced Euler characteristic of the nerve by counting chains alone:
/// sum_i (-1)^i #(chains of i+1 elements) - 1. No linear algebra involved.
inline std::int64_t euler_check(int n) {
  const auto poset = partition_poset(n);
  const auto size = poset.elements.size();
  // counts[e][l] = number of chains with l+1 elements starting at e.
  std::vector<std::vector<std::int64_t>> counts(size);
  std::size_t longest = 1;
  for (std::size_t e = size; e-- > 0;) {
    auto& row = counts[e];
    row.assign(1, 1);
    for (auto next : poset.coarser[e]) {
      const auto& tail = counts[next];
      if (row.size() < tail.size() + 1) row.resize(tail.size() + 1, 0);
      for (std::size_t l = 0; l < tail.size(); ++l) row[l + 1] += tail[l];
    }
    longest = std::max(longest, row.size());
  }
  std::int64_t euler = -1;
  for (std::size_t l = 0; l < longest; ++l) {
    std::int64_t chains = 0;
    for (const auto& row : counts) {
      if (l < row.size()) chains += row[l];
    }
    euler += (l % 2 == 0 ? 1 : -1) * chains;
  }
  return euler;
}

/// Checks d_{i-1} o d_i = 0 over the integers for every degree.
inline bool boundary_squared_is_zero(const ChainComplexTable& table) {
  for (std::size_t degree = 1; degree < table.boundaries.size(); ++degree) {
    const auto& lower = table.boundaries[degree - 1];
    for (const auto& column : table.boundaries[degree]) {
      std::map<std::uint32_t, std::int64_t> image;
      for (auto [row, value] : column.entries) {
        for (auto [row2, value2] : lower[row].entries) image[row2] += std::int64_t{value} * value2;
      }
      for (auto [row, value] : image) {
        if (value != 0) return false;
      }
    }
  }
  return true;
}

/// Nonequivariant cell structure of the n-th derivative of the identity: the
/// Spanier-Whitehead dual of the suspended unreduced suspension of the
/// partition complex, a wedge of (n-1)! copies of S^{1-n}.
struct DerivativeCells {
  int n = 0;
  std::int64_t count = 0;
  int dim = 0;
  StableComplex complex;
};

inline DerivativeCells derivative_cells(const ChainComplexTable& table) {
  const auto nonzero = table.nonzero_betti();
  require(nonzero.size() == 1 && nonzero.begin()->first == table.n - 3, ErrorCode::invariant,
          "partition complex homology is not concentrated in degree n-3");
  DerivativeCells out;
  out.n = table.n;
  out.count = nonzero.begin()->second;
  // Top homology in degree n-3 moves to n-2 under unreduced suspension, to n-1
  // under suspension, and to 1-n under duality.
  out.dim = 1 - table.n;
  out.complex = StableComplex::of(Cell::sphere(out.dim), out.count);
  return out;
}

inline DerivativeCells derivative_cells(int n, int max_n = kDefaultPartitionBound) {
  return derivative_cells(order_complex_betti(n, Coefficients::rationals(), max_n));
}

}  // namespace gwcalc
