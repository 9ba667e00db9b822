#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "combinatorics.hpp"
#include "error.hpp"
#include "lie_words.hpp"
#include "stable_complex.hpp"

namespace gwcalc {

// ---------------------------------------------------------------------------
// Truncation poset and floor rules
// ---------------------------------------------------------------------------

/// All tuples (a_1, ..., a_k) in {0..n}^k with a_1 + ... + a_k <= n, listed by
/// total and then with earlier coordinates descending. This listing is a linear
/// extension of the componentwise order.
struct TruncationPoset {
  int n = 0;
  int k = 0;
  std::vector<std::vector<int>> tuples;

  static bool leq(std::span<const int> a, std::span<const int> b) {
    return std::equal(a.begin(), a.end(), b.begin(), b.end(), [](int x, int y) { return x <= y; });
  }
};

inline TruncationPoset un_poset(int n, int k) {
  require(n >= 0 && k >= 1, ErrorCode::precondition, "un_poset needs n >= 0 and k >= 1");
  TruncationPoset out{n, k, {}};
  for (int total = 0; total <= n; ++total) {
    for (auto& tuple : combinatorics::compositions(total, k)) out.tuples.push_back(std::move(tuple));
  }
  return out;
}

/// min_i floor(n_i / a_i): the single-variable degree to which a multivariable
/// P_{n_1..n_k} truncation of a multi-homogeneous functor of degree a survives.
inline int multivar_truncation(std::span<const int> stage, std::span<const int> weights) {
  require(!weights.empty() && stage.size() == weights.size(), ErrorCode::precondition,
          "stage and weight vectors must have the same positive length");
  int best = -1;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    require(weights[i] >= 1, ErrorCode::precondition, "weights must be positive");
    require(stage[i] >= 0, ErrorCode::precondition, "stage entries must be nonnegative");
    const int q = stage[i] / weights[i];
    best = best < 0 ? q : std::min(best, q);
  }
  return best;
}

/// Maximum of multivar_truncation over U_n^k, computed by exhaustion. Tuples
/// are visited depth first, carrying the running minimum.
inline int single_from_multi(int n, std::span<const int> weights) {
  require(!weights.empty(), ErrorCode::precondition, "weights must be nonempty");
  require(n >= 0, ErrorCode::precondition, "n must be nonnegative");
  for (int a : weights) require(a >= 1, ErrorCode::precondition, "weights must be positive");
  const auto k = weights.size();
  int best = 0;
  auto visit = [&](auto&& self, std::size_t i, int left, int running) -> void {
    if (i == k) {
      best = std::max(best, running);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      const int q = v / weights[i];
      self(self, i + 1, left - v, i == 0 ? q : std::min(running, q));
    }
  };
  visit(visit, 0, n, 0);
  return best;
}

// ---------------------------------------------------------------------------
// Stabilization stages
// ---------------------------------------------------------------------------

/// Which parity of sphere dimension stabilizes at p^h (the other at 2p^h).
enum class ParityRule { odd_at_p_h, even_at_p_h };

struct StabilizationConfig {
  int prime = 2;
  int height = 1;
  ParityRule parity = ParityRule::odd_at_p_h;
};

inline std::int64_t sphere_stabilization_stage(int sphere_dim, const StabilizationConfig& config) {
  require(combinatorics::is_prime(config.prime), ErrorCode::not_prime,
          "stabilization prime must be prime, got " + std::to_string(config.prime));
  require(config.height >= 1, ErrorCode::precondition, "height must be at least 1");
  const std::int64_t base = combinatorics::ipow(config.prime, config.height);
  const bool odd = sphere_dim % 2 != 0;
  const bool single = config.parity == ParityRule::odd_at_p_h ? odd : !odd;
  return single ? base : 2 * base;
}

/// Stage after which the factor of Sigma w(S^{d_1}, ..., S^{d_k}) in the tower
/// of a wedge stops changing: |w| times the stage of the sphere S^{1 + sum n_i d_i}.
inline std::int64_t stabilization_stage(const LieWord& word, std::span<const int> dims,
                                        const StabilizationConfig& config) {
  require(static_cast<int>(dims.size()) >= word.max_letter(), ErrorCode::precondition,
          "not enough sphere dimensions for the word");
  int target = 1;
  for (int letter : word.foliage()) {
    const int d = dims[static_cast<std::size_t>(letter - 1)];
    require(d >= 1, ErrorCode::precondition, "sphere dimensions must be at least 1");
    target += d;
  }
  return combinatorics::checked_mul(word.length(), sphere_stabilization_stage(target, config));
}

/// Dimensions of the inputs when each is a single sphere S^d with d >= 1.
inline std::optional<std::vector<int>> sphere_dims(std::span<const StableComplex> inputs) {
  std::vector<int> dims;
  for (const auto& x : inputs) {
    auto d = x.single_sphere_dim();
    if (!d || *d < 1) return std::nullopt;
    dims.push_back(*d);
  }
  return dims;
}

// ---------------------------------------------------------------------------
// Hilton-Milnor factors and tower descriptors
// ---------------------------------------------------------------------------

struct HmFactor {
  LieWord word;
  StableComplex target;  // Sigma w(X_1, ..., X_k)
};

inline void require_inputs(std::span<const StableComplex> inputs) {
  require(!inputs.empty(), ErrorCode::precondition, "at least one input complex is required");
  for (const auto& x : inputs) {
    require(!x.is_zero(), ErrorCode::precondition, "input complexes must be nonzero");
    detail::shared_prime(inputs.front(), x);
  }
}

inline std::vector<HmFactor> hm_factors(std::span<const StableComplex> inputs, int max_length) {
  require_inputs(inputs);
  std::vector<HmFactor> out;
  for (auto& word : hall_basis(static_cast<int>(inputs.size()), max_length)) {
    auto target = suspend(evaluate(word, inputs), 1);
    out.push_back({std::move(word), std::move(target)});
  }
  return out;
}

struct TowerFactor {
  LieWord word;
  int trunc = 0;                 // floor(n / |w|)
  StableComplex factor_complex;  // Sigma w(X)
  std::optional<std::int64_t> stab_stage;
};

struct TowerDescriptor {
  int n = 0;
  std::vector<TowerFactor> factors;
};

/// Stage n of the tower on Sigma X_1 v ... v Sigma X_k as the product over basis
/// words of Omega P_{floor(n/|w|)}(Sigma w(X)). Stabilization stages are filled
/// in when every input is a sphere of positive dimension.
inline TowerDescriptor tower_stage(int n, std::span<const StableComplex> inputs,
                                   const StabilizationConfig& config = {}) {
  require(n >= 1, ErrorCode::precondition, "tower stage must be at least 1");
  const auto dims = sphere_dims(inputs);
  TowerDescriptor out{n, {}};
  for (auto& [word, target] : hm_factors(inputs, n)) {
    std::optional<std::int64_t> stage;
    if (dims) stage = stabilization_stage(word, *dims, config);
    const int trunc = n / word.length();
    out.factors.push_back({std::move(word), trunc, std::move(target), stage});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Layers of a wedge
// ---------------------------------------------------------------------------

struct LayerDecompositionTerm {
  std::vector<int> composition;  // (n_1, ..., n_k), summing to n
  int divisor = 1;               // d, also the derivative index of D_d
  LieWord word;                  // in B(n_1/d, ..., n_k/d)
  StableComplex target;          // Sigma w(X); the term is Omega D_d(target)
};

struct LayerDecomposition {
  int n = 0;
  std::vector<LayerDecompositionTerm> terms;
};

/// The n-th layer of the tower on a wedge of suspensions, as the product over
/// compositions of n, common divisors d, and words of multidegree composition/d.
inline LayerDecomposition wedge_layer_decomposition(int n, std::span<const StableComplex> inputs) {
  require(n >= 1, ErrorCode::precondition, "layer index must be at least 1");
  require_inputs(inputs);
  const int k = static_cast<int>(inputs.size());
  LayerDecomposition out{n, {}};
  for (const auto& composition : combinatorics::compositions(n, k)) {
    const int g = combinatorics::gcd_of(composition);
    for (int d : combinatorics::divisors(g)) {
      Multidegree reduced;
      for (int v : composition) reduced.push_back(v / d);
      for (auto& word : basis_multidegree(reduced).words) {
        auto target = suspend(evaluate(word, inputs), 1);
        out.terms.push_back({composition, d, std::move(word), std::move(target)});
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Divergence report for wedges of spheres
// ---------------------------------------------------------------------------

struct DivergenceEntry {
  LieWord word;
  Multidegree multidegree;
  int target_dim = 0;  // the factor Sigma w(X) is S^target_dim
  std::int64_t stab_stage = 0;
};

struct DivergenceReport {
  std::vector<int> dims;
  StabilizationConfig config;
  int max_length = 0;
  std::vector<DivergenceEntry> entries;
  std::vector<std::int64_t> words_per_length;      // index m - 1
  std::vector<std::int64_t> necklaces_per_length;  // independent count
  std::vector<std::int64_t> increasing_stages;     // strictly increasing witness
  bool all_targets_nonzero = true;
  bool counts_positive = false;
  bool counts_match_necklaces = false;
  bool stages_unbounded = false;
  std::vector<std::string> notes;
};

/// Stabilization stages of every factor of the tower on S^{d_1+1} v ... v
/// S^{d_k+1} up to max_length, with the witnesses that these stages are unbounded.
inline DivergenceReport wedge_divergence_report(std::span<const int> dims,
                                                const StabilizationConfig& config,
                                                int max_length) {
  require(!dims.empty(), ErrorCode::precondition, "at least one sphere dimension is required");
  require(max_length >= 1, ErrorCode::precondition, "max_length must be at least 1");
  for (int d : dims) require(d >= 1, ErrorCode::precondition, "sphere dimensions must be at least 1");
  const int k = static_cast<int>(dims.size());

  DivergenceReport report;
  report.dims.assign(dims.begin(), dims.end());
  report.config = config;
  report.max_length = max_length;
  report.words_per_length.assign(static_cast<std::size_t>(max_length), 0);
  std::vector<std::int64_t> min_stage(static_cast<std::size_t>(max_length), 0);

  for (auto& word : hall_basis(k, max_length)) {
    int target_dim = 1;
    for (int letter : word.foliage()) target_dim += dims[static_cast<std::size_t>(letter - 1)];
    const auto stage = stabilization_stage(word, dims, config);
    const auto slot = static_cast<std::size_t>(word.length() - 1);
    ++report.words_per_length[slot];
    if (min_stage[slot] == 0 || stage < min_stage[slot]) min_stage[slot] = stage;
    auto degree = word.multidegree(k);
    report.entries.push_back({std::move(word), std::move(degree), target_dim, stage});
  }

  for (int m = 1; m <= max_length; ++m) {
    report.necklaces_per_length.push_back(combinatorics::necklace_count(k, m));
  }
  report.counts_positive = std::all_of(report.words_per_length.begin(), report.words_per_length.end(),
                                       [](std::int64_t c) { return c > 0; });
  report.counts_match_necklaces = report.words_per_length == report.necklaces_per_length;

  for (auto stage : min_stage) {
    if (stage == 0) continue;
    if (report.increasing_stages.empty() || stage > report.increasing_stages.back()) {
      report.increasing_stages.push_back(stage);
    }
  }
  // The running maxima of the per-length minimal stages; the minimum at length
  // m is at least m p^h, so the witness grows linearly with max_length.
  const auto floor_stage = combinatorics::checked_mul(
      max_length, combinatorics::ipow(config.prime, config.height));
  report.stages_unbounded = report.counts_positive && !report.increasing_stages.empty() &&
                            report.increasing_stages.back() >= floor_stage;

  if (k == 1) {
    report.notes.push_back(
        "single generator: the basis is {x1}; divergence on wedges needs at least two summands");
  } else {
    report.notes.push_back(
        "every length carries a basis word with a sphere target, so infinitely many factors are "
        "noncontractible and their stabilization stages |w|p^h or 2|w|p^h are unbounded");
  }
  return report;
}

}  // namespace gwcalc
