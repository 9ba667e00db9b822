#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cofibre_filtration.hpp"
#include "combinatorics.hpp"
#include "error.hpp"
#include "modular.hpp"
#include "stable_complex.hpp"

namespace gwcalc {

/// A finitely generated graded module over F_p[u^{+-1}], |u| = 2, recorded by
/// its ranks in even and odd degrees.
struct KModule {
  std::int64_t even_rank = 0;
  std::int64_t odd_rank = 0;

  std::int64_t euler() const { return even_rank - odd_rank; }
};

/// Mod-p K-theory of a wedge of Moore spectra. K_*(M^ell) is Z/p concentrated
/// in degrees congruent to ell mod 2.
inline KModule k_module(const StableComplex& complex) {
  require(!complex.has_sphere_cells(), ErrorCode::precondition,
          "non-torsion K-theory; chi undefined for complexes with sphere cells");
  KModule out;
  for (const auto& [cell, mult] : complex.cells()) {
    (cell.dim % 2 == 0 ? out.even_rank : out.odd_rank) += mult;
  }
  return out;
}

/// chi = sum over Moore cells of mult * (-1)^dim.
inline std::int64_t euler_char(const StableComplex& complex) {
  return k_module(complex).euler();
}

/// An odd-degree differential d = d0 + d1 on a KModule over F_p, with
/// d0 : even -> odd (odd_rank x even_rank) and d1 : odd -> even.
struct OddDifferential {
  ModMatrix d0;
  ModMatrix d1;
};

struct EulerComparison {
  std::int64_t before = 0;
  std::int64_t after = 0;
};

/// Euler characteristic of N and of H(N, d), the latter from ranks as
/// (dim ker d0 - rank d1) - (dim ker d1 - rank d0).
inline EulerComparison homology_euler_check(const KModule& module, const OddDifferential& d) {
  const auto even = static_cast<std::size_t>(module.even_rank);
  const auto odd = static_cast<std::size_t>(module.odd_rank);
  require(d.d0.rows() == odd && d.d0.cols() == even && d.d1.rows() == even && d.d1.cols() == odd,
          ErrorCode::precondition, "differential shape does not match the module ranks");
  require((d.d1 * d.d0).is_zero() && (d.d0 * d.d1).is_zero(), ErrorCode::precondition,
          "differential does not square to zero");
  const auto rank0 = static_cast<std::int64_t>(d.d0.rank());
  const auto rank1 = static_cast<std::int64_t>(d.d1.rank());
  const auto ker0 = module.even_rank - rank0;
  const auto ker1 = module.odd_rank - rank1;
  return {module.euler(), (ker0 - rank1) - (ker1 - rank0)};
}

// ---------------------------------------------------------------------------
// Layers of Moore spectra
// ---------------------------------------------------------------------------

inline void require_layer_euler_domain(int n, int prime) {
  StableComplex::check_prime(prime);
  require(combinatorics::is_prime(n), ErrorCode::not_prime,
          "layer index must be prime, got " + std::to_string(n));
  require(n > 2 * prime, ErrorCode::precondition,
          "bottom piece is only known to be null for n > 2p; got n = " + std::to_string(n) +
              ", p = " + std::to_string(prime));
}

/// Euler characteristic of K_*(D_n M^ell) summed over the graded pieces of the
/// filtration, with the null bottom piece contributing zero.
inline std::int64_t layer_euler(int ell, int n, int prime = kDefaultPrime) {
  require_layer_euler_domain(n, prime);
  const auto filtration = moore_layer_simplified(ell, n, prime, WordListing::count);
  std::int64_t total = 0;
  for (const auto& piece : filtration.pieces) {
    if (piece.bottom) {
      require(piece.bottom->null_flag, ErrorCode::invariant, "bottom piece not flagged null");
      continue;
    }
    auto expanded = expand_piece(piece, prime);
    require(expanded.has_value(), ErrorCode::invariant, "unexpanded term in Moore filtration");
    total += euler_char(*expanded);
  }
  return total;
}

/// Closed form (-1)^{n(ell-1)}: only the k = 1 line, one copy of
/// Sigma^{2-n+ell(n-1)} M^ell, has nonzero Euler characteristic.
inline std::int64_t layer_euler_closed_form(int ell, int n) {
  const auto exponent = static_cast<std::int64_t>(n) * (ell - 1);
  return exponent % 2 == 0 ? 1 : -1;
}

struct Citation {
  std::string step;
  std::string justification;
};

struct NonvanishingEntry {
  int n = 0;
  std::int64_t chi = 0;
  std::int64_t chi_closed_form = 0;
  bool k_theory_nonzero = false;
};

struct NonvanishingReport {
  int ell = 0;
  int prime = kDefaultPrime;
  int n_max = 0;
  std::vector<NonvanishingEntry> entries;
  bool all_nonzero = true;
  bool closed_form_agrees = true;
  std::vector<Citation> citations;
};

inline std::vector<Citation> nonvanishing_citations() {
  return {
      {"sufficiency",
       "nonvanishing completed p-adic K-theory of a layer forces nonzero v1-periodic homotopy "
       "(Bousfield, telescopic localization, 3.7)"},
      {"bottom piece",
       "the v1-periodic tower of a sphere is constant after stage p or 2p (Arone-Mahowald), so "
       "cof(D_n S^ell -> D_n S^ell) is null for n > 2p"},
      {"prime layers",
       "for prime n, gcd(k, n-k) = 1 for 1 <= k <= n-1, so only d = 1 terms occur and gr_k is "
       "a wedge of |B(n-k,k)| copies of Sigma^{2-n+ell(n-k)} (M^ell)^k"},
      {"Moore splitting",
       "M^a smash M^b = M^{a+b} v M^{a+b+1} at odd p (Cohen-Moore-Neisendorfer); the k-fold power "
       "is the wedge of C(k-1,j) copies of M^{k ell + j}"},
      {"vanishing lines", "for k >= 2 the alternating sum of C(k-1, j) vanishes, so chi = 0"},
      {"odd differentials",
       "all spectral sequence differentials have odd degree and preserve chi over F_p[u^{+-1}]"},
      {"k = 1 line", "|B(n-1,1)| = 1 and K-theory is concentrated in one parity, chi = +-1"},
  };
}

/// Every prime 2p < n <= n_max with its Euler characteristic, computed both by
/// summing the filtration and by the closed form.
inline NonvanishingReport moore_nonvanishing_report(int ell, int n_max, int prime = kDefaultPrime) {
  StableComplex::check_prime(prime);
  NonvanishingReport report;
  report.ell = ell;
  report.prime = prime;
  report.n_max = n_max;
  for (int n : combinatorics::primes_in(2 * prime, n_max)) {
    NonvanishingEntry entry;
    entry.n = n;
    entry.chi = layer_euler(ell, n, prime);
    entry.chi_closed_form = layer_euler_closed_form(ell, n);
    entry.k_theory_nonzero = entry.chi != 0;
    report.all_nonzero = report.all_nonzero && entry.k_theory_nonzero;
    report.closed_form_agrees = report.closed_form_agrees && entry.chi == entry.chi_closed_form;
    report.entries.push_back(entry);
  }
  report.citations = nonvanishing_citations();
  return report;
}

struct SplitLimitReport {
  NonvanishingReport certificate;
  std::string limit_statement;
  std::vector<Citation> conclusion_route;
};

/// Divergence certificate for the v1-periodic tower of M^ell: the split tower
/// has limit the infinite product of its layers, infinitely many of which are
/// nonzero. The uncountability argument is recorded, not computed.
inline SplitLimitReport moore_split_limit_report(int ell, int n_max, int prime = kDefaultPrime) {
  require(prime > 2 && combinatorics::is_prime(prime), ErrorCode::not_prime,
          "the splitting of the Moore tower needs an odd prime, got " + std::to_string(prime));
  require(ell >= 5, ErrorCode::precondition,
          "the splitting of the Moore tower needs ell >= 5, got " + std::to_string(ell));
  SplitLimitReport report;
  report.certificate = moore_nonvanishing_report(ell, n_max, prime);
  report.limit_statement = "holim_n Phi_v P_n(M^" + std::to_string(ell) +
                           ") = prod_{n >= 1} Phi_v Omega^infty D_n(M^" + std::to_string(ell) + ")";
  report.conclusion_route = {
      {"split tower",
       "for odd p and ell >= 5 each stage Phi_v P_n(M^ell) is the finite product of its layers "
       "(Kuhn: vanishing of T(h)-local Tate spectra)"},
      {"infinite product", "the homotopy limit of a split tower is the product of all its layers"},
      {"pigeonhole",
       "infinitely many layers have nonzero periodic homotopy groups, so some degree j is nonzero "
       "for infinitely many n"},
      {"uncountability",
       "an infinite product of nonzero groups is uncountable (Cantor diagonal argument)"},
      {"contradiction",
       "v1-periodic homotopy of M^ell is countable (Thompson), so the tower cannot converge"},
  };
  return report;
}

}  // namespace gwcalc
