#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include <gwcalc/k_euler.hpp>

namespace gwtest {

using gwcalc::ModMatrix;
using gwcalc::OddDifferential;

/// Constraint matrix for the unknown d1 (even x odd, row-major) given d0:
/// rows encode d1 d0 = 0 and d0 d1 = 0.
inline ModMatrix d1_constraints(const ModMatrix& d0, std::size_t even, std::size_t odd, std::uint32_t p) {
  ModMatrix c(even * even + odd * odd, even * odd, p);
  std::size_t row = 0;
  for (std::size_t i = 0; i < even; ++i) {
    for (std::size_t l = 0; l < even; ++l, ++row) {
      for (std::size_t j = 0; j < odd; ++j) c.set(row, i * odd + j, d0.at(j, l));
    }
  }
  for (std::size_t a = 0; a < odd; ++a) {
    for (std::size_t b = 0; b < odd; ++b, ++row) {
      for (std::size_t i = 0; i < even; ++i) c.set(row, i * odd + b, d0.at(a, i));
    }
  }
  return c;
}

inline ModMatrix combine(const std::vector<std::vector<ModMatrix::Element>>& basis,
                         const std::vector<ModMatrix::Element>& coefficients, std::size_t even,
                         std::size_t odd, std::uint32_t p) {
  ModMatrix d1(even, odd, p);
  const auto& f = d1.field();
  for (std::size_t b = 0; b < basis.size(); ++b) {
    if (coefficients[b] == 0) continue;
    for (std::size_t x = 0; x < even * odd; ++x) {
      const auto cur = d1.at(x / odd, x % odd);
      d1.set(x / odd, x % odd, f.add(cur, f.mul(coefficients[b], basis[b][x])));
    }
  }
  return d1;
}

/// Calls visit on every odd differential of the given ranks over F_p.
inline void for_each_differential(std::size_t even, std::size_t odd, std::uint32_t p,
                                  const std::function<void(const OddDifferential&)>& visit) {
  const std::size_t cells = even * odd;
  std::vector<ModMatrix::Element> digits(cells, 0);
  while (true) {
    ModMatrix d0(odd, even, p);
    for (std::size_t x = 0; x < cells; ++x) d0.set(x / even, x % even, digits[x]);
    const auto basis = d1_constraints(d0, even, odd, p).null_space();
    std::vector<ModMatrix::Element> coefficients(basis.size(), 0);
    while (true) {
      visit({d0, combine(basis, coefficients, even, odd, p)});
      std::size_t i = 0;
      while (i < coefficients.size() && coefficients[i] == p - 1) coefficients[i++] = 0;
      if (i == coefficients.size()) break;
      ++coefficients[i];
    }
    std::size_t i = 0;
    while (i < cells && digits[i] == p - 1) digits[i++] = 0;
    if (i == cells) break;
    ++digits[i];
  }
}

/// Uniform d0, then a uniform d1 among those compatible with it. d0 is
/// sometimes drawn with low rank so that d1 has room to be nonzero.
inline OddDifferential random_differential(std::mt19937_64& rng, std::size_t even, std::size_t odd,
                                           std::uint32_t p) {
  std::uniform_int_distribution<ModMatrix::Element> digit(0, p - 1);
  ModMatrix d0(odd, even, p);
  if (even > 0 && odd > 0) {
    const std::size_t rank = rng() % (std::min(even, odd) + 1);
    // d0 = u v^T summed rank times
    for (std::size_t r = 0; r < rank; ++r) {
      std::vector<ModMatrix::Element> u(odd), v(even);
      for (auto& x : u) x = digit(rng);
      for (auto& x : v) x = digit(rng);
      for (std::size_t a = 0; a < odd; ++a) {
        for (std::size_t b = 0; b < even; ++b) {
          d0.set(a, b, d0.field().add(d0.at(a, b), d0.field().mul(u[a], v[b])));
        }
      }
    }
  }
  const auto basis = d1_constraints(d0, even, odd, p).null_space();
  std::vector<ModMatrix::Element> coefficients(basis.size());
  for (auto& c : coefficients) c = digit(rng);
  return {d0, combine(basis, coefficients, even, odd, p)};
}

}  // namespace gwtest
