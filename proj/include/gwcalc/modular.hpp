#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "combinatorics.hpp"
#include "error.hpp"

namespace gwcalc {

/// Arithmetic in Z/p for a runtime prime p < 2^31.
class PrimeField {
 public:
  using Element = std::uint32_t;

  explicit PrimeField(std::uint32_t p) : p_(p) {
    require(p < (1u << 31) && combinatorics::is_prime(p), ErrorCode::not_prime,
            "field characteristic must be a prime below 2^31, got " + std::to_string(p));
  }

  std::uint32_t characteristic() const noexcept { return p_; }

  Element reduce(std::int64_t value) const {
    const auto m = static_cast<std::int64_t>(p_);
    return static_cast<Element>(((value % m) + m) % m);
  }
  Element add(Element a, Element b) const {
    const std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<Element>(s >= p_ ? s - p_ : s);
  }
  Element sub(Element a, Element b) const { return a >= b ? a - b : a + p_ - b; }
  Element neg(Element a) const { return a == 0 ? 0 : p_ - a; }
  Element mul(Element a, Element b) const {
    return static_cast<Element>((std::uint64_t{a} * b) % p_);
  }
  Element inv(Element a) const {
    require(a % p_ != 0, ErrorCode::precondition, "zero has no inverse");
    // Fermat: a^(p-2).
    Element result = 1;
    Element base = a % p_;
    std::uint32_t e = p_ - 2;
    while (e > 0) {
      if (e & 1u) result = mul(result, base);
      base = mul(base, base);
      e >>= 1;
    }
    return result;
  }

 private:
  std::uint32_t p_;
};

/// Row-major dense matrix over Z/p.
class ModMatrix {
 public:
  using Element = PrimeField::Element;

  ModMatrix(std::size_t rows, std::size_t cols, std::uint32_t p)
      : rows_(rows), cols_(cols), field_(p), data_(rows * cols, 0) {}

  static ModMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows, std::size_t cols,
                             std::uint32_t p) {
    ModMatrix out(rows.size(), cols, p);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      require(rows[i].size() == cols, ErrorCode::precondition, "ragged matrix rows");
      for (std::size_t j = 0; j < cols; ++j) out.set(i, j, out.field_.reduce(rows[i][j]));
    }
    return out;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const PrimeField& field() const noexcept { return field_; }

  Element at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, Element v) { data_[i * cols_ + j] = v; }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](Element v) { return v == 0; });
  }

  friend ModMatrix operator*(const ModMatrix& a, const ModMatrix& b) {
    require(a.cols_ == b.rows_, ErrorCode::precondition, "matrix product shape mismatch");
    require(a.field_.characteristic() == b.field_.characteristic(), ErrorCode::precondition,
            "matrix product over different fields");
    ModMatrix out(a.rows_, b.cols_, a.field_.characteristic());
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t l = 0; l < a.cols_; ++l) {
        const auto x = a.at(i, l);
        if (x == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          out.set(i, j, a.field_.add(out.at(i, j), a.field_.mul(x, b.at(l, j))));
        }
      }
    }
    return out;
  }

  /// Reduced row echelon form; returns the pivot columns.
  std::vector<std::size_t> row_reduce() {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
      std::size_t pivot = row;
      while (pivot < rows_ && at(pivot, col) == 0) ++pivot;
      if (pivot == rows_) continue;
      swap_rows(pivot, row);
      const auto scale = field_.inv(at(row, col));
      for (std::size_t j = 0; j < cols_; ++j) set(row, j, field_.mul(at(row, j), scale));
      for (std::size_t i = 0; i < rows_; ++i) {
        if (i == row || at(i, col) == 0) continue;
        const auto factor = at(i, col);
        for (std::size_t j = 0; j < cols_; ++j) {
          set(i, j, field_.sub(at(i, j), field_.mul(factor, at(row, j))));
        }
      }
      pivots.push_back(col);
      ++row;
    }
    return pivots;
  }

  std::size_t rank() const {
    ModMatrix copy = *this;
    return copy.row_reduce().size();
  }

  /// Basis of the right null space {x : A x = 0}, one vector per free column.
  std::vector<std::vector<Element>> null_space() const {
    ModMatrix reduced = *this;
    const auto pivots = reduced.row_reduce();
    std::vector<bool> is_pivot(cols_, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<std::vector<Element>> basis;
    for (std::size_t free = 0; free < cols_; ++free) {
      if (is_pivot[free]) continue;
      std::vector<Element> v(cols_, 0);
      v[free] = 1;
      for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = field_.neg(reduced.at(r, free));
      basis.push_back(std::move(v));
    }
    return basis;
  }

 private:
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap(data_[a * cols_ + j], data_[b * cols_ + j]);
  }

  std::size_t rows_;
  std::size_t cols_;
  PrimeField field_;
  std::vector<Element> data_;
};

/// Sparse column with integer coefficients, row indices strictly increasing.
struct SparseColumn {
  std::vector<std::pair<std::uint32_t, std::int32_t>> entries;
};

struct SparseReduction {
  std::size_t rank = 0;
  std::vector<std::uint32_t> pivot_rows;  // lowest nonzero row of each nonzero reduced column
};

/// Rank of a sparse matrix over Z/p by left-to-right column reduction on the
/// lowest nonzero entry. Columns flagged in `skip` are known to reduce to zero
/// (the clearing optimisation) and are not touched.
inline SparseReduction sparse_rank(const std::vector<SparseColumn>& columns, std::uint32_t p,
                                   const std::vector<bool>* skip = nullptr) {
  const PrimeField field(p);
  using Element = PrimeField::Element;
  using Column = std::vector<std::pair<std::uint32_t, Element>>;

  std::uint32_t max_row = 0;
  for (const auto& c : columns) {
    if (!c.entries.empty()) max_row = std::max(max_row, c.entries.back().first + 1);
  }
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> owner(max_row, kNone);  // pivot row -> reduced column index
  std::vector<Column> reduced;

  SparseReduction out;
  Column work;
  Column scratch;
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (skip != nullptr && (*skip)[j]) continue;
    work.clear();
    for (auto [row, value] : columns[j].entries) {
      const auto v = field.reduce(value);
      if (v != 0) work.emplace_back(row, v);
    }
    while (!work.empty()) {
      const auto low = work.back().first;
      const auto other = owner[low];
      if (other == kNone) break;
      const Column& pivot_col = reduced[other];
      // work -= (work_low / pivot_low) * pivot_col, pivot_col normalized to low = 1.
      const auto factor = work.back().second;
      scratch.clear();
      std::size_t a = 0;
      std::size_t b = 0;
      while (a < work.size() || b < pivot_col.size()) {
        if (b == pivot_col.size() || (a < work.size() && work[a].first < pivot_col[b].first)) {
          scratch.push_back(work[a++]);
        } else if (a == work.size() || pivot_col[b].first < work[a].first) {
          scratch.emplace_back(pivot_col[b].first, field.neg(field.mul(factor, pivot_col[b].second)));
          ++b;
        } else {
          const auto v = field.sub(work[a].second, field.mul(factor, pivot_col[b].second));
          if (v != 0) scratch.emplace_back(work[a].first, v);
          ++a;
          ++b;
        }
      }
      std::swap(work, scratch);
    }
    if (work.empty()) continue;
    const auto scale = field.inv(work.back().second);
    for (auto& entry : work) entry.second = field.mul(entry.second, scale);
    owner[work.back().first] = reduced.size();
    out.pivot_rows.push_back(work.back().first);
    reduced.push_back(work);
    ++out.rank;
  }
  return out;
}

}  // namespace gwcalc
