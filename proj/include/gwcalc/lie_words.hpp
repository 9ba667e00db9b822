#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "combinatorics.hpp"
#include "error.hpp"
#include "stable_complex.hpp"

namespace gwcalc {

using Multidegree = std::vector<int>;

/// A bracketed word in letters x_1, ..., x_k. Letters are 1-based. Subtrees are
/// shared and immutable, so copies are cheap.
class LieWord {
 public:
  static LieWord letter(int index) {
    require(index >= 1, ErrorCode::precondition, "letters are numbered from 1");
    auto node = std::make_shared<Node>();
    node->letter = index;
    node->foliage = {index};
    return LieWord(std::move(node));
  }

  static LieWord bracket(const LieWord& left, const LieWord& right) {
    auto node = std::make_shared<Node>();
    node->left = left.node_;
    node->right = right.node_;
    node->foliage = left.foliage();
    node->foliage.insert(node->foliage.end(), right.foliage().begin(), right.foliage().end());
    return LieWord(std::move(node));
  }

  bool is_letter() const { return node_->letter != 0; }
  int letter_index() const { return node_->letter; }
  LieWord left() const {
    require(!is_letter(), ErrorCode::precondition, "a letter has no left factor");
    return LieWord(node_->left);
  }
  LieWord right() const {
    require(!is_letter(), ErrorCode::precondition, "a letter has no right factor");
    return LieWord(node_->right);
  }

  /// Letters of the word read left to right, ignoring brackets.
  const std::vector<int>& foliage() const { return node_->foliage; }
  int length() const { return static_cast<int>(node_->foliage.size()); }
  int max_letter() const { return *std::max_element(foliage().begin(), foliage().end()); }

  /// Letter counts, padded to k entries.
  Multidegree multidegree(int k) const {
    require(k >= max_letter(), ErrorCode::precondition, "word uses more letters than k");
    Multidegree out(static_cast<std::size_t>(k), 0);
    for (int letter : foliage()) ++out[static_cast<std::size_t>(letter - 1)];
    return out;
  }

  /// Bracket notation, e.g. "[x1,[x1,x2]]".
  std::string to_string() const {
    if (is_letter()) return "x" + std::to_string(letter_index());
    return "[" + left().to_string() + "," + right().to_string() + "]";
  }

  static LieWord parse(std::string_view text);

  friend bool operator==(const LieWord& a, const LieWord& b) {
    if (a.node_ == b.node_) return true;
    if (a.is_letter() || b.is_letter()) return a.letter_index() == b.letter_index();
    return a.left() == b.left() && a.right() == b.right();
  }

 private:
  struct Node {
    int letter = 0;
    std::shared_ptr<const Node> left;
    std::shared_ptr<const Node> right;
    std::vector<int> foliage;
  };

  explicit LieWord(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

namespace detail {

class WordParser {
 public:
  explicit WordParser(std::string_view text) : text_(text) {}

  LieWord parse_all() {
    LieWord word = parse_word();
    skip_space();
    if (pos_ != text_.size()) fail("trailing characters");
    return word;
  }

 private:
  LieWord parse_word() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (text_[pos_] == '[') {
      ++pos_;
      LieWord left = parse_word();
      expect(',');
      LieWord right = parse_word();
      expect(']');
      return LieWord::bracket(left, right);
    }
    if (text_[pos_] != 'x') fail("expected 'x' or '['");
    ++pos_;
    int index = 0;
    std::size_t digits = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      index = index * 10 + (text_[pos_] - '0');
      ++pos_;
      ++digits;
      if (index > 1000) fail("letter index too large");
    }
    if (digits == 0 || index == 0) fail("letters are written x1, x2, ...");
    return LieWord::letter(index);
  }

  void expect(char c) {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::schema, "cannot parse Lie word '" + std::string(text_) + "' at " +
                                       std::to_string(pos_) + ": " + what);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline LieWord LieWord::parse(std::string_view text) {
  return detail::WordParser(text).parse_all();
}

/// Strictly smaller than every proper rotation (equivalently every proper suffix).
inline bool is_lyndon(std::span<const int> word) {
  const std::size_t n = word.size();
  if (n == 0) return false;
  for (std::size_t i = 1; i < n; ++i) {
    auto suffix = word.subspan(i);
    if (!std::lexicographical_compare(word.begin(), word.end(), suffix.begin(), suffix.end())) {
      return false;
    }
  }
  return true;
}

/// Standard bracketing of a Lyndon word: split w = uv with v the longest
/// proper Lyndon suffix, and bracket the standard forms of u and v.
inline LieWord standard_bracketing(std::span<const int> lyndon) {
  require(is_lyndon(lyndon), ErrorCode::precondition, "standard bracketing needs a Lyndon word");
  if (lyndon.size() == 1) return LieWord::letter(lyndon.front());
  for (std::size_t split = 1; split < lyndon.size(); ++split) {
    auto suffix = lyndon.subspan(split);
    if (is_lyndon(suffix)) {
      return LieWord::bracket(standard_bracketing(lyndon.first(split)), standard_bracketing(suffix));
    }
  }
  throw Error(ErrorCode::invariant, "Lyndon word without a Lyndon suffix");
}

/// Lyndon words over {1..k} of length <= max_length in lexicographic order
/// (Duval's generation algorithm).
inline std::vector<std::vector<int>> lyndon_words(int k, int max_length) {
  require(k >= 1 && max_length >= 1, ErrorCode::precondition, "lyndon_words needs k, max_length >= 1");
  std::vector<std::vector<int>> out;
  std::vector<int> w{1};
  while (!w.empty()) {
    out.push_back(w);
    const std::size_t m = w.size();
    while (w.size() < static_cast<std::size_t>(max_length)) w.push_back(w[w.size() - m]);
    while (!w.empty() && w.back() == k) w.pop_back();
    if (!w.empty()) ++w.back();
  }
  return out;
}

/// Number of basis words of total length <= max_length, from necklace counts.
inline std::int64_t hall_basis_size(int k, int max_length) {
  std::int64_t total = 0;
  for (int m = 1; m <= max_length; ++m) {
    total = combinatorics::checked_add(total, combinatorics::necklace_count(k, m));
  }
  return total;
}

/// Ordered basis of the free Lie algebra on k generators, truncated at
/// max_length: Lyndon words with standard bracketing, ordered by length and
/// then lexicographically on the foliage.
inline std::vector<LieWord> hall_basis(int k, int max_length) {
  auto words = lyndon_words(k, max_length);
  std::stable_sort(words.begin(), words.end(),
                   [](const auto& a, const auto& b) { return a.size() < b.size(); });
  std::vector<LieWord> out;
  out.reserve(words.size());
  for (const auto& w : words) out.push_back(standard_bracketing(w));
  return out;
}

struct MultidegreeBasis {
  Multidegree degree;
  std::vector<LieWord> words;
};

namespace detail {

inline int checked_total(std::span<const int> degree) {
  require(!degree.empty(), ErrorCode::precondition, "multidegree must have at least one entry");
  int total = 0;
  for (int v : degree) {
    require(v >= 0, ErrorCode::precondition, "multidegree entries must be nonnegative");
    total += v;
  }
  require(total > 0, ErrorCode::precondition, "multidegree must not be identically zero");
  return total;
}

}  // namespace detail

/// Lyndon words with exactly degree[i] occurrences of letter i+1, in
/// lexicographic order. Fixed-content variant of the FKM prenecklace recursion.
inline std::vector<std::vector<int>> lyndon_words_with_content(std::span<const int> degree) {
  const int total = detail::checked_total(degree);
  const int k = static_cast<int>(degree.size());
  std::vector<int> remaining(degree.begin(), degree.end());
  std::vector<int> a(static_cast<std::size_t>(total) + 1, 1);
  std::vector<std::vector<int>> out;
  auto rec = [&](auto&& self, int t, int period) -> void {
    if (t > total) {
      if (period == total) out.emplace_back(a.begin() + 1, a.end());
      return;
    }
    for (int j = a[static_cast<std::size_t>(t - period)]; j <= k; ++j) {
      auto& left = remaining[static_cast<std::size_t>(j - 1)];
      if (left == 0) continue;
      a[static_cast<std::size_t>(t)] = j;
      --left;
      self(self, t + 1, j == a[static_cast<std::size_t>(t - period)] ? period : t);
      ++left;
    }
  };
  rec(rec, 1, 1);
  return out;
}

/// The basis words B(n_1, ..., n_k) with exactly n_i occurrences of x_i, in
/// basis order. Equal to filtering hall_basis(k, sum n_i) by letter counts.
inline MultidegreeBasis basis_multidegree(std::span<const int> degree) {
  MultidegreeBasis out{Multidegree(degree.begin(), degree.end()), {}};
  for (const auto& foliage : lyndon_words_with_content(degree)) {
    out.words.push_back(standard_bracketing(foliage));
  }
  return out;
}

/// Witt's dimension formula for the multigraded pieces of a free Lie algebra:
/// (1/n) sum_{d | gcd} mu(d) (n/d)! / prod_i (n_i/d)!.
inline std::int64_t witt_count(std::span<const int> degree) {
  const int total = detail::checked_total(degree);
  const int g = combinatorics::gcd_of(degree);
  std::int64_t sum = 0;
  for (int d : combinatorics::divisors(g)) {
    std::vector<int> reduced;
    for (int v : degree) reduced.push_back(v / d);
    sum += combinatorics::mobius(d) * combinatorics::multinomial(reduced);
  }
  return sum / total;
}

/// Evaluates a word on complexes by letting each bracket act as a smash product.
inline StableComplex evaluate(const LieWord& word, std::span<const StableComplex> inputs) {
  require(!inputs.empty(), ErrorCode::precondition, "evaluate needs at least one input");
  require(word.max_letter() <= static_cast<int>(inputs.size()), ErrorCode::precondition,
          "word uses letter x" + std::to_string(word.max_letter()) + " but only " +
              std::to_string(inputs.size()) + " inputs were given");
  StableComplex out = StableComplex::sphere(0, inputs.front().prime());
  for (int letter : word.foliage()) out = smash(out, inputs[static_cast<std::size_t>(letter - 1)]);
  return out;
}

}  // namespace gwcalc
