#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "calculus_towers.hpp"
#include "cofibre_filtration.hpp"
#include "error.hpp"
#include "k_euler.hpp"
#include "lie_words.hpp"
#include "partition_homology.hpp"
#include "stable_complex.hpp"

namespace gwcalc::json_io {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Complexes
// ---------------------------------------------------------------------------

inline json to_json(const StableComplex& complex) {
  json cells = json::array();
  for (const auto& [cell, mult] : complex.cells()) {
    cells.push_back({{"kind", cell.kind == CellKind::sphere ? "sphere" : "moore"},
                     {"dim", cell.dim},
                     {"mult", mult}});
  }
  return {{"prime", complex.prime()}, {"cells", std::move(cells)}};
}

namespace detail {

[[noreturn]] inline void schema_error(const std::string& what) {
  throw Error(ErrorCode::schema, "complex JSON: " + what);
}

inline std::int64_t integer_field(const json& object, const char* name) {
  if (!object.contains(name)) schema_error(std::string("missing field '") + name + "'");
  const auto& value = object.at(name);
  if (!value.is_number_integer()) schema_error(std::string("field '") + name + "' must be an integer");
  return value.get<std::int64_t>();
}

}  // namespace detail

/// Parses {"prime": p, "cells": [{"kind", "dim", "mult"}, ...]} into normal form.
/// Duplicate cells are merged. When expected_prime is given it must match.
inline StableComplex complex_from_json(const json& value, std::optional<int> expected_prime = {}) {
  if (!value.is_object()) detail::schema_error("expected an object");
  for (const auto& [key, _] : value.items()) {
    if (key != "prime" && key != "cells") detail::schema_error("unknown field '" + key + "'");
  }
  const auto prime = detail::integer_field(value, "prime");
  if (prime < 3 || prime > 1'000'000) detail::schema_error("prime out of range");
  if (expected_prime && prime != *expected_prime) {
    throw Error(ErrorCode::prime_mismatch, "complex carries prime " + std::to_string(prime) +
                                               " but the invocation uses " +
                                               std::to_string(*expected_prime));
  }
  StableComplex out(static_cast<int>(prime));
  if (!value.contains("cells") || !value.at("cells").is_array()) {
    detail::schema_error("'cells' must be an array");
  }
  for (const auto& cell : value.at("cells")) {
    if (!cell.is_object()) detail::schema_error("cells must be objects");
    for (const auto& [key, _] : cell.items()) {
      if (key != "kind" && key != "dim" && key != "mult") detail::schema_error("unknown cell field '" + key + "'");
    }
    if (!cell.contains("kind") || !cell.at("kind").is_string()) detail::schema_error("cell 'kind' must be a string");
    const auto kind = cell.at("kind").get<std::string>();
    if (kind != "sphere" && kind != "moore") detail::schema_error("unknown cell kind '" + kind + "'");
    const auto dim = detail::integer_field(cell, "dim");
    const auto mult = detail::integer_field(cell, "mult");
    if (dim < -1'000'000 || dim > 1'000'000) detail::schema_error("cell dimension out of range");
    if (mult < 1) detail::schema_error("cell multiplicity must be positive");
    out.add({kind == "sphere" ? CellKind::sphere : CellKind::moore, static_cast<int>(dim)}, mult);
  }
  return out;
}

inline StableComplex complex_from_string(const std::string& text, std::optional<int> expected_prime = {}) {
  json value;
  try {
    value = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::schema, std::string("invalid JSON: ") + e.what());
  }
  return complex_from_json(value, expected_prime);
}

// ---------------------------------------------------------------------------
// Words and towers
// ---------------------------------------------------------------------------

inline json word_record(const LieWord& word, int k) {
  return {{"word", word.to_string()}, {"multidegree", word.multidegree(k)}, {"length", word.length()}};
}

inline json to_json(const std::vector<LieWord>& words, int k) {
  json out = json::array();
  for (const auto& w : words) out.push_back(word_record(w, k));
  return out;
}

inline json to_json(const std::vector<HmFactor>& factors, int k) {
  json out = json::array();
  for (const auto& f : factors) {
    auto record = word_record(f.word, k);
    record["target"] = to_json(f.target);
    out.push_back(std::move(record));
  }
  return out;
}

inline json to_json(const TowerDescriptor& tower, int k) {
  json factors = json::array();
  for (const auto& f : tower.factors) {
    auto record = word_record(f.word, k);
    record["target"] = to_json(f.factor_complex);
    record["trunc"] = f.trunc;
    record["stab_stage"] = f.stab_stage ? json(*f.stab_stage) : json(nullptr);
    factors.push_back(std::move(record));
  }
  return {{"n", tower.n}, {"factors", std::move(factors)}};
}

inline json to_json(const LayerDecomposition& layers, int k) {
  json terms = json::array();
  for (const auto& t : layers.terms) {
    auto record = word_record(t.word, k);
    record["composition"] = t.composition;
    record["d"] = t.divisor;
    record["derivative_index"] = t.divisor;
    record["target"] = to_json(t.target);
    terms.push_back(std::move(record));
  }
  return {{"n", layers.n}, {"terms", std::move(terms)}};
}

inline json to_json(const DivergenceReport& report) {
  const int k = static_cast<int>(report.dims.size());
  json records = json::array();
  for (const auto& e : report.entries) {
    auto record = word_record(e.word, k);
    record["target"] = to_json(StableComplex::sphere(e.target_dim));
    record["stab_stage"] = e.stab_stage;
    records.push_back(std::move(record));
  }
  return {{"dims", report.dims},
          {"prime", report.config.prime},
          {"height", report.config.height},
          {"parity", report.config.parity == ParityRule::odd_at_p_h ? "odd-at-p^h" : "even-at-p^h"},
          {"max_length", report.max_length},
          {"records", std::move(records)},
          {"words_per_length", report.words_per_length},
          {"necklaces_per_length", report.necklaces_per_length},
          {"increasing_stages", report.increasing_stages},
          {"summary",
           {{"all_targets_nonzero", report.all_targets_nonzero},
            {"counts_positive", report.counts_positive},
            {"counts_match_necklaces", report.counts_match_necklaces},
            {"stages_unbounded", report.stages_unbounded}}},
          {"notes", report.notes}};
}

// ---------------------------------------------------------------------------
// Filtrations
// ---------------------------------------------------------------------------

inline json to_json(const BottomPiece& bottom) {
  json out = {{"k", 0},
              {"k0", bottom.expanded && !bottom.null_flag ? "expanded" : "opaque"},
              {"null_flag", bottom.null_flag},
              {"description", bottom.description}};
  if (bottom.expanded && !bottom.null_flag) out["complex"] = to_json(*bottom.expanded);
  return out;
}

inline json to_json(const GradedFiltration& filtration) {
  json pieces = json::array();
  for (const auto& piece : filtration.pieces) {
    if (piece.bottom) {
      pieces.push_back(to_json(*piece.bottom));
      continue;
    }
    json terms = json::array();
    for (const auto& t : piece.terms) {
      json term = {{"shift", t.shift},
                   {"d", t.derivative_index},
                   {"word", t.word ? json(t.word->to_string()) : json(nullptr)},
                   {"inner", to_json(t.inner)}};
      if (!t.word) term["mult"] = t.multiplicity;
      terms.push_back(std::move(term));
    }
    pieces.push_back({{"k", piece.k}, {"terms", std::move(terms)}});
  }
  return {{"n", filtration.n}, {"pieces", std::move(pieces)}};
}

inline json to_json(const SmashPowerPiece& piece) {
  if (piece.bottom) {
    auto out = to_json(*piece.bottom);
    out["n"] = piece.n;
    return out;
  }
  return {{"n", piece.n},
          {"k", piece.k},
          {"shift", piece.shift},
          {"underlying", to_json(piece.underlying)},
          {"induction_multiplicity", piece.induction_multiplicity}};
}

// ---------------------------------------------------------------------------
// Homology and certificates
// ---------------------------------------------------------------------------

inline json betti_map(const std::map<int, std::int64_t>& betti) {
  json out = json::object();
  for (auto [degree, value] : betti) out[std::to_string(degree)] = value;
  return out;
}

inline json to_json(const ChainComplexTable& table, bool with_counts) {
  json out = {{"n", table.n},
              {"field", table.coefficients.name()},
              {"betti", betti_map(table.nonzero_betti())},
              {"reduced_euler", table.reduced_euler()}};
  if (table.coefficients.is_rational()) out["rational_certified"] = table.rational_certified;
  if (with_counts) {
    out["simplex_counts"] = table.simplex_counts;
    out["ranks"] = table.ranks;
  }
  return out;
}

inline json to_json(const std::vector<Citation>& citations) {
  json out = json::array();
  for (const auto& c : citations) out.push_back({{"step", c.step}, {"justification", c.justification}});
  return out;
}

inline json to_json(const NonvanishingReport& report) {
  json primes = json::array();
  json chi = json::object();
  for (const auto& e : report.entries) {
    primes.push_back(e.n);
    chi[std::to_string(e.n)] = e.chi;
  }
  return {{"ell", report.ell},
          {"prime", report.prime},
          {"n_max", report.n_max},
          {"primes_checked", std::move(primes)},
          {"chi", std::move(chi)},
          {"all_nonzero", report.all_nonzero},
          {"closed_form_agrees", report.closed_form_agrees},
          {"citations", to_json(report.citations)}};
}

inline json to_json(const SplitLimitReport& report) {
  auto out = to_json(report.certificate);
  out["limit"] = report.limit_statement;
  out["nonzero_factors"] = report.certificate.entries.size();
  out["conclusion_route"] = to_json(report.conclusion_route);
  return out;
}

// ---------------------------------------------------------------------------
// Tables
// ---------------------------------------------------------------------------

inline std::string cell_text(const json& value) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_null()) return "-";
  if (value.is_object() && value.contains("cells")) return complex_from_json(value).to_string();
  if (value.is_array()) {
    std::string out;
    for (std::size_t i = 0; i < value.size(); ++i) out += (i ? "," : "") + cell_text(value[i]);
    return out;
  }
  return value.dump();
}

/// Tab-separated table of the given columns, with a header row.
inline std::string to_tsv(const json& records, const std::vector<std::string>& columns) {
  std::ostringstream out;
  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "\t" : "") << columns[i];
  out << '\n';
  for (const auto& record : records) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      out << (i ? "\t" : "") << (record.contains(columns[i]) ? cell_text(record.at(columns[i])) : "-");
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace gwcalc::json_io
