#pragma once

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "calculus_towers.hpp"
#include "cofibre_filtration.hpp"
#include "error.hpp"
#include "json_io.hpp"
#include "k_euler.hpp"
#include "lie_words.hpp"
#include "partition_homology.hpp"
#include "stable_complex.hpp"

namespace gwcalc::cli {

using nlohmann::json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitPrecondition = 2;

inline constexpr int kPartitionHardCap = 8;

/// Safety limits on enumeration sizes. Each can be overridden through the
/// environment variable named next to it.
struct Bounds {
  int max_length = 12;                 // GWCALC_MAX_LENGTH
  int max_k = 4;                       // GWCALC_MAX_K
  std::int64_t max_words = 250'000;    // GWCALC_MAX_WORDS
  int max_partition_n = 7;             // GWCALC_MAX_PARTITION_N, at most kPartitionHardCap
  int max_moore_n = 41;                // GWCALC_MAX_MOORE_N

  static Bounds from_environment() {
    Bounds b;
    read_env("GWCALC_MAX_LENGTH", b.max_length);
    read_env("GWCALC_MAX_K", b.max_k);
    read_env("GWCALC_MAX_WORDS", b.max_words);
    read_env("GWCALC_MAX_PARTITION_N", b.max_partition_n);
    read_env("GWCALC_MAX_MOORE_N", b.max_moore_n);
    b.max_partition_n = std::min(b.max_partition_n, kPartitionHardCap);
    return b;
  }

 private:
  template <typename T>
  static void read_env(const char* name, T& slot) {
    const char* raw = std::getenv(name);
    if (raw == nullptr || *raw == '\0') return;
    try {
      std::size_t used = 0;
      const long long value = std::stoll(raw, &used);
      if (used != std::string(raw).size() || value < 1) throw std::invalid_argument(raw);
      slot = static_cast<T>(value);
    } catch (const std::exception&) {
      throw Error(ErrorCode::precondition, std::string("environment variable ") + name +
                                               " must be a positive integer");
    }
  }
};

/// One parsed command line.
struct Invocation {
  std::string subcommand;
  int prime = kDefaultPrime;
  int height = 1;
  std::string parity = "odd";
  std::string format = "json";

  int n = 0;
  int k = 2;
  int max_length = 4;
  int n_max = 30;
  int ell = 5;
  std::optional<int> graded_k;
  std::vector<int> spheres;
  std::string complexes;
  std::string source;
  std::string target;
  std::string field = "Q";
  bool counts = false;
  bool count_only = false;
};

namespace detail {

inline std::string read_argument(const std::string& value) {
  if (value.empty() || value.front() != '@') return value;
  std::ifstream in(value.substr(1));
  require(static_cast<bool>(in), ErrorCode::precondition, "cannot read file " + value.substr(1));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline void check_bound(bool ok, const std::string& what) {
  require(ok, ErrorCode::bound_exceeded, what);
}

inline StabilizationConfig stabilization(const Invocation& inv) {
  require(combinatorics::is_prime(inv.prime), ErrorCode::not_prime,
          "--prime must be prime, got " + std::to_string(inv.prime));
  require(inv.height >= 1, ErrorCode::precondition, "--height must be at least 1");
  require(inv.parity == "odd" || inv.parity == "even", ErrorCode::precondition,
          "--parity must be 'odd' or 'even'");
  return {inv.prime, inv.height, inv.parity == "odd" ? ParityRule::odd_at_p_h : ParityRule::even_at_p_h};
}

inline void require_odd_prime(const Invocation& inv) {
  require(inv.prime > 2 && combinatorics::is_prime(inv.prime), ErrorCode::not_prime,
          "--prime must be an odd prime for Moore spectra, got " + std::to_string(inv.prime));
}

/// Input complexes from --spheres or --complexes. Sphere inputs carry the
/// invocation prime when it is odd (the prime is irrelevant without Moore cells).
inline std::vector<StableComplex> input_complexes(const Invocation& inv) {
  require(inv.spheres.empty() != inv.complexes.empty(), ErrorCode::precondition,
          "give exactly one of --spheres or --complexes");
  std::vector<StableComplex> out;
  if (!inv.spheres.empty()) {
    const int prime = inv.prime > 2 && combinatorics::is_prime(inv.prime) ? inv.prime : kDefaultPrime;
    for (int d : inv.spheres) out.push_back(StableComplex::sphere(d, prime));
    return out;
  }
  require_odd_prime(inv);
  json value;
  try {
    value = json::parse(read_argument(inv.complexes));
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::schema, std::string("invalid JSON for --complexes: ") + e.what());
  }
  if (value.is_object()) value = json::array({value});
  require(value.is_array(), ErrorCode::schema, "--complexes must be a complex or an array of complexes");
  for (const auto& entry : value) out.push_back(json_io::complex_from_json(entry, inv.prime));
  return out;
}

inline void check_word_budget(int k, int length, const Bounds& bounds) {
  check_bound(k <= bounds.max_k, "k = " + std::to_string(k) + " exceeds the bound " +
                                     std::to_string(bounds.max_k) + " (GWCALC_MAX_K)");
  check_bound(length <= bounds.max_length,
              "word length " + std::to_string(length) + " exceeds the bound " +
                  std::to_string(bounds.max_length) + " (GWCALC_MAX_LENGTH)");
  const auto words = hall_basis_size(k, length);
  check_bound(words <= bounds.max_words,
              std::to_string(words) + " basis words exceed the bound " +
                  std::to_string(bounds.max_words) + " (GWCALC_MAX_WORDS)");
}

struct Output {
  json document;
  json records;                      // rows for --format tsv
  std::vector<std::string> columns;  // tsv columns; empty when unsupported
  std::string text;                  // custom text rendering, if any
};

inline std::string betti_text(const ChainComplexTable& table) {
  std::ostringstream out;
  out << "partition complex n = " << table.n << ", coefficients " << table.coefficients.name() << '\n';
  out << std::setw(8) << "degree" << std::setw(12) << "simplices" << std::setw(10) << "betti" << '\n';
  for (auto [degree, betti] : table.reduced_betti) {
    const auto simplices = degree < 0 ? std::size_t{1} : table.simplex_counts[static_cast<std::size_t>(degree)];
    out << std::setw(8) << degree << std::setw(12) << simplices << std::setw(10) << betti << '\n';
  }
  out << "reduced euler characteristic " << table.reduced_euler() << '\n';
  return out.str();
}

inline Output dispatch(const Invocation& inv, const Bounds& bounds) {
  Output out;
  const auto& cmd = inv.subcommand;

  if (cmd == "hall-basis") {
    require(inv.k >= 1 && inv.max_length >= 1, ErrorCode::precondition, "--k and --max-length must be positive");
    check_word_budget(inv.k, inv.max_length, bounds);
    out.records = json_io::to_json(hall_basis(inv.k, inv.max_length), inv.k);
    out.document = {{"k", inv.k}, {"max_length", inv.max_length}, {"words", out.records}};
    out.columns = {"word", "multidegree", "length"};
  } else if (cmd == "hm-factors") {
    const auto inputs = input_complexes(inv);
    const int k = static_cast<int>(inputs.size());
    require(inv.max_length >= 1, ErrorCode::precondition, "--max-length must be positive");
    check_word_budget(k, inv.max_length, bounds);
    out.records = json_io::to_json(hm_factors(inputs, inv.max_length), k);
    out.document = {{"max_length", inv.max_length}, {"factors", out.records}};
    out.columns = {"word", "multidegree", "length", "target"};
  } else if (cmd == "tower") {
    const auto inputs = input_complexes(inv);
    const int k = static_cast<int>(inputs.size());
    require(inv.n >= 1, ErrorCode::precondition, "--n must be at least 1");
    check_word_budget(k, inv.n, bounds);
    out.document = json_io::to_json(tower_stage(inv.n, inputs, stabilization(inv)), k);
    out.records = out.document["factors"];
    out.columns = {"word", "multidegree", "length", "target", "trunc", "stab_stage"};
  } else if (cmd == "wedge-layers") {
    const auto inputs = input_complexes(inv);
    const int k = static_cast<int>(inputs.size());
    require(inv.n >= 1, ErrorCode::precondition, "--n must be at least 1");
    check_word_budget(k, inv.n, bounds);
    out.document = json_io::to_json(wedge_layer_decomposition(inv.n, inputs), k);
    out.records = out.document["terms"];
    out.columns = {"composition", "d", "word", "target"};
  } else if (cmd == "cof-filtration") {
    require_odd_prime(inv);
    require(inv.n >= 1, ErrorCode::precondition, "--n must be at least 1");
    const bool zero = !inv.source.empty() || !inv.target.empty();
    std::optional<MapDescriptor> f;
    if (zero) {
      require(!inv.source.empty() && !inv.target.empty(), ErrorCode::precondition,
              "a zero map needs both --source and --target");
      f = MapDescriptor::zero_map(json_io::complex_from_string(read_argument(inv.source), inv.prime),
                                  json_io::complex_from_string(read_argument(inv.target), inv.prime));
    } else {
      f = MapDescriptor::degree_p(inv.ell, inv.prime);
    }
    if (inv.graded_k) {
      out.document = json_io::to_json(smash_power_graded(*f, inv.n, *inv.graded_k));
    } else {
      check_word_budget(2, inv.n, bounds);
      out.document = json_io::to_json(layer_filtration(*f, inv.n));
    }
    out.document["map"] = f->to_string();
  } else if (cmd == "moore-layers") {
    require_odd_prime(inv);
    require(inv.n >= 2, ErrorCode::precondition, "--n must be a prime");
    check_bound(inv.n <= bounds.max_moore_n, "--n exceeds the bound " + std::to_string(bounds.max_moore_n) +
                                                 " (GWCALC_MAX_MOORE_N)");
    auto listing = inv.count_only ? WordListing::count : WordListing::enumerate;
    if (listing == WordListing::enumerate) {
      std::int64_t words = 0;
      for (int k = 1; k < inv.n; ++k) words += witt_count(std::vector<int>{inv.n - k, k});
      check_bound(words <= bounds.max_words, std::to_string(words) +
                                                 " basis words exceed the bound; use --count-only");
    }
    out.document = json_io::to_json(moore_layer_simplified(inv.ell, inv.n, inv.prime, listing));
    out.document["ell"] = inv.ell;
    out.document["prime"] = inv.prime;
  } else if (cmd == "partition-betti") {
    Coefficients coefficients = Coefficients::rationals();
    if (inv.field != "Q" && inv.field != "q") {
      int p = 0;
      try {
        p = std::stoi(inv.field);
      } catch (const std::exception&) {
        throw Error(ErrorCode::precondition, "--field must be Q or a prime, got " + inv.field);
      }
      require(combinatorics::is_prime(p), ErrorCode::not_prime, "--field must be Q or a prime");
      coefficients = Coefficients::mod(static_cast<std::uint32_t>(p));
    }
    const auto table = order_complex_betti(inv.n, coefficients, bounds.max_partition_n);
    out.document = json_io::to_json(table, inv.counts);
    if (table.nonzero_betti().size() == 1 && table.nonzero_betti().begin()->first == inv.n - 3) {
      const auto cells = derivative_cells(table);
      out.document["derivative"] = {{"count", cells.count}, {"dim", cells.dim}};
    }
    out.text = betti_text(table);
  } else if (cmd == "moore-euler") {
    require_odd_prime(inv);
    check_bound(inv.n <= bounds.max_moore_n, "--n exceeds the bound " + std::to_string(bounds.max_moore_n) +
                                                 " (GWCALC_MAX_MOORE_N)");
    const auto chi = layer_euler(inv.ell, inv.n, inv.prime);
    out.document = {{"ell", inv.ell},
                    {"n", inv.n},
                    {"prime", inv.prime},
                    {"chi", chi},
                    {"chi_closed_form", layer_euler_closed_form(inv.ell, inv.n)}};
  } else if (cmd == "divergence-wedge") {
    require(!inv.spheres.empty(), ErrorCode::precondition, "--spheres is required");
    require(inv.max_length >= 1, ErrorCode::precondition, "--max-length must be positive");
    check_word_budget(static_cast<int>(inv.spheres.size()), inv.max_length, bounds);
    out.document = json_io::to_json(wedge_divergence_report(inv.spheres, stabilization(inv), inv.max_length));
    out.records = out.document["records"];
    out.columns = {"word", "multidegree", "length", "target", "stab_stage"};
  } else if (cmd == "divergence-moore") {
    check_bound(inv.n_max <= bounds.max_moore_n, "--n-max exceeds the bound " +
                                                     std::to_string(bounds.max_moore_n) +
                                                     " (GWCALC_MAX_MOORE_N)");
    out.document = json_io::to_json(moore_split_limit_report(inv.ell, inv.n_max, inv.prime));
  } else {
    throw Error(ErrorCode::precondition, "unknown subcommand '" + cmd + "'");
  }
  return out;
}

inline void emit_error(std::ostream& err, std::string_view code, const std::string& message) {
  err << json{{"code", code}, {"message", message}}.dump() << '\n';
}

}  // namespace detail

/// Parses argv (without the program name), runs the subcommand, writes the
/// report to out and diagnostics to err. Returns the process exit status.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Invocation inv;
  CLI::App app{"Symbolic calculator for Goodwillie towers on wedges and Moore spectra", "gwcalc"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand all help");

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--prime", inv.prime, "Prime p (default 3)");
    sub->add_option("--format", inv.format, "Output format: json, tsv or text")
        ->check(CLI::IsMember({"json", "tsv", "text"}));
  };
  auto add_inputs = [&](CLI::App* sub) {
    sub->add_option("--spheres", inv.spheres, "Sphere dimensions d_1,...,d_k")->delimiter(',');
    sub->add_option("--complexes", inv.complexes, "JSON complex or array of complexes, or @file");
  };
  auto add_stabilization = [&](CLI::App* sub) {
    sub->add_option("--height", inv.height, "Chromatic height h (default 1)");
    sub->add_option("--parity", inv.parity, "Sphere parity stabilizing at p^h: odd or even")
        ->check(CLI::IsMember({"odd", "even"}));
  };

  auto* hall = app.add_subcommand("hall-basis", "Lyndon basis of the free Lie algebra");
  add_common(hall);
  hall->add_option("--k", inv.k, "Number of generators")->required();
  hall->add_option("--max-length", inv.max_length, "Maximum word length")->required();

  auto* hm = app.add_subcommand("hm-factors", "Hilton-Milnor factors of a wedge");
  add_common(hm);
  add_inputs(hm);
  hm->add_option("--max-length", inv.max_length, "Maximum word length")->required();

  auto* tower = app.add_subcommand("tower", "Stage n of the tower on a wedge of suspensions");
  add_common(tower);
  add_inputs(tower);
  add_stabilization(tower);
  tower->add_option("--n", inv.n, "Tower stage")->required();

  auto* layers = app.add_subcommand("wedge-layers", "Layer n of the tower on a wedge of suspensions");
  add_common(layers);
  add_inputs(layers);
  layers->add_option("--n", inv.n, "Layer index")->required();

  auto* cof = app.add_subcommand("cof-filtration", "Filtration of D_n(cof f) or of cof(f)^n");
  add_common(cof);
  cof->add_option("--n", inv.n, "Layer index")->required();
  cof->add_option("--ell", inv.ell, "Use f = p : S^ell -> S^ell (default 5)");
  cof->add_option("--source", inv.source, "Zero map source complex (JSON or @file)");
  cof->add_option("--target", inv.target, "Zero map target complex (JSON or @file)");
  cof->add_option("--graded-k", inv.graded_k, "Report gr_k of cof(f)^n instead");

  auto* moore = app.add_subcommand("moore-layers", "Filtration of D_n M^ell for prime n");
  add_common(moore);
  moore->add_option("--ell", inv.ell, "Moore spectrum bottom dimension")->required();
  moore->add_option("--n", inv.n, "Prime layer index")->required();
  moore->add_flag("--count-only", inv.count_only, "Group basis words by count");

  auto* betti = app.add_subcommand("partition-betti", "Reduced Betti numbers of the partition complex");
  add_common(betti);
  betti->add_option("--n", inv.n, "Size of the partitioned set")->required();
  betti->add_option("--field", inv.field, "Q or a prime (default Q)");
  betti->add_flag("--counts", inv.counts, "Include simplex counts and ranks");

  auto* euler = app.add_subcommand("moore-euler", "K-theoretic Euler characteristic of D_n M^ell");
  add_common(euler);
  euler->add_option("--ell", inv.ell, "Moore spectrum bottom dimension")->required();
  euler->add_option("--n", inv.n, "Prime layer index")->required();

  auto* dwedge = app.add_subcommand("divergence-wedge", "Unbounded stabilization stages on a wedge of spheres");
  add_common(dwedge);
  add_stabilization(dwedge);
  dwedge->add_option("--spheres", inv.spheres, "Sphere dimensions d_1,...,d_k")->delimiter(',')->required();
  dwedge->add_option("--max-length", inv.max_length, "Maximum word length");

  auto* dmoore = app.add_subcommand("divergence-moore", "Divergence certificate for M^ell");
  add_common(dmoore);
  dmoore->add_option("--ell", inv.ell, "Moore spectrum bottom dimension")->required();
  dmoore->add_option("--n-max", inv.n_max, "Largest layer index to certify");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    detail::emit_error(err, "usage", e.what());
    return kExitPrecondition;
  }
  inv.subcommand = app.get_subcommands().front()->get_name();

  try {
    const auto bounds = Bounds::from_environment();
    const auto result = detail::dispatch(inv, bounds);
    if (inv.format == "json") {
      out << result.document.dump(2) << '\n';
    } else if (inv.format == "tsv") {
      require(!result.columns.empty(), ErrorCode::precondition,
              "--format tsv is not available for " + inv.subcommand);
      out << json_io::to_tsv(result.records, result.columns);
    } else if (!result.text.empty()) {
      out << result.text;
    } else if (!result.columns.empty()) {
      out << json_io::to_tsv(result.records, result.columns);
    } else {
      out << result.document.dump(2) << '\n';
    }
    return kExitOk;
  } catch (const Error& e) {
    detail::emit_error(err, to_string(e.code()), e.what());
    return kExitPrecondition;
  } catch (const std::exception& e) {
    detail::emit_error(err, "internal", e.what());
    return kExitInternal;
  }
}

}  // namespace gwcalc::cli
