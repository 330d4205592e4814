#pragma once

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "hyperrig/hyperrig.hpp"

namespace hyperrig::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitDomain = 2;
inline constexpr int kExitIo = 3;

/// Bad flag combinations the parser cannot see (argument counts, malformed grids).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kGrammar = R"(Commands:
  gen --algebra A --dim D [--density P] [--block B] --name N [--book FILE]
  op {bind|bundle|unbind|braid|inverse|sim|frac} --book FILE --args NAMES... [--out NAME] [--raw] [--power R] [--role I]
  cleanup --book FILE --query NAME_OR_FILE
  encode {function|tuple|list|tree} --book FILE --spec JSONFILE --out NAME
  decode {function|tuple|list|tree} --book FILE --args NAMES... [--spec JSONFILE] [--index K] [--path LR..] [--construction C] [--out NAME]
  laws --algebra A --dim D [--trials T] [--suite all|rig|metric|desiderata|profile] [--report FILE]
  bench {capacity|crosstalk|tree} --algebra A [--grid SPEC] [--out CSV]

Global: --seed S (default 0xC0FFEE, or $HYPERRIG_SEED), --threads N, -v.
Structure specs: function {"rows": [["x", "fx"], ...]}; tuple {"roles": [...], "fillers": [...]};
  list {"items": [...], "construction": "braided"|"guarded"}; tree {"leaves": [...], "construction": ...}.
Bench grid: "d=64,256,1024;p=1..7;trials=1000;codebook=100" (p is k, table size or depth).
Exit codes: 0 ok, 1 usage, 2 domain or algebra error, 3 I/O error.)";

inline std::string num(double v) { return fmt::format("{:.9g}", v); }
inline std::string sim_text(double v) { return fmt::format("{:.9f}", v); }

inline std::uint64_t parse_seed(const std::string& text, const char* origin) {
  try {
    std::size_t used = 0;
    const auto v = std::stoull(text, &used, 0);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw UsageError(std::string(origin) + ": '" + text + "' is not an unsigned integer seed");
  }
}

inline std::uint64_t resolve_seed(const std::optional<std::string>& flag) {
  if (flag) return parse_seed(*flag, "--seed");
  if (const char* env = std::getenv("HYPERRIG_SEED")) return parse_seed(env, "HYPERRIG_SEED");
  return kDefaultMasterSeed;
}

inline const Hypervector& named(const Codebook& book, const std::string& name, const std::string& book_path) {
  auto it = book.vectors.find(name);
  if (it == book.vectors.end()) throw ConfigError("--args: codebook '" + book_path + "' has no vector named '" + name + "'");
  return it->second;
}

inline json read_json(const std::string& path, const char* flag) {
  std::ifstream in(path);
  if (!in) throw IoError(std::string(flag) + ": cannot read '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string(flag) + ": '" + path + "' is not valid JSON: " + e.what());
  }
}

inline Construction parse_construction(const std::string& s) {
  if (s == "braided") return Construction::Braided;
  if (s == "guarded") return Construction::Guarded;
  throw UsageError("--construction: expected braided or guarded, got '" + s + "'");
}

inline std::vector<std::string> names_of(const json& spec, const char* key, const std::string& path) {
  if (!spec.contains(key) || !spec[key].is_array()) {
    throw ConfigError("--spec: '" + path + "' needs an array field '" + key + "'");
  }
  try {
    return spec[key].get<std::vector<std::string>>();
  } catch (const json::exception&) {
    throw ConfigError("--spec: field '" + std::string(key) + "' of '" + path + "' must list codebook names");
  }
}

inline std::vector<std::pair<std::string, std::string>> function_rows(const json& spec, const std::string& path) {
  std::vector<std::pair<std::string, std::string>> rows;
  try {
    for (const auto& r : spec.at("rows")) rows.emplace_back(r.at(0).get<std::string>(), r.at(1).get<std::string>());
  } catch (const json::exception&) {
    throw ConfigError("--spec: '" + path + "' needs \"rows\": [[\"x\", \"fx\"], ...]");
  }
  return rows;
}

/// Inclusive ranges "a..b" and comma lists.
inline std::vector<long> parse_values(const std::string& text, const std::string& key) {
  std::vector<long> out;
  std::stringstream ss(text);
  std::string item;
  try {
    while (std::getline(ss, item, ',')) {
      const auto dots = item.find("..");
      if (dots == std::string::npos) {
        out.push_back(std::stol(item));
      } else {
        const long a = std::stol(item.substr(0, dots)), b = std::stol(item.substr(dots + 2));
        if (b < a || b - a > 100000) throw std::invalid_argument(item);
        for (long v = a; v <= b; ++v) out.push_back(v);
      }
    }
  } catch (const std::exception&) {
    throw UsageError("--grid: bad value list '" + text + "' for key '" + key + "'");
  }
  if (out.empty()) throw UsageError("--grid: key '" + key + "' has no values");
  return out;
}

struct Grid {
  std::vector<long> dims{kDefaultDimensions.begin(), kDefaultDimensions.end()};
  std::optional<std::vector<long>> values;
  std::size_t trials = 1000;
  std::size_t codebook = 100;
};

inline Grid parse_grid(const std::string& text) {
  Grid g;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ';')) {
    if (part.empty()) continue;
    const auto eq = part.find('=');
    if (eq == std::string::npos) throw UsageError("--grid: expected key=values, got '" + part + "'");
    const auto key = part.substr(0, eq);
    const auto vals = parse_values(part.substr(eq + 1), key);
    if (key == "d" || key == "dim") {
      g.dims = vals;
    } else if (key == "p" || key == "k" || key == "table" || key == "depth") {
      g.values = vals;
    } else if (key == "trials" || key == "codebook") {
      if (vals.size() != 1 || vals[0] <= 0) throw UsageError("--grid: '" + key + "' takes one positive value");
      (key == "trials" ? g.trials : g.codebook) = static_cast<std::size_t>(vals[0]);
    } else {
      throw UsageError("--grid: unknown key '" + key + "'");
    }
  }
  for (long d : g.dims)
    if (d <= 0) throw UsageError("--grid: dimensions must be positive");
  return g;
}

inline void write_text(const std::string& path, const std::string& text, const char* flag) {
  std::ofstream out(path);
  if (!out) throw IoError(std::string(flag) + ": cannot write '" + path + "'");
  out << text;
  if (!out) throw IoError(std::string(flag) + ": failed writing '" + path + "'");
}

/// Parses argv and runs one subcommand. Output goes to `out`, diagnostics to `err`.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"hyperrig: vector-symbolic algebras, structure codecs, law audits and capacity benchmarks"};
  app.footer(kGrammar);
  app.require_subcommand(1);

  std::optional<std::string> seed_flag;
  std::size_t threads = 0;
  int verbosity = 0;
  app.add_option("--seed", seed_flag, "master seed (decimal or 0x hex)");
  app.add_option("--threads", threads, "worker threads for laws and bench (0: HYPERRIG_THREADS or all cores)");
  app.add_flag("-v,--verbose", verbosity, "print diagnostics to stderr");

  // shared flag storage
  std::string algebra, book_path, name, out_name, query, spec_path, report_path, grid_text, construction, path_text;
  std::size_t dim = 0, trials = 1000, index = 1;
  std::optional<double> density, power;
  std::optional<std::size_t> block;
  std::vector<std::string> args, candidates;
  std::string operation, structure, experiment, suite = "all";
  bool raw = false;
  unsigned role = 0;

  auto* gen = app.add_subcommand("gen", "create a base vector from its name and store it");
  gen->add_option("--algebra", algebra, "algebra id")->required();
  gen->add_option("--dim", dim, "dimension")->required();
  gen->add_option("--density", density, "active fraction (bsdc family)");
  gen->add_option("--block", block, "block size (bsdc_seg)");
  gen->add_option("--name", name, "symbol name; also the symbol seed")->required();
  gen->add_option("--book", book_path, "codebook file to create or extend; prints the vector when absent");

  auto* op = app.add_subcommand("op", "apply an algebra operation to codebook vectors");
  op->add_option("operation", operation, "bind|bundle|unbind|braid|inverse|sim|frac")
      ->required()
      ->check(CLI::IsMember({"bind", "bundle", "unbind", "braid", "inverse", "sim", "frac"}));
  op->add_option("--book", book_path, "codebook file")->required();
  op->add_option("--args", args, "operand names")->required();
  op->add_option("--out", out_name, "store the result under this name instead of printing it");
  op->add_flag("--raw", raw, "RAW bundling (no normalization)");
  op->add_option("--power", power, "braid power (integer) or fractional exponent");
  op->add_option("--role", role, "braid role index (0 default, 1 left, 2 right)");

  auto* cleanup_cmd = app.add_subcommand("cleanup", "nearest codebook entry to a query");
  cleanup_cmd->add_option("--book", book_path, "codebook file")->required();
  cleanup_cmd->add_option("--query", query, "codebook name or vector JSON file")->required();

  auto* encode = app.add_subcommand("encode", "encode a structure spec into one vector");
  encode->add_option("structure", structure, "function|tuple|list|tree")
      ->required()
      ->check(CLI::IsMember({"function", "tuple", "list", "tree"}));
  encode->add_option("--book", book_path, "codebook file")->required();
  encode->add_option("--spec", spec_path, "structure spec JSON file")->required();
  encode->add_option("--out", out_name, "name for the encoded vector")->required();

  auto* decode = app.add_subcommand("decode", "query an encoded structure and clean up the answer");
  decode->add_option("structure", structure, "function|tuple|list|tree")
      ->required()
      ->check(CLI::IsMember({"function", "tuple", "list", "tree"}));
  decode->add_option("--book", book_path, "codebook file")->required();
  decode->add_option("--args", args, "function: F X; tuple: W ROLE; list: L; tree: T")->required();
  decode->add_option("--spec", spec_path, "spec used at encoding; restricts cleanup to its symbols");
  decode->add_option("--index", index, "1-based list position");
  decode->add_option("--path", path_text, "tree path such as LR");
  decode->add_option("--construction", construction, "braided|guarded when no --spec is given");
  decode->add_option("--candidates", candidates, "cleanup candidates (default: all other entries)");
  decode->add_option("--out", out_name, "store the uncleaned answer under this name");

  auto* laws = app.add_subcommand("laws", "audit rig, metric and desiderata laws");
  laws->add_option("--algebra", algebra, "algebra id")->required();
  laws->add_option("--dim", dim, "dimension")->required();
  laws->add_option("--density", density, "active fraction (bsdc family)");
  laws->add_option("--block", block, "block size (bsdc_seg)");
  laws->add_option("--trials", trials, "trials per law (>= 100)");
  laws->add_option("--suite", suite, "all|rig|metric|desiderata|profile")
      ->check(CLI::IsMember({"all", "rig", "metric", "desiderata", "profile"}));
  laws->add_option("--report", report_path, "JSON report file (stdout when absent)");

  auto* bench = app.add_subcommand("bench", "Monte-Carlo capacity, crosstalk and tree experiments");
  bench->add_option("experiment", experiment, "capacity|crosstalk|tree")
      ->required()
      ->check(CLI::IsMember({"capacity", "crosstalk", "tree"}));
  bench->add_option("--algebra", algebra, "algebra id")->required();
  bench->add_option("--grid", grid_text, "sweep spec");
  bench->add_option("--out", out_name, "CSV file (stdout when absent)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const std::uint64_t seed = resolve_seed(seed_flag);
    auto log = [&](const std::string& msg) {
      if (verbosity > 0) err << msg << '\n';
    };
    log(fmt::format("master seed {:#x}", seed));

    auto make_params = [&]() { return AlgebraParams::make(parse_algebra(algebra), dim, seed, density, block); };

    if (*gen) {
      const auto p = make_params();
      const auto v = random_vector(p, name_seed(name));
      if (book_path.empty()) {
        out << vector_to_json(v).dump() << '\n';
        return kExitOk;
      }
      Codebook book{p, {}};
      if (std::filesystem::exists(book_path)) {
        book = Codebook::load(book_path);
        if (!(book.params == p)) {
          throw ConfigError("--book: '" + book_path + "' holds a different algebra configuration");
        }
      }
      book.put(name, v);
      book.save(book_path);
      log(fmt::format("stored '{}' in {}", name, book_path));
      return kExitOk;
    }

    if (*op) {
      auto book = Codebook::load(book_path);
      std::vector<Hypervector> xs;
      for (const auto& a : args) xs.push_back(named(book, a, book_path));
      auto need = [&](std::size_t n) {
        if (xs.size() != n) {
          throw UsageError(fmt::format("--args: {} takes exactly {} name(s), got {}", operation, n, xs.size()));
        }
      };
      std::optional<Hypervector> result;
      if (operation == "sim") {
        need(2);
        out << sim_text(similarity(xs[0], xs[1])) << '\n';
        return kExitOk;
      } else if (operation == "bind") {
        need(2);
        result = bind(xs[0], xs[1]);
      } else if (operation == "unbind") {
        need(2);
        result = unbind(xs[0], xs[1]);
      } else if (operation == "bundle") {
        if (xs.empty()) throw UsageError("--args: bundle needs at least one name");
        result = bundle_all(xs, raw ? BundleMode::Raw : BundleMode::Native);
      } else if (operation == "inverse") {
        need(1);
        result = inverse(xs[0]);
      } else if (operation == "braid") {
        need(1);
        const double k = power.value_or(1.0);
        if (k != std::floor(k)) throw UsageError("--power: braid needs an integer power");
        if (role >= BraidRole::kMaxRoles) throw UsageError("--role: must be below 16");
        result = braid(xs[0], BraidRole{role}, static_cast<long>(k));
      } else {  // frac
        need(1);
        if (!power) throw UsageError("--power: frac needs an exponent");
        result = fractional_power(xs[0], *power);
      }
      if (out_name.empty()) {
        out << vector_to_json(*result).dump() << '\n';
      } else {
        book.put(out_name, *result);
        book.save(book_path);
        log(fmt::format("stored '{}' in {}", out_name, book_path));
      }
      return kExitOk;
    }

    if (*cleanup_cmd) {
      auto book = Codebook::load(book_path);
      std::optional<Hypervector> q;
      if (auto it = book.vectors.find(query); it != book.vectors.end()) {
        q = it->second;
      } else if (std::filesystem::exists(query)) {
        q = vector_from_json(book.params, read_json(query, "--query"));
      } else {
        throw IoError("--query: '" + query + "' is neither a name in '" + book_path + "' nor a readable file");
      }
      const auto r = book.memory().cleanup(*q);
      out << r.name << ' ' << sim_text(r.score) << ' ' << num(r.margin) << '\n';
      return kExitOk;
    }

    if (*encode) {
      auto book = Codebook::load(book_path);
      const auto spec = read_json(spec_path, "--spec");
      auto get = [&](const std::string& n) { return named(book, n, book_path); };
      std::optional<Hypervector> v;
      if (structure == "function") {
        std::vector<FunctionRow> rows;
        for (const auto& [x, fx] : function_rows(spec, spec_path)) rows.push_back({x, get(x), fx, get(fx)});
        v = encode_function(rows).vector;
      } else if (structure == "tuple") {
        std::vector<Hypervector> roles, fillers;
        for (const auto& n : names_of(spec, "roles", spec_path)) roles.push_back(get(n));
        for (const auto& n : names_of(spec, "fillers", spec_path)) fillers.push_back(get(n));
        v = encode_tuple(roles, fillers);
      } else {
        const auto c = parse_construction(spec.value("construction", std::string("braided")));
        std::vector<Hypervector> items;
        for (const auto& n : names_of(spec, structure == "list" ? "items" : "leaves", spec_path)) items.push_back(get(n));
        v = structure == "list" ? encode_list(items, c).vector : encode_tree(items, c).vector;
      }
      book.put(out_name, *v);
      book.save(book_path);
      log(fmt::format("stored '{}' in {}", out_name, book_path));
      return kExitOk;
    }

    if (*decode) {
      auto book = Codebook::load(book_path);
      std::optional<json> spec;
      if (!spec_path.empty()) spec = read_json(spec_path, "--spec");
      std::vector<Hypervector> xs;
      for (const auto& a : args) xs.push_back(named(book, a, book_path));
      auto need = [&](std::size_t n) {
        if (xs.size() != n) {
          throw UsageError(fmt::format("--args: decode {} takes exactly {} name(s), got {}", structure, n, xs.size()));
        }
      };
      Construction c = parse_construction(construction.empty() ? "braided" : construction);
      if (spec && construction.empty() && spec->contains("construction")) {
        c = parse_construction((*spec)["construction"].get<std::string>());
      }
      std::optional<Hypervector> answer;
      std::vector<std::string> pool = candidates;
      if (structure == "function") {
        need(2);
        answer = unbind(xs[1], xs[0]);
        if (spec && pool.empty())
          for (const auto& [x, fx] : function_rows(*spec, spec_path)) pool.push_back(fx);
      } else if (structure == "tuple") {
        need(2);
        answer = decode_tuple(xs[0], xs[1]);
        if (spec && pool.empty()) pool = names_of(*spec, "fillers", spec_path);
      } else if (structure == "list") {
        need(1);
        std::size_t length = index;
        if (spec) length = names_of(*spec, "items", spec_path).size();
        if (index == 0 || index > length) throw UsageError(fmt::format("--index: {} is outside 1..{}", index, length));
        answer = decode_list_item(ListCode{xs[0], length, c, BraidRole::standard(), reserved::kGuard}, index);
        if (spec && pool.empty()) pool = names_of(*spec, "items", spec_path);
      } else {
        need(1);
        if (path_text.empty()) throw UsageError("--path: decode tree needs a path such as LR");
        const auto path = parse_path(path_text);
        answer = decode_leaf(TreeCode{xs[0], path.size(), c}, path);
        if (spec && pool.empty()) pool = names_of(*spec, "leaves", spec_path);
      }
      if (pool.empty()) {
        for (const auto& [n, v] : book.vectors)
          if (std::find(args.begin(), args.end(), n) == args.end()) pool.push_back(n);
      }
      std::vector<std::pair<std::string, Hypervector>> entries;
      for (const auto& n : pool) {
        const auto& v = named(book, n, book_path);
        if (v.dimension() == book.params.dimension && v.tensor_order() == 1 &&
            std::none_of(entries.begin(), entries.end(), [&](const auto& e) { return e.first == n; })) {
          entries.emplace_back(n, v);
        }
      }
      const auto r = ItemMemory(book.params, entries).cleanup(*answer);
      out << r.name << ' ' << sim_text(r.score) << ' ' << num(r.margin) << '\n';
      if (!out_name.empty()) {
        book.put(out_name, *answer);
        book.save(book_path);
      }
      return kExitOk;
    }

    if (*laws) {
      const auto p = make_params();
      const LawOptions o{trials, threads};
      std::vector<LawReport> reports;
      if (suite == "all") reports = check_all_laws(p, o);
      else if (suite == "rig") reports = check_rig_laws(p, o);
      else if (suite == "metric") reports = check_metric_axioms(p, o);
      else if (suite == "desiderata") reports = check_desiderata(p, o);
      else {
        const auto pc = check_profile(p, o);
        reports = pc.reports;
        log(fmt::format("expected {} observed {}", profile_to_json(pc.expected).dump(), profile_to_json(pc.observed).dump()));
        err << (pc.matches() ? "profile matches" : "profile MISMATCH") << '\n';
      }
      const auto text = reports_to_json(reports).dump(1) + "\n";
      if (report_path.empty()) {
        out << text;
      } else {
        write_text(report_path, text, "--report");
        for (const auto& r : reports)
          out << fmt::format("{:<8} {:<30} {:<15} {}\n", r.suite, r.law_id, verdict_name(r.verdict), num(r.statistic));
      }
      return kExitOk;
    }

    if (*bench) {
      const auto id = parse_algebra(algebra);
      const auto g = parse_grid(grid_text);
      const BenchOptions o{g.trials, g.codebook, threads};
      std::vector<BenchRecord> records;
      for (long d : g.dims) {
        const auto p = AlgebraParams::make(id, static_cast<std::size_t>(d), seed);
        std::vector<BenchRecord> part;
        if (experiment == "capacity") part = bundle_capacity(p, g.values.value_or(kDefaultBundleSizes), o);
        else if (experiment == "crosstalk") part = composition_crosstalk(p, g.values.value_or(kDefaultTableSizes), o);
        else part = tree_retrieval(p, g.values.value_or(kDefaultTreeDepths), o);
        records.insert(records.end(), part.begin(), part.end());
        log(fmt::format("d={} done", d));
      }
      std::ostringstream csv;
      write_csv(csv, records);
      if (out_name.empty()) out << csv.str();
      else write_text(out_name, csv.str(), "--out");
      return kExitOk;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitUsage;
}

}  // namespace hyperrig::cli
