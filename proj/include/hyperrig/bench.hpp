#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include <fmt/format.h>

#include "hyperrig/codec.hpp"
#include "hyperrig/core.hpp"
#include "hyperrig/memory.hpp"
#include "hyperrig/parallel.hpp"

namespace hyperrig {

// Monte-Carlo experiments emitted as CSV. Each record owns a seed derived from
// (master seed, experiment, dimension, parameter); every trial derives its symbols
// from that seed, so a record regenerates alone and independently of thread count.

struct BenchRecord {
  std::string experiment;
  std::string algebra;
  std::size_t dimension = 0;
  std::string parameter_name;  // k, table, depth
  long parameter = 0;
  std::size_t trials = 0;
  double accuracy = 0.0;
  double mean_similarity = 0.0;
  std::uint64_t seed = 0;

  std::string parameter_string() const { return parameter_name + "=" + std::to_string(parameter); }
};

inline constexpr std::string_view kBenchCsvHeader =
    "experiment,algebra,dimension,parameter,trials,accuracy,mean_similarity,seed";

struct BenchOptions {
  std::size_t trials = 1000;
  std::size_t codebook_size = 100;
  std::size_t threads = 0;
};

/// Sorts by (experiment, algebra, dimension, parameter) so the CSV is independent of how
/// the sweep was scheduled.
inline void sort_records(std::vector<BenchRecord>& rs) {
  std::stable_sort(rs.begin(), rs.end(), [](const BenchRecord& a, const BenchRecord& b) {
    return std::tie(a.experiment, a.algebra, a.dimension, a.parameter_name, a.parameter) <
           std::tie(b.experiment, b.algebra, b.dimension, b.parameter_name, b.parameter);
  });
}

inline std::string record_to_csv(const BenchRecord& r) {
  return fmt::format("{},{},{},{},{},{:.9g},{:.9g},{}", r.experiment, r.algebra, r.dimension, r.parameter_string(),
                     r.trials, r.accuracy, r.mean_similarity, r.seed);
}

inline void write_csv(std::ostream& out, std::vector<BenchRecord> rs) {
  sort_records(rs);
  out << kBenchCsvHeader << '\n';
  for (const auto& r : rs) out << record_to_csv(r) << '\n';
}

inline std::uint64_t record_seed(const AlgebraParams& p, std::string_view experiment, long parameter) {
  return derive_seed(p.master_seed, static_cast<std::uint64_t>(SeedStream::Trial), name_seed(experiment), p.dimension,
                     static_cast<std::uint64_t>(parameter));
}

namespace detail {

inline void require_bench(const BenchOptions& o) {
  if (o.trials < 100) throw ConfigError("bench experiments need at least 100 trials");
}

/// Symbol seed of symbol i in a trial of a record.
inline std::uint64_t bench_symbol(std::uint64_t rseed, std::size_t trial, std::size_t i) {
  return derive_seed(rseed, trial, i);
}

inline std::string symbol_name(std::size_t i) { return fmt::format("s{:04}", i); }

struct Tally {
  std::size_t hits = 0;
  std::size_t total = 0;
  double sim = 0.0;
};

inline BenchRecord tally_record(const AlgebraParams& p, std::string experiment, std::string pname, long pvalue,
                                std::size_t trials, std::uint64_t seed, const std::vector<Tally>& ts) {
  std::size_t hits = 0, total = 0;
  double sim = 0.0;
  for (const auto& t : ts) {
    hits += t.hits;
    total += t.total;
    sim += t.sim;
  }
  return BenchRecord{std::move(experiment),
                     std::string(algebra_name(p.algebra)),
                     p.dimension,
                     std::move(pname),
                     pvalue,
                     trials,
                     total ? static_cast<double>(hits) / static_cast<double>(total) : 0.0,
                     total ? sim / static_cast<double>(total) : 0.0,
                     seed};
}

/// Uniformly shuffled [0, n) from a seed.
inline std::vector<std::size_t> shuffled(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), std::size_t{0});
  Rng rng(seed);
  std::shuffle(v.begin(), v.end(), rng);
  return v;
}

}  // namespace detail

/// Bundles k distinct codebook members (NATIVE) and counts a member as recovered when it
/// ranks within the top k of the full codebook. mean_similarity is bundle-to-member.
inline std::vector<BenchRecord> bundle_capacity(const AlgebraParams& p, const std::vector<long>& ks,
                                                const BenchOptions& o = {}) {
  detail::require_bench(o);
  std::vector<BenchRecord> out;
  for (long k : ks) {
    if (k < 1 || static_cast<std::size_t>(k) > o.codebook_size) {
      throw ConfigError("bundle_capacity: k must lie in 1..codebook size");
    }
    const auto seed = record_seed(p, "capacity", k);
    auto ts = parallel_map(
        o.trials,
        [&](std::size_t t) {
          std::vector<std::pair<std::string, Hypervector>> book;
          book.reserve(o.codebook_size);
          for (std::size_t i = 0; i < o.codebook_size; ++i)
            book.emplace_back(detail::symbol_name(i), random_vector(p, detail::bench_symbol(seed, t, i)));
          const ItemMemory mem(p, book);
          const auto order = detail::shuffled(o.codebook_size, derive_seed(seed, t, ~std::uint64_t{0}));
          std::vector<const Hypervector*> members;
          for (long j = 0; j < k; ++j) members.push_back(&book[order[static_cast<std::size_t>(j)]].second);
          const auto b = bundle_ptrs(members, BundleMode::Native);
          const auto ranked = mem.rank(b);
          detail::Tally tally;
          for (long j = 0; j < k; ++j) {
            const auto& name = book[order[static_cast<std::size_t>(j)]].first;
            const bool top = std::any_of(ranked.begin(), ranked.begin() + k, [&](const Ranked& r) { return r.name == name; });
            tally.hits += top ? 1 : 0;
            tally.total += 1;
            tally.sim += similarity(b, *members[static_cast<std::size_t>(j)]);
          }
          return tally;
        },
        o.threads);
    out.push_back(detail::tally_record(p, "capacity", "k", k, o.trials, seed, ts));
  }
  return out;
}

/// Random bijections f: X -> Y and g: Y -> Z over `n` symbols each; every x is pushed
/// through compose_apply and cleaned against Z, and compared with g(f(x)) computed on
/// the tables directly. Emits one record with and one without intermediate cleanup.
inline std::vector<BenchRecord> composition_crosstalk(const AlgebraParams& p, const std::vector<long>& sizes,
                                                      const BenchOptions& o = {}) {
  detail::require_bench(o);
  std::vector<BenchRecord> out;
  for (long n : sizes) {
    if (n < 1) throw ConfigError("composition_crosstalk: table size must be positive");
    const auto un = static_cast<std::size_t>(n);
    const auto seed = record_seed(p, "crosstalk", n);
    auto ts = parallel_map(
        o.trials,
        [&](std::size_t t) {
          std::vector<Hypervector> xs, ys, zs;
          for (std::size_t i = 0; i < un; ++i) {
            xs.push_back(random_vector(p, detail::bench_symbol(seed, t, i)));
            ys.push_back(random_vector(p, detail::bench_symbol(seed, t, un + i)));
            zs.push_back(random_vector(p, detail::bench_symbol(seed, t, 2 * un + i)));
          }
          const auto f = detail::shuffled(un, derive_seed(seed, t, ~std::uint64_t{0}));
          const auto g = detail::shuffled(un, derive_seed(seed, t, ~std::uint64_t{1}));
          std::vector<FunctionRow> frows, grows;
          for (std::size_t i = 0; i < un; ++i) {
            frows.push_back({"x" + std::to_string(i), xs[i], "y" + std::to_string(f[i]), ys[f[i]]});
            grows.push_back({"y" + std::to_string(i), ys[i], "z" + std::to_string(g[i]), zs[g[i]]});
          }
          const auto F = encode_function(frows), G = encode_function(grows);
          std::pair<detail::Tally, detail::Tally> tally;  // (clean, raw)
          for (std::size_t i = 0; i < un; ++i) {
            const auto expected = "z" + std::to_string(g[f[i]]);
            for (bool clean : {true, false}) {
              auto& tl = clean ? tally.first : tally.second;
              tl.total += 1;
              std::optional<Hypervector> v;
              // an uncleaned intermediate without an inverse (bsdc_seg, mbat sums) counts as a miss
              try {
                v = compose_apply(F, G, xs[i], clean);
              } catch (const DomainError&) {
                continue;
              } catch (const UnsupportedError&) {
                continue;
              }
              tl.hits += G.range_memory.cleanup(*v).name == expected ? 1 : 0;
              tl.sim += similarity(*v, zs[g[f[i]]]);
            }
          }
          return tally;
        },
        o.threads);
    std::vector<detail::Tally> clean, raw;
    for (auto& [c, r] : ts) {
      clean.push_back(c);
      raw.push_back(r);
    }
    out.push_back(detail::tally_record(p, "crosstalk_clean", "table", n, o.trials, seed, clean));
    out.push_back(detail::tally_record(p, "crosstalk_raw", "table", n, o.trials, seed, raw));
  }
  return out;
}

/// Fraction of unordered pairs of distinct root-to-leaf paths whose guard products are
/// equal (within 1e-9); nonzero exactly when binding commutes.
inline double guarded_collision_rate(const AlgebraParams& p, std::size_t depth) {
  const std::size_t leaves = std::size_t{1} << depth;
  std::vector<Hypervector> products;
  for (std::size_t i = 0; i < leaves; ++i) products.push_back(path_product(p, leaf_path(i, depth)));
  std::size_t equal = 0, pairs = 0;
  for (std::size_t i = 0; i < leaves; ++i)
    for (std::size_t j = i + 1; j < leaves; ++j) {
      ++pairs;
      equal += approx_equal(products[i], products[j], 1e-9) ? 1 : 0;
    }
  return static_cast<double>(equal) / static_cast<double>(pairs);
}

/// Encodes 2^depth random leaves, decodes every path and cleans it against a codebook
/// holding the leaves plus distractors. BRAIDED runs for every algebra; GUARDED where
/// binding is associative and invertible, together with its structural collision rate.
inline std::vector<BenchRecord> tree_retrieval(const AlgebraParams& p, const std::vector<long>& depths,
                                               const BenchOptions& o = {}) {
  detail::require_bench(o);
  std::vector<BenchRecord> out;
  const bool guarded = supports_inverse(p.algebra) && bind_is_associative(p.algebra);
  for (long depth : depths) {
    if (depth < 1 || depth > 16) throw ConfigError("tree_retrieval: depth must lie in 1..16");
    const std::size_t leaves = std::size_t{1} << depth;
    const std::size_t book_size = std::max(leaves, o.codebook_size);
    for (auto construction : {Construction::Braided, Construction::Guarded}) {
      if (construction == Construction::Guarded && !guarded) continue;
      const std::string experiment = std::string("tree_") + construction_name(construction);
      const auto seed = record_seed(p, experiment, depth);
      auto ts = parallel_map(
          o.trials,
          [&](std::size_t t) {
            std::vector<std::pair<std::string, Hypervector>> book;
            for (std::size_t i = 0; i < book_size; ++i)
              book.emplace_back(detail::symbol_name(i), random_vector(p, detail::bench_symbol(seed, t, i)));
            const ItemMemory mem(p, book);
            std::vector<Hypervector> xs;
            for (std::size_t i = 0; i < leaves; ++i) xs.push_back(book[i].second);
            const auto tree = encode_tree(xs, construction);
            detail::Tally tally;
            for (std::size_t i = 0; i < leaves; ++i) {
              const auto v = decode_leaf(tree, leaf_path(i, static_cast<std::size_t>(depth)));
              tally.hits += mem.cleanup(v).name == book[i].first ? 1 : 0;
              tally.total += 1;
              tally.sim += similarity(v, xs[i]);
            }
            return tally;
          },
          o.threads);
      out.push_back(detail::tally_record(p, experiment, "depth", depth, o.trials, seed, ts));
      if (construction == Construction::Guarded) {
        // accuracy holds the collision rate; there is no similarity to report.
        BenchRecord r{"tree_guarded_collisions", std::string(algebra_name(p.algebra)), p.dimension, "depth", depth,
                      o.trials, guarded_collision_rate(p, static_cast<std::size_t>(depth)), 0.0, seed};
        out.push_back(std::move(r));
      }
    }
  }
  return out;
}

/// Default desk-scale sweep values.
inline const std::vector<std::size_t> kDefaultDimensions{64, 256, 1024};
inline const std::vector<long> kDefaultBundleSizes{1, 2, 3, 5, 7, 9, 11, 15};
inline const std::vector<long> kDefaultTableSizes{2, 4, 8, 16, 32};
inline const std::vector<long> kDefaultTreeDepths{1, 2, 3};

}  // namespace hyperrig
