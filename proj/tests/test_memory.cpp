#include <cmath>
#include <filesystem>
#include <limits>
#include <random>
#include <string>

#include <gtest/gtest.h>

#include "hyperrig/hyperrig.hpp"
#include "oracles.hpp"

using namespace hyperrig;

namespace {

ItemMemory filled(const AlgebraParams& p, int n, std::uint64_t offset = 0) {
  ItemMemory mem(p);
  for (int i = 0; i < n; ++i) mem = mem.insert("s" + std::to_string(1000 + i), random_vector(p, offset + i));
  return mem;
}

Hypervector flip_fraction(const Hypervector& x, double frac, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(frac);
  auto words = x.bit_words();
  for (std::size_t i = 0; i < x.dimension(); ++i)
    if (coin(rng)) words[i / 64] ^= std::uint64_t{1} << (i % 64);
  return Hypervector::from_bits(x.params(), words, x.dimension());
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("hyperrig_test_" + name);
}

}  // namespace

TEST(ItemMemory, InsertLookupAndPersistence) {
  const auto p = AlgebraParams::make(AlgebraId::MAP_B, 128);
  const ItemMemory empty(p);
  const auto one = empty.insert("a", random_vector(p, 1));
  EXPECT_EQ(empty.size(), 0u);  // the original snapshot is untouched
  EXPECT_EQ(one.size(), 1u);
  EXPECT_EQ(one.lookup("a"), random_vector(p, 1));
  const auto two = one.insert("b", random_vector(p, 2));
  EXPECT_EQ(one.size(), 1u);
  EXPECT_FALSE(one.contains("b"));
  EXPECT_EQ(two.lookup("a"), random_vector(p, 1));
  EXPECT_THROW(one.lookup("zzz"), ConfigError);
}

TEST(ItemMemory, RejectsDuplicatesAndMismatches) {
  const auto p = AlgebraParams::make(AlgebraId::MAP_B, 128);
  const auto mem = ItemMemory(p).insert("a", random_vector(p, 1));
  EXPECT_THROW((void)mem.insert("a", random_vector(p, 2)), ConfigError);
  const auto q = AlgebraParams::make(AlgebraId::MAP_B, 64);
  EXPECT_THROW((void)mem.insert("b", random_vector(q, 2)), DimensionError);
  EXPECT_THROW((void)mem.cleanup(random_vector(q, 2)), DimensionError);
  const auto h = AlgebraParams::make(AlgebraId::HRR, 128);
  EXPECT_THROW((void)mem.insert("c", random_vector(h, 2)), DimensionError);
  EXPECT_THROW((void)ItemMemory(p).cleanup(random_vector(p, 1)), DomainError);
}

TEST(ItemMemory, StoredVectorCleansUpToItself) {
  for (auto id : kAllAlgebras) {
    const auto p = AlgebraParams::make(id, 256);
    const auto mem = filled(p, 20);
    for (const auto& name : mem.names()) {
      const auto r = mem.cleanup(mem.lookup(name));
      EXPECT_EQ(r.name, name) << algebra_name(id);
      EXPECT_EQ(r.score, 1.0) << algebra_name(id);
      EXPECT_EQ(r.vector, mem.lookup(name));
    }
  }
}

TEST(ItemMemory, BscNoisyCleanup) {
  const auto p = AlgebraParams::make(AlgebraId::BSC, 1024);
  const auto mem = filled(p, 100);
  int hits = 0, total = 0;
  for (int trial = 0; trial < 10; ++trial) {
    for (const auto& name : mem.names()) {
      const auto noisy = flip_fraction(mem.lookup(name), 0.10, derive_seed(trial, name_seed(name)));
      hits += mem.cleanup(noisy).name == name ? 1 : 0;
      ++total;
    }
  }
  EXPECT_GE(static_cast<double>(hits) / total, 0.99);
}

TEST(ItemMemory, TiesGoToFirstName) {
  const auto p = AlgebraParams::make(AlgebraId::MAP_B, 64);
  const auto x = random_vector(p, 7);
  const auto mem = ItemMemory(p).insert("zeta", x).insert("alpha", x).insert("mid", x);
  const auto r = mem.cleanup(x);
  EXPECT_EQ(r.name, "alpha");
  EXPECT_EQ(r.margin, 0.0);
  const auto single = ItemMemory(p).insert("only", x).cleanup(x);
  EXPECT_EQ(single.margin, std::numeric_limits<double>::infinity());
}

TEST(ItemMemory, CleanupIsIdempotentAndMarginShrinksWithNoise) {
  const auto p = AlgebraParams::make(AlgebraId::HRR, 512);
  const auto mem = filled(p, 30);
  const auto target = mem.lookup("s1005");
  double prev_margin = std::numeric_limits<double>::infinity();
  for (double noise : {0.0, 0.5, 1.0, 2.0}) {
    auto v = target.reals();
    const auto n = random_vector(p, 9999).reals();
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += noise * n[i];
    const auto r = mem.cleanup(Hypervector::from_reals(p, v));
    ASSERT_EQ(r.name, "s1005");
    EXPECT_LE(r.margin, prev_margin);
    prev_margin = r.margin;
    const auto again = mem.cleanup(r.vector);
    EXPECT_EQ(again.name, r.name);
    EXPECT_EQ(again.vector, r.vector);
  }
}

TEST(ItemMemory, ScoresMatchSimilarity) {
  for (auto id : kAllAlgebras) {
    const auto p = AlgebraParams::make(id, 256);
    const auto mem = filled(p, 10);
    const auto q = bundle(random_vector(p, 3), random_vector(p, 4), BundleMode::Raw);
    for (const auto& r : mem.rank(q))
      EXPECT_NEAR(r.score, similarity(mem.lookup(r.name), q), 1e-12) << algebra_name(id);
  }
}

TEST(ItemMemory, RankOrdersBestFirst) {
  const auto p = AlgebraParams::make(AlgebraId::FHRR, 256);
  const auto mem = filled(p, 25);
  const auto ranked = mem.rank(mem.lookup("s1010"));
  ASSERT_EQ(ranked.size(), 25u);
  EXPECT_EQ(ranked.front().name, "s1010");
  for (std::size_t i = 1; i < ranked.size(); ++i) EXPECT_GE(ranked[i - 1].score, ranked[i].score);
}

TEST(Collisions, ReportsDuplicatesOnly) {
  const auto p = AlgebraParams::make(AlgebraId::MAP_B, 1024);
  EXPECT_TRUE(filled(p, 1000).collision_report(0.5).empty());
  const auto mem = filled(p, 10).insert("dup", random_vector(p, 3));
  const auto report = mem.collision_report(0.5);
  ASSERT_EQ(report.size(), 1u);
  EXPECT_EQ(report[0].first, "dup");
  EXPECT_EQ(report[0].second, "s1003");
  EXPECT_EQ(report[0].score, 1.0);
  EXPECT_TRUE(mem.collision_report(1.0 + 1e-9).empty());
  EXPECT_EQ(collision_report(mem, -1.0).size(), 11u * 10u / 2u);
}

TEST(Codebook, JsonRoundTripIsLossless) {
  for (auto id : kAllAlgebras) {
    const auto p = AlgebraParams::make(id, id == AlgebraId::TPR ? 16 : 256);
    Codebook book{p, {}};
    book.put("a", random_vector(p, 1));
    book.put("b", random_vector(p, 2));
    book.put("raw", bundle(random_vector(p, 1), random_vector(p, 2), BundleMode::Raw));
    if (supports_inverse(id)) book.put("ab", bind(random_vector(p, 1), random_vector(p, 2)));
    const auto back = Codebook::from_json(json::parse(book.to_json().dump()));
    ASSERT_EQ(back.params, p);
    ASSERT_EQ(back.vectors.size(), book.vectors.size());
    for (const auto& [name, v] : book.vectors) {
      const auto& w = back.get(name);
      EXPECT_EQ(w.carrier(), v.carrier()) << algebra_name(id) << " " << name;
      EXPECT_EQ(w.tensor_order(), v.tensor_order());
      EXPECT_EQ(w.role(), v.role());
      if (v.carrier() == Carrier::Reals) {
        double scale = 1.0;
        for (double e : v.reals()) scale = std::max(scale, std::abs(e));
        EXPECT_LE(oracle::max_abs_diff(w.reals(), v.reals()), 1e-12 * scale);
      } else {
        EXPECT_EQ(w, v) << algebra_name(id) << " " << name;
      }
    }
  }
}

TEST(Codebook, FilePersistenceAndErrors) {
  const auto p = AlgebraParams::make(AlgebraId::MBAT, 64);
  Codebook book{p, {}};
  book.put("role", random_vector(p, 5));
  book.put("pair", bind(random_vector(p, 5), random_vector(p, 6)));
  const auto path = temp_file("codebook.json").string();
  book.save(path);
  const auto back = Codebook::load(path);
  EXPECT_EQ(back.get("pair").role(), book.get("pair").role());
  const auto u = unbind(back.get("role"), back.get("pair"));
  EXPECT_LT(oracle::max_abs_diff(u.reals(), random_vector(p, 6).reals()), 1e-9);
  std::filesystem::remove(path);

  EXPECT_THROW(Codebook::load(temp_file("does_not_exist.json").string()), IoError);
  auto j = book.to_json();
  j["format_version"] = 99;
  EXPECT_THROW(Codebook::from_json(j), ConfigError);
  j.erase("format_version");
  EXPECT_THROW(Codebook::from_json(j), ConfigError);
  EXPECT_THROW(book.get("missing"), ConfigError);
  EXPECT_THROW(book.put("x", random_vector(AlgebraParams::make(AlgebraId::MBAT, 16), 1)), DimensionError);
}

TEST(Codebook, MemorySkipsNonBaseShapes) {
  const auto p = AlgebraParams::make(AlgebraId::TPR, 16);
  Codebook book{p, {}};
  book.put("a", random_vector(p, 1));
  book.put("ab", bind(random_vector(p, 1), random_vector(p, 2)));
  const auto mem = book.memory();
  EXPECT_EQ(mem.names(), std::vector<std::string>{"a"});
}
