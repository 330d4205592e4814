// Randomized properties over every algebra. Each case draws its configuration and
// operands from a case seed, printed on failure so the case can be replayed.

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "hyperrig/hyperrig.hpp"
#include "oracles.hpp"

using namespace hyperrig;

namespace {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed), seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::size_t uniform(std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_); }
  long signed_in(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
  std::uint64_t word() { return rng_(); }

  AlgebraId algebra() { return kAllAlgebras[uniform(0, kAllAlgebras.size() - 1)]; }

  /// A valid dimension for the algebra: squares where the algebra needs them, small for TPR.
  std::size_t dimension(AlgebraId id) {
    if (id == AlgebraId::VTB || id == AlgebraId::BSDC_SEG) {
      const auto m = uniform(1, 16);
      return m * m;
    }
    if (id == AlgebraId::TPR) return uniform(1, 40);
    return uniform(1, 300);
  }

  AlgebraParams params(AlgebraId id) { return AlgebraParams::make(id, dimension(id), word()); }
  AlgebraParams params() { return params(algebra()); }

  Hypervector base(const AlgebraParams& p) { return random_vector(p, word()); }

  /// A base vector, a RAW or NATIVE bundle of 2..4 base vectors, a bind, or a braid.
  Hypervector any(const AlgebraParams& p) {
    switch (uniform(0, 4)) {
      case 0: return base(p);
      case 1:
      case 2: {
        std::vector<Hypervector> xs;
        for (std::size_t i = 0, n = uniform(2, 4); i < n; ++i) xs.push_back(base(p));
        try {
          return bundle_all(xs, uniform(0, 1) ? BundleMode::Raw : BundleMode::Native);
        } catch (const DomainError&) {
          return base(p);  // a NATIVE bundle that cancels to zero has no direction
        }
      }
      case 3:
        if (p.algebra != AlgebraId::TPR) return bind(base(p), base(p));
        return base(p);
      default: return braid(base(p), BraidRole{static_cast<unsigned>(uniform(0, 15))}, signed_in(-3, 3));
    }
  }

 private:
  std::mt19937_64 rng_;
  std::uint64_t seed_;
};

template <class Fn>
void for_cases(int n, std::uint64_t salt, Fn fn) {
  for (int c = 0; c < n; ++c) {
    const auto seed = derive_seed(salt, static_cast<std::uint64_t>(c));
    Gen g(seed);
    SCOPED_TRACE("case seed " + std::to_string(seed));
    fn(g);
    if (::testing::Test::HasFatalFailure()) return;
  }
}

bool closed_under_native_bundle(AlgebraId id) {
  switch (id) {
    case AlgebraId::MAP_B:
    case AlgebraId::MAP_C:
    case AlgebraId::FHRR:
    case AlgebraId::HRR:
    case AlgebraId::MBAT:
    case AlgebraId::VTB:
    case AlgebraId::BSC: return true;
    default: return false;  // plain sums leave {-1,+1}; unions exceed the active count
  }
}

}  // namespace

// ---------------------------------------------------------------- core

TEST(Property, BraidIsInvertible) {
  for_cases(600, 1, [](Gen& g) {
    const auto p = g.params();
    const auto x = g.any(p);
    const BraidRole role{static_cast<unsigned>(g.uniform(0, BraidRole::kMaxRoles - 1))};
    const long k = g.signed_in(-6, 6);
    ASSERT_EQ(braid(braid(x, role, k), role, -k), x) << algebra_name(p.algebra);
    ASSERT_EQ(braid(braid(x, role, 1), role, k - 1), braid(x, role, k));
  });
}

TEST(Property, SimilarityIsBoundedAndReflexive) {
  for_cases(600, 2, [](Gen& g) {
    const auto p = g.params();
    const auto x = g.any(p), y = g.any(p);
    if (x.tensor_order() != y.tensor_order()) return;
    double s = 0.0;
    try {
      s = similarity(x, y);
    } catch (const DomainError&) {
      return;  // a zero operand
    }
    ASSERT_GE(s, -1.0);
    ASSERT_LE(s, 1.0);
    ASSERT_EQ(similarity(x, x), 1.0) << algebra_name(p.algebra);
    if (s == 1.0 && x.carrier() != Carrier::Reals && x.carrier() != Carrier::Complex) ASSERT_EQ(x, y);
    if (s == 1.0 && x.carrier() == Carrier::Reals && y.carrier() == Carrier::Reals)
      ASSERT_GT(oracle::cosine(x.reals(), y.reals()), 1.0 - 1e-9);
  });
}

TEST(Property, OperationsStayInTheBaseDomain) {
  for_cases(600, 3, [](Gen& g) {
    const auto p = g.params();
    const auto x = g.base(p), y = g.base(p);
    EXPECT_TRUE(x.in_base_domain()) << algebra_name(p.algebra);
    EXPECT_TRUE(bind(x, y).in_base_domain()) << algebra_name(p.algebra);
    EXPECT_TRUE(braid(x, BraidRole::left(), g.signed_in(-4, 4)).in_base_domain()) << algebra_name(p.algebra);
    if (supports_inverse(p.algebra)) EXPECT_TRUE(inverse(x).in_base_domain()) << algebra_name(p.algebra);
    if (closed_under_native_bundle(p.algebra)) {
      try {
        EXPECT_TRUE(bundle(x, y, BundleMode::Native).in_base_domain()) << algebra_name(p.algebra);
      } catch (const DomainError&) {
        // x + y = 0 has no normalized form in the real-valued algebras
      }
    }
  });
}

TEST(Property, GenerationIsDeterministic) {
  for_cases(300, 4, [](Gen& g) {
    const auto p = g.params();
    const auto s = g.word(), t = g.word();
    const auto a = random_vector(p, s), b = random_vector(p, t);
    ASSERT_EQ(a, random_vector(p, s));
    if (p.algebra != AlgebraId::TPR) ASSERT_EQ(bind(a, b), bind(random_vector(p, s), random_vector(p, t)));
    ASSERT_EQ(bundle(a, b, BundleMode::Raw), bundle(random_vector(p, s), random_vector(p, t), BundleMode::Raw));
  });
}

TEST(Property, ParallelGenerationMatchesSequential) {
  const auto p = AlgebraParams::make(AlgebraId::MBAT, 128);
  std::vector<std::vector<double>> seq;
  for (std::size_t i = 0; i < 64; ++i) seq.push_back(bind(random_vector(p, i), random_vector(p, i + 1000)).reals());
  const auto par = parallel_map(
      64, [&](std::size_t i) { return bind(random_vector(p, i), random_vector(p, i + 1000)).reals(); }, 4);
  EXPECT_EQ(par, seq);
}

TEST(Property, MetricAxiomsOnTenThousandTriples) {
  for (auto id : kAllAlgebras) {
    const auto rs = check_metric_axioms(AlgebraParams::make(id, id == AlgebraId::TPR ? 64 : 256), {10000, 0});
    for (const auto& r : rs) EXPECT_EQ(r.verdict, Verdict::Holds) << algebra_name(id) << " " << r.law_id;
  }
}

// ---------------------------------------------------------------- algebras

TEST(Property, ExactInverseRecoversOperand) {
  for_cases(600, 5, [](Gen& g) {
    AlgebraId id;
    do id = g.algebra();
    while (id == AlgebraId::BSDC_CDT || id == AlgebraId::VTB || id == AlgebraId::HRR || id == AlgebraId::MAP_C);
    const auto p = g.params(id);
    const auto x = g.base(p), y = g.base(p);
    ASSERT_GE(similarity(unbind(x, bind(x, y)), y), 1.0 - 1e-6) << algebra_name(id);
  });
}

TEST(Property, VtbUnbindAtLargeDimension) {
  const auto p = AlgebraParams::make(AlgebraId::VTB, 1024);
  for (int t = 0; t < 1000; ++t) {
    const auto x = random_vector(p, 2 * t), y = random_vector(p, 2 * t + 1);
    ASSERT_GE(similarity(unbind(x, bind(x, y)), y), 0.9);
  }
}

TEST(Property, BindingAndBundlingStatistics) {
  for (auto id : kAllAlgebras) {
    const auto p = AlgebraParams::make(id, 1024);
    const auto rs = check_desiderata(p, {1000, 0}, {"bind_dissimilarity", "bundle_similarity"});
    for (const auto& r : rs) {
      if (r.law_id == "bind_dissimilarity" && (id == AlgebraId::BSDC_CDT || id == AlgebraId::TPR)) continue;
      EXPECT_EQ(r.verdict, Verdict::Holds) << algebra_name(id) << " " << r.law_id << " " << r.statistic;
    }
  }
}

TEST(Property, CommutativityClassification) {
  for_cases(300, 6, [](Gen& g) {
    const auto id = g.algebra();
    const auto p = g.params(id);
    const auto x = g.base(p), y = g.base(p);
    switch (id) {
      case AlgebraId::MAP_I:
      case AlgebraId::MAP_B:
      case AlgebraId::MAP_C:
      case AlgebraId::FHRR:
      case AlgebraId::HRR:
      case AlgebraId::BSC:
      case AlgebraId::BSDC_SEG: ASSERT_EQ(bind(x, y), bind(y, x)) << algebra_name(id); break;
      default: break;
    }
  });
  for (auto id : {AlgebraId::VTB, AlgebraId::MBAT, AlgebraId::BSDC_S}) {
    const auto p = AlgebraParams::make(id, 1024);
    double mean = 0.0;
    for (int t = 0; t < 1000; ++t) {
      const auto x = random_vector(p, 2 * t), y = random_vector(p, 2 * t + 1);
      mean += std::abs(similarity(bind(x, y), bind(y, x)) - chance_similarity(p)) / 1000.0;
    }
    EXPECT_LT(mean, 0.1) << algebra_name(id);
  }
  const auto t = AlgebraParams::make(AlgebraId::TPR, 16);
  EXPECT_NE(bind(random_vector(t, 1), random_vector(t, 2)), bind(random_vector(t, 2), random_vector(t, 1)));
}

TEST(Property, LinearBindersDistributeOverRawBundles) {
  const AlgebraId linear[] = {AlgebraId::MAP_I, AlgebraId::HRR, AlgebraId::FHRR,
                              AlgebraId::MBAT,  AlgebraId::VTB, AlgebraId::TPR};
  for_cases(300, 7, [&](Gen& g) {
    const auto id = linear[g.uniform(0, 5)];
    const auto p = g.params(id);
    const auto x = g.base(p), y = g.base(p), z = g.base(p);
    // FHRR is linear over complex sums, so the bundle is kept RAW on both sides.
    const auto lhs = bind(x, bundle(y, z, BundleMode::Raw));
    const auto rhs = bundle(bind(x, y), bind(x, z), BundleMode::Raw);
    ASSERT_TRUE(approx_equal(lhs, rhs, 1e-6)) << algebra_name(id) << " d=" << p.dimension;
    const auto lhs_r = bind(bundle(y, z, BundleMode::Raw), x);
    const auto rhs_r = bundle(bind(y, x), bind(z, x), BundleMode::Raw);
    ASSERT_TRUE(approx_equal(lhs_r, rhs_r, 1e-6)) << algebra_name(id) << " d=" << p.dimension;
  });
}

TEST(Property, BsdcShiftIsEquivariant) {
  // Shifting every key index by s moves the bound result by |key| * s.
  for_cases(300, 8, [](Gen& g) {
    const auto p = g.params(AlgebraId::BSDC_S);
    const auto x = g.base(p), key = g.base(p);
    const auto d = p.dimension;
    const auto s = g.uniform(0, d - 1);
    const auto moved_key = Hypervector::from_sparse(p, shifted(key.active(), s, d), d);
    const auto expect = shifted(bind(key, x).active(), (key.active().size() * s) % d, d);
    ASSERT_EQ(bind(moved_key, x).active(), expect);
  });
}

// ---------------------------------------------------------------- memory

TEST(Property, CleanupIsIdempotent) {
  for_cases(150, 9, [](Gen& g) {
    const auto p = g.params();
    ItemMemory mem(p);
    for (std::size_t i = 0, n = g.uniform(1, 12); i < n; ++i) mem = mem.insert("s" + std::to_string(i), g.base(p));
    const auto q = g.any(p);
    if (q.tensor_order() != 1 || is_zero(q)) return;
    const auto first = mem.cleanup(q);
    ASSERT_EQ(mem.cleanup(first.vector).name, first.name) << algebra_name(p.algebra);
  });
}

TEST(Property, MarginNeverGrowsWithMemory) {
  // The first winner's lead over its best rival can only shrink as entries arrive; the
  // reported margin follows it while that entry keeps winning.
  for_cases(150, 10, [](Gen& g) {
    const auto p = g.params();
    const auto q = g.base(p);
    ItemMemory mem(p);
    mem = mem.insert("a", g.base(p)).insert("b", g.base(p));
    const auto first = mem.cleanup(q);
    auto lead = [&](const ItemMemory& m) {
      double own = 0.0, rival = -2.0;
      for (const auto& r : m.rank(q)) {
        if (r.name == first.name) own = r.score;
        else rival = std::max(rival, r.score);
      }
      return own - rival;
    };
    double prev = lead(mem);
    ASSERT_EQ(prev, first.margin);
    for (int i = 0; i < 8; ++i) {
      mem = mem.insert("n" + std::to_string(i), g.base(p));
      const double next = lead(mem);
      ASSERT_LE(next, prev) << algebra_name(p.algebra);
      const auto now = mem.cleanup(q);
      if (now.name == first.name) ASSERT_EQ(now.margin, next);
      ASSERT_GE(now.margin, 0.0);
      prev = next;
    }
  });
}

// ---------------------------------------------------------------- codec

TEST(Property, FunctionCodeCurrying) {
  const AlgebraId exact[] = {AlgebraId::MAP_I, AlgebraId::MAP_B, AlgebraId::FHRR, AlgebraId::MBAT,
                             AlgebraId::BSC,   AlgebraId::BSDC_S, AlgebraId::BSDC_SEG};
  for (auto id : exact) {
    const auto p = AlgebraParams::make(id, 1024);
    Gen g(derive_seed(11, static_cast<std::uint64_t>(id)));
    auto shift_of = [&](const Hypervector& x) {
      std::uint64_t s = 0;
      for (auto i : x.active()) s = (s + i) % p.dimension;
      return s;
    };
    std::size_t shift_ties = 0, pairs = 0;
    for (int t = 0; t < 1000; ++t) {
      const auto n = g.uniform(2, 16);
      std::vector<FunctionRow> rows;
      std::vector<Hypervector> ys;
      for (std::size_t i = 0; i < n; ++i) {
        ys.push_back(g.base(p));
        rows.push_back({"x" + std::to_string(i), g.base(p), "y" + std::to_string(i), ys.back()});
      }
      pairs += n * (n - 1);
      const auto f = encode_function(rows);
      for (std::size_t i = 0; i < n; ++i) {
        const auto out = apply_function(f, rows[i].x);
        const double own = similarity(out, ys[i]);
        for (std::size_t j = 0; j < n; ++j) {
          if (j == i) continue;
          const double other = similarity(out, ys[j]);
          if (id == AlgebraId::BSDC_S && shift_of(rows[i].x) == shift_of(rows[j].x)) {
            // only d distinct shifts exist: keys with equal index sums unbind each other's rows
            ASSERT_EQ(own, other);
            ++shift_ties;
            continue;
          }
          ASSERT_GT(own, other) << algebra_name(id) << " trial " << t << " n=" << n;
        }
      }
    }
    if (id == AlgebraId::BSDC_S) {
      // key pairs collide with probability 1/d; ties come in symmetric pairs, doubling the variance
      const double rate = static_cast<double>(shift_ties) / static_cast<double>(pairs);
      EXPECT_NEAR(rate, 1.0 / 1024.0, 4.0 * std::sqrt(2.0 / 1024.0 / static_cast<double>(pairs)));
    } else {
      EXPECT_EQ(shift_ties, 0u);
    }
  }
}

TEST(Property, IntegerHomomorphism) {
  for_cases(200, 12, [](Gen& g) {
    const auto n = g.uniform(0, 6), m = g.uniform(0, 6);
    const auto pf = AlgebraParams::make(AlgebraId::FHRR, g.uniform(1, 512), g.word());
    const auto xf = g.base(pf);
    ASSERT_EQ(bind(encode_integer(xf, n), encode_integer(xf, m)), encode_integer(xf, n + m));
    const auto ph = AlgebraParams::make(AlgebraId::HRR, g.uniform(1, 512), g.word());
    const auto xh = g.base(ph);
    ASSERT_TRUE(approx_equal(bind(encode_integer(xh, n), encode_integer(xh, m)), encode_integer(xh, n + m), 1e-6));
  });
}

TEST(Property, BraidedListShiftEquivariance) {
  for_cases(200, 13, [](Gen& g) {
    const auto id = g.uniform(0, 1) ? AlgebraId::MAP_B : AlgebraId::BSC;  // integer sums keep this exact
    const auto p = g.params(id);
    const BraidRole role{static_cast<unsigned>(g.uniform(0, 3))};
    std::vector<Hypervector> xs;
    for (std::size_t i = 0, n = g.uniform(2, 7); i < n; ++i) xs.push_back(g.base(p));
    const std::vector<Hypervector> tail(xs.begin() + 1, xs.end());
    const auto list = encode_list(xs, Construction::Braided, role);
    const auto rest = encode_list(tail, Construction::Braided, role);
    // L(xs) = x_1 + rho L(tail): every position of the tail moves up by one
    ASSERT_EQ(list.vector, bundle(xs[0], braid(rest.vector, role, 1), BundleMode::Raw));
    for (std::size_t k = 1; k <= tail.size(); ++k) {
      ASSERT_EQ(decode_list_item(list, k + 1),
                bundle(braid(xs[0], role, -static_cast<long>(k)), decode_list_item(rest, k), BundleMode::Raw));
      ASSERT_EQ(decode_list_item(list, k), braid(decode_list_item(list, k + 1), role, 1));
    }
  });
}
