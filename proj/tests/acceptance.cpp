// Acceptance run: one PASS/FAIL line per criterion; exit status 1 if any fails.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "hyperrig/hyperrig.hpp"
#include "oracles.hpp"

using namespace hyperrig;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

const LawReport& find(const std::vector<LawReport>& rs, const std::string& id) {
  for (const auto& r : rs)
    if (r.law_id == id) return r;
  throw std::runtime_error("missing law " + id);
}

std::size_t shaped(AlgebraId id, std::size_t d) {
  if (id != AlgebraId::VTB) return d;
  const auto m = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(d))));
  return m * m;
}

// 1. profile matrix at d = 1024, 1000 trials, under 5 minutes
Outcome profile_matrix() {
  Outcome o;
  const auto t0 = Clock::now();
  int rows = 0;
  for (auto id : kAllAlgebras) {
    const auto pc = check_profile(AlgebraParams::make(id, 1024), {1000, 0});
    if (pc.matches()) ++rows;
    else o.require(false, fmt::format("{} observed {}", algebra_name(id), profile_to_json(pc.observed).dump()));
  }
  const double secs = seconds_since(t0);
  o.require(secs < 300.0, fmt::format("took {:.1f} s", secs));
  o.detail = fmt::format("{}/12 rows match, {:.1f} s (limit 300 s)", rows, secs) + (o.detail.empty() ? "" : ": " + o.detail);
  return o;
}

// 2. division-rig laws at d in {8, 64}; NATIVE distributivity fails for MAP-B and BSC
Outcome rig_suite() {
  Outcome o;
  const char* exact[] = {"left_distributivity", "right_distributivity", "additive_identity", "multiplicative_identity",
                         "absorption",          "bundle_commutativity", "bundle_associativity"};
  int held = 0, total = 0;
  for (auto id : {AlgebraId::MAP_I, AlgebraId::HRR, AlgebraId::FHRR, AlgebraId::MBAT, AlgebraId::VTB, AlgebraId::TPR}) {
    for (std::size_t d : {8u, 64u}) {
      const auto rs = check_rig_laws(AlgebraParams::make(id, shaped(id, d)), {1000, 0});
      for (const char* law : exact) {
        const auto& r = find(rs, law);
        ++total;
        const bool ok = r.verdict == Verdict::Holds && r.mode == LawMode::Exact && r.statistic <= kExactTolerance;
        held += ok ? 1 : 0;
        o.require(ok, fmt::format("{} d={} {} {}", algebra_name(id), shaped(id, d), law, verdict_name(r.verdict)));
      }
    }
  }
  for (auto id : {AlgebraId::MAP_B, AlgebraId::BSC}) {
    for (std::size_t d : {8u, 64u}) {
      const auto rs = check_rig_laws(AlgebraParams::make(id, d), {1000, 0});
      for (const char* law : {"left_distributivity_native", "right_distributivity_native"}) {
        const auto& r = find(rs, law);
        ++total;
        const bool ok = r.verdict == Verdict::Fails && r.evidence.contains("counterexample");
        held += ok ? 1 : 0;
        o.require(ok, fmt::format("{} d={} {} {}", algebra_name(id), d, law, verdict_name(r.verdict)));
      }
    }
  }
  o.detail = fmt::format("{}/{} verdicts as required (tolerance {:g})", held, total, kExactTolerance) +
             (o.detail.empty() ? "" : ": " + o.detail);
  return o;
}

// 3. triangle inequality on 10,000 triples per algebra at d = 256
Outcome metric_suite() {
  Outcome o;
  long violations = 0;
  for (auto id : kAllAlgebras) {
    const auto rs = check_metric_axioms(AlgebraParams::make(id, 256), {10000, 0});
    const auto& r = find(rs, "triangle_inequality");
    const long v = r.evidence.value("violations", -1L);
    violations += std::max(v, 0L);
    o.require(v == 0 && r.evidence.value("triples", 0L) == 10000,
              fmt::format("{} violations {}", algebra_name(id), v));
  }
  o.detail = fmt::format("{} violations over 12 x 10000 triples (slack {:g})", violations, kTriangleSlack) +
             (o.detail.empty() ? "" : ": " + o.detail);
  return o;
}

// 4. unbinding fidelity
Outcome unbinding() {
  Outcome o;
  double worst = 1.0;
  for (auto id : {AlgebraId::MAP_I, AlgebraId::MAP_B, AlgebraId::FHRR, AlgebraId::MBAT, AlgebraId::BSC,
                  AlgebraId::BSDC_S, AlgebraId::BSDC_SEG, AlgebraId::TPR}) {
    const auto p = AlgebraParams::make(id, id == AlgebraId::TPR ? 64 : 1024);
    const auto sims = parallel_map(1000, [&](std::size_t t) {
      const auto x = random_vector(p, 2 * t), y = random_vector(p, 2 * t + 1);
      return similarity(unbind(x, bind(x, y)), y);
    });
    const double w = *std::min_element(sims.begin(), sims.end());
    worst = std::min(worst, w);
    o.require(w >= 1.0 - 1e-6, fmt::format("{} worst {:.9f}", algebra_name(id), w));
  }

  const auto hrr = AlgebraParams::make(AlgebraId::HRR, 1024);
  std::vector<std::pair<std::string, Hypervector>> entries;
  for (std::size_t i = 0; i < 100; ++i) entries.emplace_back(fmt::format("c{:03}", i), random_vector(hrr, i));
  const ItemMemory mem(hrr, entries);
  const auto hits = parallel_map(1000, [&](std::size_t t) {
    const auto x = random_vector(hrr, 100000 + t);
    const auto& y = entries[t % 100];
    return mem.cleanup(unbind(x, bind(x, y.second))).name == y.first ? 1 : 0;
  });
  const double hrr_acc = static_cast<double>(std::count(hits.begin(), hits.end(), 1)) / 1000.0;
  o.require(hrr_acc >= 0.99, fmt::format("hrr cleanup accuracy {:.3f}", hrr_acc));

  const auto vtb = AlgebraParams::make(AlgebraId::VTB, 1024);
  const auto vs = parallel_map(1000, [&](std::size_t t) {
    const auto x = random_vector(vtb, 2 * t), y = random_vector(vtb, 2 * t + 1);
    return similarity(unbind(x, bind(x, y)), y);
  });
  double vtb_mean = 0.0;
  for (double s : vs) vtb_mean += s / 1000.0;
  o.require(vtb_mean >= 0.9, fmt::format("vtb mean {:.4f}", vtb_mean));

  o.detail = fmt::format("exact worst {:.9f} (>= 1-1e-6), hrr cleanup {:.3f} (>= 0.99), vtb mean {:.4f} (>= 0.9)", worst,
                         hrr_acc, vtb_mean) +
             (o.detail.empty() ? "" : ": " + o.detail);
  return o;
}

// 5. composition of 8-symbol tables and cleaned vs uncleaned crosstalk
Outcome composition() {
  Outcome o;
  const auto p = AlgebraParams::make(AlgebraId::FHRR, 1024);
  constexpr std::size_t n = 8;
  // f: A -> B and g: B -> C permute disjoint symbol sets
  const auto hits = parallel_map(1000, [&](std::size_t t) {
    const auto seed = derive_seed(0xC0DE, t);
    std::mt19937_64 rng(seed);
    std::vector<Hypervector> a, b, c;
    for (std::size_t i = 0; i < n; ++i) {
      a.push_back(random_vector(p, derive_seed(seed, i)));
      b.push_back(random_vector(p, derive_seed(seed, n + i)));
      c.push_back(random_vector(p, derive_seed(seed, 2 * n + i)));
    }
    std::vector<std::size_t> f(n), g(n);
    for (std::size_t i = 0; i < n; ++i) f[i] = g[i] = i;
    std::shuffle(f.begin(), f.end(), rng);
    std::shuffle(g.begin(), g.end(), rng);
    std::vector<FunctionRow> fr, gr;
    for (std::size_t i = 0; i < n; ++i) {
      fr.push_back({fmt::format("a{}", i), a[i], fmt::format("b{}", f[i]), b[f[i]]});
      gr.push_back({fmt::format("b{}", i), b[i], fmt::format("c{}", g[i]), c[g[i]]});
    }
    const auto F = encode_function(fr), G = encode_function(gr);
    const std::size_t x = t % n;
    const auto out = compose_apply(F, G, a[x], true);
    return G.range_memory.cleanup(out).name == fmt::format("c{}", g[f[x]]) ? 1 : 0;  // direct table composition
  });
  const double acc = static_cast<double>(std::count(hits.begin(), hits.end(), 1)) / 1000.0;
  o.require(acc >= 0.99, fmt::format("composed accuracy {:.3f}", acc));

  const auto rs = composition_crosstalk(p, kDefaultTableSizes, BenchOptions{1000, 100, 0});
  std::string sizes;
  for (long s : kDefaultTableSizes) {
    double clean = -1, raw = -1;
    for (const auto& r : rs) {
      if (r.parameter != s) continue;
      if (r.experiment == "crosstalk_clean") clean = r.accuracy;
      if (r.experiment == "crosstalk_raw") raw = r.accuracy;
    }
    sizes += fmt::format(" {}:{:.3f}/{:.3f}", s, clean, raw);
    o.require(clean >= raw && clean >= 0, fmt::format("table {} clean {:.3f} < raw {:.3f}", s, clean, raw));
  }
  o.detail = fmt::format("composed accuracy {:.3f} (>= 0.99); clean/raw by table size{}", acc, sizes) +
             (o.detail.empty() ? "" : ": " + o.detail);
  return o;
}

// 6. guarded middle paths collide in commutative algebras; braided MAP-B and guarded VTB decode
Outcome trees() {
  Outcome o;
  const Path lr{Branch::L, Branch::R}, rl{Branch::R, Branch::L};
  for (auto id : {AlgebraId::MAP_I, AlgebraId::MAP_B, AlgebraId::FHRR, AlgebraId::HRR, AlgebraId::BSC}) {
    const auto p = AlgebraParams::make(id, 1024);
    o.require(approx_equal(path_product(p, lr), path_product(p, rl), 1e-9),
              fmt::format("{} middle paths differ", algebra_name(id)));
  }
  const BenchOptions bo{1000, 100, 0};
  double braided = 0, guarded = 0;
  for (const auto& r : tree_retrieval(AlgebraParams::make(AlgebraId::MAP_B, 1024), {2}, bo))
    if (r.experiment == "tree_braided") braided = r.accuracy;
  for (const auto& r : tree_retrieval(AlgebraParams::make(AlgebraId::VTB, 1024), {2}, bo))
    if (r.experiment == "tree_guarded") guarded = r.accuracy;
  o.require(braided >= 0.95, fmt::format("braided map_b {:.3f}", braided));
  o.require(guarded >= 0.95, fmt::format("guarded vtb {:.3f}", guarded));
  o.detail = fmt::format("LR == RL (1e-9) in 5 commutative algebras; braided map_b {:.3f}, guarded vtb {:.3f} (>= 0.95)",
                         braided, guarded) +
             (o.detail.empty() ? "" : ": " + o.detail);
  return o;
}

// 7. integer and fractional power encodings
Outcome powers() {
  Outcome o;
  const auto p = AlgebraParams::make(AlgebraId::FHRR, 1024);
  const auto x = random_vector(p, 77);
  std::vector<Hypervector> phi;
  for (std::uint64_t n = 0; n <= 128; ++n) phi.push_back(encode_integer(x, n));
  int exact = 0;
  for (std::size_t n = 0; n <= 64; ++n)
    for (std::size_t m = 0; m <= 64; ++m) exact += bind(phi[n], phi[m]) == phi[n + m] ? 1 : 0;
  o.require(exact == 65 * 65, fmt::format("{} of {} integer pairs exact", exact, 65 * 65));

  std::mt19937_64 rng(derive_seed(kDefaultMasterSeed, 7));
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const double a = u(rng), b = u(rng);
    const auto lhs = bind(fractional_power(x, a), fractional_power(x, b));
    const auto rhs = fractional_power(x, a + b);
    for (std::size_t i = 0; i < p.dimension; ++i)
      worst = std::max(worst, oracle::phase_gap(phase_to_radians(lhs.phases()[i]), phase_to_radians(rhs.phases()[i])));
  }
  o.require(worst <= 1e-6, fmt::format("fractional worst phase error {:.3g}", worst));
  o.detail = fmt::format("{}/{} integer pairs exact; fractional worst phase error {:.3g} rad (<= 1e-6)", exact, 65 * 65,
                         worst) +
             (o.detail.empty() ? "" : ": " + o.detail);
  return o;
}

// 8. 10,000 MAP-B vectors at d = 1024
Outcome orthogonality() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto p = AlgebraParams::make(AlgebraId::MAP_B, 1024);
  constexpr std::size_t n = 10000, d = 1024, w = d / 64;
  const auto packed = parallel_map(n, [&](std::size_t i) {
    const auto v = random_vector(p, i);
    std::vector<std::uint64_t> bits(w, 0);
    for (std::size_t k = 0; k < d; ++k)
      if (v.reals()[k] < 0) bits[k / 64] |= std::uint64_t{1} << (k % 64);
    return bits;
  });
  // the packed cosine 1 - 2 hamming / d must agree with the library similarity
  for (std::size_t i = 0; i + 1 < 50; ++i) {
    std::size_t h = 0;
    for (std::size_t k = 0; k < w; ++k) h += std::popcount(packed[i][k] ^ packed[i + 1][k]);
    const double c = 1.0 - 2.0 * static_cast<double>(h) / d;
    o.require(std::abs(c - similarity(random_vector(p, i), random_vector(p, i + 1))) < 1e-12, "packed cosine mismatch");
  }
  struct Acc {
    double max_abs = 0, sum = 0, sum_sq = 0;
    std::size_t pairs = 0;
  };
  const auto rows = parallel_map(n, [&](std::size_t i) {
    Acc a;
    for (std::size_t j = i + 1; j < n; ++j) {
      std::size_t h = 0;
      for (std::size_t k = 0; k < w; ++k) h += std::popcount(packed[i][k] ^ packed[j][k]);
      const double c = 1.0 - 2.0 * static_cast<double>(h) / d;
      a.max_abs = std::max(a.max_abs, std::abs(c));
      a.sum += c;
      a.sum_sq += c * c;
      ++a.pairs;
    }
    return a;
  });
  Acc all;
  for (const auto& a : rows) {
    all.max_abs = std::max(all.max_abs, a.max_abs);
    all.sum += a.sum;
    all.sum_sq += a.sum_sq;
    all.pairs += a.pairs;
  }
  const double mean = all.sum / static_cast<double>(all.pairs);
  const double sd = std::sqrt(all.sum_sq / static_cast<double>(all.pairs) - mean * mean);
  const double target = 1.0 / std::sqrt(static_cast<double>(d));
  const double secs = seconds_since(t0);
  o.require(all.max_abs < 0.2, fmt::format("max |cos| {:.4f}", all.max_abs));
  o.require(std::abs(sd - target) <= 0.2 * target, fmt::format("std {:.5f}", sd));
  o.require(secs < 120.0, fmt::format("took {:.1f} s", secs));
  o.detail = fmt::format("{} pairs, max |cos| {:.4f} (< 0.2), std {:.5f} vs {:.5f} (within 20%), {:.1f} s (limit 120 s)",
                         all.pairs, all.max_abs, sd, target, secs) +
             (o.detail.empty() ? "" : ": " + o.detail);
  return o;
}

// 9. two complete laws + bench runs with one master seed are byte-identical
std::pair<std::string, std::string> full_run() {
  std::string laws;
  std::ostringstream csv;
  std::vector<BenchRecord> records;
  const BenchOptions bo{100, 100, 0};
  for (auto id : kAllAlgebras) {
    const auto p = AlgebraParams::make(id, id == AlgebraId::TPR ? 64 : 256);
    laws += reports_to_json(check_all_laws(p, {100, 0})).dump() + "\n";
    for (auto& r : bundle_capacity(p, kDefaultBundleSizes, bo)) records.push_back(std::move(r));
    if (supports_inverse(id))  // function tables need unbinding
      for (auto& r : composition_crosstalk(p, kDefaultTableSizes, bo)) records.push_back(std::move(r));
    for (auto& r : tree_retrieval(p, kDefaultTreeDepths, bo)) records.push_back(std::move(r));
  }
  write_csv(csv, records);
  return {laws, csv.str()};
}

Outcome determinism() {
  Outcome o;
  const auto a = full_run();
  const auto b = full_run();
  o.require(a.first == b.first, "laws JSON differs");
  o.require(a.second == b.second, "bench CSV differs");
  o.detail = fmt::format("laws JSON {} bytes, bench CSV {} bytes, identical across two runs", a.first.size(),
                         a.second.size()) +
             (o.detail.empty() ? "" : ": " + o.detail);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"profile matrix", profile_matrix}, {"division rig", rig_suite},       {"metric axioms", metric_suite},
      {"unbinding fidelity", unbinding},  {"function composition", composition}, {"tree disambiguation", trees},
      {"power encodings", powers},        {"near orthogonality", orthogonality}, {"determinism", determinism}};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += o.pass ? 0 : 1;
    std::cout << fmt::format("{} {} {}: {}", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail) << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
