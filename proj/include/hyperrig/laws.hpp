#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hyperrig/codebook.hpp"
#include "hyperrig/core.hpp"
#include "hyperrig/parallel.hpp"

namespace hyperrig {

// Empirical audit of the algebraic claims: rig axioms for bundling and binding, metric
// axioms for the derived distance, and the behavioural desiderata. Every trial draws
// its operands from seeds derived from (master seed, law id, trial, slot), so reports
// are reproducible and independent of thread scheduling.

inline constexpr int kReportFormatVersion = 1;
inline constexpr double kExactTolerance = 1e-6;
inline constexpr double kTriangleSlack = 1e-9;
inline constexpr std::size_t kMinTrials = 100;

enum class LawMode { Exact, Statistical };
enum class Verdict { Holds, HoldsApprox, Fails, NotApplicable };

inline const char* mode_name(LawMode m) { return m == LawMode::Exact ? "EXACT" : "STATISTICAL"; }

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "HOLDS";
    case Verdict::HoldsApprox: return "HOLDS_APPROX";
    case Verdict::Fails: return "FAILS";
    case Verdict::NotApplicable: return "NOT_APPLICABLE";
  }
  return "?";
}

struct LawReport {
  AlgebraParams algebra;
  std::string suite;
  std::string law_id;
  LawMode mode = LawMode::Exact;
  std::size_t trials = 0;
  double threshold = 0.0;  // tolerance (EXACT) or decision threshold (STATISTICAL)
  double statistic = 0.0;
  Verdict verdict = Verdict::NotApplicable;
  json evidence = json::object();
  bool extension = false;  // the operation is provided beyond the algebra's own definition
  std::string note;
};

struct LawOptions {
  std::size_t trials = 1000;
  std::size_t threads = 0;  // 0: default_threads()
};

inline json report_to_json(const LawReport& r) {
  return json{{"format_version", kReportFormatVersion},
              {"algebra", params_to_json(r.algebra)},
              {"suite", r.suite},
              {"law_id", r.law_id},
              {"mode", mode_name(r.mode)},
              {"trials", r.trials},
              {"threshold", r.threshold},
              {"statistic", r.statistic},
              {"verdict", verdict_name(r.verdict)},
              {"evidence", r.evidence},
              {"extension", r.extension},
              {"note", r.note}};
}

inline json reports_to_json(const std::vector<LawReport>& reports) {
  json a = json::array();
  for (const auto& r : reports) a.push_back(report_to_json(r));
  return a;
}

// ------------------------------------------------------------------ helpers

inline std::uint64_t trial_seed(const AlgebraParams& p, std::string_view law, std::size_t trial, std::size_t slot) {
  return derive_seed(p.master_seed, static_cast<std::uint64_t>(SeedStream::Trial), name_seed(law), trial, slot);
}

/// Flat real view used for comparisons: bits as bipolar values, phasors and complex
/// values as interleaved (re, im), sparse sets as 0/1 indicators.
inline std::vector<double> flat_view(const Hypervector& x) {
  switch (x.carrier()) {
    case Carrier::Reals: return x.reals();
    case Carrier::Bits: return bipolar_view(x);
    case Carrier::Phases:
    case Carrier::Complex: {
      auto c = complex_view(x);
      std::vector<double> out;
      out.reserve(2 * c.size());
      for (auto v : c) {
        out.push_back(v.real());
        out.push_back(v.imag());
      }
      return out;
    }
    case Carrier::Sparse: {
      std::vector<double> out(x.dimension(), 0.0);
      for (auto i : x.active()) out[i] = 1.0;
      return out;
    }
  }
  return {};
}

/// Largest elementwise difference relative to max(1, largest magnitude); infinite when
/// the shapes differ.
inline double deviation(const Hypervector& a, const Hypervector& b) {
  if (!(a.params() == b.params()) || a.dimension() != b.dimension() || a.tensor_order() != b.tensor_order())
    return std::numeric_limits<double>::infinity();
  if (a.carrier() == Carrier::Sparse || b.carrier() == Carrier::Sparse) return a.payload() == b.payload() ? 0.0 : 1.0;
  const auto u = flat_view(a), v = flat_view(b);
  double diff = 0.0, scale = 1.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    diff = std::max(diff, std::abs(u[i] - v[i]));
    scale = std::max({scale, std::abs(u[i]), std::abs(v[i])});
  }
  return diff / scale;
}

inline json vector_excerpt(const Hypervector& x) {
  if (x.carrier() == Carrier::Sparse) {
    const auto& a = x.active();
    return json(std::vector<std::uint32_t>(a.begin(), a.begin() + static_cast<long>(std::min<std::size_t>(a.size(), 16))));
  }
  auto f = flat_view(x);
  f.resize(std::min<std::size_t>(f.size(), 16));
  return f;
}

/// Concrete counterexample: the worst coordinate plus a prefix of both sides.
inline json counterexample(const Hypervector& lhs, const Hypervector& rhs) {
  json j{{"lhs_prefix", vector_excerpt(lhs)}, {"rhs_prefix", vector_excerpt(rhs)}};
  if (lhs.dimension() != rhs.dimension() || lhs.tensor_order() != rhs.tensor_order()) {
    j["shape"] = {{"lhs", {lhs.dimension(), lhs.tensor_order()}}, {"rhs", {rhs.dimension(), rhs.tensor_order()}}};
    return j;
  }
  const auto u = flat_view(lhs), v = flat_view(rhs);
  std::size_t worst = 0;
  for (std::size_t i = 0; i < u.size(); ++i)
    if (std::abs(u[i] - v[i]) > std::abs(u[worst] - v[worst])) worst = i;
  j["index"] = worst;
  j["lhs"] = u[worst];
  j["rhs"] = v[worst];
  return j;
}

namespace detail {

/// Outcome of one trial of an equational law.
struct Check {
  double dev = 0.0;
  double sim = std::numeric_limits<double>::quiet_NaN();  // similarity of the two sides, if requested
  std::vector<std::uint64_t> seeds;
  json values;  // filled only when dev exceeds the tolerance
};

inline json seeds_json(const std::vector<std::uint64_t>& s) { return json(s); }

/// Builds the seed list and operands for one trial.
struct Draw {
  const AlgebraParams& p;
  std::string_view law;
  std::size_t trial;
  std::vector<std::uint64_t> seeds;
  Hypervector next() {
    const auto s = trial_seed(p, law, trial, seeds.size());
    seeds.push_back(s);
    return random_vector(p, s);
  }
};

inline Check compare(Draw& draw, const Hypervector& lhs, const Hypervector& rhs, bool want_sim = false) {
  Check c;
  c.dev = deviation(lhs, rhs);
  c.seeds = draw.seeds;
  if (c.dev > kExactTolerance) c.values = counterexample(lhs, rhs);
  if (want_sim) {
    try {
      c.sim = similarity(lhs, rhs);
    } catch (const Error&) {
      c.sim = 0.0;
    }
  }
  return c;
}

inline LawReport base_report(const AlgebraParams& p, const char* suite, const char* law, std::size_t trials) {
  LawReport r;
  r.algebra = p;
  r.suite = suite;
  r.law_id = law;
  r.trials = trials;
  return r;
}

inline LawReport not_applicable(LawReport r, const std::string& why) {
  r.verdict = Verdict::NotApplicable;
  r.mode = LawMode::Exact;
  r.threshold = kExactTolerance;
  r.note = why;
  return r;
}

/// Runs an equational law. HOLDS when every trial agrees within the tolerance; otherwise
/// FAILS with the first failing trial as counterexample, unless `approx_threshold` is
/// given and the mean similarity of the two sides exceeds it (HOLDS_APPROX).
template <class Fn>
LawReport exact_law(const AlgebraParams& p, const char* suite, const char* law, const LawOptions& o, Fn fn,
                    std::optional<double> approx_threshold = std::nullopt) {
  auto r = base_report(p, suite, law, o.trials);
  std::vector<Check> checks;
  try {
    checks = parallel_map(
        o.trials,
        [&](std::size_t t) {
          Draw d{p, law, t, {}};
          return fn(d);
        },
        o.threads);
  } catch (const Error& e) {
    return not_applicable(std::move(r), e.what());
  }
  double worst = 0.0;
  std::optional<std::size_t> first_fail;
  for (std::size_t t = 0; t < checks.size(); ++t) {
    worst = std::max(worst, checks[t].dev);
    if (!first_fail && checks[t].dev > kExactTolerance) first_fail = t;
  }
  if (!first_fail) {
    r.mode = LawMode::Exact;
    r.threshold = kExactTolerance;
    r.statistic = worst;
    r.verdict = Verdict::Holds;
    r.evidence = {{"max_deviation", worst}, {"witness", {{"trial", 0}, {"seeds", seeds_json(checks[0].seeds)}}}};
    return r;
  }
  const auto& bad = checks[*first_fail];
  json cex{{"trial", *first_fail}, {"seeds", seeds_json(bad.seeds)}, {"values", bad.values}};
  if (approx_threshold) {
    double mean = 0.0;
    for (const auto& c : checks) mean += c.sim;
    mean /= static_cast<double>(checks.size());
    r.mode = LawMode::Statistical;
    r.threshold = *approx_threshold;
    r.statistic = mean;
    r.verdict = mean > *approx_threshold ? Verdict::HoldsApprox : Verdict::Fails;
    r.evidence = {{"mean_similarity", mean}, {"max_deviation", std::isfinite(worst) ? worst : -1.0},
                  {"counterexample", cex}};
    return r;
  }
  r.mode = LawMode::Exact;
  r.threshold = kExactTolerance;
  r.statistic = std::isfinite(worst) ? worst : -1.0;
  r.verdict = Verdict::Fails;
  r.evidence = {{"max_deviation", r.statistic}, {"counterexample", cex}};
  return r;
}

/// Mean and population standard deviation.
inline std::pair<double, double> mean_std(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m += x;
  m /= static_cast<double>(v.size());
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return {m, std::sqrt(s / static_cast<double>(v.size()))};
}

/// Nearest-rank percentile, q in [0, 1].
inline double percentile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  const auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(v.size())));
  return v[std::min(v.size() - 1, rank == 0 ? 0 : rank - 1)];
}

/// The trial that pulls a statistic furthest past its threshold, with the operand seeds
/// that regenerate it (slot order matches Draw::next).
inline json worst_trial(const AlgebraParams& p, std::string_view law, const std::vector<double>& values,
                        std::size_t slots, bool larger_is_worse = true) {
  std::size_t t = 0;
  for (std::size_t i = 1; i < values.size(); ++i)
    if (larger_is_worse ? values[i] > values[t] : values[i] < values[t]) t = i;
  std::vector<std::uint64_t> seeds;
  for (std::size_t k = 0; k < slots; ++k) seeds.push_back(trial_seed(p, law, t, k));
  return json{{"trial", t}, {"seeds", seeds}, {"value", std::isfinite(values[t]) ? values[t] : -1.0}};
}

inline void require_trials(const LawOptions& o) {
  if (o.trials < kMinTrials) throw ConfigError("law suites need at least 100 trials");
}

}  // namespace detail

// ------------------------------------------------------------------ rig laws

/// Two-sided check of bind(x, y) against its inverse: exact, approximate, or failing.
inline LawReport check_unbinding(const AlgebraParams& p, const char* suite, const char* law, const LawOptions& o) {
  auto r = detail::exact_law(
      p, suite, law, o,
      [](detail::Draw& d) {
        auto x = d.next(), y = d.next();
        return detail::compare(d, unbind(x, bind(x, y)), y, true);
      },
      0.5);
  if (r.verdict == Verdict::Holds) r.evidence["unbinding"] = "exact";
  else if (r.verdict == Verdict::HoldsApprox) r.evidence["unbinding"] = "approximate";
  else if (r.verdict == Verdict::NotApplicable) r.evidence["unbinding"] = "none";
  return r;
}

inline std::vector<LawReport> check_rig_laws(const AlgebraParams& p, const LawOptions& o = {}) {
  using detail::compare;
  using detail::Draw;
  detail::require_trials(o);
  p.validate();
  const char* S = "rig";
  std::vector<LawReport> out;

  out.push_back(detail::exact_law(p, S, "bundle_commutativity", o, [](Draw& d) {
    auto x = d.next(), y = d.next();
    return compare(d, bundle(x, y, BundleMode::Raw), bundle(y, x, BundleMode::Raw));
  }));
  out.push_back(detail::exact_law(p, S, "bundle_commutativity_native", o, [](Draw& d) {
    auto x = d.next(), y = d.next();
    return compare(d, bundle(x, y, BundleMode::Native), bundle(y, x, BundleMode::Native));
  }));
  out.push_back(detail::exact_law(p, S, "bundle_associativity", o, [](Draw& d) {
    auto x = d.next(), y = d.next(), z = d.next();
    return compare(d, bundle(bundle(x, y, BundleMode::Raw), z, BundleMode::Raw),
                   bundle(x, bundle(y, z, BundleMode::Raw), BundleMode::Raw));
  }));
  out.push_back(detail::exact_law(p, S, "additive_identity", o, [&p](Draw& d) {
    auto x = d.next();
    const auto z = zero(p);
    auto left = compare(d, bundle(z, x, BundleMode::Raw), x);
    auto right = compare(d, bundle(x, z, BundleMode::Raw), x);
    return left.dev >= right.dev ? left : right;
  }));
  out.push_back(detail::exact_law(p, S, "bind_associativity", o, [](Draw& d) {
    auto x = d.next(), y = d.next(), z = d.next();
    return compare(d, bind(bind(x, y), z), bind(x, bind(y, z)));
  }));
  out.push_back(detail::exact_law(p, S, "multiplicative_identity", o, [&p](Draw& d) {
    auto x = d.next();
    const auto one = identity(p);
    auto left = compare(d, bind(one, x), x);
    auto right = compare(d, bind(x, one), x);
    if (left.dev > kExactTolerance) left.values["side"] = "left";
    if (right.dev > kExactTolerance) right.values["side"] = "right";
    return left.dev >= right.dev ? left : right;
  }));
  out.push_back(detail::exact_law(p, S, "left_distributivity", o, [](Draw& d) {
    auto x = d.next(), y = d.next(), z = d.next();
    return compare(d, bind(x, bundle(y, z, BundleMode::Raw)), bundle(bind(x, y), bind(x, z), BundleMode::Raw));
  }));
  out.push_back(detail::exact_law(p, S, "right_distributivity", o, [](Draw& d) {
    auto x = d.next(), y = d.next(), z = d.next();
    return compare(d, bind(bundle(y, z, BundleMode::Raw), x), bundle(bind(y, x), bind(z, x), BundleMode::Raw));
  }));
  out.push_back(detail::exact_law(p, S, "absorption", o, [&p](Draw& d) {
    auto x = d.next();
    const auto z = zero(p);
    detail::Check c;
    c.seeds = d.seeds;
    for (const auto& v : {bind(z, x), bind(x, z)}) {
      if (!is_zero(v)) {
        c.dev = 1.0;
        c.values = {{"nonzero_result_prefix", vector_excerpt(v)}};
      }
    }
    return c;
  }));
  out.push_back(check_unbinding(p, S, "multiplicative_inverse", o));

  if (p.algebra == AlgebraId::BSC || is_bsdc(p.algebra)) {
    out.push_back(detail::not_applicable(detail::base_report(p, S, "additive_inverse", o.trials),
                                         "binary and sparse carriers have no additive inverses (a rig, not a ring)"));
  } else {
    auto r = detail::exact_law(p, S, "additive_inverse", o, [](Draw& d) {
      auto x = d.next();
      auto s = bundle(x, scalar_mul(-1.0, x), BundleMode::Raw);
      detail::Check c;
      c.seeds = d.seeds;
      if (!is_zero(s, kExactTolerance)) {
        c.dev = 1.0;
        c.values = {{"sum_prefix", vector_excerpt(s)}};
      }
      return c;
    });
    r.note = "the carrier admits negation through scalar_mul(-1, x)";
    out.push_back(std::move(r));
  }

  out.push_back(detail::exact_law(
      p, S, "left_distributivity_native", o,
      [](Draw& d) {
        auto x = d.next(), y = d.next(), z = d.next();
        return compare(d, bind(x, bundle(y, z, BundleMode::Native)),
                       bundle(bind(x, y), bind(x, z), BundleMode::Native), true);
      },
      0.95));
  out.push_back(detail::exact_law(
      p, S, "right_distributivity_native", o,
      [](Draw& d) {
        auto x = d.next(), y = d.next(), z = d.next();
        return compare(d, bind(bundle(y, z, BundleMode::Native), x),
                       bundle(bind(y, x), bind(z, x), BundleMode::Native), true);
      },
      0.95));
  return out;
}

// ------------------------------------------------------------------ metric axioms

inline std::vector<LawReport> check_metric_axioms(const AlgebraParams& p, const LawOptions& o = {}) {
  detail::require_trials(o);
  p.validate();
  const char* S = "metric";
  const char* law = "metric_triples";

  struct Triple {
    double self = 0.0;      // max of d(v, v) over the triple
    double minimum = 0.0;   // smallest distance seen
    double excess = 0.0;    // largest d(a,c) - d(a,b) - d(b,c) over the three orderings
    double asymmetry = 0.0; // largest |d(a,b) - d(b,a)|
    double dxy = 0, dyz = 0, dxz = 0;
    std::vector<std::uint64_t> seeds;
    int kind = 0;
  };

  std::vector<Triple> rows;
  try {
    rows = parallel_map(
        o.trials,
        [&](std::size_t t) {
          detail::Draw d{p, law, t, {}};
          auto x = d.next(), y = d.next(), z = d.next();
          Triple tr;
          tr.kind = static_cast<int>(t % 4);
          // Mix in derived values so the distance is exercised beyond independent pairs.
          try {
            if (tr.kind == 1) y = bundle(x, y, BundleMode::Native);
            if (tr.kind == 2 && p.algebra != AlgebraId::TPR) z = bind(x, y);
            if (tr.kind == 3) y = braid(x, BraidRole::standard(), 1);
          } catch (const Error&) {
            tr.kind = 0;
          }
          const Hypervector* v[3] = {&x, &y, &z};
          double dist[3][3];
          for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) dist[i][j] = metric_distance(*v[i], *v[j]);
          tr.self = std::max({dist[0][0], dist[1][1], dist[2][2]});
          tr.minimum = dist[0][0];
          for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
              tr.minimum = std::min(tr.minimum, dist[i][j]);
              tr.asymmetry = std::max(tr.asymmetry, std::abs(dist[i][j] - dist[j][i]));
            }
          tr.excess = -std::numeric_limits<double>::infinity();
          for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
              for (int c = 0; c < 3; ++c)
                if (a != b && b != c && a != c) tr.excess = std::max(tr.excess, dist[a][c] - dist[a][b] - dist[b][c]);
          tr.dxy = dist[0][1];
          tr.dyz = dist[1][2];
          tr.dxz = dist[0][2];
          tr.seeds = d.seeds;
          return tr;
        },
        o.threads);
  } catch (const Error& e) {
    std::vector<LawReport> out;
    for (const char* id : {"self_distance_zero", "triangle_inequality", "non_negativity", "symmetry"})
      out.push_back(detail::not_applicable(detail::base_report(p, S, id, o.trials), e.what()));
    return out;
  }

  std::vector<LawReport> out;
  auto add = [&](const char* id, double tol, auto value, auto failing, const char* note) {
    auto r = detail::base_report(p, S, id, o.trials);
    r.mode = LawMode::Exact;
    r.threshold = tol;
    std::size_t violations = 0;
    std::optional<std::size_t> first;
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < rows.size(); ++t) {
      worst = std::max(worst, value(rows[t]));
      if (failing(rows[t])) {
        ++violations;
        if (!first) first = t;
      }
    }
    r.statistic = static_cast<double>(violations);
    r.verdict = violations == 0 ? Verdict::Holds : Verdict::Fails;
    r.evidence = {{"violations", violations}, {"worst", worst}, {"triples", rows.size()}};
    if (first) {
      const auto& tr = rows[*first];
      r.evidence["counterexample"] = {{"trial", *first}, {"seeds", tr.seeds}, {"construction", tr.kind},
                                      {"d_xy", tr.dxy}, {"d_yz", tr.dyz}, {"d_xz", tr.dxz}};
    } else {
      r.evidence["witness"] = {{"trial", 0}, {"seeds", rows[0].seeds}};
    }
    r.note = note;
    out.push_back(std::move(r));
  };
  add("self_distance_zero", kExactTolerance, [](const Triple& t) { return t.self; },
      [](const Triple& t) { return t.self > kExactTolerance; }, "");
  add("triangle_inequality", kTriangleSlack, [](const Triple& t) { return t.excess; },
      [](const Triple& t) { return t.excess > kTriangleSlack; }, "all three orderings of each triple are checked");
  add("non_negativity", 0.0, [](const Triple& t) { return -t.minimum; },
      [](const Triple& t) { return t.minimum < 0.0; }, "");
  add("symmetry", kExactTolerance, [](const Triple& t) { return t.asymmetry; },
      [](const Triple& t) { return t.asymmetry > kExactTolerance; },
      "informational: a Lawvere metric need not be symmetric");
  return out;
}

// ------------------------------------------------------------------ desiderata

/// Whether the algebra's own definition includes a braiding permutation. The others
/// expose the default permutation braid as an extension.
inline bool braid_is_native(AlgebraId id) {
  switch (id) {
    case AlgebraId::MAP_I:
    case AlgebraId::MAP_B:
    case AlgebraId::MAP_C:
    case AlgebraId::FHRR:
    case AlgebraId::HRR:
    case AlgebraId::BSC: return true;
    default: return false;
  }
}

namespace detail {

/// Runs fn over trials, returning per-trial values, or the error text.
template <class Fn>
std::optional<std::vector<double>> sample(const AlgebraParams& p, std::string_view law, const LawOptions& o, Fn fn,
                                          std::string& error) {
  try {
    return parallel_map(
        o.trials,
        [&](std::size_t t) {
          Draw d{p, law, t, {}};
          return fn(d);
        },
        o.threads);
  } catch (const Error& e) {
    error = e.what();
    return std::nullopt;
  }
}

}  // namespace detail

/// `only` restricts the run to the named laws; empty runs all of them.
inline std::vector<LawReport> check_desiderata(const AlgebraParams& p, const LawOptions& o = {},
                                               const std::vector<std::string>& only = {}) {
  auto want = [&only](std::string_view id) { return only.empty() || std::find(only.begin(), only.end(), id) != only.end(); };
  using detail::Draw;
  detail::require_trials(o);
  p.validate();
  const char* S = "desiderata";
  const double chance = chance_similarity(p);
  std::vector<LawReport> out;

  // Similarity is bounded and equals 1 on identical arguments.
  if (want("self_similarity")) {
    auto r = detail::exact_law(p, S, "self_similarity", o, [](Draw& d) {
      auto x = d.next(), y = d.next();
      detail::Check c;
      c.seeds = d.seeds;
      const double sxx = similarity(x, x), sxy = similarity(x, y);
      c.dev = std::abs(sxx - 1.0);
      if (sxy < -1.0 || sxy > 1.0) c.dev = std::max(c.dev, 1.0);
      if (c.dev > kExactTolerance) c.values = {{"self", sxx}, {"pair", sxy}};
      return c;
    });
    out.push_back(std::move(r));
  }

  // A NATIVE bundle stays closer to its members than the 99.9th percentile of fresh vectors.
  if (want("bundle_similarity")) {
    auto r = detail::base_report(p, S, "bundle_similarity", o.trials);
    std::string err;
    std::vector<std::pair<double, double>> pairs;
    try {
      pairs = parallel_map(
          o.trials,
          [&](std::size_t t) {
            Draw d{p, "bundle_similarity", t, {}};
            auto x = d.next(), y = d.next(), z = d.next();
            auto b = bundle(x, y, BundleMode::Native);
            return std::pair{similarity(x, b), similarity(z, b)};
          },
          o.threads);
    } catch (const Error& e) {
      err = e.what();
    }
    if (!err.empty()) {
      out.push_back(detail::not_applicable(std::move(r), err));
    } else {
      std::vector<double> member, fresh;
      for (auto [m, f] : pairs) {
        member.push_back(m);
        fresh.push_back(f);
      }
      const double p999 = detail::percentile(fresh, 0.999);
      std::size_t above = 0;
      for (double m : member) above += m > p999 ? 1 : 0;
      const double frac = static_cast<double>(above) / static_cast<double>(member.size());
      r.mode = LawMode::Statistical;
      r.threshold = 0.99;
      r.statistic = frac;
      r.verdict = frac >= 0.99 ? Verdict::Holds : Verdict::Fails;
      r.evidence = {{"fresh_p999", p999}, {"member_mean", detail::mean_std(member).first},
                    {"member_min", *std::min_element(member.begin(), member.end())}, {"fraction_above", frac}};
      if (r.verdict == Verdict::Fails)
        r.evidence["counterexample"] = detail::worst_trial(p, "bundle_similarity", member, 3, false);
      r.note = "fraction of trials whose member similarity exceeds the 99.9th percentile of fresh-vector similarity";
      out.push_back(std::move(r));
    }
  }

  // Binding yields a vector dissimilar to its operands.
  if (want("bind_dissimilarity")) {
    auto r = detail::base_report(p, S, "bind_dissimilarity", o.trials);
    if (p.algebra == AlgebraId::TPR) {
      out.push_back(detail::not_applicable(std::move(r), "bind outputs live in the tensor space of a different dimension"));
    } else {
      std::string err;
      auto v = detail::sample(p, "bind_dissimilarity", o, [&](Draw& d) {
        auto x = d.next(), y = d.next();
        return std::abs(similarity(bind(x, y), x) - chance);
      }, err);
      if (!v) {
        out.push_back(detail::not_applicable(std::move(r), err));
      } else {
        const auto [m, s] = detail::mean_std(*v);
        r.mode = LawMode::Statistical;
        r.threshold = 0.1;
        r.statistic = m;
        r.verdict = m < 0.1 ? Verdict::Holds : Verdict::Fails;
        r.evidence = {{"mean_abs_excess_over_chance", m}, {"std", s}, {"chance", chance}};
        if (r.verdict == Verdict::Fails) r.evidence["counterexample"] = detail::worst_trial(p, "bind_dissimilarity", *v, 2);
        if (p.algebra == AlgebraId::BSDC_CDT) r.note = "thinning keeps the result overlapping its inputs by design";
        out.push_back(std::move(r));
      }
    }
  }

  if (want("binding_invertibility")) out.push_back(check_unbinding(p, S, "binding_invertibility", o));

  // Braiding decorrelates and is exactly invertible.
  if (want("braid_dissimilarity")) {
    auto r = detail::base_report(p, S, "braid_dissimilarity", o.trials);
    r.extension = !braid_is_native(p.algebra);
    std::string err;
    auto v = detail::sample(p, "braid_dissimilarity", o, [&](Draw& d) {
      auto x = d.next();
      auto b = braid(x, BraidRole::standard(), 1);
      if (!(braid(b, BraidRole::standard(), -1) == x)) return std::numeric_limits<double>::infinity();
      return std::abs(similarity(x, b) - chance);
    }, err);
    if (!v) {
      out.push_back(detail::not_applicable(std::move(r), err));
    } else {
      const auto [m, s] = detail::mean_std(*v);
      r.mode = LawMode::Statistical;
      r.threshold = 0.1;
      r.statistic = std::isfinite(m) ? m : -1.0;
      r.verdict = std::isfinite(m) && m < 0.1 ? Verdict::Holds : Verdict::Fails;
      r.evidence = {{"mean_abs_excess_over_chance", r.statistic}, {"exactly_invertible", std::isfinite(m)},
                    {"chance", chance}};
      if (r.verdict == Verdict::Fails) r.evidence["counterexample"] = detail::worst_trial(p, "braid_dissimilarity", *v, 1);
      out.push_back(std::move(r));
    }
  }

  // Whether braiding belongs to the algebra itself.
  if (want("braid_support")) {
    auto r = detail::base_report(p, S, "braid_support", o.trials);
    r.evidence = {{"native", braid_is_native(p.algebra)}};
    if (braid_is_native(p.algebra)) {
      r.mode = LawMode::Exact;
      r.threshold = kExactTolerance;
      r.verdict = Verdict::Holds;
    } else {
      r = detail::not_applicable(std::move(r), "the algebra defines no braiding; the default permutation is available as an extension");
      r.extension = true;
    }
    out.push_back(std::move(r));
  }

  // Commutativity of bind: exact agreement, or a statistical measure of how far apart the orders are.
  if (want("bind_commutativity")) {
    auto r = detail::exact_law(
        p, S, "bind_commutativity", o,
        [](Draw& d) {
          auto x = d.next(), y = d.next();
          return detail::compare(d, bind(x, y), bind(y, x), true);
        });
    if (r.verdict == Verdict::Fails) {
      std::string err;
      auto v = detail::sample(p, "bind_commutativity", o, [&](Draw& d) {
        auto x = d.next(), y = d.next();
        return std::abs(similarity(bind(x, y), bind(y, x)) - chance);
      }, err);
      if (v) {
        const auto [m, s] = detail::mean_std(*v);
        r.evidence["mean_abs_excess_over_chance"] = m;
        r.evidence["distinguishable"] = m < 0.1;
      }
    }
    out.push_back(std::move(r));
  }

  // A (x) B (x) C should differ from B (x) A (x) C.
  if (want("bind_order_distinguishable")) {
    auto r = detail::base_report(p, S, "bind_order_distinguishable", o.trials);
    std::string err;
    auto v = detail::sample(p, "bind_order_distinguishable", o, [&](Draw& d) {
      auto a = d.next(), b = d.next(), c = d.next();
      auto abc = bind(bind(a, b), c), bac = bind(bind(b, a), c);
      if (abc == bac) return 1.0 - chance;
      return std::abs(similarity(abc, bac) - chance);
    }, err);
    if (!v) {
      out.push_back(detail::not_applicable(std::move(r), err));
    } else {
      const auto [m, s] = detail::mean_std(*v);
      r.mode = LawMode::Statistical;
      r.threshold = 0.1;
      r.statistic = m;
      r.verdict = m < 0.1 ? Verdict::Holds : Verdict::Fails;
      r.evidence = {{"mean_abs_excess_over_chance", m}, {"std", s}};
      if (r.verdict == Verdict::Fails)
        r.evidence["counterexample"] = detail::worst_trial(p, "bind_order_distinguishable", *v, 3);
      r.note = m < 0.1 ? "orders distinguishable" : "orders indistinguishable";
      out.push_back(std::move(r));
    }
  }

  // x^-1 = x.
  if (want("self_inverse")) {
    auto r = detail::exact_law(p, S, "self_inverse", o, [](Draw& d) {
      auto x = d.next();
      return detail::compare(d, inverse(x), x);
    });
    if (r.verdict != Verdict::NotApplicable) {
      bool involutive = true;
      try {
        const auto one = identity(p);
        for (std::size_t t = 0; t < std::min<std::size_t>(o.trials, 16); ++t) {
          Draw d{p, "self_inverse", t, {}};
          auto x = d.next();
          involutive = involutive && deviation(bind(x, x), one) <= kExactTolerance;
        }
      } catch (const Error&) {
        involutive = false;
      }
      r.evidence["bind_self_is_identity"] = involutive;
    }
    out.push_back(std::move(r));
  }

  // Independent random vectors are nearly orthogonal.
  if (want("near_orthogonality")) {
    auto r = detail::base_report(p, S, "near_orthogonality", o.trials);
    std::string err;
    auto v = detail::sample(p, "near_orthogonality", o, [&](Draw& d) {
      auto x = d.next(), y = d.next();
      return similarity(x, y);
    }, err);
    if (!v) {
      out.push_back(detail::not_applicable(std::move(r), err));
    } else {
      const auto [m, s] = detail::mean_std(*v);
      double mean_abs = 0.0;
      for (double x : *v) mean_abs += std::abs(x - chance);
      mean_abs /= static_cast<double>(v->size());
      r.mode = LawMode::Statistical;
      r.threshold = 0.01;
      r.statistic = std::abs(m - chance);
      r.verdict = r.statistic < 0.01 ? Verdict::Holds : Verdict::Fails;
      r.evidence = {{"mean", m}, {"std", s}, {"mean_abs_excess_over_chance", mean_abs}, {"chance", chance},
                    {"inverse_sqrt_dimension", 1.0 / std::sqrt(static_cast<double>(p.dimension))}};
      if (r.verdict == Verdict::Fails) {
        // the trial leaning hardest in the direction of the mean's drift
        std::vector<double> lean;
        for (double x : *v) lean.push_back(m >= chance ? x - chance : chance - x);
        r.evidence["counterexample"] = detail::worst_trial(p, "near_orthogonality", lean, 2);
      }
      out.push_back(std::move(r));
    }
  }
  return out;
}

inline std::vector<LawReport> check_all_laws(const AlgebraParams& p, const LawOptions& o = {}) {
  auto out = check_rig_laws(p, o);
  for (auto& r : check_metric_axioms(p, o)) out.push_back(std::move(r));
  for (auto& r : check_desiderata(p, o)) out.push_back(std::move(r));
  return out;
}

// ------------------------------------------------------------------ conformance matrix

enum class UnbindKind { Exact, Approximate, None };

inline const char* unbind_kind_name(UnbindKind k) {
  switch (k) {
    case UnbindKind::Exact: return "exact";
    case UnbindKind::Approximate: return "approximate";
    case UnbindKind::None: return "none";
  }
  return "?";
}

/// The four structural traits the verdict matrix classifies per algebra.
struct AlgebraProfile {
  bool commutative = false;
  std::optional<bool> self_inverse;  // empty: no inverse at all
  bool braid_native = false;
  UnbindKind unbinding = UnbindKind::None;
  friend bool operator==(const AlgebraProfile&, const AlgebraProfile&) = default;
};

/// Expected traits of each algebra as described in the VSA literature.
inline AlgebraProfile expected_profile(AlgebraId id) {
  using U = UnbindKind;
  switch (id) {
    case AlgebraId::TPR: return {false, true, false, U::Exact};
    case AlgebraId::MAP_I:
    case AlgebraId::MAP_B: return {true, true, true, U::Exact};
    case AlgebraId::MAP_C: return {true, true, true, U::Approximate};
    case AlgebraId::FHRR: return {true, false, true, U::Exact};
    case AlgebraId::HRR: return {true, false, true, U::Approximate};
    case AlgebraId::MBAT: return {false, false, false, U::Exact};
    case AlgebraId::VTB: return {false, false, false, U::Exact};
    case AlgebraId::BSC: return {true, true, true, U::Exact};
    case AlgebraId::BSDC_S: return {false, false, false, U::Exact};
    case AlgebraId::BSDC_SEG: return {true, false, false, U::Exact};
    case AlgebraId::BSDC_CDT: return {true, std::nullopt, false, U::None};
  }
  return {};
}

struct ProfileCheck {
  AlgebraParams params;
  AlgebraProfile expected;
  AlgebraProfile observed;
  std::vector<LawReport> reports;
  bool matches() const { return expected == observed; }
};

inline json profile_to_json(const AlgebraProfile& a) {
  return json{{"commutative", a.commutative},
              {"self_inverse", a.self_inverse ? json(*a.self_inverse) : json(nullptr)},
              {"braid_native", a.braid_native},
              {"unbinding", unbind_kind_name(a.unbinding)}};
}

/// Measures the four traits through the desiderata suite.
inline ProfileCheck check_profile(const AlgebraParams& p, const LawOptions& o = {}) {
  ProfileCheck pc{p, expected_profile(p.algebra), {}, {}};
  const std::vector<std::string> traits{"bind_commutativity", "self_inverse", "braid_support", "binding_invertibility"};
  for (auto& r : check_desiderata(p, o, traits)) {
    if (r.law_id == "bind_commutativity") {
      pc.observed.commutative = r.verdict == Verdict::Holds;
    } else if (r.law_id == "self_inverse") {
      if (r.verdict != Verdict::NotApplicable) pc.observed.self_inverse = r.verdict == Verdict::Holds;
    } else if (r.law_id == "braid_support") {
      pc.observed.braid_native = r.verdict == Verdict::Holds;
    } else if (r.law_id == "binding_invertibility") {
      pc.observed.unbinding = r.verdict == Verdict::Holds         ? UnbindKind::Exact
                              : r.verdict == Verdict::HoldsApprox ? UnbindKind::Approximate
                                                                  : UnbindKind::None;
    }
    pc.reports.push_back(std::move(r));
  }
  return pc;
}

}  // namespace hyperrig
