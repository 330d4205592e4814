#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <shared_mutex>
#include <tuple>
#include <vector>

#include "hyperrig/algebras/common.hpp"
#include "hyperrig/permutation.hpp"
#include "hyperrig/seeding.hpp"

namespace hyperrig {

// Matrix Binding of Additive Terms. Each symbol owns an orthogonal role matrix M_s. A
// value carries its vector form v and a role expression R (a sum of scaled products of
// role matrices and braid permutations) with the invariant v = R e for a fixed seeded
// anchor e. bind(x, y) = (R_x v_y, R_x R_y), so bind is matrix multiplication on the
// role side and stays linear in both arguments.

/// Seeded orthogonal d x d matrix stored as a butterfly: ceil(log2 d) + 1 layers of
/// (permutation, Givens rotations on adjacent pairs, random signs). Applying it costs
/// O(d log d) and M^T M = I holds by construction.
class RoleMatrix {
 public:
  RoleMatrix(std::uint64_t master, std::uint64_t owner_symbol_seed, std::size_t d)
      : owner_(owner_symbol_seed), d_(d) {
    std::size_t layers = 1;
    while ((std::size_t{1} << (layers - 1)) < d) ++layers;
    Rng rng(derive_seed(master, static_cast<std::uint64_t>(SeedStream::Role), owner_symbol_seed, d));
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    std::bernoulli_distribution coin(0.5);
    for (std::size_t l = 0; l < layers; ++l) {
      Layer layer{Permutation(d, rng()), {}, {}, {}};
      layer.cos.resize(d / 2);
      layer.sin.resize(d / 2);
      for (std::size_t k = 0; k < d / 2; ++k) {
        const double a = angle(rng);
        layer.cos[k] = std::cos(a);
        layer.sin[k] = std::sin(a);
      }
      layer.sign.resize(d);
      for (auto& s : layer.sign) s = coin(rng) ? -1.0 : 1.0;
      layers_.push_back(std::move(layer));
    }
  }

  std::uint64_t owner_symbol_seed() const { return owner_; }
  std::size_t dimension() const { return d_; }

  /// M^power v; negative powers apply the transpose.
  std::vector<double> apply(std::vector<double> v, int power = 1) const {
    for (int step = 0, n = std::abs(power); step < n; ++step) v = power > 0 ? forward(v) : backward(v);
    return v;
  }

  /// Materializes the matrix (column j = M e_j). Intended for inspection and tests.
  std::vector<std::vector<double>> dense() const {
    std::vector<std::vector<double>> rows(d_, std::vector<double>(d_, 0.0));
    for (std::size_t j = 0; j < d_; ++j) {
      std::vector<double> e(d_, 0.0);
      e[j] = 1.0;
      auto col = forward(e);
      for (std::size_t i = 0; i < d_; ++i) rows[i][j] = col[i];
    }
    return rows;
  }

 private:
  struct Layer {
    Permutation perm;
    std::vector<double> cos, sin, sign;
  };

  std::vector<double> forward(const std::vector<double>& in) const {
    std::vector<double> v(in);
    for (const auto& layer : layers_) {
      v = layer.perm.apply<double>(v, 1);
      for (std::size_t k = 0; k < d_ / 2; ++k) {
        const double a = v[2 * k], b = v[2 * k + 1];
        v[2 * k] = layer.cos[k] * a - layer.sin[k] * b;
        v[2 * k + 1] = layer.sin[k] * a + layer.cos[k] * b;
      }
      for (std::size_t i = 0; i < d_; ++i) v[i] *= layer.sign[i];
    }
    return v;
  }

  std::vector<double> backward(const std::vector<double>& in) const {
    std::vector<double> v(in);
    for (auto it = layers_.rbegin(); it != layers_.rend(); ++it) {
      const auto& layer = *it;
      for (std::size_t i = 0; i < d_; ++i) v[i] *= layer.sign[i];
      for (std::size_t k = 0; k < d_ / 2; ++k) {
        const double a = v[2 * k], b = v[2 * k + 1];
        v[2 * k] = layer.cos[k] * a + layer.sin[k] * b;
        v[2 * k + 1] = -layer.sin[k] * a + layer.cos[k] * b;
      }
      v = layer.perm.apply<double>(v, -1);
    }
    return v;
  }

  std::uint64_t owner_;
  std::size_t d_;
  std::vector<Layer> layers_;
};

/// Memoized role matrix; concurrent readers share one instance.
inline std::shared_ptr<const RoleMatrix> role_matrix(std::uint64_t master, std::uint64_t symbol_seed, std::size_t d) {
  using Key = std::tuple<std::uint64_t, std::uint64_t, std::size_t>;
  static std::shared_mutex mutex;
  static std::map<Key, std::shared_ptr<const RoleMatrix>> cache;
  Key k{master, symbol_seed, d};
  {
    std::shared_lock lock(mutex);
    if (auto it = cache.find(k); it != cache.end()) return it->second;
  }
  auto m = std::make_shared<const RoleMatrix>(master, symbol_seed, d);
  std::unique_lock lock(mutex);
  if (cache.size() > 4096) cache.clear();
  return cache.try_emplace(k, std::move(m)).first->second;
}

/// Fixed reference vector e, N(0, 1/d) entries.
inline const std::vector<double>& mbat_anchor(std::uint64_t master, std::size_t d) {
  using Key = std::pair<std::uint64_t, std::size_t>;
  static std::shared_mutex mutex;
  static std::map<Key, std::vector<double>> cache;
  Key k{master, d};
  {
    std::shared_lock lock(mutex);
    if (auto it = cache.find(k); it != cache.end()) return it->second;
  }
  std::vector<double> e(d);
  Rng rng(derive_seed(master, static_cast<std::uint64_t>(SeedStream::Anchor), d));
  std::normal_distribution<double> gauss(0.0, 1.0 / std::sqrt(static_cast<double>(d)));
  for (auto& v : e) v = gauss(rng);
  std::unique_lock lock(mutex);
  return cache.try_emplace(k, std::move(e)).first->second;  // entries are never erased
}

namespace detail {

inline constexpr std::size_t kMaxRoleTerms = 4096;

/// Appends a factor, folding it into an equal neighbour (powers add, zero powers vanish).
inline void push_factor(std::vector<RoleFactor>& fs, const RoleFactor& f) {
  if (!fs.empty() && fs.back().kind == f.kind && fs.back().id == f.id) {
    fs.back().power += f.power;
    if (fs.back().power == 0) fs.pop_back();
    return;
  }
  if (f.power != 0) fs.push_back(f);
}

/// Adds a term, merging it with an existing term over the same factors.
inline void add_term(RoleExpr& expr, RoleTerm term) {
  for (auto& t : expr) {
    if (t.factors == term.factors) {
      t.coef += term.coef;
      return;
    }
  }
  if (expr.size() >= kMaxRoleTerms) throw UnsupportedError("mbat: role expression exceeds 4096 terms");
  expr.push_back(std::move(term));
}

}  // namespace detail

inline RoleExpr role_product(const RoleExpr& a, const RoleExpr& b) {
  RoleExpr out;
  for (const auto& ta : a) {
    for (const auto& tb : b) {
      RoleTerm t{ta.coef * tb.coef, ta.factors};
      for (const auto& f : tb.factors) detail::push_factor(t.factors, f);
      detail::add_term(out, std::move(t));
    }
  }
  return out;
}

inline RoleExpr role_sum(const RoleExpr& a, const RoleExpr& b) {
  RoleExpr out = a;
  for (const auto& t : b) detail::add_term(out, t);
  return out;
}

inline RoleExpr role_scaled(RoleExpr a, double s) {
  if (s == 0.0) return {};
  for (auto& t : a) t.coef *= s;
  return a;
}

/// Applies one factor (role matrix or braid permutation, raised to its power).
inline std::vector<double> apply_factor(const RoleFactor& f, std::vector<double> v, std::uint64_t master) {
  if (f.kind == RoleFactor::Kind::Role) return role_matrix(master, f.id, v.size())->apply(std::move(v), f.power);
  auto perm = braid_permutation(master, static_cast<unsigned>(f.id), v.size());
  return perm->apply<double>(v, f.power);
}

/// R v, with each term's factors applied right to left.
inline std::vector<double> apply_role(const RoleExpr& role, const std::vector<double>& v, std::uint64_t master) {
  std::vector<double> out(v.size(), 0.0);
  for (const auto& term : role) {
    std::vector<double> w = v;
    for (auto it = term.factors.rbegin(); it != term.factors.rend(); ++it) w = apply_factor(*it, std::move(w), master);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += term.coef * w[i];
  }
  return out;
}

inline bool all_zero(const std::vector<double>& v) {
  for (double e : v)
    if (e != 0.0) return false;
  return true;
}

inline Hypervector mbat_from_role(const AlgebraParams& p, RoleExpr role) {
  auto v = apply_role(role, mbat_anchor(p.master_seed, p.dimension), p.master_seed);
  return Hypervector::from_reals(p, std::move(v), 1, std::move(role));
}

/// Base vector for a symbol: M_s e, carrying the role M_s.
inline Hypervector mbat_random(const AlgebraParams& p, std::uint64_t symbol_seed) {
  return mbat_from_role(p, RoleExpr{RoleTerm{1.0, {RoleFactor{RoleFactor::Kind::Role, symbol_seed, 1}}}});
}

inline Hypervector mbat_identity(const AlgebraParams& p) { return mbat_from_role(p, RoleExpr{RoleTerm{1.0, {}}}); }

inline Hypervector mbat_bind(const Hypervector& x, const Hypervector& y) {
  require_compatible(x, y, "mbat_bind");
  require_algebra(x, AlgebraId::MBAT, "mbat_bind");
  if (x.role().empty() && !all_zero(x.reals())) {
    throw DomainError("mbat_bind: left operand has no role form (vectors must come from the algebra's generators)");
  }
  auto v = apply_role(x.role(), y.reals(), x.params().master_seed);
  return Hypervector::from_reals(x.params(), std::move(v), 1, role_product(x.role(), y.role()));
}

/// Exact inverse of a single-term value: (c F_1 ... F_k)^-1 = c^-1 F_k^-1 ... F_1^-1.
inline Hypervector mbat_inverse(const Hypervector& x) {
  require_algebra(x, AlgebraId::MBAT, "mbat_inverse");
  if (x.role().size() != 1) {
    throw UnsupportedError("mbat_inverse: only a single product of role matrices is invertible (got " +
                           std::to_string(x.role().size()) + " terms)");
  }
  const auto& t = x.role().front();
  if (t.coef == 0.0) throw DomainError("mbat_inverse: zero coefficient");
  RoleTerm inv{1.0 / t.coef, {}};
  for (auto it = t.factors.rbegin(); it != t.factors.rend(); ++it) {
    inv.factors.push_back(RoleFactor{it->kind, it->id, -it->power});
  }
  return mbat_from_role(x.params(), RoleExpr{std::move(inv)});
}

inline Hypervector mbat_unbind(const Hypervector& x, const Hypervector& z) {
  require_compatible(x, z, "mbat_unbind");
  auto inv = mbat_inverse(x);
  return mbat_bind(inv, z);
}

inline Hypervector mbat_bundle_all(Operands xs, BundleMode mode) {
  require_compatible(xs, "mbat_bundle");
  const auto& p = xs.front()->params();
  require_algebra(*xs.front(), AlgebraId::MBAT, "mbat_bundle");
  auto sum = sum_reals(xs);
  RoleExpr role;
  for (auto* x : xs) role = role_sum(role, x->role());
  if (mode == BundleMode::Native) {
    const double n = norm(sum);
    if (n == 0.0) throw DomainError("cannot normalize a zero vector");
    for (auto& v : sum) v /= n;
    role = role_scaled(std::move(role), 1.0 / n);
  }
  return Hypervector::from_reals(p, std::move(sum), 1, std::move(role));
}

inline Hypervector mbat_braid(const Hypervector& x, unsigned role, long k) {
  auto perm = braid_permutation(x.params().master_seed, role, x.dimension());
  auto v = perm->apply<double>(x.reals(), k);
  RoleExpr r;
  if (k != 0) {
    RoleExpr b{RoleTerm{1.0, {RoleFactor{RoleFactor::Kind::Braid, role, static_cast<int>(k)}}}};
    r = role_product(b, x.role());
  } else {
    r = x.role();
  }
  return Hypervector::from_reals(x.params(), std::move(v), 1, std::move(r));
}

}  // namespace hyperrig
