#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hyperrig/core.hpp"
#include "hyperrig/memory.hpp"

namespace hyperrig {

// Structured encodings. Every multi-term structure is a RAW bundle so that unbinding
// distributes over it; normalization is left to the caller.

// ---------------------------------------------------------------- functions

struct FunctionRow {
  std::string x_name;
  Hypervector x;
  std::string fx_name;
  Hypervector fx;
};

struct FunctionCode {
  Hypervector vector;
  ItemMemory domain_memory;
  ItemMemory range_memory;
};

namespace detail {

/// Adds name -> v unless an identical entry exists; a name reused for a different vector is an error.
inline ItemMemory add_unique(const ItemMemory& mem, const std::string& name, const Hypervector& v) {
  if (mem.contains(name)) {
    if (!(mem.lookup(name) == v)) throw ConfigError("symbol '" + name + "' names two different vectors");
    return mem;
  }
  return mem.insert(name, v);
}

inline void require_unbind(const AlgebraParams& p, const char* op) {
  if (!supports_inverse(p.algebra)) throw UnsupportedError(std::string(op) + ": bsdc_cdt has no unbinding");
}

}  // namespace detail

/// F = RAW sum over rows of bind(x, f(x)).
inline FunctionCode encode_function(const std::vector<FunctionRow>& rows) {
  if (rows.empty()) throw DomainError("encode_function: empty function table");
  const auto& p = rows.front().x.params();
  detail::require_unbind(p, "encode_function");
  ItemMemory domain(p), range(p);
  std::vector<Hypervector> terms;
  terms.reserve(rows.size());
  for (const auto& r : rows) {
    if (domain.contains(r.x_name)) throw ConfigError("encode_function: input '" + r.x_name + "' appears twice");
    domain = domain.insert(r.x_name, r.x);
    range = detail::add_unique(range, r.fx_name, r.fx);
    terms.push_back(bind(r.x, r.fx));
  }
  return FunctionCode{bundle_all(terms, BundleMode::Raw), std::move(domain), std::move(range)};
}

/// Table given as unnamed pairs: inputs are named x0, x1, ... and outputs y0, y1, ...
/// with repeated outputs sharing a name.
inline FunctionCode encode_function(const std::vector<std::pair<Hypervector, Hypervector>>& pairs) {
  std::vector<FunctionRow> rows;
  std::vector<std::pair<Hypervector, std::string>> outputs;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    std::string out_name;
    for (const auto& [v, n] : outputs)
      if (v == pairs[i].second) out_name = n;
    if (out_name.empty()) {
      out_name = "y" + std::to_string(outputs.size());
      outputs.emplace_back(pairs[i].second, out_name);
    }
    rows.push_back({"x" + std::to_string(i), pairs[i].first, out_name, pairs[i].second});
  }
  return encode_function(rows);
}

/// f(x) ~ x^-1 (x) F, optionally projected onto the range memory.
inline Hypervector apply_function(const FunctionCode& f, const Hypervector& x, bool clean = false) {
  auto y = unbind(x, f.vector);
  if (!clean) return y;
  return f.range_memory.cleanup(y).vector;
}

/// g(f(x)): the intermediate result is cleaned against F's range when clean_between is set.
inline Hypervector compose_apply(const FunctionCode& f, const FunctionCode& g, const Hypervector& x,
                                 bool clean_between) {
  if (!(f.range_memory.params() == g.domain_memory.params())) {
    throw DimensionError("compose_apply: functions live in different algebras");
  }
  auto stage1 = apply_function(f, x, clean_between);
  return unbind(stage1, g.vector);
}

// ---------------------------------------------------------------- tuples

inline Hypervector encode_tuple(const std::vector<Hypervector>& roles, const std::vector<Hypervector>& fillers) {
  if (roles.size() != fillers.size()) {
    throw DomainError("encode_tuple: " + std::to_string(roles.size()) + " roles but " +
                      std::to_string(fillers.size()) + " fillers");
  }
  if (roles.empty()) throw DomainError("encode_tuple: empty tuple");
  detail::require_unbind(roles.front().params(), "encode_tuple");
  std::vector<Hypervector> terms;
  for (std::size_t i = 0; i < roles.size(); ++i) terms.push_back(bind(roles[i], fillers[i]));
  return bundle_all(terms, BundleMode::Raw);
}

inline Hypervector decode_tuple(const Hypervector& w, const Hypervector& role) { return unbind(role, w); }

// ---------------------------------------------------------------- integers

enum class IntegerMode { Bind, Braid };

/// Repeated self-binding for algebras where it walks away from x; braiding for the
/// self-inverse ones (where x (x) x collapses to the identity), for TPR (whose tensors
/// would grow) and for BSDC-CDT (no identity).
inline IntegerMode integer_mode(AlgebraId id) {
  switch (id) {
    case AlgebraId::FHRR:
    case AlgebraId::HRR:
    case AlgebraId::VTB:
    case AlgebraId::MBAT:
    case AlgebraId::BSDC_S:
    case AlgebraId::BSDC_SEG: return IntegerMode::Bind;
    default: return IntegerMode::Braid;
  }
}

/// x bound with itself n times; power(x, 0) is the identity.
inline Hypervector bind_power(const Hypervector& x, std::uint64_t n) {
  Hypervector acc = identity(x.params());
  for (std::uint64_t i = 0; i < n; ++i) acc = bind(x, acc);
  return acc;
}

/// phi[n]: bind_power(x, n) in bind mode, rho^n x in braid mode.
inline Hypervector encode_integer(const Hypervector& x, std::uint64_t n, BraidRole role = BraidRole::standard()) {
  if (integer_mode(x.algebra()) == IntegerMode::Bind) return bind_power(x, n);
  return braid(x, role, static_cast<long>(n));
}

/// Real exponent by elementwise (FHRR) or spectral (HRR) exponentiation. For FHRR the
/// phase in [-pi, pi) is scaled and wrapped, so integer r matches repeated binding exactly.
inline Hypervector fractional_power(const Hypervector& x, double r) {
  if (!std::isfinite(r)) throw DomainError("fractional_power: exponent must be finite");
  if (x.algebra() == AlgebraId::HRR) return hrr_fractional_power(x, r);
  if (x.algebra() != AlgebraId::FHRR) {
    throw UnsupportedError("fractional_power is defined for fhrr and hrr only, not " +
                           std::string(algebra_name(x.algebra())));
  }
  if (x.carrier() != Carrier::Phases) throw DomainError("fractional_power: fhrr operand must be unit phasors");
  std::vector<std::uint32_t> codes(x.phases());
  for (auto& c : codes) {
    const double scaled = static_cast<double>(static_cast<std::int32_t>(c)) * r;
    const double wrapped = scaled - 4294967296.0 * std::floor(scaled / 4294967296.0);
    c = static_cast<std::uint32_t>(static_cast<std::uint64_t>(std::llround(wrapped)) & 0xFFFFFFFFull);
  }
  return Hypervector::from_phases(x.params(), std::move(codes));
}

// ---------------------------------------------------------------- lists

enum class Construction { Braided, Guarded };

inline const char* construction_name(Construction c) { return c == Construction::Braided ? "braided" : "guarded"; }

struct ListCode {
  Hypervector vector;
  std::size_t length = 0;
  Construction construction = Construction::Braided;
  BraidRole role;                                  // BRAIDED
  std::uint64_t guard_seed = reserved::kGuard;     // GUARDED
};

/// Guard vector for a reserved seed.
inline Hypervector guard_vector(const AlgebraParams& p, std::uint64_t seed) { return random_vector(p, seed); }

inline bool bind_is_associative(AlgebraId id) {
  return id != AlgebraId::TPR && id != AlgebraId::BSDC_S && id != AlgebraId::BSDC_CDT;
}

namespace detail {

inline void require_guardable(const AlgebraParams& p, const char* op) {
  if (!bind_is_associative(p.algebra) || !supports_inverse(p.algebra)) {
    throw UnsupportedError(std::string(op) + ": guarded construction needs an associative, invertible binding; " +
                           std::string(algebra_name(p.algebra)) + " has none");
  }
}

}  // namespace detail

/// BRAIDED: sum of rho^(k-1) x_k. GUARDED: sum of h^(k-1) (x) x_k.
inline ListCode encode_list(const std::vector<Hypervector>& items, Construction construction,
                            BraidRole role = BraidRole::standard(), std::uint64_t guard_seed = reserved::kGuard) {
  if (items.empty()) throw DomainError("encode_list: empty list");
  const auto& p = items.front().params();
  std::vector<Hypervector> terms;
  terms.reserve(items.size());
  if (construction == Construction::Braided) {
    for (std::size_t k = 0; k < items.size(); ++k) terms.push_back(braid(items[k], role, static_cast<long>(k)));
  } else {
    detail::require_guardable(p, "encode_list");
    const auto h = guard_vector(p, guard_seed);
    Hypervector hk = identity(p);
    for (std::size_t k = 0; k < items.size(); ++k) {
      terms.push_back(bind(hk, items[k]));
      hk = bind(h, hk);
    }
  }
  return ListCode{bundle_all(terms, BundleMode::Raw), items.size(), construction, role, guard_seed};
}

/// Noisy item at 1-based position k; the caller cleans it up.
inline Hypervector decode_list_item(const ListCode& list, std::size_t k) {
  if (k == 0 || k > list.length) {
    throw DomainError("decode_list_item: position " + std::to_string(k) + " outside 1.." + std::to_string(list.length));
  }
  if (list.construction == Construction::Braided) return braid(list.vector, list.role, -static_cast<long>(k - 1));
  const auto h = guard_vector(list.vector.params(), list.guard_seed);
  return unbind(bind_power(h, k - 1), list.vector);
}

// ---------------------------------------------------------------- trees

enum class Branch { L, R };

using Path = std::vector<Branch>;

struct TreeCode {
  Hypervector vector;
  std::size_t depth = 0;
  Construction construction = Construction::Braided;
};

/// Root-to-leaf path of leaf i: the most significant of `depth` bits picks the root branch.
inline Path leaf_path(std::size_t leaf, std::size_t depth) {
  Path p(depth);
  for (std::size_t level = 0; level < depth; ++level)
    p[level] = ((leaf >> (depth - 1 - level)) & 1u) ? Branch::R : Branch::L;
  return p;
}

inline std::string path_string(const Path& path) {
  std::string s;
  for (auto b : path) s += b == Branch::L ? 'L' : 'R';
  return s;
}

inline Path parse_path(const std::string& s) {
  Path p;
  for (char c : s) {
    if (c == 'L' || c == 'l') p.push_back(Branch::L);
    else if (c == 'R' || c == 'r') p.push_back(Branch::R);
    else throw DomainError("tree path '" + s + "' may only contain L and R");
  }
  return p;
}

/// h_{p1} (x) h_{p2} (x) ... (x) h_{pD}, multiplied left to right.
inline Hypervector path_product(const AlgebraParams& p, const Path& path) {
  detail::require_guardable(p, "path_product");
  const auto hl = guard_vector(p, reserved::kGuardLeft);
  const auto hr = guard_vector(p, reserved::kGuardRight);
  Hypervector acc = identity(p);
  for (auto b : path) acc = bind(acc, b == Branch::L ? hl : hr);
  return acc;
}

/// The deepest branch's permutation is applied first and the root's last.
inline Hypervector braid_path(const Hypervector& x, const Path& path) {
  Hypervector v = x;
  for (auto it = path.rbegin(); it != path.rend(); ++it)
    v = braid(v, *it == Branch::L ? BraidRole::left() : BraidRole::right(), 1);
  return v;
}

inline Hypervector unbraid_path(const Hypervector& x, const Path& path) {
  Hypervector v = x;
  for (auto b : path) v = braid(v, b == Branch::L ? BraidRole::left() : BraidRole::right(), -1);
  return v;
}

inline TreeCode encode_tree(const std::vector<Hypervector>& leaves, Construction construction) {
  std::size_t depth = 0;
  while ((std::size_t{1} << depth) < leaves.size()) ++depth;
  if (leaves.size() < 2 || (std::size_t{1} << depth) != leaves.size()) {
    throw DomainError("encode_tree: leaf count " + std::to_string(leaves.size()) +
                      " is not 2^depth for a depth of at least 1");
  }
  const auto& p = leaves.front().params();
  std::vector<Hypervector> terms;
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    const auto path = leaf_path(i, depth);
    if (construction == Construction::Braided) terms.push_back(braid_path(leaves[i], path));
    else terms.push_back(bind(path_product(p, path), leaves[i]));
  }
  return TreeCode{bundle_all(terms, BundleMode::Raw), depth, construction};
}

inline Hypervector decode_leaf(const TreeCode& tree, const Path& path) {
  if (path.size() != tree.depth) {
    throw DomainError("decode_leaf: path of length " + std::to_string(path.size()) + " in a tree of depth " +
                      std::to_string(tree.depth));
  }
  if (tree.construction == Construction::Braided) return unbraid_path(tree.vector, path);
  return unbind(path_product(tree.vector.params(), path), tree.vector);
}

}  // namespace hyperrig
