#pragma once

#include <algorithm>
#include <complex>
#include <limits>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "hyperrig/core.hpp"

namespace hyperrig {

struct CleanupResult {
  std::string name;
  Hypervector vector;
  double score = 0.0;
  double margin = 0.0;  // gap to the runner-up; +infinity when there is none
};

struct Collision {
  std::string first;
  std::string second;
  double score = 0.0;
};

struct Ranked {
  std::string name;
  double score = 0.0;
};

namespace detail {

/// A vector pre-normalized for repeated similarity queries. Scores agree with
/// similarity() to rounding; identical payloads score exactly 1.
class Prepared {
 public:
  explicit Prepared(const Hypervector& x) : source_(&x) {
    switch (x.algebra()) {
      case AlgebraId::FHRR: {
        cpx_ = complex_view(x);
        double n = 0.0;
        for (auto v : cpx_) n += std::norm(v);
        unit_norm(n, cpx_);
        break;
      }
      case AlgebraId::BSC:
        if (x.carrier() == Carrier::Reals) {
          real_ = bipolar_view(x);
          unit_norm(dot(real_, real_), real_);
        }
        break;
      case AlgebraId::BSDC_S:
      case AlgebraId::BSDC_SEG:
      case AlgebraId::BSDC_CDT: break;
      default:
        real_ = x.reals();
        unit_norm(dot(real_, real_), real_);
    }
  }

  const Hypervector& source() const { return *source_; }

  double score(const Prepared& q) const {
    const auto& x = *source_;
    const auto& y = *q.source_;
    if (x.payload() == y.payload() && !zero_ && !q.zero_) return 1.0;
    switch (x.algebra()) {
      case AlgebraId::FHRR: {
        require_nonzero(q);
        double s = 0.0;
        for (std::size_t i = 0; i < cpx_.size(); ++i)
          s += cpx_[i].real() * q.cpx_[i].real() + cpx_[i].imag() * q.cpx_[i].imag();
        return std::clamp(s, -1.0, 1.0);
      }
      case AlgebraId::BSC: {
        if (x.carrier() == Carrier::Bits && y.carrier() == Carrier::Bits) return bsc_similarity(x, y);
        require_nonzero(q);
        const auto& a = x.carrier() == Carrier::Bits ? q.bipolar_of(x) : real_;
        const auto& b = y.carrier() == Carrier::Bits ? bipolar_of(y) : q.real_;
        return 0.5 * (1.0 + std::clamp(dot(a, b), -1.0, 1.0));
      }
      case AlgebraId::BSDC_S:
      case AlgebraId::BSDC_SEG:
      case AlgebraId::BSDC_CDT: return overlap_similarity(x, y);
      default:
        require_nonzero(q);
        return std::clamp(dot(real_, q.real_), -1.0, 1.0);
    }
  }

 private:
  template <class T>
  void unit_norm(double n2, std::vector<T>& v) {
    if (n2 == 0.0) {
      zero_ = true;
      return;
    }
    const double n = std::sqrt(n2);
    for (auto& e : v) e /= n;
  }

  void require_nonzero(const Prepared& q) const {
    if (zero_ || q.zero_) throw DomainError("similarity undefined for a zero vector");
  }

  /// Unit bipolar form of a bit vector (used when the other side is an accumulator).
  std::vector<double> bipolar_of(const Hypervector& bits) const {
    auto v = bipolar_view(bits);
    const double s = 1.0 / std::sqrt(static_cast<double>(v.size()));
    for (auto& e : v) e *= s;
    return v;
  }

  const Hypervector* source_;
  std::vector<double> real_;
  std::vector<std::complex<double>> cpx_;
  bool zero_ = false;
};

struct Entry {
  explicit Entry(Hypervector v) : vector(std::move(v)), prepared(vector) {}
  Entry(const Entry&) = delete;
  Entry& operator=(const Entry&) = delete;
  Hypervector vector;
  Prepared prepared;
};

}  // namespace detail

/// Named codebook with exact nearest-neighbour cleanup. Values are immutable
/// snapshots: insert returns a new memory and leaves the original untouched.
class ItemMemory {
 public:
  explicit ItemMemory(AlgebraParams params) : params_(std::move(params)) { params_.validate(); }

  /// Builds a memory from many entries at once.
  ItemMemory(AlgebraParams params, const std::vector<std::pair<std::string, Hypervector>>& entries)
      : ItemMemory(std::move(params)) {
    for (const auto& [name, v] : entries) add(name, v);
  }

  const AlgebraParams& params() const { return params_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  bool contains(const std::string& name) const { return entries_.count(name) != 0; }

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    for (const auto& [n, e] : entries_) out.push_back(n);
    return out;
  }

  const Hypervector& lookup(const std::string& name) const {
    auto it = entries_.find(name);
    if (it == entries_.end()) throw ConfigError("item memory has no symbol '" + name + "'");
    return it->second->vector;
  }

  [[nodiscard]] ItemMemory insert(const std::string& name, const Hypervector& v) const {
    ItemMemory next = *this;
    next.add(name, v);
    return next;
  }

  /// All entries ranked by similarity to the query, best first, ties by name.
  std::vector<Ranked> rank(const Hypervector& query) const {
    check_query(query);
    detail::Prepared q(query);
    std::vector<Ranked> out;
    out.reserve(entries_.size());
    for (const auto& [name, e] : entries_) out.push_back({name, e->prepared.score(q)});
    std::stable_sort(out.begin(), out.end(), [](const Ranked& a, const Ranked& b) { return a.score > b.score; });
    return out;
  }

  /// Entry most similar to the query; ties go to the lexicographically first name.
  CleanupResult cleanup(const Hypervector& query) const {
    if (empty()) throw DomainError("cleanup on an empty item memory");
    check_query(query);
    detail::Prepared q(query);
    const std::string* best = nullptr;
    double best_score = -std::numeric_limits<double>::infinity();
    double second = -std::numeric_limits<double>::infinity();
    for (const auto& [name, e] : entries_) {
      const double s = e->prepared.score(q);
      if (best == nullptr || s > best_score) {
        second = best_score;
        best_score = s;
        best = &name;
      } else if (s > second) {
        second = s;
      }
    }
    return CleanupResult{*best, lookup(*best), best_score, best_score - second};
  }

  /// Unordered pairs with similarity >= threshold, highest score first.
  std::vector<Collision> collision_report(double threshold) const {
    std::vector<const std::pair<const std::string, std::shared_ptr<const detail::Entry>>*> items;
    for (const auto& kv : entries_) items.push_back(&kv);
    std::vector<Collision> out;
    for (std::size_t i = 0; i < items.size(); ++i) {
      for (std::size_t j = i + 1; j < items.size(); ++j) {
        const double s = items[i]->second->prepared.score(items[j]->second->prepared);
        if (s >= threshold) out.push_back({items[i]->first, items[j]->first, s});
      }
    }
    std::stable_sort(out.begin(), out.end(), [](const Collision& a, const Collision& b) { return a.score > b.score; });
    return out;
  }

 private:
  void add(const std::string& name, const Hypervector& v) {
    if (entries_.count(name)) throw ConfigError("item memory already has a symbol named '" + name + "'");
    if (!(v.params() == params_)) throw DimensionError("vector '" + name + "' belongs to a different algebra");
    if (v.dimension() != params_.dimension || v.tensor_order() != 1) {
      throw DimensionError("vector '" + name + "' has dimension " + std::to_string(v.dimension()) +
                           ", memory expects " + std::to_string(params_.dimension));
    }
    entries_.emplace(name, std::make_shared<const detail::Entry>(v));
  }

  void check_query(const Hypervector& q) const {
    if (!(q.params() == params_) || q.dimension() != params_.dimension || q.tensor_order() != 1) {
      throw DimensionError("cleanup query does not match the memory's algebra and dimension");
    }
  }

  AlgebraParams params_;
  std::map<std::string, std::shared_ptr<const detail::Entry>> entries_;
};

inline ItemMemory insert(const ItemMemory& mem, const std::string& name, const Hypervector& v) {
  return mem.insert(name, v);
}
inline CleanupResult cleanup(const ItemMemory& mem, const Hypervector& query) { return mem.cleanup(query); }
inline std::vector<Collision> collision_report(const ItemMemory& mem, double threshold) {
  return mem.collision_report(threshold);
}

}  // namespace hyperrig
