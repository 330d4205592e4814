#pragma once

#include <complex>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hyperrig/core.hpp"
#include "hyperrig/memory.hpp"

namespace hyperrig {

using json = nlohmann::json;

inline constexpr int kCodebookFormatVersion = 1;

inline json params_to_json(const AlgebraParams& p) {
  json j{{"id", algebra_name(p.algebra)}, {"dimension", p.dimension}, {"master_seed", p.master_seed}};
  if (p.density) j["density"] = *p.density;
  if (p.block_size) j["block_size"] = *p.block_size;
  return j;
}

inline AlgebraParams params_from_json(const json& j) {
  try {
    std::optional<double> density;
    std::optional<std::size_t> block;
    if (j.contains("density") && !j["density"].is_null()) density = j["density"].get<double>();
    if (j.contains("block_size") && !j["block_size"].is_null()) block = j["block_size"].get<std::size_t>();
    auto seed = j.contains("master_seed") ? j["master_seed"].get<std::uint64_t>() : kDefaultMasterSeed;
    return AlgebraParams::make(parse_algebra(j.at("id").get<std::string>()), j.at("dimension").get<std::size_t>(), seed,
                               density, block);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed algebra record: ") + e.what());
  }
}

namespace detail {

/// Carrier a bare payload array decodes to for this algebra.
inline Carrier base_carrier(AlgebraId id) {
  switch (id) {
    case AlgebraId::FHRR: return Carrier::Phases;
    case AlgebraId::BSC: return Carrier::Bits;
    case AlgebraId::BSDC_S:
    case AlgebraId::BSDC_SEG:
    case AlgebraId::BSDC_CDT: return Carrier::Sparse;
    default: return Carrier::Reals;
  }
}

inline json payload_to_json(const Hypervector& x) {
  switch (x.carrier()) {
    case Carrier::Reals: return x.reals();
    case Carrier::Phases: {
      json a = json::array();
      for (auto c : x.phases()) a.push_back(phase_to_radians(c));
      return a;
    }
    case Carrier::Complex: {
      json a = json::array();
      for (auto v : x.complexes()) a.push_back(json::array({v.real(), v.imag()}));
      return a;
    }
    case Carrier::Bits: {
      json a = json::array();
      for (std::size_t i = 0; i < x.dimension(); ++i) a.push_back(x.bit(i) ? 1 : 0);
      return a;
    }
    case Carrier::Sparse: return x.active();
  }
  return json::array();
}

inline json role_to_json(const RoleExpr& role) {
  json a = json::array();
  for (const auto& t : role) {
    json fs = json::array();
    for (const auto& f : t.factors)
      fs.push_back({{"kind", f.kind == RoleFactor::Kind::Role ? "role" : "braid"}, {"id", f.id}, {"power", f.power}});
    a.push_back({{"coef", t.coef}, {"factors", fs}});
  }
  return a;
}

inline RoleExpr role_from_json(const json& a) {
  RoleExpr role;
  for (const auto& t : a) {
    RoleTerm term{t.at("coef").get<double>(), {}};
    for (const auto& f : t.at("factors")) {
      const auto kind = f.at("kind").get<std::string>();
      if (kind != "role" && kind != "braid") throw ConfigError("unknown role factor kind '" + kind + "'");
      term.factors.push_back(RoleFactor{kind == "role" ? RoleFactor::Kind::Role : RoleFactor::Kind::Braid,
                                        f.at("id").get<std::uint64_t>(), f.at("power").get<int>()});
    }
    role.push_back(std::move(term));
  }
  return role;
}

inline Hypervector payload_from_json(const AlgebraParams& p, Carrier carrier, const json& data, std::size_t dim,
                                     int order, RoleExpr role) {
  switch (carrier) {
    case Carrier::Reals:
      return Hypervector::from_reals(p, data.get<std::vector<double>>(), order, std::move(role));
    case Carrier::Phases: {
      std::vector<std::uint32_t> codes;
      for (const auto& v : data) codes.push_back(radians_to_phase(v.get<double>()));
      return Hypervector::from_phases(p, std::move(codes));
    }
    case Carrier::Complex: {
      std::vector<std::complex<double>> v;
      for (const auto& e : data) v.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
      return Hypervector::from_complex(p, std::move(v));
    }
    case Carrier::Bits: {
      if (data.size() != dim) throw DimensionError("bit array length differs from the dimension");
      std::vector<std::uint64_t> words(words_for_bits(dim), 0);
      for (std::size_t i = 0; i < dim; ++i) {
        const int b = data[i].get<int>();
        if (b != 0 && b != 1) throw DomainError("bit arrays may only hold 0 and 1");
        if (b) words[i / 64] |= std::uint64_t{1} << (i % 64);
      }
      return Hypervector::from_bits(p, std::move(words), dim);
    }
    case Carrier::Sparse: return Hypervector::from_sparse(p, data.get<std::vector<std::uint32_t>>(), dim);
  }
  throw ConfigError("unknown carrier");
}

inline Carrier parse_carrier(const std::string& s) {
  for (auto c : {Carrier::Reals, Carrier::Phases, Carrier::Complex, Carrier::Bits, Carrier::Sparse})
    if (carrier_name(c) == s) return c;
  throw ConfigError("unknown carrier '" + s + "'");
}

}  // namespace detail

/// Vectors in the algebra's base form are written as bare arrays; everything else
/// (complex bundles, accumulators, tensors, MBAT values with their role form) as an
/// object with explicit carrier, dimension and order.
inline json vector_to_json(const Hypervector& x) {
  const bool bare = x.carrier() == detail::base_carrier(x.algebra()) && x.tensor_order() == 1 &&
                    x.dimension() == x.params().dimension && x.algebra() != AlgebraId::MBAT;
  if (bare) return detail::payload_to_json(x);
  json j{{"carrier", carrier_name(x.carrier())},
         {"dimension", x.dimension()},
         {"order", x.tensor_order()},
         {"data", detail::payload_to_json(x)}};
  if (x.algebra() == AlgebraId::MBAT) j["role"] = detail::role_to_json(x.role());
  return j;
}

inline Hypervector vector_from_json(const AlgebraParams& p, const json& j) {
  try {
    if (j.is_array()) {
      return detail::payload_from_json(p, detail::base_carrier(p.algebra), j, p.dimension, 1, {});
    }
    RoleExpr role = j.contains("role") ? detail::role_from_json(j["role"]) : RoleExpr{};
    return detail::payload_from_json(p, detail::parse_carrier(j.at("carrier").get<std::string>()), j.at("data"),
                                     j.value("dimension", p.dimension), j.value("order", 1), std::move(role));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed vector record: ") + e.what());
  }
}

/// The persistence unit: one algebra configuration and a set of named vectors.
struct Codebook {
  AlgebraParams params;
  std::map<std::string, Hypervector> vectors;

  const Hypervector& get(const std::string& name) const {
    auto it = vectors.find(name);
    if (it == vectors.end()) throw ConfigError("codebook has no vector named '" + name + "'");
    return it->second;
  }

  void put(const std::string& name, Hypervector v) {
    if (!(v.params() == params)) throw DimensionError("vector '" + name + "' belongs to a different algebra");
    vectors.insert_or_assign(name, std::move(v));
  }

  /// Item memory over the entries of the base dimension (tensors and other shapes skipped).
  ItemMemory memory() const {
    std::vector<std::pair<std::string, Hypervector>> entries;
    for (const auto& [n, v] : vectors)
      if (v.dimension() == params.dimension && v.tensor_order() == 1) entries.emplace_back(n, v);
    return ItemMemory(params, entries);
  }

  json to_json() const {
    json vs = json::object();
    for (const auto& [n, v] : vectors) vs[n] = vector_to_json(v);
    return json{{"format_version", kCodebookFormatVersion}, {"algebra", params_to_json(params)}, {"vectors", vs}};
  }

  static Codebook from_json(const json& j) {
    if (!j.is_object() || !j.contains("format_version")) throw ConfigError("codebook is missing format_version");
    if (j["format_version"] != kCodebookFormatVersion) {
      throw ConfigError("unsupported codebook format_version " + j["format_version"].dump());
    }
    if (!j.contains("algebra")) throw ConfigError("codebook is missing the algebra record");
    Codebook book{params_from_json(j["algebra"]), {}};
    if (j.contains("vectors")) {
      for (const auto& [name, v] : j["vectors"].items()) book.vectors.emplace(name, vector_from_json(book.params, v));
    }
    return book;
  }

  void save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write codebook file '" + path + "'");
    out << to_json().dump(1) << '\n';
    if (!out) throw IoError("failed writing codebook file '" + path + "'");
  }

  static Codebook load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read codebook file '" + path + "'");
    json j;
    try {
      j = json::parse(in);
    } catch (const json::parse_error& e) {
      throw ConfigError("codebook file '" + path + "' is not valid JSON: " + e.what());
    }
    return from_json(j);
  }
};

}  // namespace hyperrig
