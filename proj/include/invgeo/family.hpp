#pragma once

#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "invgeo/oracle.hpp"

namespace invgeo {

// An instantiated family: the oracle plus any generators named by the
// descriptor (only the `generated` family carries some).
struct FamilyInstance {
  std::shared_ptr<SemigroupOracle> oracle;
  std::vector<Element> generators;
};

namespace detail {

inline std::shared_ptr<ConcreteSemigroup> concrete_from_json(const nlohmann::json& j,
                                                             const std::string& name) {
  if (!j.contains("product") || !j.contains("inverse"))
    throw validation_error("family descriptor: concrete table needs 'product' and 'inverse'");
  std::vector<std::vector<int>> product = j.at("product").get<std::vector<std::vector<int>>>();
  std::vector<int> inverse = j.at("inverse").get<std::vector<int>>();
  return std::make_shared<ConcreteSemigroup>(name, product, inverse);
}

inline std::shared_ptr<ConcreteSemigroup> group_from_json(const nlohmann::json& j) {
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s.size() > 1 && (s[0] == 'Z' || s[0] == 'z')) {
      int n = std::stoi(s.substr(1));
      if (n < 1) throw validation_error("family descriptor: cyclic group order must be >= 1");
      return ConcreteSemigroup::cyclic_group(n);
    }
    throw validation_error("family descriptor: unknown group shorthand '" + s + "'");
  }
  return concrete_from_json(j, "group");
}

}  // namespace detail

// Builds an oracle from a JSON family descriptor. Accepted forms:
//   {"family": "symmetric_inverse_monoid", "n": 3}
//   {"family": "bicyclic"}
//   {"family": "fim1"}
//   {"family": "chain", "length": 10}            (-1 or "N" for the infinite chain)
//   {"family": "product", "group": "Z2" | {table}, "chain": "N" | length}
//   {"family": "concrete", "product": [[..]], "inverse": [..]}
//   {"family": "generated", "ground_size": 4, "generators": [[[s,t],..],..]}
inline FamilyInstance make_family(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("family"))
    throw validation_error("family descriptor: missing 'family' tag");
  std::string tag = j.at("family").get<std::string>();
  FamilyInstance fam;

  if (tag == "symmetric_inverse_monoid") {
    if (!j.contains("n")) throw validation_error("family descriptor: missing 'n'");
    int n = j.at("n").get<int>();
    if (n < 1) throw validation_error("family descriptor: n must be >= 1");
    fam.oracle = std::make_shared<SymmetricInverseMonoid>(n);
    return fam;
  }
  if (tag == "bicyclic") {
    fam.oracle = std::make_shared<BicyclicMonoid>();
    return fam;
  }
  if (tag == "fim1") {
    fam.oracle = std::make_shared<FreeInverseMonoid1>();
    return fam;
  }
  if (tag == "chain") {
    std::int64_t len = -1;
    if (j.contains("length") && !j.at("length").is_string())
      len = j.at("length").get<std::int64_t>();
    fam.oracle = std::make_shared<ChainSemilattice>(len);
    return fam;
  }
  if (tag == "product") {
    if (!j.contains("group")) throw validation_error("family descriptor: product needs 'group'");
    auto group = detail::group_from_json(j.at("group"));
    std::int64_t chain_len = -1;
    if (j.contains("chain") && !j.at("chain").is_string())
      chain_len = j.at("chain").get<std::int64_t>();
    fam.oracle = std::make_shared<GroupChainProduct>(group, chain_len);
    return fam;
  }
  if (tag == "concrete") {
    fam.oracle = detail::concrete_from_json(j, "concrete");
    return fam;
  }
  if (tag == "generated") {
    if (!j.contains("ground_size") || !j.contains("generators"))
      throw validation_error("family descriptor: generated needs 'ground_size' and 'generators'");
    int n = j.at("ground_size").get<int>();
    if (n < 1) throw validation_error("family descriptor: ground_size must be >= 1");
    auto monoid = std::make_shared<SymmetricInverseMonoid>(n);
    fam.oracle = monoid;
    for (auto& g : j.at("generators")) {
      std::vector<std::pair<int, int>> pairs;
      for (auto& p : g) {
        if (!p.is_array() || p.size() != 2)
          throw validation_error("family descriptor: generator pairs must be [source, target]");
        pairs.push_back({p[0].get<int>(), p[1].get<int>()});
      }
      fam.generators.push_back(monoid->from_pairs(pairs));
    }
    return fam;
  }
  throw validation_error("family descriptor: unknown family '" + tag + "'");
}

// Shorthand tags used by the CLI: I2..I9, bicyclic, fim1, or z<k>chain.
inline FamilyInstance make_family_shorthand(const std::string& name) {
  if (name.size() >= 2 && (name[0] == 'I' || name[0] == 'i')) {
    nlohmann::json j = {{"family", "symmetric_inverse_monoid"}, {"n", std::stoi(name.substr(1))}};
    return make_family(j);
  }
  if (name == "bicyclic") return make_family({{"family", "bicyclic"}});
  if (name == "fim1") return make_family({{"family", "fim1"}});
  if (name.size() > 6 && (name[0] == 'z' || name[0] == 'Z') &&
      name.substr(name.size() - 5) == "chain") {
    int k = std::stoi(name.substr(1, name.size() - 6));
    nlohmann::json j = {{"family", "product"}, {"group", "Z" + std::to_string(k)}, {"chain", "N"}};
    return make_family(j);
  }
  throw validation_error("unknown family shorthand '" + name + "'");
}

}  // namespace invgeo
