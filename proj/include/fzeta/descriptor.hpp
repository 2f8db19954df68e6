#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fzeta/catalog.hpp"
#include "fzeta/errors.hpp"

namespace fzeta {

// JSON descriptor schema (version 1): see data/catalog.json. User files
// may override parameters of the built-in shapes or add spray/Steiner
// entries with explicit coefficient lists.
inline nlohmann::json descriptor_to_json(const RfdDescriptor& e) {
  nlohmann::json j;
  j["name"] = e.name;
  j["kind"] = to_string(e.kind);
  j["ambient_dim"] = e.ambient_dim;
  j["params"] = e.params;
  j["delta"] = e.delta;
  j["omega_volume"] = e.omega_volume;
  j["boundary_volume"] = e.boundary_volume;
  j["delta_cover"] = e.delta_cover;
  j["upper_dimension"] = e.upper_dimension;
  j["validity_t_max"] = std::isfinite(e.validity_t_max)
                            ? nlohmann::json(e.validity_t_max)
                            : nlohmann::json();
  j["whole_set"] = e.whole_set;
  j["languidity"] = {{"kappa", e.languidity.kappa},
                     {"strong", e.languidity.strong},
                     {"scale_lambda", e.languidity.scale_lambda}};
  if (e.languidity.B_constant)
    j["languidity"]["B"] = *e.languidity.B_constant;
  return j;
}

inline RfdDescriptor descriptor_from_json(const nlohmann::json& j) {
  RfdDescriptor e;
  e.name = j.at("name").get<std::string>();
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "fractal_string") e.kind = RfdDescriptor::Kind::fractal_string;
  else if (kind == "self_similar_spray") e.kind = RfdDescriptor::Kind::self_similar_spray;
  else if (kind == "planar_set") e.kind = RfdDescriptor::Kind::planar_set;
  else if (kind == "steiner_set") e.kind = RfdDescriptor::Kind::steiner_set;
  else throw UsageError("bad-descriptor", "unknown kind '" + kind + "'");
  e.ambient_dim = j.at("ambient_dim").get<int>();
  if (j.contains("params"))
    for (auto it = j["params"].begin(); it != j["params"].end(); ++it)
      e.params[it.key()] = it.value().get<double>();
  e.delta = j.at("delta").get<double>();
  e.omega_volume = j.at("omega_volume").get<double>();
  e.boundary_volume = j.value("boundary_volume", e.omega_volume);
  e.delta_cover = j.value("delta_cover", e.delta);
  e.upper_dimension = j.value("upper_dimension", 0.0);
  if (j.contains("validity_t_max") && !j["validity_t_max"].is_null())
    e.validity_t_max = j["validity_t_max"].get<double>();
  e.whole_set = j.value("whole_set", false);
  if (j.contains("languidity")) {
    const auto& l = j["languidity"];
    e.languidity.kappa = l.value("kappa", 0.0);
    e.languidity.strong = l.value("strong", false);
    e.languidity.scale_lambda = l.value("scale_lambda", 1.0);
    if (l.contains("B")) e.languidity.B_constant = l["B"].get<double>();
  }
  return e;
}

inline std::string catalog_json_text() {
  nlohmann::json j;
  j["version"] = 1;
  j["entries"] = nlohmann::json::array();
  for (const auto& e : catalog()) j["entries"].push_back(descriptor_to_json(e));
  return j.dump(2) + "\n";
}

inline std::vector<RfdDescriptor> load_catalog_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("io-error", "cannot open " + path);
  nlohmann::json j;
  in >> j;
  if (j.value("version", 0) != 1)
    throw UsageError("bad-descriptor", "unsupported catalog version");
  std::vector<RfdDescriptor> out;
  for (const auto& je : j.at("entries")) out.push_back(descriptor_from_json(je));
  return out;
}

}  // namespace fzeta
