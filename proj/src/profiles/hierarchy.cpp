#include "disperlim/profiles/hierarchy.hpp"

#include <fstream>
#include <json.hpp>

#include "disperlim/error.hpp"
#include "disperlim/spectral/fld_io.hpp"

namespace disperlim::profiles {

ProfileOptions ProfileOptions::for_speed(double V) {
  ProfileOptions o;
  o.coef = limit::LimitCoefficients::from_speed(V);
  return o;
}

bool ProfileHierarchy::has(const std::string& name) const {
  return fields.count(name) != 0 || aux.count(name) != 0;
}

const RealField& ProfileHierarchy::get(const std::string& name) const {
  if (auto it = fields.find(name); it != fields.end()) return it->second;
  if (auto it = aux.find(name); it != aux.end()) return it->second;
  throw ConfigError("profile hierarchy has no field '" + name + "'");
}

RealField& ProfileHierarchy::mutable_field(const std::string& name) {
  if (auto it = fields.find(name); it != fields.end()) return it->second;
  if (auto it = aux.find(name); it != aux.end()) return it->second;
  throw ConfigError("profile hierarchy has no field '" + name + "'");
}

std::vector<std::string> primary_field_names(int d, int order) {
  std::vector<std::string> v;
  if (d == 2) {
    v = {"n1", "u1_1", "u2_1", "phi1"};
    if (order >= 2) v.insert(v.end(), {"n2", "u1_2", "u2_2", "phi2"});
  } else {
    v = {"n1", "u1_1", "u2_1", "u3_1", "phi1", "u2_2", "u3_2", "u2_3", "u3_3"};
    if (order >= 2) v.insert(v.end(), {"n2", "u1_2", "phi2", "u2_4", "u3_4"});
  }
  return v;
}

void ProfileHierarchy::write(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  nlohmann::json m;
  m["order"] = order;
  m["d"] = d;
  m["V"] = V;
  m["T_i"] = ion_temperature();
  m["time"] = time;
  m["epsilon-independent"] = true;
  m["fields"] = nlohmann::json::object();
  m["aux"] = nlohmann::json::object();
  for (const auto& [name, f] : fields) {
    spectral::write_fld(dir / (name + ".fld"), f, name);
    m["fields"][name] = name + ".fld";
  }
  for (const auto& [name, f] : aux) {
    spectral::write_fld(dir / ("aux_" + name + ".fld"), f, name);
    m["aux"][name] = "aux_" + name + ".fld";
  }
  std::ofstream(dir / "manifest.json") << m.dump(2) << '\n';
}

ProfileHierarchy ProfileHierarchy::read(const std::filesystem::path& dir) {
  std::ifstream in(dir / "manifest.json");
  if (!in) throw ConfigError("missing hierarchy manifest '" + (dir / "manifest.json").string() + "'");
  nlohmann::json m;
  try {
    in >> m;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("bad hierarchy manifest: " + std::string(e.what()));
  }
  ProfileHierarchy h;
  try {
    h.order = m.at("order").get<int>();
    h.d = m.at("d").get<int>();
    h.V = m.at("V").get<double>();
    h.time = m.value("time", 0.0);
    for (const auto& [name, file] : m.at("fields").items()) {
      h.fields.emplace(name, spectral::read_fld(dir / file.get<std::string>()).field);
    }
    if (m.contains("aux")) {
      for (const auto& [name, file] : m["aux"].items()) {
        h.aux.emplace(name, spectral::read_fld(dir / file.get<std::string>()).field);
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("bad hierarchy manifest: " + std::string(e.what()));
  }
  if (h.order != 1 && h.order != 2) throw ConfigError("hierarchy order must be 1 or 2");
  if (h.d != 2 && h.d != 3) throw ConfigError("hierarchy dimension must be 2 or 3");
  for (const auto& name : primary_field_names(h.d, h.order)) {
    if (!h.has(name)) throw ConfigError("hierarchy is missing field '" + name + "'");
  }
  return h;
}

}  // namespace disperlim::profiles
