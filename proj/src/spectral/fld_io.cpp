#include "disperlim/spectral/fld_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <json.hpp>

#include "disperlim/error.hpp"

namespace disperlim::spectral {

static_assert(std::endian::native == std::endian::little,
              "FLD1 I/O assumes a little-endian host");

void write_fld(const std::filesystem::path& path, const RealField& f, const std::string& name) {
  const Grid& g = f.grid();
  nlohmann::json h;
  h["format"] = "FLD1";
  h["dims"] = g.dims();
  h["lengths"] = g.lengths();
  h["name"] = name;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot open '" + path.string() + "' for writing");
  out << h.dump() << '\n';
  out.write(reinterpret_cast<const char*>(f.values().data()),
            static_cast<std::streamsize>(f.size() * sizeof(double)));
  if (!out) throw ConfigError("write failed for '" + path.string() + "'");
}

NamedField read_fld(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open field file '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("'" + path.string() + "': missing header");
  nlohmann::json h;
  try {
    h = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("'" + path.string() + "': bad header: " + e.what());
  }
  if (h.value("format", "") != "FLD1") throw ConfigError("'" + path.string() + "': not FLD1");
  Grid g;
  try {
    g = Grid(h.at("dims").get<std::vector<int>>(), h.at("lengths").get<std::vector<double>>());
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("'" + path.string() + "': bad header: " + e.what());
  }

  const std::streampos start = in.tellg();
  in.seekg(0, std::ios::end);
  const auto payload = static_cast<std::size_t>(in.tellg() - start);
  const std::size_t expected = g.real_size() * sizeof(double);
  if (payload != expected) {
    throw ConfigError("'" + path.string() + "': payload has " + std::to_string(payload) +
                      " bytes, header implies " + std::to_string(expected));
  }
  in.seekg(start);
  std::vector<double> v(g.real_size());
  in.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(expected));
  if (!in) throw ConfigError("'" + path.string() + "': short read");
  return {h.value("name", ""), RealField(g, std::move(v))};
}

}  // namespace disperlim::spectral
