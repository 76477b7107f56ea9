#include "eigenbound/curve_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace eigenbound {

CurveAtlas parse_curve(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("curve JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("components"))
    throw std::invalid_argument("curve JSON: required keys are \"n\" and \"components\"");
  int n = doc["n"].get<int>();
  const auto& comps = doc["components"];
  if (!comps.is_array() || static_cast<int>(comps.size()) != n + 1)
    throw std::invalid_argument("curve JSON: \"components\" must hold n+1 coefficient lists");

  std::vector<Polynomial> polys;
  polys.reserve(comps.size());
  for (const auto& comp : comps) {
    if (!comp.is_array()) throw std::invalid_argument("curve JSON: component must be an array");
    std::vector<Complex> coeffs;
    coeffs.reserve(comp.size());
    for (const auto& pair : comp) {
      if (!pair.is_array() || pair.size() != 2)
        throw std::invalid_argument("curve JSON: coefficient must be [re, im]");
      coeffs.emplace_back(pair[0].get<double>(), pair[1].get<double>());
    }
    polys.emplace_back(std::move(coeffs));
  }
  std::string name = doc.value("name", std::string());
  return CurveAtlas(std::move(polys), std::move(name));
}

CurveAtlas load_curve(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("load_curve: cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_curve(buffer.str());
}

std::string curve_to_json(const CurveAtlas& atlas) {
  nlohmann::json doc;
  doc["n"] = atlas.dimension();
  nlohmann::json comps = nlohmann::json::array();
  for (const auto& poly : atlas.chart(0).components()) {
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& c : poly.coeffs()) coeffs.push_back({c.real(), c.imag()});
    comps.push_back(std::move(coeffs));
  }
  doc["components"] = std::move(comps);
  if (!atlas.name().empty()) doc["name"] = atlas.name();
  return doc.dump(2);
}

}  // namespace eigenbound
