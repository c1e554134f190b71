#include "scenario.hpp"

#include <cmath>
#include <fstream>

#include "umbilic/errors.hpp"

namespace umbilic::cli {

namespace {

using nlohmann::json;

const char* const kKnownProfiles[] = {"k", "k_g", "a", "b", "tau"};

double number_field(const json& obj, const char* key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw ConfigError(where + ": missing field '" + key + "'");
  if (!it->is_number()) throw ConfigError(where + ": field '" + key + "' must be a number");
  return it->get<double>();
}

ScalarProfile parse_profile(const json& node, const std::string& where) {
  if (node.is_number()) return ScalarProfile::constant(node.get<double>());
  if (!node.is_object()) throw ConfigError(where + ": expected a number or {kind, coeffs}");
  const auto kind = node.find("kind");
  if (kind == node.end() || !kind->is_string()) throw ConfigError(where + ": missing field 'kind'");
  const auto coeffs_node = node.find("coeffs");
  if (coeffs_node == node.end() || !coeffs_node->is_array()) {
    throw ConfigError(where + ": missing field 'coeffs'");
  }
  std::vector<double> coeffs;
  for (const auto& c : *coeffs_node) {
    if (!c.is_number()) throw ConfigError(where + ".coeffs: entries must be numbers");
    coeffs.push_back(c.get<double>());
  }
  try {
    const std::string k = kind->get<std::string>();
    if (k == "polynomial") return ScalarProfile::polynomial(std::move(coeffs));
    if (k == "fourier") {
      return ScalarProfile::fourier(number_field(node, "period", where), std::move(coeffs));
    }
    if (k == "constant" && coeffs.size() == 1) return ScalarProfile::constant(coeffs[0]);
    throw ConfigError(where + ".kind: unknown profile kind '" + k + "'");
  } catch (const InvalidArgument& e) {
    throw ConfigError(where + ": " + e.what());
  }
}

}  // namespace

const ScalarProfile& Scenario::profile(const std::string& key) const {
  const auto it = profiles.find(key);
  if (it == profiles.end()) throw ConfigError("scenario '" + name + "': missing profile '" + key + "'");
  return it->second;
}

UmbilicSurfaceSpec Scenario::surface() const {
  SurfaceProfiles p{profile("k"), profile("k_g"), profile("a"),
                    has("b") ? profile("b") : ScalarProfile::constant(0.0)};
  SurfaceOptions opt;
  opt.closed = closed;
  opt.u_begin = u_begin;
  opt.frame_step = frame_step;
  opt.v_max = v_max;
  try {
    return make_surface(l, std::move(p), opt);
  } catch (const InvalidArgument& e) {
    throw ConfigError("scenario '" + name + "': " + e.what());
  }
}

Scenario parse_scenario(const json& doc, const std::string& fallback_name) {
  if (!doc.is_object()) throw ConfigError("scenario: top level must be an object");
  Scenario s;
  s.name = doc.value("name", fallback_name);
  if (s.name.empty() || s.name.find('/') != std::string::npos) {
    throw ConfigError("scenario: 'name' must be a non-empty file-name-safe string");
  }
  s.l = number_field(doc, "l", "scenario");
  if (!(s.l > 0)) throw ConfigError("scenario: 'l' must be positive");
  if (doc.contains("closed")) {
    if (!doc["closed"].is_boolean()) throw ConfigError("scenario: 'closed' must be true or false");
    s.closed = doc["closed"].get<bool>();
  }
  if (doc.contains("u_begin")) s.u_begin = number_field(doc, "u_begin", "scenario");
  if (doc.contains("frame_step")) s.frame_step = number_field(doc, "frame_step", "scenario");

  const auto profiles = doc.find("profiles");
  if (profiles == doc.end() || !profiles->is_object()) throw ConfigError("scenario: missing field 'profiles'");
  for (const auto& [key, node] : profiles->items()) {
    bool known = false;
    for (const char* k : kKnownProfiles) known = known || key == k;
    if (!known) throw ConfigError("scenario: unknown profile '" + key + "'");
    ScalarProfile p = parse_profile(node, "profiles." + key);
    if (s.closed && p.kind() == ProfileKind::fourier &&
        std::abs(p.period() - s.l) > 1e-12 * s.l) {
      throw ConfigError("profiles." + key + ": period must equal l for a closed scenario");
    }
    s.profiles.emplace(key, std::move(p));
  }

  if (const auto strip = doc.find("strip"); strip != doc.end()) {
    if (!strip->is_object()) throw ConfigError("scenario: 'strip' must be an object");
    if (strip->contains("v_max")) s.v_max = number_field(*strip, "v_max", "strip");
  }
  if (const auto tol = doc.find("tolerances"); tol != doc.end()) {
    if (!tol->is_object()) throw ConfigError("scenario: 'tolerances' must be an object");
    if (tol->contains("jet")) s.tolerances.jet = number_field(*tol, "jet", "tolerances");
    if (tol->contains("closure")) s.tolerances.closure = number_field(*tol, "closure", "tolerances");
  }
  return s;
}

Scenario load_scenario(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open scenario file '" + file.string() + "'");
  json doc;
  try {
    doc = json::parse(in, nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw ConfigError("scenario file '" + file.string() + "': " + e.what());
  }
  return parse_scenario(doc, file.stem().string());
}

}  // namespace umbilic::cli
