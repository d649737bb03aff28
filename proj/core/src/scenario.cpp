#include "tokenmenu/scenario.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <set>
#include <stdexcept>

namespace tokenmenu {

using nlohmann::json;

namespace {

void require_keys(const json& j, std::initializer_list<const char*> allowed, const char* where) {
  if (!j.is_object()) throw std::invalid_argument(std::string(where) + ": expected an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, _] : j.items()) {
    if (!ok.count(key)) throw std::invalid_argument(std::string(where) + ": unknown key '" + key + "'");
  }
}

double number(const json& j, const char* key, const char* where) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw std::invalid_argument(std::string(where) + ": missing number '" + key + "'");
  }
  return j.at(key).get<double>();
}

json profile_json(const TaskProfile& p) {
  json out = json::array();
  for (const auto& seg : p.segments()) out.push_back({{"length", seg.length}, {"value", seg.value}});
  return out;
}

TaskProfile profile_from(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("profile: expected an array of segments");
  std::vector<Segment> segs;
  for (const auto& s : j) {
    require_keys(s, {"length", "value"}, "profile segment");
    segs.push_back({number(s, "length", "profile segment"), number(s, "value", "profile segment")});
  }
  return TaskProfile(std::move(segs));
}

json dist_json(const DistributionSpec& d) {
  if (d.kind == "uniform") return {{"kind", "uniform"}, {"lo", d.lo}, {"hi", d.hi}};
  if (d.kind == "point") return {{"kind", "point"}, {"at", d.at}};
  return {{"kind", "tabulated"}, {"grid", d.grid}, {"pdf", d.pdf}};
}

DistributionSpec dist_from(const json& j, const char* where) {
  DistributionSpec d;
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
    throw std::invalid_argument(std::string(where) + ": missing 'kind'");
  }
  d.kind = j.at("kind").get<std::string>();
  if (d.kind == "uniform") {
    require_keys(j, {"kind", "lo", "hi"}, where);
    d.lo = j.contains("lo") ? number(j, "lo", where) : 0.0;
    d.hi = j.contains("hi") ? number(j, "hi", where) : 1.0;
  } else if (d.kind == "point") {
    require_keys(j, {"kind", "at"}, where);
    d.at = number(j, "at", where);
  } else if (d.kind == "tabulated") {
    require_keys(j, {"kind", "grid", "pdf"}, where);
    d.grid = j.at("grid").get<std::vector<double>>();
    d.pdf = j.at("pdf").get<std::vector<double>>();
  } else {
    throw std::invalid_argument(std::string(where) + ": unknown distribution kind '" + d.kind + "'");
  }
  d.build();  // validates
  return d;
}

}  // namespace

std::string_view to_string(Setting s) {
  switch (s) {
    case Setting::Packages:
      return "packages";
    case Setting::Allocations:
      return "allocations";
    case Setting::Binary:
      return "binary";
  }
  return "allocations";
}

Setting setting_from_string(std::string_view s) {
  if (s == "packages") return Setting::Packages;
  if (s == "allocations") return Setting::Allocations;
  if (s == "binary") return Setting::Binary;
  throw std::invalid_argument("unknown setting '" + std::string(s) + "'");
}

ScalarDistribution DistributionSpec::build() const {
  if (kind == "uniform") return ScalarDistribution::uniform(lo, hi);
  if (kind == "point") return ScalarDistribution::point(at);
  if (kind == "tabulated") return ScalarDistribution::tabulated(grid, pdf);
  throw std::invalid_argument("unknown distribution kind '" + kind + "'");
}

Scenario uniform_symmetric(double rho, double c) {
  if (!(rho > 0.0 && rho < 1.0 / 3.0)) throw std::invalid_argument("rho must lie in (0, 1/3)");
  if (!(c > 0.0 && std::isfinite(c))) throw std::invalid_argument("c must be > 0");
  return Scenario{ProductionParams(rho, rho, rho, 1.0), CostRates(c, c, c), Setting::Allocations,
                  DistributionSpec{}, DistributionSpec{}, std::nullopt};
}

Scenario uniform_example() { return uniform_symmetric(0.25, 0.125); }

Scenario preset(std::string_view name, std::optional<double> rho, std::optional<double> c) {
  if (name == "uniform-example") return uniform_example();
  if (name == "uniform-symmetric") {
    if (!rho || !c) throw std::invalid_argument("uniform-symmetric needs rho and c");
    return uniform_symmetric(*rho, *c);
  }
  throw std::invalid_argument("unknown preset '" + std::string(name) + "'");
}

json to_json(const Scenario& s) {
  json j;
  j["production"] = {{"alpha", s.production.alpha()},
                     {"beta", s.production.beta()},
                     {"gamma", s.production.gamma()},
                     {"base", s.production.base()}};
  j["costs"] = {{"cx", s.costs.cx()}, {"cy", s.costs.cy()}, {"cz", s.costs.cz()}};
  j["setting"] = std::string(to_string(s.setting));
  j["distributions"] = {{"value", dist_json(s.value)}, {"scale", dist_json(s.scale)}};
  if (s.binary) {
    j["binary"] = {{"profile_1", profile_json(s.binary->profile_1)},
                   {"profile_2", profile_json(s.binary->profile_2)},
                   {"f_1", s.binary->f_1}};
  }
  return j;
}

namespace {

Scenario parse_scenario(const json& j) {
  require_keys(j, {"production", "costs", "setting", "distributions", "binary"}, "scenario");
  if (!j.contains("production") || !j.contains("costs")) {
    throw std::invalid_argument("scenario: 'production' and 'costs' are required");
  }
  const json& p = j.at("production");
  require_keys(p, {"alpha", "beta", "gamma", "base"}, "production");
  const json& c = j.at("costs");
  require_keys(c, {"cx", "cy", "cz"}, "costs");
  Scenario s{ProductionParams(number(p, "alpha", "production"), number(p, "beta", "production"),
                              number(p, "gamma", "production"), number(p, "base", "production")),
             CostRates(number(c, "cx", "costs"), number(c, "cy", "costs"), number(c, "cz", "costs")),
             Setting::Allocations, DistributionSpec{}, DistributionSpec{}, std::nullopt};
  if (j.contains("setting")) s.setting = setting_from_string(j.at("setting").get<std::string>());
  if (j.contains("distributions")) {
    const json& d = j.at("distributions");
    require_keys(d, {"value", "scale", "correlation"}, "distributions");
    if (d.contains("correlation") && d.at("correlation").get<double>() != 0.0) {
      throw std::invalid_argument("correlated value and scale distributions are not supported");
    }
    if (d.contains("value")) s.value = dist_from(d.at("value"), "distributions.value");
    if (d.contains("scale")) s.scale = dist_from(d.at("scale"), "distributions.scale");
  }
  if (j.contains("binary")) {
    const json& b = j.at("binary");
    require_keys(b, {"profile_1", "profile_2", "f_1"}, "binary");
    if (!b.contains("profile_1") || !b.contains("profile_2")) {
      throw std::invalid_argument("binary: both profiles are required");
    }
    const double f1 = b.contains("f_1") ? number(b, "f_1", "binary") : 0.5;
    if (!(f1 > 0.0 && f1 < 1.0)) throw std::invalid_argument("binary: f_1 must lie in (0, 1)");
    s.binary = BinaryPayload{profile_from(b.at("profile_1")), profile_from(b.at("profile_2")), f1};
  }
  if (s.setting == Setting::Binary && !s.binary) {
    throw std::invalid_argument("binary setting needs a 'binary' payload");
  }
  return s;
}

}  // namespace

Scenario scenario_from_json(const json& j) {
  try {
    return parse_scenario(j);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("scenario: ") + e.what());
  }
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open scenario file " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::invalid_argument("scenario file " + path.string() + ": " + e.what());
  }
  return scenario_from_json(j);
}

std::string canonical_json(const Scenario& s) { return to_json(s).dump(); }

std::string scenario_hash(const Scenario& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (const unsigned char ch : canonical_json(s)) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace tokenmenu
