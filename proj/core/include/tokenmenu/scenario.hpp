#pragma once

// Scenario files: production, costs, type distributions, and the setting to
// solve. Serialized as JSON; the canonical form (sorted keys, shortest
// round-trip numbers) is what gets hashed.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "tokenmenu/distribution.hpp"
#include "tokenmenu/model.hpp"

namespace tokenmenu {

enum class Setting { Packages, Allocations, Binary };

std::string_view to_string(Setting s);
Setting setting_from_string(std::string_view s);

struct DistributionSpec {
  std::string kind = "uniform";  // uniform | point | tabulated
  double lo = 0.0;
  double hi = 1.0;
  double at = 1.0;
  std::vector<double> grid;
  std::vector<double> pdf;

  ScalarDistribution build() const;
  friend bool operator==(const DistributionSpec&, const DistributionSpec&) = default;
};

struct BinaryPayload {
  TaskProfile profile_1;
  TaskProfile profile_2;
  double f_1 = 0.5;

  friend bool operator==(const BinaryPayload&, const BinaryPayload&) = default;
};

struct Scenario {
  ProductionParams production;
  CostRates costs;
  Setting setting = Setting::Allocations;
  DistributionSpec value;
  DistributionSpec scale;
  std::optional<BinaryPayload> binary;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

// alpha = beta = gamma = rho in (0, 1/3), all token costs c, base 1,
// independent uniform value and scale.
Scenario uniform_symmetric(double rho, double c);
// uniform_symmetric(1/4, 1/8).
Scenario uniform_example();
// "uniform-example" or "uniform-symmetric" (rho and c required for the latter).
Scenario preset(std::string_view name, std::optional<double> rho = std::nullopt,
                std::optional<double> c = std::nullopt);

nlohmann::json to_json(const Scenario& s);
// Throws std::invalid_argument on schema errors, unknown keys, or
// correlated value and scale.
Scenario scenario_from_json(const nlohmann::json& j);
Scenario load_scenario(const std::filesystem::path& path);

std::string canonical_json(const Scenario& s);
// FNV-1a 64 of the canonical JSON, as 16 hex digits.
std::string scenario_hash(const Scenario& s);

}  // namespace tokenmenu
