#pragma once

// Grid exports of menus and tariffs as CSV (header row) or JSON, and the
// reverse direction for audits of saved menus.

#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "tokenmenu/audit.hpp"
#include "tokenmenu/screening.hpp"
#include "tokenmenu/tariffs.hpp"

namespace tokenmenu {

// %.15g
std::string format_number(double v);

struct PackageTable {
  std::vector<PackageItem> items;
};

struct AllocationTable {
  std::vector<AllocationItem> items;
};

using MenuTable = std::variant<PackageTable, AllocationTable>;

struct TariffRow {
  std::vector<double> index;  // theta, or (w, s)
  std::optional<TwoPartTariff> tariff;
};

struct TariffTable {
  std::vector<std::string> index_names;
  std::vector<TariffRow> rows;
};

std::string to_csv(const MenuTable& table);
nlohmann::json to_json(const MenuTable& table);
std::string to_csv(const TariffTable& table);
nlohmann::json to_json(const TariffTable& table);

// Detects the kind from the CSV header or the JSON "kind" field.
// Throws std::invalid_argument on malformed input.
MenuTable read_menu(const std::filesystem::path& path);

void write_text(const std::filesystem::path& path, const std::string& text);

std::vector<verify::PackageRow> audit_rows(const PackageTable& table);
std::vector<verify::AllocationRow> audit_rows(const AllocationTable& table);

}  // namespace tokenmenu
