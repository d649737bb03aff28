#include "tokenmenu/menu_table.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tokenmenu {

using nlohmann::json;

namespace {

const char* const kPackageHeader = "theta,quality,X,Y,Z,transfer";
const char* const kAllocationHeader = "w,s,quality,x,y,z,transfer";

std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += format_number(v[i]);
  }
  return out;
}

std::vector<double> split_numbers(const std::string& line, std::size_t expected, std::size_t lineno) {
  std::vector<double> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(cell, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0) {
      throw std::invalid_argument("menu csv line " + std::to_string(lineno) + ": bad number '" + cell + "'");
    }
    out.push_back(v);
  }
  if (out.size() != expected) {
    throw std::invalid_argument("menu csv line " + std::to_string(lineno) + ": expected " +
                                std::to_string(expected) + " columns");
  }
  return out;
}

std::string trim(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.pop_back();
  return s;
}

MenuTable read_csv(std::istream& in) {
  std::string header;
  std::getline(in, header);
  header = trim(header);
  std::string line;
  std::size_t lineno = 1;
  if (header == kPackageHeader) {
    PackageTable t;
    while (std::getline(in, line)) {
      ++lineno;
      if (trim(line).empty()) continue;
      const auto v = split_numbers(trim(line), 6, lineno);
      t.items.push_back({v[0], v[1], v[2], v[3], v[4], v[5], v[1] > 0.0});
    }
    return t;
  }
  if (header == kAllocationHeader) {
    AllocationTable t;
    while (std::getline(in, line)) {
      ++lineno;
      if (trim(line).empty()) continue;
      const auto v = split_numbers(trim(line), 7, lineno);
      t.items.push_back({v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[2] > 0.0});
    }
    return t;
  }
  throw std::invalid_argument("menu csv: unrecognized header '" + header + "'");
}

MenuTable read_json(std::istream& in) {
  json j;
  try {
    in >> j;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "packages") {
      PackageTable t;
      for (const auto& r : j.at("items")) {
        PackageItem it;
        it.theta = r.at("theta").get<double>();
        it.quality = r.at("quality").get<double>();
        it.X = r.at("X").get<double>();
        it.Y = r.at("Y").get<double>();
        it.Z = r.at("Z").get<double>();
        it.transfer = r.at("transfer").get<double>();
        it.served = it.quality > 0.0;
        t.items.push_back(it);
      }
      return t;
    }
    if (kind == "allocations") {
      AllocationTable t;
      for (const auto& r : j.at("items")) {
        AllocationItem it;
        it.value = r.at("w").get<double>();
        it.scale = r.at("s").get<double>();
        it.quality = r.at("quality").get<double>();
        it.x = r.at("x").get<double>();
        it.y = r.at("y").get<double>();
        it.z = r.at("z").get<double>();
        it.transfer = r.at("transfer").get<double>();
        it.served = it.quality > 0.0;
        t.items.push_back(it);
      }
      return t;
    }
    throw std::invalid_argument("menu json: unknown kind '" + kind + "'");
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("menu json: ") + e.what());
  }
}

}  // namespace

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

std::string to_csv(const MenuTable& table) {
  std::string out;
  if (const auto* p = std::get_if<PackageTable>(&table)) {
    out = std::string(kPackageHeader) + "\n";
    for (const auto& it : p->items) {
      out += join({it.theta, it.quality, it.X, it.Y, it.Z, it.transfer}) + "\n";
    }
  } else {
    const auto& a = std::get<AllocationTable>(table);
    out = std::string(kAllocationHeader) + "\n";
    for (const auto& it : a.items) {
      out += join({it.value, it.scale, it.quality, it.x, it.y, it.z, it.transfer}) + "\n";
    }
  }
  return out;
}

json to_json(const MenuTable& table) {
  json items = json::array();
  if (const auto* p = std::get_if<PackageTable>(&table)) {
    for (const auto& it : p->items) {
      items.push_back({{"theta", it.theta}, {"quality", it.quality}, {"X", it.X}, {"Y", it.Y},
                       {"Z", it.Z}, {"transfer", it.transfer}});
    }
    return {{"kind", "packages"}, {"items", items}};
  }
  for (const auto& it : std::get<AllocationTable>(table).items) {
    items.push_back({{"w", it.value}, {"s", it.scale}, {"quality", it.quality}, {"x", it.x},
                     {"y", it.y}, {"z", it.z}, {"transfer", it.transfer}});
  }
  return {{"kind", "allocations"}, {"items", items}};
}

std::string to_csv(const TariffTable& table) {
  std::string out;
  for (const auto& name : table.index_names) out += name + ",";
  out += "px,py,pz,p0,task_cap\n";
  for (const auto& row : table.rows) {
    out += join(row.index) + ",";
    if (row.tariff) {
      const auto& t = *row.tariff;
      out += join({t.px, t.py, t.pz, t.p0}) + "," + (t.task_cap ? format_number(*t.task_cap) : "");
    } else {
      out += ",,,,";  // excluded: no tariff offered
    }
    out += "\n";
  }
  return out;
}

json to_json(const TariffTable& table) {
  json rows = json::array();
  for (const auto& row : table.rows) {
    json r;
    for (std::size_t i = 0; i < table.index_names.size(); ++i) r[table.index_names[i]] = row.index[i];
    if (row.tariff) {
      r["px"] = row.tariff->px;
      r["py"] = row.tariff->py;
      r["pz"] = row.tariff->pz;
      r["p0"] = row.tariff->p0;
      r["task_cap"] = row.tariff->task_cap ? json(*row.tariff->task_cap) : json(nullptr);
    } else {
      r["excluded"] = true;
    }
    rows.push_back(r);
  }
  return {{"index", table.index_names}, {"rows", rows}};
}

MenuTable read_menu(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open menu file " + path.string());
  if (path.extension() == ".json") return read_json(in);
  return read_csv(in);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

std::vector<verify::PackageRow> audit_rows(const PackageTable& table) {
  std::vector<verify::PackageRow> rows;
  for (const auto& it : table.items) rows.push_back({it.theta, it.quality, it.transfer});
  return rows;
}

std::vector<verify::AllocationRow> audit_rows(const AllocationTable& table) {
  std::vector<verify::AllocationRow> rows;
  for (const auto& it : table.items) rows.push_back({it.value, it.scale, it.quality, it.transfer});
  return rows;
}

}  // namespace tokenmenu
