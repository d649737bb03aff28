// tokenmenu: menus, tariffs and audits for token pricing scenarios.
//
// Exit status: 0 success, 1 usage or configuration error, 2 failed audit
// or reproduction check.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "tokenmenu/audit.hpp"
#include "tokenmenu/binary.hpp"
#include "tokenmenu/cost.hpp"
#include "tokenmenu/efficient.hpp"
#include "tokenmenu/menu_table.hpp"
#include "tokenmenu/scenario.hpp"
#include "tokenmenu/screening.hpp"
#include "tokenmenu/tariffs.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace tokenmenu;

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kAuditFailed = 2;
constexpr double kQuadTol = 1e-10;

struct Options {
  std::string scenario_path;
  std::string preset_name;
  std::optional<double> rho;
  std::optional<double> c;
  double tol = 1e-6;
  int grid = 0;  // 0: subcommand default
  std::string out = ".";
};

struct Run {
  Options opt;
  Scenario scenario;
  std::vector<std::string> outputs;

  void write(const std::string& name, const std::string& text) {
    write_text(fs::path(opt.out) / name, text);
    outputs.push_back(name);
  }
  int grid_or(int fallback) const { return opt.grid > 0 ? opt.grid : fallback; }
};

Scenario resolve_scenario(const Options& o) {
  if (!o.scenario_path.empty() && !o.preset_name.empty()) {
    throw std::invalid_argument("use either --scenario or --preset, not both");
  }
  if (!o.scenario_path.empty()) return load_scenario(o.scenario_path);
  return preset(o.preset_name.empty() ? "uniform-example" : o.preset_name, o.rho, o.c);
}

std::string fmt(double v) { return format_number(v); }

// Result JSON carries 15 significant digits, like the CSV outputs.
json rounded(json j) {
  if (j.is_number_float()) return std::stod(fmt(j.get<double>()));
  if (j.is_structured()) {
    for (auto& v : j) v = rounded(v);
  }
  return j;
}

std::string dump(const json& j) { return rounded(j).dump(2) + "\n"; }

void write_manifest(Run& run, const std::string& subcommand, const json& extra = json::object()) {
  json m = {{"tool", "tokenmenu"},
            {"version", TOKENMENU_VERSION},
            {"subcommand", subcommand},
            {"scenario_hash", scenario_hash(run.scenario)},
            {"scenario", to_json(run.scenario)},
            {"tolerances", {{"audit", run.opt.tol}, {"quadrature", kQuadTol}}},
            {"grid", run.opt.grid},
            {"outputs", run.outputs}};
  for (const auto& [k, v] : extra.items()) m[k] = rounded(v);
  write_text(fs::path(run.opt.out) / "manifest.json", m.dump(2) + "\n");
}

TaskProfile parse_profile(const std::string& text) {
  // "length:value,length:value,..."
  std::vector<Segment> segs;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    const std::size_t colon = item.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("profile segment needs length:value");
    segs.push_back({std::stod(item.substr(0, colon)), std::stod(item.substr(colon + 1))});
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return TaskProfile(std::move(segs));
}

PackageMenu package_menu(const Scenario& s) {
  return PackageMenu(theta_distribution(s.value.build(), s.scale.build(), s.production),
                     s.production, s.costs);
}

AllocationMenu allocation_menu(const Scenario& s) {
  return AllocationMenu(s.value.build(), s.scale.build(), s.production, s.costs);
}

std::vector<double> axis(double lo, double hi, int n) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(n == 1 ? hi : lo + (hi - lo) * i / (n - 1));
  return out;
}

// Scale grid that avoids s = 0.
std::vector<double> scale_axis(const ScalarDistribution& d, int n) {
  if (d.is_point()) return {d.point_mass()};
  auto [lo, hi] = d.support();
  if (lo <= 0.0) lo = hi / n;
  return axis(lo, hi, n);
}

json plan_json(const EfficientPlan& plan) {
  json segs = json::array();
  for (const auto& t : plan.segments) segs.push_back({{"x", t.x}, {"y", t.y}});
  return {{"z", plan.finetune}, {"X", plan.total_input}, {"Y", plan.total_output},
          {"surplus", plan.surplus}, {"segments", segs}};
}

json report_json(const verify::AuditReport& r) {
  return {{"name", r.name},         {"max_violation", r.max_violation}, {"location", r.location},
          {"samples", r.samples},   {"tolerance", r.tolerance},         {"passed", r.passed}};
}

// ---------------------------------------------------------------- commands

int cmd_efficient(Run& run, const std::string& profile_text) {
  const Scenario& s = run.scenario;
  TaskProfile profile = TaskProfile::constant(1.0);
  if (!profile_text.empty()) {
    profile = parse_profile(profile_text);
  } else if (s.binary) {
    profile = s.binary->profile_1;
  }
  const EfficientPlan plan = efficient_allocation(profile, s.production, s.costs);
  json j = plan_json(plan);
  j["theta"] = representative_type(profile, s.production).theta;
  j["threshold"] = efficient_finetune_threshold(s.production, s.costs);
  run.write("efficient.json", dump(j));
  std::cout << dump(j);
  write_manifest(run, "efficient");
  return kOk;
}

CostKind parse_kind(const std::string& kind, double scale) {
  if (kind == "floor") return WithFloor{};
  if (kind == "package") return Package{};
  if (kind == "contractible") return Contractible{scale};
  throw std::invalid_argument("--kind must be floor, contractible or package");
}

json cost_record(const CostModel& model, const std::string& kind, const CostKind& k, double q) {
  const CostBreakdown c = model.evaluate(k, q);
  return {{"kind", kind},       {"quality", q}, {"total", c.total},         {"x", c.x},
          {"y", c.y},           {"z", c.z},     {"finetuned", c.finetuned}, {"marginal", model.marginal(k, q)}};
}

int cmd_cost(Run& run, const std::string& kind, double q, double scale, bool table) {
  const CostModel model(run.scenario.production, run.scenario.costs);
  const CostKind k = parse_kind(kind, scale);
  if (table) {
    const int n = run.grid_or(64);
    std::string csv = "kind,quality,total,x,y,z,finetuned,marginal\n";
    for (int i = 0; i < n; ++i) {
      const double qi = std::pow(10.0, -3.0 + 5.0 * i / std::max(n - 1, 1));
      const json r = cost_record(model, kind, k, qi);
      csv += kind + "," + fmt(qi) + "," + fmt(r["total"]) + "," + fmt(r["x"]) + "," + fmt(r["y"]) +
             "," + fmt(r["z"]) + "," + (r["finetuned"].get<bool>() ? "1" : "0") + "," +
             fmt(r["marginal"]) + "\n";
    }
    run.write("cost.csv", csv);
  }
  const json r = cost_record(model, kind, k, q);
  run.write("cost.json", dump(r));
  std::cout << dump(r);
  write_manifest(run, "cost");
  return kOk;
}

PackageTable package_table(const PackageMenu& menu, int n) {
  PackageTable t;
  const auto [lo, hi] = menu.distribution().support();
  for (const double th : axis(lo, hi, n)) t.items.push_back(menu.item(th));
  return t;
}

AllocationTable allocation_table(const AllocationMenu& menu, int n) {
  AllocationTable t;
  const auto [wlo, whi] = menu.value_distribution().support();
  for (const double s : scale_axis(menu.scale_distribution(), n)) {
    for (const double w : axis(wlo, whi, n)) t.items.push_back(menu.item(w, s));
  }
  return t;
}

json revenue_json(const RevenueProfit& r) {
  return {{"revenue", r.revenue}, {"profit", r.profit}, {"revenue_error", r.revenue_error},
          {"profit_error", r.profit_error}};
}

int cmd_menu_packages(Run& run) {
  const PackageMenu menu = package_menu(run.scenario);
  const MenuTable table = package_table(menu, run.grid_or(200));
  run.write("menu_packages.csv", to_csv(table));
  run.write("menu_packages.json", dump(to_json(table)));
  const auto rp = revenue_profit(menu, kQuadTol);
  std::cout << "exclusion " << fmt(menu.exclusion()) << "\nfinetune_threshold "
            << fmt(menu.finetune_threshold()) << "\nrevenue " << fmt(rp.revenue) << "\nprofit "
            << fmt(rp.profit) << "\n";
  write_manifest(run, "menu-packages", {{"result", revenue_json(rp)}});
  return kOk;
}

int cmd_menu_allocations(Run& run) {
  const AllocationMenu menu = allocation_menu(run.scenario);
  const MenuTable table = allocation_table(menu, run.grid_or(40));
  run.write("menu_allocations.csv", to_csv(table));
  run.write("menu_allocations.json", dump(to_json(table)));
  const auto rp = revenue_profit(menu, kQuadTol);
  std::cout << "exclusion " << fmt(menu.exclusion()) << "\nrevenue " << fmt(rp.revenue)
            << "\nprofit " << fmt(rp.profit) << "\n";
  write_manifest(run, "menu-allocations", {{"result", revenue_json(rp)}});
  return kOk;
}

BinaryMenu binary_from(const Scenario& s) {
  if (!s.binary) throw std::invalid_argument("scenario has no 'binary' payload");
  return binary_menu(s.binary->profile_1, s.binary->profile_2, s.binary->f_1, s.production, s.costs);
}

int cmd_menu_binary(Run& run) {
  const BinaryMenu menu = binary_from(run.scenario);
  const auto rp = revenue_profit(menu, run.scenario.costs);
  json j = {{"high_label", menu.high_label},
            {"degenerate", menu.degenerate},
            {"full_surplus", menu.test.full_surplus},
            {"test_integrand", menu.test.integrand},
            {"high", {{"plan", plan_json(menu.high_item.plan)}, {"transfer", menu.high_item.transfer}}},
            {"low", {{"plan", plan_json(menu.low_item.plan)}, {"transfer", menu.low_item.transfer}}},
            {"revenue", rp.revenue},
            {"profit", rp.profit}};
  run.write("menu_binary.json", dump(j));
  std::cout << dump(j);
  write_manifest(run, "menu-binary");
  return kOk;
}

int cmd_tariffs(Run& run, std::string setting) {
  if (setting.empty()) setting = std::string(to_string(run.scenario.setting));
  TariffTable table;
  if (setting == "packages") {
    const PackageTariffs tariffs(package_menu(run.scenario));
    const auto [lo, hi] = tariffs.menu().distribution().support();
    table.index_names = {"theta"};
    for (const double th : axis(lo, hi, run.grid_or(200))) table.rows.push_back({{th}, tariffs.tariff(th)});
  } else if (setting == "allocations") {
    const AllocationTariffs tariffs(allocation_menu(run.scenario));
    const int n = run.grid_or(40);
    const auto [wlo, whi] = tariffs.menu().value_distribution().support();
    table.index_names = {"w", "s"};
    for (const double s : scale_axis(tariffs.menu().scale_distribution(), n)) {
      for (const double w : axis(wlo, whi, n)) table.rows.push_back({{w, s}, tariffs.tariff(w, s)});
    }
  } else {
    throw std::invalid_argument("--setting must be packages or allocations");
  }
  run.write("tariffs_" + setting + ".csv", to_csv(table));
  run.write("tariffs_" + setting + ".json", dump(to_json(table)));
  std::cout << "wrote " << table.rows.size() << " tariff rows\n";
  write_manifest(run, "tariffs");
  return kOk;
}

int cmd_verify_ic(Run& run, const std::string& menu_path, double perturb) {
  std::vector<verify::AuditReport> reports;
  const double tol = run.opt.tol;
  if (!menu_path.empty()) {
    MenuTable table = read_menu(menu_path);
    if (auto* p = std::get_if<PackageTable>(&table)) {
      auto rows = audit_rows(*p);
      for (auto& r : rows) r.transfer *= perturb;
      reports.push_back(verify::ic_audit(rows, tol));
      reports.push_back(verify::ir_audit(rows, tol));
    } else {
      auto rows = audit_rows(std::get<AllocationTable>(table));
      for (auto& r : rows) r.transfer *= perturb;
      reports.push_back(verify::ic_audit(rows, {}, tol));
      reports.push_back(verify::ir_audit(rows, tol));
    }
  } else if (run.scenario.setting == Setting::Packages) {
    const PackageMenu menu = package_menu(run.scenario);
    const auto [lo, hi] = menu.distribution().support();
    verify::GridAxis g{lo, hi, static_cast<std::size_t>(run.grid_or(200)),
                       {menu.exclusion(), menu.finetune_threshold()}};
    auto rows = verify::package_rows(menu, g);
    for (auto& r : rows) r.transfer *= perturb;
    reports.push_back(verify::ic_audit(rows, tol));
    reports.push_back(verify::ir_audit(rows, tol));
  } else if (run.scenario.setting == Setting::Allocations) {
    const AllocationMenu menu = allocation_menu(run.scenario);
    const int n = run.grid_or(40);
    const auto [wlo, whi] = menu.value_distribution().support();
    const auto ss = scale_axis(menu.scale_distribution(), n);
    verify::GridSpec g{{{wlo, whi, static_cast<std::size_t>(n), {menu.exclusion()}},
                        {ss.front(), ss.back() > ss.front() ? ss.back() : ss.front() + 1e-9,
                         ss.size() > 1 ? ss.size() : 2, {}}}};
    auto rows = verify::allocation_rows(menu, g);
    for (auto& r : rows) r.transfer *= perturb;
    verify::AllocationLookup lookup = [&](double w, double s) {
      const AllocationItem it = menu.item(w, s);
      return verify::AllocationRow{w, s, it.quality, it.transfer * perturb};
    };
    reports.push_back(verify::ic_audit(rows, lookup, tol));
    reports.push_back(verify::ir_audit(rows, tol));
    if (!menu.scale_distribution().is_point()) {
      reports.push_back(assumption1_check(menu, g, tol));
      reports.push_back(assumption2_check(menu, g, tol));
    }
  } else {
    const BinaryMenu menu = binary_from(run.scenario);
    reports.push_back(verify::ic_audit(menu, run.scenario.production, tol));
    reports.push_back(verify::ir_audit(menu, run.scenario.production, tol));
  }

  bool ok = true;
  json j = json::array();
  for (const auto& r : reports) {
    ok = ok && r.passed;
    j.push_back(report_json(r));
    std::printf("%-24s %s  max_violation=%s  samples=%zu\n", r.name.c_str(),
                r.passed ? "PASS" : "FAIL", fmt(r.max_violation).c_str(), r.samples);
  }
  run.write("audit.json", dump(json{{"passed", ok}, {"reports", j}}));
  write_manifest(run, "verify-ic", {{"passed", ok}});
  return ok ? kOk : kAuditFailed;
}

int cmd_reproduce(Run& run) {
  const Scenario& s = run.scenario;
  const bool known = s == uniform_example();
  bool ok = true;
  json result;
  auto line = [&](const char* setting, const char* what, double v, double err, double target,
                  const char* frac) {
    std::printf("%-12s %-8s %s", setting, what, fmt(v).c_str());
    if (known) {
      const bool hit = std::abs(v - target) <= 1e-5;
      ok = ok && hit;
      std::printf("  target %s = %s  %s", frac, fmt(target).c_str(), hit ? "ok" : "MISMATCH");
    }
    std::printf("  quad_error %s\n", fmt(err).c_str());
  };

  auto t0 = std::chrono::steady_clock::now();
  const auto ra = revenue_profit(allocation_menu(s), kQuadTol);
  const double ta = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  line("allocations", "revenue", ra.revenue, ra.revenue_error, 139.0 / 480.0, "139/480");
  line("allocations", "profit", ra.profit, ra.profit_error, 97.0 / 960.0, "97/960");

  t0 = std::chrono::steady_clock::now();
  const auto rp = revenue_profit(package_menu(s), kQuadTol);
  const double tp = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  line("packages", "revenue", rp.revenue, rp.revenue_error, 139.0 / 540.0, "139/540");
  line("packages", "profit", rp.profit, rp.profit_error, 97.0 / 1080.0, "97/1080");

  result["allocations"] = revenue_json(ra);
  result["allocations"]["seconds"] = ta;
  result["packages"] = revenue_json(rp);
  result["packages"]["seconds"] = tp;
  if (known) result["matches_known_values"] = ok;
  run.write("reproduce.json", dump(result));
  write_manifest(run, "reproduce", {{"result", result}});
  return ok ? kOk : kAuditFailed;
}

int cmd_regions(Run& run) {
  const Scenario& s = run.scenario;
  const double e = s.production.task_exponent();
  const ScalarDistribution value = s.value.build();
  const AllocationMenu alloc = allocation_menu(s);
  const PackageMenu pkg = package_menu(s);
  const double lambda_hat = alloc.cost().package_marginal(alloc.cost().threshold());

  // Allocation frontier: phi(w) = lambda_hat s^{-e}. Closed form for uniform values.
  std::function<double(double)> frontier = [&](double sc) { return alloc.frontier(sc); };
  if (value.kind() == ScalarDistribution::Kind::Uniform) {
    const double hi = value.support().second;
    frontier = [=](double sc) { return 0.5 * (hi + lambda_hat * std::pow(sc, -e)); };
  }
  const double t_excl = pkg.exclusion();
  const double t_ft = pkg.finetune_threshold();

  std::string csv = "curve,s,w\n";
  constexpr int kPoints = 256;
  auto emit = [&](const char* name, auto&& fn) {
    for (int i = 0; i < kPoints; ++i) {
      const double sc = static_cast<double>(i + 1) / kPoints;
      csv += std::string(name) + "," + fmt(sc) + "," + fmt(fn(sc)) + "\n";
    }
  };
  emit("allocations_exclusion", [&](double) { return alloc.exclusion(); });
  emit("allocations_finetune", frontier);
  emit("packages_exclusion", [&](double sc) { return t_excl * std::pow(sc, -e); });
  emit("packages_finetune", [&](double sc) { return t_ft * std::pow(sc, -e); });
  run.write("regions.csv", csv);
  std::cout << "wrote regions.csv (" << 4 * kPoints << " points)\n";
  write_manifest(run, "regions");
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Menus, two-part tariffs and incentive audits for token pricing"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("--scenario", opt.scenario_path, "Scenario JSON file")->check(CLI::ExistingFile);
  app.add_option("--preset", opt.preset_name, "Built-in scenario: uniform-example, uniform-symmetric");
  app.add_option("--rho", opt.rho, "Symmetric exponent for uniform-symmetric");
  app.add_option("--c", opt.c, "Common token cost for uniform-symmetric");
  app.add_option("--tol", opt.tol, "Audit tolerance")->check(CLI::PositiveNumber);
  app.add_option("--grid", opt.grid, "Grid points per dimension")->check(CLI::PositiveNumber);
  app.add_option("--out", opt.out, "Output directory");

  std::string profile_text;
  auto* efficient = app.add_subcommand("efficient", "Planner allocation for one profile");
  efficient->add_option("--profile", profile_text, "Segments as length:value,...");

  std::string kind = "floor";
  double quality = 1.0;
  double scale = 1.0;
  bool table = false;
  auto* cost = app.add_subcommand("cost", "Cost function value, tokens and marginal cost");
  cost->add_option("--kind", kind, "floor | contractible | package");
  cost->add_option("--q", quality, "Quality")->check(CLI::NonNegativeNumber);
  cost->add_option("--s", scale, "Scale for the contractible kind");
  cost->add_flag("--table", table, "Also write cost.csv over a log quality grid");

  auto* menu_packages = app.add_subcommand("menu-packages", "Optimal token-package menu");
  auto* menu_allocations = app.add_subcommand("menu-allocations", "Optimal token-allocation menu");
  auto* menu_binary_cmd = app.add_subcommand("menu-binary", "Two-type menu");

  std::string setting;
  auto* tariffs = app.add_subcommand("tariffs", "Two-part tariff implementation");
  tariffs->add_option("--setting", setting, "packages | allocations");

  std::string menu_path;
  double perturb = 1.0;
  auto* verify_ic = app.add_subcommand("verify-ic", "Incentive and participation audits");
  verify_ic->add_option("--menu", menu_path, "Audit a saved menu (CSV or JSON)")->check(CLI::ExistingFile);
  verify_ic->add_option("--perturb-transfers", perturb, "Multiply every transfer before auditing");

  auto* reproduce = app.add_subcommand("reproduce", "Revenue and profit of both optimal menus");
  auto* regions = app.add_subcommand("regions", "Exclusion and fine-tuning boundary curves");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    Run run{opt, resolve_scenario(opt), {}};
    if (*efficient) return cmd_efficient(run, profile_text);
    if (*cost) return cmd_cost(run, kind, quality, scale, table);
    if (*menu_packages) return cmd_menu_packages(run);
    if (*menu_allocations) return cmd_menu_allocations(run);
    if (*menu_binary_cmd) return cmd_menu_binary(run);
    if (*tariffs) return cmd_tariffs(run, setting);
    if (*verify_ic) return cmd_verify_ic(run, menu_path, perturb);
    if (*reproduce) return cmd_reproduce(run);
    if (*regions) return cmd_regions(run);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  }
  return kConfigError;
}
