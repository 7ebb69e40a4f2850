#include "bdsep/cli.hpp"

#include <array>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "CLI11.hpp"

#include "bdsep/criteria.hpp"
#include "bdsep/io.hpp"
#include "bdsep/search.hpp"
#include "bdsep/states.hpp"

namespace bdsep::cli {

namespace {

namespace fs = std::filesystem;

// Simplex tolerance for `bd` inputs.
constexpr double kBdInputTolerance = 1e-9;

double parse_real(std::string_view text) {
  double value = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || !std::isfinite(value)) {
    throw std::invalid_argument(fmt::format("'{}' is not a number", text));
  }
  return value;
}

int verdict_exit_code(bool separable) { return separable ? kSeparable : kEntangled; }

int cmd_check(const std::string& path, double tol, std::ostream& out, std::ostream& err) {
  BipartiteDensity rho = [&] {
    try {
      return read_state_file(path);
    } catch (const std::exception& ex) {
      fmt::print(err, "error: {}\n", ex.what());
      throw;
    }
  }();

  Json report{{"dims", {rho.dim_a(), rho.dim_b()}}};
  int code = kUndecided;
  if (ppt_is_sufficient(rho.dim_a(), rho.dim_b())) {
    const auto c = classify_2x3(rho, tol);
    report["ppt"] = to_json(c.ppt);
    report["ccnr"] = to_json(c.ccnr);
    report["classification"] = to_json(c);
    report["verdict"] = c.separable ? "separable" : "entangled";
    code = verdict_exit_code(c.separable);
  } else {
    report["ppt"] = to_json(ppt_report(rho, tol));
    report["ccnr"] = to_json(ccnr_report(rho, tol));
    report["classification"] = nullptr;
    report["verdict"] = "undecided";
  }
  out << report.dump(2) << '\n';
  return code;
}

int cmd_bd(const std::vector<std::string>& values, double tol, bool json, std::ostream& out) {
  std::array<double, kBellCount> raw{};
  for (std::size_t i = 0; i < kBellCount; ++i) raw[i] = parse_real_or_fraction(values[i]);
  const auto params = BDParams::normalized(raw, kBdInputTolerance);

  const auto residuals = bd_ppt_residuals(params);
  const auto abc = bd_abc(params);
  const double closed = bd_ccnr_closed_form(params);
  const auto c = classify_2x3(bell_decomposable(params), tol);

  if (json) {
    Json report{{"p", Json::array()},
                {"ppt_residuals", Json::array()},
                {"abc", {{"A", report_round(abc.a)}, {"B", report_round(abc.b)},
                         {"C", report_round(abc.c)}}},
                {"ccnr_closed_form", report_round(closed)},
                {"ccnr_numeric", report_round(c.ccnr.value)},
                {"min_pt_eigenvalue", report_round(c.ppt.value)},
                {"ppt", to_json(c.ppt)},
                {"ccnr", to_json(c.ccnr)},
                {"classification", to_json(c)}};
    for (double p : params.values()) report["p"].push_back(report_round(p));
    for (double r : residuals) report["ppt_residuals"].push_back(report_round(r));
    out << report.dump(2) << '\n';
  } else {
    const auto& p = params.values();
    fmt::print(out, "p                 {} {} {} {} {} {}\n", format_number(p[0]),
               format_number(p[1]), format_number(p[2]), format_number(p[3]),
               format_number(p[4]), format_number(p[5]));
    fmt::print(out, "ppt residuals     {} {} {}\n", format_number(residuals[0]),
               format_number(residuals[1]), format_number(residuals[2]));
    fmt::print(out, "A B C             {} {} {}\n", format_number(abc.a), format_number(abc.b),
               format_number(abc.c));
    fmt::print(out, "min pt eigenvalue {}\n", format_number(c.ppt.value));
    fmt::print(out, "ccnr closed form  {}\n", format_number(closed));
    fmt::print(out, "ccnr numeric      {}\n", format_number(c.ccnr.value));
    fmt::print(out, "ppt satisfied     {}\n", c.ppt.satisfied);
    fmt::print(out, "ccnr satisfied    {}\n", c.ccnr.satisfied);
    fmt::print(out, "class             {}\n", to_string(c.state_class));
  }
  return verdict_exit_code(c.separable);
}

int cmd_scan(const std::string& step_text, const std::string& out_dir, bool closed_form_only,
             bool records, std::ostream& out, std::ostream& err) {
  ScanConfig config;
  try {
    config = ScanConfig::from_step(parse_real_or_fraction(step_text));
  } catch (const std::exception& ex) {
    fmt::print(err, "error: {}\n", ex.what());
    return kUsage;
  }
  config.closed_form_only = closed_form_only;
  config.keep_records = records;

  const auto result = scan_bd_simplex(config);
  const auto summary = scan_summary_json(result);

  if (!out_dir.empty()) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    const fs::path dir(out_dir);
    std::ofstream summary_file(dir / "summary.json");
    if (ec || !summary_file) {
      fmt::print(err, "error: cannot write to {}\n", out_dir);
      return kCantCreate;
    }
    summary_file << summary.dump(2) << '\n';
    if (records) {
      std::ofstream csv(dir / "scan.csv");
      if (!csv) {
        fmt::print(err, "error: cannot write {}\n", (dir / "scan.csv").string());
        return kCantCreate;
      }
      write_scan_csv(csv, result);
    }
  } else if (records) {
    write_scan_csv(out, result);
    return 0;
  }
  out << summary.dump(2) << '\n';
  return 0;
}

int cmd_repro(double tol, bool json, std::ostream& out) {
  const auto r = reproduce_counterexample(tol);
  if (json) {
    out << to_json(r).dump(2) << '\n';
  } else {
    const auto& p = r.params.values();
    fmt::print(out, "p                 {} {} {} {} {} {}\n", format_number(p[0]),
               format_number(p[1]), format_number(p[2]), format_number(p[3]),
               format_number(p[4]), format_number(p[5]));
    fmt::print(out, "ppt residuals     {} {} {}\n", format_number(r.ppt_residuals[0]),
               format_number(r.ppt_residuals[1]), format_number(r.ppt_residuals[2]));
    fmt::print(out, "min pt eigenvalue {}\n", format_number(r.min_pt_eigenvalue));
    fmt::print(out, "ccnr closed form  {}\n", format_number(r.ccnr_closed_form));
    fmt::print(out, "ccnr numeric      {}\n", format_number(r.ccnr_numeric));
    fmt::print(out, "reproduced        {}\n", r.reproduced);
  }
  return r.reproduced ? kReproduced : kNotReproduced;
}

}  // namespace

double parse_real_or_fraction(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_real(text);
  const double num = parse_real(text.substr(0, slash));
  const double den = parse_real(text.substr(slash + 1));
  if (den == 0.0) throw std::invalid_argument(fmt::format("'{}' divides by zero", text));
  return num / den;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Separability tests (PPT and realignment) for bipartite states", "bdsep"};
  app.require_subcommand(1);

  double tol = kDefaultCriterionTol;

  std::string check_path;
  auto* check = app.add_subcommand("check", "Evaluate PPT and realignment on a state file");
  check->add_option("file", check_path, "State file {\"dims\": [a, b], \"matrix\": [[re, im], ...]}")
      ->required();
  check->add_option("--tol", tol, "Criterion tolerance")->capture_default_str();

  std::vector<std::string> bd_values;
  bool bd_json = false;
  auto* bd = app.add_subcommand("bd", "Evaluate the 2x3 Bell-decomposable state with weights p1..p6");
  bd->add_option("p", bd_values, "Six weights (decimals or fractions such as 1/6)")
      ->required()
      ->expected(6);
  bd->add_option("--tol", tol, "Criterion tolerance")->capture_default_str();
  bd->add_flag("--json", bd_json, "Print JSON");

  std::string step_text;
  std::string out_dir;
  bool closed_form_only = false;
  bool records = false;
  auto* scan = app.add_subcommand("scan", "Classify every point of a grid on the weight simplex");
  scan->add_option("--step", step_text, "Grid spacing 1/N")->required();
  scan->add_option("--out", out_dir, "Directory for summary.json (and scan.csv with --records)");
  scan->add_flag("--closed-form-only", closed_form_only, "Skip the numeric cross-check");
  scan->add_flag("--records", records,
                 "Keep per-point rows; written to DIR/scan.csv, or to stdout without --out");

  bool repro_json = false;
  auto* repro = app.add_subcommand(
      "repro",
      "Evaluate the PPT-entangled, realignment-undetected point (0.3, 0, 0.2, 0.1, 0.4, 0).\n"
      "Reproduced requires a residual below -tol, so a large tol makes the check stricter.");
  repro->add_option("--tol", tol, "Criterion tolerance")->capture_default_str();
  repro->add_flag("--json", repro_json, "Print JSON");

  std::vector<const char*> argv{"bdsep"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& ex) {
    fmt::print(err, "error: {}\n{}", ex.what(), app.help());
    return kUsage;
  }

  if (!(tol >= 0.0)) {
    fmt::print(err, "error: --tol must be non-negative\n");
    return kUsage;
  }

  try {
    if (check->parsed()) return cmd_check(check_path, tol, out, err);
    if (bd->parsed()) return cmd_bd(bd_values, tol, bd_json, out);
    if (scan->parsed()) return cmd_scan(step_text, out_dir, closed_form_only, records, out, err);
    if (repro->parsed()) return cmd_repro(tol, repro_json, out);
  } catch (const StateFileError&) {
    return kUsage;  // already reported
  } catch (const std::exception& ex) {
    fmt::print(err, "error: {}\n", ex.what());
    return kUsage;
  }
  return kUsage;
}

}  // namespace bdsep::cli
