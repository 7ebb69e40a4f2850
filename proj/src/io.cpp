#include "bdsep/io.hpp"

#include <cmath>
#include <fstream>
#include <ostream>

#include <fmt/format.h>

namespace bdsep {

double report_round(double x) {
  if (!std::isfinite(x) || x == 0.0) return x;
  return std::stod(fmt::format("{:.{}g}", x, kReportDigits));
}

std::string format_number(double x) { return fmt::format("{:.{}g}", x, kReportDigits); }

Json state_to_json(const BipartiteDensity& rho) {
  Json matrix = Json::array();
  for (const auto& z : rho.matrix().entries()) matrix.push_back({z.real(), z.imag()});
  return Json{{"dims", {rho.dim_a(), rho.dim_b()}}, {"matrix", std::move(matrix)}};
}

BipartiteDensity state_from_json(const Json& j, const DensityTolerances& tol) {
  if (!j.is_object()) throw StateFileError("state file: top level must be an object");
  if (!j.contains("dims") || !j["dims"].is_array() || j["dims"].size() != 2) {
    throw StateFileError("state file: \"dims\" must be an array [dim_a, dim_b]");
  }
  std::size_t dims[2];
  for (int i = 0; i < 2; ++i) {
    const auto& d = j["dims"][i];
    if (!d.is_number_integer() || d.get<long long>() < 1) {
      throw StateFileError("state file: dims must be positive integers");
    }
    dims[i] = d.get<std::size_t>();
  }
  const std::size_t n = dims[0] * dims[1];
  if (!j.contains("matrix") || !j["matrix"].is_array()) {
    throw StateFileError("state file: \"matrix\" must be an array of [re, im] pairs");
  }
  const auto& m = j["matrix"];
  if (m.size() != n * n) {
    throw StateFileError(fmt::format("state file: expected {} matrix entries for dims ({}, {}), got {}",
                                     n * n, dims[0], dims[1], m.size()));
  }
  std::vector<Complex> entries;
  entries.reserve(n * n);
  for (std::size_t i = 0; i < m.size(); ++i) {
    const auto& e = m[i];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      throw StateFileError(fmt::format("state file: entry {} is not an [re, im] pair", i));
    }
    entries.emplace_back(e[0].get<double>(), e[1].get<double>());
  }
  try {
    return BipartiteDensity(dims[0], dims[1], ComplexMatrix(n, n, std::move(entries)), tol);
  } catch (const std::exception& ex) {
    throw StateFileError(fmt::format("state file: {}", ex.what()));
  }
}

BipartiteDensity read_state_file(const std::filesystem::path& path, const DensityTolerances& tol) {
  std::ifstream in(path);
  if (!in) throw StateFileError(fmt::format("cannot read state file {}", path.string()));
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& ex) {
    throw StateFileError(fmt::format("state file {}: invalid JSON: {}", path.string(), ex.what()));
  }
  return state_from_json(j, tol);
}

void write_state_file(const std::filesystem::path& path, const BipartiteDensity& rho) {
  std::ofstream out(path);
  if (!out) throw StateFileError(fmt::format("cannot write state file {}", path.string()));
  out << state_to_json(rho).dump(2) << '\n';
}

Json to_json(const CriterionReport& report) {
  Json witness = Json::object();
  for (const auto& w : report.witness) witness[w.name] = report_round(w.value);
  return Json{{"criterion", to_string(report.criterion)},
              {"value", report_round(report.value)},
              {"satisfied", report.satisfied},
              {"tolerance", report.tolerance},
              {"boundary", report.boundary()},
              {"witness", std::move(witness)}};
}

Json to_json(const Classification& c) {
  return Json{{"separable", c.separable},
              {"ccnr_blind", c.ccnr_blind},
              {"class", to_string(c.state_class)}};
}

namespace {

Json rounded_array(const auto& values) {
  Json arr = Json::array();
  for (double v : values) arr.push_back(report_round(v));
  return arr;
}

}  // namespace

Json to_json(const ReproductionRecord& r) {
  return Json{{"p", rounded_array(r.params.values())},
              {"ppt_residuals", rounded_array(r.ppt_residuals)},
              {"min_pt_eigenvalue", report_round(r.min_pt_eigenvalue)},
              {"ccnr_closed_form", report_round(r.ccnr_closed_form)},
              {"ccnr_numeric", report_round(r.ccnr_numeric)},
              {"reproduced", r.reproduced}};
}

Json to_json(const ScanRecord& r) {
  return Json{{"p", rounded_array(r.params.values())},
              {"residuals", rounded_array(r.residuals)},
              {"min_pt_eig", report_round(r.min_pt_eig)},
              {"ccnr", report_round(r.ccnr)},
              {"class", to_string(r.state_class)}};
}

Json scan_summary_json(const ScanResult& result) {
  Json counts = Json::object();
  for (std::size_t c = 0; c < result.counts.size(); ++c)
    counts[std::string(to_string(static_cast<StateClass>(c)))] = result.counts[c];

  Json extremal = Json::array();
  for (const auto& e : result.extremal) {
    extremal.push_back(Json{{"class", to_string(e.state_class)},
                            {"metric", e.metric},
                            {"record", to_json(e.record)}});
  }

  Json summary{{"step", fmt::format("1/{}", result.divisions)},
               {"total_points", result.total_points},
               {"counts", std::move(counts)},
               {"extremal", std::move(extremal)}};
  if (result.oracle.checked) {
    const auto& o = result.oracle;
    summary["oracle"] = Json{{"max_ccnr_discrepancy", report_round(o.max_ccnr_discrepancy)},
                             {"max_singular_value_discrepancy",
                              report_round(o.max_singular_value_discrepancy)},
                             {"max_pt_eig_discrepancy", report_round(o.max_pt_eig_discrepancy)},
                             {"ccnr_disagreements", o.ccnr_disagreements},
                             {"ppt_sign_disagreements", o.ppt_sign_disagreements},
                             {"class_disagreements", o.class_disagreements}};
  } else {
    summary["oracle"] = nullptr;
  }
  return summary;
}

void write_scan_csv(std::ostream& out, const ScanResult& result) {
  out << kScanCsvHeader << '\n';
  for (const auto& r : result.records) {
    for (double p : r.params.values()) out << format_number(p) << ',';
    for (double x : r.residuals) out << format_number(x) << ',';
    out << format_number(r.min_pt_eig) << ',' << format_number(r.ccnr) << ','
        << to_string(r.state_class) << '\n';
  }
}

}  // namespace bdsep
