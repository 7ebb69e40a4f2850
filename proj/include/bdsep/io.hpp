#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "bdsep/criteria.hpp"
#include "bdsep/search.hpp"
#include "bdsep/states.hpp"

namespace bdsep {

using Json = nlohmann::ordered_json;

class StateFileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Significant digits of every number in human-facing reports.
inline constexpr int kReportDigits = 12;

/// Rounds to kReportDigits significant digits.
double report_round(double x);

/// "%.12g" rendering.
std::string format_number(double x);

// State files: {"dims": [a, b], "matrix": [[re, im], ...]} with
// (a*b)^2 pairs in row-major order. Numbers are written at full precision.
Json state_to_json(const BipartiteDensity& rho);
BipartiteDensity state_from_json(const Json& j, const DensityTolerances& tol = {});
BipartiteDensity read_state_file(const std::filesystem::path& path,
                                 const DensityTolerances& tol = {});
void write_state_file(const std::filesystem::path& path, const BipartiteDensity& rho);

Json to_json(const CriterionReport& report);
Json to_json(const Classification& c);
Json to_json(const ReproductionRecord& r);
Json to_json(const ScanRecord& r);

/// Counts, oracle statistics and extremal records.
Json scan_summary_json(const ScanResult& result);

inline constexpr const char* kScanCsvHeader =
    "p1,p2,p3,p4,p5,p6,r1,r2,r3,min_pt_eig,ccnr,class";

/// Header plus one row per retained record.
void write_scan_csv(std::ostream& out, const ScanResult& result);

}  // namespace bdsep
