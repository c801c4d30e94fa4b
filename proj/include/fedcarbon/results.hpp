#pragma once

#include <string>
#include <vector>

#include "fedcarbon/common.hpp"

namespace fedcarbon {

// One output row: the experiment point and its energy/carbon figures.
// loss_final is NaN and target_reached -1 for closed-form rows.
struct ResultRow {
  Scheme scheme = Scheme::CL;
  long long n = 0;
  int k_total = 0;
  int k_active = 0;
  int neighbors = 0;
  double ee_u = 0.0;
  double ee_d = 0.0;
  double ee_m = 0.0;
  double energy_compute_j = 0.0;
  double energy_comm_j = 0.0;
  double energy_total_j = 0.0;
  double carbon_comm_g = 0.0;
  double carbon_compute_g = 0.0;
  double carbon_total_g = 0.0;
  double loss_final = 0.0;
  int target_reached = -1;  // 1 / 0 / -1 = not applicable
  double kg_per_year = 0.0;
};

// Fixed column order; floats at 6 significant digits; byte-deterministic.
extern const char* const kResultCsvHeader;

std::string format_results_csv(const std::vector<ResultRow>& rows);
std::string format_results_jsonl(const std::vector<ResultRow>& rows);

// Writes rows to `path` ("-" = stdout) in the requested format
// ("csv" or "jsonl"). Throws on empty rows, unknown format or an
// unwritable path.
void emit_results(const std::vector<ResultRow>& rows, const std::string& format,
                  const std::string& path);

// Parses a CSV produced by format_results_csv (used for round-trip checks).
std::vector<ResultRow> parse_results_csv(const std::string& text);

}  // namespace fedcarbon
