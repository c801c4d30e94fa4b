#include "fedcarbon/results.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "fedcarbon/units.hpp"

namespace fedcarbon {

const char* const kResultCsvHeader =
    "scheme,n,K,K_a,N,ee_u,ee_d,ee_m,energy_compute_j,energy_comm_j,energy_total_j,"
    "carbon_comm_g,carbon_compute_g,carbon_total_g,loss_final,target_reached,kg_per_year";

namespace {

std::string reached_str(int reached) {
  return reached < 0 ? "na" : (reached ? "true" : "false");
}

void append_row_csv(std::string& out, const ResultRow& r) {
  out += to_string(r.scheme);
  out += ',';
  out += std::to_string(r.n);
  out += ',';
  out += std::to_string(r.k_total);
  out += ',';
  out += std::to_string(r.k_active);
  out += ',';
  out += std::to_string(r.neighbors);
  for (double v : {r.ee_u, r.ee_d, r.ee_m, r.energy_compute_j, r.energy_comm_j,
                   r.energy_total_j, r.carbon_comm_g, r.carbon_compute_g,
                   r.carbon_total_g, r.loss_final}) {
    out += ',';
    out += format_sig(v, 6);
  }
  out += ',';
  out += reached_str(r.target_reached);
  out += ',';
  out += format_sig(r.kg_per_year, 6);
  out += '\n';
}

}  // namespace

std::string format_results_csv(const std::vector<ResultRow>& rows) {
  std::string out = kResultCsvHeader;
  out += '\n';
  for (const ResultRow& r : rows) append_row_csv(out, r);
  return out;
}

std::string format_results_jsonl(const std::vector<ResultRow>& rows) {
  // Hand-rolled so numbers carry exactly the CSV's 6-significant-digit form.
  std::string out;
  for (const ResultRow& r : rows) {
    std::ostringstream os;
    os << "{\"scheme\":\"" << to_string(r.scheme) << "\",\"n\":" << r.n
       << ",\"K\":" << r.k_total << ",\"K_a\":" << r.k_active << ",\"N\":" << r.neighbors
       << ",\"ee_u\":" << format_sig(r.ee_u) << ",\"ee_d\":" << format_sig(r.ee_d)
       << ",\"ee_m\":" << format_sig(r.ee_m)
       << ",\"energy_compute_j\":" << format_sig(r.energy_compute_j)
       << ",\"energy_comm_j\":" << format_sig(r.energy_comm_j)
       << ",\"energy_total_j\":" << format_sig(r.energy_total_j)
       << ",\"carbon_comm_g\":" << format_sig(r.carbon_comm_g)
       << ",\"carbon_compute_g\":" << format_sig(r.carbon_compute_g)
       << ",\"carbon_total_g\":" << format_sig(r.carbon_total_g) << ",\"loss_final\":";
    if (std::isfinite(r.loss_final))
      os << format_sig(r.loss_final);
    else
      os << "null";
    os << ",\"target_reached\":";
    if (r.target_reached < 0)
      os << "null";
    else
      os << (r.target_reached ? "true" : "false");
    os << ",\"kg_per_year\":" << format_sig(r.kg_per_year) << "}\n";
    out += os.str();
  }
  return out;
}

void emit_results(const std::vector<ResultRow>& rows, const std::string& format,
                  const std::string& path) {
  if (rows.empty()) throw std::invalid_argument("emit_results: no rows to write");
  std::string text;
  if (format == "csv")
    text = format_results_csv(rows);
  else if (format == "jsonl")
    text = format_results_jsonl(rows);
  else
    throw std::invalid_argument("emit_results: unknown format \"" + format + "\"");

  if (path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("emit_results: cannot open for writing: " + path);
  out << text;
  out.flush();
  if (!out) throw std::runtime_error("emit_results: write failed: " + path);
}

std::vector<ResultRow> parse_results_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("results csv: empty input");
  if (line != kResultCsvHeader) throw std::runtime_error("results csv: unexpected header");

  std::vector<ResultRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ls(line);
    while (std::getline(ls, field, ',')) fields.push_back(field);
    if (fields.size() != 17) throw std::runtime_error("results csv: bad field count");
    ResultRow r;
    const auto scheme = scheme_from_string(fields[0]);
    if (!scheme) throw std::runtime_error("results csv: bad scheme");
    r.scheme = *scheme;
    r.n = std::stoll(fields[1]);
    r.k_total = std::stoi(fields[2]);
    r.k_active = std::stoi(fields[3]);
    r.neighbors = std::stoi(fields[4]);
    r.ee_u = std::stod(fields[5]);
    r.ee_d = std::stod(fields[6]);
    r.ee_m = std::stod(fields[7]);
    r.energy_compute_j = std::stod(fields[8]);
    r.energy_comm_j = std::stod(fields[9]);
    r.energy_total_j = std::stod(fields[10]);
    r.carbon_comm_g = std::stod(fields[11]);
    r.carbon_compute_g = std::stod(fields[12]);
    r.carbon_total_g = std::stod(fields[13]);
    r.loss_final = fields[14] == "nan" ? std::nan("") : std::stod(fields[14]);
    r.target_reached = fields[15] == "na" ? -1 : (fields[15] == "true" ? 1 : 0);
    r.kg_per_year = std::stod(fields[16]);
    rows.push_back(r);
  }
  return rows;
}

}  // namespace fedcarbon
