#include "io/diagnostics_csv.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>

namespace hvbk {

namespace {

// Column order of the file format.
constexpr const char* kNames[kCsvColumns] = {
    "t",           "energy",         "diss_n",         "diss_s",        "fric_diss",
    "enstrophy",   "palinstrophy_n", "palinstrophy_s", "enstrophy_rhs", "residual_energy",
    "residual_enstrophy", "bkm_integrand", "bkm_integral", "hm_n",      "hm_s",
    "linf_wn",     "linf_ws",        "linf_du",        "momentum_x",    "momentum_y"};

double DiagnosticsRecord::*const kFields[kCsvColumns] = {
    &DiagnosticsRecord::t,
    &DiagnosticsRecord::energy,
    &DiagnosticsRecord::diss_n,
    &DiagnosticsRecord::diss_s,
    &DiagnosticsRecord::fric_diss,
    &DiagnosticsRecord::enstrophy,
    &DiagnosticsRecord::palinstrophy_n,
    &DiagnosticsRecord::palinstrophy_s,
    &DiagnosticsRecord::enstrophy_rhs,
    &DiagnosticsRecord::residual_energy,
    &DiagnosticsRecord::residual_enstrophy,
    &DiagnosticsRecord::bkm_integrand,
    &DiagnosticsRecord::bkm_integral,
    &DiagnosticsRecord::hm_n,
    &DiagnosticsRecord::hm_s,
    &DiagnosticsRecord::linf_wn,
    &DiagnosticsRecord::linf_ws,
    &DiagnosticsRecord::linf_du,
    &DiagnosticsRecord::momentum_x,
    &DiagnosticsRecord::momentum_y,
};

void commit(const std::string& tmp, const std::string& path) {
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    throw Error(ErrorCode::io, "cannot rename " + tmp + " to " + path);
  }
}

}  // namespace

std::string csv_header() {
  std::string out;
  for (int i = 0; i < kCsvColumns; ++i) out += (i ? "," : "") + std::string(kNames[i]);
  return out;
}

std::string csv_row(const DiagnosticsRecord& r) {
  std::string out;
  char buf[64];
  for (int i = 0; i < kCsvColumns; ++i) {
    const int len = std::snprintf(buf, sizeof buf, "%.17g", r.*kFields[i]);
    if (i) out += ',';
    out.append(buf, std::size_t(len));
  }
  return out;
}

void write_diagnostics_csv(const std::vector<DiagnosticsRecord>& records, const std::string& path) {
  if (records.empty()) throw Error(ErrorCode::invalid_argument, "write_diagnostics_csv: no records");
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::trunc);
    if (!f) throw Error(ErrorCode::io, "cannot write " + tmp);
    f << csv_header() << '\n';
    for (const auto& r : records) f << csv_row(r) << '\n';
    if (!f) throw Error(ErrorCode::io, "write failed for " + tmp);
  }
  commit(tmp, path);
}

std::vector<DiagnosticsRecord> read_diagnostics_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::io, "cannot open " + path);
  std::string line;
  if (!std::getline(f, line) || line != csv_header()) {
    throw Error(ErrorCode::io, path + ": missing or unexpected header");
  }
  std::vector<DiagnosticsRecord> out;
  int lineno = 1;
  while (std::getline(f, line)) {
    ++lineno;
    if (line.empty()) continue;
    DiagnosticsRecord r;
    std::stringstream ss(line);
    std::string cell;
    int col = 0;
    while (std::getline(ss, cell, ',')) {
      if (col >= kCsvColumns) break;
      double v = 0.0;
      auto [p, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (ec != std::errc() || p != cell.data() + cell.size()) {
        throw Error(ErrorCode::io, path + ":" + std::to_string(lineno) + ": bad number '" + cell + "'");
      }
      r.*kFields[col++] = v;
    }
    if (col != kCsvColumns || ss.rdbuf()->in_avail() > 0) {
      throw Error(ErrorCode::io, path + ":" + std::to_string(lineno) + ": expected 20 columns");
    }
    out.push_back(r);
  }
  return out;
}

CsvSink::CsvSink(std::string path) : path_(std::move(path)), out_(path_ + ".tmp", std::ios::trunc) {
  if (!out_) throw Error(ErrorCode::io, "cannot write " + path_ + ".tmp");
  out_ << csv_header() << '\n';
}

CsvSink::~CsvSink() {
  try {
    finish();
  } catch (...) {
  }
}

void CsvSink::record(const DiagnosticsRecord& r) { out_ << csv_row(r) << '\n'; }

void CsvSink::finish() {
  if (finished_) return;
  finished_ = true;
  out_.close();
  if (!out_) throw Error(ErrorCode::io, "write failed for " + path_ + ".tmp");
  commit(path_ + ".tmp", path_);
}

}  // namespace hvbk
