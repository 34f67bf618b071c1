#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "core/diagnostics.hpp"
#include "core/timestepping.hpp"

namespace hvbk {

inline constexpr int kCsvColumns = 20;

std::string csv_header();
// One row, 17 significant digits per value.
std::string csv_row(const DiagnosticsRecord& r);

// Throws invalid_argument on an empty list, io on write failure. Atomic.
void write_diagnostics_csv(const std::vector<DiagnosticsRecord>& records, const std::string& path);
std::vector<DiagnosticsRecord> read_diagnostics_csv(const std::string& path);

// Streams rows to `path + ".tmp"` and renames on finish() (or destruction,
// so a run that stops early still leaves its rows behind).
class CsvSink : public DiagnosticsSink {
 public:
  explicit CsvSink(std::string path);
  ~CsvSink() override;
  void record(const DiagnosticsRecord& r) override;
  void finish();

 private:
  std::string path_;
  std::ofstream out_;
  bool finished_ = false;
};

}  // namespace hvbk
