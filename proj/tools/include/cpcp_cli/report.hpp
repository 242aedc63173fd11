#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cpcp/solver.hpp"

namespace cpcp::cli {

// One solver run, as written to the CSV report.
struct RunReport {
  std::string instance;
  int n = 0;
  int p = 0;
  std::string strategy;
  SolveStatus status = SolveStatus::kGap;
  Distance lb = 0.0;
  std::optional<Distance> ub;
  std::optional<double> gap_pct;
  SearchStats probes;
  double seconds = 0.0;
};

RunReport make_report(std::string instance, const Instance& inst,
                      const Strategy& strategy, const SolveReport& report);

// RFC 4180 field: quoted when it holds a comma, quote or line break.
std::string csv_field(std::string_view text);
std::string csv_line(const std::vector<std::string>& fields);

std::string run_csv_header();
std::string run_csv_row(const RunReport& report);

// Per-strategy aggregate of one (n, p) group.
struct StrategyCell {
  int runs = 0;
  int optimal = 0;
  // Mean gap over the runs with a known UB (optimal runs count as 0).
  std::optional<double> mean_gap;
  double mean_seconds = 0.0;
};

struct GroupRow {
  int n = 0;
  int p = 0;
  int instances = 0;
  std::vector<StrategyCell> cells;  // in strategy-list order
};

// Groups by (n, p) in ascending order. `runs[s]` holds the reports of
// strategy s, one per instance.
std::vector<GroupRow> aggregate(
    const std::vector<std::vector<RunReport>>& runs);

std::string bench_csv_header(const std::vector<std::string>& strategies);
std::string bench_csv_row(const GroupRow& row);

}  // namespace cpcp::cli
