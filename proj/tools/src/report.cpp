#include "cpcp_cli/report.hpp"

#include <cstdio>
#include <map>
#include <utility>

namespace cpcp::cli {

namespace {

std::string fixed(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, value);
  return buf;
}

}  // namespace

RunReport make_report(std::string instance, const Instance& inst,
                      const Strategy& strategy, const SolveReport& report) {
  RunReport r;
  r.instance = std::move(instance);
  r.n = inst.num_customers();
  r.p = inst.p();
  r.strategy = strategy.name();
  r.status = report.status;
  r.lb = report.lb;
  r.ub = report.ub;
  r.gap_pct = report.gap_pct();
  r.probes = report.search.stats;
  r.seconds = report.seconds;
  return r;
}

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(text);
  }
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

std::string csv_line(const std::vector<std::string>& fields) {
  std::string line;
  for (std::size_t k = 0; k < fields.size(); ++k) {
    if (k > 0) line += ',';
    line += csv_field(fields[k]);
  }
  line += '\n';
  return line;
}

std::string run_csv_header() {
  return csv_line({"instance", "n", "p", "strategy", "status", "lb", "ub",
                   "gap_pct", "probes", "feasible", "infeasible", "timeout",
                   "time_s"});
}

std::string run_csv_row(const RunReport& r) {
  return csv_line({r.instance, std::to_string(r.n), std::to_string(r.p),
                   r.strategy, std::string(to_string(r.status)),
                   format_number(r.lb), r.ub ? format_number(*r.ub) : "",
                   r.gap_pct ? fixed(*r.gap_pct, 2) : "",
                   std::to_string(r.probes.probes),
                   std::to_string(r.probes.feasible),
                   std::to_string(r.probes.infeasible),
                   std::to_string(r.probes.timed_out), fixed(r.seconds, 3)});
}

std::vector<GroupRow> aggregate(
    const std::vector<std::vector<RunReport>>& runs) {
  struct Acc {
    int runs = 0, optimal = 0, gaps = 0;
    double gap_sum = 0.0, seconds = 0.0;
  };
  std::map<std::pair<int, int>, std::vector<Acc>> groups;
  std::map<std::pair<int, int>, int> sizes;
  for (std::size_t s = 0; s < runs.size(); ++s) {
    for (const RunReport& r : runs[s]) {
      auto& accs = groups[{r.n, r.p}];
      accs.resize(runs.size());
      Acc& a = accs[s];
      ++a.runs;
      a.seconds += r.seconds;
      if (r.status == SolveStatus::kOptimal) ++a.optimal;
      if (r.gap_pct) {
        ++a.gaps;
        a.gap_sum += *r.gap_pct;
      }
      if (s == 0) ++sizes[{r.n, r.p}];
    }
  }
  std::vector<GroupRow> rows;
  for (const auto& [key, accs] : groups) {
    GroupRow row;
    row.n = key.first;
    row.p = key.second;
    row.instances = sizes[key];
    for (const Acc& a : accs) {
      StrategyCell cell;
      cell.runs = a.runs;
      cell.optimal = a.optimal;
      if (a.gaps > 0) cell.mean_gap = a.gap_sum / a.gaps;
      if (a.runs > 0) cell.mean_seconds = a.seconds / a.runs;
      row.cells.push_back(cell);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string bench_csv_header(const std::vector<std::string>& strategies) {
  std::vector<std::string> fields{"n", "p", "instances"};
  for (const std::string& s : strategies) {
    fields.push_back(s + "_opt");
    fields.push_back(s + "_gap_pct");
    fields.push_back(s + "_time_s");
  }
  return csv_line(fields);
}

std::string bench_csv_row(const GroupRow& row) {
  std::vector<std::string> fields{std::to_string(row.n), std::to_string(row.p),
                                  std::to_string(row.instances)};
  for (const StrategyCell& c : row.cells) {
    fields.push_back(std::to_string(c.optimal));
    fields.push_back(c.mean_gap ? fixed(*c.mean_gap, 2) : "");
    fields.push_back(fixed(c.mean_seconds, 2));
  }
  return csv_line(fields);
}

}  // namespace cpcp::cli
