#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "qcd/codesign.hpp"
#include "qcd/scenario.hpp"

namespace qcd::io {

// Shortest decimal form that round-trips the exact binary value.
std::string format_double(double v);

void write_epochs_csv(const std::string& path, const codesign::RunLog& log,
                      const scenario::Scenario& scen);

void write_trajectory_csv(const std::string& path, const codesign::RunLog& log,
                          const scenario::Scenario& scen);

void write_run_meta(const std::string& path, const nlohmann::json& config_echo);

struct BruteRow {
  int epoch = 0;
  double t_start = 0.0;
  double winner_cost = 0.0;
  double brute_min = 0.0;
};
void write_brute_csv(const std::string& path, const std::vector<BruteRow>& rows);

void write_qite_trace_csv(const std::string& path, const std::vector<double>& trace);

}  // namespace qcd::io
