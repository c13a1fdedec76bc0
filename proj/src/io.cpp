#include "qcd/io.hpp"

#include <cstdio>
#include <fstream>

#include <nlohmann/json.hpp>

#include "qcd/errors.hpp"

namespace qcd::io {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open output file '" + path + "'");
  return out;
}

}  // namespace

void write_epochs_csv(const std::string& path, const codesign::RunLog& log,
                      const scenario::Scenario& scen) {
  std::ofstream out = open_out(path);
  out << "epoch,t_start";
  for (const auto& name : scen.param_names()) out << ',' << name;
  out << ",exact_cost,surrogate_min,qite_final_energy,n_qubits,error_metric,"
         "candidate_count,safety_net_cost\n";
  for (const auto& rec : log.epochs) {
    out << rec.index << ',' << format_double(rec.t_start);
    for (Eigen::Index j = 0; j < rec.design.size(); ++j)
      out << ',' << format_double(rec.design(j));
    out << ',' << format_double(rec.exact_cost) << ',' << format_double(rec.surrogate_min_seen)
        << ',' << format_double(rec.qite_final_energy) << ',' << rec.n_qubits << ','
        << format_double(rec.error_metric) << ',' << rec.candidate_count << ','
        << format_double(rec.safety_net_cost) << '\n';
  }
}

void write_trajectory_csv(const std::string& path, const codesign::RunLog& log,
                          const scenario::Scenario& scen) {
  std::ofstream out = open_out(path);
  out << 't';
  for (const auto& name : scen.state_names()) out << ',' << name;
  for (const auto& name : scen.control_names()) out << ',' << name;
  out << ",V_value\n";
  const Eigen::Index n = log.trajectory.times.size();
  for (Eigen::Index i = 0; i < n; ++i) {
    out << format_double(log.trajectory.times(i));
    for (Eigen::Index j = 0; j < log.trajectory.states.cols(); ++j)
      out << ',' << format_double(log.trajectory.states(i, j));
    for (Eigen::Index j = 0; j < log.trajectory.controls.cols(); ++j)
      out << ',' << format_double(log.trajectory.controls(i, j));
    out << ',' << format_double(log.v_values[static_cast<std::size_t>(i)]) << '\n';
  }
}

void write_run_meta(const std::string& path, const nlohmann::json& config_echo) {
  std::ofstream out = open_out(path);
  nlohmann::json meta;
  meta["version"] = "0.1.0";
  meta["config"] = config_echo;
  out << meta.dump(2) << '\n';
}

void write_brute_csv(const std::string& path, const std::vector<BruteRow>& rows) {
  std::ofstream out = open_out(path);
  out << "epoch,t_start,winner_cost,brute_min,gap\n";
  for (const auto& r : rows) {
    out << r.epoch << ',' << format_double(r.t_start) << ',' << format_double(r.winner_cost)
        << ',' << format_double(r.brute_min) << ','
        << format_double(r.winner_cost - r.brute_min) << '\n';
  }
}

void write_qite_trace_csv(const std::string& path, const std::vector<double>& trace) {
  std::ofstream out = open_out(path);
  out << "step,energy\n";
  for (std::size_t i = 0; i < trace.size(); ++i)
    out << i << ',' << format_double(trace[i]) << '\n';
}

}  // namespace qcd::io
