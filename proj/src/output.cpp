#include "goim/output.hpp"

#include <cstdio>
#include <ostream>

#include <json.hpp>

namespace goim {

std::string format_probability(double p) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", p);
  return buf;
}

std::string format_energy(double e) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", e);
  return buf;
}

namespace {

void write_summary_rows(std::ostream& out, const std::vector<SuccessSummary>& summaries) {
  out << "label,n_spins,trials,successes,p_hat,ci_low,ci_high\n";
  for (const SuccessSummary& s : summaries) {
    out << s.label << ',' << s.n_spins << ',' << s.trials << ',' << s.successes << ','
        << format_probability(s.p_hat) << ',' << format_probability(s.ci_low) << ','
        << format_probability(s.ci_high) << '\n';
  }
}

nlohmann::ordered_json summary_json(const SuccessSummary& s) {
  return {{"label", s.label},   {"n_spins", s.n_spins},   {"trials", s.trials},
          {"successes", s.successes}, {"p_hat", s.p_hat}, {"ci_low", s.ci_low},
          {"ci_high", s.ci_high}};
}

}  // namespace

void write_sweep_csv(std::ostream& out, const SweepResult& result) {
  write_summary_rows(out, result.summaries);
  out << "graph_id,trial,energy,ground_energy,success\n";
  for (const TrialRow& t : result.trials) {
    out << t.graph_id << ',' << t.trial << ',' << format_energy(t.energy) << ','
        << format_energy(t.ground_energy) << ',' << (t.success ? 1 : 0) << '\n';
  }
}

void write_sweep_json(std::ostream& out, const SweepResult& result) {
  nlohmann::ordered_json root;
  root["summaries"] = nlohmann::ordered_json::array();
  for (const SuccessSummary& s : result.summaries) {
    root["summaries"].push_back(summary_json(s));
  }
  root["trials"] = nlohmann::ordered_json::array();
  for (const TrialRow& t : result.trials) {
    root["trials"].push_back({{"graph_id", t.graph_id},
                              {"trial", t.trial},
                              {"energy", t.energy},
                              {"ground_energy", t.ground_energy},
                              {"success", t.success}});
  }
  out << root.dump(2) << '\n';
}

void write_cubic_hist_csv(std::ostream& out, const CubicHistogramResult& result) {
  write_summary_rows(out, result.per_graph);
  out << "bin_low,bin_high,count\n";
  char low[16], high[16];
  for (size_t b = 0; b < result.histogram.size(); ++b) {
    std::snprintf(low, sizeof(low), "%.2f", 0.05 * static_cast<double>(b));
    std::snprintf(high, sizeof(high), "%.2f", 0.05 * static_cast<double>(b + 1));
    out << low << ',' << high << ',' << result.histogram[b] << '\n';
  }
}

void write_cubic_hist_json(std::ostream& out, const CubicHistogramResult& result) {
  nlohmann::ordered_json root;
  root["summaries"] = nlohmann::ordered_json::array();
  for (const SuccessSummary& s : result.per_graph) {
    root["summaries"].push_back(summary_json(s));
  }
  root["histogram"] = nlohmann::ordered_json::array();
  for (size_t b = 0; b < result.histogram.size(); ++b) {
    root["histogram"].push_back({{"bin_low", 0.05 * static_cast<double>(b)},
                                 {"bin_high", 0.05 * static_cast<double>(b + 1)},
                                 {"count", result.histogram[b]}});
  }
  out << root.dump(2) << '\n';
}

}  // namespace goim
