#pragma once

#include <iosfwd>
#include <string>

#include "goim/harness.hpp"

namespace goim {

// Fixed-format renderers so identical results produce byte-identical files.
std::string format_probability(double p);  // 6 decimals
std::string format_energy(double e);       // %.10g

// Sweep output: a summary section followed by a per-trial section.
void write_sweep_csv(std::ostream& out, const SweepResult& result);
void write_sweep_json(std::ostream& out, const SweepResult& result);

// Histogram output: a per-graph summary section followed by the bin table.
void write_cubic_hist_csv(std::ostream& out, const CubicHistogramResult& result);
void write_cubic_hist_json(std::ostream& out, const CubicHistogramResult& result);

}  // namespace goim
