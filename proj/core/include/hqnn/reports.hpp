#pragma once

#include "hqnn/sweep.hpp"

#include <span>
#include <string>

namespace hqnn {

/// Shortest decimal representation that round-trips the double exactly;
/// used everywhere report output must be byte-stable.
std::string format_double(double value);

/// Writes results.csv (one row per record, documented header),
/// results.json (full nested records), correlations.csv when a matrix is
/// given, and one SVG line chart per metric and axis (one polyline per
/// dataset series). Wall-clock times go to results.json only, keeping
/// results.csv byte-identical across reruns. Throws DataFormatError on an
/// unwritable path.
void emit_reports(std::span<const RunRecord> records,
                  const CorrelationMatrix *correlations,
                  const std::string &output_dir);

} // namespace hqnn
