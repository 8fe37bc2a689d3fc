/// @file report.hpp
/// @brief CSV and JSON emission for experiment results.
///
/// Output is byte-reproducible for a fixed config and seed: floats print
/// with 17 significant digits, JSON key order is fixed, and no wall-clock
/// data enters any file.

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "gaugelift/regularity.hpp"
#include "gaugelift/solver.hpp"

namespace gaugelift {

using Json = nlohmann::ordered_json;

/// Shortest 17-significant-digit decimal form (round-trips a double).
std::string format_sig17(double x);

void write_text_file(const std::string& path, const std::string& content);

/// Comma-delimited, header row first, floats at 17 significant digits.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

Json json_of(const PoissonStats& s);
Json json_of(const TraceRow& r);
Json json_of(const MeasuredConstants& c);
Json json_of(const SolveResult& r);
Json json_of(const LambdaSweepResult& r);
Json json_of(const SpectrumResult& r);
Json json_of(const SmoothnessReport& r);

}  // namespace gaugelift
