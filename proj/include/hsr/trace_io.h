#ifndef HSR_TRACE_IO_H_
#define HSR_TRACE_IO_H_

#include <filesystem>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "hsr/scenario.h"
#include "hsr/simulation.h"

namespace hsr {

// Comma-separated trace, one row per slot:
//   t, distance_m, noise_w, power_w, capacity, served,
//   A_1..A_K, mu_1..mu_K, Q_1..Q_K, X_1..X_K, Y, drops
// Reals are written with 17 significant digits.
std::vector<std::string> trace_columns(int services);

void write_trace(const Trace& trace, int services, std::ostream& out);
void write_trace(const Trace& trace, int services,
                 const std::filesystem::path& path);
// Throws std::runtime_error on a malformed header or row.
Trace read_trace(std::istream& in);
Trace read_trace(const std::filesystem::path& path);

// JSON summary with per-service entries and the constraint flags.
std::string format_summary(const SimSummary& summary,
                           const ScenarioConfig& config);
void write_summary(const SimSummary& summary, const ScenarioConfig& config,
                   const std::filesystem::path& path);
SimSummary parse_summary(const std::string& json_text);

}  // namespace hsr

#endif  // HSR_TRACE_IO_H_
