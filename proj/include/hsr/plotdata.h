#ifndef HSR_PLOTDATA_H_
#define HSR_PLOTDATA_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "hsr/scenario.h"
#include "hsr/simulation.h"
#include "hsr/sweep.h"

namespace hsr {

// fig3: per-slot power, capacity and mean backlog over one cell period.
// fig4/5/6: average power and delay against lambda / omega / Pmax.
enum class Figure { kFig3, kFig4, kFig5, kFig6 };

std::string_view figure_name(Figure f);
Figure parse_figure(std::string_view name);

// Slots per cell period, ceil(2R / (v Ts)).
int64_t cell_period_window(const Geometry& geom);

// Thrown when the inputs lack a series the figure needs; nothing is written.
class PlotDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PolicyTrace {
  PolicyKind policy;
  const Trace* trace;
};

// Columns: t, then P_<policy>, C_<policy>, Qmean_<policy> per policy.
std::string format_fig3(std::span<const PolicyTrace> traces,
                        int64_t window_start, int64_t window_length);

// Columns: <parameter>, then P_<policy>, W_<policy> per policy (means over
// replications). fig5 adds the constant reference columns P_av and W_av.
std::string format_sweep_figure(const SweepTable& table, Figure figure,
                                const ScenarioConfig& base);

void emit_plotdata(std::span<const PolicyTrace> traces, Figure figure,
                   int64_t window_start, int64_t window_length,
                   const std::filesystem::path& path);
void emit_plotdata(const SweepTable& table, Figure figure,
                   const ScenarioConfig& base,
                   const std::filesystem::path& path);

// The scenario and sweep behind each figure, built on top of `base`:
//   fig3: lambda 20, W 15, Pmax 50, omega 0.8, all five policies
//   fig4: lambda 15..25, Pmax 100, omega 0.8, all five policies
//   fig5: omega 0.2..1.2, lambda 23, Pmax 100, proposed
//   fig6: Pmax 40..100, lambda 23, omega 0.6, proposed
struct FigurePreset {
  ScenarioConfig config;
  SweepSpec sweep;  // unused for fig3
};
FigurePreset figure_preset(Figure figure, const ScenarioConfig& base);

}  // namespace hsr

#endif  // HSR_PLOTDATA_H_
