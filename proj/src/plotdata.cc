#include "hsr/plotdata.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include "text_util.h"

namespace hsr {

namespace {

void write_file(const std::string& content, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
  out << content;
  if (!out) throw std::runtime_error(path.string() + ": write failed");
}

SweepParameter parameter_for(Figure figure) {
  switch (figure) {
    case Figure::kFig4:
      return SweepParameter::kLambda;
    case Figure::kFig5:
      return SweepParameter::kOmega;
    case Figure::kFig6:
      return SweepParameter::kPmax;
    case Figure::kFig3:
      break;
  }
  throw PlotDataError("fig3 is drawn from traces, not a sweep table");
}

}  // namespace

std::string_view figure_name(Figure f) {
  switch (f) {
    case Figure::kFig3:
      return "fig3";
    case Figure::kFig4:
      return "fig4";
    case Figure::kFig5:
      return "fig5";
    case Figure::kFig6:
      return "fig6";
  }
  return "unknown";
}

Figure parse_figure(std::string_view name) {
  for (Figure f : {Figure::kFig3, Figure::kFig4, Figure::kFig5, Figure::kFig6}) {
    if (figure_name(f) == name) return f;
  }
  throw ConfigError("figure: unknown figure '" + std::string(name) +
                    "' (expected fig3, fig4, fig5 or fig6)");
}

int64_t cell_period_window(const Geometry& geom) {
  // Trim representation noise so 30000.000000000004 stays 30000.
  return static_cast<int64_t>(
      std::ceil(geom.cell_period_slots() * (1.0 - 1e-12)));
}

std::string format_fig3(std::span<const PolicyTrace> traces,
                        int64_t window_start, int64_t window_length) {
  if (traces.empty()) throw PlotDataError("fig3: no traces");
  if (window_start < 0 || window_length <= 0) {
    throw PlotDataError("fig3: empty window");
  }
  for (const PolicyTrace& pt : traces) {
    if (pt.trace == nullptr || pt.trace->empty()) {
      throw PlotDataError("fig3: empty trace for " +
                          std::string(policy_name(pt.policy)));
    }
    if (static_cast<int64_t>(pt.trace->size()) < window_start + window_length) {
      throw PlotDataError("fig3: trace for " +
                          std::string(policy_name(pt.policy)) +
                          " is shorter than the window");
    }
  }
  std::ostringstream out;
  out << "t";
  for (const PolicyTrace& pt : traces) {
    const std::string name(policy_name(pt.policy));
    out << ",P_" << name << ",C_" << name << ",Qmean_" << name;
  }
  out << '\n';
  for (int64_t t = window_start; t < window_start + window_length; ++t) {
    out << t;
    for (const PolicyTrace& pt : traces) {
      const SlotRecord& r = (*pt.trace)[t];
      double q = 0.0;
      for (int64_t b : r.backlog) q += static_cast<double>(b);
      q /= static_cast<double>(r.backlog.size());
      out << ',' << text::format_double(r.power) << ',' << r.capacity << ','
          << text::format_double(q);
    }
    out << '\n';
  }
  return out.str();
}

std::string format_sweep_figure(const SweepTable& table, Figure figure,
                                const ScenarioConfig& base) {
  const SweepParameter param = parameter_for(figure);
  if (table.spec.parameter != param) {
    throw PlotDataError(std::string(figure_name(figure)) + " needs a " +
                        std::string(parameter_name(param)) + " sweep, got " +
                        std::string(parameter_name(table.spec.parameter)));
  }
  const std::vector<SweepAggregate> agg = table.aggregate();
  for (const SweepAggregate& a : agg) {
    if (a.runs == 0) {
      throw PlotDataError(std::string(figure_name(figure)) + ": no data for " +
                          std::string(policy_name(a.policy)) + " at " +
                          text::format_double(a.value));
    }
  }
  std::ostringstream out;
  out << parameter_name(param);
  for (PolicyKind p : table.spec.policies) {
    out << ",P_" << policy_name(p) << ",W_" << policy_name(p);
  }
  if (figure == Figure::kFig5) out << ",P_av,W_av";
  out << '\n';
  // Aggregates are value-major in spec order.
  const size_t per_value = table.spec.policies.size();
  for (size_t v = 0; v < table.spec.values.size(); ++v) {
    out << text::format_double(table.spec.values[v]);
    for (size_t p = 0; p < per_value; ++p) {
      const SweepAggregate& a = agg[v * per_value + p];
      out << ',' << text::format_double(a.power_mean) << ','
          << text::format_double(a.delay_mean);
    }
    if (figure == Figure::kFig5) {
      out << ',' << text::format_double(base.traffic.power_avg) << ','
          << text::format_double(base.traffic.delay_bounds.front());
    }
    out << '\n';
  }
  return out.str();
}

void emit_plotdata(std::span<const PolicyTrace> traces, Figure figure,
                   int64_t window_start, int64_t window_length,
                   const std::filesystem::path& path) {
  if (figure != Figure::kFig3) {
    throw PlotDataError(std::string(figure_name(figure)) +
                        " is drawn from a sweep table, not traces");
  }
  write_file(format_fig3(traces, window_start, window_length), path);
}

void emit_plotdata(const SweepTable& table, Figure figure,
                   const ScenarioConfig& base,
                   const std::filesystem::path& path) {
  write_file(format_sweep_figure(table, figure, base), path);
}

FigurePreset figure_preset(Figure figure, const ScenarioConfig& base) {
  FigurePreset preset{base, {}};
  ScenarioConfig& c = preset.config;
  SweepSpec& s = preset.sweep;
  s.base_seed = base.seed;
  const std::vector<PolicyKind> all(std::begin(kAllPolicies),
                                    std::end(kAllPolicies));
  switch (figure) {
    case Figure::kFig3:
      c.set_uniform_traffic(20.0, 15.0);
      c.radio.power_max = 50.0;
      c.omega = 0.8;
      break;
    case Figure::kFig4:
      c.set_uniform_traffic(20.0, 15.0);
      c.radio.power_max = 100.0;
      c.omega = 0.8;
      s.parameter = SweepParameter::kLambda;
      s.values = {15, 17, 19, 21, 23, 25};
      s.policies = all;
      break;
    case Figure::kFig5:
      c.set_uniform_traffic(23.0, 15.0);
      c.radio.power_max = 100.0;
      s.parameter = SweepParameter::kOmega;
      s.values = {0.2, 0.4, 0.6, 0.8, 1.0, 1.2};
      s.policies = {PolicyKind::kProposed};
      break;
    case Figure::kFig6:
      c.set_uniform_traffic(23.0, 15.0);
      c.omega = 0.6;
      s.parameter = SweepParameter::kPmax;
      s.values = {40, 60, 80, 100};
      s.policies = {PolicyKind::kProposed};
      break;
  }
  return preset;
}

}  // namespace hsr
