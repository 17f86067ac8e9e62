#include "hsr/trace_io.h"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "text_util.h"

namespace hsr {

namespace {

using nlohmann::json;

void append_field(std::string& line, const std::string& value) {
  if (!line.empty()) line += ',';
  line += value;
}

}  // namespace

std::vector<std::string> trace_columns(int services) {
  std::vector<std::string> cols = {"t",        "distance_m", "noise_w",
                                   "power_w",  "capacity",   "served"};
  for (const char* prefix : {"A_", "mu_", "Q_", "X_"}) {
    for (int k = 1; k <= services; ++k) {
      cols.push_back(prefix + std::to_string(k));
    }
  }
  cols.push_back("Y");
  cols.push_back("drops");
  return cols;
}

void write_trace(const Trace& trace, int services, std::ostream& out) {
  std::string line;
  for (const std::string& c : trace_columns(services)) append_field(line, c);
  out << line << '\n';
  for (const SlotRecord& r : trace) {
    line.clear();
    append_field(line, std::to_string(r.slot));
    append_field(line, text::format_double(r.distance));
    append_field(line, text::format_double(r.noise));
    append_field(line, text::format_double(r.power));
    append_field(line, std::to_string(r.capacity));
    append_field(line, std::to_string(r.served));
    for (auto* v : {&r.arrivals, &r.allocation, &r.backlog}) {
      for (int64_t x : *v) append_field(line, std::to_string(x));
    }
    for (double x : r.delay_queue) append_field(line, text::format_double(x));
    append_field(line, text::format_double(r.power_queue));
    append_field(line, std::to_string(r.drops));
    out << line << '\n';
  }
  if (!out) throw std::runtime_error("write_trace: I/O failure");
}

void write_trace(const Trace& trace, int services,
                 const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
  write_trace(trace, services, out);
}

Trace read_trace(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("read_trace: no header");
  const std::vector<std::string> header = text::split(line, ',');
  if (header.size() < 12 || (header.size() - 8) % 4 != 0) {
    throw std::runtime_error("read_trace: unexpected column count");
  }
  const int services = static_cast<int>((header.size() - 8) / 4);
  if (header != trace_columns(services)) {
    throw std::runtime_error("read_trace: header does not match the schema");
  }

  Trace trace;
  int64_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    const std::vector<std::string> f = text::split(line, ',');
    if (f.size() != header.size()) {
      throw std::runtime_error("read_trace: row " + std::to_string(row) +
                               " has " + std::to_string(f.size()) + " fields");
    }
    try {
      SlotRecord r;
      size_t i = 0;
      r.slot = text::parse_int(f[i++]);
      r.distance = text::parse_double(f[i++]);
      r.noise = text::parse_double(f[i++]);
      r.power = text::parse_double(f[i++]);
      r.capacity = text::parse_int(f[i++]);
      r.served = text::parse_int(f[i++]);
      for (auto* v : {&r.arrivals, &r.allocation, &r.backlog}) {
        v->resize(services);
        for (int k = 0; k < services; ++k) (*v)[k] = text::parse_int(f[i++]);
      }
      r.delay_queue.resize(services);
      for (int k = 0; k < services; ++k) {
        r.delay_queue[k] = text::parse_double(f[i++]);
      }
      r.power_queue = text::parse_double(f[i++]);
      r.drops = text::parse_int(f[i++]);
      trace.push_back(std::move(r));
    } catch (const std::invalid_argument&) {
      throw std::runtime_error("read_trace: bad number in row " +
                               std::to_string(row));
    } catch (const std::out_of_range&) {
      throw std::runtime_error("read_trace: number out of range in row " +
                               std::to_string(row));
    }
  }
  return trace;
}

Trace read_trace(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path.string() + ": cannot open");
  return read_trace(in);
}

std::string format_summary(const SimSummary& s, const ScenarioConfig& config) {
  json services = json::array();
  for (size_t k = 0; k < s.avg_backlog.size(); ++k) {
    json entry = {
        {"service", k + 1},
        {"avg_backlog", s.avg_backlog[k]},
        {"avg_delay", s.avg_delay[k]},
        {"empirical_rate", s.empirical_rate[k]},
        {"delay_bound", config.traffic.delay_bounds[k]},
        {"delay_ok", static_cast<bool>(s.delay_ok[k])},
        {"drops", s.total_drops[k]},
    };
    if (k < s.packet_delay.size()) entry["packet_delay"] = s.packet_delay[k];
    services.push_back(std::move(entry));
  }
  const json doc = {
      {"policy", policy_name(config.policy)},
      {"slots", s.slots},
      {"avg_power", s.avg_power},
      {"power_avg_bound", config.traffic.power_avg},
      {"power_ok", s.power_ok},
      {"mean_delay", s.mean_delay()},
      {"services", std::move(services)},
  };
  return doc.dump(2) + "\n";
}

void write_summary(const SimSummary& summary, const ScenarioConfig& config,
                   const std::filesystem::path& path) {
  const std::string text = format_summary(summary, config);
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
  out << text;
  if (!out) throw std::runtime_error(path.string() + ": write failed");
}

SimSummary parse_summary(const std::string& json_text) {
  const json doc = json::parse(json_text);
  SimSummary s;
  s.slots = doc.at("slots").get<int64_t>();
  s.avg_power = doc.at("avg_power").get<double>();
  s.power_ok = doc.at("power_ok").get<bool>();
  for (const json& e : doc.at("services")) {
    s.avg_backlog.push_back(e.at("avg_backlog").get<double>());
    s.avg_delay.push_back(e.at("avg_delay").get<double>());
    s.empirical_rate.push_back(e.at("empirical_rate").get<double>());
    s.delay_ok.push_back(e.at("delay_ok").get<bool>());
    s.total_drops.push_back(e.at("drops").get<int64_t>());
    if (e.contains("packet_delay")) {
      s.packet_delay.push_back(e.at("packet_delay").get<double>());
    }
  }
  return s;
}

}  // namespace hsr
