#include "hsr/config.h"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "text_util.h"

namespace hsr {

namespace {

namespace pt = boost::property_tree;

using Setter = std::function<void(ScenarioConfig&, const std::string&)>;

// Per-service lists are resolved after K is known.
struct PendingLists {
  std::string arrival_rate;
  std::string delay_bound;
};

std::vector<double> expand_list(const std::string& raw, int services,
                                const std::string& field) {
  std::vector<double> values;
  for (const std::string& item : text::split(raw, ',')) {
    values.push_back(text::parse_double(item));
  }
  if (values.size() == 1) return std::vector<double>(services, values[0]);
  if (static_cast<int>(values.size()) != services) {
    throw ConfigError(field + ": expected 1 or " + std::to_string(services) +
                      " values, got " + std::to_string(values.size()));
  }
  return values;
}

using SetterTable = std::map<std::string, std::map<std::string, Setter>>;

SetterTable make_setters(PendingLists& lists) {
  return {
      {"geometry",
       {
           {"cell_radius_m", [](ScenarioConfig& c, const std::string& v) {
              c.geometry.cell_radius = text::parse_double(v);
            }},
           {"rail_offset_m", [](ScenarioConfig& c, const std::string& v) {
              c.geometry.rail_offset = text::parse_double(v);
            }},
           {"speed_kmh", [](ScenarioConfig& c, const std::string& v) {
              c.geometry.speed = text::parse_double(v) * 1000.0 / 3600.0;
            }},
           {"speed_mps", [](ScenarioConfig& c, const std::string& v) {
              c.geometry.speed = text::parse_double(v);
            }},
           {"slot_duration_s", [](ScenarioConfig& c, const std::string& v) {
              c.geometry.slot_duration = text::parse_double(v);
            }},
       }},
      {"radio",
       {
           {"bandwidth_hz", [](ScenarioConfig& c, const std::string& v) {
              c.radio.bandwidth = text::parse_double(v);
            }},
           {"noise_psd_dbm_hz", [](ScenarioConfig& c, const std::string& v) {
              c.radio.noise_psd = dbm_to_watts(text::parse_double(v));
            }},
           {"noise_psd_w_hz", [](ScenarioConfig& c, const std::string& v) {
              c.radio.noise_psd = text::parse_double(v);
            }},
           {"pathloss_exponent", [](ScenarioConfig& c, const std::string& v) {
              c.radio.pathloss_exponent = text::parse_double(v);
            }},
           {"packet_bits", [](ScenarioConfig& c, const std::string& v) {
              c.radio.packet_bits = text::parse_double(v);
            }},
           {"eta", [](ScenarioConfig& c, const std::string& v) {
              c.radio.eta = text::parse_double(v);
            }},
           {"power_max_w", [](ScenarioConfig& c, const std::string& v) {
              c.radio.power_max = text::parse_double(v);
            }},
       }},
      {"traffic",
       {
           {"services", [](ScenarioConfig& c, const std::string& v) {
              c.traffic.num_services = static_cast<int>(text::parse_int(v));
            }},
           {"arrival_rate", [&lists](ScenarioConfig&, const std::string& v) {
              lists.arrival_rate = v;
            }},
           {"delay_bound_slots",
            [&lists](ScenarioConfig&, const std::string& v) {
              lists.delay_bound = v;
            }},
           {"power_avg_w", [](ScenarioConfig& c, const std::string& v) {
              c.traffic.power_avg = text::parse_double(v);
            }},
           {"buffer_cap", [](ScenarioConfig& c, const std::string& v) {
              c.traffic.buffer_cap = text::parse_int(v);
            }},
       }},
      {"control",
       {
           {"omega", [](ScenarioConfig& c, const std::string& v) {
              c.omega = text::parse_double(v);
            }},
           {"epsilon", [](ScenarioConfig& c, const std::string& v) {
              c.epsilon = text::parse_double(v);
            }},
           {"horizon", [](ScenarioConfig& c, const std::string& v) {
              c.horizon = text::parse_int(v);
            }},
           {"seed", [](ScenarioConfig& c, const std::string& v) {
              c.seed = text::parse_uint(v);
            }},
           {"policy", [](ScenarioConfig& c, const std::string& v) {
              c.policy = parse_policy(v);
            }},
           {"warmup", [](ScenarioConfig& c, const std::string& v) {
              c.warmup = text::parse_int(v);
            }},
       }},
  };
}

}  // namespace

ScenarioConfig parse_config(std::istream& in) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("parse error at line " + std::to_string(e.line()) +
                      ": " + e.message());
  }

  ScenarioConfig config = ScenarioConfig::defaults();
  // Tracked so the derived eta can be checked against an explicit one.
  std::optional<double> explicit_eta;
  PendingLists lists;
  const SetterTable table = make_setters(lists);
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty()) {
      throw ConfigError(section + ": key outside a section");
    }
    const auto sec = table.find(section);
    if (sec == table.end()) {
      throw ConfigError("[" + section + "]: unknown section");
    }
    for (const auto& [key, node] : body) {
      const auto setter = sec->second.find(key);
      const std::string field = section + "." + key;
      if (setter == sec->second.end()) {
        throw ConfigError(field + ": unknown key");
      }
      const std::string value = text::trim(node.data());
      try {
        setter->second(config, value);
      } catch (const ConfigError& e) {
        throw ConfigError(field + ": " + e.what());
      } catch (const std::exception&) {
        throw ConfigError(field + ": cannot parse '" + value + "'");
      }
      if (key == "eta") explicit_eta = config.radio.eta;
    }
  }

  if (config.traffic.num_services < 1) {
    throw ConfigError("traffic.services: must be >= 1");
  }
  const int k = config.traffic.num_services;
  try {
    config.traffic.arrival_rates =
        lists.arrival_rate.empty()
            ? std::vector<double>(k, config.traffic.arrival_rates.front())
            : expand_list(lists.arrival_rate, k, "traffic.arrival_rate");
    config.traffic.delay_bounds =
        lists.delay_bound.empty()
            ? std::vector<double>(k, config.traffic.delay_bounds.front())
            : expand_list(lists.delay_bound, k, "traffic.delay_bound_slots");
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    throw ConfigError("traffic: cannot parse per-service list");
  }

  const double eta = config.derived_eta();
  if (explicit_eta && std::abs(*explicit_eta - eta) > 1e-9 * eta) {
    throw ConfigError("radio.eta: given " + text::format_double(*explicit_eta) +
                      " but packet_bits / (slot_duration * bandwidth) = " +
                      text::format_double(eta));
  }
  config.radio.eta = eta;
  config.validate();
  return config;
}

ScenarioConfig parse_config_string(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string() + ": cannot open");
  return parse_config(in);
}

std::string format_config(const ScenarioConfig& c) {
  auto list = [](const std::vector<double>& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) {
      if (i) s += ",";
      s += text::format_double(v[i]);
    }
    return s;
  };
  std::ostringstream out;
  out << "[geometry]\n"
      << "cell_radius_m = " << text::format_double(c.geometry.cell_radius)
      << "\nrail_offset_m = " << text::format_double(c.geometry.rail_offset)
      << "\nspeed_mps = " << text::format_double(c.geometry.speed)
      << "\nslot_duration_s = "
      << text::format_double(c.geometry.slot_duration) << "\n\n[radio]\n"
      << "bandwidth_hz = " << text::format_double(c.radio.bandwidth)
      << "\nnoise_psd_w_hz = " << text::format_double(c.radio.noise_psd)
      << "\npathloss_exponent = "
      << text::format_double(c.radio.pathloss_exponent)
      << "\npacket_bits = " << text::format_double(c.radio.packet_bits)
      << "\npower_max_w = " << text::format_double(c.radio.power_max)
      << "\n\n[traffic]\n"
      << "services = " << c.traffic.num_services
      << "\narrival_rate = " << list(c.traffic.arrival_rates)
      << "\ndelay_bound_slots = " << list(c.traffic.delay_bounds)
      << "\npower_avg_w = " << text::format_double(c.traffic.power_avg)
      << "\nbuffer_cap = " << c.traffic.buffer_cap << "\n\n[control]\n"
      << "omega = " << text::format_double(c.omega)
      << "\nepsilon = " << text::format_double(c.epsilon)
      << "\nhorizon = " << c.horizon << "\nseed = " << c.seed
      << "\npolicy = " << policy_name(c.policy) << "\nwarmup = " << c.warmup
      << "\n";
  return out.str();
}

}  // namespace hsr
