#include "qsc/run_config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace qsc {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("invalid numeric value for " + key + ": '" + v + "'");
  }
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const unsigned long long x = std::stoull(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("invalid integer value for " + key + ": '" + v + "'");
  }
}

Config parse_protocol(const std::string& v) {
  if (v == "passive_ase") return Config::passive_ase;
  if (v == "passive_opa") return Config::passive_opa;
  if (v == "active") return Config::active;
  throw ConfigError("invalid protocol.config value: '" + v +
                    "' (expected passive_ase, passive_opa, or active)");
}

using Setter = std::function<void(RunSettings&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& key_table() {
  auto dbl = [](double RunSettings::* field) {
    return [field](RunSettings& rs, const std::string& k, const std::string& v) {
      rs.*field = parse_double(k, v);
    };
  };
  auto pdbl = [](double SystemParams::* field) {
    return [field](RunSettings& rs, const std::string& k, const std::string& v) {
      rs.params.*field = parse_double(k, v);
    };
  };
  auto u64 = [](std::uint64_t RunSettings::* field) {
    return [field](RunSettings& rs, const std::string& k, const std::string& v) {
      rs.*field = parse_u64(k, v);
    };
  };
  static const std::map<std::string, Setter> table = {
      {"link.W", pdbl(&SystemParams::W)},
      {"link.R", pdbl(&SystemParams::R)},
      {"link.alpha_db_per_km", pdbl(&SystemParams::alpha_db_per_km)},
      {"link.L_km", pdbl(&SystemParams::L_km)},
      {"link.N_S", pdbl(&SystemParams::N_S)},
      {"link.N_LO", pdbl(&SystemParams::N_LO)},
      {"link.G_B", pdbl(&SystemParams::G_B)},
      {"link.N_B", pdbl(&SystemParams::N_B)},
      {"link.eta", pdbl(&SystemParams::eta)},
      {"link.G_A", pdbl(&SystemParams::G_A)},
      {"link.kappa_B", pdbl(&SystemParams::kappa_B)},
      {"link.N_ASE", pdbl(&SystemParams::N_ASE)},
      {"link.T_g", pdbl(&SystemParams::T_g)},
      {"link.kappa_A", pdbl(&SystemParams::kappa_A)},
      {"link.N_SPDC", pdbl(&SystemParams::N_SPDC)},
      {"protocol.config",
       [](RunSettings& rs, const std::string&, const std::string& v) {
         rs.protocol = parse_protocol(v);
       }},
      {"protocol.beta", pdbl(&SystemParams::beta)},
      {"protocol.f", pdbl(&SystemParams::f)},
      {"protocol.R_max", pdbl(&SystemParams::R_max)},
      {"protocol.Pe_max", pdbl(&SystemParams::Pe_max)},
      {"sweep.L_min_km", dbl(&RunSettings::L_min_km)},
      {"sweep.L_max_km", dbl(&RunSettings::L_max_km)},
      {"sweep.L_step_km", dbl(&RunSettings::L_step_km)},
      {"bounds.loss_min_db", dbl(&RunSettings::loss_min_db)},
      {"bounds.loss_max_db", dbl(&RunSettings::loss_max_db)},
      {"bounds.loss_step_db", dbl(&RunSettings::loss_step_db)},
      {"monitor.target_delta_f", dbl(&RunSettings::target_delta_f)},
      {"monitor.snr_t_m", dbl(&RunSettings::snr_t_m)},
      {"monitor.N_S", dbl(&RunSettings::monitor_N_S)},
      {"mc.trials", u64(&RunSettings::trials)},
      {"mc.seed", u64(&RunSettings::seed)},
      {"mc.coincidence_trials", u64(&RunSettings::coincidence_trials)},
      {"mc.t_m", dbl(&RunSettings::t_m)},
  };
  return table;
}

void set_key(RunSettings& rs, const std::string& full_key, const std::string& value) {
  const auto it = key_table().find(full_key);
  if (it == key_table().end()) throw ConfigError("unknown key: " + full_key);
  it->second(rs, full_key, value);
}

std::vector<double> linear_grid(double lo, double hi, double step,
                                const std::string& what) {
  if (step <= 0) throw ConfigError(what + ": step must be > 0");
  if (hi < lo) throw ConfigError(what + ": empty sweep");
  std::vector<double> grid;
  const int n = static_cast<int>(std::floor((hi - lo) / step + 1e-9)) + 1;
  for (int i = 0; i < n; ++i) grid.push_back(lo + i * step);
  return grid;
}

}  // namespace

std::vector<double> RunSettings::distance_grid() const {
  return linear_grid(L_min_km, L_max_km, L_step_km, "sweep");
}

std::vector<double> RunSettings::loss_grid_db() const {
  return linear_grid(loss_min_db, loss_max_db, loss_step_db, "bounds");
}

RunSettings load_run_settings(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  RunSettings rs;
  std::string line, section;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto comment = line.find_first_of("#;");
    if (comment != std::string::npos) line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError(path + ":" + std::to_string(line_no) +
                          ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(line_no) +
                        ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty())
      throw ConfigError(path + ":" + std::to_string(line_no) +
                        ": key outside any [section]: " + key);
    set_key(rs, section + "." + key, value);
  }
  return rs;
}

void apply_override(RunSettings& rs, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos)
    throw ConfigError("override must be section.key=value: " + assignment);
  set_key(rs, trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

std::string csv_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_file_atomic(const std::string& path,
                       const std::vector<std::string>& lines) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open output file: " + tmp);
    for (const std::string& l : lines) out << l << '\n';
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("rename failed: " + path + ": " +
                             std::strerror(errno));
}

}  // namespace qsc
