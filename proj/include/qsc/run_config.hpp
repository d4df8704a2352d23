#ifndef QSC_RUN_CONFIG_HPP
#define QSC_RUN_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "qsc/params.hpp"

namespace qsc {

class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Everything a CLI run needs: physical parameters plus sweep grids and
// oracle settings, populated from an INI-style config file with sections.
struct RunSettings {
  SystemParams params;
  Config protocol = Config::passive_ase;

  // [sweep] distance grid (km)
  double L_min_km = 0.0;
  double L_max_km = 60.0;
  double L_step_km = 1.0;

  // [bounds] one-way loss grid (dB)
  double loss_min_db = 0.0;
  double loss_max_db = 30.0;
  double loss_step_db = 1.0;

  // [monitor]
  double target_delta_f = 1e-3;
  double snr_t_m = 0.1;   // T_M used for the reported SNR columns
  double monitor_N_S = 0.1;  // brightness held fixed across the sweep

  // [mc]
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  std::uint64_t coincidence_trials = 3200;
  double t_m = 5e-4;  // simulated averaging interval per coincidence trial

  std::vector<double> distance_grid() const;
  std::vector<double> loss_grid_db() const;
};

// Parses `[section]` headers and `key = value` lines; `#` and `;` start
// comments. Unknown sections or keys raise ConfigError naming the offender.
RunSettings load_run_settings(const std::string& path);

// Applies a `section.key=value` override on top of a parsed config.
void apply_override(RunSettings& rs, const std::string& assignment);

// Formats v in full round-trip decimal (17 significant digits).
std::string csv_number(double v);

// Writes lines joined by LF to path via a temp file and atomic rename.
void write_file_atomic(const std::string& path,
                       const std::vector<std::string>& lines);

}  // namespace qsc

#endif
