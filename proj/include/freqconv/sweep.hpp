#pragma once

#include <optional>
#include <string>
#include <vector>

#include <freqconv/crw.hpp>
#include <freqconv/lattice.hpp>
#include <freqconv/linear.hpp>
#include <freqconv/types.hpp>

namespace freqconv {

/// One sweep axis.  Values are ((count-1-i)*start + i*stop)/(count-1), so the
/// endpoints are exact and the grid is deterministic.
struct AxisSpec {
  std::string param;  ///< one of: omega_k, rabi, drive_frequency, omega_f, omega_e, coupling
  double start = 0.0;
  double stop = 0.0;
  int count = 0;
};

struct SweepSpec {
  std::string model;  ///< "crw" or "linear"
  AtomConfig atom;
  CrwConfig crw;
  LinearConfig linear;
  std::optional<double> omega_k;  ///< fixed incident frequency when no axis sweeps it
  AxisSpec axis1;
  std::optional<AxisSpec> axis2;
  std::vector<std::string> outputs;  ///< subset of the documented output set
};

/// Per-row evaluation status, emitted verbatim in the status column.
enum class RowStatus { ok, band_edge_guard, out_of_band, channel_closed };
const char* row_status_name(RowStatus s);

/// Column-oriented sweep result.  rows[i] holds one double per value column
/// (NaN when the row is out of band); status[i] tags the row.  Row order is
/// axis2-major: axis2 varies slowest.
struct SweepTable {
  std::string model;
  std::string units;  ///< "omega = 1" (crw) or "v_g = L = 1" (linear)
  std::vector<std::string> columns;  ///< value columns, excluding status
  std::vector<std::vector<double>> rows;
  std::vector<RowStatus> status;
};

/// Parse and validate a JSON sweep configuration.  Error messages carry the
/// offending field path.
SweepSpec parse_sweep_config(const std::string& json_text);

/// Evaluate the grid.  threads <= 1 runs serially; any thread count yields
/// byte-identical tables (rows are independent pure evaluations written to
/// preallocated slots).
SweepTable run_sweep(const SweepSpec& spec, int threads = 1);

/// CSV with '#' metadata lines, a header row, shortest round-trip number
/// formatting, and a trailing status column.
std::string render_csv(const SweepTable& table);

/// JSON document with the same content ({schema, model, units, columns, rows}).
std::string render_json(const SweepTable& table);

/// Bundled dataset presets (fig3a, fig3b, fig3c, fig5a, fig5b); parameters
/// are fixed reference sets documented in the README.  Unknown ids throw
/// errc::invalid_argument.
SweepTable run_figure(const std::string& figure_id, int threads = 1);

/// Wavepacket-vs-closed-form check over a list of incident frequencies.
struct OracleCheckSpec {
  AtomConfig atom;
  CrwConfig crw;
  std::vector<double> frequencies;  ///< incident photon frequencies
  int sites = 1200;
  double sigma_x = 40.0;
  double x0 = 0.0;          ///< <= 0: auto
  double error_budget = 1e-8;
  std::optional<std::string> dump_path;  ///< final-state dump of the last run
};

OracleCheckSpec parse_oracle_config(const std::string& json_text);

struct OracleReport {
  OracleCheckSpec spec;
  std::vector<FlowComparison> runs;
  bool all_pass = false;
};

OracleReport run_oracle_check(const OracleCheckSpec& spec);

std::string render_oracle_report(const OracleReport& report);

}  // namespace freqconv
