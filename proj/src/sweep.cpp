#include <freqconv/dressed.hpp>
#include <freqconv/sweep.hpp>

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <mutex>
#include <thread>

namespace freqconv {

namespace {

using nlohmann::json;

constexpr const char* k_schema = "freqconv-sweep-1";

const std::vector<std::string>& axis_params() {
  static const std::vector<std::string> names = {
      "omega_k", "rabi", "drive_frequency", "omega_f", "omega_e", "coupling"};
  return names;
}

const std::vector<std::string>& output_names() {
  static const std::vector<std::string> names = {
      "omega_k", "k",      "q",      "flow_r", "flow_t", "flow_tr", "flow_r_plus_t",
      "total",   "re_r",   "im_r",   "re_t",   "im_t",   "re_t_plus", "im_t_plus"};
  return names;
}

bool contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += v[i];
  }
  return out;
}

[[noreturn]] void bad_field(const std::string& path, const std::string& what) {
  fail(errc::invalid_argument, "config field '" + path + "' " + what);
}

const json& require_object(const json& j, const std::string& path) {
  if (!j.is_object()) bad_field(path, "must be an object");
  return j;
}

void check_keys(const json& obj, const std::vector<std::string>& allowed,
                const std::string& path) {
  for (const auto& item : obj.items()) {
    if (!contains(allowed, item.key())) {
      bad_field(path.empty() ? item.key() : path + "." + item.key(),
                "is not recognized (allowed: " + join(allowed) + ")");
    }
  }
}

double require_number(const json& obj, const std::string& key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) bad_field(path + "." + key, "is required");
  if (!it->is_number()) bad_field(path + "." + key, "must be a number");
  return it->get<double>();
}

double optional_number(const json& obj, const std::string& key, const std::string& path,
                       double fallback) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_number()) bad_field(path + "." + key, "must be a number");
  return it->get<double>();
}

int optional_integer(const json& obj, const std::string& key, const std::string& path,
                     int fallback) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_number_integer()) bad_field(path + "." + key, "must be an integer");
  return it->get<int>();
}

AtomConfig parse_atom(const json& j, const std::string& path) {
  require_object(j, path);
  check_keys(j, {"omega_e", "omega_f", "drive_frequency", "detuning", "rabi"}, path);
  AtomConfig atom;
  atom.omega_e = require_number(j, "omega_e", path);
  atom.rabi = require_number(j, "rabi", path);
  const bool has_drive = j.contains("drive_frequency");
  const bool has_det = j.contains("detuning");
  if (has_drive && has_det) {
    bad_field(path, "must set drive_frequency or detuning, not both");
  }
  if (has_det) {
    // omega_f defaults to the detuning itself, placing the drive at zero.
    const double detuning = require_number(j, "detuning", path);
    atom.omega_f = optional_number(j, "omega_f", path, detuning);
    atom.drive_frequency = atom.omega_f - detuning;
  } else if (has_drive) {
    atom.omega_f = require_number(j, "omega_f", path);
    atom.drive_frequency = require_number(j, "drive_frequency", path);
  } else {
    bad_field(path, "needs detuning, or omega_f with drive_frequency");
  }
  return atom;
}

CrwConfig parse_crw(const json& j, const std::string& path) {
  require_object(j, path);
  check_keys(j, {"omega", "xi", "coupling", "atom_site"}, path);
  CrwConfig cfg;
  cfg.omega = optional_number(j, "omega", path, cfg.omega);
  cfg.xi = optional_number(j, "xi", path, cfg.xi);
  cfg.coupling = optional_number(j, "coupling", path, cfg.coupling);
  cfg.atom_site = optional_integer(j, "atom_site", path, cfg.atom_site);
  return cfg;
}

LinearConfig parse_linear(const json& j, const std::string& path) {
  require_object(j, path);
  check_keys(j, {"group_velocity", "length", "coupling", "atom_position"}, path);
  LinearConfig cfg;
  cfg.group_velocity = optional_number(j, "group_velocity", path, cfg.group_velocity);
  cfg.length = optional_number(j, "length", path, cfg.length);
  cfg.coupling = optional_number(j, "coupling", path, cfg.coupling);
  cfg.atom_position = optional_number(j, "atom_position", path, cfg.atom_position);
  return cfg;
}

AxisSpec parse_axis(const json& j, const std::string& path) {
  require_object(j, path);
  check_keys(j, {"param", "start", "stop", "count"}, path);
  AxisSpec axis;
  auto it = j.find("param");
  if (it == j.end()) bad_field(path + ".param", "is required");
  if (!it->is_string()) bad_field(path + ".param", "must be a string");
  axis.param = it->get<std::string>();
  if (!contains(axis_params(), axis.param)) {
    bad_field(path + ".param", "must be one of: " + join(axis_params()));
  }
  axis.start = require_number(j, "start", path);
  axis.stop = require_number(j, "stop", path);
  auto cit = j.find("count");
  if (cit == j.end()) bad_field(path + ".count", "is required");
  if (!cit->is_number_integer()) bad_field(path + ".count", "must be an integer");
  axis.count = cit->get<int>();
  if (axis.count < 1) bad_field(path + ".count", "must be >= 1");
  if (!std::isfinite(axis.start) || !std::isfinite(axis.stop)) {
    bad_field(path, "start/stop must be finite");
  }
  return axis;
}

json parse_json_text(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    fail(errc::io_failure, "config is not valid JSON");
  }
  return j;
}

double axis_value(const AxisSpec& axis, int i) {
  if (axis.count == 1) return axis.start;
  const double n = axis.count - 1;
  return ((n - i) * axis.start + i * axis.stop) / n;
}

void apply_param(const std::string& param, double value, AtomConfig& atom, CrwConfig& crw,
                 LinearConfig& linear, std::optional<double>& omega_k) {
  if (param == "omega_k") {
    omega_k = value;
  } else if (param == "rabi") {
    atom.rabi = value;
  } else if (param == "drive_frequency") {
    atom.drive_frequency = value;
  } else if (param == "omega_f") {
    atom.omega_f = value;
  } else if (param == "omega_e") {
    atom.omega_e = value;
  } else {
    crw.coupling = value;
    linear.coupling = value;
  }
}

double output_value(const std::string& name, const ScatteringResult& r) {
  if (name == "omega_k") return r.incident_omega;
  if (name == "k") return r.incident_k;
  if (name == "q") {
    return r.partner.branch == PartnerBranch::propagating
               ? r.partner.value
               : std::numeric_limits<double>::quiet_NaN();
  }
  if (name == "flow_r") return r.flow_r;
  if (name == "flow_t") return r.flow_t;
  if (name == "flow_tr") return r.flow_tr;
  if (name == "flow_r_plus_t") return r.flow_r + r.flow_t;
  if (name == "total") return r.flow_r + r.flow_t + r.flow_tr;
  if (name == "re_r") return r.r_minus.real();
  if (name == "im_r") return r.r_minus.imag();
  if (name == "re_t") return r.t_minus.real();
  if (name == "im_t") return r.t_minus.imag();
  if (name == "re_t_plus") return r.t_plus.real();
  return r.t_plus.imag();
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

struct RowTask {
  double v1 = 0.0;
  std::optional<double> v2;
};

RowStatus evaluate_row(const SweepSpec& spec, const RowTask& task,
                       std::vector<double>& row) {
  AtomConfig atom = spec.atom;
  CrwConfig crw = spec.crw;
  LinearConfig linear = spec.linear;
  std::optional<double> omega_k = spec.omega_k;
  size_t col = 0;
  if (task.v2) {
    apply_param(spec.axis2->param, *task.v2, atom, crw, linear, omega_k);
    row[col++] = *task.v2;
  }
  apply_param(spec.axis1.param, task.v1, atom, crw, linear, omega_k);
  row[col++] = task.v1;

  const auto mark_out_of_band = [&] {
    for (size_t i = col; i < row.size(); ++i) {
      row[i] = std::numeric_limits<double>::quiet_NaN();
    }
    return RowStatus::out_of_band;
  };

  ScatteringResult res;
  if (spec.model == "crw") {
    const double c = (crw.omega - *omega_k) / (2.0 * crw.xi);
    if (!(std::abs(c) < 1.0)) return mark_out_of_band();
    res = scatter_crw_frequency(atom, crw, *omega_k);
  } else {
    if (!(*omega_k > 0.0)) return mark_out_of_band();
    res = scatter_linear(atom, linear, *omega_k);
  }
  for (size_t i = 0; col < row.size(); ++i, ++col) {
    row[col] = output_value(spec.outputs[i], res);
  }
  if (res.edge_guard) return RowStatus::band_edge_guard;
  if (!res.transfer_open) return RowStatus::channel_closed;
  return RowStatus::ok;
}

SweepSpec figure_base_crw(double rabi) {
  SweepSpec spec;
  spec.model = "crw";
  spec.atom = AtomConfig{.omega_e = 0.9, .omega_f = 0.6, .drive_frequency = 0.6,
                         .rabi = rabi};
  spec.crw = CrwConfig{.omega = 1.0, .xi = 0.2, .coupling = 0.3, .atom_site = 0};
  return spec;
}

SweepSpec figure_base_linear(double rabi) {
  SweepSpec spec;
  spec.model = "linear";
  spec.atom = AtomConfig{.omega_e = 0.9, .omega_f = 0.6, .drive_frequency = 0.6,
                         .rabi = rabi};
  spec.linear = LinearConfig{.group_velocity = 1.0, .length = 1.0, .coupling = 0.3,
                             .atom_position = 0.0};
  return spec;
}

SweepTable stitch_by_rabi(const std::vector<double>& rabis,
                          const std::function<SweepSpec(double)>& base, int threads) {
  SweepTable table;
  bool first = true;
  for (double eta : rabis) {
    SweepSpec spec = base(eta);
    SweepTable part = run_sweep(spec, threads);
    if (first) {
      table.model = part.model;
      table.units = part.units;
      table.columns.clear();
      table.columns.push_back("rabi");
      table.columns.insert(table.columns.end(), part.columns.begin(), part.columns.end());
      first = false;
    }
    for (size_t i = 0; i < part.rows.size(); ++i) {
      std::vector<double> row;
      row.reserve(part.rows[i].size() + 1);
      row.push_back(eta);
      row.insert(row.end(), part.rows[i].begin(), part.rows[i].end());
      table.rows.push_back(std::move(row));
      table.status.push_back(part.status[i]);
    }
  }
  return table;
}

}  // namespace

const char* row_status_name(RowStatus s) {
  switch (s) {
    case RowStatus::ok: return "ok";
    case RowStatus::band_edge_guard: return "band_edge_guard";
    case RowStatus::out_of_band: return "out_of_band";
    case RowStatus::channel_closed: return "channel_closed";
  }
  return "unknown";
}

SweepSpec parse_sweep_config(const std::string& json_text) {
  const json j = parse_json_text(json_text);
  require_object(j, "(top level)");
  check_keys(j, {"model", "atom", "crw", "linear", "omega_k", "axis", "axis2", "outputs"},
             "");
  SweepSpec spec;
  auto mit = j.find("model");
  if (mit == j.end()) bad_field("model", "is required");
  if (!mit->is_string()) bad_field("model", "must be a string");
  spec.model = mit->get<std::string>();
  if (spec.model != "crw" && spec.model != "linear") {
    bad_field("model", "must be \"crw\" or \"linear\"");
  }
  auto ait = j.find("atom");
  if (ait == j.end()) bad_field("atom", "is required");
  spec.atom = parse_atom(*ait, "atom");
  if (auto it = j.find("crw"); it != j.end()) spec.crw = parse_crw(*it, "crw");
  if (auto it = j.find("linear"); it != j.end()) spec.linear = parse_linear(*it, "linear");
  if (auto it = j.find("omega_k"); it != j.end()) {
    if (!it->is_number()) bad_field("omega_k", "must be a number");
    spec.omega_k = it->get<double>();
  }
  auto xit = j.find("axis");
  if (xit == j.end()) bad_field("axis", "is required");
  spec.axis1 = parse_axis(*xit, "axis");
  if (auto it = j.find("axis2"); it != j.end()) spec.axis2 = parse_axis(*it, "axis2");
  if (auto it = j.find("outputs"); it != j.end()) {
    if (!it->is_array()) bad_field("outputs", "must be an array of strings");
    for (const auto& entry : *it) {
      if (!entry.is_string()) bad_field("outputs", "must be an array of strings");
      const std::string name = entry.get<std::string>();
      if (!contains(output_names(), name)) {
        bad_field("outputs", "unknown output '" + name +
                                 "' (allowed: " + join(output_names()) + ")");
      }
      spec.outputs.push_back(name);
    }
  }
  return spec;
}

SweepTable run_sweep(const SweepSpec& input, int threads) {
  SweepSpec spec = input;
  if (spec.model != "crw" && spec.model != "linear") {
    fail(errc::invalid_argument, "model must be \"crw\" or \"linear\"");
  }
  if (spec.outputs.empty()) spec.outputs = {"flow_r", "flow_t", "flow_tr"};
  for (const auto& name : spec.outputs) {
    if (!contains(output_names(), name)) {
      fail(errc::invalid_argument,
           "unknown output '" + name + "' (allowed: " + join(output_names()) + ")");
    }
  }
  if (!contains(axis_params(), spec.axis1.param)) {
    fail(errc::invalid_argument, "unknown sweep parameter '" + spec.axis1.param + "'");
  }
  if (spec.axis1.count < 1) fail(errc::invalid_argument, "axis count must be >= 1");
  if (spec.axis2) {
    if (!contains(axis_params(), spec.axis2->param)) {
      fail(errc::invalid_argument, "unknown sweep parameter '" + spec.axis2->param + "'");
    }
    if (spec.axis2->count < 1) fail(errc::invalid_argument, "axis count must be >= 1");
    if (spec.axis2->param == spec.axis1.param) {
      fail(errc::invalid_argument, "axis and axis2 must sweep different parameters");
    }
  }
  const bool sweeps_omega =
      spec.axis1.param == "omega_k" || (spec.axis2 && spec.axis2->param == "omega_k");
  if (!sweeps_omega && !spec.omega_k) {
    fail(errc::invalid_argument,
         "omega_k must be fixed in the config or swept by an axis");
  }
  if (spec.model == "crw") {
    spec.crw.validate();
  } else {
    spec.linear.validate();
  }

  SweepTable table;
  table.model = spec.model;
  table.units = spec.model == "crw" ? "omega = 1" : "v_g = L = 1";
  if (spec.axis2) table.columns.push_back(spec.axis2->param);
  table.columns.push_back(spec.axis1.param);
  table.columns.insert(table.columns.end(), spec.outputs.begin(), spec.outputs.end());

  const long n2 = spec.axis2 ? spec.axis2->count : 1;
  const long total = static_cast<long>(spec.axis1.count) * n2;
  if (total > 50'000'000L) {
    fail(errc::invalid_argument, "sweep grid exceeds 50M rows");
  }
  table.rows.assign(total, std::vector<double>(table.columns.size(), 0.0));
  table.status.assign(total, RowStatus::ok);

  auto run_range = [&](long begin, long end) {
    for (long idx = begin; idx < end; ++idx) {
      RowTask task;
      const int i1 = static_cast<int>(idx % spec.axis1.count);
      task.v1 = axis_value(spec.axis1, i1);
      if (spec.axis2) {
        const int i2 = static_cast<int>(idx / spec.axis1.count);
        task.v2 = axis_value(*spec.axis2, i2);
      }
      table.status[idx] = evaluate_row(spec, task, table.rows[idx]);
    }
  };

  const int workers =
      std::max(1, std::min<int>(threads, static_cast<int>(std::min<long>(total, 256))));
  if (workers == 1) {
    run_range(0, total);
    return table;
  }
  std::vector<std::thread> pool;
  std::exception_ptr first_error;
  std::mutex error_mutex;
  const long chunk = (total + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const long begin = w * chunk;
    const long end = std::min(total, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&, begin, end] {
      try {
        run_range(begin, end);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
  return table;
}

std::string render_csv(const SweepTable& table) {
  std::string out;
  out += "# schema: ";
  out += k_schema;
  out += "\n# model: " + table.model + "\n# units: " + table.units + "\n";
  for (size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out += ',';
    out += table.columns[i];
  }
  out += ",status\n";
  for (size_t r = 0; r < table.rows.size(); ++r) {
    for (double v : table.rows[r]) {
      out += format_double(v);
      out += ',';
    }
    out += row_status_name(table.status[r]);
    out += '\n';
  }
  return out;
}

std::string render_json(const SweepTable& table) {
  json doc;
  doc["schema"] = k_schema;
  doc["model"] = table.model;
  doc["units"] = table.units;
  doc["columns"] = table.columns;
  json rows = json::array();
  for (const auto& row : table.rows) {
    json jrow = json::array();
    for (double v : row) {
      if (std::isfinite(v)) {
        jrow.push_back(v);
      } else {
        jrow.push_back(nullptr);
      }
    }
    rows.push_back(std::move(jrow));
  }
  doc["rows"] = std::move(rows);
  json status = json::array();
  for (RowStatus s : table.status) status.push_back(row_status_name(s));
  doc["status"] = std::move(status);
  return doc.dump(2) + "\n";
}

SweepTable run_figure(const std::string& figure_id, int threads) {
  if (figure_id == "fig3a") {
    SweepSpec spec = figure_base_crw(0.1);
    spec.axis1 = {"omega_k", 0.6, 1.4, 2001};
    spec.outputs = {"flow_r", "flow_t", "flow_r_plus_t", "total"};
    return run_sweep(spec, threads);
  }
  if (figure_id == "fig3b") {
    return stitch_by_rabi({0.05, 0.1, 0.2},
                          [](double eta) {
                            SweepSpec spec = figure_base_crw(eta);
                            spec.axis1 = {"omega_k", 0.6, 1.4, 2001};
                            spec.outputs = {"flow_tr"};
                            return spec;
                          },
                          threads);
  }
  if (figure_id == "fig3c") {
    SweepSpec spec = figure_base_crw(0.1);
    spec.axis2 = AxisSpec{"drive_frequency", 0.3, 0.9, 301};
    spec.axis1 = {"omega_k", 0.6, 1.4, 301};
    spec.outputs = {"flow_tr"};
    return run_sweep(spec, threads);
  }
  if (figure_id == "fig5a") {
    SweepSpec spec = figure_base_linear(0.2);
    spec.axis1 = {"omega_k", 0.0, 2.5, 2001};
    spec.outputs = {"flow_r", "flow_t", "flow_tr", "total"};
    return run_sweep(spec, threads);
  }
  if (figure_id == "fig5b") {
    return stitch_by_rabi({0.05, 0.2, 0.4},
                          [](double eta) {
                            SweepSpec spec = figure_base_linear(eta);
                            spec.axis1 = {"omega_k", 0.0, 2.5, 2001};
                            spec.outputs = {"flow_tr"};
                            return spec;
                          },
                          threads);
  }
  fail(errc::invalid_argument,
       "unknown figure id '" + figure_id +
           "' (available: fig3a, fig3b, fig3c, fig5a, fig5b)");
}

OracleCheckSpec parse_oracle_config(const std::string& json_text) {
  const json j = parse_json_text(json_text);
  require_object(j, "(top level)");
  check_keys(j,
             {"atom", "crw", "frequencies", "sites", "sigma_x", "x0", "error_budget",
              "dump_path"},
             "");
  OracleCheckSpec spec;
  auto ait = j.find("atom");
  if (ait == j.end()) bad_field("atom", "is required");
  spec.atom = parse_atom(*ait, "atom");
  if (auto it = j.find("crw"); it != j.end()) spec.crw = parse_crw(*it, "crw");
  auto fit = j.find("frequencies");
  if (fit == j.end()) bad_field("frequencies", "is required");
  if (!fit->is_array() || fit->empty()) {
    bad_field("frequencies", "must be a non-empty array of numbers");
  }
  for (const auto& entry : *fit) {
    if (!entry.is_number()) bad_field("frequencies", "must be a non-empty array of numbers");
    spec.frequencies.push_back(entry.get<double>());
  }
  spec.sites = optional_integer(j, "sites", "", spec.sites);
  spec.sigma_x = optional_number(j, "sigma_x", "", spec.sigma_x);
  spec.x0 = optional_number(j, "x0", "", spec.x0);
  spec.error_budget = optional_number(j, "error_budget", "", spec.error_budget);
  if (auto it = j.find("dump_path"); it != j.end()) {
    if (!it->is_string()) bad_field("dump_path", "must be a string");
    spec.dump_path = it->get<std::string>();
  }
  return spec;
}

OracleReport run_oracle_check(const OracleCheckSpec& spec) {
  OracleReport report;
  report.spec = spec;
  const LatticeModel model(spec.atom, spec.crw, spec.sites);
  for (double omega : spec.frequencies) {
    const double k0 = wavevector_for_frequency(spec.crw, omega);
    WavepacketSpec packet;
    packet.k0 = k0;
    packet.sigma_x = spec.sigma_x;
    packet.x0 = spec.x0;
    packet.error_budget = spec.error_budget;
    const OracleFlows flows = scatter_packet(model, packet);
    const ScatteringResult analytic = scatter_crw(spec.atom, spec.crw, k0);
    report.runs.push_back(compare_flows(spec.atom, spec.crw, analytic, flows, packet));
  }
  report.all_pass = std::all_of(report.runs.begin(), report.runs.end(),
                                [](const FlowComparison& c) { return c.pass; });
  if (spec.dump_path && !spec.frequencies.empty()) {
    WavepacketSpec packet;
    packet.k0 = report.runs.back().k0;
    packet.sigma_x = spec.sigma_x;
    packet.x0 = spec.x0;
    packet.t_final = report.runs.back().t_final;
    packet.error_budget = spec.error_budget;
    auto psi = initial_packet(model, packet);
    psi = propagate(model, std::move(psi), packet.t_final,
                    PropagatorOptions{.error_budget = spec.error_budget});
    write_state(model, psi, *spec.dump_path);
  }
  return report;
}

std::string render_oracle_report(const OracleReport& report) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof(line),
                "# wavepacket check: sites=%d sigma_x=%g coupling=%g frequencies=%zu\n",
                report.spec.sites, report.spec.sigma_x, report.spec.crw.coupling,
                report.runs.size());
  out += line;
  for (const auto& run : report.runs) {
    std::snprintf(line, sizeof(line), "omega_k=%.6f k0=%.6f t_final=%.1f\n", run.omega_k,
                  run.k0, run.t_final);
    out += line;
    const struct {
      const char* name;
      double analytic, oracle, dev, tol;
    } parts[] = {
        {"reflect ", run.analytic_r, run.oracle_r, run.dev_r, run.tol_r},
        {"transmit", run.analytic_t, run.oracle_t, run.dev_t, run.tol_t},
        {"transfer", run.analytic_tr, run.oracle_tr, run.dev_tr, run.tol_tr},
    };
    for (const auto& p : parts) {
      std::snprintf(line, sizeof(line),
                    "  %s closed_form=%.6f packet=%.6f dev=%.2e tol=%.2e %s\n", p.name,
                    p.analytic, p.oracle, p.dev, p.tol, p.dev <= p.tol ? "ok" : "FAIL");
      out += line;
    }
    std::snprintf(line, sizeof(line), "  atom_residual=%.2e leak=%.2e verdict=%s\n",
                  run.atom_residual, run.leak, run.pass ? "pass" : "FAIL");
    out += line;
  }
  size_t passed = 0;
  for (const auto& run : report.runs) passed += run.pass ? 1 : 0;
  std::snprintf(line, sizeof(line), "summary: %zu/%zu frequencies within tolerance\n",
                passed, report.runs.size());
  out += line;
  return out;
}

}  // namespace freqconv
