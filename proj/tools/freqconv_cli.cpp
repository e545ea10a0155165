#include <freqconv.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

int exit_code_for(fc_status status) {
  if (status == FC_OK) return 0;
  if (status == FC_NO_CONVERGENCE || status == FC_PREMATURE_MEASUREMENT) return 2;
  return 1;
}

int report_failure(fc_status status) {
  std::cerr << "error (" << fc_status_name(status) << "): " << fc_last_error() << "\n";
  return exit_code_for(status);
}

/// Config arguments accept either a file path or an inline JSON object.
std::optional<std::string> load_config(const std::string& arg) {
  if (!arg.empty() && arg.front() == '{') return arg;
  std::ifstream in(arg);
  if (!in) {
    std::cerr << "error (io): cannot read config file '" << arg << "'\n";
    return std::nullopt;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return true;
  }
  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "error (io): cannot open '" << out_path << "' for writing\n";
    return false;
  }
  out << text;
  if (!out) {
    std::cerr << "error (io): write to '" << out_path << "' failed\n";
    return false;
  }
  return true;
}

struct AtomFlags {
  double omega_e = 0.0;
  double rabi = 0.0;
  double omega_f = 0.0;
  double drive_frequency = 0.0;
  double detuning = 0.0;
  bool has_omega_f = false;
  bool has_drive = false;
  bool has_detuning = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--omega-e", omega_e, "excited-level frequency")->required();
    cmd->add_option("--rabi", rabi, "drive Rabi rate");
    cmd->add_option("--omega-f", omega_f, "driven-level frequency")
        ->each([this](const std::string&) { has_omega_f = true; });
    cmd->add_option("--drive-freq", drive_frequency, "classical drive frequency")
        ->each([this](const std::string&) { has_drive = true; });
    cmd->add_option("--detuning", detuning,
                    "drive detuning omega_f - drive frequency (alternative to "
                    "--omega-f/--drive-freq)")
        ->each([this](const std::string&) { has_detuning = true; });
  }

  bool resolve(fc_atom_params* out) const {
    out->omega_e = omega_e;
    out->rabi = rabi;
    if (has_drive) {
      if (!has_omega_f || has_detuning) {
        std::cerr << "error (invalid_argument): --drive-freq requires --omega-f and "
                     "excludes --detuning\n";
        return false;
      }
      out->omega_f = omega_f;
      out->drive_frequency = drive_frequency;
      return true;
    }
    if (has_detuning) {
      out->omega_f = has_omega_f ? omega_f : detuning;
      out->drive_frequency = out->omega_f - detuning;
      return true;
    }
    std::cerr << "error (invalid_argument): provide --detuning or --omega-f with "
                 "--drive-freq\n";
    return false;
  }
};

void print_dressed(const fc_dressed& dressed) {
  std::printf("theta = %.12g\n", dressed.theta);
  std::printf("nu_minus = %.12g\n", dressed.nu_minus);
  std::printf("nu_plus = %.12g\n", dressed.nu_plus);
  std::printf("splitting = %.12g\n", dressed.splitting);
}

void print_result(const fc_scatter_result& res) {
  std::printf("omega_k = %.12g\n", res.incident_omega);
  std::printf("k = %.12g\n", res.incident_k);
  const char* branch = res.partner_branch == FC_PARTNER_PROPAGATING
                           ? "propagating"
                           : (res.partner_branch == FC_PARTNER_EVANESCENT_BELOW
                                  ? "evanescent_below"
                                  : "evanescent_above");
  std::printf("partner = %s %.12g\n", branch, res.partner_value);
  std::printf("r = %.12g %+.12gi\n", res.re_r, res.im_r);
  std::printf("t = %.12g %+.12gi\n", res.re_t, res.im_t);
  std::printf("t_plus = %.12g %+.12gi\n", res.re_t_plus, res.im_t_plus);
  std::printf("flow_r = %.12g\n", res.flow_r);
  std::printf("flow_t = %.12g\n", res.flow_t);
  std::printf("flow_tr = %.12g\n", res.flow_tr);
  std::printf("total = %.12g\n", res.flow_r + res.flow_t + res.flow_tr);
  std::printf("status = %s\n", res.edge_guard ? "band_edge_guard"
                               : (res.transfer_open ? "ok" : "channel_closed"));
}

bool parse_params_config(const std::string& text, fc_atom_params* atom,
                         fc_crw_params* crw) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains("atom") ||
      !j["atom"].is_object()) {
    std::cerr << "error (invalid_argument): config must be a JSON object with an "
                 "\"atom\" section\n";
    return false;
  }
  const auto& a = j["atom"];
  auto num = [](const nlohmann::json& obj, const char* key, double fallback) {
    return obj.contains(key) && obj[key].is_number() ? obj[key].get<double>() : fallback;
  };
  if (!a.contains("omega_e") || !a.contains("rabi")) {
    std::cerr << "error (invalid_argument): atom.omega_e and atom.rabi are required\n";
    return false;
  }
  atom->omega_e = num(a, "omega_e", 0.0);
  atom->rabi = num(a, "rabi", 0.0);
  if (a.contains("detuning")) {
    atom->omega_f = num(a, "omega_f", num(a, "detuning", 0.0));
    atom->drive_frequency = atom->omega_f - num(a, "detuning", 0.0);
  } else if (a.contains("omega_f") && a.contains("drive_frequency")) {
    atom->omega_f = num(a, "omega_f", 0.0);
    atom->drive_frequency = num(a, "drive_frequency", 0.0);
  } else {
    std::cerr << "error (invalid_argument): atom needs detuning, or omega_f with "
                 "drive_frequency\n";
    return false;
  }
  crw->omega = 1.0;
  crw->xi = 0.2;
  crw->coupling = 0.0;
  crw->atom_site = 0;
  crw->reserved = 0;
  if (j.contains("crw") && j["crw"].is_object()) {
    const auto& c = j["crw"];
    crw->omega = num(c, "omega", crw->omega);
    crw->xi = num(c, "xi", crw->xi);
    crw->coupling = num(c, "coupling", crw->coupling);
    if (c.contains("atom_site") && c["atom_site"].is_number_integer()) {
      crw->atom_site = c["atom_site"].get<int32_t>();
    }
  }
  return true;
}

int run_bound_states(const std::string& config_text) {
  fc_atom_params atom{};
  fc_crw_params crw{};
  if (!parse_params_config(config_text, &atom, &crw)) return 1;

  fc_dressed dressed{};
  fc_status status = fc_dressed_pair(&atom, &dressed);
  if (status != FC_OK) return report_failure(status);
  print_dressed(dressed);

  fc_band_structure bands{};
  status = fc_band_structure_get(&atom, &crw, &bands);
  if (status != FC_OK) return report_failure(status);
  std::printf("negative_band = [%.12g, %.12g]\n", bands.negative_lo, bands.negative_hi);
  std::printf("positive_band = [%.12g, %.12g]\n", bands.positive_lo, bands.positive_hi);
  std::printf("configuration = %s\n", bands.configuration == FC_BANDS_PARTIAL_OVERLAP
                                          ? "partial_overlap"
                                          : "separated");
  if (bands.has_overlap != 0) {
    std::printf("overlap = [%.12g, %.12g]\n", bands.overlap_lo, bands.overlap_hi);
  }

  std::vector<double> energies(8);
  int32_t count = 0;
  status = fc_bound_states(&atom, &crw, energies.data(),
                           static_cast<int32_t>(energies.size()), &count);
  if (status == FC_BUFFER_TOO_SMALL) {
    energies.resize(count);
    status = fc_bound_states(&atom, &crw, energies.data(), count, &count);
  }
  if (status != FC_OK) return report_failure(status);
  std::printf("bound_states = %d\n", count);
  for (int32_t i = 0; i < count; ++i) {
    std::printf("bound_state[%d] = %.12g\n", i, energies[i]);
  }

  if (bands.configuration == FC_BANDS_PARTIAL_OVERLAP) {
    int32_t found = 0;
    double omega_star = 0.0;
    status = fc_closed_channel_resonance(&atom, &crw, &found, &omega_star);
    if (status != FC_OK) return report_failure(status);
    if (found != 0) {
      std::printf("complete_reflection_omega_k = %.12g\n", omega_star);
    } else {
      std::printf("complete_reflection_omega_k = none\n");
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"single-photon scattering and frequency conversion for a driven "
               "three-level atom in a 1D waveguide"};
  app.require_subcommand(1);
  app.fallthrough();
  long long seed = 0;
  app.add_option("--seed", seed,
                 "bookkeeping seed recorded by callers; every computation here is "
                 "deterministic, so it changes nothing");

  // scatter
  auto* scatter = app.add_subcommand("scatter", "closed-form amplitudes at one frequency");
  scatter->require_subcommand(1);
  auto* crw_cmd = scatter->add_subcommand("crw", "cosine-dispersion waveguide");
  AtomFlags crw_atom;
  crw_atom.attach(crw_cmd);
  fc_crw_params crw_params{1.0, 0.2, 0.0, 0, 0};
  crw_cmd->add_option("--omega", crw_params.omega, "band-center frequency");
  crw_cmd->add_option("--xi", crw_params.xi, "resonator hopping");
  crw_cmd->add_option("--coupling", crw_params.coupling, "atom-resonator coupling");
  int crw_site = 0;
  crw_cmd->add_option("--site", crw_site, "atom attachment site");
  double crw_omega_k = 0.0, crw_k = 0.0;
  auto* opt_omega_k = crw_cmd->add_option("--omega-k", crw_omega_k, "incident frequency");
  auto* opt_k = crw_cmd->add_option("--k", crw_k, "incident wavevector in (0, pi)");

  auto* lin_cmd = scatter->add_subcommand("linear", "linear-dispersion waveguide");
  AtomFlags lin_atom;
  lin_atom.attach(lin_cmd);
  fc_linear_params lin_params{1.0, 1.0, 0.0, 0.0};
  lin_cmd->add_option("--vg", lin_params.group_velocity, "group velocity");
  lin_cmd->add_option("--length", lin_params.length, "quantization length");
  lin_cmd->add_option("--coupling", lin_params.coupling, "atom-field coupling");
  lin_cmd->add_option("--position", lin_params.atom_position, "atom coordinate");
  double lin_omega_k = 0.0;
  lin_cmd->add_option("--omega-k", lin_omega_k, "incident frequency")->required();

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "evaluate a parameter grid from a config");
  std::string sweep_config, sweep_out, sweep_format = "csv";
  int sweep_threads = 1;
  sweep_cmd->add_option("config", sweep_config, "JSON config file path or inline object")
      ->required();
  sweep_cmd->add_option("--out", sweep_out, "output file (default stdout)");
  sweep_cmd->add_option("--format", sweep_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  sweep_cmd->add_option("--threads", sweep_threads, "worker threads");

  // figure
  auto* figure_cmd = app.add_subcommand("figure", "evaluate a bundled reference dataset");
  std::string figure_id, figure_out, figure_format = "csv";
  int figure_threads = 1;
  figure_cmd->add_option("id", figure_id, "fig3a, fig3b, fig3c, fig5a, or fig5b")
      ->required();
  figure_cmd->add_option("--out", figure_out, "output file (default stdout)");
  figure_cmd->add_option("--format", figure_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  figure_cmd->add_option("--threads", figure_threads, "worker threads");

  // bound-states
  auto* bound_cmd =
      app.add_subcommand("bound-states", "channel bands, bound states, and the "
                                         "complete-reflection frequency");
  std::string bound_config;
  bound_cmd->add_option("config", bound_config, "JSON config file path or inline object")
      ->required();

  // oracle
  auto* oracle_cmd = app.add_subcommand(
      "oracle", "compare closed forms against finite-lattice wavepackets");
  std::string oracle_config, oracle_out;
  oracle_cmd->add_option("config", oracle_config, "JSON config file path or inline object")
      ->required();
  oracle_cmd->add_option("--out", oracle_out, "report file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  if (crw_cmd->parsed()) {
    fc_atom_params atom{};
    if (!crw_atom.resolve(&atom)) return 1;
    crw_params.atom_site = crw_site;
    const bool by_freq = opt_omega_k->count() > 0;
    const bool by_k = opt_k->count() > 0;
    if (by_freq == by_k) {
      std::cerr << "error (invalid_argument): give exactly one of --omega-k or --k\n";
      return 1;
    }
    fc_dressed dressed{};
    fc_status status = fc_dressed_pair(&atom, &dressed);
    if (status != FC_OK) return report_failure(status);
    print_dressed(dressed);
    fc_scatter_result res{};
    status = by_freq ? fc_scatter_crw_frequency(&atom, &crw_params, crw_omega_k, &res)
                     : fc_scatter_crw(&atom, &crw_params, crw_k, &res);
    if (status != FC_OK) return report_failure(status);
    print_result(res);
    return 0;
  }

  if (lin_cmd->parsed()) {
    fc_atom_params atom{};
    if (!lin_atom.resolve(&atom)) return 1;
    fc_dressed dressed{};
    fc_status status = fc_dressed_pair(&atom, &dressed);
    if (status != FC_OK) return report_failure(status);
    print_dressed(dressed);
    fc_scatter_result res{};
    status = fc_scatter_linear(&atom, &lin_params, lin_omega_k, &res);
    if (status != FC_OK) return report_failure(status);
    print_result(res);
    return 0;
  }

  if (sweep_cmd->parsed()) {
    const auto config = load_config(sweep_config);
    if (!config) return 1;
    char* text = nullptr;
    const fc_status status =
        fc_sweep_run(config->c_str(), sweep_threads,
                     sweep_format == "json" ? FC_FORMAT_JSON : FC_FORMAT_CSV, &text);
    if (status != FC_OK) return report_failure(status);
    const bool ok = write_output(text, sweep_out);
    fc_string_free(text);
    return ok ? 0 : 1;
  }

  if (figure_cmd->parsed()) {
    char* text = nullptr;
    const fc_status status =
        fc_figure_run(figure_id.c_str(), figure_threads,
                      figure_format == "json" ? FC_FORMAT_JSON : FC_FORMAT_CSV, &text);
    if (status != FC_OK) return report_failure(status);
    const bool ok = write_output(text, figure_out);
    fc_string_free(text);
    return ok ? 0 : 1;
  }

  if (bound_cmd->parsed()) {
    const auto config = load_config(bound_config);
    if (!config) return 1;
    return run_bound_states(*config);
  }

  if (oracle_cmd->parsed()) {
    const auto config = load_config(oracle_config);
    if (!config) return 1;
    char* text = nullptr;
    int32_t all_pass = 0;
    const fc_status status = fc_oracle_run(config->c_str(), &text, &all_pass);
    if (status != FC_OK) return report_failure(status);
    const bool ok = write_output(text, oracle_out);
    fc_string_free(text);
    if (!ok) return 1;
    return all_pass != 0 ? 0 : 3;
  }

  return 1;
}
