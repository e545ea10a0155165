#include <freqconv.h>

#include <freqconv/crw.hpp>
#include <freqconv/dressed.hpp>
#include <freqconv/lattice.hpp>
#include <freqconv/linear.hpp>
#include <freqconv/sweep.hpp>
#include <freqconv/types.hpp>

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

struct fc_lattice {
  freqconv::LatticeModel model;
};

namespace {

thread_local std::string g_last_error;

fc_status map_code(freqconv::errc code) {
  using freqconv::errc;
  switch (code) {
    case errc::invalid_argument: return FC_INVALID_ARGUMENT;
    case errc::degenerate_drive: return FC_DEGENERATE_DRIVE;
    case errc::out_of_band: return FC_OUT_OF_BAND;
    case errc::precondition: return FC_PRECONDITION;
    case errc::no_convergence: return FC_NO_CONVERGENCE;
    case errc::premature_measurement: return FC_PREMATURE_MEASUREMENT;
    case errc::parameter_mismatch: return FC_PARAMETER_MISMATCH;
    case errc::io_failure: return FC_IO;
  }
  return FC_INTERNAL;
}

template <class F>
fc_status guarded(F&& body) {
  try {
    body();
    return FC_OK;
  } catch (const freqconv::Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return FC_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return FC_INTERNAL;
  }
}

fc_status null_pointer() {
  g_last_error = "null pointer argument";
  return FC_NULL_POINTER;
}

freqconv::AtomConfig to_atom(const fc_atom_params& p) {
  return {p.omega_e, p.omega_f, p.drive_frequency, p.rabi};
}

freqconv::CrwConfig to_crw(const fc_crw_params& p) {
  return {p.omega, p.xi, p.coupling, p.atom_site};
}

freqconv::LinearConfig to_linear(const fc_linear_params& p) {
  return {p.group_velocity, p.length, p.coupling, p.atom_position};
}

freqconv::WavepacketSpec to_packet(const fc_packet_params& p) {
  freqconv::WavepacketSpec spec;
  spec.k0 = p.k0;
  spec.sigma_x = p.sigma_x > 0.0 ? p.sigma_x : 40.0;
  spec.x0 = p.x0;
  spec.t_final = p.t_final;
  spec.error_budget = p.error_budget > 0.0 ? p.error_budget : 1e-8;
  return spec;
}

freqconv::PropagatorOptions to_options(const fc_packet_params& p) {
  freqconv::PropagatorOptions opts;
  opts.error_budget = p.error_budget > 0.0 ? p.error_budget : 1e-8;
  opts.degree_multiplier = p.degree_multiplier >= 1 ? p.degree_multiplier : 1;
  opts.step_multiplier = p.step_multiplier >= 1 ? p.step_multiplier : 1;
  return opts;
}

int32_t to_branch(freqconv::PartnerBranch branch) {
  switch (branch) {
    case freqconv::PartnerBranch::propagating: return FC_PARTNER_PROPAGATING;
    case freqconv::PartnerBranch::evanescent_below: return FC_PARTNER_EVANESCENT_BELOW;
    case freqconv::PartnerBranch::evanescent_above: return FC_PARTNER_EVANESCENT_ABOVE;
  }
  return FC_PARTNER_PROPAGATING;
}

void fill_result(const freqconv::ScatteringResult& r, fc_scatter_result* out) {
  out->re_r = r.r_minus.real();
  out->im_r = r.r_minus.imag();
  out->re_t = r.t_minus.real();
  out->im_t = r.t_minus.imag();
  out->re_t_plus = r.t_plus.real();
  out->im_t_plus = r.t_plus.imag();
  out->flow_r = r.flow_r;
  out->flow_t = r.flow_t;
  out->flow_tr = r.flow_tr;
  out->incident_k = r.incident_k;
  out->incident_omega = r.incident_omega;
  out->partner_value = r.partner.value;
  out->partner_branch = to_branch(r.partner.branch);
  out->transfer_open = r.transfer_open ? 1 : 0;
  out->edge_guard = r.edge_guard ? 1 : 0;
  out->reserved = 0;
}

void fill_flows(const freqconv::OracleFlows& f, fc_oracle_flows* out) {
  out->reflect = f.reflect;
  out->transmit = f.transmit;
  out->transfer = f.transfer;
  out->atom_residual = f.atom_residual;
  out->leak = f.leak;
  out->norm_error = f.norm_error;
  out->t_final = f.t_final;
}

freqconv::OracleFlows to_flows(const fc_oracle_flows& f) {
  freqconv::OracleFlows flows;
  flows.reflect = f.reflect;
  flows.transmit = f.transmit;
  flows.transfer = f.transfer;
  flows.atom_residual = f.atom_residual;
  flows.leak = f.leak;
  flows.norm_error = f.norm_error;
  flows.t_final = f.t_final;
  return flows;
}

char* dup_text(const std::string& text) {
  char* buf = static_cast<char*>(std::malloc(text.size() + 1));
  if (buf == nullptr) throw std::bad_alloc();
  std::memcpy(buf, text.c_str(), text.size() + 1);
  return buf;
}

fc_status copy_values(const std::vector<double>& values, double* out, int32_t capacity,
                      int32_t* count) {
  *count = static_cast<int32_t>(values.size());
  const int32_t writable =
      capacity < *count ? (capacity < 0 ? 0 : capacity) : *count;
  if (writable > 0 && out == nullptr) return null_pointer();
  for (int32_t i = 0; i < writable; ++i) out[i] = values[i];
  if (*count > capacity) {
    g_last_error = "output buffer too small";
    return FC_BUFFER_TOO_SMALL;
  }
  return FC_OK;
}

std::string render_table(const freqconv::SweepTable& table, int32_t format) {
  if (format == FC_FORMAT_CSV) return freqconv::render_csv(table);
  if (format == FC_FORMAT_JSON) return freqconv::render_json(table);
  freqconv::fail(freqconv::errc::invalid_argument, "format must be 0 (csv) or 1 (json)");
}

}  // namespace

extern "C" {

const char* fc_status_name(fc_status status) {
  switch (status) {
    case FC_OK: return "ok";
    case FC_INVALID_ARGUMENT: return "invalid_argument";
    case FC_DEGENERATE_DRIVE: return "degenerate_drive";
    case FC_OUT_OF_BAND: return "out_of_band";
    case FC_PRECONDITION: return "precondition";
    case FC_NO_CONVERGENCE: return "no_convergence";
    case FC_PREMATURE_MEASUREMENT: return "premature_measurement";
    case FC_PARAMETER_MISMATCH: return "parameter_mismatch";
    case FC_IO: return "io";
    case FC_NO_RESULT: return "no_result";
    case FC_BUFFER_TOO_SMALL: return "buffer_too_small";
    case FC_NULL_POINTER: return "null_pointer";
    case FC_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* fc_last_error(void) { return g_last_error.c_str(); }

fc_status fc_dressed_pair(const fc_atom_params* atom, fc_dressed* out) {
  if (atom == nullptr || out == nullptr) return null_pointer();
  return guarded([&] {
    const freqconv::DressedPair pair = freqconv::dressed_pair(to_atom(*atom));
    out->theta = pair.theta;
    out->nu_plus = pair.nu_plus;
    out->nu_minus = pair.nu_minus;
    out->splitting = pair.splitting();
  });
}

fc_status fc_crw_dispersion(const fc_crw_params* cfg, double k, double* omega_k) {
  if (cfg == nullptr || omega_k == nullptr) return null_pointer();
  return guarded([&] { *omega_k = freqconv::dispersion(to_crw(*cfg), k); });
}

fc_status fc_crw_wavevector(const fc_crw_params* cfg, double omega_k, double* k) {
  if (cfg == nullptr || k == nullptr) return null_pointer();
  return guarded([&] { *k = freqconv::wavevector_for_frequency(to_crw(*cfg), omega_k); });
}

fc_status fc_crw_partner(const fc_atom_params* atom, const fc_crw_params* cfg,
                         double omega_k, int32_t* branch, double* value) {
  if (atom == nullptr || cfg == nullptr || branch == nullptr || value == nullptr) {
    return null_pointer();
  }
  return guarded([&] {
    const freqconv::DressedPair pair = freqconv::dressed_pair(to_atom(*atom));
    const freqconv::Partner partner =
        freqconv::partner_wavevector(to_crw(*cfg), pair, omega_k);
    *branch = to_branch(partner.branch);
    *value = partner.value;
  });
}

fc_status fc_band_structure_get(const fc_atom_params* atom, const fc_crw_params* cfg,
                                fc_band_structure* out) {
  if (atom == nullptr || cfg == nullptr || out == nullptr) return null_pointer();
  return guarded([&] {
    const freqconv::BandStructure bands =
        freqconv::band_structure(to_atom(*atom), to_crw(*cfg));
    out->negative_lo = bands.negative_lo;
    out->negative_hi = bands.negative_hi;
    out->positive_lo = bands.positive_lo;
    out->positive_hi = bands.positive_hi;
    out->has_overlap = bands.overlap ? 1 : 0;
    out->overlap_lo = bands.overlap ? bands.overlap->first : 0.0;
    out->overlap_hi = bands.overlap ? bands.overlap->second : 0.0;
    switch (bands.configuration) {
      case freqconv::BandStructure::Configuration::partial_overlap:
        out->configuration = FC_BANDS_PARTIAL_OVERLAP;
        break;
      case freqconv::BandStructure::Configuration::separated:
        out->configuration = FC_BANDS_SEPARATED;
        break;
      case freqconv::BandStructure::Configuration::nested_degenerate:
        out->configuration = FC_BANDS_NESTED_DEGENERATE;
        break;
    }
  });
}

fc_status fc_scatter_crw(const fc_atom_params* atom, const fc_crw_params* cfg, double k,
                         fc_scatter_result* out) {
  if (atom == nullptr || cfg == nullptr || out == nullptr) return null_pointer();
  return guarded([&] {
    fill_result(freqconv::scatter_crw(to_atom(*atom), to_crw(*cfg), k), out);
  });
}

fc_status fc_scatter_crw_frequency(const fc_atom_params* atom, const fc_crw_params* cfg,
                                   double omega_k, fc_scatter_result* out) {
  if (atom == nullptr || cfg == nullptr || out == nullptr) return null_pointer();
  return guarded([&] {
    fill_result(freqconv::scatter_crw_frequency(to_atom(*atom), to_crw(*cfg), omega_k),
                out);
  });
}

fc_status fc_closed_channel_resonance(const fc_atom_params* atom,
                                      const fc_crw_params* cfg, int32_t* found,
                                      double* omega_star) {
  if (atom == nullptr || cfg == nullptr || found == nullptr || omega_star == nullptr) {
    return null_pointer();
  }
  return guarded([&] {
    const std::optional<double> root =
        freqconv::closed_channel_resonance(to_atom(*atom), to_crw(*cfg));
    *found = root ? 1 : 0;
    if (root) *omega_star = *root;
  });
}

fc_status fc_bound_states(const fc_atom_params* atom, const fc_crw_params* cfg,
                          double* out, int32_t capacity, int32_t* count) {
  if (atom == nullptr || cfg == nullptr || count == nullptr) return null_pointer();
  fc_status result = FC_OK;
  const fc_status run = guarded([&] {
    result = copy_values(freqconv::bound_state_energies(to_atom(*atom), to_crw(*cfg)),
                         out, capacity, count);
  });
  return run == FC_OK ? result : run;
}

fc_status fc_linear_partner(const fc_atom_params* atom, const fc_linear_params* cfg,
                            double k, int32_t* open, double* q_abs) {
  if (atom == nullptr || cfg == nullptr || open == nullptr || q_abs == nullptr) {
    return null_pointer();
  }
  return guarded([&] {
    const freqconv::DressedPair pair = freqconv::dressed_pair(to_atom(*atom));
    const freqconv::LinearPartner partner =
        freqconv::partner_wavevector_linear(to_linear(*cfg), pair, k);
    *open = partner.open ? 1 : 0;
    *q_abs = partner.q_abs;
  });
}

fc_status fc_scatter_linear(const fc_atom_params* atom, const fc_linear_params* cfg,
                            double omega_k, fc_scatter_result* out) {
  if (atom == nullptr || cfg == nullptr || out == nullptr) return null_pointer();
  return guarded([&] {
    fill_result(freqconv::scatter_linear(to_atom(*atom), to_linear(*cfg), omega_k), out);
  });
}

fc_status fc_peak_transfer(const fc_atom_params* atom, const fc_linear_params* cfg,
                           double* omega_k, double* flow_tr) {
  if (atom == nullptr || cfg == nullptr || omega_k == nullptr || flow_tr == nullptr) {
    return null_pointer();
  }
  return guarded([&] {
    const freqconv::PeakTransfer peak =
        freqconv::peak_transfer(to_atom(*atom), to_linear(*cfg));
    *omega_k = peak.omega_k;
    *flow_tr = peak.flow_tr;
  });
}

fc_status fc_lattice_create(const fc_atom_params* atom, const fc_crw_params* cfg,
                            int32_t sites, int32_t atom_site, fc_lattice** out) {
  if (atom == nullptr || cfg == nullptr || out == nullptr) return null_pointer();
  return guarded([&] {
    *out = new fc_lattice{
        freqconv::LatticeModel(to_atom(*atom), to_crw(*cfg), sites, atom_site)};
  });
}

void fc_lattice_destroy(fc_lattice* lattice) { delete lattice; }

fc_status fc_lattice_dimension(const fc_lattice* lattice, int32_t* dimension) {
  if (lattice == nullptr || dimension == nullptr) return null_pointer();
  *dimension = lattice->model.dimension();
  return FC_OK;
}

fc_status fc_lattice_bound_states(const fc_lattice* lattice, double* out,
                                  int32_t capacity, int32_t* count) {
  if (lattice == nullptr || count == nullptr) return null_pointer();
  fc_status result = FC_OK;
  const fc_status run = guarded(
      [&] { result = copy_values(lattice->model.bound_states(), out, capacity, count); });
  return run == FC_OK ? result : run;
}

fc_status fc_lattice_scatter(const fc_lattice* lattice, const fc_packet_params* packet,
                             fc_oracle_flows* out) {
  if (lattice == nullptr || packet == nullptr || out == nullptr) return null_pointer();
  return guarded([&] {
    fill_flows(
        freqconv::scatter_packet(lattice->model, to_packet(*packet), to_options(*packet)),
        out);
  });
}

fc_status fc_lattice_scatter_dump(const fc_lattice* lattice,
                                  const fc_packet_params* packet, const char* path,
                                  fc_oracle_flows* out) {
  if (lattice == nullptr || packet == nullptr || path == nullptr || out == nullptr) {
    return null_pointer();
  }
  return guarded([&] {
    const freqconv::OracleFlows flows =
        freqconv::scatter_packet(lattice->model, to_packet(*packet), to_options(*packet));
    freqconv::WavepacketSpec resolved = to_packet(*packet);
    resolved.t_final = flows.t_final;
    auto psi = freqconv::initial_packet(lattice->model, resolved);
    psi = freqconv::propagate(lattice->model, std::move(psi), resolved.t_final,
                              to_options(*packet));
    freqconv::write_state(lattice->model, psi, path);
    fill_flows(flows, out);
  });
}

fc_status fc_compare_flows(const fc_atom_params* atom, const fc_crw_params* cfg,
                           const fc_packet_params* packet, const fc_oracle_flows* flows,
                           fc_flow_comparison* out) {
  if (atom == nullptr || cfg == nullptr || packet == nullptr || flows == nullptr ||
      out == nullptr) {
    return null_pointer();
  }
  return guarded([&] {
    const freqconv::AtomConfig a = to_atom(*atom);
    const freqconv::CrwConfig c = to_crw(*cfg);
    const freqconv::ScatteringResult analytic = freqconv::scatter_crw(a, c, packet->k0);
    const freqconv::FlowComparison cmp = freqconv::compare_flows(
        a, c, analytic, to_flows(*flows), to_packet(*packet));
    out->omega_k = cmp.omega_k;
    out->k0 = cmp.k0;
    out->analytic_r = cmp.analytic_r;
    out->analytic_t = cmp.analytic_t;
    out->analytic_tr = cmp.analytic_tr;
    out->oracle_r = cmp.oracle_r;
    out->oracle_t = cmp.oracle_t;
    out->oracle_tr = cmp.oracle_tr;
    out->dev_r = cmp.dev_r;
    out->dev_t = cmp.dev_t;
    out->dev_tr = cmp.dev_tr;
    out->tol_r = cmp.tol_r;
    out->tol_t = cmp.tol_t;
    out->tol_tr = cmp.tol_tr;
    out->atom_residual = cmp.atom_residual;
    out->leak = cmp.leak;
    out->t_final = cmp.t_final;
    out->pass = cmp.pass ? 1 : 0;
    out->reserved = 0;
  });
}

fc_status fc_sweep_run(const char* config_json, int32_t threads, int32_t format,
                       char** out_text) {
  if (config_json == nullptr || out_text == nullptr) return null_pointer();
  return guarded([&] {
    const freqconv::SweepSpec spec = freqconv::parse_sweep_config(config_json);
    const freqconv::SweepTable table = freqconv::run_sweep(spec, threads < 1 ? 1 : threads);
    *out_text = dup_text(render_table(table, format));
  });
}

fc_status fc_figure_run(const char* figure_id, int32_t threads, int32_t format,
                        char** out_text) {
  if (figure_id == nullptr || out_text == nullptr) return null_pointer();
  return guarded([&] {
    const freqconv::SweepTable table =
        freqconv::run_figure(figure_id, threads < 1 ? 1 : threads);
    *out_text = dup_text(render_table(table, format));
  });
}

fc_status fc_oracle_run(const char* config_json, char** report_text, int32_t* all_pass) {
  if (config_json == nullptr || report_text == nullptr || all_pass == nullptr) {
    return null_pointer();
  }
  return guarded([&] {
    const freqconv::OracleCheckSpec spec = freqconv::parse_oracle_config(config_json);
    const freqconv::OracleReport report = freqconv::run_oracle_check(spec);
    *report_text = dup_text(freqconv::render_oracle_report(report));
    *all_pass = report.all_pass ? 1 : 0;
  });
}

void fc_string_free(char* text) { std::free(text); }

}  // extern "C"
