/* C interface to the frequency-conversion scattering library.
 *
 * Every function returns an fc_status; FC_OK means the outputs were written.
 * On failure fc_last_error() returns a thread-local message describing what
 * went wrong.  Text buffers returned through char** are heap-allocated and
 * must be released with fc_string_free().
 */
#ifndef FREQCONV_H
#define FREQCONV_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fc_status {
  FC_OK = 0,
  FC_INVALID_ARGUMENT = 1,
  FC_DEGENERATE_DRIVE = 2,
  FC_OUT_OF_BAND = 3,
  FC_PRECONDITION = 4,
  FC_NO_CONVERGENCE = 5,
  FC_PREMATURE_MEASUREMENT = 6,
  FC_PARAMETER_MISMATCH = 7,
  FC_IO = 8,
  FC_NO_RESULT = 9,
  FC_BUFFER_TOO_SMALL = 10,
  FC_NULL_POINTER = 11,
  FC_INTERNAL = 99
} fc_status;

const char* fc_status_name(fc_status status);

/* Message for the most recent failure on the calling thread. */
const char* fc_last_error(void);

/* Driven three-level atom: levels g (zero energy), f, e; classical drive on
 * g <-> f with the given frequency and Rabi rate. */
typedef struct fc_atom_params {
  double omega_e;
  double omega_f;
  double drive_frequency;
  double rabi;
} fc_atom_params;

/* Coupled-resonator waveguide: dispersion omega - 2 xi cos k. */
typedef struct fc_crw_params {
  double omega;
  double xi;
  double coupling;
  int32_t atom_site;
  int32_t reserved; /* keep zero */
} fc_crw_params;

/* Linear-dispersion waveguide: omega = group_velocity * k, mode density
 * group_velocity / length. */
typedef struct fc_linear_params {
  double group_velocity;
  double length;
  double coupling;
  double atom_position;
} fc_linear_params;

typedef struct fc_dressed {
  double theta;     /* mixing angle in [0, pi] */
  double nu_plus;   /* upper quasi-energy */
  double nu_minus;  /* lower quasi-energy */
  double splitting; /* nu_plus - nu_minus */
} fc_dressed;

enum {
  FC_PARTNER_PROPAGATING = 0,
  FC_PARTNER_EVANESCENT_BELOW = 1,
  FC_PARTNER_EVANESCENT_ABOVE = 2
};

typedef struct fc_scatter_result {
  double re_r, im_r;           /* reflection amplitude, incidence channel */
  double re_t, im_t;           /* transmission amplitude, = 1 + r */
  double re_t_plus, im_t_plus; /* conversion amplitude */
  double flow_r, flow_t, flow_tr; /* probability flows; sum is 1 */
  double incident_k;
  double incident_omega;
  double partner_value;  /* q when propagating, kappa otherwise */
  int32_t partner_branch; /* FC_PARTNER_* */
  int32_t transfer_open;
  int32_t edge_guard;
  int32_t reserved;
} fc_scatter_result;

enum {
  FC_BANDS_PARTIAL_OVERLAP = 0,
  FC_BANDS_SEPARATED = 1,
  FC_BANDS_NESTED_DEGENERATE = 2
};

typedef struct fc_band_structure {
  double negative_lo, negative_hi; /* total-energy band, incidence channel */
  double positive_lo, positive_hi; /* total-energy band, conversion channel */
  double overlap_lo, overlap_hi;   /* valid iff has_overlap */
  int32_t configuration;           /* FC_BANDS_* */
  int32_t has_overlap;
} fc_band_structure;

fc_status fc_dressed_pair(const fc_atom_params* atom, fc_dressed* out);

/* --- cosine-dispersion waveguide ------------------------------------- */

fc_status fc_crw_dispersion(const fc_crw_params* cfg, double k, double* omega_k);
fc_status fc_crw_wavevector(const fc_crw_params* cfg, double omega_k, double* k);
fc_status fc_crw_partner(const fc_atom_params* atom, const fc_crw_params* cfg,
                         double omega_k, int32_t* branch, double* value);
fc_status fc_band_structure_get(const fc_atom_params* atom, const fc_crw_params* cfg,
                                fc_band_structure* out);
fc_status fc_scatter_crw(const fc_atom_params* atom, const fc_crw_params* cfg, double k,
                         fc_scatter_result* out);
fc_status fc_scatter_crw_frequency(const fc_atom_params* atom, const fc_crw_params* cfg,
                                   double omega_k, fc_scatter_result* out);

/* Incident frequency of complete reflection inside the closed-channel
 * window; *found is 0 and *omega_star untouched when no root exists. */
fc_status fc_closed_channel_resonance(const fc_atom_params* atom,
                                      const fc_crw_params* cfg, int32_t* found,
                                      double* omega_star);

/* Bound-state total energies, ascending.  Writes at most capacity values and
 * always stores the true count; returns FC_BUFFER_TOO_SMALL when capacity is
 * insufficient. */
fc_status fc_bound_states(const fc_atom_params* atom, const fc_crw_params* cfg,
                          double* out, int32_t capacity, int32_t* count);

/* --- linear-dispersion waveguide ------------------------------------- */

fc_status fc_linear_partner(const fc_atom_params* atom, const fc_linear_params* cfg,
                            double k, int32_t* open, double* q_abs);
fc_status fc_scatter_linear(const fc_atom_params* atom, const fc_linear_params* cfg,
                            double omega_k, fc_scatter_result* out);
fc_status fc_peak_transfer(const fc_atom_params* atom, const fc_linear_params* cfg,
                           double* omega_k, double* flow_tr);

/* --- finite-lattice wavepacket oracle --------------------------------- */

typedef struct fc_lattice fc_lattice;

typedef struct fc_packet_params {
  double k0;
  double sigma_x;      /* <= 0: default 40 */
  double x0;           /* <= 0: auto (atom_site - 7.5 sigma_x) */
  double t_final;      /* <= 0: auto (arrival + 6 sigma_x travel) */
  double error_budget; /* <= 0: default 1e-8 */
  int32_t degree_multiplier; /* < 1: default 1 */
  int32_t step_multiplier;   /* < 1: default 1 */
} fc_packet_params;

typedef struct fc_oracle_flows {
  double reflect;
  double transmit;
  double transfer;
  double atom_residual;
  double leak;
  double norm_error;
  double t_final;
} fc_oracle_flows;

typedef struct fc_flow_comparison {
  double omega_k, k0;
  double analytic_r, analytic_t, analytic_tr;
  double oracle_r, oracle_t, oracle_tr;
  double dev_r, dev_t, dev_tr;
  double tol_r, tol_t, tol_tr;
  double atom_residual, leak, t_final;
  int32_t pass;
  int32_t reserved;
} fc_flow_comparison;

/* atom_site = 0 selects ceil(sites / 2). */
fc_status fc_lattice_create(const fc_atom_params* atom, const fc_crw_params* cfg,
                            int32_t sites, int32_t atom_site, fc_lattice** out);
void fc_lattice_destroy(fc_lattice* lattice);
fc_status fc_lattice_dimension(const fc_lattice* lattice, int32_t* dimension);
fc_status fc_lattice_bound_states(const fc_lattice* lattice, double* out,
                                  int32_t capacity, int32_t* count);
fc_status fc_lattice_scatter(const fc_lattice* lattice, const fc_packet_params* packet,
                             fc_oracle_flows* out);
/* Same, additionally writing the final state to path as text. */
fc_status fc_lattice_scatter_dump(const fc_lattice* lattice,
                                  const fc_packet_params* packet, const char* path,
                                  fc_oracle_flows* out);

/* Closed-form flows vs measured packet flows at the packet's carrier. */
fc_status fc_compare_flows(const fc_atom_params* atom, const fc_crw_params* cfg,
                           const fc_packet_params* packet, const fc_oracle_flows* flows,
                           fc_flow_comparison* out);

/* --- sweeps, bundled datasets, oracle reports ------------------------- */

enum { FC_FORMAT_CSV = 0, FC_FORMAT_JSON = 1 };

/* config_json follows the schema documented in the README. */
fc_status fc_sweep_run(const char* config_json, int32_t threads, int32_t format,
                       char** out_text);
fc_status fc_figure_run(const char* figure_id, int32_t threads, int32_t format,
                        char** out_text);
/* Renders a text report; *all_pass is 1 when every frequency matched. */
fc_status fc_oracle_run(const char* config_json, char** report_text, int32_t* all_pass);

void fc_string_free(char* text);

#ifdef __cplusplus
}
#endif

#endif /* FREQCONV_H */
