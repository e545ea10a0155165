#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <freqconv.h>

#include <cmath>
#include <cstring>
#include <string>

namespace {

const fc_atom_params k_atom{0.9, 0.6, 0.6, 0.1};
const fc_crw_params k_crw{1.0, 0.2, 0.3, 0, 0};
const fc_linear_params k_linear{1.0, 1.0, 0.3, 0.0};

}  // namespace

TEST_CASE("status names are stable identifiers") {
  CHECK(std::string(fc_status_name(FC_OK)) == "ok");
  CHECK(std::string(fc_status_name(FC_INVALID_ARGUMENT)) == "invalid_argument");
  CHECK(std::string(fc_status_name(FC_DEGENERATE_DRIVE)) == "degenerate_drive");
  CHECK(std::string(fc_status_name(FC_OUT_OF_BAND)) == "out_of_band");
  CHECK(std::string(fc_status_name(FC_PRECONDITION)) == "precondition");
  CHECK(std::string(fc_status_name(FC_NO_CONVERGENCE)) == "no_convergence");
  CHECK(std::string(fc_status_name(FC_PREMATURE_MEASUREMENT)) ==
        "premature_measurement");
  CHECK(std::string(fc_status_name(FC_PARAMETER_MISMATCH)) == "parameter_mismatch");
  CHECK(std::string(fc_status_name(FC_IO)) == "io");
  CHECK(std::string(fc_status_name(FC_BUFFER_TOO_SMALL)) == "buffer_too_small");
  CHECK(std::string(fc_status_name(FC_NULL_POINTER)) == "null_pointer");
  CHECK(std::string(fc_status_name(FC_INTERNAL)) == "internal");
}

TEST_CASE("dressed pair and null-pointer handling") {
  fc_dressed dressed;
  REQUIRE(fc_dressed_pair(&k_atom, &dressed) == FC_OK);
  CHECK(dressed.nu_plus == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(dressed.nu_minus == doctest::Approx(-0.1).epsilon(1e-14));
  CHECK(dressed.splitting == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(dressed.theta == doctest::Approx(std::acos(0.0) * 1.0).epsilon(1e-12));

  CHECK(fc_dressed_pair(nullptr, &dressed) == FC_NULL_POINTER);
  CHECK(fc_dressed_pair(&k_atom, nullptr) == FC_NULL_POINTER);
  CHECK(std::strlen(fc_last_error()) > 0);

  const fc_atom_params degenerate{0.9, 0.0, 0.0, 0.0};
  CHECK(fc_dressed_pair(&degenerate, &dressed) == FC_DEGENERATE_DRIVE);
}

TEST_CASE("dispersion round trip and out-of-band reporting") {
  double omega = 0.0, k = 0.0;
  REQUIRE(fc_crw_dispersion(&k_crw, 1.0471975511965976, &omega) == FC_OK);
  CHECK(omega == doctest::Approx(0.8).epsilon(1e-14));
  REQUIRE(fc_crw_wavevector(&k_crw, 0.8, &k) == FC_OK);
  CHECK(k == doctest::Approx(1.0471975511965976).epsilon(1e-12));
  CHECK(fc_crw_wavevector(&k_crw, 0.2, &k) == FC_OUT_OF_BAND);
  CHECK(std::string(fc_last_error()).find("band") != std::string::npos);
}

TEST_CASE("scattering results cross the boundary intact") {
  fc_scatter_result res;
  REQUIRE(fc_scatter_crw_frequency(&k_atom, &k_crw, 1.0, &res) == FC_OK);
  CHECK(res.transfer_open == 1);
  CHECK(res.edge_guard == 0);
  CHECK(res.partner_branch == FC_PARTNER_PROPAGATING);
  CHECK(res.flow_tr == doctest::Approx(0.4974226119285575).epsilon(1e-10));
  CHECK(res.re_r == doctest::Approx(3.0 - 2.0 * std::sqrt(3.0)).epsilon(1e-12));
  CHECK(res.re_t == doctest::Approx(1.0 + res.re_r).epsilon(1e-14));
  CHECK(res.im_t == doctest::Approx(res.im_r).epsilon(1e-14));
  CHECK(res.flow_r + res.flow_t + res.flow_tr == doctest::Approx(1.0).epsilon(1e-13));

  fc_scatter_result closed;
  REQUIRE(fc_scatter_crw_frequency(&k_atom, &k_crw, 0.7, &closed) == FC_OK);
  CHECK(closed.transfer_open == 0);
  CHECK(closed.partner_branch == FC_PARTNER_EVANESCENT_BELOW);
  CHECK(closed.partner_value == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(closed.flow_r == doctest::Approx(0.5625).epsilon(1e-12));

  CHECK(fc_scatter_crw_frequency(&k_atom, &k_crw, 0.5, &res) == FC_OUT_OF_BAND);

  double value = 0.0;
  int32_t branch = -1;
  REQUIRE(fc_crw_partner(&k_atom, &k_crw, 1.7, &branch, &value) == FC_OK);
  CHECK(branch == FC_PARTNER_EVANESCENT_ABOVE);
  CHECK(value == doctest::Approx(std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("band structure and bound states through the C layer") {
  fc_band_structure bands;
  REQUIRE(fc_band_structure_get(&k_atom, &k_crw, &bands) == FC_OK);
  CHECK(bands.configuration == FC_BANDS_PARTIAL_OVERLAP);
  CHECK(bands.has_overlap == 1);
  CHECK(bands.overlap_lo == doctest::Approx(0.7).epsilon(1e-14));
  CHECK(bands.overlap_hi == doctest::Approx(1.3).epsilon(1e-14));

  double energies[4];
  int32_t count = 0;
  REQUIRE(fc_bound_states(&k_atom, &k_crw, energies, 4, &count) == FC_OK);
  REQUIRE(count == 2);
  CHECK(energies[0] == doctest::Approx(0.477198348185).epsilon(1e-9));
  CHECK(energies[1] == doctest::Approx(1.509552608946).epsilon(1e-9));

  // Insufficient capacity still reports the true count.
  count = 0;
  CHECK(fc_bound_states(&k_atom, &k_crw, energies, 1, &count) == FC_BUFFER_TOO_SMALL);
  CHECK(count == 2);

  int32_t found = -1;
  double omega_star = 0.0;
  REQUIRE(fc_closed_channel_resonance(&k_atom, &k_crw, &found, &omega_star) == FC_OK);
  CHECK(found == 1);
  CHECK(omega_star == doctest::Approx(0.758672008990).epsilon(1e-9));

  fc_crw_params uncoupled = k_crw;
  uncoupled.coupling = 0.0;
  found = -1;
  REQUIRE(fc_closed_channel_resonance(&k_atom, &uncoupled, &found, &omega_star) == FC_OK);
  CHECK(found == 0);

  const fc_atom_params strong{0.9, 0.6, 0.6, 0.5};
  CHECK(fc_closed_channel_resonance(&strong, &k_crw, &found, &omega_star) ==
        FC_PRECONDITION);
}

TEST_CASE("linear waveguide through the C layer") {
  fc_scatter_result res;
  REQUIRE(fc_scatter_linear(&k_atom, &k_linear, 1.1, &res) == FC_OK);
  // Splitting 0.2 here, so the conversion peak sits at omega_e - nu_minus = 1.0.
  double omega_peak = 0.0, flow_peak = 0.0;
  REQUIRE(fc_peak_transfer(&k_atom, &k_linear, &omega_peak, &flow_peak) == FC_OK);
  CHECK(omega_peak == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(flow_peak == doctest::Approx(0.5).epsilon(1e-12));

  fc_scatter_result at_peak;
  REQUIRE(fc_scatter_linear(&k_atom, &k_linear, omega_peak, &at_peak) == FC_OK);
  CHECK(at_peak.flow_tr == doctest::Approx(0.5).epsilon(1e-12));

  int32_t open = -1;
  double q_abs = 0.0;
  REQUIRE(fc_linear_partner(&k_atom, &k_linear, 1.5, &open, &q_abs) == FC_OK);
  CHECK(open == 1);
  CHECK(q_abs == doctest::Approx(1.3).epsilon(1e-13));
}

TEST_CASE("lattice oracle through the C layer") {
  fc_lattice* lattice = nullptr;
  REQUIRE(fc_lattice_create(&k_atom, &k_crw, 600, 0, &lattice) == FC_OK);
  REQUIRE(lattice != nullptr);
  int32_t dim = 0;
  REQUIRE(fc_lattice_dimension(lattice, &dim) == FC_OK);
  CHECK(dim == 1201);

  fc_packet_params packet{};
  packet.k0 = std::acos(0.0);  // pi/2
  packet.sigma_x = 20.0;
  fc_oracle_flows flows;
  REQUIRE(fc_lattice_scatter(lattice, &packet, &flows) == FC_OK);
  CHECK(flows.reflect + flows.transmit + flows.transfer + flows.atom_residual +
            flows.leak ==
        doctest::Approx(1.0).epsilon(1e-7));
  CHECK(flows.t_final > 0.0);

  fc_flow_comparison cmp;
  REQUIRE(fc_compare_flows(&k_atom, &k_crw, &packet, &flows, &cmp) == FC_OK);
  CHECK(cmp.pass == 1);
  CHECK(cmp.dev_tr <= cmp.tol_tr);
  CHECK(cmp.omega_k == doctest::Approx(1.0).epsilon(1e-12));

  fc_lattice_destroy(lattice);
  fc_lattice_destroy(nullptr);  // must be a no-op

  CHECK(fc_lattice_create(&k_atom, &k_crw, 8, 0, &lattice) == FC_INVALID_ARGUMENT);
}

TEST_CASE("sweep, figure, and oracle entry points return text") {
  const char* config = R"({
    "model": "crw",
    "atom": {"omega_e": 0.9, "omega_f": 0.6, "drive_frequency": 0.6, "rabi": 0.1},
    "crw": {"omega": 1.0, "xi": 0.2, "coupling": 0.3},
    "axis": {"param": "omega_k", "start": 0.8, "stop": 1.2, "count": 5}
  })";
  char* text = nullptr;
  REQUIRE(fc_sweep_run(config, 2, FC_FORMAT_CSV, &text) == FC_OK);
  REQUIRE(text != nullptr);
  CHECK(std::string(text).find("# schema: freqconv-sweep-1") == 0);
  fc_string_free(text);

  text = nullptr;
  REQUIRE(fc_sweep_run(config, 1, FC_FORMAT_JSON, &text) == FC_OK);
  CHECK(std::string(text).find("\"schema\"") != std::string::npos);
  fc_string_free(text);

  CHECK(fc_sweep_run("{ not json", 1, FC_FORMAT_CSV, &text) == FC_IO);
  CHECK(fc_sweep_run(config, 1, 77, &text) == FC_INVALID_ARGUMENT);

  text = nullptr;
  REQUIRE(fc_figure_run("fig5a", 2, FC_FORMAT_CSV, &text) == FC_OK);
  CHECK(std::string(text).find("# model: linear") != std::string::npos);
  fc_string_free(text);
  CHECK(fc_figure_run("figZZ", 1, FC_FORMAT_CSV, &text) == FC_INVALID_ARGUMENT);

  const char* oracle_config = R"({
    "atom": {"omega_e": 0.9, "omega_f": 0.6, "drive_frequency": 0.6, "rabi": 0.1},
    "crw": {"omega": 1.0, "xi": 0.2, "coupling": 0.3},
    "frequencies": [1.0],
    "sites": 600,
    "sigma_x": 20.0
  })";
  text = nullptr;
  int32_t all_pass = 0;
  REQUIRE(fc_oracle_run(oracle_config, &text, &all_pass) == FC_OK);
  CHECK(all_pass == 1);
  CHECK(std::string(text).find("summary: 1/1") != std::string::npos);
  fc_string_free(text);
}
