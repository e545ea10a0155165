#pragma once

#include <optional>
#include <vector>

#include <freqconv/types.hpp>

namespace freqconv {

/// Coupled-resonator waveguide: cosine dispersion omega_k = omega - 2 xi cos k
/// with k in (0, pi), photon band (omega - 2 xi, omega + 2 xi).
struct CrwConfig {
  double omega = 1.0;   ///< resonator frequency (band center)
  double xi = 0.2;      ///< nearest-neighbor hopping, > 0
  double coupling = 0.0;///< atom-resonator coupling J, >= 0
  int atom_site = 0;    ///< atom attachment site a (enters amplitudes as a phase only)

  void validate() const;
};

/// omega - 2 xi cos k for k in [0, pi].
double dispersion(const CrwConfig& cfg, double k);

/// Group velocity 2 xi sin k.
double group_velocity(const CrwConfig& cfg, double k);

/// Inverse dispersion.  Requires omega_k strictly inside the band; throws
/// errc::out_of_band otherwise (band edges included).
double wavevector_for_frequency(const CrwConfig& cfg, double omega_k);

/// Wavevector of the frequency-converted partner photon at
/// omega_q = omega_k - (nu_plus - nu_minus).  Every frequency maps to a
/// branch; exactly at a band edge the result is evanescent with kappa = 0.
Partner partner_wavevector(const CrwConfig& cfg, const DressedPair& pair, double omega_k);

/// Dressed-channel energy bands: total energy omega_k + nu_n for each channel.
struct BandStructure {
  enum class Configuration { partial_overlap, separated, nested_degenerate };

  double negative_lo = 0.0, negative_hi = 0.0;  ///< band of the incidence channel
  double positive_lo = 0.0, positive_hi = 0.0;  ///< band of the conversion channel
  std::optional<std::pair<double, double>> overlap;  ///< nonempty iff splitting < 4 xi
  Configuration configuration = Configuration::partial_overlap;
};

BandStructure band_structure(const AtomConfig& atom, const CrwConfig& cfg);

/// Scattering of a photon incident in the negative channel with wavevector
/// k in (0, pi) strictly.  Wavevectors within 1e-6 of a band edge (incident,
/// partner, or evanescent decay rate) set edge_guard; values are still the
/// exact closed forms but numerically ill-conditioned there.
ScatteringResult scatter_crw(const AtomConfig& atom, const CrwConfig& cfg, double k);

/// Same, addressed by incident photon frequency.
ScatteringResult scatter_crw_frequency(const AtomConfig& atom, const CrwConfig& cfg,
                                       double omega_k);

/// Incident frequency at which the closed conversion channel interferes to
/// give complete reflection (flow_r = 1): the root of
///   (E - omega_e) + sin²(theta/2) J² / (2 xi sinh kappa_+(E)) = 0
/// inside the window where the negative channel propagates and the positive
/// channel is evanescent.  Returns nullopt when no root exists (e.g. J = 0).
/// Requires partially overlapping bands; throws errc::precondition otherwise.
std::optional<double> closed_channel_resonance(const AtomConfig& atom, const CrwConfig& cfg);

/// Energies of the atom-photon bound states outside both channel bands:
/// roots of E - omega_e = sin²(theta/2) Sigma_+(E) + cos²(theta/2) Sigma_-(E)
/// with Sigma_n(E) = -/+ J²/(2 xi sinh kappa_n) below/above band n.  Sorted
/// ascending.  Requires J > 0 (throws errc::precondition otherwise).
std::vector<double> bound_state_energies(const AtomConfig& atom, const CrwConfig& cfg);

}  // namespace freqconv
