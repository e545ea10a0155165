#pragma once

#include <freqconv/types.hpp>

namespace freqconv {

/// Waveguide with linear dispersion omega_k = v_g |k| (optical fiber regime).
/// The quantization length enters only through the mode density v_g / L.
struct LinearConfig {
  double group_velocity = 1.0;  ///< v_g > 0
  double length = 1.0;          ///< quantization length L > 0
  double coupling = 0.0;        ///< atom-field coupling J, >= 0
  double atom_position = 0.0;   ///< atom coordinate a (enters amplitudes as a phase only)

  void validate() const;
};

/// Magnitude of the converted wavevector, |q| = k - (nu_plus - nu_minus)/v_g.
struct LinearPartner {
  bool open = false;   ///< conversion channel propagates (omega_k > splitting, strict)
  double q_abs = 0.0;  ///< |q| when open, evanescent decay rate otherwise
};

/// Requires k > 0; throws errc::invalid_argument otherwise.
LinearPartner partner_wavevector_linear(const LinearConfig& cfg, const DressedPair& pair,
                                        double k);

/// Scattering of a photon of frequency omega_k > 0 incident in the negative
/// channel.  Above the conversion threshold all three flows are returned;
/// at or below it the closed channel is dropped from the decay rate so that
/// flow_r + flow_t = 1 exactly.  |q| within 1e-6 of zero sets edge_guard.
ScatteringResult scatter_linear(const AtomConfig& atom, const LinearConfig& cfg,
                                double omega_k);

/// Location and height of the conversion maximum: omega_k = omega_e - nu_minus,
/// flow_tr = sin²(theta)/2 (= 1/2 for Delta = 0, independent of the drive).
/// Requires the resonant frequency to lie above the conversion threshold;
/// throws errc::precondition otherwise.
struct PeakTransfer {
  double omega_k = 0.0;
  double flow_tr = 0.0;
};

PeakTransfer peak_transfer(const AtomConfig& atom, const LinearConfig& cfg);

}  // namespace freqconv
