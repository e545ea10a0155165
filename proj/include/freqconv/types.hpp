#pragma once

#include <array>
#include <complex>
#include <stdexcept>
#include <string>

namespace freqconv {

/// Failure categories carried by every library error.  They map one-to-one
/// onto the C API status codes.
enum class errc {
  invalid_argument,        ///< malformed or out-of-domain input
  degenerate_drive,        ///< rabi = 0 and detuning = 0: dressed basis undefined
  out_of_band,             ///< frequency outside the propagating band
  precondition,            ///< operation called outside its documented regime
  no_convergence,          ///< iterative routine failed to meet its tolerance
  premature_measurement,   ///< wavepacket measured while atom still excited
  parameter_mismatch,      ///< analytic and packet inputs describe different runs
  io_failure,              ///< file could not be read or written
};

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what) : std::runtime_error(what), m_code(code) {}
  errc code() const noexcept { return m_code; }

 private:
  errc m_code;
};

[[noreturn]] inline void fail(errc code, const std::string& msg) { throw Error(code, msg); }

/// Three-level atom in V configuration with a classical drive on the
/// g <-> f transition.  The ground state g sits at zero energy; only the
/// drive detuning omega_f - drive_frequency and the Rabi rate enter the
/// physics, the two frequencies are kept separately for bookkeeping.
struct AtomConfig {
  double omega_e = 0.0;          ///< excited-level frequency
  double omega_f = 0.0;          ///< driven-level frequency
  double drive_frequency = 0.0;  ///< classical drive frequency
  double rabi = 0.0;             ///< drive Rabi rate, >= 0

  double detuning() const { return omega_f - drive_frequency; }
  void validate() const;
};

/// Drive-dressed ground doublet.  |phi_+> = sin(theta/2)|g> + cos(theta/2)|f>,
/// |phi_-> = -cos(theta/2)|g> + sin(theta/2)|f>, with mixing angle
/// theta = atan2(2 eta, Delta) in [0, pi] (theta = pi only for eta = 0,
/// Delta < 0) and quasi-energies nu_± = (Delta ± sqrt(Delta² + 4 eta²))/2.
struct DressedPair {
  double theta = 0.0;
  double nu_plus = 0.0;
  double nu_minus = 0.0;
  std::array<double, 2> plus_coeffs{};   ///< (g, f) components of |phi_+>
  std::array<double, 2> minus_coeffs{};  ///< (g, f) components of |phi_->

  double splitting() const { return nu_plus - nu_minus; }
};

/// Branch of the frequency-converted partner mode.
enum class PartnerBranch {
  propagating,       ///< real wavevector, open conversion channel
  evanescent_below,  ///< partner frequency below the band, decay rate kappa
  evanescent_above,  ///< partner frequency above the band, decay rate kappa
};

/// Partner wavevector: q in (0, pi) when propagating, kappa >= 0 otherwise.
/// kappa = 0 marks the exact threshold, which is treated as closed.
struct Partner {
  PartnerBranch branch = PartnerBranch::propagating;
  double value = 0.0;
};

/// Single-photon scattering amplitudes and flows for incidence in the
/// negative dressed channel.  flow_r + flow_t + flow_tr = 1 identically.
struct ScatteringResult {
  std::complex<double> r_minus;  ///< reflection amplitude, same channel
  std::complex<double> t_minus;  ///< transmission amplitude, = 1 + r_minus
  std::complex<double> t_plus;   ///< conversion amplitude into the positive channel
  double flow_r = 0.0;           ///< reflected probability flow
  double flow_t = 0.0;           ///< transmitted probability flow
  double flow_tr = 0.0;          ///< converted (transfer) probability flow
  bool transfer_open = false;    ///< partner channel propagates
  bool edge_guard = false;       ///< a wavevector fell inside the band-edge guard zone
  Partner partner;
  double incident_k = 0.0;       ///< incident wavevector
  double incident_omega = 0.0;   ///< incident photon frequency
};

}  // namespace freqconv
