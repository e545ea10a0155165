#include <freqconv/linear.hpp>
#include <freqconv/dressed.hpp>

#include <cmath>

namespace freqconv {

namespace {
constexpr double k_edge_guard = 1e-6;  // frequency guard half-width, units of v_g
}

void LinearConfig::validate() const {
  if (!std::isfinite(group_velocity) || !std::isfinite(length) ||
      !std::isfinite(coupling) || !std::isfinite(atom_position)) {
    fail(errc::invalid_argument, "waveguide parameters must be finite");
  }
  if (!(group_velocity > 0.0)) fail(errc::invalid_argument, "group velocity must be > 0");
  if (!(length > 0.0)) fail(errc::invalid_argument, "quantization length must be > 0");
  if (coupling < 0.0) fail(errc::invalid_argument, "coupling must be >= 0");
}

LinearPartner partner_wavevector_linear(const LinearConfig& cfg, const DressedPair& pair,
                                        double k) {
  cfg.validate();
  if (!(k > 0.0)) {
    fail(errc::invalid_argument, "incident wavevector must be > 0");
  }
  const double q = k - channel_splitting(pair) / cfg.group_velocity;
  if (q > 0.0) return {true, q};
  return {false, -q};
}

ScatteringResult scatter_linear(const AtomConfig& atom, const LinearConfig& cfg,
                                double omega_k) {
  cfg.validate();
  if (!(omega_k > 0.0)) {
    fail(errc::invalid_argument, "incident frequency must be > 0");
  }
  const DressedPair pair = dressed_pair(atom);
  const double sh = std::sin(0.5 * pair.theta);
  const double ch = std::cos(0.5 * pair.theta);
  const double j2 = cfg.coupling * cfg.coupling;
  const double splitting = channel_splitting(pair);

  ScatteringResult res;
  res.incident_omega = omega_k;
  res.incident_k = omega_k / cfg.group_velocity;
  res.edge_guard = std::abs(omega_k - splitting) / cfg.group_velocity < k_edge_guard;

  const double delta = omega_k + pair.nu_minus - atom.omega_e;
  const double u = cfg.group_velocity * delta / cfg.length;

  if (omega_k > splitting) {
    res.transfer_open = true;
    const double q = (omega_k - splitting) / cfg.group_velocity;
    res.partner = {PartnerBranch::propagating, q};
    const std::complex<double> denom(-j2, u);
    res.r_minus = j2 * ch * ch / denom;
    res.t_minus = 1.0 + res.r_minus;
    const std::complex<double> phase = std::polar(1.0, (q - res.incident_k) * cfg.atom_position);
    res.t_plus = phase * (j2 * ch * sh) / denom;
    res.flow_r = std::norm(res.r_minus);
    res.flow_t = std::norm(res.t_minus);
    res.flow_tr = 2.0 * std::norm(res.t_plus);
    return res;
  }

  // Conversion channel closed: only elastic reflection and transmission,
  // and their flows sum to 1 exactly.
  res.transfer_open = false;
  res.partner = {PartnerBranch::evanescent_below, (splitting - omega_k) / cfg.group_velocity};
  const std::complex<double> denom(-j2 * ch * ch, u);
  res.r_minus = j2 * ch * ch / denom;
  res.t_minus = 1.0 + res.r_minus;
  res.t_plus = 0.0;
  res.flow_r = std::norm(res.r_minus);
  res.flow_t = std::norm(res.t_minus);
  res.flow_tr = 0.0;
  return res;
}

PeakTransfer peak_transfer(const AtomConfig& atom, const LinearConfig& cfg) {
  cfg.validate();
  const DressedPair pair = dressed_pair(atom);
  if (atom.rabi == 0.0) return {atom.omega_e, 0.0};
  const double resonance = atom.omega_e - pair.nu_minus;
  if (!(resonance > channel_splitting(pair))) {
    fail(errc::precondition,
         "conversion resonance lies below the channel splitting; no open-channel peak");
  }
  const double s = std::sin(pair.theta);
  return {resonance, 0.5 * s * s};
}

}  // namespace freqconv
