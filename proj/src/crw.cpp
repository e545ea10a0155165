#include <freqconv/crw.hpp>
#include <freqconv/dressed.hpp>

#include <cmath>
#include <numbers>
#include <utility>

namespace freqconv {

namespace {

constexpr double k_pi = std::numbers::pi;
constexpr double k_edge_guard = 1e-6;       // wavevector guard zone half-width
constexpr double k_threshold_kappa = 1e-12; // below this the closed channel saturates

// J² times the off-band on-site Green's function of the cosine band:
// -J²/(2 xi sinh kappa) below the band, +J²/(2 xi sinh kappa) above it
// (the in-band continuation sin q -> ±i sinh kappa of J²/(2 i xi sin q)).
double off_band_self_energy(const CrwConfig& cfg, double z) {
  const double c = (cfg.omega - z) / (2.0 * cfg.xi);
  const double kappa = std::acosh(std::abs(c));
  const double j2 = cfg.coupling * cfg.coupling;
  const double mag = j2 / (2.0 * cfg.xi * std::sinh(kappa));
  return c > 0.0 ? -mag : mag;
}

// Strictly increasing f with f(lo) < 0 < f(hi): plain bisection.
template <class F>
double bisect_increasing(F&& f, double lo, double hi, double tol) {
  for (int it = 0; it < 200; ++it) {
    if (hi - lo < tol) return 0.5 * (lo + hi);
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) return mid;  // interval exhausted at this precision
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  if (hi - lo >= tol) {
    fail(errc::no_convergence, "bisection did not reach tolerance in 200 steps");
  }
  return 0.5 * (lo + hi);
}

}  // namespace

void CrwConfig::validate() const {
  if (!std::isfinite(omega) || !std::isfinite(xi) || !std::isfinite(coupling)) {
    fail(errc::invalid_argument, "waveguide parameters must be finite");
  }
  if (!(xi > 0.0)) fail(errc::invalid_argument, "hopping xi must be > 0");
  if (coupling < 0.0) fail(errc::invalid_argument, "coupling must be >= 0");
}

double dispersion(const CrwConfig& cfg, double k) {
  cfg.validate();
  if (!(k >= 0.0 && k <= k_pi)) {
    fail(errc::invalid_argument, "wavevector must lie in [0, pi]");
  }
  return cfg.omega - 2.0 * cfg.xi * std::cos(k);
}

double group_velocity(const CrwConfig& cfg, double k) {
  cfg.validate();
  if (!(k >= 0.0 && k <= k_pi)) {
    fail(errc::invalid_argument, "wavevector must lie in [0, pi]");
  }
  return 2.0 * cfg.xi * std::sin(k);
}

double wavevector_for_frequency(const CrwConfig& cfg, double omega_k) {
  cfg.validate();
  const double c = (cfg.omega - omega_k) / (2.0 * cfg.xi);
  if (!(std::abs(c) < 1.0)) {
    fail(errc::out_of_band, "frequency lies outside the open photon band");
  }
  return std::acos(c);
}

Partner partner_wavevector(const CrwConfig& cfg, const DressedPair& pair, double omega_k) {
  cfg.validate();
  if (!std::isfinite(omega_k)) fail(errc::invalid_argument, "frequency must be finite");
  const double omega_q = omega_k - channel_splitting(pair);
  const double c = (cfg.omega - omega_q) / (2.0 * cfg.xi);
  if (std::abs(c) < 1.0) return {PartnerBranch::propagating, std::acos(c)};
  const double kappa = std::acosh(std::abs(c));
  return {c > 0.0 ? PartnerBranch::evanescent_below : PartnerBranch::evanescent_above,
          kappa};
}

BandStructure band_structure(const AtomConfig& atom, const CrwConfig& cfg) {
  cfg.validate();
  const DressedPair pair = dressed_pair(atom);
  BandStructure bands;
  bands.negative_lo = cfg.omega + pair.nu_minus - 2.0 * cfg.xi;
  bands.negative_hi = cfg.omega + pair.nu_minus + 2.0 * cfg.xi;
  bands.positive_lo = cfg.omega + pair.nu_plus - 2.0 * cfg.xi;
  bands.positive_hi = cfg.omega + pair.nu_plus + 2.0 * cfg.xi;
  if (channel_splitting(pair) < 4.0 * cfg.xi) {
    bands.configuration = BandStructure::Configuration::partial_overlap;
    bands.overlap = std::make_pair(bands.positive_lo, bands.negative_hi);
  } else {
    bands.configuration = BandStructure::Configuration::separated;
    bands.overlap.reset();
  }
  return bands;
}

ScatteringResult scatter_crw(const AtomConfig& atom, const CrwConfig& cfg, double k) {
  cfg.validate();
  if (!(k > 0.0 && k < k_pi)) {
    fail(errc::invalid_argument, "incident wavevector must lie strictly inside (0, pi)");
  }
  const DressedPair pair = dressed_pair(atom);
  const double sh = std::sin(0.5 * pair.theta);
  const double ch = std::cos(0.5 * pair.theta);
  const double sh2 = sh * sh;
  const double ch2 = ch * ch;
  const double j2 = cfg.coupling * cfg.coupling;

  ScatteringResult res;
  res.incident_k = k;
  res.incident_omega = dispersion(cfg, k);
  res.edge_guard = (k < k_edge_guard) || (k_pi - k < k_edge_guard);

  const double sink = std::sin(k);
  const double delta = res.incident_omega + pair.nu_minus - atom.omega_e;
  const double gamma_m = ch2 * j2 / (2.0 * cfg.xi * sink);

  res.partner = partner_wavevector(cfg, pair, res.incident_omega);
  if (res.partner.branch == PartnerBranch::propagating) {
    const double q = res.partner.value;
    res.edge_guard |= (q < k_edge_guard) || (k_pi - q < k_edge_guard);
    const double sinq = std::sin(q);
    const double gamma_p = sh2 * j2 / (2.0 * cfg.xi * sinq);
    const std::complex<double> denom(delta, gamma_p + gamma_m);
    res.r_minus = std::complex<double>(0.0, -gamma_m) / denom;
    res.t_minus = 1.0 + res.r_minus;
    const std::complex<double> phase = std::polar(1.0, (q - k) * cfg.atom_site);
    res.t_plus = phase * std::complex<double>(0.0, -1.0) *
                 (ch * sh * j2 / (2.0 * cfg.xi * sinq)) / denom;
    res.flow_r = std::norm(res.r_minus);
    res.flow_t = std::norm(res.t_minus);
    res.flow_tr = 2.0 * gamma_p * gamma_m / std::norm(denom);
    res.transfer_open = true;
    return res;
  }

  // Closed conversion channel: the evanescent partner contributes a real
  // level shift -sin²(theta/2) Sigma_+ instead of a decay rate, and
  // flow_r + flow_t = 1 exactly.
  const double kappa = res.partner.value;
  res.edge_guard |= kappa < k_edge_guard;
  res.transfer_open = false;
  res.t_plus = 0.0;
  res.flow_tr = 0.0;
  if (sh2 > 0.0 && j2 > 0.0 && kappa < k_threshold_kappa) {
    // Exactly at threshold the level shift diverges and the amplitudes
    // saturate to full transmission; return the limit instead of 1/0.
    res.r_minus = 0.0;
    res.t_minus = 1.0;
    res.flow_r = 0.0;
    res.flow_t = 1.0;
    return res;
  }
  double shifted = delta;
  if (sh2 > 0.0 && j2 > 0.0) {
    const double sign = res.partner.branch == PartnerBranch::evanescent_below ? -1.0 : 1.0;
    const double sigma_p = sign * j2 / (2.0 * cfg.xi * std::sinh(kappa));
    shifted = delta - sh2 * sigma_p;
  }
  const std::complex<double> denom(shifted, gamma_m);
  res.r_minus = std::complex<double>(0.0, -gamma_m) / denom;
  res.t_minus = 1.0 + res.r_minus;
  res.flow_r = std::norm(res.r_minus);
  res.flow_t = std::norm(res.t_minus);
  return res;
}

ScatteringResult scatter_crw_frequency(const AtomConfig& atom, const CrwConfig& cfg,
                                       double omega_k) {
  return scatter_crw(atom, cfg, wavevector_for_frequency(cfg, omega_k));
}

std::optional<double> closed_channel_resonance(const AtomConfig& atom,
                                               const CrwConfig& cfg) {
  const BandStructure bands = band_structure(atom, cfg);
  if (bands.configuration != BandStructure::Configuration::partial_overlap) {
    fail(errc::precondition,
         "complete reflection requires partially overlapping channel bands");
  }
  if (cfg.coupling == 0.0) return std::nullopt;

  const DressedPair pair = dressed_pair(atom);
  const double sh2 = std::pow(std::sin(0.5 * pair.theta), 2);
  const double j2 = cfg.coupling * cfg.coupling;

  // Window of total energies where the negative channel propagates and the
  // positive one is evanescent from below.  In it the reflection reaches 1
  // exactly where the shifted detuning crosses zero; the shift term grows
  // monotonically toward the positive band edge, so there is at most one root.
  const double lo_edge = cfg.omega + pair.nu_minus - 2.0 * cfg.xi;
  const double hi_edge = cfg.omega + pair.nu_plus - 2.0 * cfg.xi;
  auto residual = [&](double e_total) {
    const double coshk = (cfg.omega + pair.nu_plus - e_total) / (2.0 * cfg.xi);
    const double kappa = std::acosh(coshk);
    return (e_total - atom.omega_e) + sh2 * j2 / (2.0 * cfg.xi * std::sinh(kappa));
  };

  const double width = hi_edge - lo_edge;
  const double lo = lo_edge + 1e-12 * width;
  const double hi = hi_edge - 1e-12 * width;
  if (!(residual(lo) < 0.0) || !(residual(hi) > 0.0)) return std::nullopt;
  const double root = bisect_increasing(residual, lo, hi, 1e-12 * cfg.xi);
  return root - pair.nu_minus;
}

std::vector<double> bound_state_energies(const AtomConfig& atom, const CrwConfig& cfg) {
  cfg.validate();
  if (!(cfg.coupling > 0.0)) {
    fail(errc::precondition, "bound states require a positive atom-waveguide coupling");
  }
  const DressedPair pair = dressed_pair(atom);
  const double sh2 = std::pow(std::sin(0.5 * pair.theta), 2);
  const double ch2 = std::pow(std::cos(0.5 * pair.theta), 2);

  const double neg_lo = cfg.omega + pair.nu_minus - 2.0 * cfg.xi;
  const double neg_hi = cfg.omega + pair.nu_minus + 2.0 * cfg.xi;
  const double pos_lo = cfg.omega + pair.nu_plus - 2.0 * cfg.xi;
  const double pos_hi = cfg.omega + pair.nu_plus + 2.0 * cfg.xi;

  // E - omega_e - sin²(theta/2) Sigma_+(E) - cos²(theta/2) Sigma_-(E) is
  // strictly increasing on every interval outside both bands (both
  // self-energies are decreasing there), so each interval holds at most one
  // root and endpoint signs decide existence.
  auto f = [&](double e_total) {
    return e_total - atom.omega_e - sh2 * off_band_self_energy(cfg, e_total - pair.nu_plus) -
           ch2 * off_band_self_energy(cfg, e_total - pair.nu_minus);
  };

  const double tol = 1e-12 * cfg.xi;
  const double edge_off = 1e-13 * cfg.xi;
  std::vector<double> roots;

  // Below both bands.
  {
    const double hi = neg_lo - edge_off;
    if (f(hi) > 0.0) {
      double span = std::max(1.0, 8.0 * cfg.xi);
      double lo = hi - span;
      int guard = 0;
      while (f(lo) >= 0.0 && guard++ < 200) {
        span *= 2.0;
        lo = hi - span;
      }
      if (f(lo) < 0.0) roots.push_back(bisect_increasing(f, lo, hi, tol));
    }
  }

  // Gap between the bands, when separated.
  if (neg_hi < pos_lo) {
    const double lo = neg_hi + edge_off;
    const double hi = pos_lo - edge_off;
    if (lo < hi && f(lo) < 0.0 && f(hi) > 0.0) {
      roots.push_back(bisect_increasing(f, lo, hi, tol));
    }
  }

  // Above both bands.
  {
    const double lo = pos_hi + edge_off;
    if (f(lo) < 0.0) {
      double span = std::max(1.0, 8.0 * cfg.xi);
      double hi = lo + span;
      int guard = 0;
      while (f(hi) <= 0.0 && guard++ < 200) {
        span *= 2.0;
        hi = lo + span;
      }
      if (f(hi) > 0.0) roots.push_back(bisect_increasing(f, lo, hi, tol));
    }
  }

  return roots;
}

}  // namespace freqconv
