#include <freqconv/dressed.hpp>

#include <cmath>

namespace freqconv {

void AtomConfig::validate() const {
  if (!std::isfinite(omega_e) || !std::isfinite(omega_f) ||
      !std::isfinite(drive_frequency) || !std::isfinite(rabi)) {
    fail(errc::invalid_argument, "atom parameters must be finite");
  }
  if (rabi < 0.0) {
    fail(errc::invalid_argument, "rabi rate must be >= 0");
  }
  if (rabi == 0.0 && detuning() == 0.0) {
    fail(errc::degenerate_drive,
         "rabi = 0 with zero detuning leaves the dressed basis undefined");
  }
}

DressedPair dressed_pair(const AtomConfig& atom) {
  atom.validate();
  const double delta = atom.detuning();
  const double eta = atom.rabi;
  const double hyp = std::hypot(delta, 2.0 * eta);

  // Quasi-energies are the roots of nu² - Delta nu - eta² = 0.  The root on
  // the same side as Delta is cancellation-free; the other is recovered from
  // the product nu_+ nu_- = -eta² so both stay accurate for eta << |Delta|.
  double nu_p, nu_m;
  if (delta >= 0.0) {
    nu_p = 0.5 * (delta + hyp);
    nu_m = (eta == 0.0) ? 0.0 : -(eta * eta) / nu_p;
  } else {
    nu_m = 0.5 * (delta - hyp);
    nu_p = (eta == 0.0) ? 0.0 : -(eta * eta) / nu_m;
  }

  DressedPair pair;
  pair.theta = std::atan2(2.0 * eta, delta);
  pair.nu_plus = nu_p;
  pair.nu_minus = nu_m;
  const double sh = std::sin(0.5 * pair.theta);
  const double ch = std::cos(0.5 * pair.theta);
  pair.plus_coeffs = {sh, ch};
  pair.minus_coeffs = {-ch, sh};
  return pair;
}

double channel_splitting(const DressedPair& pair) { return pair.nu_plus - pair.nu_minus; }

}  // namespace freqconv
