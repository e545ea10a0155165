#pragma once

#include <freqconv/types.hpp>

namespace freqconv {

/// Diagonalize the driven g/f subspace in the rotating frame.
/// Throws errc::degenerate_drive when rabi = 0 and detuning = 0 (the dressed
/// basis is then undefined) and errc::invalid_argument for rabi < 0 or
/// non-finite fields.
DressedPair dressed_pair(const AtomConfig& atom);

/// nu_plus - nu_minus = sqrt(detuning² + 4 rabi²) > 0 for any valid atom.
/// Equals the frequency offset between the two scattering channels.
double channel_splitting(const DressedPair& pair);

}  // namespace freqconv
