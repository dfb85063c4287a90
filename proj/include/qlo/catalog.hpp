// catalog.hpp — named constructors for the state families used throughout:
// Fock, NOON, coherent, photon-added coherent, and mixtures thereof

#pragma once

#include "qlo/fock.hpp"

namespace qlo {
namespace catalog {

/// |k_1 ... k_m>, a single-sector rank-1 state.
PhotonicState fock(const Occupation& occupation);

/// (|N0> + |0N>)/sqrt(2) on two modes.
PhotonicState noon(int photons);

/// Multimode coherent state |alpha_1>...|alpha_m> truncated at total photon
/// number `cutoff`; the Poissonian tail mass is recorded as the truncation
/// deficit.
PhotonicState coherent(const std::vector<Complex>& alphas, int cutoff);

/// a^dag_1 |beta>|k2> / sqrt(1+|beta|^2) on two modes, truncated at total
/// photon number `cutoff`.
PhotonicState photon_added_coherent(Complex beta, int k2, int cutoff);

/// |alpha>|k2>: coherent state in mode 1, Fock state in mode 2.
PhotonicState coherent_fock(Complex alpha, int k2, int cutoff);

/// Mean photon number of the photon-added coherent state:
/// gamma = (|beta|^4 + 3|beta|^2 + 1) / (1 + |beta|^2).
double gamma(Complex beta);

/// Smallest cutoff with Poissonian tail mass below 1e-10, capped at 40.
int default_cutoff(const std::vector<Complex>& alphas);

}  // namespace catalog
}  // namespace qlo
