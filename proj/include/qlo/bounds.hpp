// bounds.hpp — sorted-spectrum distances, the Hoffman-Wielandt/Frobenius/
// trace-norm chain, heralded success-probability bounds and the feasibility
// verdict engine

#pragma once

#include "qlo/fock.hpp"
#include "qlo/invariants.hpp"

namespace qlo {

/// l2 distance of two ascending spectra; the shorter list is zero-padded.
double spectral_distance(const RealVector& a, const RealVector& b);

struct SectorContribution {
    int photons = 0;
    double d_tangent = 0.0;
    double d_perp = 0.0;
};

/// Per-sector spectral distances of the orthogonal tangent/complement split,
/// combined as d^2 = sum over sectors of d_sector^2.
struct TangentDistances {
    double d_tangent = 0.0;
    double d_perp = 0.0;
    std::vector<SectorContribution> sectors;
};

TangentDistances tangent_distances(const PhotonicState& rho, const PhotonicState& sigma);

struct BoundReport {
    double d_tangent = 0.0;
    double d_perp = 0.0;
    double p_max = 1.0;  // max(0, 1 - (d_T^2 + d_perp^2)/2), clamped to [0,1]
    std::vector<SectorContribution> sectors;
    std::string convention;
};

/// Upper bound on the success probability of a heralded preparation of
/// `target` from `input`. Both states must be pure.
BoundReport heralded_bound(const PhotonicState& input, const PhotonicState& target);

struct NormChain {
    double hoffman_wielandt = 0.0;  // spectral distance of tangent spectra
    double frobenius = 0.0;         // ||A - B||_2
    double trace_norm = 0.0;        // ||A - B||_1
};

/// The chain hw <= frobenius <= trace_norm for two blocks of one sector.
NormChain norm_chain(const SectorBlock& a, const SectorBlock& b);

enum class Verdict { Impossible, Undecided };

struct InvariantCheck {
    std::string invariant;
    double deviation = 0.0;
    double tolerance = 0.0;
    bool pass = true;
};

struct CompareConfig {
    bool tangent = true;      // h_rho spectrum
    bool trace = true;        // I_1..I_m
    bool covariance = true;   // covariance spectrum
    bool orthogonal = true;   // per-sector tangent/complement spectra
    std::vector<int> higher_orders;  // higher_preimage spectra, per k
    std::vector<int> nested_orders;  // nested commutator spectra, per k
    double tolerance = 1e-8;
    std::size_t max_terms = kDefaultMaxTerms;
};

struct FeasibilityReport {
    Verdict verdict = Verdict::Undecided;
    std::vector<InvariantCheck> checks;
    std::vector<std::string> warnings;
    double tolerance = 1e-8;  // effective tolerance after truncation widening
};

/// Runs the selected invariant families on both states. The verdict is
/// `Impossible` iff any invariant differs beyond tolerance, `Undecided`
/// otherwise; "possible" is never asserted.
FeasibilityReport compare(const PhotonicState& a, const PhotonicState& b,
                          const CompareConfig& config = {});

}  // namespace qlo
