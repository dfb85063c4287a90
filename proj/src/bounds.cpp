#include "qlo/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace qlo {

namespace {

SectorBlock zero_block(int modes, int photons) {
    SectorBlock block;
    block.sector = FockSector::get(modes, photons);
    block.matrix = Matrix::Zero(static_cast<Eigen::Index>(block.sector->dim()),
                                static_cast<Eigen::Index>(block.sector->dim()));
    block.weight = 0.0;
    return block;
}

const SectorBlock& block_or_zero(const PhotonicState& state, int n, SectorBlock& storage) {
    auto it = state.blocks.find(n);
    if (it != state.blocks.end()) return it->second;
    storage = zero_block(state.modes, n);
    return storage;
}

std::set<int> sector_union(const PhotonicState& a, const PhotonicState& b) {
    std::set<int> sectors;
    for (const auto& [n, block] : a.blocks) sectors.insert(n);
    for (const auto& [n, block] : b.blocks) sectors.insert(n);
    return sectors;
}

std::pair<RealVector, RealVector> padded_sorted(const RealVector& a, const RealVector& b) {
    const Eigen::Index size = std::max(a.size(), b.size());
    RealVector pa = RealVector::Zero(size);
    RealVector pb = RealVector::Zero(size);
    pa.head(a.size()) = a;
    pb.head(b.size()) = b;
    std::sort(pa.data(), pa.data() + size);
    std::sort(pb.data(), pb.data() + size);
    return {std::move(pa), std::move(pb)};
}

double max_abs_deviation(const RealVector& a, const RealVector& b) {
    auto [pa, pb] = padded_sorted(a, b);
    return pa.size() == 0 ? 0.0 : (pa - pb).cwiseAbs().maxCoeff();
}

int max_photon_number(const PhotonicState& state) {
    return state.blocks.empty() ? 0 : state.blocks.rbegin()->first;
}

}  // namespace

double spectral_distance(const RealVector& a, const RealVector& b) {
    auto [pa, pb] = padded_sorted(a, b);
    return (pa - pb).norm();
}

TangentDistances tangent_distances(const PhotonicState& rho, const PhotonicState& sigma) {
    if (rho.modes != sigma.modes)
        throw std::invalid_argument("tangent_distances: mode count mismatch");
    TangentDistances result;
    double dt2 = 0.0, dp2 = 0.0;
    for (int n : sector_union(rho, sigma)) {
        SectorBlock storage_a, storage_b;
        const SectorBlock& a = block_or_zero(rho, n, storage_a);
        const SectorBlock& b = block_or_zero(sigma, n, storage_b);
        const auto [at, ap] = tangent_orthogonal_projection(a);
        const auto [bt, bp] = tangent_orthogonal_projection(b);
        SectorContribution contribution;
        contribution.photons = n;
        contribution.d_tangent = spectral_distance(hermitian_spectrum(at), hermitian_spectrum(bt));
        contribution.d_perp = spectral_distance(hermitian_spectrum(ap), hermitian_spectrum(bp));
        dt2 += contribution.d_tangent * contribution.d_tangent;
        dp2 += contribution.d_perp * contribution.d_perp;
        result.sectors.push_back(contribution);
    }
    result.d_tangent = std::sqrt(dt2);
    result.d_perp = std::sqrt(dp2);
    return result;
}

BoundReport heralded_bound(const PhotonicState& input, const PhotonicState& target) {
    if (!input.pure || !target.pure)
        throw std::invalid_argument(
            "heralded_bound: both states must be pure (the sqrt(2) sqrt(1-p) identity "
            "requires purity)");
    const TangentDistances d = tangent_distances(input, target);
    BoundReport report;
    report.d_tangent = d.d_tangent;
    report.d_perp = d.d_perp;
    report.sectors = d.sectors;
    report.p_max = std::clamp(
        1.0 - 0.5 * (d.d_tangent * d.d_tangent + d.d_perp * d.d_perp), 0.0, 1.0);
    report.convention = std::string("basis ") + basis_order_tag() +
                        "; per-sector Hoffman-Wielandt, vacuum-padded spectra";
    return report;
}

NormChain norm_chain(const SectorBlock& a, const SectorBlock& b) {
    if (!a.sector || !b.sector || a.sector->modes() != b.sector->modes() ||
        a.sector->photons() != b.sector->photons())
        throw std::invalid_argument("norm_chain: sector mismatch");
    NormChain chain;
    const auto [at, ap] = tangent_orthogonal_projection(a);
    const auto [bt, bp] = tangent_orthogonal_projection(b);
    chain.hoffman_wielandt = spectral_distance(hermitian_spectrum(at), hermitian_spectrum(bt));
    const Matrix diff = a.matrix - b.matrix;
    chain.frobenius = diff.norm();
    chain.trace_norm = hermitian_spectrum(diff, 1e-9).cwiseAbs().sum();
    return chain;
}

FeasibilityReport compare(const PhotonicState& a, const PhotonicState& b,
                          const CompareConfig& config) {
    if (a.modes != b.modes) throw std::invalid_argument("compare: mode count mismatch");
    if (config.tolerance <= 0.0) throw std::invalid_argument("compare: tolerance must be positive");

    FeasibilityReport report;
    double tolerance = config.tolerance;
    const double deficit = a.truncation_deficit + b.truncation_deficit;
    if (deficit > 0.0) {
        // worst-case leakage of the lost mass into first/second moments
        const int n_max = std::max(max_photon_number(a), max_photon_number(b));
        const double widening = deficit * static_cast<double>((n_max + 1) * (n_max + 1));
        if (widening > config.tolerance) {
            tolerance = widening;
            report.warnings.push_back("tolerance widened to " + std::to_string(tolerance) +
                                      " to cover a truncation deficit of " +
                                      std::to_string(deficit));
        } else if (deficit > 1e-8) {
            report.warnings.push_back("truncation deficit " + std::to_string(deficit) +
                                      " present; invariants carry truncation error");
        }
    }
    report.tolerance = tolerance;

    auto add_check = [&](const std::string& name, double deviation) {
        report.checks.push_back(InvariantCheck{name, deviation, tolerance, deviation <= tolerance});
    };

    if (config.tangent) {
        const TangentData ha = h_rho(a);
        const TangentData hb = h_rho(b);
        add_check("h_rho_spectrum", max_abs_deviation(ha.spectrum, hb.spectrum));
        if (config.trace) {
            double dev = 0.0;
            for (std::size_t k = 0; k < ha.trace_invariants.size(); ++k)
                dev = std::max(dev, std::abs(ha.trace_invariants[k] - hb.trace_invariants[k]));
            add_check("trace_invariants", dev);
        }
    } else if (config.trace) {
        const TangentData ha = h_rho(a);
        const TangentData hb = h_rho(b);
        double dev = 0.0;
        for (std::size_t k = 0; k < ha.trace_invariants.size(); ++k)
            dev = std::max(dev, std::abs(ha.trace_invariants[k] - hb.trace_invariants[k]));
        add_check("trace_invariants", dev);
    }

    if (config.covariance) {
        const RealMatrix ma = covariance(a);
        const RealMatrix mb = covariance(b);
        Eigen::SelfAdjointEigenSolver<RealMatrix> sa(ma, Eigen::EigenvaluesOnly);
        Eigen::SelfAdjointEigenSolver<RealMatrix> sb(mb, Eigen::EigenvaluesOnly);
        add_check("covariance_spectrum", max_abs_deviation(sa.eigenvalues(), sb.eigenvalues()));
    }

    if (config.orthogonal) {
        for (int n : sector_union(a, b)) {
            SectorBlock storage_a, storage_b;
            const SectorBlock& block_a = block_or_zero(a, n, storage_a);
            const SectorBlock& block_b = block_or_zero(b, n, storage_b);
            const auto [at, ap] = tangent_orthogonal_projection(block_a);
            const auto [bt, bp] = tangent_orthogonal_projection(block_b);
            add_check("tangent:n=" + std::to_string(n),
                      max_abs_deviation(hermitian_spectrum(at), hermitian_spectrum(bt)));
            add_check("perp:n=" + std::to_string(n),
                      max_abs_deviation(hermitian_spectrum(ap), hermitian_spectrum(bp)));
        }
    }

    for (int k : config.higher_orders) {
        const Matrix pa = higher_preimage(a, k, config.max_terms);
        const Matrix pb = higher_preimage(b, k, config.max_terms);
        add_check("higher:" + std::to_string(k),
                  max_abs_deviation(hermitian_spectrum(pa, 1e-8), hermitian_spectrum(pb, 1e-8)));
    }

    for (int k : config.nested_orders) {
        for (int n : sector_union(a, b)) {
            SectorBlock storage_a, storage_b;
            const SectorBlock& block_a = block_or_zero(a, n, storage_a);
            const SectorBlock& block_b = block_or_zero(b, n, storage_b);
            const HermitianOperator na = nested_commutator(block_a, k, config.max_terms);
            const HermitianOperator nb = nested_commutator(block_b, k, config.max_terms);
            add_check("nested:" + std::to_string(k) + ":n=" + std::to_string(n),
                      max_abs_deviation(hermitian_spectrum(na, 1e-8), hermitian_spectrum(nb, 1e-8)));
        }
    }

    report.verdict = Verdict::Undecided;
    for (const InvariantCheck& check : report.checks)
        if (!check.pass) report.verdict = Verdict::Impossible;
    return report;
}

}  // namespace qlo
