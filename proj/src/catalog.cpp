#include "qlo/catalog.hpp"

#include <cmath>

namespace qlo {
namespace catalog {

namespace {

Complex int_power(Complex base, int exponent) {
    Complex result = 1.0;
    for (int i = 0; i < exponent; ++i) result *= base;
    return result;
}

double factorial(int n) { return std::tgamma(static_cast<double>(n) + 1.0); }

PhotonicState from_sector_amplitudes(int modes,
                                     const std::map<int, std::map<Occupation, Complex>>& terms) {
    PhotonicState state;
    state.modes = modes;
    double mass = 0.0;
    for (const auto& [n, amplitudes] : terms) {
        SectorBlock block;
        block.sector = FockSector::get(modes, n);
        Vector v = Vector::Zero(static_cast<Eigen::Index>(block.sector->dim()));
        for (const auto& [occ, amp] : amplitudes)
            v(static_cast<Eigen::Index>(block.sector->index_of(occ))) = amp;
        block.weight = v.squaredNorm();
        if (block.weight == 0.0) continue;
        block.matrix = v * v.adjoint();
        mass += block.weight;
        state.blocks[n] = std::move(block);
    }
    state.truncation_deficit = std::max(0.0, 1.0 - mass);
    state.pure = state.blocks.size() == 1 && state.truncation_deficit < 1e-12;
    return state;
}

}  // namespace

PhotonicState fock(const Occupation& occupation) {
    return make_pure({{Complex(1.0), occupation}}, static_cast<int>(occupation.size()));
}

PhotonicState noon(int photons) {
    if (photons < 1) throw std::invalid_argument("noon: N must be >= 1");
    const double amp = 1.0 / std::sqrt(2.0);
    return make_pure({{Complex(amp), {photons, 0}}, {Complex(amp), {0, photons}}}, 2);
}

PhotonicState coherent(const std::vector<Complex>& alphas, int cutoff) {
    const int modes = static_cast<int>(alphas.size());
    if (modes < 1) throw std::invalid_argument("coherent: need at least one amplitude");
    if (cutoff < 1) throw std::invalid_argument("coherent: cutoff must be >= 1");
    double total = 0.0;
    for (const Complex& alpha : alphas) total += std::norm(alpha);
    const double prefactor = std::exp(-0.5 * total);

    std::map<int, std::map<Occupation, Complex>> terms;
    for (int n = 0; n <= cutoff; ++n) {
        for (const Occupation& occ : enumerate_basis(modes, n)) {
            Complex amp = prefactor;
            for (int j = 0; j < modes; ++j)
                amp *= int_power(alphas[static_cast<std::size_t>(j)],
                                 occ[static_cast<std::size_t>(j)]) /
                       std::sqrt(factorial(occ[static_cast<std::size_t>(j)]));
            if (amp != Complex(0.0)) terms[n][occ] = amp;
        }
    }
    return from_sector_amplitudes(modes, terms);
}

PhotonicState photon_added_coherent(Complex beta, int k2, int cutoff) {
    if (k2 < 0) throw std::invalid_argument("photon_added_coherent: k2 must be >= 0");
    if (cutoff < k2 + 1)
        throw std::invalid_argument("photon_added_coherent: cutoff must be >= k2 + 1");
    const double prefactor = std::exp(-0.5 * std::norm(beta)) / std::sqrt(1.0 + std::norm(beta));
    std::map<int, std::map<Occupation, Complex>> terms;
    for (int n1 = 1; n1 + k2 <= cutoff; ++n1) {
        // a^dag |beta> coefficient of |n1>: e^{-|b|^2/2} beta^{n1-1} sqrt(n1)/sqrt((n1-1)!)
        const Complex amp = prefactor * int_power(beta, n1 - 1) *
                            std::sqrt(static_cast<double>(n1)) / std::sqrt(factorial(n1 - 1));
        if (amp != Complex(0.0)) terms[n1 + k2][{n1, k2}] = amp;
    }
    return from_sector_amplitudes(2, terms);
}

PhotonicState coherent_fock(Complex alpha, int k2, int cutoff) {
    if (k2 < 0) throw std::invalid_argument("coherent_fock: k2 must be >= 0");
    if (cutoff < k2) throw std::invalid_argument("coherent_fock: cutoff must be >= k2");
    const double prefactor = std::exp(-0.5 * std::norm(alpha));
    std::map<int, std::map<Occupation, Complex>> terms;
    for (int n1 = 0; n1 + k2 <= cutoff; ++n1) {
        const Complex amp = prefactor * int_power(alpha, n1) / std::sqrt(factorial(n1));
        if (amp != Complex(0.0)) terms[n1 + k2][{n1, k2}] = amp;
    }
    return from_sector_amplitudes(2, terms);
}

double gamma(Complex beta) {
    const double b2 = std::norm(beta);
    return (b2 * b2 + 3.0 * b2 + 1.0) / (1.0 + b2);
}

int default_cutoff(const std::vector<Complex>& alphas) {
    double total = 0.0;
    for (const Complex& alpha : alphas) total += std::norm(alpha);
    double cumulative = 0.0;
    double term = std::exp(-total);
    for (int n = 0; n <= 40; ++n) {
        cumulative += term;
        if (1.0 - cumulative < 1e-10) return std::max(1, n);
        term *= total / static_cast<double>(n + 1);
    }
    return 40;
}

}  // namespace catalog
}  // namespace qlo
