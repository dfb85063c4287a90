#include "qlo/fock.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>

namespace qlo {

namespace {

void check_modes(int modes) {
    if (modes < 1) throw std::invalid_argument("mode count must be positive");
}

void check_photons(int photons) {
    if (photons < 0) throw std::invalid_argument("photon number must be non-negative");
}

}  // namespace

std::size_t sector_dimension(int modes, int photons) {
    check_modes(modes);
    check_photons(photons);
    // binomial(m+n-1, n) with overflow detection at every step
    const auto n = static_cast<unsigned long long>(photons);
    const auto top = static_cast<unsigned long long>(modes) + n - 1;
    const unsigned long long k = std::min(n, top - n);
    unsigned long long result = 1;
    for (unsigned long long i = 1; i <= k; ++i) {
        const unsigned long long factor = top - k + i;
        if (result > std::numeric_limits<unsigned long long>::max() / factor)
            throw std::overflow_error("sector dimension exceeds platform integer range");
        result = result * factor / i;  // exact: result*factor is divisible by i here
    }
    if (result > std::numeric_limits<std::size_t>::max())
        throw std::overflow_error("sector dimension exceeds platform integer range");
    return static_cast<std::size_t>(result);
}

std::vector<Occupation> enumerate_basis(int modes, int photons) {
    check_modes(modes);
    check_photons(photons);
    std::vector<Occupation> out;
    out.reserve(sector_dimension(modes, photons));
    Occupation current(static_cast<std::size_t>(modes), 0);
    // descending lexicographic order: fill the leading mode with as many
    // photons as possible first
    std::function<void(int, int)> recurse = [&](int mode, int remaining) {
        if (mode == modes - 1) {
            current[static_cast<std::size_t>(mode)] = remaining;
            out.push_back(current);
            return;
        }
        for (int c = remaining; c >= 0; --c) {
            current[static_cast<std::size_t>(mode)] = c;
            recurse(mode + 1, remaining - c);
        }
    };
    recurse(0, photons);
    return out;
}

FockSector::FockSector(int modes, int photons)
    : modes_(modes), photons_(photons), basis_(enumerate_basis(modes, photons)) {
    for (std::size_t i = 0; i < basis_.size(); ++i) index_[basis_[i]] = i;
}

std::shared_ptr<const FockSector> FockSector::get(int modes, int photons) {
    static std::mutex mutex;
    static std::map<std::pair<int, int>, std::shared_ptr<const FockSector>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[{modes, photons}];
    if (!slot) slot = std::shared_ptr<const FockSector>(new FockSector(modes, photons));
    return slot;
}

std::size_t FockSector::index_of(const Occupation& occ) const {
    auto it = index_.find(occ);
    if (it == index_.end())
        throw std::invalid_argument("occupation vector does not belong to this sector");
    return it->second;
}

bool FockSector::contains(const Occupation& occ) const {
    return index_.find(occ) != index_.end();
}

bool is_hermitian(const Matrix& a, double tol) {
    if (a.rows() != a.cols()) return false;
    return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

PhotonicState make_pure(const std::vector<std::pair<Complex, Occupation>>& terms, int modes) {
    check_modes(modes);
    if (terms.empty()) throw std::invalid_argument("make_pure: no terms given");

    // group amplitudes per total photon number
    std::map<int, std::vector<std::pair<std::size_t, Complex>>> per_sector;
    std::map<int, SectorPtr> sectors;
    for (const auto& [amp, occ] : terms) {
        if (static_cast<int>(occ.size()) != modes)
            throw std::invalid_argument("make_pure: occupation length does not match mode count");
        int n = 0;
        for (int c : occ) {
            if (c < 0) throw std::invalid_argument("make_pure: negative occupation");
            n += c;
        }
        auto& sector = sectors[n];
        if (!sector) sector = FockSector::get(modes, n);
        per_sector[n].emplace_back(sector->index_of(occ), amp);
    }

    double norm2 = 0.0;
    std::map<int, Vector> vectors;
    for (const auto& [n, entries] : per_sector) {
        Vector v = Vector::Zero(static_cast<Eigen::Index>(sectors[n]->dim()));
        for (const auto& [idx, amp] : entries) v(static_cast<Eigen::Index>(idx)) += amp;
        norm2 += v.squaredNorm();
        vectors[n] = std::move(v);
    }
    if (norm2 <= 0.0) throw std::invalid_argument("make_pure: zero state vector");

    PhotonicState state;
    state.modes = modes;
    state.pure = vectors.size() == 1;
    for (auto& [n, v] : vectors) {
        v /= std::sqrt(norm2);
        SectorBlock block;
        block.sector = sectors[n];
        block.matrix = v * v.adjoint();
        block.weight = v.squaredNorm();
        if (block.weight > 0.0) state.blocks[n] = std::move(block);
    }
    return state;
}

PhotonicState make_mixed(const std::vector<std::pair<double, PhotonicState>>& components) {
    if (components.empty()) throw std::invalid_argument("make_mixed: no components");
    double total = 0.0;
    const int modes = components.front().second.modes;
    for (const auto& [w, component] : components) {
        if (w < 0.0) throw std::invalid_argument("make_mixed: negative weight");
        if (component.modes != modes)
            throw std::invalid_argument("make_mixed: mode count mismatch");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw std::invalid_argument("make_mixed: weights must sum to 1");

    PhotonicState state;
    state.modes = modes;
    state.pure = components.size() == 1 && components.front().second.pure;
    for (const auto& [w, component] : components) {
        if (w == 0.0) continue;
        state.truncation_deficit += w * component.truncation_deficit;
        for (const auto& [n, block] : component.blocks) {
            auto it = state.blocks.find(n);
            if (it == state.blocks.end()) {
                SectorBlock merged;
                merged.sector = block.sector;
                merged.matrix = w * block.matrix;
                merged.weight = w * block.weight;
                state.blocks[n] = std::move(merged);
            } else {
                it->second.matrix += w * block.matrix;
                it->second.weight += w * block.weight;
            }
        }
    }
    return state;
}

double expectation(const OperatorFamily& ops, const PhotonicState& state, double* imag_residue) {
    Complex value = 0.0;
    for (const auto& [n, block] : state.blocks) {
        const Matrix op = ops(*block.sector);
        if (op.rows() != block.matrix.rows() || op.cols() != block.matrix.cols())
            throw std::invalid_argument("expectation: operator does not match sector dimension");
        value += (op * block.matrix).trace();
    }
    if (imag_residue) *imag_residue = std::abs(value.imag());
    if (std::abs(value.imag()) > 1e-10 && !imag_residue)
        throw std::runtime_error("expectation: imaginary residue exceeds 1e-10");
    return value.real();
}

RealVector hermitian_spectrum(const Matrix& op, double tol) {
    if (!is_hermitian(op, tol))
        throw std::invalid_argument("hermitian_spectrum: matrix is not Hermitian within tolerance");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(op, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("hermitian_spectrum: eigensolver failed");
    return solver.eigenvalues();
}

RealVector hermitian_spectrum(const HermitianOperator& op, double tol) {
    return hermitian_spectrum(op.matrix, tol);
}

void require_valid_state(const PhotonicState& state, double tol) {
    check_modes(state.modes);
    double mass = state.truncation_deficit;
    for (const auto& [n, block] : state.blocks) {
        if (!block.sector || block.sector->modes() != state.modes || block.sector->photons() != n)
            throw std::invalid_argument("state block does not match its sector");
        if (!is_hermitian(block.matrix, tol))
            throw std::invalid_argument("state block is not Hermitian within tolerance");
        if (std::abs(block.matrix.trace().real() - block.weight) > tol)
            throw std::invalid_argument("state block trace does not match its weight");
        mass += block.weight;
    }
    if (std::abs(mass - 1.0) > 1e-10)
        throw std::invalid_argument("state weights and truncation deficit do not sum to 1");
}

}  // namespace qlo
