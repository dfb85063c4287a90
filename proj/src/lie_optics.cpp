#include "qlo/lie_optics.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <cmath>
#include <mutex>
#include <random>

namespace qlo {

namespace {

constexpr double kUnitarityTol = 1e-10;

void check_unitary(const Matrix& s, double tol) {
    const Eigen::Index m = s.rows();
    if (m == 0 || s.cols() != m)
        throw std::invalid_argument("scattering matrix must be square and non-empty");
    const double defect = (s * s.adjoint() - Matrix::Identity(m, m)).cwiseAbs().maxCoeff();
    if (defect > tol)
        throw std::invalid_argument("scattering matrix is not unitary within tolerance");
}

// Applies the creation-operator polynomials of Eq-style column expansion:
// prod_k (sum_j S_jk a^dag_j)^{n_k} / sqrt(n_k!) acting on vacuum.
Vector unitary_column(const Matrix& s, const std::vector<SectorPtr>& sectors,
                      const Occupation& input) {
    const int modes = static_cast<int>(input.size());
    Vector amp(1);
    amp(0) = 1.0;
    int level = 0;
    double norm = 1.0;
    for (int k = 0; k < modes; ++k) {
        for (int rep = 0; rep < input[static_cast<std::size_t>(k)]; ++rep) {
            const FockSector& from = *sectors[static_cast<std::size_t>(level)];
            const FockSector& to = *sectors[static_cast<std::size_t>(level + 1)];
            Vector next = Vector::Zero(static_cast<Eigen::Index>(to.dim()));
            for (std::size_t idx = 0; idx < from.dim(); ++idx) {
                const Complex a = amp(static_cast<Eigen::Index>(idx));
                if (a == Complex(0.0)) continue;
                Occupation occ = from.basis()[idx];
                for (int j = 0; j < modes; ++j) {
                    const Complex sjk = s(j, k);
                    if (sjk == Complex(0.0)) continue;
                    ++occ[static_cast<std::size_t>(j)];
                    next(static_cast<Eigen::Index>(to.index_of(occ))) +=
                        sjk * std::sqrt(static_cast<double>(occ[static_cast<std::size_t>(j)])) * a;
                    --occ[static_cast<std::size_t>(j)];
                }
            }
            amp = std::move(next);
            ++level;
        }
        norm *= std::tgamma(static_cast<double>(input[static_cast<std::size_t>(k)]) + 1.0);
    }
    return amp / std::sqrt(norm);
}

Matrix photonic_unitary_impl(const ScatteringMatrix& s, int photons, bool parallel) {
    if (photons < 0) throw std::invalid_argument("photon number must be non-negative");
    std::vector<SectorPtr> sectors;
    sectors.reserve(static_cast<std::size_t>(photons) + 1);
    for (int n = 0; n <= photons; ++n) sectors.push_back(FockSector::get(s.modes, n));
    const FockSector& sector = *sectors.back();
    const auto dim = static_cast<Eigen::Index>(sector.dim());
    Matrix u(dim, dim);
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (Eigen::Index col = 0; col < dim; ++col)
            u.col(col) = unitary_column(s.s, sectors, sector.basis()[static_cast<std::size_t>(col)]);
    } else {
        for (Eigen::Index col = 0; col < dim; ++col)
            u.col(col) = unitary_column(s.s, sectors, sector.basis()[static_cast<std::size_t>(col)]);
    }
    return u;
}

}  // namespace

ScatteringMatrix make_scattering(Matrix s) {
    check_unitary(s, kUnitarityTol);
    return ScatteringMatrix{static_cast<int>(s.rows()), std::move(s)};
}

Matrix single_photon_hamiltonian(const ScatteringMatrix& s) {
    // S is normal, so its Schur form is diagonal: h = Q diag(arg λ) Q^dag
    Eigen::ComplexSchur<Matrix> schur(s.s);
    if (schur.info() != Eigen::Success)
        throw std::runtime_error("single_photon_hamiltonian: Schur decomposition failed");
    const Matrix& q = schur.matrixU();
    RealVector phases(s.modes);
    for (int i = 0; i < s.modes; ++i) phases(i) = std::arg(schur.matrixT()(i, i));
    return q * phases.asDiagonal() * q.adjoint();
}

AlgebraBasis u_basis(int modes) {
    if (modes < 1) throw std::invalid_argument("mode count must be positive");
    AlgebraBasis basis;
    basis.modes = modes;
    basis.elements.reserve(static_cast<std::size_t>(modes) * static_cast<std::size_t>(modes));
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int j = 0; j < modes; ++j)
        for (int k = j + 1; k < modes; ++k) {
            Matrix b = Matrix::Zero(modes, modes);
            b(j, k) = inv_sqrt2;
            b(k, j) = inv_sqrt2;
            basis.elements.push_back(std::move(b));
        }
    for (int j = 0; j < modes; ++j)
        for (int k = j + 1; k < modes; ++k) {
            Matrix b = Matrix::Zero(modes, modes);
            b(j, k) = Complex(0.0, inv_sqrt2);
            b(k, j) = Complex(0.0, -inv_sqrt2);
            basis.elements.push_back(std::move(b));
        }
    for (int j = 0; j < modes; ++j) {
        Matrix b = Matrix::Zero(modes, modes);
        b(j, j) = 1.0;
        basis.elements.push_back(std::move(b));
    }
    return basis;
}

Matrix dphi(const Matrix& h, const FockSector& sector) {
    const int modes = sector.modes();
    if (h.rows() != modes || h.cols() != modes)
        throw std::invalid_argument("dphi: Hamiltonian size does not match sector modes");
    if (!is_hermitian(h, 1e-10))
        throw std::invalid_argument("dphi: Hamiltonian is not Hermitian within 1e-10");
    const auto dim = static_cast<Eigen::Index>(sector.dim());
    Matrix out = Matrix::Zero(dim, dim);
    for (Eigen::Index col = 0; col < dim; ++col) {
        Occupation occ = sector.basis()[static_cast<std::size_t>(col)];
        for (int j = 0; j < modes; ++j) {
            if (h(j, j) != Complex(0.0))
                out(col, col) += h(j, j) * static_cast<double>(occ[static_cast<std::size_t>(j)]);
            for (int k = 0; k < modes; ++k) {
                if (j == k || h(j, k) == Complex(0.0)) continue;
                const int nk = occ[static_cast<std::size_t>(k)];
                if (nk == 0) continue;
                // a^dag_j a_k |occ> = sqrt(n_k) sqrt(n_j + 1) |occ - e_k + e_j>
                --occ[static_cast<std::size_t>(k)];
                ++occ[static_cast<std::size_t>(j)];
                const double amp = std::sqrt(static_cast<double>(nk)) *
                                   std::sqrt(static_cast<double>(occ[static_cast<std::size_t>(j)]));
                out(static_cast<Eigen::Index>(sector.index_of(occ)), col) += h(j, k) * amp;
                --occ[static_cast<std::size_t>(j)];
                ++occ[static_cast<std::size_t>(k)];
            }
        }
    }
    return out;
}

const ImageBasis& image_basis(int modes, int photons) {
    static std::mutex mutex;
    static std::map<std::pair<int, int>, std::unique_ptr<ImageBasis>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[{modes, photons}];
    if (!slot) {
        auto basis = std::make_unique<ImageBasis>();
        basis->modes = modes;
        basis->sector = FockSector::get(modes, photons);
        const AlgebraBasis algebra = u_basis(modes);
        basis->elements.reserve(algebra.elements.size());
        for (const Matrix& b : algebra.elements) basis->elements.push_back(dphi(b, *basis->sector));
        slot = std::move(basis);
    }
    return *slot;
}

Matrix photonic_unitary(const ScatteringMatrix& s, int photons) {
    return photonic_unitary_impl(s, photons, true);
}

Matrix serial::photonic_unitary(const ScatteringMatrix& s, int photons) {
    return photonic_unitary_impl(s, photons, false);
}

Complex amplitude_permanent(const ScatteringMatrix& s, const Occupation& in,
                            const Occupation& out) {
    if (static_cast<int>(in.size()) != s.modes || static_cast<int>(out.size()) != s.modes)
        throw std::invalid_argument("amplitude_permanent: occupation length mismatch");
    long total_in = 0, total_out = 0;
    for (int c : in) total_in += c;
    for (int c : out) total_out += c;
    if (total_in != total_out)
        throw std::invalid_argument("amplitude_permanent: occupations are in different sectors");
    const int p = static_cast<int>(total_in);
    if (p == 0) return Complex(1.0);

    // rows = mode j repeated out_j times, columns = mode k repeated in_k times
    Matrix a(p, p);
    {
        int row = 0;
        for (int j = 0; j < s.modes; ++j)
            for (int r = 0; r < out[static_cast<std::size_t>(j)]; ++r, ++row) {
                int col = 0;
                for (int k = 0; k < s.modes; ++k)
                    for (int c = 0; c < in[static_cast<std::size_t>(k)]; ++c, ++col)
                        a(row, col) = s.s(j, k);
            }
    }

    // Ryser: perm(A) = (-1)^p sum_{T != 0} (-1)^|T| prod_r (sum_{c in T} A_rc)
    Complex perm = 0.0;
    const std::uint64_t subsets = 1ULL << p;
    for (std::uint64_t mask = 1; mask < subsets; ++mask) {
        Complex product = 1.0;
        for (int row = 0; row < p; ++row) {
            Complex rowsum = 0.0;
            for (int col = 0; col < p; ++col)
                if (mask & (1ULL << col)) rowsum += a(row, col);
            product *= rowsum;
        }
        const int bits = __builtin_popcountll(mask);
        perm += ((p - bits) % 2 == 0 ? 1.0 : -1.0) * product;
    }

    double norm = 1.0;
    for (int c : in) norm *= std::tgamma(static_cast<double>(c) + 1.0);
    for (int c : out) norm *= std::tgamma(static_cast<double>(c) + 1.0);
    return perm / std::sqrt(norm);
}

AdjointMatrix adjoint_matrix(const ScatteringMatrix& s) {
    const AlgebraBasis basis = u_basis(s.modes);
    const auto dim = static_cast<Eigen::Index>(basis.elements.size());
    RealMatrix c(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        const Matrix conjugated = s.s.adjoint() * basis.elements[static_cast<std::size_t>(i)] * s.s;
        for (Eigen::Index j = 0; j < dim; ++j) {
            const Complex entry = (basis.elements[static_cast<std::size_t>(j)] * conjugated).trace();
            if (std::abs(entry.imag()) > 1e-12)
                throw std::runtime_error("adjoint_matrix: imaginary residue exceeds 1e-12");
            c(i, j) = entry.real();
        }
    }
    return AdjointMatrix{s.modes, std::move(c)};
}

ScatteringMatrix beam_splitter(int modes, int j, int k, double theta, double phi) {
    if (j < 1 || k <= j || k > modes)
        throw std::invalid_argument("beam_splitter: need 1 <= j < k <= m");
    Matrix s = Matrix::Identity(modes, modes);
    const Complex phase = std::exp(Complex(0.0, phi));
    s(j - 1, j - 1) = std::cos(theta);
    s(k - 1, k - 1) = std::cos(theta);
    s(j - 1, k - 1) = -phase * std::sin(theta);
    s(k - 1, j - 1) = std::conj(phase) * std::sin(theta);
    return ScatteringMatrix{modes, std::move(s)};
}

ScatteringMatrix phase_shifter(int modes, int j, double phi) {
    if (j < 1 || j > modes) throw std::invalid_argument("phase_shifter: mode index out of range");
    Matrix s = Matrix::Identity(modes, modes);
    s(j - 1, j - 1) = std::exp(Complex(0.0, phi));
    return ScatteringMatrix{modes, std::move(s)};
}

ScatteringMatrix haar_unitary(int modes, std::uint64_t seed) {
    if (modes < 1) throw std::invalid_argument("mode count must be positive");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix g(modes, modes);
    for (int i = 0; i < modes; ++i)
        for (int j = 0; j < modes; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < modes; ++i) {
        const Complex d = r(i, i);
        q.col(i) *= (d == Complex(0.0)) ? Complex(1.0) : d / std::abs(d);
    }
    return ScatteringMatrix{modes, std::move(q)};
}

PhotonicState evolve(const PhotonicState& state, const ScatteringMatrix& s) {
    if (state.modes != s.modes)
        throw std::invalid_argument("evolve: mode count mismatch");
    PhotonicState out = state;
    for (auto& [n, block] : out.blocks) {
        const Matrix u = photonic_unitary(s, n);
        block.matrix = u * block.matrix * u.adjoint();
    }
    return out;
}

}  // namespace qlo
