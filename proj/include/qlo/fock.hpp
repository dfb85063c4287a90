// fock.hpp — Fock sectors, occupation bases, sector-block states and Hermitian spectra

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qlo {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Photon counts per mode. Length is always the mode count m.
using Occupation = std::vector<int>;

/// Thrown when a tuple sum would exceed the configured term budget.
class ComplexityError : public std::runtime_error {
public:
    ComplexityError(const std::string& what, std::size_t terms)
        : std::runtime_error(what), terms_(terms) {}
    std::size_t terms() const { return terms_; }

private:
    std::size_t terms_;
};

/// Dimension of the n-photon subspace of m modes: binomial(m+n-1, n).
/// Throws std::invalid_argument for m = 0 and std::overflow_error when the
/// result does not fit a std::size_t.
std::size_t sector_dimension(int modes, int photons);

/// All occupation vectors with the given total photon number, in descending
/// lexicographic order: (n,0,...,0) first, (0,...,0,n) last.
std::vector<Occupation> enumerate_basis(int modes, int photons);

/// Basis bookkeeping for one fixed-photon-number subspace. Instances are
/// immutable and shared through a process-wide cache.
class FockSector {
public:
    static std::shared_ptr<const FockSector> get(int modes, int photons);

    int modes() const { return modes_; }
    int photons() const { return photons_; }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<Occupation>& basis() const { return basis_; }

    /// Position of an occupation vector in the canonical basis order.
    std::size_t index_of(const Occupation& occ) const;
    bool contains(const Occupation& occ) const;

    FockSector(const FockSector&) = delete;
    FockSector& operator=(const FockSector&) = delete;

private:
    FockSector(int modes, int photons);

    int modes_;
    int photons_;
    std::vector<Occupation> basis_;
    std::map<Occupation, std::size_t> index_;
};

using SectorPtr = std::shared_ptr<const FockSector>;

/// One fixed-photon-number block of a density operator. The matrix is
/// Hermitian PSD with trace equal to `weight`.
struct SectorBlock {
    SectorPtr sector;
    Matrix matrix;
    double weight = 0.0;
};

/// A photonic state dephased in total photon number: a weighted collection of
/// sector blocks plus the probability mass lost to truncation.
struct PhotonicState {
    int modes = 0;
    std::map<int, SectorBlock> blocks;  // keyed by photon number
    bool pure = false;
    double truncation_deficit = 0.0;
};

/// Dense Hermitian matrix acting on one Fock sector.
struct HermitianOperator {
    SectorPtr sector;
    Matrix matrix;
};

/// Builds a normalized state from amplitude terms. Terms may span several
/// photon numbers; cross-sector coherences are dropped (the state is dephased
/// in total photon number) and the purity flag is set only when all terms
/// share one photon number.
PhotonicState make_pure(const std::vector<std::pair<Complex, Occupation>>& terms, int modes);

/// Convex combination of states over equal mode counts. Weights must be
/// non-negative and sum to 1 within 1e-12.
PhotonicState make_mixed(const std::vector<std::pair<double, PhotonicState>>& components);

/// Per-sector operator provider: given a sector, returns the operator matrix
/// restricted to it.
using OperatorFamily = std::function<Matrix(const FockSector&)>;

/// Sector-summed expectation value sum_n tr(op_n rho_n). The imaginary
/// residue (reported through `imag_residue` when non-null) must stay below
/// 1e-10 for Hermitian operator families.
double expectation(const OperatorFamily& ops, const PhotonicState& state,
                   double* imag_residue = nullptr);

/// Ascending real eigenvalues of a Hermitian matrix. Throws when the matrix
/// deviates from Hermiticity beyond `tol`.
RealVector hermitian_spectrum(const Matrix& op, double tol = 1e-10);
RealVector hermitian_spectrum(const HermitianOperator& op, double tol = 1e-10);

/// Validation helpers shared across modules.
void require_valid_state(const PhotonicState& state, double tol = 1e-10);
bool is_hermitian(const Matrix& a, double tol = 1e-12);

}  // namespace qlo
