// invariants.hpp — conserved quantities of photonic states under passive
// linear-optical evolution: tangent projections and their preimage spectra,
// trace invariants, higher-order tuple sums, nested commutators, the
// covariance matrix and Ad-equivariant eigenspace decompositions

#pragma once

#include "qlo/fock.hpp"
#include "qlo/lie_optics.hpp"

namespace qlo {

constexpr std::size_t kDefaultMaxTerms = 1'000'000;

/// Coefficients r_i = tr(O_i rho), sector-summed, in u_basis order.
struct CoefficientVector {
    int modes = 0;
    RealVector values;
};

CoefficientVector coefficient_vector(const PhotonicState& state);

/// The m x m coherency matrix h_rho = sum_i tr(O_i rho) b_i, its ascending
/// spectrum and the trace invariants I_k = tr(h_rho^k), k = 1..m.
struct TangentData {
    Matrix h;
    RealVector spectrum;
    std::vector<double> trace_invariants;
};

TangentData h_rho(const PhotonicState& state);

/// Explicit multi-index form of I_k (test oracle; (m^2)^k terms).
double trace_invariants_explicit(const PhotonicState& state, int k,
                                 std::size_t max_terms = kDefaultMaxTerms);

/// The coefficient-form tangent projection sum_i tr(O_i rho) O_i of one block.
HermitianOperator tangent_coefficient_projection(const SectorBlock& block);

/// Trace-orthogonal split of a block against span{O_i}: solves the Gram
/// system G c = r and returns (rho_T, rho_perp) with tr(rho_perp O_i) = 0.
/// On the vacuum sector both parts are zero by convention.
std::pair<HermitianOperator, HermitianOperator> tangent_orthogonal_projection(
    const SectorBlock& block);

/// The m x m Hermitian matrix sum tr(O_{i1}...O_{ik} rho) b_{i1}...b_{ik}.
Matrix higher_preimage(const PhotonicState& state, int k,
                       std::size_t max_terms = kDefaultMaxTerms);

/// The scalar sum tr(b_{i1}...b_{ik}) tr(O_{i1}...O_{ik} rho).
double higher_traces(const PhotonicState& state, int k,
                     std::size_t max_terms = kDefaultMaxTerms);

/// The sector operator P_k(rho) = sum tr(O_{i1}...O_{ik} rho) O_{i1}...O_{ik}.
HermitianOperator higher_projection(const SectorBlock& block, int k,
                                    std::size_t max_terms = kDefaultMaxTerms);

/// The nested commutator
/// N_k(rho) = (-1)^k sum tr(b_{i1}...b_{ik}) [O_{ik},[...,[O_{i1},rho]...]].
HermitianOperator nested_commutator(const SectorBlock& block, int k,
                                    std::size_t max_terms = kDefaultMaxTerms);

/// Covariance matrix M_ij = <O_i><O_j> - <(O_i O_j + O_j O_i)/2>, all moments
/// sector-summed, in u_basis order and the orthonormal-O normalization.
RealMatrix covariance(const PhotonicState& state);

enum class EquivariantKind { Projection, NestedCommutator };

struct EigenCluster {
    double eigenvalue = 0.0;
    std::vector<Matrix> basis;  // orthonormal Hermitian matrices v_i^lambda
};

struct SubspaceDecomposition {
    SectorPtr sector;
    EquivariantKind kind = EquivariantKind::Projection;
    int order = 1;
    std::vector<EigenCluster> clusters;  // ascending eigenvalue
};

/// Diagonalizes the chosen Ad-equivariant map (P_k or N_k) as a real
/// symmetric M^2 x M^2 matrix on an orthonormal Hermitian basis of the
/// sector operator space. Eigenvalues are clustered at relative tolerance
/// 1e-8 (absolute floor 1e-10).
SubspaceDecomposition equivariant_eigenspaces(int modes, int photons, EquivariantKind kind,
                                              int k, std::size_t max_dim = 60,
                                              std::size_t max_terms = kDefaultMaxTerms);

/// Projects a block onto every cluster, rho^lambda = sum_i tr(v_i rho) v_i,
/// and returns (eigenvalue, ascending spectrum of rho^lambda) per cluster.
std::vector<std::pair<double, RealVector>> subspace_spectra(
    const SectorBlock& block, const SubspaceDecomposition& decomposition);

namespace serial {
/// Single-threaded references for the tuple-sum kernels.
Matrix higher_preimage(const PhotonicState& state, int k,
                       std::size_t max_terms = kDefaultMaxTerms);
HermitianOperator higher_projection(const SectorBlock& block, int k,
                                    std::size_t max_terms = kDefaultMaxTerms);
HermitianOperator nested_commutator(const SectorBlock& block, int k,
                                    std::size_t max_terms = kDefaultMaxTerms);
}  // namespace serial

}  // namespace qlo
