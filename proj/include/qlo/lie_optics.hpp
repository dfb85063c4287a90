// lie_optics.hpp — single-photon algebra basis, its multi-photon image, the
// photonic unitary per sector, the permanent oracle and the adjoint matrix C

#pragma once

#include "qlo/fock.hpp"

#include <cstdint>

namespace qlo {

/// The m x m unitary describing a passive interferometer.
struct ScatteringMatrix {
    int modes = 0;
    Matrix s;
};

/// Validates unitarity (1e-10) and wraps the matrix.
ScatteringMatrix make_scattering(Matrix s);

/// Single-photon Hamiltonian h = log(S)/i, Hermitian with exp(i h) = S.
Matrix single_photon_hamiltonian(const ScatteringMatrix& s);

/// Trace-orthonormal Hermitian basis of u(m), ordered as all b^x (j<k,
/// lexicographic), then all b^y (j<k), then all b^z_j.
struct AlgebraBasis {
    int modes = 0;
    std::vector<Matrix> elements;
};

AlgebraBasis u_basis(int modes);

/// Ordering tag recorded in every report that references basis coefficients.
inline const char* basis_order_tag() { return "x(j<k),y(j<k),z(j)"; }

/// Multi-photon image of a single-photon Hamiltonian: the matrix of
/// sum_jk h_jk a^dag_j a_k restricted to the sector.
Matrix dphi(const Matrix& h, const FockSector& sector);

/// Image of u_basis under dphi on one sector, same ordering. Cached per (m,n).
struct ImageBasis {
    int modes = 0;
    SectorPtr sector;
    std::vector<Matrix> elements;
};

const ImageBasis& image_basis(int modes, int photons);

/// M x M unitary of the interferometer on the n-photon sector, built by
/// evolving each creation operator with S. Columns are computed in parallel.
Matrix photonic_unitary(const ScatteringMatrix& s, int photons);

/// Transition amplitude <out|U|in> via a Ryser-style exact permanent.
/// Independent oracle for photonic_unitary entries.
Complex amplitude_permanent(const ScatteringMatrix& s, const Occupation& in,
                            const Occupation& out);

/// The real orthogonal m^2 x m^2 matrix C with S^dag b_i S = sum_j C_ij b_j.
struct AdjointMatrix {
    int modes = 0;
    RealMatrix c;
};

AdjointMatrix adjoint_matrix(const ScatteringMatrix& s);

/// Identity except for the 2x2 block
/// [[cos t, -e^{i p} sin t], [e^{-i p} sin t, cos t]] on modes (j,k), 1-based.
ScatteringMatrix beam_splitter(int modes, int j, int k, double theta, double phi);
ScatteringMatrix phase_shifter(int modes, int j, double phi);

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the
/// triangular factor's diagonal phases normalized. Deterministic per seed.
ScatteringMatrix haar_unitary(int modes, std::uint64_t seed);

/// Evolves every sector block: rho_n -> U_n rho_n U_n^dag.
PhotonicState evolve(const PhotonicState& state, const ScatteringMatrix& s);

namespace serial {
/// Single-threaded reference used by tests and the kernel benchmark.
Matrix photonic_unitary(const ScatteringMatrix& s, int photons);
}  // namespace serial

}  // namespace qlo
