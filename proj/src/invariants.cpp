#include "qlo/invariants.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <string>

namespace qlo {

namespace {

std::size_t term_count(int modes, int k) {
    const std::size_t base = static_cast<std::size_t>(modes) * static_cast<std::size_t>(modes);
    std::size_t terms = 1;
    for (int i = 0; i < k; ++i) {
        if (terms > std::numeric_limits<std::size_t>::max() / base)
            return std::numeric_limits<std::size_t>::max();
        terms *= base;
    }
    return terms;
}

void check_budget(int modes, int k, std::size_t max_terms, const char* where) {
    if (k < 1) throw std::invalid_argument(std::string(where) + ": order k must be >= 1");
    const std::size_t terms = term_count(modes, k);
    if (terms > max_terms)
        throw ComplexityError(std::string(where) + ": tuple sum has " + std::to_string(terms) +
                                  " terms, exceeding the budget of " + std::to_string(max_terms),
                              terms);
}

RealVector block_coefficients(const ImageBasis& basis, const Matrix& rho) {
    RealVector r(static_cast<Eigen::Index>(basis.elements.size()));
    for (std::size_t i = 0; i < basis.elements.size(); ++i) {
        const Complex value = (basis.elements[i] * rho).trace();
        if (std::abs(value.imag()) > 1e-10)
            throw std::runtime_error("coefficient tr(O_i rho) has imaginary residue above 1e-10");
        r(static_cast<Eigen::Index>(i)) = value.real();
    }
    return r;
}

/// Gram matrix G_ij = tr(O_i O_j) of the image basis (real symmetric).
RealMatrix image_gram(const ImageBasis& basis) {
    const auto dim = static_cast<Eigen::Index>(basis.elements.size());
    RealMatrix g(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index j = i; j < dim; ++j) {
            const double value = (basis.elements[static_cast<std::size_t>(i)] *
                                  basis.elements[static_cast<std::size_t>(j)])
                                     .trace()
                                     .real();
            g(i, j) = value;
            g(j, i) = value;
        }
    return g;
}

// sum over k-tuples of tr(O_{i1}...O_{ik} rho) b_{i1}...b_{ik}, recursing on
// shared tuple prefixes
void preimage_recurse(const AlgebraBasis& algebra, const ImageBasis& image, const Matrix& rho,
                      int depth, const Matrix& o_prefix, const Matrix& b_prefix, Matrix& sum) {
    if (depth == 0) {
        sum += (o_prefix * rho).trace() * b_prefix;
        return;
    }
    for (std::size_t i = 0; i < image.elements.size(); ++i)
        preimage_recurse(algebra, image, rho, depth - 1, o_prefix * image.elements[i],
                         b_prefix * algebra.elements[i], sum);
}

Matrix higher_preimage_impl(const PhotonicState& state, int k, std::size_t max_terms,
                            bool parallel) {
    check_budget(state.modes, k, max_terms, "higher_preimage");
    const AlgebraBasis algebra = u_basis(state.modes);
    const auto count = static_cast<Eigen::Index>(algebra.elements.size());
    Matrix total = Matrix::Zero(state.modes, state.modes);
    for (const auto& [n, block] : state.blocks) {
        const ImageBasis& image = image_basis(state.modes, n);
        if (parallel) {
#pragma omp parallel for schedule(dynamic)
            for (Eigen::Index first = 0; first < count; ++first) {
                Matrix partial = Matrix::Zero(state.modes, state.modes);
                preimage_recurse(algebra, image, block.matrix, k - 1,
                                 image.elements[static_cast<std::size_t>(first)],
                                 algebra.elements[static_cast<std::size_t>(first)], partial);
#pragma omp critical
                total += partial;
            }
        } else {
            for (Eigen::Index first = 0; first < count; ++first)
                preimage_recurse(algebra, image, block.matrix, k - 1,
                                 image.elements[static_cast<std::size_t>(first)],
                                 algebra.elements[static_cast<std::size_t>(first)], total);
        }
    }
    return total;
}

// sum over k-tuples of tr(O_{i1}...O_{ik} rho) O_{i1}...O_{ik}
void projection_recurse(const ImageBasis& image, const Matrix& rho, int depth,
                        const Matrix& o_prefix, Matrix& sum) {
    if (depth == 0) {
        sum += (o_prefix * rho).trace() * o_prefix;
        return;
    }
    for (const Matrix& o : image.elements)
        projection_recurse(image, rho, depth - 1, o_prefix * o, sum);
}

Matrix higher_projection_matrix(const ImageBasis& image, const Matrix& rho, int k,
                                std::size_t max_terms, bool parallel) {
    check_budget(image.modes, k, max_terms, "higher_projection");
    const auto dim = static_cast<Eigen::Index>(rho.rows());
    const auto count = static_cast<Eigen::Index>(image.elements.size());
    Matrix total = Matrix::Zero(dim, dim);
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (Eigen::Index first = 0; first < count; ++first) {
            Matrix partial = Matrix::Zero(dim, dim);
            projection_recurse(image, rho, k - 1, image.elements[static_cast<std::size_t>(first)],
                               partial);
#pragma omp critical
            total += partial;
        }
    } else {
        for (Eigen::Index first = 0; first < count; ++first)
            projection_recurse(image, rho, k - 1, image.elements[static_cast<std::size_t>(first)],
                               total);
    }
    return total;
}

// (-1)^k sum over k-tuples of tr(b_{i1}...b_{ik}) [O_{ik},[...,[O_{i1},rho]...]]
void commutator_recurse(const AlgebraBasis& algebra, const ImageBasis& image, int depth,
                        const Matrix& comm, const Matrix& b_prefix, Matrix& sum) {
    if (depth == 0) {
        const Complex coeff = b_prefix.trace();
        if (coeff != Complex(0.0)) sum += coeff * comm;
        return;
    }
    for (std::size_t i = 0; i < image.elements.size(); ++i) {
        const Matrix& o = image.elements[i];
        commutator_recurse(algebra, image, depth - 1, o * comm - comm * o,
                           b_prefix * algebra.elements[i], sum);
    }
}

Matrix nested_commutator_matrix(const ImageBasis& image, const Matrix& rho, int k,
                                std::size_t max_terms, bool parallel) {
    check_budget(image.modes, k, max_terms, "nested_commutator");
    const AlgebraBasis algebra = u_basis(image.modes);
    const auto dim = static_cast<Eigen::Index>(rho.rows());
    const auto count = static_cast<Eigen::Index>(image.elements.size());
    Matrix total = Matrix::Zero(dim, dim);
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (Eigen::Index first = 0; first < count; ++first) {
            const Matrix& o = image.elements[static_cast<std::size_t>(first)];
            Matrix partial = Matrix::Zero(dim, dim);
            commutator_recurse(algebra, image, k - 1, o * rho - rho * o,
                               algebra.elements[static_cast<std::size_t>(first)], partial);
#pragma omp critical
            total += partial;
        }
    } else {
        for (Eigen::Index first = 0; first < count; ++first) {
            const Matrix& o = image.elements[static_cast<std::size_t>(first)];
            commutator_recurse(algebra, image, k - 1, o * rho - rho * o,
                               algebra.elements[static_cast<std::size_t>(first)], total);
        }
    }
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;  // (-1)^k
    return sign * total;
}

Matrix apply_equivariant(const ImageBasis& image, const Matrix& rho, EquivariantKind kind, int k,
                         std::size_t max_terms) {
    if (kind == EquivariantKind::Projection)
        return higher_projection_matrix(image, rho, k, max_terms, false);
    return nested_commutator_matrix(image, rho, k, max_terms, false);
}

/// Orthonormal Hermitian basis of the sector operator space, trace inner
/// product: off-diagonal symmetric pairs, antisymmetric pairs, then diagonal.
std::vector<Matrix> hermitian_operator_basis(std::size_t dim) {
    const auto d = static_cast<Eigen::Index>(dim);
    std::vector<Matrix> basis;
    basis.reserve(dim * dim);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (Eigen::Index a = 0; a < d; ++a)
        for (Eigen::Index b = a + 1; b < d; ++b) {
            Matrix x = Matrix::Zero(d, d);
            x(a, b) = inv_sqrt2;
            x(b, a) = inv_sqrt2;
            basis.push_back(std::move(x));
        }
    for (Eigen::Index a = 0; a < d; ++a)
        for (Eigen::Index b = a + 1; b < d; ++b) {
            Matrix y = Matrix::Zero(d, d);
            y(a, b) = Complex(0.0, inv_sqrt2);
            y(b, a) = Complex(0.0, -inv_sqrt2);
            basis.push_back(std::move(y));
        }
    for (Eigen::Index a = 0; a < d; ++a) {
        Matrix z = Matrix::Zero(d, d);
        z(a, a) = 1.0;
        basis.push_back(std::move(z));
    }
    return basis;
}

void check_block(const SectorBlock& block) {
    if (!block.sector) throw std::invalid_argument("sector block has no sector");
}

}  // namespace

CoefficientVector coefficient_vector(const PhotonicState& state) {
    const std::size_t count =
        static_cast<std::size_t>(state.modes) * static_cast<std::size_t>(state.modes);
    RealVector values = RealVector::Zero(static_cast<Eigen::Index>(count));
    for (const auto& [n, block] : state.blocks)
        values += block_coefficients(image_basis(state.modes, n), block.matrix);
    return CoefficientVector{state.modes, std::move(values)};
}

TangentData h_rho(const PhotonicState& state) {
    const CoefficientVector r = coefficient_vector(state);
    const AlgebraBasis algebra = u_basis(state.modes);
    Matrix h = Matrix::Zero(state.modes, state.modes);
    for (std::size_t i = 0; i < algebra.elements.size(); ++i)
        h += r.values(static_cast<Eigen::Index>(i)) * algebra.elements[i];
    TangentData data;
    data.spectrum = hermitian_spectrum(h, 1e-10);
    data.trace_invariants.reserve(static_cast<std::size_t>(state.modes));
    Matrix power = Matrix::Identity(state.modes, state.modes);
    for (int k = 1; k <= state.modes; ++k) {
        power = power * h;
        data.trace_invariants.push_back(power.trace().real());
    }
    data.h = std::move(h);
    return data;
}

double trace_invariants_explicit(const PhotonicState& state, int k, std::size_t max_terms) {
    check_budget(state.modes, k, max_terms, "trace_invariants_explicit");
    const CoefficientVector r = coefficient_vector(state);
    const AlgebraBasis algebra = u_basis(state.modes);
    Complex total = 0.0;
    std::function<void(int, const Matrix&, double)> recurse = [&](int depth,
                                                                  const Matrix& b_prefix,
                                                                  double r_product) {
        if (depth == 0) {
            total += b_prefix.trace() * r_product;
            return;
        }
        for (std::size_t i = 0; i < algebra.elements.size(); ++i)
            recurse(depth - 1, b_prefix * algebra.elements[i],
                    r_product * r.values(static_cast<Eigen::Index>(i)));
    };
    recurse(k, Matrix::Identity(state.modes, state.modes), 1.0);
    return total.real();
}

HermitianOperator tangent_coefficient_projection(const SectorBlock& block) {
    check_block(block);
    const ImageBasis& image = image_basis(block.sector->modes(), block.sector->photons());
    const RealVector r = block_coefficients(image, block.matrix);
    const auto dim = static_cast<Eigen::Index>(block.sector->dim());
    Matrix sum = Matrix::Zero(dim, dim);
    for (std::size_t i = 0; i < image.elements.size(); ++i)
        sum += r(static_cast<Eigen::Index>(i)) * image.elements[i];
    return HermitianOperator{block.sector, std::move(sum)};
}

std::pair<HermitianOperator, HermitianOperator> tangent_orthogonal_projection(
    const SectorBlock& block) {
    check_block(block);
    const auto dim = static_cast<Eigen::Index>(block.sector->dim());
    if (block.sector->photons() == 0) {
        // all O_i vanish on the vacuum sector; the projection is zero there
        return {HermitianOperator{block.sector, Matrix::Zero(dim, dim)},
                HermitianOperator{block.sector, block.matrix}};
    }
    const ImageBasis& image = image_basis(block.sector->modes(), block.sector->photons());
    const RealVector r = block_coefficients(image, block.matrix);
    const RealVector c = image_gram(image).ldlt().solve(r);
    Matrix tangent = Matrix::Zero(dim, dim);
    for (std::size_t i = 0; i < image.elements.size(); ++i)
        tangent += c(static_cast<Eigen::Index>(i)) * image.elements[i];
    Matrix perp = block.matrix - tangent;
    return {HermitianOperator{block.sector, std::move(tangent)},
            HermitianOperator{block.sector, std::move(perp)}};
}

Matrix higher_preimage(const PhotonicState& state, int k, std::size_t max_terms) {
    return higher_preimage_impl(state, k, max_terms, true);
}

Matrix serial::higher_preimage(const PhotonicState& state, int k, std::size_t max_terms) {
    return higher_preimage_impl(state, k, max_terms, false);
}

double higher_traces(const PhotonicState& state, int k, std::size_t max_terms) {
    check_budget(state.modes, k, max_terms, "higher_traces");
    const AlgebraBasis algebra = u_basis(state.modes);
    Complex total = 0.0;
    for (const auto& [n, block] : state.blocks) {
        const ImageBasis& image = image_basis(state.modes, n);
        std::function<void(int, const Matrix&, const Matrix&)> recurse =
            [&](int depth, const Matrix& o_prefix, const Matrix& b_prefix) {
                if (depth == 0) {
                    total += b_prefix.trace() * (o_prefix * block.matrix).trace();
                    return;
                }
                for (std::size_t i = 0; i < image.elements.size(); ++i)
                    recurse(depth - 1, o_prefix * image.elements[i],
                            b_prefix * algebra.elements[i]);
            };
        const auto dim = static_cast<Eigen::Index>(block.sector->dim());
        recurse(k, Matrix::Identity(dim, dim), Matrix::Identity(state.modes, state.modes));
    }
    return total.real();
}

HermitianOperator higher_projection(const SectorBlock& block, int k, std::size_t max_terms) {
    check_block(block);
    const ImageBasis& image = image_basis(block.sector->modes(), block.sector->photons());
    return HermitianOperator{block.sector,
                             higher_projection_matrix(image, block.matrix, k, max_terms, true)};
}

HermitianOperator serial::higher_projection(const SectorBlock& block, int k,
                                            std::size_t max_terms) {
    check_block(block);
    const ImageBasis& image = image_basis(block.sector->modes(), block.sector->photons());
    return HermitianOperator{block.sector,
                             higher_projection_matrix(image, block.matrix, k, max_terms, false)};
}

HermitianOperator nested_commutator(const SectorBlock& block, int k, std::size_t max_terms) {
    check_block(block);
    const ImageBasis& image = image_basis(block.sector->modes(), block.sector->photons());
    return HermitianOperator{block.sector,
                             nested_commutator_matrix(image, block.matrix, k, max_terms, true)};
}

HermitianOperator serial::nested_commutator(const SectorBlock& block, int k,
                                            std::size_t max_terms) {
    check_block(block);
    const ImageBasis& image = image_basis(block.sector->modes(), block.sector->photons());
    return HermitianOperator{block.sector,
                             nested_commutator_matrix(image, block.matrix, k, max_terms, false)};
}

RealMatrix covariance(const PhotonicState& state) {
    const std::size_t count =
        static_cast<std::size_t>(state.modes) * static_cast<std::size_t>(state.modes);
    const auto dim = static_cast<Eigen::Index>(count);
    RealVector first = RealVector::Zero(dim);
    RealMatrix second = RealMatrix::Zero(dim, dim);
    for (const auto& [n, block] : state.blocks) {
        const ImageBasis& image = image_basis(state.modes, n);
        first += block_coefficients(image, block.matrix);
        std::vector<Matrix> rho_o(count);
        for (std::size_t i = 0; i < count; ++i) rho_o[i] = block.matrix * image.elements[i];
        for (Eigen::Index i = 0; i < dim; ++i)
            for (Eigen::Index j = i; j < dim; ++j) {
                // symmetrized moment <(O_i O_j + O_j O_i)/2>
                const double value =
                    0.5 * ((rho_o[static_cast<std::size_t>(j)] *
                            image.elements[static_cast<std::size_t>(i)])
                               .trace() +
                           (rho_o[static_cast<std::size_t>(i)] *
                            image.elements[static_cast<std::size_t>(j)])
                               .trace())
                              .real();
                second(i, j) += value;
                second(j, i) += value;
            }
    }
    // the loop above double-adds the diagonal of each block contribution
    second.diagonal() *= 0.5;
    return first * first.transpose() - second;
}

SubspaceDecomposition equivariant_eigenspaces(int modes, int photons, EquivariantKind kind, int k,
                                              std::size_t max_dim, std::size_t max_terms) {
    const SectorPtr sector = FockSector::get(modes, photons);
    if (sector->dim() > max_dim)
        throw ComplexityError("equivariant_eigenspaces: sector dimension " +
                                  std::to_string(sector->dim()) + " exceeds the limit of " +
                                  std::to_string(max_dim),
                              sector->dim() * sector->dim());
    check_budget(modes, k, max_terms, "equivariant_eigenspaces");
    const ImageBasis& image = image_basis(modes, photons);
    const std::vector<Matrix> herm = hermitian_operator_basis(sector->dim());
    const auto dim2 = static_cast<Eigen::Index>(herm.size());

    RealMatrix t(dim2, dim2);
#pragma omp parallel for schedule(dynamic)
    for (Eigen::Index s = 0; s < dim2; ++s) {
        const Matrix image_of_s =
            apply_equivariant(image, herm[static_cast<std::size_t>(s)], kind, k, max_terms);
        for (Eigen::Index r = 0; r < dim2; ++r)
            t(r, s) = (herm[static_cast<std::size_t>(r)] * image_of_s).trace().real();
    }
    const double asym = (t - t.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-9)
        throw std::runtime_error("equivariant_eigenspaces: map is not self-adjoint (residue " +
                                 std::to_string(asym) + ")");
    const RealMatrix sym = 0.5 * (t + t.transpose());

    Eigen::SelfAdjointEigenSolver<RealMatrix> solver(sym);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("equivariant_eigenspaces: eigensolver failed");
    const RealVector& eigenvalues = solver.eigenvalues();
    const RealMatrix& vectors = solver.eigenvectors();

    const double scale = eigenvalues.cwiseAbs().maxCoeff();
    const double tol = std::max(1e-10, 1e-8 * scale);

    SubspaceDecomposition decomposition;
    decomposition.sector = sector;
    decomposition.kind = kind;
    decomposition.order = k;
    for (Eigen::Index i = 0; i < dim2; ++i) {
        if (decomposition.clusters.empty() ||
            eigenvalues(i) - decomposition.clusters.back().eigenvalue > tol) {
            decomposition.clusters.push_back(EigenCluster{eigenvalues(i), {}});
        }
        Matrix v = Matrix::Zero(static_cast<Eigen::Index>(sector->dim()),
                                static_cast<Eigen::Index>(sector->dim()));
        for (Eigen::Index r = 0; r < dim2; ++r)
            v += vectors(r, i) * herm[static_cast<std::size_t>(r)];
        decomposition.clusters.back().basis.push_back(std::move(v));
    }
    return decomposition;
}

std::vector<std::pair<double, RealVector>> subspace_spectra(
    const SectorBlock& block, const SubspaceDecomposition& decomposition) {
    check_block(block);
    if (block.sector != decomposition.sector &&
        (block.sector->modes() != decomposition.sector->modes() ||
         block.sector->photons() != decomposition.sector->photons()))
        throw std::invalid_argument("subspace_spectra: sector mismatch");
    std::vector<std::pair<double, RealVector>> out;
    out.reserve(decomposition.clusters.size());
    const auto dim = static_cast<Eigen::Index>(block.sector->dim());
    for (const EigenCluster& cluster : decomposition.clusters) {
        Matrix projected = Matrix::Zero(dim, dim);
        for (const Matrix& v : cluster.basis) projected += (v * block.matrix).trace().real() * v;
        out.emplace_back(cluster.eigenvalue, hermitian_spectrum(projected, 1e-9));
    }
    return out;
}

}  // namespace qlo
