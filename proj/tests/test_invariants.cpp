// test_invariants.cpp — tangent projections, trace invariants, higher-order
// tuple sums, nested commutators, covariance and equivariant eigenspaces

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qlo/catalog.hpp"
#include "qlo/invariants.hpp"
#include "test_util.hpp"

#include <algorithm>
#include <cmath>

using namespace qlo;

namespace {

// evolved copy of a single-sector block
SectorBlock evolve_block(const SectorBlock& block, const ScatteringMatrix& s) {
    Matrix u = photonic_unitary(s, block.sector->photons());
    return {block.sector, u * block.matrix * u.adjoint(), block.weight};
}

double max_abs_diff(const RealVector& a, const RealVector& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("coefficient_vector examples") {
    // order is x(j<k), y(j<k), z(j)
    auto r11 = coefficient_vector(catalog::fock({1, 1}));
    CHECK(std::abs(r11.values(0)) < 1e-12);
    CHECK(std::abs(r11.values(1)) < 1e-12);
    CHECK(r11.values(2) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r11.values(3) == doctest::Approx(1.0).epsilon(1e-12));

    auto r20 = coefficient_vector(catalog::fock({2, 0}));
    CHECK(r20.values(2) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(std::abs(r20.values(3)) < 1e-12);

    // coherent (alpha, beta): r_x = sqrt(2) Re(conj(a) b),
    // r_y = -sqrt(2) Im(conj(a) b) from the normal-ordered first moments
    Complex a(1.0, 0.0), b(0.3, 0.4);
    auto rc = coefficient_vector(catalog::coherent({a, b}, 25));
    Complex ab = std::conj(a) * b;
    CHECK(rc.values(0) == doctest::Approx(std::sqrt(2.0) * ab.real()).epsilon(1e-8));
    CHECK(rc.values(1) == doctest::Approx(-std::sqrt(2.0) * ab.imag()).epsilon(1e-8));
    CHECK(rc.values(2) == doctest::Approx(std::norm(a)).epsilon(1e-8));
    CHECK(rc.values(3) == doctest::Approx(std::norm(b)).epsilon(1e-8));
}

TEST_CASE("h_rho examples") {
    // Fock state: h is diag of occupations
    auto data = h_rho(catalog::fock({3, 1, 2}));
    RealVector expected(3);
    expected << 1.0, 2.0, 3.0;
    CHECK(max_abs_diff(data.spectrum, expected) < 1e-12);

    // |11> vs HOM output: identical spectra (1,1)
    double s = 1.0 / std::sqrt(2.0);
    auto hom = h_rho(make_pure({{s, {2, 0}}, {-s, {0, 2}}}, 2));
    auto f11 = h_rho(catalog::fock({1, 1}));
    CHECK(max_abs_diff(hom.spectrum, f11.spectrum) < 1e-10);
    CHECK(f11.spectrum(0) == doctest::Approx(1.0).epsilon(1e-12));

    // coherent invariants I1, I2
    auto coh = h_rho(catalog::coherent({Complex(1.0, 0.0), Complex(0.5, 0.0)}, 25));
    CHECK(coh.trace_invariants[0] == doctest::Approx(1.25).epsilon(1e-8));
    CHECK(coh.trace_invariants[1] == doctest::Approx(1.25 * 1.25).epsilon(1e-7));
}

TEST_CASE("trace_invariants_explicit oracle") {
    auto f11 = catalog::fock({1, 1});
    CHECK(trace_invariants_explicit(f11, 1) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(trace_invariants_explicit(f11, 2) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(trace_invariants_explicit(catalog::fock({2, 0}), 2) ==
          doctest::Approx(4.0).epsilon(1e-12));

    // agrees with trace powers of h_rho on random states
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 5; ++trial) {
        auto state = qlo_test::random_sector_state(2, 2, rng);
        auto data = h_rho(state);
        for (int k = 1; k <= 2; ++k)
            CHECK(trace_invariants_explicit(state, k) ==
                  doctest::Approx(data.trace_invariants[k - 1]).epsilon(1e-9));
    }
}

TEST_CASE("tangent_coefficient_projection") {
    auto f11 = catalog::fock({1, 1});
    auto proj = tangent_coefficient_projection(f11.blocks.at(2));
    CHECK(proj.matrix.isApprox(2.0 * Matrix::Identity(3, 3), 1e-12));

    // vacuum block -> zero
    auto vac = catalog::fock({0, 0});
    auto zero = tangent_coefficient_projection(vac.blocks.at(0));
    CHECK(zero.matrix.cwiseAbs().maxCoeff() < 1e-15);

    // spectrum invariant under Haar evolutions
    std::mt19937_64 rng(23);
    auto block = qlo_test::random_sector_state(2, 2, rng).blocks.at(2);
    RealVector base = hermitian_spectrum(tangent_coefficient_projection(block));
    for (int trial = 0; trial < 20; ++trial) {
        auto s = haar_unitary(2, 3000 + trial);
        RealVector rotated =
            hermitian_spectrum(tangent_coefficient_projection(evolve_block(block, s)));
        CHECK(max_abs_diff(base, rotated) < 1e-9);
    }
}

TEST_CASE("tangent_orthogonal_projection worked example") {
    auto [rt11, rp11] = tangent_orthogonal_projection(catalog::fock({1, 1}).blocks.at(2));
    RealVector st = hermitian_spectrum(rt11);
    RealVector sp = hermitian_spectrum(rp11);
    RealVector st_expect(3), sp_expect(3);
    st_expect << 1.0 / 3, 1.0 / 3, 1.0 / 3;
    sp_expect << -1.0 / 3, -1.0 / 3, 2.0 / 3;
    CHECK(max_abs_diff(st, st_expect) < 1e-10);
    CHECK(max_abs_diff(sp, sp_expect) < 1e-10);

    auto [rt20, rp20] = tangent_orthogonal_projection(catalog::fock({2, 0}).blocks.at(2));
    RealVector st2 = hermitian_spectrum(rt20);
    RealVector sp2 = hermitian_spectrum(rp20);
    RealVector st2_expect(3), sp2_expect(3);
    st2_expect << -1.0 / 6, 1.0 / 3, 5.0 / 6;
    sp2_expect << -1.0 / 3, 1.0 / 6, 1.0 / 6;
    CHECK(max_abs_diff(st2, st2_expect) < 1e-10);
    CHECK(max_abs_diff(sp2, sp2_expect) < 1e-10);

    // residual is trace-orthogonal to every O_i
    const auto& images = image_basis(2, 2);
    for (const auto& o : images.elements)
        CHECK(std::abs((rp11.matrix * o).trace()) < 1e-10);
}

TEST_CASE("orthogonal split satisfies Pythagoras") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        auto a = qlo_test::random_sector_state(2, 2, rng).blocks.at(2);
        auto b = qlo_test::random_sector_state(2, 2, rng).blocks.at(2);
        auto [at, ap] = tangent_orthogonal_projection(a);
        auto [bt, bp] = tangent_orthogonal_projection(b);
        double full = (a.matrix - b.matrix).squaredNorm();
        double split =
            (at.matrix - bt.matrix).squaredNorm() + (ap.matrix - bp.matrix).squaredNorm();
        CHECK(full == doctest::Approx(split).epsilon(1e-9));
    }
}

TEST_CASE("higher_preimage") {
    auto f11 = catalog::fock({1, 1});
    // k=1 reduces to h_rho
    CHECK(higher_preimage(f11, 1).isApprox(h_rho(f11).h, 1e-12));

    // brute-force tuple oracle for k=2, m=2
    std::mt19937_64 rng(41);
    auto state = qlo_test::random_sector_state(2, 2, rng);
    const auto& rho = state.blocks.at(2).matrix;
    const auto& images = image_basis(2, 2).elements;
    const auto& basis = u_basis(2).elements;
    Matrix brute = Matrix::Zero(2, 2);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            brute += (images[i] * images[j] * rho).trace() * basis[i] * basis[j];
    CHECK((higher_preimage(state, 2) - brute).cwiseAbs().maxCoeff() < 1e-10);

    // spectrum invariance under Haar evolutions
    RealVector base = hermitian_spectrum(higher_preimage(state, 2));
    for (int trial = 0; trial < 20; ++trial) {
        auto s = haar_unitary(2, 4000 + trial);
        RealVector rotated = hermitian_spectrum(higher_preimage(evolve(state, s), 2));
        CHECK(max_abs_diff(base, rotated) < 1e-9);
    }

    // complexity refusal
    CHECK_THROWS_AS(higher_preimage(state, 12, 1000), ComplexityError);
}

TEST_CASE("higher_traces") {
    auto f11 = catalog::fock({1, 1});
    CHECK(higher_traces(f11, 2) == doctest::Approx(6.0).epsilon(1e-12));

    // k=1 weights by tr(b_i): only the z elements contribute, giving I_1
    std::mt19937_64 rng(43);
    auto state = qlo_test::random_sector_state(2, 2, rng);
    CHECK(higher_traces(state, 1) ==
          doctest::Approx(h_rho(state).trace_invariants[0]).epsilon(1e-10));

    double base = higher_traces(state, 2);
    for (int trial = 0; trial < 10; ++trial) {
        auto s = haar_unitary(2, 5000 + trial);
        CHECK(higher_traces(evolve(state, s), 2) == doctest::Approx(base).epsilon(1e-9));
    }
}

TEST_CASE("higher_projection") {
    auto block = catalog::fock({1, 1}).blocks.at(2);
    // k=1 coincides with the coefficient projection
    CHECK(higher_projection(block, 1)
              .matrix.isApprox(tangent_coefficient_projection(block).matrix, 1e-12));

    std::mt19937_64 rng(47);
    auto random_block = qlo_test::random_sector_state(2, 2, rng).blocks.at(2);
    RealVector base = hermitian_spectrum(higher_projection(random_block, 2));
    for (int trial = 0; trial < 20; ++trial) {
        auto s = haar_unitary(2, 6000 + trial);
        RealVector rotated =
            hermitian_spectrum(higher_projection(evolve_block(random_block, s), 2));
        CHECK(max_abs_diff(base, rotated) < 1e-8);
    }

    // self-adjointness under the trace inner product
    for (int trial = 0; trial < 5; ++trial) {
        Matrix x = qlo_test::random_hermitian(3, rng);
        Matrix y = qlo_test::random_hermitian(3, rng);
        SectorBlock bx{block.sector, x, x.trace().real()};
        SectorBlock by{block.sector, y, y.trace().real()};
        Complex lhs = (y * higher_projection(bx, 2).matrix).trace();
        Complex rhs = (higher_projection(by, 2).matrix * x).trace();
        CHECK(std::abs(lhs - rhs) < 1e-9);
    }
}

TEST_CASE("nested_commutator") {
    auto sector = FockSector::get(2, 2);
    SectorBlock uniform{sector, Matrix::Identity(3, 3) / 3.0, 1.0};
    for (int k : {1, 2})
        CHECK(nested_commutator(uniform, k).matrix.cwiseAbs().maxCoeff() < 1e-12);

    // k=1 on a Fock-diagonal block: the only traceful b are the b^z
    Matrix diag = Matrix::Zero(3, 3);
    diag(0, 0) = 0.2;
    diag(1, 1) = 0.5;
    diag(2, 2) = 0.3;
    SectorBlock diagonal{sector, diag, 1.0};
    CHECK(nested_commutator(diagonal, 1).matrix.cwiseAbs().maxCoeff() < 1e-12);

    std::mt19937_64 rng(53);
    auto block = qlo_test::random_sector_state(2, 2, rng).blocks.at(2);
    RealVector base = hermitian_spectrum(nested_commutator(block, 2));
    for (int trial = 0; trial < 20; ++trial) {
        auto s = haar_unitary(2, 7000 + trial);
        RealVector rotated = hermitian_spectrum(nested_commutator(evolve_block(block, s), 2));
        CHECK(max_abs_diff(base, rotated) < 1e-8);
    }

    // self-adjointness of the map
    for (int trial = 0; trial < 5; ++trial) {
        Matrix x = qlo_test::random_hermitian(3, rng);
        Matrix y = qlo_test::random_hermitian(3, rng);
        SectorBlock bx{block.sector, x, x.trace().real()};
        SectorBlock by{block.sector, y, y.trace().real()};
        Complex lhs = (y * nested_commutator(bx, 2).matrix).trace();
        Complex rhs = (nested_commutator(by, 2).matrix * x).trace();
        CHECK(std::abs(lhs - rhs) < 1e-9);
    }
}

TEST_CASE("covariance examples") {
    // order x, y, z1, z2
    RealMatrix m11 = covariance(catalog::fock({1, 1}));
    RealMatrix expect = RealMatrix::Zero(4, 4);
    expect(0, 0) = -2.0;
    expect(1, 1) = -2.0;
    CHECK((m11 - expect).cwiseAbs().maxCoeff() < 1e-12);

    // NOON N=3 spectrum {-N^2/2, -N/2, -N/2, 0}
    RealVector noon3 = hermitian_spectrum(covariance(catalog::noon(3)).cast<Complex>());
    RealVector noon3_expect(4);
    noon3_expect << -4.5, -1.5, -1.5, 0.0;
    CHECK(max_abs_diff(noon3, noon3_expect) < 1e-10);

    // NOON N=2 coincides with |11> (Hong-Ou-Mandel)
    RealVector noon2 = hermitian_spectrum(covariance(catalog::noon(2)).cast<Complex>());
    RealVector f11 = hermitian_spectrum(covariance(catalog::fock({1, 1})).cast<Complex>());
    CHECK(max_abs_diff(noon2, f11) < 1e-10);

    // |2,1> spectrum {-(2kk'+k+k')/2 twice, 0, 0}
    RealVector f21 = hermitian_spectrum(covariance(catalog::fock({2, 1})).cast<Complex>());
    RealVector f21_expect(4);
    f21_expect << -3.5, -3.5, 0.0, 0.0;
    CHECK(max_abs_diff(f21, f21_expect) < 1e-10);

    // spectrum invariance
    std::mt19937_64 rng(59);
    auto state = qlo_test::random_sector_state(2, 2, rng);
    RealVector base = hermitian_spectrum(covariance(state).cast<Complex>());
    for (int trial = 0; trial < 10; ++trial) {
        auto s = haar_unitary(2, 8000 + trial);
        RealVector rotated = hermitian_spectrum(covariance(evolve(state, s)).cast<Complex>());
        CHECK(max_abs_diff(base, rotated) < 1e-9);
    }
}

TEST_CASE("equivariant_eigenspaces: tangent span of P_1") {
    auto decomp = equivariant_eigenspaces(2, 2, EquivariantKind::Projection, 1);
    std::size_t total = 0;
    std::size_t zero_dim = 0;
    std::size_t nonzero_dim = 0;
    for (const auto& cluster : decomp.clusters) {
        total += cluster.basis.size();
        if (std::abs(cluster.eigenvalue) < 1e-8)
            zero_dim += cluster.basis.size();
        else
            nonzero_dim += cluster.basis.size();
    }
    CHECK(total == 9);

    // the nonzero part is the span of the O_i; its dimension is the Gram rank
    const auto& images = image_basis(2, 2).elements;
    RealMatrix gram(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) gram(i, j) = (images[i] * images[j]).trace().real();
    Eigen::FullPivLU<RealMatrix> lu(gram);
    CHECK(nonzero_dim == static_cast<std::size_t>(lu.rank()));
    CHECK(zero_dim == 9 - static_cast<std::size_t>(lu.rank()));

    // cluster bases are orthonormal Hermitian matrices
    std::vector<Matrix> all;
    for (const auto& cluster : decomp.clusters)
        for (const auto& v : cluster.basis) {
            CHECK(is_hermitian(v, 1e-10));
            all.push_back(v);
        }
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = 0; j < all.size(); ++j) {
            Complex g = (all[i] * all[j]).trace();
            CHECK(std::abs(g - (i == j ? 1.0 : 0.0)) < 1e-10);
        }
}

TEST_CASE("equivariant_eigenspaces: N_2 cluster dimensions 2j+1") {
    for (int n : {2, 3}) {
        auto decomp = equivariant_eigenspaces(2, n, EquivariantKind::NestedCommutator, 2);
        std::vector<std::size_t> dims;
        std::size_t total = 0;
        for (const auto& cluster : decomp.clusters) {
            dims.push_back(cluster.basis.size());
            total += cluster.basis.size();
        }
        CHECK(total == static_cast<std::size_t>((n + 1) * (n + 1)));
        std::sort(dims.begin(), dims.end());
        std::vector<std::size_t> expect;
        for (int j = 0; j <= n; ++j) expect.push_back(2 * j + 1);
        CHECK(dims == expect);
    }
}

TEST_CASE("subspace_spectra") {
    auto decomp = equivariant_eigenspaces(2, 2, EquivariantKind::Projection, 1);
    auto block = catalog::fock({1, 1}).blocks.at(2);

    // complement = zero cluster; tangent part = everything else
    Matrix tangent_part = Matrix::Zero(3, 3);
    RealVector complement_spectrum;
    for (const auto& cluster : decomp.clusters) {
        Matrix part = Matrix::Zero(3, 3);
        for (const auto& v : cluster.basis) part += (v * block.matrix).trace() * v;
        if (std::abs(cluster.eigenvalue) < 1e-8)
            complement_spectrum = hermitian_spectrum(part);
        else
            tangent_part += part;
    }
    RealVector tangent_spectrum = hermitian_spectrum(tangent_part);
    RealVector st_expect(3), sp_expect(3);
    st_expect << 1.0 / 3, 1.0 / 3, 1.0 / 3;
    sp_expect << -1.0 / 3, -1.0 / 3, 2.0 / 3;
    CHECK(max_abs_diff(tangent_spectrum, st_expect) < 1e-10);
    CHECK(max_abs_diff(complement_spectrum, sp_expect) < 1e-10);

    // completeness: the cluster projections sum back to the block
    Matrix sum = Matrix::Zero(3, 3);
    for (const auto& cluster : decomp.clusters)
        for (const auto& v : cluster.basis) sum += (v * block.matrix).trace() * v;
    CHECK((sum - block.matrix).cwiseAbs().maxCoeff() < 1e-10);

    // invariance of all cluster spectra under Haar evolutions, m=2, n=3
    auto decomp3 = equivariant_eigenspaces(2, 3, EquivariantKind::NestedCommutator, 2);
    std::mt19937_64 rng(61);
    auto block3 = qlo_test::random_sector_state(2, 3, rng).blocks.at(3);
    auto base = subspace_spectra(block3, decomp3);
    for (int trial = 0; trial < 10; ++trial) {
        auto s = haar_unitary(2, 9000 + trial);
        auto rotated = subspace_spectra(evolve_block(block3, s), decomp3);
        REQUIRE(rotated.size() == base.size());
        for (std::size_t c = 0; c < base.size(); ++c)
            CHECK(max_abs_diff(base[c].second, rotated[c].second) < 1e-8);
    }
}

TEST_CASE("h_rho and coefficient projection give matching invariance verdicts") {
    std::mt19937_64 rng(67);
    for (int n = 1; n <= 3; ++n) {
        for (int trial = 0; trial < 10; ++trial) {
            auto a = qlo_test::random_sector_state(2, n, rng);
            bool related = trial % 2 == 0;
            auto b = related ? evolve(a, haar_unitary(2, 10000 + trial))
                             : qlo_test::random_sector_state(2, n, rng);
            bool h_equal =
                max_abs_diff(h_rho(a).spectrum, h_rho(b).spectrum) < 1e-8;
            bool p_equal =
                max_abs_diff(
                    hermitian_spectrum(tangent_coefficient_projection(a.blocks.at(n))),
                    hermitian_spectrum(tangent_coefficient_projection(b.blocks.at(n)))) <
                1e-8;
            if (related) {
                CHECK(h_equal);
                CHECK(p_equal);
            } else {
                // generic random pairs differ in both pictures
                CHECK(h_equal == p_equal);
            }
        }
    }
}

TEST_CASE("basis independence of the coefficient projection") {
    std::mt19937_64 rng(71);
    auto block = qlo_test::random_sector_state(2, 2, rng).blocks.at(2);
    Matrix reference = tangent_coefficient_projection(block).matrix;

    // random real orthogonal recombination of the basis
    std::normal_distribution<double> gauss(0.0, 1.0);
    RealMatrix g(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) g(i, j) = gauss(rng);
    RealMatrix r = Eigen::HouseholderQR<RealMatrix>(g).householderQ();

    const auto& images = image_basis(2, 2).elements;
    std::vector<Matrix> rotated(4, Matrix::Zero(3, 3));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) rotated[i] += r(i, j) * images[j];
    Matrix recombined = Matrix::Zero(3, 3);
    for (int i = 0; i < 4; ++i)
        recombined += (rotated[i] * block.matrix).trace() * rotated[i];
    CHECK((recombined - reference).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("brute-force oracle at m=2, n=1") {
    std::mt19937_64 rng(73);
    auto state = qlo_test::random_sector_state(2, 1, rng);
    const auto& block = state.blocks.at(1);
    const auto& images = image_basis(2, 1).elements;
    const auto& basis = u_basis(2).elements;
    const Matrix& rho = block.matrix;

    // h_rho and I_k by explicit sums
    Matrix h = Matrix::Zero(2, 2);
    for (int i = 0; i < 4; ++i) h += (images[i] * rho).trace() * basis[i];
    CHECK((h_rho(state).h - h).cwiseAbs().maxCoeff() < 1e-10);

    for (int k : {2, 3}) {
        // higher_preimage by full tuple enumeration
        Matrix pre = Matrix::Zero(2, 2);
        std::vector<int> tuple(k, 0);
        while (true) {
            Matrix ochain = Matrix::Identity(2, 2);
            Matrix bchain = Matrix::Identity(2, 2);
            for (int t = 0; t < k; ++t) {
                ochain = ochain * images[tuple[t]];
                bchain = bchain * basis[tuple[t]];
            }
            pre += (ochain * rho).trace() * bchain;
            int pos = k - 1;
            while (pos >= 0 && ++tuple[pos] == 4) tuple[pos--] = 0;
            if (pos < 0) break;
        }
        CHECK((higher_preimage(state, k) - pre).cwiseAbs().maxCoeff() < 1e-10);
    }

    // P_2 and N_2 by full tuple enumeration
    Matrix p2 = Matrix::Zero(2, 2);
    Matrix n2 = Matrix::Zero(2, 2);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            p2 += (images[i] * images[j] * rho).trace() * images[i] * images[j];
            Matrix inner = images[i] * rho - rho * images[i];
            Matrix outer = images[j] * inner - inner * images[j];
            n2 += (basis[i] * basis[j]).trace() * outer;
        }
    CHECK((higher_projection(block, 2).matrix - p2).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((nested_commutator(block, 2).matrix - n2).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("serial and parallel tuple kernels agree") {
    std::mt19937_64 rng(79);
    auto state = qlo_test::random_sector_state(2, 2, rng);
    const auto& block = state.blocks.at(2);
    for (int k : {1, 2, 3}) {
        CHECK((higher_preimage(state, k) - serial::higher_preimage(state, k))
                  .cwiseAbs()
                  .maxCoeff() < 1e-12);
        CHECK((higher_projection(block, k).matrix - serial::higher_projection(block, k).matrix)
                  .cwiseAbs()
                  .maxCoeff() < 1e-12);
        CHECK((nested_commutator(block, k).matrix -
               serial::nested_commutator(block, k).matrix)
                  .cwiseAbs()
                  .maxCoeff() < 1e-12);
    }
}

TEST_CASE("every returned operator is Hermitian") {
    std::mt19937_64 rng(83);
    auto state = qlo_test::random_sector_state(2, 2, rng);
    const auto& block = state.blocks.at(2);
    CHECK(is_hermitian(h_rho(state).h, 1e-10));
    CHECK(is_hermitian(higher_preimage(state, 2), 1e-10));
    CHECK(is_hermitian(higher_preimage(state, 3), 1e-10));
    CHECK(is_hermitian(tangent_coefficient_projection(block).matrix, 1e-10));
    CHECK(is_hermitian(higher_projection(block, 2).matrix, 1e-10));
    CHECK(is_hermitian(nested_commutator(block, 2).matrix, 1e-10));
    auto [rt, rp] = tangent_orthogonal_projection(block);
    CHECK(is_hermitian(rt.matrix, 1e-10));
    CHECK(is_hermitian(rp.matrix, 1e-10));
}
