#include "qlo/io.hpp"

namespace qlo {
namespace io {

namespace {

Complex parse_complex(const json& value) {
    if (value.is_number()) return Complex(value.get<double>(), 0.0);
    return Complex(value.value("re", 0.0), value.value("im", 0.0));
}

Matrix parse_complex_matrix(const json& re, const json& im) {
    const auto rows = static_cast<Eigen::Index>(re.size());
    if (rows == 0) throw std::invalid_argument("matrix spec: empty real part");
    const auto cols = static_cast<Eigen::Index>(re.at(0).size());
    Matrix out(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) {
            const double real = re.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(j));
            const double imag =
                im.is_null() ? 0.0
                             : im.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(j))
                                   .get<double>();
            out(i, j) = Complex(real, imag);
        }
    return out;
}

json matrix_to_json(const Matrix& m, const char* part) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            row.push_back(part[0] == 'r' ? m(i, j).real() : m(i, j).imag());
        rows.push_back(std::move(row));
    }
    return rows;
}

json spectrum_to_json(const RealVector& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
    return out;
}

}  // namespace

PhotonicState parse_state(const json& spec) {
    const std::string kind = spec.at("kind").get<std::string>();
    if (kind == "fock") {
        return catalog::fock(spec.at("occupations").get<Occupation>());
    }
    if (kind == "superposition") {
        const int modes = spec.at("m").get<int>();
        std::vector<std::pair<Complex, Occupation>> terms;
        for (const json& term : spec.at("terms"))
            terms.emplace_back(Complex(term.value("re", 0.0), term.value("im", 0.0)),
                               term.at("occupations").get<Occupation>());
        return make_pure(terms, modes);
    }
    if (kind == "noon") {
        return catalog::noon(spec.at("N").get<int>());
    }
    if (kind == "coherent") {
        std::vector<Complex> alphas;
        for (const json& alpha : spec.at("alphas")) alphas.push_back(parse_complex(alpha));
        const int cutoff = spec.contains("cutoff") ? spec.at("cutoff").get<int>()
                                                   : catalog::default_cutoff(alphas);
        return catalog::coherent(alphas, cutoff);
    }
    if (kind == "photon_added_coherent") {
        const Complex beta = parse_complex(spec.at("beta"));
        const int k2 = spec.value("k2", 0);
        const int cutoff = spec.contains("cutoff")
                               ? spec.at("cutoff").get<int>()
                               : std::max(catalog::default_cutoff({beta}) + k2 + 1, k2 + 1);
        return catalog::photon_added_coherent(beta, k2, cutoff);
    }
    if (kind == "mixed") {
        std::vector<std::pair<double, PhotonicState>> components;
        for (const json& component : spec.at("components"))
            components.emplace_back(component.at("weight").get<double>(),
                                    parse_state(component.at("state")));
        return make_mixed(components);
    }
    if (kind == "blocks") {
        PhotonicState state;
        state.modes = spec.at("m").get<int>();
        state.pure = spec.value("pure", false);
        state.truncation_deficit = spec.value("truncation_deficit", 0.0);
        for (const json& block_spec : spec.at("blocks")) {
            SectorBlock block;
            const int n = block_spec.at("n").get<int>();
            block.sector = FockSector::get(state.modes, n);
            block.matrix = parse_complex_matrix(block_spec.at("re"),
                                                block_spec.value("im", json()));
            if (block.matrix.rows() != static_cast<Eigen::Index>(block.sector->dim()))
                throw std::invalid_argument("blocks spec: matrix size does not match sector");
            block.weight = block_spec.contains("weight") ? block_spec.at("weight").get<double>()
                                                         : block.matrix.trace().real();
            state.blocks[n] = std::move(block);
        }
        require_valid_state(state);
        return state;
    }
    throw std::invalid_argument("unknown state kind: " + kind);
}

json state_to_json(const PhotonicState& state) {
    json blocks = json::array();
    for (const auto& [n, block] : state.blocks) {
        blocks.push_back(json{{"n", n},
                              {"weight", block.weight},
                              {"re", matrix_to_json(block.matrix, "re")},
                              {"im", matrix_to_json(block.matrix, "im")}});
    }
    return json{{"kind", "blocks"},
                {"m", state.modes},
                {"pure", state.pure},
                {"truncation_deficit", state.truncation_deficit},
                {"basis_order", "descending lexicographic occupations"},
                {"blocks", std::move(blocks)}};
}

ScatteringMatrix parse_unitary(const json& spec) {
    const std::string kind = spec.at("kind").get<std::string>();
    if (kind == "matrix") {
        return make_scattering(
            parse_complex_matrix(spec.at("re"), spec.value("im", json())));
    }
    if (kind == "circuit") {
        const int modes = spec.at("m").get<int>();
        Matrix s = Matrix::Identity(modes, modes);
        for (const json& element : spec.at("elements")) {
            if (element.contains("bs")) {
                const json& bs = element.at("bs");
                s = beam_splitter(modes, bs.at("j").get<int>(), bs.at("k").get<int>(),
                                  bs.at("theta").get<double>(), bs.value("phi", 0.0))
                        .s *
                    s;
            } else if (element.contains("ps")) {
                const json& ps = element.at("ps");
                s = phase_shifter(modes, ps.at("j").get<int>(), ps.at("phi").get<double>()).s * s;
            } else {
                throw std::invalid_argument("circuit spec: element must be \"bs\" or \"ps\"");
            }
        }
        return make_scattering(std::move(s));
    }
    if (kind == "haar") {
        return haar_unitary(spec.at("m").get<int>(), spec.value("seed", std::uint64_t{0}));
    }
    throw std::invalid_argument("unknown unitary kind: " + kind);
}

json invariant_report(const std::string& kind, const PhotonicState& state, const json& payload,
                      const std::vector<std::string>& warnings) {
    json sectors = json::array();
    for (const auto& [n, block] : state.blocks) sectors.push_back(n);
    json report{{"kind", kind},
                {"m", state.modes},
                {"sectors", std::move(sectors)},
                {"basis_order", basis_order_tag()},
                {"convention", "orthonormal algebra basis; descending lexicographic Fock order"},
                {"truncation_deficit", state.truncation_deficit},
                {"warnings", warnings}};
    report.update(payload);
    return report;
}

json to_json(const FeasibilityReport& report) {
    json checks = json::array();
    for (const InvariantCheck& check : report.checks)
        checks.push_back(json{{"invariant", check.invariant},
                              {"deviation", check.deviation},
                              {"tolerance", check.tolerance},
                              {"pass", check.pass}});
    return json{{"verdict", report.verdict == Verdict::Impossible ? "impossible" : "undecided"},
                {"checks", std::move(checks)},
                {"tolerance", report.tolerance},
                {"basis_order", basis_order_tag()},
                {"warnings", report.warnings}};
}

json to_json(const BoundReport& report) {
    json sectors = json::array();
    for (const SectorContribution& sector : report.sectors)
        sectors.push_back(json{{"n", sector.photons},
                               {"d_T", sector.d_tangent},
                               {"d_perp", sector.d_perp}});
    return json{{"d_T", report.d_tangent},
                {"d_perp", report.d_perp},
                {"p_max", report.p_max},
                {"sectors", std::move(sectors)},
                {"convention", report.convention}};
}

json to_json(const SubspaceDecomposition& decomposition, bool include_bases) {
    json clusters = json::array();
    for (const EigenCluster& cluster : decomposition.clusters) {
        json entry{{"eigenvalue", cluster.eigenvalue},
                   {"dimension", cluster.basis.size()}};
        if (include_bases) {
            json basis = json::array();
            for (const Matrix& v : cluster.basis)
                basis.push_back(json{{"re", matrix_to_json(v, "re")},
                                     {"im", matrix_to_json(v, "im")}});
            entry["basis"] = std::move(basis);
        }
        clusters.push_back(std::move(entry));
    }
    return json{{"kind", decomposition.kind == EquivariantKind::Projection ? "P" : "N"},
                {"order", decomposition.order},
                {"m", decomposition.sector->modes()},
                {"n", decomposition.sector->photons()},
                {"basis_order", basis_order_tag()},
                {"clusters", std::move(clusters)}};
}

}  // namespace io
}  // namespace qlo
