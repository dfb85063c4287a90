// qlo — batch CLI for linear-optical invariants, feasibility verdicts,
// heralded bounds, state evolution and invariant-subspace decompositions

#include "qlo/io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitImpossible = 2;

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return json::parse(in);  // parse errors carry the byte position
}

void write_output(const json& report, const std::string& out_path, const std::string& format) {
    std::ostringstream text;
    if (format == "json") {
        text << report.dump(2) << '\n';
    } else {
        text << report.dump(2) << '\n';  // text format carries the same content, pretty-printed
    }
    if (out_path.empty()) {
        std::cout << text.str();
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot write " + out_path);
        out << text.str();
    }
}

struct InvariantSelection {
    bool tangent = false;
    bool trace = false;
    bool covariance = false;
    std::vector<int> higher;
    std::vector<int> nested;
    std::vector<std::pair<qlo::EquivariantKind, int>> subspaces;
};

InvariantSelection parse_set(const std::string& csv) {
    InvariantSelection selection;
    std::stringstream stream(csv);
    std::string item;
    while (std::getline(stream, item, ',')) {
        if (item.empty()) continue;
        if (item == "tangent") {
            selection.tangent = true;
        } else if (item == "trace") {
            selection.trace = true;
        } else if (item == "covariance") {
            selection.covariance = true;
        } else if (item.rfind("higher:", 0) == 0) {
            selection.higher.push_back(std::stoi(item.substr(7)));
        } else if (item.rfind("nested:", 0) == 0) {
            selection.nested.push_back(std::stoi(item.substr(7)));
        } else if (item.rfind("subspaces:", 0) == 0) {
            const std::string rest = item.substr(10);
            const auto colon = rest.find(':');
            if (colon == std::string::npos)
                throw std::invalid_argument("bad subspaces selector: " + item);
            const std::string kind = rest.substr(0, colon);
            const int order = std::stoi(rest.substr(colon + 1));
            if (kind == "P")
                selection.subspaces.emplace_back(qlo::EquivariantKind::Projection, order);
            else if (kind == "N")
                selection.subspaces.emplace_back(qlo::EquivariantKind::NestedCommutator, order);
            else
                throw std::invalid_argument("unknown subspace operator kind: " + kind);
        } else {
            throw std::invalid_argument("unknown invariant name: " + item);
        }
    }
    return selection;
}

json spectrum_json(const qlo::RealVector& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
    return out;
}

json run_invariants(const qlo::PhotonicState& state, const InvariantSelection& selection,
                    std::size_t max_terms) {
    std::vector<std::string> warnings;
    if (state.truncation_deficit > 1e-8)
        warnings.push_back("truncation deficit " + std::to_string(state.truncation_deficit) +
                           "; invariant values carry worst-case truncation error");
    json reports = json::array();
    if (selection.tangent) {
        const qlo::TangentData data = qlo::h_rho(state);
        reports.push_back(qlo::io::invariant_report(
            "tangent", state, json{{"spectrum", spectrum_json(data.spectrum)}}, warnings));
    }
    if (selection.trace) {
        const qlo::TangentData data = qlo::h_rho(state);
        reports.push_back(qlo::io::invariant_report(
            "trace", state, json{{"values", data.trace_invariants}}, warnings));
    }
    if (selection.covariance) {
        const qlo::RealMatrix m = qlo::covariance(state);
        Eigen::SelfAdjointEigenSolver<qlo::RealMatrix> solver(m, Eigen::EigenvaluesOnly);
        reports.push_back(qlo::io::invariant_report(
            "covariance", state, json{{"spectrum", spectrum_json(solver.eigenvalues())}},
            warnings));
    }
    for (int k : selection.higher) {
        const qlo::Matrix preimage = qlo::higher_preimage(state, k, max_terms);
        reports.push_back(qlo::io::invariant_report(
            "higher:" + std::to_string(k), state,
            json{{"spectrum", spectrum_json(qlo::hermitian_spectrum(preimage, 1e-8))}}, warnings));
    }
    for (int k : selection.nested) {
        json per_sector = json::object();
        for (const auto& [n, block] : state.blocks) {
            const qlo::HermitianOperator nk = qlo::nested_commutator(block, k, max_terms);
            per_sector[std::to_string(n)] = spectrum_json(qlo::hermitian_spectrum(nk, 1e-8));
        }
        reports.push_back(qlo::io::invariant_report("nested:" + std::to_string(k), state,
                                                    json{{"spectrum", per_sector}}, warnings));
    }
    for (const auto& [kind, order] : selection.subspaces) {
        json per_sector = json::object();
        for (const auto& [n, block] : state.blocks) {
            const qlo::SubspaceDecomposition decomposition =
                qlo::equivariant_eigenspaces(state.modes, n, kind, order, 60, max_terms);
            json clusters = json::array();
            for (const auto& [lambda, spectrum] : qlo::subspace_spectra(block, decomposition))
                clusters.push_back(
                    json{{"eigenvalue", lambda}, {"spectrum", spectrum_json(spectrum)}});
            per_sector[std::to_string(n)] = std::move(clusters);
        }
        const char* tag = kind == qlo::EquivariantKind::Projection ? "P" : "N";
        reports.push_back(qlo::io::invariant_report(
            std::string("subspaces:") + tag + ":" + std::to_string(order), state,
            json{{"values", per_sector}}, warnings));
    }
    return reports;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lie-algebraic invariants of photonic states under passive linear optics"};
    app.require_subcommand(1);

    std::string state_path, a_path, b_path, input_path, target_path, unitary_path;
    std::string set_csv = "tangent,trace,covariance";
    std::string out_path, format = "json";
    double tolerance = 1e-8;
    std::size_t max_terms = qlo::kDefaultMaxTerms;
    std::uint64_t seed = 0;
    int modes = 2, photons = 2, order = 2;
    std::string op_kind = "N";
    bool include_bases = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--tol", tolerance, "comparison tolerance");
        cmd->add_option("--max-terms", max_terms, "tuple-sum term budget");
        cmd->add_option("--seed", seed, "seed for haar unitaries without one");
        cmd->add_option("--out", out_path, "output path (default stdout)");
        cmd->add_option("--format", format, "json|text")
            ->check(CLI::IsMember({"json", "text"}));
    };

    CLI::App* invariants_cmd = app.add_subcommand("invariants", "compute invariants of a state");
    invariants_cmd->add_option("--state", state_path, "state spec JSON")->required();
    invariants_cmd->add_option("--set", set_csv, "comma-separated invariant names");
    add_common(invariants_cmd);

    CLI::App* compare_cmd = app.add_subcommand("compare", "feasibility verdict for a -> b");
    compare_cmd->add_option("--a", a_path, "first state spec")->required();
    compare_cmd->add_option("--b", b_path, "second state spec")->required();
    std::string compare_set;
    compare_cmd->add_option("--set", compare_set, "invariant families (default full set)");
    add_common(compare_cmd);

    CLI::App* bound_cmd = app.add_subcommand("bound", "heralded success-probability bound");
    bound_cmd->add_option("--input", input_path, "input state spec")->required();
    bound_cmd->add_option("--target", target_path, "target state spec")->required();
    add_common(bound_cmd);

    CLI::App* evolve_cmd = app.add_subcommand("evolve", "evolve a state through a unitary");
    evolve_cmd->add_option("--state", state_path, "state spec JSON")->required();
    evolve_cmd->add_option("--unitary", unitary_path, "unitary spec JSON")->required();
    add_common(evolve_cmd);

    CLI::App* decompose_cmd =
        app.add_subcommand("decompose", "invariant-subspace decomposition of a sector");
    decompose_cmd->add_option("--m", modes, "mode count")->required();
    decompose_cmd->add_option("--n", photons, "photon number")->required();
    decompose_cmd->add_option("--kind", op_kind, "operator kind: P or N")
        ->check(CLI::IsMember({"P", "N"}));
    decompose_cmd->add_option("--k", order, "operator order");
    decompose_cmd->add_flag("--bases", include_bases, "include cluster bases in the output");
    add_common(decompose_cmd);

    CLI11_PARSE(app, argc, argv);

    try {
        if (tolerance <= 0.0) throw std::invalid_argument("tolerance must be positive");

        if (invariants_cmd->parsed()) {
            const InvariantSelection selection = parse_set(set_csv);  // reject names up front
            const qlo::PhotonicState state = qlo::io::parse_state(load_json(state_path));
            write_output(run_invariants(state, selection, max_terms), out_path, format);
            return kExitOk;
        }

        if (compare_cmd->parsed()) {
            qlo::CompareConfig config;
            config.tolerance = tolerance;
            config.max_terms = max_terms;
            if (!compare_set.empty()) {
                const InvariantSelection selection = parse_set(compare_set);
                config.tangent = selection.tangent;
                config.trace = selection.trace;
                config.covariance = selection.covariance;
                config.orthogonal = selection.tangent;
                config.higher_orders = selection.higher;
                config.nested_orders = selection.nested;
            }
            const qlo::PhotonicState a = qlo::io::parse_state(load_json(a_path));
            const qlo::PhotonicState b = qlo::io::parse_state(load_json(b_path));
            const qlo::FeasibilityReport report = qlo::compare(a, b, config);
            write_output(qlo::io::to_json(report), out_path, format);
            return report.verdict == qlo::Verdict::Impossible ? kExitImpossible : kExitOk;
        }

        if (bound_cmd->parsed()) {
            const qlo::PhotonicState input = qlo::io::parse_state(load_json(input_path));
            const qlo::PhotonicState target = qlo::io::parse_state(load_json(target_path));
            write_output(qlo::io::to_json(qlo::heralded_bound(input, target)), out_path, format);
            return kExitOk;
        }

        if (evolve_cmd->parsed()) {
            const qlo::PhotonicState state = qlo::io::parse_state(load_json(state_path));
            json unitary_spec = load_json(unitary_path);
            if (unitary_spec.value("kind", "") == "haar" && !unitary_spec.contains("seed"))
                unitary_spec["seed"] = seed;
            const qlo::ScatteringMatrix s = qlo::io::parse_unitary(unitary_spec);
            write_output(qlo::io::state_to_json(qlo::evolve(state, s)), out_path, format);
            return kExitOk;
        }

        if (decompose_cmd->parsed()) {
            const qlo::EquivariantKind kind = op_kind == "P"
                                                  ? qlo::EquivariantKind::Projection
                                                  : qlo::EquivariantKind::NestedCommutator;
            const qlo::SubspaceDecomposition decomposition =
                qlo::equivariant_eigenspaces(modes, photons, kind, order, 60, max_terms);
            write_output(qlo::io::to_json(decomposition, include_bases), out_path, format);
            return kExitOk;
        }
    } catch (const qlo::ComplexityError& error) {
        std::cerr << "error: " << error.what() << '\n';
        return kExitError;
    } catch (const std::exception& error) {
        std::cerr << "error: " << error.what() << '\n';
        return kExitError;
    }
    return kExitError;
}
