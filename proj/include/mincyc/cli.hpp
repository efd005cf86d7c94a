#ifndef MINCYC_CLI_HPP
#define MINCYC_CLI_HPP

// Command-line driver. Exit codes: 0 success, 1 domain error, 2 usage error.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mincyc/complex.hpp"
#include "mincyc/covering.hpp"
#include "mincyc/error.hpp"
#include "mincyc/generators.hpp"
#include "mincyc/homology.hpp"
#include "mincyc/index_function.hpp"
#include "mincyc/io.hpp"
#include "mincyc/mincycle.hpp"
#include "mincyc/oracle.hpp"

namespace mincyc::cli {

struct LoadedMesh {
    std::string name;
    SimplicialComplex complex;
    io::LabelMap labels;
    std::optional<std::vector<Chain>> hn1_basis;
    std::optional<std::vector<Chain>> h1_basis;
};

/// `gen:NAME[:p,q,...]` or an smesh path. Sibling `.basis` and `.h1` files
/// are picked up when present.
inline LoadedMesh load_mesh(const std::string& spec, bool allow_open = false)
{
    LoadedMesh m;
    if (spec.rfind("gen:", 0) == 0) {
        std::string rest = spec.substr(4);
        std::vector<int> params;
        if (auto colon = rest.find(':'); colon != std::string::npos) {
            std::stringstream ss(rest.substr(colon + 1));
            for (std::string tok; std::getline(ss, tok, ',');) {
                try {
                    std::size_t used = 0;
                    params.push_back(std::stoi(tok, &used));
                    if (used != tok.size())
                        throw std::invalid_argument(tok);
                } catch (const std::exception&) {
                    throw Error(ErrorCode::BadParams, "bad generator parameter '" + tok + "'");
                }
            }
            rest = rest.substr(0, colon);
        }
        auto bundle = gen::generate(rest, params);
        m.name = bundle.name;
        m.labels = io::LabelMap::identity(bundle.complex.vertex_count());
        m.complex = std::move(bundle.complex);
        m.hn1_basis = std::move(bundle.hn1_basis);
        m.h1_basis = std::move(bundle.h1_basis);
        return m;
    }
    auto parsed = io::parse_mesh(io::read_file(spec), {allow_open});
    m.name = std::filesystem::path(spec).filename().string();
    m.complex = std::move(parsed.complex);
    m.labels = std::move(parsed.labels);
    const int n = m.complex.dimension();
    auto sibling = [&](const char* ext) { return std::filesystem::path(spec).replace_extension(ext).string(); };
    if (n >= 1 && std::filesystem::exists(sibling(".basis")))
        m.hn1_basis = io::parse_basis(io::read_file(sibling(".basis")), m.complex, m.labels, n - 1);
    if (std::filesystem::exists(sibling(".h1")))
        m.h1_basis = io::parse_basis(io::read_file(sibling(".h1")), m.complex, m.labels, 1);
    return m;
}

/// Supplied (n-1)-basis, else the mesh's own, else one from matrix reduction.
inline HomologyBasis resolve_basis(const LoadedMesh& m, const std::string& basis_path)
{
    if (!basis_path.empty())
        return hn1_basis(m.complex,
                         io::parse_basis(io::read_file(basis_path), m.complex, m.labels, m.complex.dimension() - 1));
    return hn1_basis(m.complex, m.hn1_basis);
}

inline std::vector<Chain> resolve_h1(const LoadedMesh& m)
{
    if (m.h1_basis)
        return *m.h1_basis;
    return homology_basis(m.complex, 1).cycles;
}

/// A cycle file, or `h1:i,j,...` for the sum of the listed H_1 basis cycles.
inline Chain resolve_cycle(const LoadedMesh& m, const std::string& spec)
{
    if (spec.rfind("h1:", 0) != 0)
        return io::parse_chain(io::read_file(spec), m.complex, m.labels, 1);
    const auto h1 = resolve_h1(m);
    Chain x = m.complex.zero_chain(1);
    std::stringstream ss(spec.substr(3));
    for (std::string tok; std::getline(ss, tok, ',');) {
        std::size_t k = 0;
        try {
            std::size_t used = 0;
            k = std::stoul(tok, &used);
            if (used != tok.size())
                throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw Error(ErrorCode::BadParams, "bad H_1 basis index '" + tok + "'");
        }
        if (k >= h1.size())
            throw Error(ErrorCode::BadParams, "H_1 basis has " + std::to_string(h1.size()) + " cycles, index " + tok);
        x += h1[k];
    }
    return x;
}

/// Uniform weights in [0, 1) from a seeded 64-bit Mersenne twister, 53 bits each.
inline WeightFunction random_weights(std::size_t edges, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::vector<double> w(edges);
    for (auto& x : w)
        x = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return WeightFunction(std::move(w));
}

inline bool weights_match(double a, double b)
{
    if (a == b)
        return true;
    return std::fabs(a - b) <= 1e-12 * std::max(std::fabs(a), std::fabs(b));
}

inline io::Json verify_report(const LoadedMesh& m, const WeightFunction& L, const std::optional<Chain>& cycle,
                              std::uint64_t budget, std::size_t jobs)
{
    const auto basis = hn1_basis(m.complex, m.hn1_basis);
    const auto table = build_index_function(m.complex, basis, ToggleRule::PerPass, jobs);
    const auto h1 = resolve_h1(m);
    Chain x = m.complex.zero_chain(1);
    if (cycle)
        x = *cycle;
    else
        for (const auto& h : h1)
            x += h;
    const auto algo = min_cycle_in_class(table, m.complex, L, basis, x, jobs);

    io::Json j;
    j["mesh"] = m.name;
    j["r"] = table.rank();
    try {
        const auto oracle = oracle::brute_min_in_class(m.complex, L, x, budget);
        j["oracle_min"] = io::number_json(oracle.weight);
        j["algo_min"] = io::number_json(algo.weight);
        j["match"] = weights_match(oracle.weight, algo.weight);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::BudgetExceeded)
            throw;
        j["oracle_min"] = nullptr;
        j["algo_min"] = io::number_json(algo.weight);
        j["match"] = nullptr;
    }
    if (m.complex.dimension() == 2)
        j["form_invariants_match"] = oracle::cup_form_invariants(m.complex) == oracle::index_form_invariants(table, h1);
    else
        j["form_invariants_match"] = nullptr;
    return j;
}

inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Minimum-weight homologous 1-cycles over Z2 on closed triangulated manifolds", "mincyc"};
    app.require_subcommand(1);

    std::string mesh_spec, basis_path, cycle_spec, weights_path, format = "json", dump_path, cover_path, out_prefix;
    std::vector<std::string> verify_meshes;
    bool allow_open = false, random = false;
    int homology_k = -1;
    std::size_t jobs = 1;
    std::uint64_t budget = std::uint64_t{1} << 32, seed = 1, max_cells = 1'000'000;
    std::string gen_name;
    std::vector<int> gen_params;

    auto* check = app.add_subcommand("check", "Closed pseudomanifold check");
    check->add_option("--mesh", mesh_spec, "smesh file or gen:NAME[:p,q]")->required();
    check->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));

    auto* homology = app.add_subcommand("homology", "Z2 Betti numbers");
    homology->add_option("--mesh", mesh_spec)->required();
    homology->add_option("-k", homology_k, "single dimension");
    homology->add_flag("--allow-open", allow_open, "skip the closedness check");

    auto* index = app.add_subcommand("index", "Build the index function");
    index->add_option("--mesh", mesh_spec)->required();
    index->add_option("--basis", basis_path, "(n-1)-cycle basis file");
    index->add_option("--dump", dump_path, "write the table as JSON ('-' for stdout)");
    index->add_option("--cover", cover_path, "write the materialized cover as smesh");
    index->add_option("--max-cells", max_cells, "materialization budget");
    index->add_option("--jobs", jobs)->check(CLI::PositiveNumber);

    auto* minimize = app.add_subcommand("minimize", "Minimum-weight cycle homologous to a given cycle");
    minimize->add_option("--mesh", mesh_spec)->required();
    minimize->add_option("--cycle", cycle_spec, "1-chain file or h1:i,j,...")->required();
    minimize->add_option("--weights", weights_path, "weight file (u v weight)");
    minimize->add_option("--basis", basis_path, "(n-1)-cycle basis file");
    minimize->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));
    minimize->add_option("--jobs", jobs)->check(CLI::PositiveNumber);

    auto* verify = app.add_subcommand("verify", "Compare against the brute-force oracles");
    verify->add_option("--mesh", verify_meshes)->required();
    verify->add_option("--cycle", cycle_spec, "1-chain file or h1:i,j,... (default: sum of the H_1 basis)");
    verify->add_option("--weights", weights_path);
    verify->add_flag("--random-weights", random, "uniform random weights from --seed");
    verify->add_option("--seed", seed);
    verify->add_option("--budget", budget, "largest coset to enumerate");
    verify->add_option("--jobs", jobs)->check(CLI::PositiveNumber);

    auto* generate = app.add_subcommand("generate", "Write a bundled mesh");
    generate->add_option("name", gen_name)->required()->check(CLI::IsMember(gen::family_names()));
    generate->add_option("params", gen_params, "side lengths");
    generate->add_option("--out", out_prefix, "write PREFIX.smesh, PREFIX.basis, PREFIX.h1");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: usage: " << e.what() << "\n";
        return 2;
    }

    try {
        if (*check) {
            const auto m = load_mesh(mesh_spec, true);
            const auto report = verify_closed_pseudomanifold(m.complex);
            if (format == "text") {
                out << (report.ok ? "ok" : "not a closed pseudomanifold") << "\n";
                for (const auto& v : report.violations)
                    out << v.describe() << "\n";
            } else {
                io::Json j;
                j["mesh"] = m.name;
                j["ok"] = report.ok;
                io::Json vs = io::Json::array();
                for (const auto& v : report.violations)
                    vs.push_back(v.describe());
                j["violations"] = std::move(vs);
                out << j.dump(2) << "\n";
            }
            return report.ok ? 0 : 1;
        }
        if (*homology) {
            const auto m = load_mesh(mesh_spec, allow_open);
            if (homology_k >= 0) {
                out << betti_z2(m.complex, homology_k) << "\n";
            } else {
                const auto b = betti_numbers(m.complex);
                for (std::size_t k = 0; k < b.size(); ++k)
                    out << (k ? " " : "") << b[k];
                out << "\n";
            }
            return 0;
        }
        if (*index) {
            const auto m = load_mesh(mesh_spec);
            const auto basis = resolve_basis(m, basis_path);
            const auto table = build_index_function(m.complex, basis, ToggleRule::PerPass, jobs);
            std::size_t nonzero = 0;
            for (SimplexIndex e = 0; e < table.edge_count(); ++e)
                nonzero += table[e].any() ? 1 : 0;
            if (dump_path != "-") {
                out << "r " << table.rank() << "\nedges " << table.edge_count() << "\nnonzero " << nonzero << "\n";
                for (std::size_t k = 0; k < table.rank(); ++k) {
                    const auto& a = table.audit(k);
                    out << "cycle " << k << ": vertices " << a.vertices.size() << ", indexed " << a.indexed_edges.size()
                        << ", crossings " << a.faces_crossed << "\n";
                }
            }
            if (!dump_path.empty()) {
                const std::string json = io::index_table_json(m.complex, m.labels, table).dump(2) + "\n";
                if (dump_path == "-")
                    out << json;
                else
                    io::write_file(dump_path, json);
            }
            if (!cover_path.empty())
                io::write_file(cover_path, io::serialize_cover(materialize_cover(table, m.complex, max_cells), m.labels));
            return 0;
        }
        if (*minimize) {
            const auto m = load_mesh(mesh_spec);
            const auto basis = resolve_basis(m, basis_path);
            const auto table = build_index_function(m.complex, basis, ToggleRule::PerPass, jobs);
            const Chain x = resolve_cycle(m, cycle_spec);
            const WeightFunction L = weights_path.empty()
                                         ? WeightFunction::unit(m.complex.edge_count())
                                         : io::parse_weights(io::read_file(weights_path), m.complex, m.labels);
            const auto result = min_cycle_in_class(table, m.complex, L, basis, x, jobs);
            if (format == "text")
                out << io::min_cycle_text(m.complex, m.labels, result);
            else
                out << io::min_cycle_json(m.complex, m.labels, result).dump(2) << "\n";
            return 0;
        }
        if (*verify) {
            io::Json reports = io::Json::array();
            for (const auto& spec : verify_meshes) {
                const auto m = load_mesh(spec);
                const WeightFunction L =
                    !weights_path.empty() ? io::parse_weights(io::read_file(weights_path), m.complex, m.labels)
                    : random             ? random_weights(m.complex.edge_count(), seed)
                                         : WeightFunction::unit(m.complex.edge_count());
                std::optional<Chain> x;
                if (!cycle_spec.empty())
                    x = resolve_cycle(m, cycle_spec);
                reports.push_back(verify_report(m, L, x, budget, jobs));
            }
            out << reports.dump(2) << "\n";
            bool ok = true;
            for (const auto& r : reports)
                ok = ok && r["match"] != false && r["form_invariants_match"] != false;
            return ok ? 0 : 1;
        }
        if (*generate) {
            const auto b = gen::generate(gen_name, gen_params);
            if (out_prefix.empty()) {
                out << io::serialize_mesh(b.complex);
                return 0;
            }
            io::write_file(out_prefix + ".smesh", "# " + b.name + "\n" + io::serialize_mesh(b.complex));
            io::write_file(out_prefix + ".basis", io::serialize_basis(b.complex, b.hn1_basis));
            io::write_file(out_prefix + ".h1", io::serialize_basis(b.complex, b.h1_basis));
            return 0;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: Internal: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

} // namespace mincyc::cli

#endif
