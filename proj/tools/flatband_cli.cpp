#include <CLI11.hpp>

#include "flatband/eigenvectors.hpp"
#include "flatband/generators.hpp"
#include "flatband/perturbation.hpp"
#include "flatband/screen.hpp"
#include "flatband/singlecell.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

using namespace flatband;

namespace {

FiniteGraph parse_finite_graph(const std::string& spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos) throw error("finite graph spec: path:N | cycle:N | complete:N | edges:N:a-b,...");
    std::string kind = spec.substr(0, colon);
    std::string rest = spec.substr(colon + 1);
    if (kind == "path") return FiniteGraph::path(std::stoi(rest));
    if (kind == "cycle") return FiniteGraph::cycle(std::stoi(rest));
    if (kind == "complete") return FiniteGraph::complete(std::stoi(rest));
    if (kind == "edges") {
        auto colon2 = rest.find(':');
        if (colon2 == std::string::npos) throw error("edges spec: edges:N:a-b,c-d,...");
        int n = std::stoi(rest.substr(0, colon2));
        FiniteGraph g(n);
        std::stringstream ss(rest.substr(colon2 + 1));
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            auto dash = tok.find('-');
            if (dash == std::string::npos) throw error("edge token must look like a-b");
            g.add_edge(std::stoi(tok.substr(0, dash)), std::stoi(tok.substr(dash + 1)));
        }
        return g;
    }
    throw error("unknown finite graph kind: " + kind);
}

std::vector<Rational> parse_potential(const std::string& text, int nu) {
    std::vector<Rational> q;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) q.push_back(rat_from_string(tok));
    if (static_cast<int>(q.size()) != nu) throw error("potential needs one rational per vertex");
    return q;
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path);
    if (!out) throw error("cannot write " + path);
    out << content;
}

int run(int argc, char** argv) {
    CLI::App app{"Exact flat-band toolkit for Z^d-periodic graphs"};
    app.require_subcommand(1);

    std::string file, out_path, format = "csv", mode = "equitable", qtext, gf_spec, base_path, lattice_path;
    int band_index = 0, grid = 32, nu = 4;
    bool force = false, witnesses = false, table = false, locus = false;

    auto* validate_cmd = app.add_subcommand("validate", "check a graph file against the model rules");
    validate_cmd->add_option("file", file)->required();

    auto* detect_cmd = app.add_subcommand("detect", "exact flat-band detection");
    detect_cmd->add_option("file", file)->required();
    detect_cmd->add_flag("--force-disconnected", force, "analyze a disconnected quotient anyway");

    auto* eigvec_cmd = app.add_subcommand("eigvec", "compactly supported eigenvector for one flat band");
    eigvec_cmd->add_option("file", file)->required();
    eigvec_cmd->add_option("--band", band_index, "flat band index, ascending")->required();

    auto* bands_cmd = app.add_subcommand("bands", "numeric band structure over a Brillouin-zone grid");
    bands_cmd->add_option("file", file)->required();
    bands_cmd->add_option("--grid", grid, "grid points per axis");
    bands_cmd->add_option("--out", out_path, "output path (default stdout)");
    bands_cmd->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    bool eigentable = false;
    auto* enum_cmd = app.add_subcommand("enumerate", "single-cell flat bands F_nu^s");
    enum_cmd->add_option("--nu", nu, "cell size")->required();
    enum_cmd->add_flag("--witnesses", witnesses, "include witness graphs in the JSON");
    enum_cmd->add_flag("--table", table, "text table instead of JSON");
    enum_cmd->add_flag("--eigentable", eigentable, "eigen-table of the connected graphs on nu vertices");

    auto* sym_cmd = app.add_subcommand("symmetry", "local symmetries and their flat bands");
    sym_cmd->add_option("file", file)->required();
    sym_cmd->add_option("--mode", mode, "strict or equitable")->check(CLI::IsMember({"strict", "equitable"}));

    auto* gen_cmd = app.add_subcommand("generate", "flat-band and no-flat-band constructions");
    std::string gen_kind;
    gen_cmd->add_option("kind", gen_kind, "cartesian | cone | tensor")->required();
    gen_cmd->add_option("--gf", gf_spec, "finite graph, e.g. path:3 or edges:4:0-1,1-2")->required();
    gen_cmd->add_option("--base", base_path, "base graph file (cartesian; default: zero-band chain)");
    gen_cmd->add_option("--lattice", lattice_path, "nu=1 lattice file (tensor/cartesian products)");
    gen_cmd->add_option("--out", out_path, "output graph file")->required();

    std::string locus_format = "text";
    auto* perturb_cmd = app.add_subcommand("perturb", "potential analysis");
    perturb_cmd->add_option("file", file)->required();
    perturb_cmd->add_option("--q", qtext, "comma-separated rational potential");
    perturb_cmd->add_flag("--locus", locus, "exact nu=2 potential locus");
    perturb_cmd->add_option("--format", locus_format, "locus output: text or json")
        ->check(CLI::IsMember({"text", "json"}));

    auto* screen_cmd = app.add_subcommand("screen2", "fast nu=2 no-flat-band screen");
    screen_cmd->add_option("file", file)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    if (validate_cmd->parsed()) {
        PeriodicGraph g = load_graph(file);
        ValidationReport rep = validate(g);
        for (const auto& it : rep.items)
            std::cout << (it.pass ? "pass  " : "FAIL  ") << it.rule << "\n";
        if (rep.ok()) {
            std::cout << "connected: " << (is_connected(g) ? "yes" : "no") << "\n";
            return 0;
        }
        return 1;
    }
    if (detect_cmd->parsed()) {
        std::cout << report_to_json(detect_flat_bands(load_graph(file), force));
        return 0;
    }
    if (eigvec_cmd->parsed()) {
        PeriodicGraph g = load_graph(file);
        FloquetSymbol s = build_symbol(g);
        CharPoly cp = char_poly(s);
        auto rep = detect_flat_bands(g);
        if (band_index < 0 || band_index >= static_cast<int>(rep.bands.size()))
            throw error("band index out of range: the graph has " + std::to_string(rep.bands.size()) +
                        " flat band(s)");
        const auto& b = rep.bands[static_cast<size_t>(band_index)];
        SymbolVector f = synthesize_symbol_eigenvector(s, cp, b.value, b.multiplicity);
        CompactEigenvector v = unfold(f, b.value, g.nu);
        if (!verify_eigenvector(g, v)) throw error("internal: synthesized eigenvector failed verification");
        std::cout << eigenvector_to_json(v);
        return 0;
    }
    if (bands_cmd->parsed()) {
        BandSample bs = sample_bands(load_graph(file), grid);
        write_output(out_path, format == "csv" ? band_sample_csv(bs) : band_sample_json(bs));
        return 0;
    }
    if (enum_cmd->parsed()) {
        if (eigentable) {
            std::cout << eigen_table(nu);
            return 0;
        }
        SingleCellSet s = enumerate_single_cell(nu, witnesses);
        if (!witnesses) s.new_witnesses.clear();
        std::cout << (table ? single_cell_table(s) : single_cell_to_json(s));
        return 0;
    }
    if (sym_cmd->parsed()) {
        PeriodicGraph g = load_graph(file);
        SymmetryMode m = mode == "strict" ? SymmetryMode::Strict : SymmetryMode::Equitable;
        auto syms = find_local_symmetries(g, m);
        if (syms.empty()) {
            std::cout << "no nontrivial local symmetry\n";
            return 0;
        }
        for (const auto& sym : syms) {
            std::cout << "symmetry " << sym.cycle_notation() << (sym.strict ? " [automorphism]" : " [equitable]")
                      << "  guaranteed bands >= " << (g.nu - sym.cycle_count()) << "\n";
        }
        for (const auto& [v, vec] : symmetry_flat_bands(g, syms.front())) {
            std::cout << "flat band " << v.to_string() << " with single-cell eigenvector (";
            for (int i = 0; i < g.nu; ++i)
                std::cout << (i ? ", " : "") << vec.at(i, zero_offset(g.dimension)).to_string();
            std::cout << ")\n";
        }
        return 0;
    }
    if (gen_cmd->parsed()) {
        FiniteGraph gf = parse_finite_graph(gf_spec);
        if (gen_kind == "cone") {
            auto [g, vecs] = cone_periodize(gf);
            save_graph(g, out_path);
            std::cout << report_to_json(detect_flat_bands(g));
        } else if (gen_kind == "cartesian") {
            if (base_path.empty() && lattice_path.empty()) {
                auto [g, vecs] = cartesian_flatband_base_zero(gf);
                save_graph(g, out_path);
                std::cout << report_to_json(detect_flat_bands(g));
            } else if (!lattice_path.empty()) {
                PeriodicGraph g = no_flatband_product(load_graph(lattice_path), gf, ProductKind::Cartesian);
                save_graph(g, out_path);
                std::cout << report_to_json(detect_flat_bands(g));
            } else {
                PeriodicGraph base = load_graph(base_path);
                FloquetSymbol s = build_symbol(base);
                CharPoly cp = char_poly(s);
                auto rep = detect_flat_bands(base);
                if (rep.empty()) throw error("cartesian generator needs a base graph with a flat band");
                const auto& b = rep.bands[0];
                SymbolVector f = synthesize_symbol_eigenvector(s, cp, b.value, b.multiplicity);
                CompactEigenvector v = unfold(f, b.value, base.nu);
                auto [g, vecs] = cartesian_flatband(base, v, gf);
                save_graph(g, out_path);
                std::cout << report_to_json(detect_flat_bands(g));
            }
        } else if (gen_kind == "tensor") {
            PeriodicGraph lattice = lattice_path.empty()
                                        ? PeriodicGraph(1, 1, {EdgeSpec{0, 0, {1}, GaussianRational(1)}})
                                        : load_graph(lattice_path);
            PeriodicGraph g = no_flatband_product(lattice, gf, ProductKind::Tensor);
            save_graph(g, out_path);
            std::cout << report_to_json(detect_flat_bands(g));
        } else {
            throw error("unknown generator kind: " + gen_kind);
        }
        return 0;
    }
    if (perturb_cmd->parsed()) {
        PeriodicGraph g = load_graph(file);
        if (!qtext.empty()) {
            std::cout << report_to_json(detect_with_potential(g, parse_potential(qtext, g.nu)));
            return 0;
        }
        if (locus) {
            Nu2Locus l = nu2_locus(g);
            std::cout << (locus_format == "json" ? nu2_locus_to_json(l) : nu2_locus_to_string(l));
            return 0;
        }
        CoefficientSystem cs = coefficient_system(g);
        if (auto cert = empty_locus_certificate(cs))
            std::cout << "no potential creates a flat band: constant coefficient at z^" << offset_to_string(*cert)
                      << "\n";
        std::cout << coefficient_system_to_json(cs);
        return 0;
    }
    if (screen_cmd->parsed()) {
        std::cout << screen_result_to_string(screen_nu2(load_graph(file)));
        return 0;
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const flatband::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
