#include "fillvol/qi_transfer.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace fillvol;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerification = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitInput = 3;

int worker_cap() {
    const char* env = std::getenv("FILLVOL_THREADS");
    if (!env) return 1;
    int v = std::atoi(env);
    if (v < 1) throw DomainError("FILLVOL_THREADS must be a positive integer");
    return v;
}

Ring ring_by_name(const std::string& name) {
    if (name == "Z") return Ring::integers();
    if (name == "Q") return Ring::rationals();
    if (name.size() > 1 && name[0] == 'F') return Ring::prime_field(std::stol(name.substr(1)));
    if (name.size() > 1 && name[0] == 'Z' && name[1] == '/')
        return Ring::modular(std::stol(name.substr(2)));
    throw DomainError("unknown ring name: " + name + " (use Z, Q, Fp, or Z/m)");
}

Norm default_norm_for(const Ring& ring) {
    if (ring.kind() == RingKind::Integers || ring.kind() == RingKind::Rationals)
        return Norm::absolute();
    return Norm::discrete();
}

// builtin specs: cyclic:<k>:<nmax>[:<ring>], z2[:<ring>]
FreeComplex builtin_complex(const std::string& spec) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.empty()) throw DomainError("empty builtin spec");
    if (parts[0] == "cyclic") {
        if (parts.size() < 3) throw DomainError("builtin cyclic needs cyclic:<k>:<nmax>[:<ring>]");
        Ring ring = parts.size() > 3 ? ring_by_name(parts[3]) : Ring::prime_field(2);
        return builtin_cyclic_resolution(std::stoll(parts[1]), std::stoi(parts[2]), ring,
                                         default_norm_for(ring));
    }
    if (parts[0] == "z2") {
        Ring ring = parts.size() > 1 ? ring_by_name(parts[1]) : Ring::integers();
        return builtin_z2_presentation_complex(ring, default_norm_for(ring));
    }
    throw DomainError("unknown builtin: " + parts[0] + " (use cyclic or z2)");
}

FreeComplex resolve_complex(const std::string& path, const std::string& builtin) {
    if (!builtin.empty()) return builtin_complex(builtin);
    if (path.empty()) throw DomainError("give either --complex or --builtin");
    return load_complex(path);
}

Chain parse_cycle(const FreeComplex& cx, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open cycle file: " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw SchemaError(std::string("invalid cycle JSON: ") + e.what());
    }
    int degree = j.at("degree").get<int>();
    std::vector<std::pair<Cell, RElem>> terms;
    for (const auto& t : j.at("terms")) {
        std::string name = t.at("basis").get<std::string>();
        int basis = -1;
        for (int b = 0; b < cx.rank(degree); ++b)
            if (cx.basis_name(degree, b) == name) basis = b;
        if (basis < 0) throw SchemaError("unknown basis name in cycle: " + name);
        GroupElem g = cx.group().word(t.at("word").get<std::vector<int>>());
        RElem coeff = t.at("coeff").is_string()
                          ? rat_from_string(t.at("coeff").get<std::string>())
                          : Rat(t.at("coeff").get<long long>());
        terms.emplace_back(Cell{basis, g}, coeff);
    }
    return cx.make_chain(degree, terms);
}

void write_output(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw IoError("cannot write output file: " + out_path);
    out << text;
}

std::string classify(GraphClass c) {
    switch (c) {
        case GraphClass::Edgeless: return "edgeless";
        case GraphClass::Cycle: return "cycle";
        case GraphClass::Complete: return "complete";
        default: return "other";
    }
}

int cmd_check(const std::string& path, const std::string& builtin, int k) {
    FreeComplex cx = resolve_complex(path, builtin);  // load verifies d^2 = 0
    validate_norm(cx.ring(), cx.norm());
    std::cout << "d^2 = 0: pass\n";
    std::cout << "norm axioms: pass\n";
    if (k < 0) k = std::min(2, cx.max_degree());
    if (k >= 1) {
        ExhaustionReport rep = exhaustion_conditions(cx, k);
        std::cout << "nonzero boundaries: " << (rep.nonzero_boundaries ? "pass" : "fail");
        for (const auto& cell : rep.zero_cells) std::cout << " " << cell;
        std::cout << "\n";
        std::cout << "Gr(Gamma B_1) connectivity: " << rep.connectivity << "\n";
        std::cout << "vertex coverage: " << (rep.vertices_covered ? "pass" : "fail") << "\n";
        if (!rep.nonzero_boundaries || !rep.vertices_covered || rep.connectivity == "fail")
            return kExitVerification;
        if (rep.connectivity == "unverified") return kExitInconclusive;
    }
    return kExitOk;
}

int cmd_graph(const std::string& path, const std::string& builtin, int degree, long long radius,
              const std::string& out_path) {
    FreeComplex cx = resolve_complex(path, builtin);
    std::vector<Cell> cells;
    if (cx.group().finite()) {
        for (const auto& g : cx.group().group_ball(cx.group().order()))
            for (int b = 0; b < cx.rank(degree); ++b) cells.push_back(Cell{b, g});
    } else {
        for (const auto& g : cx.group().group_ball(radius))
            for (int b = 0; b < cx.rank(degree); ++b) cells.push_back(Cell{b, g});
    }
    SupportGraph gr = build_gr(cx, degree, cells);
    json adjacency = json::object();
    std::vector<std::vector<int>> adj(gr.vertices.size());
    for (const auto& [a, b] : gr.edges) {
        adj[static_cast<size_t>(a)].push_back(b);
        adj[static_cast<size_t>(b)].push_back(a);
    }
    for (size_t i = 0; i < gr.vertices.size(); ++i) {
        std::vector<std::string> names;
        std::sort(adj[i].begin(), adj[i].end());
        for (int n : adj[i])
            names.push_back(cx.cell_to_string(degree, gr.vertices[static_cast<size_t>(n)]));
        adjacency[cx.cell_to_string(degree, gr.vertices[i])] = names;
    }
    GraphSummary s = summarize_graph(gr);
    json out = {{"degree", degree},
                {"vertices", s.vertex_count},
                {"edges", s.edge_count},
                {"class", classify(s.cls)},
                {"adjacency", adjacency}};
    write_output(out_path, out.dump(2) + "\n");
    return kExitOk;
}

int cmd_thicken(const std::string& path, const std::string& builtin, int degree,
                const std::string& cells_spec, int k, int steps, const std::string& out_path) {
    FreeComplex cx = resolve_complex(path, builtin);
    BasisCollection seed;
    std::stringstream ss(cells_spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        // each cell is <basis-name>@<word letters separated by .>, e.g. e1@1.1.-2
        auto at = item.find('@');
        std::string name = at == std::string::npos ? item : item.substr(0, at);
        std::vector<int> word;
        if (at != std::string::npos && at + 1 < item.size()) {
            std::stringstream ws(item.substr(at + 1));
            std::string letter;
            while (std::getline(ws, letter, '.')) word.push_back(std::stoi(letter));
        }
        int basis = -1;
        for (int b = 0; b < cx.rank(degree); ++b)
            if (cx.basis_name(degree, b) == name) basis = b;
        if (basis < 0) throw DomainError("unknown basis name: " + name);
        seed.insert(degree, Cell{basis, cx.group().word(word)});
    }
    if (seed.total_cells() == 0) throw DomainError("empty seed");
    std::ostringstream csv;
    csv << "step";
    for (int i = 0; i <= k; ++i) csv << ",cells_degree_" << i;
    csv << "\n";
    for (int j = 0; j <= steps; ++j) {
        BasisCollection N = thicken(cx, seed, k, j);
        csv << j;
        for (int i = 0; i <= k; ++i) csv << "," << N.at(i).size();
        csv << "\n";
    }
    write_output(out_path, csv.str());
    return kExitOk;
}

int cmd_fv(const std::string& path, const std::string& builtin, const std::string& cycle_path,
           const std::string& norm_sel, const std::string& solver, long long box, int j_cap) {
    FreeComplex cx = resolve_complex(path, builtin);
    Chain c = parse_cycle(cx, cycle_path);
    SolverBudget budget;
    if (box >= 0) budget.box_bound = box;
    if (j_cap >= 0) budget.j_cap = j_cap;
    FillingProblem p(cx, c, norm_sel == "weighted", budget);
    FillingResult r;
    if (solver == "oracle")
        r = fill_bruteforce(p);
    else if (solver == "thicken")
        r = fill_by_thickening(p);
    else if (solver == "exact")
        r = filling_volume(p);
    else
        throw DomainError("unknown solver: " + solver);
    json out = {{"found", r.found},
                {"norm", rat_to_string(r.achieved_norm)},
                {"status", r.status},
                {"exact_minimum", r.exact_minimum},
                {"search_space", r.search_space}};
    if (r.steps >= 0) out["thickening_steps"] = r.steps;
    if (r.found) out["filling"] = cx.chain_to_string(r.filling);
    std::cout << out.dump(2) << "\n";
    if (!r.found) return r.status == "not found in window" ? kExitVerification : kExitInconclusive;
    return kExitOk;
}

int cmd_fv_table(const std::string& path, const std::string& builtin, int degree, long long l_max,
                 const std::string& mode_sel, const std::string& norm_sel,
                 const std::string& out_path) {
    FreeComplex cx = resolve_complex(path, builtin);
    TableMode mode = mode_sel == "oracle" ? TableMode::Oracle : TableMode::Orbit;
    bool partial = false;
    std::ostringstream csv;
    csv << "l,value,status\n";
    try {
        FillingFunctionTable t =
            filling_function_table(cx, degree, l_max, mode, norm_sel == "weighted");
        for (const auto& e : t.entries)
            csv << e.l << "," << rat_to_string(e.value) << "," << e.status << "\n";
    } catch (const BudgetError& e) {
        partial = true;
        csv << "# partial: " << e.what() << "\n";
    }
    write_output(out_path, csv.str());
    return partial ? kExitInconclusive : kExitOk;
}

int cmd_repro_fig1(long long k) {
    FreeComplex cx = builtin_cyclic_resolution(k, 4, Ring::prime_field(2), Norm::discrete());
    std::vector<GroupElem> all = cx.group().group_ball(k);
    for (int degree : {0, 1, 2}) {
        std::vector<Cell> cells;
        for (const auto& g : all)
            for (int b = 0; b < cx.rank(degree); ++b) cells.push_back(Cell{b, g});
        GraphSummary s = summarize_graph(build_gr(cx, degree, cells));
        std::cout << "Gr(Gamma B_" << degree << "): vertices=" << s.vertex_count
                  << " edges=" << s.edge_count << " regular="
                  << (s.regular ? std::to_string(s.regularity) : std::string("no"))
                  << " class=" << classify(s.cls) << "\n";
    }
    return kExitOk;
}

int cmd_repro_z2(int nmax) {
    std::cout << "ring,n,cycle_norm,filling_volume,status\n";
    {
        FreeComplex cx = builtin_z2_presentation_complex(Ring::integers(), Norm::absolute());
        for (int n = 1; n <= nmax; ++n) {
            Chain c = commutator_cycle(cx, n);
            SolverBudget budget;
            budget.box_bound = static_cast<long long>(n) * n;
            FillingProblem p(cx, c, false, budget);
            FillingResult r = filling_volume(p);
            std::cout << "Z," << n << "," << rat_to_string(cx.chain_norm(c, false)) << ","
                      << rat_to_string(r.achieved_norm) << "," << r.status << "\n";
        }
    }
    {
        FreeComplex cx = builtin_z2_presentation_complex(Ring::rationals(), Norm::absolute());
        for (int n = 1; n <= nmax; ++n) {
            Chain c = commutator_cycle(cx, n, Rat(1, n));
            SolverBudget budget;
            budget.denominator_lcm = n;
            FillingProblem p(cx, c, false, budget);
            FillingResult r = filling_volume(p);
            std::cout << "Q," << n << "," << rat_to_string(cx.chain_norm(c, false)) << ","
                      << rat_to_string(r.achieved_norm) << "," << r.status << "\n";
        }
    }
    return kExitOk;
}

int cmd_repro_cyclic_fv(long long k, long p, long long l_max) {
    FreeComplex cx = builtin_cyclic_resolution(k, 3, Ring::prime_field(p), Norm::discrete());
    FillingFunctionTable t = filling_function_table(cx, 2, l_max, TableMode::Orbit);
    std::cout << "l,value,status\n";
    for (const auto& e : t.entries)
        std::cout << e.l << "," << rat_to_string(e.value) << "," << e.status << "\n";
    return kExitOk;
}

int cmd_qi_verify(const std::string& source_path, const std::string& source_builtin,
                  const std::string& target_path, const std::string& target_builtin,
                  const std::string& map_path, long long K, int n) {
    FreeComplex LG = resolve_complex(source_path, source_builtin);
    FreeComplex LH = resolve_complex(target_path, target_builtin);
    QuasiIsometryData qi;
    qi.source = &LG.group();
    qi.target = &LH.group();
    qi.K = K;
    if (map_path.empty()) {
        qi = identity_qi(LG.group(), LH.group(), K);
    } else {
        std::ifstream in(map_path);
        if (!in) throw IoError("cannot open map file: " + map_path);
        json j;
        in >> j;
        for (const auto& pair : j.at("f"))
            qi.f[LG.group().word(pair.at(0).get<std::vector<int>>())] =
                LH.group().word(pair.at(1).get<std::vector<int>>());
        for (const auto& pair : j.at("h"))
            qi.h[LH.group().word(pair.at(0).get<std::vector<int>>())] =
                LG.group().word(pair.at(1).get<std::vector<int>>());
    }
    PartialChainMap f_map = build_chain_map(qi, LG, LH, n);
    PartialChainMap h_map = build_chain_map(inverse_qi(qi), LH, LG, n);
    PartialHomotopy s = build_homotopy(qi, f_map, h_map, LG, n);
    json report;
    report["region_size"] = LG.group().order();
    json degrees = json::array();
    for (int i = 0; i <= n; ++i) {
        json d = {{"degree", i},
                  {"D_formula", rat_to_string(f_map.D[static_cast<size_t>(i)])},
                  {"D_observed", rat_to_string(f_map.observed[static_cast<size_t>(i)])},
                  {"D_weighted_formula", rat_to_string(f_map.D_weighted[static_cast<size_t>(i)])},
                  {"D_weighted_observed",
                   rat_to_string(f_map.observed_weighted[static_cast<size_t>(i)])},
                  {"cells_checked", f_map.images[static_cast<size_t>(i)].size()}};
        if (i <= n - 1) {
            d["E_formula"] = rat_to_string(s.E[static_cast<size_t>(i)]);
            d["E_observed"] = rat_to_string(s.observed[static_cast<size_t>(i)]);
        }
        degrees.push_back(d);
    }
    report["degrees"] = degrees;
    report["chain_map_identity"] = "pass";
    report["homotopy_identity"] = "pass";
    std::cout << report.dump(2) << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"filling volumes of group chain complexes"};
    app.require_subcommand(1);

    std::string complex_path, builtin, out_path, cycle_path;
    std::string norm_sel = "l1", solver = "exact", mode_sel = "orbit", cells_spec;
    int degree = 1, n = 2, k_trunc = 2, steps = 5, j_cap = -1;
    long long k = 7, l_max = 6, radius = 3, box = -1, K = 2;
    long p = 2;

    auto add_complex_opts = [&](CLI::App* cmd) {
        cmd->add_option("--complex", complex_path, "complex JSON file");
        cmd->add_option("--builtin", builtin, "builtin spec (cyclic:<k>:<nmax>[:<ring>] | z2[:<ring>])");
    };

    auto* check = app.add_subcommand("check", "verify d^2, norm axioms, exhaustion conditions");
    add_complex_opts(check);
    int check_k = -1;
    check->add_option("--k", check_k, "top degree for the exhaustion check");

    auto* graph = app.add_subcommand("graph", "emit a support graph as JSON");
    add_complex_opts(graph);
    graph->add_option("--degree", degree, "cell degree")->required();
    graph->add_option("--radius", radius, "group ball radius for infinite groups");
    graph->add_option("--out", out_path, "output file (default stdout)");

    auto* thicken_cmd = app.add_subcommand("thicken", "print thickening growth as CSV");
    add_complex_opts(thicken_cmd);
    thicken_cmd->add_option("--degree", degree, "seed cell degree")->required();
    thicken_cmd->add_option("--cells", cells_spec, "seed cells, name@word comma-separated")
        ->required();
    thicken_cmd->add_option("--k", k_trunc, "truncation degree")->required();
    thicken_cmd->add_option("--steps", steps, "number of steps");
    thicken_cmd->add_option("--out", out_path, "output file (default stdout)");

    auto* fv = app.add_subcommand("fv", "filling volume of a cycle");
    add_complex_opts(fv);
    fv->add_option("--cycle", cycle_path, "cycle JSON file")->required();
    fv->add_option("--norm", norm_sel, "l1 | weighted");
    fv->add_option("--solver", solver, "oracle | thicken | exact");
    fv->add_option("--box", box, "coefficient box bound for Z");
    fv->add_option("--jcap", j_cap, "thickening step cap");

    auto* fvt = app.add_subcommand("fv-table", "filling function table as CSV");
    add_complex_opts(fvt);
    fvt->add_option("--degree", n, "filling degree")->required();
    fvt->add_option("--lmax", l_max, "largest cycle norm")->required();
    fvt->add_option("--mode", mode_sel, "orbit | oracle");
    fvt->add_option("--norm", norm_sel, "l1 | weighted");
    fvt->add_option("--out", out_path, "output file (default stdout)");

    auto* repro = app.add_subcommand("repro", "reproduce worked examples");
    repro->require_subcommand(1);
    auto* fig1 = repro->add_subcommand("fig1", "support graphs of the cyclic resolution");
    fig1->add_option("--k", k, "cyclic group order");
    auto* z2 = repro->add_subcommand("z2-nonfinite", "commutator cycle volumes over Z and Q");
    int nmax = 3;
    z2->add_option("--nmax", nmax, "largest n");
    auto* cyc = repro->add_subcommand("cyclic-fv", "discrete filling table of Z/k over F_p");
    cyc->add_option("--k", k, "cyclic group order");
    cyc->add_option("--p", p, "field characteristic");
    cyc->add_option("--lmax", l_max, "largest cycle norm");

    auto* qiv = app.add_subcommand("qi-verify", "build and verify quasi-isometry transfer maps");
    std::string source_path, source_builtin, target_path, target_builtin, map_path;
    qiv->add_option("--source", source_path, "source complex file");
    qiv->add_option("--source-builtin", source_builtin, "source builtin spec");
    qiv->add_option("--target", target_path, "target complex file");
    qiv->add_option("--target-builtin", target_builtin, "target builtin spec");
    qiv->add_option("--map", map_path, "f/h tables as JSON (default: identity)");
    qiv->add_option("--K", K, "quasi-isometry constant")->required();
    qiv->add_option("--n", n, "top degree");

    try {
        app.parse(argc, argv);
        worker_cap();  // validate the env var contract
        if (check->parsed()) return cmd_check(complex_path, builtin, check_k);
        if (graph->parsed()) return cmd_graph(complex_path, builtin, degree, radius, out_path);
        if (thicken_cmd->parsed())
            return cmd_thicken(complex_path, builtin, degree, cells_spec, k_trunc, steps,
                               out_path);
        if (fv->parsed()) return cmd_fv(complex_path, builtin, cycle_path, norm_sel, solver, box,
                                        j_cap);
        if (fvt->parsed())
            return cmd_fv_table(complex_path, builtin, n, l_max, mode_sel, norm_sel, out_path);
        if (repro->parsed()) {
            if (fig1->parsed()) return cmd_repro_fig1(k);
            if (z2->parsed()) return cmd_repro_z2(nmax);
            if (cyc->parsed()) return cmd_repro_cyclic_fv(k, p, l_max);
        }
        if (qiv->parsed())
            return cmd_qi_verify(source_path, source_builtin, target_path, target_builtin,
                                 map_path, K, n);
        return kExitInput;
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitInput;
    } catch (const BudgetError& e) {
        std::cerr << "inconclusive: " << e.what() << "\n";
        return kExitInconclusive;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitInput;
    } catch (const SchemaError& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return kExitInput;
    } catch (const DomainError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const ComplexError& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return kExitVerification;
    } catch (const Error& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return kExitVerification;
    }
}
