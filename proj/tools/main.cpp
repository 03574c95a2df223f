// Command-line front end: partition enumeration, component dimensions, the
// refinement graph, irreducibility and hyperelliptic queries, cover
// analysis, deformation checks, and the verification suites.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ascurves/serialize.hpp"
#include "ascurves/verify.hpp"

using namespace ascurves;
using io::json;

namespace {

struct CliOptions {
    Config cfg;
    std::string format = "text";
};

std::string partition_row(const strata::Partition& E) { return E.str(); }

void print_json(const json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_enumerate(const CliOptions& opt, int p, int d, std::optional<int> r) {
    const auto omega = strata::enumerate_partitions(p, d, r);
    if (opt.format == "json") {
        json out;
        out["p"] = p;
        out["d"] = d;
        out["r"] = r ? json(*r) : json(nullptr);
        out["count"] = omega.size();
        out["partitions"] = json::array();
        for (const auto& E : omega) out["partitions"].push_back(io::to_json(E));
        print_json(out);
    } else {
        for (const auto& E : omega) std::cout << partition_row(E) << "\n";
    }
    return 0;
}

int cmd_dims(const CliOptions& opt, int p, int d) {
    const auto omega = strata::enumerate_partitions(p, d);
    if (opt.format == "json") {
        json out;
        out["p"] = p;
        out["d"] = d;
        out["records"] = json::array();
        for (const auto& E : omega) out["records"].push_back(io::stratum_record(p, E));
        print_json(out);
        return 0;
    }
    std::size_t width = 9;
    for (const auto& E : omega) width = std::max(width, E.str().size());
    std::cout << std::left << std::setw(static_cast<int>(width) + 2) << "partition" << std::right << std::setw(4)
              << "s" << std::setw(8) << "dim_AS" << std::setw(9) << "dim_cov" << "  closure_step\n";
    for (const auto& E : omega) {
        const auto step = refgraph::prank_closure_step(p, E);
        std::cout << std::left << std::setw(static_cast<int>(width) + 2) << E.str() << std::right << std::setw(4)
                  << strata::p_rank_of(p, E) << std::setw(8) << strata::stratum_dimension(p, E) << std::setw(9)
                  << strata::cover_stratum_dimension(p, E).dim_cover << "  "
                  << (step ? step->target.str() : std::string("-")) << "\n";
    }
    return 0;
}

int cmd_graph(const CliOptions& opt, int p, int d) {
    const auto g = refgraph::build_graph(p, d);
    if (opt.format == "dot") {
        std::cout << refgraph::to_dot(g);
    } else if (opt.format == "json") {
        print_json(io::to_json(g));
    } else {
        std::cout << "p=" << p << " d=" << d << ": " << g.vertices.size() << " vertices, " << g.edges.size()
                  << " edges\n";
        for (std::size_t i = 0; i < g.vertices.size(); ++i)
            std::cout << "v" << i << " " << g.vertices[i].str() << " dim "
                      << strata::stratum_dimension(p, g.vertices[i]) << "\n";
        for (const auto& e : g.edges)
            std::cout << "v" << e.source << " -> v" << e.target << "  [type " << e.info.edge_type << ", closure "
                      << refgraph::to_string(e.info.closure) << ", dim_delta " << e.info.dim_delta << "]\n";
    }
    return 0;
}

int cmd_irred(const CliOptions& opt, int p, long g) {
    const auto res = strata::is_irreducible(p, g);
    if (opt.format == "json") {
        json out;
        out["p"] = p;
        out["g"] = g;
        out["irreducible"] = res.irreducible;
        out["witnesses"] = json::array();
        for (const auto& E : res.witnesses) out["witnesses"].push_back(io::to_json(E));
        print_json(out);
    } else {
        std::cout << "irreducible: " << (res.irreducible ? "true" : "false") << "; witness";
        if (res.witnesses.size() != 1) std::cout << "es";
        std::cout << " ";
        for (std::size_t i = 0; i < res.witnesses.size(); ++i)
            std::cout << (i ? ", " : "") << res.witnesses[i].str();
        std::cout << "\n";
    }
    return 0;
}

int cmd_hyper(const CliOptions& opt, long g, long s) {
    const auto h = strata::hyperelliptic_components(g, s);
    if (opt.format == "json") {
        json out;
        out["g"] = g;
        out["s"] = s;
        out["components"] = h.component_count;
        out["dimension"] = h.dimension;
        print_json(out);
    } else {
        std::cout << "components: " << h.component_count << "; dimension: " << h.dimension << "\n";
    }
    return 0;
}

int cmd_analyze(const CliOptions& opt, const std::string& path) {
    const auto cover = io::read_cover_file(path);
    const auto an = covers::analyze(cover, opt.cfg);
    std::optional<covers::ZetaData> zeta;
    std::string zeta_note;
    try {
        zeta = covers::zeta_p_rank(an, opt.cfg);
    } catch (const BoundError& e) {
        zeta_note = e.what();
    }
    if (opt.format == "json") {
        json out = io::to_json(an);
        out["f"] = rf_to_string(*cover.field, cover.f);
        out["zeta"] = zeta ? io::to_json(*zeta) : json(nullptr);
        if (!zeta_note.empty()) out["zeta_skipped"] = zeta_note;
        print_json(out);
        return 0;
    }
    const auto& F = *cover.field;
    std::cout << "field: " << F.name() << " (p=" << F.characteristic() << ", n=" << F.degree() << ")\n";
    std::cout << "f: " << rf_to_string(F, cover.f) << "\n";
    std::cout << "standard form: " << rf_to_string(F, an.reduced.f) << "  (dropped constant: "
              << F.to_string(an.dropped_constant) << ")\n";
    std::cout << "branch places (over " << an.ext->name() << "):";
    for (const auto& place : an.places)
        std::cout << "  x=" << (place.at_infinity ? "infinity" : an.ext->to_string(place.location)) << " jump "
                  << place.lower_jump << ";";
    std::cout << "\n";
    std::cout << "partition: " << an.partition.str() << "\n";
    std::cout << "genus: " << an.genus << "\n";
    std::cout << "p-rank (ramification): " << an.p_rank << "\n";
    if (zeta) {
        std::cout << "p-rank (zeta oracle): " << zeta->p_rank << "\n";
        std::cout << "L(T) coefficients:";
        for (const auto& c : zeta->l_poly) std::cout << " " << c.str();
        std::cout << "\n";
        if (zeta->p_rank != an.p_rank) {
            std::cout << "MISMATCH between the two p-rank computations\n";
            return 1;
        }
    } else {
        std::cout << "p-rank (zeta oracle): skipped (" << zeta_note << ")\n";
    }
    return 0;
}

int cmd_deform(const CliOptions& opt, int p, int e1, int e2, std::uint64_t q) {
    // q must be a power of p
    std::uint64_t v = q;
    std::uint32_t m = 0;
    while (v > 1 && v % p == 0) {
        v /= p;
        ++m;
    }
    if (v != 1 || m == 0) throw std::invalid_argument("q must be a positive power of p");
    const auto field = FieldRegistry::instance().field(p, m);
    const auto rep = deform::verify_deformation(p, e1, e2, field, opt.cfg);
    if (opt.format == "json") {
        print_json(io::to_json(rep));
    } else {
        std::cout << "family: y^" << p << "-y = " << deform::make_family(p, e1, e2).rhs_string() << " over "
                  << field->name() << ", t0 = " << field->to_string(rep.t0) << "\n";
        const auto fibre = [&](const char* label, const deform::FibreInvariants& fi) {
            std::cout << label << ": partition " << fi.partition.str() << ", genus " << fi.genus << ", p-rank "
                      << fi.p_rank;
            if (fi.oracle_p_rank) std::cout << " (oracle " << *fi.oracle_p_rank << ")";
            std::cout << "\n";
        };
        fibre("special fibre (t=0)", rep.special);
        fibre("generic fibre     ", rep.generic);
        const auto line = [](const char* name, bool ok) {
            std::cout << "  [" << (ok ? "PASS" : "FAIL") << "] " << name << "\n";
        };
        line("special fibre has partition {e1+e2}", rep.special_partition_ok);
        line("generic fibre has partition {e1,e2}", rep.generic_partition_ok);
        line("genus is constant", rep.genus_equal_ok);
        line("p-rank jumps by exactly p-1", rep.p_rank_jump_ok);
        line("expansion at the moving branch point", rep.expansion_ok);
        std::cout << (rep.pass() ? "pass" : "fail") << "\n";
    }
    return rep.pass() ? 0 : 1;
}

int cmd_verify(const CliOptions& opt, const std::string& suite) {
    std::vector<verify::CheckResult> results;
    if (suite == "all") {
        results = verify::run_all(opt.cfg);
    } else if (suite == "graph") {
        results.push_back(verify::graph_g10_golden());
    } else if (suite == "dims") {
        results.push_back(verify::dimension_table());
    } else if (suite == "irred") {
        results.push_back(verify::irreducibility_classification());
    } else if (suite == "counting") {
        results.push_back(verify::counting_rules());
    } else if (suite == "hyper") {
        results.push_back(verify::hyperelliptic_strata());
    } else if (suite == "oracle") {
        results.push_back(verify::oracle_battery_agreement(opt.cfg));
    } else if (suite == "deform") {
        results.push_back(verify::deformation_sweep(opt.cfg));
    } else if (suite == "chains") {
        results.push_back(verify::chain_length_rules());
    } else if (suite == "codim") {
        results.push_back(verify::codimension_gap());
    } else if (suite == "edges") {
        results.push_back(verify::edge_type_rules());
    } else {
        throw std::invalid_argument("unknown suite: " + suite +
                                    " (choose from all, graph, dims, irred, counting, hyper, oracle, deform, "
                                    "chains, codim, edges)");
    }
    int failed = 0;
    if (opt.format == "json") {
        json out = json::array();
        for (const auto& r : results) {
            json jr;
            jr["id"] = r.id;
            jr["name"] = r.name;
            jr["pass"] = r.pass;
            jr["detail"] = r.detail;
            out.push_back(jr);
            if (!r.pass) ++failed;
        }
        print_json(out);
    } else {
        for (const auto& r : results) {
            std::cout << "[criterion " << std::setw(2) << r.id << "] " << (r.pass ? "PASS" : "FAIL") << "  " << r.name
                      << "  (" << r.detail << ")\n";
            if (!r.pass) ++failed;
        }
        std::cout << results.size() - failed << "/" << results.size() << " checks passed\n";
    }
    return failed == 0 ? 0 : 1;
}

void load_config_file(const std::string& path, Config& cfg, std::string& format) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    json j;
    in >> j;
    if (j.contains("max_field_size")) cfg.max_field_size = j["max_field_size"].get<std::uint64_t>();
    if (j.contains("max_genus_for_oracle")) cfg.max_oracle_genus = j["max_genus_for_oracle"].get<int>();
    if (j.contains("jobs")) cfg.jobs = j["jobs"].get<int>();
    if (j.contains("output_format")) format = j["output_format"].get<std::string>();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"p-rank strata of Artin-Schreier curves: partitions, dimensions, refinement graphs, "
                 "explicit covers and their zeta-function checks"};
    app.require_subcommand(1);

    CliOptions opt;
    std::string config_path;
    app.add_option("--config", config_path, "JSON config file (keys: max_field_size, max_genus_for_oracle, jobs, "
                                            "output_format); flags override");
    app.add_option("--format", opt.format, "output format")->check(CLI::IsMember({"text", "json", "dot"}));
    app.add_option("--max-field-size", opt.cfg.max_field_size, "largest finite field the pipeline may construct");
    app.add_option("--max-genus-oracle", opt.cfg.max_oracle_genus, "largest genus the zeta oracle will handle");
    app.add_option("--jobs", opt.cfg.jobs, "worker threads for point counting")->check(CLI::PositiveNumber);

    int p = 0, d = 0, e1 = 0, e2 = 0;
    long g = 0, s = 0;
    int r_opt = -1;
    std::uint64_t q = 0;
    std::string cover_path, suite = "all";
    bool dot_flag = false, json_flag = false;

    auto* c_enum = app.add_subcommand("enumerate", "list the partitions indexing the p-rank strata");
    c_enum->add_option("-p", p, "characteristic")->required();
    c_enum->add_option("-d", d, "d = 2g/(p-1)")->required();
    c_enum->add_option("-r", r_opt, "restrict to partitions of length r+1");

    auto* c_dims = app.add_subcommand("dims", "component dimension table for one (p, d)");
    c_dims->add_option("-p", p, "characteristic")->required();
    c_dims->add_option("-d", d, "d = 2g/(p-1)")->required();

    auto* c_graph = app.add_subcommand("graph", "refinement graph with closure annotations");
    c_graph->add_option("-p", p, "characteristic")->required();
    c_graph->add_option("-d", d, "d = 2g/(p-1)")->required();
    c_graph->add_flag("--dot", dot_flag, "emit DOT (same as --format dot)");
    c_graph->add_flag("--json", json_flag, "emit JSON (same as --format json)");

    auto* c_irred = app.add_subcommand("irred", "is the genus-g moduli space irreducible?");
    c_irred->add_option("-p", p, "characteristic")->required();
    c_irred->add_option("-g", g, "genus")->required();

    auto* c_hyper = app.add_subcommand("hyper", "characteristic-2 hyperelliptic stratum (count, dimension)");
    c_hyper->add_option("-g", g, "genus")->required();
    c_hyper->add_option("-s", s, "2-rank")->required();

    auto* c_analyze = app.add_subcommand("analyze", "full pipeline on a cover file");
    c_analyze->add_option("file", cover_path, "cover file (see README for the format)")->required();

    auto* c_deform = app.add_subcommand("deform", "verify the p-rank-raising deformation family");
    c_deform->add_option("-p", p, "characteristic")->required();
    c_deform->add_option("--e1", e1, "first entry")->required();
    c_deform->add_option("--e2", e2, "second entry")->required();
    c_deform->add_option("-q", q, "field size (a power of p)")->required();

    auto* c_verify = app.add_subcommand("verify", "run a verification suite");
    c_verify->add_option("suite", suite,
                         "all, graph, dims, irred, counting, hyper, oracle, deform, chains, codim, edges");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (!config_path.empty()) {
            // the config file fills in whatever the flags did not set
            Config file_cfg;
            std::string file_fmt;
            load_config_file(config_path, file_cfg, file_fmt);
            if (!app.count("--max-field-size")) opt.cfg.max_field_size = file_cfg.max_field_size;
            if (!app.count("--max-genus-oracle")) opt.cfg.max_oracle_genus = file_cfg.max_oracle_genus;
            if (!app.count("--jobs")) opt.cfg.jobs = file_cfg.jobs;
            if (!file_fmt.empty() && !app.count("--format")) opt.format = file_fmt;
        }
        if (dot_flag) opt.format = "dot";
        if (json_flag) opt.format = "json";

        if (*c_enum) return cmd_enumerate(opt, p, d, r_opt >= 0 ? std::optional<int>(r_opt) : std::nullopt);
        if (*c_dims) return cmd_dims(opt, p, d);
        if (*c_graph) return cmd_graph(opt, p, d);
        if (*c_irred) return cmd_irred(opt, p, g);
        if (*c_hyper) return cmd_hyper(opt, g, s);
        if (*c_analyze) return cmd_analyze(opt, cover_path);
        if (*c_deform) return cmd_deform(opt, p, e1, e2, q);
        if (*c_verify) return cmd_verify(opt, suite);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
