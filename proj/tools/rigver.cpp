#include "rigver/catalog.hpp"
#include "rigver/graphgen.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>

using namespace rigver;

namespace {

std::string now_iso() {
    auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

int fail_usage(const std::string& msg) {
    std::cerr << "error: " << msg << "\n";
    return 2;
}

struct CheckArgs {
    std::string system;
    std::string m = "";
    std::string cert_dir = ".";
};

int cmd_check(const Catalog& cat, const CheckArgs& args) {
    const CatalogSystem* cs = cat.find_system(args.system);
    if (!cs) return fail_usage("system not in catalog: " + args.system);
    ParametricSystem sys = parse_system_file(cat.data_dir + "/" + cs->file);

    LinearSystem ls;
    std::string at;
    try {
        if (args.m == "limit") {
            ls = instantiate_limit(sys);
            at = "limit";
        } else {
            ls = instantiate(sys, Int(args.m));
            at = "M=" + args.m;
        }
    } catch (const std::exception& e) {
        return fail_usage(e.what());
    }
    FeasibilityResult res = decide_strict(ls);
    std::string actual = res.status == FeasStatus::Infeasible ? "infeasible" : "feasible";

    std::string expected;
    if (args.m == "limit") {
        expected = cs->limit_status;
    } else if (cs->infeasible_from && Int(args.m) >= *cs->infeasible_from) {
        expected = "infeasible";
    } else if (cs->infeasible_from && Int(args.m) >= cs->scan_lo) {
        expected = "feasible";
    }

    std::cout << cs->name << " at " << at << ": " << actual;
    if (!expected.empty()) std::cout << " (expected " << expected << ")";
    std::cout << "\n";
    if (!cs->claim.empty()) std::cout << "claim: " << cs->claim << "\n";
    if (res.status == FeasStatus::Infeasible) {
        std::string fname = args.cert_dir + "/" + cs->name + "_" +
                            (args.m == "limit" ? "limit" : "M" + args.m) + ".cert";
        std::ofstream out(fname);
        if (out) {
            out << certificate_text(ls, res.cert);
            std::cout << "certificate: " << fname << "\n";
        }
    } else {
        std::cout << "point:";
        for (const auto& [v, q] : res.point) std::cout << " " << v << "=" << q.str();
        std::cout << "\n";
    }
    if (expected.empty()) return 0;
    return actual == expected ? 0 : 1;
}

int cmd_scan(const Catalog& cat, const std::string& name, const std::string& lo,
             const std::string& hi, const std::string& format) {
    const CatalogSystem* cs = cat.find_system(name);
    if (!cs) return fail_usage("system not in catalog: " + name);
    ParametricSystem sys = parse_system_file(cat.data_dir + "/" + cs->file);
    ThresholdReport rep;
    try {
        rep = scan_threshold(sys, Int(lo), Int(hi));
    } catch (const std::exception& e) {
        return fail_usage(e.what());
    }
    if (format == "json") {
        std::cout << "{\"system\":\"" << rep.system << "\",\"entries\":[";
        for (size_t i = 0; i < rep.entries.size(); ++i) {
            std::cout << (i ? "," : "") << "{\"M\":" << rep.entries[i].m.str() << ",\"status\":\""
                      << (rep.entries[i].status == FeasStatus::Infeasible ? "infeasible"
                                                                          : "feasible")
                      << "\"}";
        }
        std::cout << "],\"minimal_infeasible_M\":"
                  << (rep.minimal_infeasible_m ? rep.minimal_infeasible_m->str() : "null")
                  << ",\"tail_certified\":" << (rep.tail_certified ? "true" : "false")
                  << ",\"method\":\"" << rep.method << "\"}\n";
        return 0;
    }
    std::cout << "scan " << rep.system << " [" << lo << ", " << hi << "]\n";
    for (const auto& e : rep.entries)
        std::cout << "  M=" << e.m.str() << "  "
                  << (e.status == FeasStatus::Infeasible ? "infeasible" : "feasible") << "\n";
    std::cout << "minimal infeasible M: "
              << (rep.minimal_infeasible_m ? rep.minimal_infeasible_m->str() : "none") << "\n";
    std::cout << "tail: " << (rep.tail_certified ? "certified" : "not certified") << " ("
              << rep.method << ")\n";
    return 0;
}

int cmd_verify_cert(const Catalog& cat, const std::string& path) {
    std::ifstream in(path);
    if (!in) return fail_usage("cannot open certificate: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    std::string sysname, at;
    FarkasCertificate cert;
    try {
        cert = parse_certificate(ss.str(), &sysname, &at);
    } catch (const std::exception& e) {
        return fail_usage(e.what());
    }
    const CatalogSystem* cs = cat.find_system(sysname);
    if (!cs) return fail_usage("certificate references unknown system: " + sysname);
    ParametricSystem sys = parse_system_file(cat.data_dir + "/" + cs->file);
    LinearSystem ls;
    try {
        if (at == "limit")
            ls = instantiate_limit(sys);
        else if (at.rfind("M=", 0) == 0)
            ls = instantiate(sys, Int(at.substr(2)));
        else
            return fail_usage("certificate has no usable instantiation tag: " + at);
    } catch (const std::exception& e) {
        return fail_usage(e.what());
    }
    bool ok = false;
    try {
        ok = verify_certificate(ls, cert);
    } catch (const std::exception& e) {
        return fail_usage(e.what());
    }
    std::cout << "certificate for " << sysname << " at " << at << ": "
              << (ok ? "VALID" : "INVALID") << "\n";
    return ok ? 0 : 1;
}

int cmd_minimize(const std::string& objective, const std::string& region) {
    ObjectiveId obj;
    if (objective == "plain-nf")
        obj = ObjectiveId::PlainNF;
    else if (objective == "clamped-nf")
        obj = ObjectiveId::ClampedNF;
    else
        return fail_usage("unknown objective (plain-nf | clamped-nf): " + objective);
    TriangleRegion reg;
    if (region == "5theta-2nu")
        reg = TriangleRegion::region_5theta_2nu();
    else if (region == "2theta-nu")
        reg = TriangleRegion::region_2theta_nu();
    else
        return fail_usage("unknown region (5theta-2nu | 2theta-nu): " + region);
    MinResult res = min_on_triangle(obj, reg);
    std::cout << "minimum: " << res.value.str() << " (~" << res.value.to_double() << ")\n";
    std::cout << "argmin:  nu = " << res.argmin_nu.str() << ", theta = " << res.argmin_theta.str()
              << "\n";
    std::cout << "active:  ";
    for (size_t i = 0; i < res.active.size(); ++i) std::cout << (i ? ", " : "") << res.active[i];
    std::cout << "\n";
    std::cout << "interval witness: lower bound " << res.interval_lower << " over "
              << res.boxes_explored << " boxes\n";
    std::cout << "verified: " << (res.verified ? "yes" : "no") << "\n";
    return res.verified ? 0 : 1;
}

int cmd_chain(const Catalog& cat, const std::string& name) {
    const CatalogChain* cc = cat.find_chain(name);
    if (!cc) return fail_usage("chain not in catalog: " + name);
    ChainSpec chain = parse_chain_file(cat.data_dir + "/" + cc->file);
    std::cout << "chain " << chain.name << "\n";
    try {
        ParamCoeff cf = chain_closed_form(chain);
        std::cout << "closed form: " << cf.str() << "\n";
    } catch (const Error& e) {
        std::cout << "closed form: unavailable (" << e.what() << ")\n";
    }
    Int lo = chain.m_domain.lo;
    for (Int m = lo; m < lo + 5; ++m) {
        try {
            std::cout << "  value at M=" << m.str() << ": " << chain_value(chain, m).str() << "\n";
        } catch (const Error&) {
        }
    }
    if (chain.bound) {
        ChainThreshold th = threshold_m(chain);
        std::cout << "threshold (value >= " << chain.bound->str()
                  << "): " << (th.first_ge ? "M=" + th.first_ge->str() : "never");
        if (th.first_gt) std::cout << ", strict from M=" << th.first_gt->str();
        std::cout << (th.tail_certified ? ", tail certified (" + th.method + ")" : "") << "\n";
    }
    return 0;
}

int cmd_graph(const Catalog& cat, const std::string& sub, const std::string& file) {
    std::string path = file;
    std::ifstream probe(path);
    if (!probe) path = cat.data_dir + "/" + file;
    ResolutionGraph g;
    try {
        g = parse_graph_file(path);
    } catch (const std::exception& e) {
        return fail_usage(e.what());
    }
    if (sub == "info") {
        std::cout << print_graph(g) << "\n";
        auto p = path_counts(g, g.K);
        std::cout << "path counts from E_" << g.K << ":";
        for (const auto& [v, n] : p) std::cout << " p" << v << "=" << n.str();
        std::cout << "\n";
        auto sg = sigma_groups(remove_arrows(g));
        std::cout << "modified graph: p1=" << sg.p1.str();
        for (const auto& [lvl, s] : sg.sigma) std::cout << " Sigma" << lvl << "=" << s.str();
        std::cout << "\n";
        return 0;
    }
    if (sub == "remove-arrows") {
        std::cout << print_graph(remove_arrows(g)) << "\n";
        return 0;
    }
    if (sub == "check") {
        auto dp = path_counts(g, g.K);
        bool ok = true;
        for (int j = 1; j <= g.K; ++j) ok = ok && dp[j] == enumerate_paths(g, g.K, j);
        ResolutionGraph h = remove_arrows(g);
        auto dph = path_counts(h, g.K);
        for (int j = 2; j <= g.K; ++j) ok = ok && dph[j] == dp[j];
        ok = ok && dph[1] <= dp[1];
        if (g.L >= 2) {
            Int lower(0);
            for (int i = 2; i <= g.L; ++i) lower += dph[i];
            ok = ok && dph[1] <= lower;
        }
        std::cout << (ok ? "ok" : "violation") << "\n";
        return ok ? 0 : 1;
    }
    return fail_usage("unknown graph subcommand (info | remove-arrows | check): " + sub);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verification toolkit for birational-rigidity computations"};
    app.require_subcommand(1);
    std::string data_opt;
    app.add_option("--data", data_opt, "data directory (default: $RIGVER_DATA_DIR or built-in)");

    CheckArgs check_args;
    auto* check = app.add_subcommand("check", "decide one catalog system at a given M");
    check->add_option("system", check_args.system)->required();
    check->add_option("--M", check_args.m, "integer M or 'limit'")->required();
    check->add_option("--cert-dir", check_args.cert_dir, "where to write certificates");

    std::string scan_name, scan_lo, scan_hi, scan_format = "text";
    auto* scan = app.add_subcommand("scan", "per-M feasibility over a range");
    scan->add_option("system", scan_name)->required();
    scan->add_option("lo", scan_lo)->required();
    scan->add_option("hi", scan_hi)->required();
    scan->add_option("--format", scan_format, "text | json");

    std::string cert_path;
    auto* vcert = app.add_subcommand("verify-cert", "re-check a certificate file");
    vcert->add_option("file", cert_path)->required();

    std::string min_obj, min_region;
    auto* minimize = app.add_subcommand("minimize", "verified minimization of an objective");
    minimize->add_option("objective", min_obj, "plain-nf | clamped-nf")->required();
    minimize->add_option("region", min_region, "5theta-2nu | 2theta-nu")->required();

    std::string chain_name;
    auto* chain = app.add_subcommand("chain", "evaluate a product chain");
    chain->add_option("name", chain_name)->required();

    std::string graph_sub, graph_file;
    auto* graph = app.add_subcommand("graph", "resolution-graph utilities");
    graph->add_option("subcmd", graph_sub, "info | remove-arrows | check")->required();
    graph->add_option("file", graph_file)->required();

    std::string va_format = "text", va_cert_dir, va_out;
    auto* vall = app.add_subcommand("verify-all", "run the full shipped suite");
    vall->add_option("--format", va_format, "text | json");
    vall->add_option("--cert-dir", va_cert_dir, "write certificates here");
    vall->add_option("--out", va_out, "also write the report to a file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;  // usage errors exit 2, --help exits 0
    }

    try {
        Catalog cat = load_catalog(resolve_data_dir(data_opt));
        if (*check) return cmd_check(cat, check_args);
        if (*scan) return cmd_scan(cat, scan_name, scan_lo, scan_hi, scan_format);
        if (*vcert) return cmd_verify_cert(cat, cert_path);
        if (*minimize) return cmd_minimize(min_obj, min_region);
        if (*chain) return cmd_chain(cat, chain_name);
        if (*graph) return cmd_graph(cat, graph_sub, graph_file);
        if (*vall) {
            RunReport rep = run_verify_all(cat, va_cert_dir);
            std::string text =
                va_format == "json" ? rep.to_json(now_iso()) : rep.to_text();
            std::cout << text;
            if (!va_out.empty()) {
                std::ofstream out(va_out);
                out << text;
            }
            return rep.pass ? 0 : 1;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
