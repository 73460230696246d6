#include "rigver/catalog.hpp"

#include "rigver/graphgen.hpp"

#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>

#ifndef RIGVER_DEFAULT_DATA_DIR
#define RIGVER_DEFAULT_DATA_DIR "data"
#endif

namespace rigver {

using json = nlohmann::ordered_json;

const CatalogSystem* Catalog::find_system(const std::string& name) const {
    for (const auto& s : systems)
        if (s.name == name) return &s;
    return nullptr;
}

const CatalogChain* Catalog::find_chain(const std::string& name) const {
    for (const auto& c : chains)
        if (c.name == name) return &c;
    return nullptr;
}

std::string resolve_data_dir(const std::string& override_dir) {
    if (!override_dir.empty()) return override_dir;
    if (const char* env = std::getenv("RIGVER_DATA_DIR"); env && *env) return env;
    return RIGVER_DEFAULT_DATA_DIR;
}

Catalog load_catalog(const std::string& data_dir) {
    std::ifstream in(data_dir + "/catalog.json");
    if (!in) throw Error("cannot open catalog: " + data_dir + "/catalog.json");
    json j;
    in >> j;
    Catalog cat;
    cat.data_dir = data_dir;
    for (const auto& js : j.value("systems", json::array())) {
        CatalogSystem s;
        s.name = js.at("name");
        s.file = js.at("file");
        s.claim = js.value("claim", "");
        s.scan_lo = Int(js.value("scan_lo", 4));
        s.scan_hi = Int(js.value("scan_hi", 40));
        if (js.contains("infeasible_from")) s.infeasible_from = Int(int(js["infeasible_from"]));
        s.limit_status = js.value("limit", "infeasible");
        s.tail_certified = js.value("tail_certified", true);
        cat.systems.push_back(std::move(s));
    }
    for (const auto& jc : j.value("chains", json::array())) {
        CatalogChain c;
        c.name = jc.at("name");
        c.file = jc.at("file");
        c.claim = jc.value("claim", "");
        if (jc.contains("values"))
            for (const auto& [k, v] : jc["values"].items()) c.values[Int(k)] = v.get<std::string>();
        c.closed = jc.value("closed", "");
        if (jc.contains("threshold_ge")) c.threshold_ge = Int(int(jc["threshold_ge"]));
        cat.chains.push_back(std::move(c));
    }
    for (const auto& jm : j.value("minimizations", json::array())) {
        CatalogMinimization m;
        m.name = jm.at("name");
        m.objective = jm.at("objective");
        m.region = jm.at("region");
        m.claim = jm.value("claim", "");
        m.value = jm.at("value");
        m.argmin_nu = jm.at("argmin_nu");
        m.argmin_theta = jm.at("argmin_theta");
        cat.minimizations.push_back(std::move(m));
    }
    auto read_checks = [](const json& arr) {
        std::vector<CatalogCheck> out;
        for (const auto& e : arr) {
            if (e.is_string())
                out.push_back({e.get<std::string>(), ""});
            else
                out.push_back({e.at("name"), e.value("claim", "")});
        }
        return out;
    };
    cat.identities = read_checks(j.value("identities", json::array()));
    cat.pipelines = read_checks(j.value("pipelines", json::array()));
    for (const auto& jg : j.value("graphs", json::array())) {
        CatalogGraph g;
        g.name = jg.at("name");
        g.file = jg.at("file");
        g.claim = jg.value("claim", "");
        cat.graphs.push_back(std::move(g));
    }
    return cat;
}

ParametricSystem load_system(const Catalog& cat, const std::string& name) {
    const CatalogSystem* s = cat.find_system(name);
    if (!s) throw Error("system not in catalog: " + name);
    return parse_system_file(cat.data_dir + "/" + s->file);
}

ChainSpec load_chain(const Catalog& cat, const std::string& name) {
    const CatalogChain* c = cat.find_chain(name);
    if (!c) throw Error("chain not in catalog: " + name);
    return parse_chain_file(cat.data_dir + "/" + c->file);
}

std::string RunReport::to_text() const {
    std::ostringstream os;
    os << "verification suite " << version << "\n";
    size_t wid = 8;
    for (const auto& r : records) wid = std::max(wid, r.id.size());
    for (const auto& r : records) {
        os << (r.pass ? "[PASS] " : "[FAIL] ") << r.id;
        os << std::string(wid + 2 - r.id.size(), ' ');
        os << "expected " << r.expected << ", got " << r.actual;
        if (!r.claim.empty()) os << "  (" << r.claim << ")";
        os << "\n";
    }
    os << "verdict: " << (pass ? "PASS" : "FAIL") << " (" << records.size() << " checks)\n";
    return os.str();
}

std::string RunReport::to_json(const std::string& timestamp) const {
    json j;
    j["version"] = version;
    j["generated_at"] = timestamp;
    j["verdict"] = pass ? "PASS" : "FAIL";
    j["checks"] = json::array();
    for (const auto& r : records) {
        json e;
        e["id"] = r.id;
        e["claim"] = r.claim;
        e["expected"] = r.expected;
        e["actual"] = r.actual;
        e["status"] = r.pass ? "pass" : "fail";
        if (!r.certificate_path.empty()) e["certificate"] = r.certificate_path;
        j["checks"].push_back(std::move(e));
    }
    return j.dump(2) + "\n";
}

namespace {

void push(RunReport& rep, CheckRecord r) {
    rep.pass = rep.pass && r.pass;
    rep.records.push_back(std::move(r));
}

std::string status_str(FeasStatus s) {
    return s == FeasStatus::Infeasible ? "infeasible" : "feasible";
}

void write_cert(const std::string& dir, const std::string& fname, const LinearSystem& ls,
                const FarkasCertificate& cert, std::string& path_out) {
    if (dir.empty()) return;
    std::string path = dir + "/" + fname;
    std::ofstream out(path);
    if (!out) throw Error("cannot write certificate: " + path);
    out << certificate_text(ls, cert);
    path_out = path;
}

void verify_system(RunReport& rep, const Catalog& cat, const CatalogSystem& cs,
                   const std::string& cert_dir) {
    ParametricSystem sys = parse_system_file(cat.data_dir + "/" + cs.file);

    ThresholdReport scan = scan_threshold(sys, cs.scan_lo, cs.scan_hi);
    CheckRecord r;
    r.id = cs.name + "/threshold";
    r.claim = cs.claim;
    r.expected = cs.infeasible_from ? "infeasible from M=" + cs.infeasible_from->str() : "none";
    r.actual = scan.minimal_infeasible_m
                   ? "infeasible from M=" + scan.minimal_infeasible_m->str()
                   : "none";
    r.pass = (scan.minimal_infeasible_m == cs.infeasible_from);
    if (scan.minimal_infeasible_m) {
        LinearSystem ls = instantiate(sys, *scan.minimal_infeasible_m);
        FeasibilityResult fr = decide_strict(ls);
        if (fr.status == FeasStatus::Infeasible && verify_certificate(ls, fr.cert))
            write_cert(cert_dir, cs.name + "_M" + scan.minimal_infeasible_m->str() + ".cert", ls,
                       fr.cert, r.certificate_path);
        else
            r.pass = false;
    }
    push(rep, std::move(r));

    CheckRecord rl;
    rl.id = cs.name + "/limit";
    rl.claim = cs.claim;
    rl.expected = cs.limit_status;
    try {
        LinearSystem lim = instantiate_limit(sys);
        FeasibilityResult fr = decide_strict(lim);
        rl.actual = status_str(fr.status);
        if (fr.status == FeasStatus::Infeasible && verify_certificate(lim, fr.cert))
            write_cert(cert_dir, cs.name + "_limit.cert", lim, fr.cert, rl.certificate_path);
    } catch (const Error& e) {
        rl.actual = std::string("error: ") + e.what();
    }
    rl.pass = (rl.actual == rl.expected);
    push(rep, std::move(rl));

    CheckRecord rt;
    rt.id = cs.name + "/tail";
    rt.claim = cs.claim;
    rt.expected = cs.tail_certified ? "certified" : "not-certified";
    if (scan.minimal_infeasible_m) {
        TailCert tc = certify_tail(sys, *scan.minimal_infeasible_m);
        rt.actual = tc.certified ? "certified" : "not-certified (" + tc.reason + ")";
        rt.pass = tc.certified == cs.tail_certified;
    } else {
        rt.actual = "no threshold";
        rt.pass = !cs.tail_certified;
    }
    push(rep, std::move(rt));
}

void verify_chain(RunReport& rep, const Catalog& cat, const CatalogChain& cc) {
    ChainSpec chain = parse_chain_file(cat.data_dir + "/" + cc.file);
    for (const auto& [m, expect] : cc.values) {
        CheckRecord r;
        r.id = cc.name + "/value@M=" + m.str();
        r.claim = cc.claim;
        r.expected = expect;
        try {
            r.actual = chain_value(chain, m).str();
        } catch (const Error& e) {
            r.actual = std::string("error: ") + e.what();
        }
        r.pass = (r.actual == Rat::parse(expect).str());
        push(rep, std::move(r));
    }
    if (!cc.closed.empty()) {
        CheckRecord r;
        r.id = cc.name + "/closed-form";
        r.claim = cc.claim;
        r.expected = cc.closed;
        try {
            ParamCoeff cf = chain_closed_form(chain);
            r.actual = cf.str();
            r.pass = (cf == parse_param_coeff(cc.closed));
        } catch (const Error& e) {
            r.actual = std::string("error: ") + e.what();
            r.pass = false;
        }
        push(rep, std::move(r));
    }
    if (cc.threshold_ge) {
        CheckRecord r;
        r.id = cc.name + "/threshold";
        r.claim = cc.claim;
        r.expected = "M=" + cc.threshold_ge->str();
        ChainThreshold th = threshold_m(chain);
        r.actual = th.first_ge ? "M=" + th.first_ge->str() + (th.tail_certified ? "" : " (tail?)")
                               : "never";
        r.pass = th.first_ge && *th.first_ge == *cc.threshold_ge && th.tail_certified;
        push(rep, std::move(r));
    }
}

TriangleRegion region_by_name(const std::string& name) {
    if (name == "5theta-2nu") return TriangleRegion::region_5theta_2nu();
    if (name == "2theta-nu") return TriangleRegion::region_2theta_nu();
    throw Error("unknown region: " + name);
}

ObjectiveId objective_by_name(const std::string& name) {
    if (name == "plain-nf") return ObjectiveId::PlainNF;
    if (name == "clamped-nf") return ObjectiveId::ClampedNF;
    throw Error("unknown objective: " + name);
}

void verify_minimization(RunReport& rep, const CatalogMinimization& cm) {
    CheckRecord r;
    r.id = "min/" + cm.name;
    r.claim = cm.claim;
    r.expected = cm.value + " at (" + cm.argmin_nu + ", " + cm.argmin_theta + "), verified";
    try {
        MinResult res = min_on_triangle(objective_by_name(cm.objective), region_by_name(cm.region));
        r.actual = res.value.str() + " at (" + res.argmin_nu.str() + ", " +
                   res.argmin_theta.str() + ")" + (res.verified ? ", verified" : ", UNVERIFIED");
        r.pass = res.verified && res.value == parse_quadext(cm.value) &&
                 res.argmin_nu == parse_quadext(cm.argmin_nu) &&
                 res.argmin_theta == parse_quadext(cm.argmin_theta);
    } catch (const Error& e) {
        r.actual = std::string("error: ") + e.what();
        r.pass = false;
    }
    push(rep, std::move(r));
}

void verify_identity(RunReport& rep, const CatalogCheck& chk) {
    CheckRecord r;
    r.id = "identity/" + chk.name;
    r.claim = chk.claim;
    r.expected = "true";
    PhiReport pr;
    if (chk.name == "phi-three-level") {
        r.pass = check_phi_identity(PhiCase::ThreeLevel, &pr);
        r.actual = (r.pass ? "true" : "false") + std::string("; ") + pr.detail;
    } else if (chk.name == "phi-four-level") {
        r.pass = check_phi_identity(PhiCase::FourLevel, &pr);
        r.actual = (r.pass ? "true" : "false") + std::string("; ") + pr.detail;
    } else {
        r.actual = "unknown identity";
        r.pass = false;
    }
    push(rep, std::move(r));
}

void verify_pipeline(RunReport& rep, const CatalogCheck& chk) {
    CheckRecord r;
    r.id = "pipeline/" + chk.name;
    r.claim = chk.claim;
    r.expected = "true";
    try {
        r.pass = check_bound_pipeline(chk.name);
        r.actual = r.pass ? "true" : "false";
    } catch (const Error& e) {
        r.actual = std::string("error: ") + e.what();
        r.pass = false;
    }
    push(rep, std::move(r));
}

void verify_graph_corpus(RunReport& rep, const Catalog& cat) {
    long violations = 0, checked = 0;
    auto check_graph = [&](const ResolutionGraph& g) {
        auto dp = path_counts(g, g.K);
        for (int j = 1; j <= g.K; ++j)
            if (dp[j] != enumerate_paths(g, g.K, j)) ++violations;
        ResolutionGraph h = remove_arrows(g);
        auto dph = path_counts(h, g.K);
        for (int j = 2; j <= g.K; ++j)
            if (dph[j] != dp[j]) ++violations;
        if (dph[1] > dp[1]) ++violations;
        if (g.L >= 2) {
            Int lower(0);
            for (int i = 2; i <= g.L; ++i) lower += dph[i];
            if (dph[1] > lower) ++violations;
        }
        ++checked;
    };
    for (int k = 2; k <= 5; ++k)
        for (const auto& g : all_graphs(k)) check_graph(g);
    std::mt19937 rng(20240811);
    for (int t = 0; t < 200; ++t) {
        std::uniform_int_distribution<int> ksize(2, 10);
        check_graph(random_graph(rng, ksize(rng)));
    }
    for (const auto& cg : cat.graphs) {
        ResolutionGraph g = parse_graph_file(cat.data_dir + "/" + cg.file);
        check_graph(g);
        if (parse_graph(print_graph(g)).arrows != g.arrows) ++violations;
    }
    CheckRecord r;
    r.id = "graphs/corpus";
    r.claim = "path-count DP vs enumeration; arrow removal invariants";
    r.expected = "0 violations";
    r.actual = std::to_string(violations) + " violations in " + std::to_string(checked) +
               " graphs";
    r.pass = violations == 0;
    push(rep, std::move(r));
}

}  // namespace

RunReport run_verify_all(const Catalog& cat, const std::string& cert_dir) {
    RunReport rep;
    for (const auto& s : cat.systems) verify_system(rep, cat, s, cert_dir);
    for (const auto& c : cat.chains) verify_chain(rep, cat, c);
    for (const auto& m : cat.minimizations) verify_minimization(rep, m);
    for (const auto& i : cat.identities) verify_identity(rep, i);
    for (const auto& p : cat.pipelines) verify_pipeline(rep, p);
    verify_graph_corpus(rep, cat);
    return rep;
}

}  // namespace rigver
