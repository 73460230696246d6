#include "rigver/lpsolve.hpp"

#include <algorithm>
#include <sstream>

namespace rigver {

namespace {

// ---------------------------------------------------------------------------
// Simplex over Q(sqrt2).
//
// Rows are normalized to  a_i . x <= / = b_i  (GE rows negated) and brought to
// standard form with slacks, free-variable splits and one marker column per
// row. Marker columns start as the identity, so they always hold B^{-1};
// markers of rows whose slack could not seed the basis act as the phase-I
// artificials (cost 1). Markers never enter the basis. Bland's rule (least
// index enters, least basis index leaves) excludes cycling.
//
// In margin mode every strict row additionally receives +1 * margin for a
// fresh variable margin >= 0; maximizing it decides strict feasibility:
// the strict system is feasible iff sup margin > 0. At sup margin = 0 the
// dual values read off the marker block form a Motzkin-style certificate
// (combination 0 <= 0 that some strict row makes strict).
// ---------------------------------------------------------------------------

struct Column {
    enum Kind { Structural, Slack, Marker } kind;
    int var = -1;      // structural: index into vars; -2 for the margin column
    bool neg = false;  // negative split of a free variable
    int row = -1;      // slack/marker: owning row
};

struct Simplex {
    const LinearSystem& sys;
    bool margin_mode;

    std::vector<std::string> var_names;
    std::vector<bool> var_nonneg;

    std::vector<std::vector<QuadExt>> tab;  // m rows; last column = rhs
    std::vector<QuadExt> cost;              // reduced-cost row of the current phase
    std::vector<Column> cols;
    std::vector<int> basis;
    std::vector<int> sigma;
    std::vector<bool> artificial;
    std::vector<int> marker_col;
    int margin_column = -1;
    int ncols = 0;

    Simplex(const LinearSystem& s, bool with_margin) : sys(s), margin_mode(with_margin) {
        build();
    }

    void build() {
        for (const auto& v : sys.variables) {
            var_names.push_back(v.name);
            var_nonneg.push_back(v.nonneg);
        }
        const int m = static_cast<int>(sys.constraints.size());

        std::vector<int> var_col(var_names.size(), -1);
        for (size_t j = 0; j < var_names.size(); ++j) {
            var_col[j] = static_cast<int>(cols.size());
            cols.push_back({Column::Structural, static_cast<int>(j), false, -1});
            if (!var_nonneg[j]) cols.push_back({Column::Structural, static_cast<int>(j), true, -1});
        }
        if (margin_mode) {
            margin_column = static_cast<int>(cols.size());
            cols.push_back({Column::Structural, -2, false, -1});
        }
        std::vector<int> slack_col(m, -1);
        for (int i = 0; i < m; ++i) {
            if (sys.constraints[i].rel != Relation::EQ) {
                slack_col[i] = static_cast<int>(cols.size());
                cols.push_back({Column::Slack, -1, false, i});
            }
        }
        marker_col.assign(m, -1);
        for (int i = 0; i < m; ++i) {
            marker_col[i] = static_cast<int>(cols.size());
            cols.push_back({Column::Marker, -1, false, i});
        }
        ncols = static_cast<int>(cols.size());
        artificial.assign(ncols, false);

        tab.assign(m, std::vector<QuadExt>(ncols + 1, QuadExt()));
        basis.assign(m, -1);
        sigma.assign(m, 1);

        for (int i = 0; i < m; ++i) {
            const auto& c = sys.constraints[i];
            if (is_strict(c.rel) && !margin_mode)
                throw Error("decide() requires a relaxed system; row " + c.id + " is strict");
            bool ge_side = (c.rel == Relation::GE || c.rel == Relation::GT);
            int flip = ge_side ? -1 : 1;
            QuadExt rhs = flip < 0 ? -c.rhs : c.rhs;
            for (const auto& [v, q] : c.coeffs) {
                auto it = std::find(var_names.begin(), var_names.end(), v);
                if (it == var_names.end())
                    throw Error("constraint " + c.id + " references undeclared variable " + v);
                int j = static_cast<int>(it - var_names.begin());
                QuadExt a = flip < 0 ? -q : q;
                tab[i][var_col[j]] = a;
                if (!var_nonneg[j]) tab[i][var_col[j] + 1] = -a;
            }
            if (margin_mode && is_strict(c.rel)) tab[i][margin_column] = QuadExt(1);
            if (slack_col[i] >= 0) tab[i][slack_col[i]] = QuadExt(1);
            if (rhs.sign() < 0) {
                sigma[i] = -1;
                for (auto& q : tab[i]) q = -q;
                rhs = -rhs;
            }
            tab[i][ncols] = rhs;
            tab[i][marker_col[i]] = QuadExt(1);

            if (slack_col[i] >= 0 && sigma[i] == 1) {
                basis[i] = slack_col[i];
            } else {
                basis[i] = marker_col[i];
                artificial[marker_col[i]] = true;
            }
        }

        cost.assign(ncols + 1, QuadExt());
        for (int j = 0; j < ncols; ++j)
            if (artificial[j]) cost[j] = QuadExt(1);
        for (int i = 0; i < m; ++i) {
            if (!artificial[basis[i]]) continue;
            for (int j = 0; j <= ncols; ++j) cost[j] -= tab[i][j];
        }
    }

    void pivot(int prow, int pcol) {
        QuadExt inv = tab[prow][pcol].inv();
        for (auto& q : tab[prow])
            if (!q.is_zero()) q *= inv;
        tab[prow][pcol] = QuadExt(1);
        for (int i = 0; i < static_cast<int>(tab.size()); ++i) {
            if (i == prow || tab[i][pcol].is_zero()) continue;
            QuadExt f = tab[i][pcol];
            for (int j = 0; j <= ncols; ++j) {
                if (tab[prow][j].is_zero()) continue;
                tab[i][j] -= f * tab[prow][j];
            }
            tab[i][pcol] = QuadExt();
        }
        if (!cost[pcol].is_zero()) {
            QuadExt f = cost[pcol];
            for (int j = 0; j <= ncols; ++j) {
                if (tab[prow][j].is_zero()) continue;
                cost[j] -= f * tab[prow][j];
            }
            cost[pcol] = QuadExt();
        }
        basis[prow] = pcol;
    }

    // Bland iteration on the current cost row; returns false when the
    // entering column is unbounded (possible only in phase II).
    bool iterate() {
        const int m = static_cast<int>(tab.size());
        for (;;) {
            int enter = -1;
            for (int j = 0; j < ncols; ++j) {
                if (cols[j].kind == Column::Marker) continue;
                if (cost[j].sign() < 0) {
                    enter = j;
                    break;
                }
            }
            if (enter < 0) return true;
            int leave = -1;
            QuadExt best;
            for (int i = 0; i < m; ++i) {
                if (tab[i][enter].sign() <= 0) continue;
                QuadExt ratio = tab[i][ncols] / tab[i][enter];
                if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave < 0) return false;
            pivot(leave, enter);
        }
    }

    void run_phase1() {
        if (!iterate()) throw Error("phase-I objective unbounded (cannot happen)");
    }

    QuadExt phase1_objective() const {
        QuadExt v;
        for (size_t i = 0; i < basis.size(); ++i)
            if (artificial[basis[i]]) v += tab[i][ncols];
        return v;
    }

    // Removes artificials from the basis after a successful phase I, so that
    // later pivots cannot push them to positive values. Rows that reduce to
    // zero on every decision column are redundant and stay parked.
    void drive_out_artificials() {
        const int m = static_cast<int>(tab.size());
        for (int i = 0; i < m; ++i) {
            if (!artificial[basis[i]]) continue;
            for (int j = 0; j < ncols; ++j) {
                if (cols[j].kind == Column::Marker) continue;
                if (!tab[i][j].is_zero()) {
                    pivot(i, j);  // degenerate pivot, rhs is 0
                    break;
                }
            }
        }
    }

    // Phase II: maximize the margin column. Returns its optimal value, or
    // nullopt when unbounded.
    std::optional<QuadExt> maximize_margin() {
        drive_out_artificials();
        // Reduced costs of min(-margin).
        cost.assign(ncols + 1, QuadExt());
        cost[margin_column] = QuadExt(-1);
        const int m = static_cast<int>(tab.size());
        for (int i = 0; i < m; ++i) {
            if (basis[i] != margin_column) continue;
            for (int j = 0; j <= ncols; ++j) cost[j] += tab[i][j];
            cost[margin_column] = QuadExt();
        }
        if (!iterate()) return std::nullopt;
        for (int i = 0; i < m; ++i)
            if (basis[i] == margin_column) return tab[i][ncols];
        return QuadExt(0);
    }

    std::map<std::string, QuadExt> extract_point() const {
        std::vector<QuadExt> vals(cols.size());
        for (size_t i = 0; i < basis.size(); ++i) vals[basis[i]] = tab[i][ncols];
        std::map<std::string, QuadExt> point;
        for (size_t j = 0; j < cols.size(); ++j) {
            if (cols[j].kind != Column::Structural || cols[j].var < 0) continue;
            auto& p = point[var_names[cols[j].var]];
            p += cols[j].neg ? -vals[j] : vals[j];
        }
        return point;
    }

    // y_hat = c_B B^{-1} read under the marker block; the multiplier of the
    // <=-oriented row i is -sigma_i * y_hat_i. `weights` gives the phase cost
    // of each basic variable.
    FarkasCertificate dual_certificate(const std::vector<QuadExt>& basic_cost) const {
        FarkasCertificate cert;
        const int m = static_cast<int>(tab.size());
        for (int i = 0; i < m; ++i) {
            QuadExt yhat;
            for (int k = 0; k < m; ++k) {
                if (basic_cost[k].is_zero()) continue;
                yhat += basic_cost[k] * tab[k][marker_col[i]];
            }
            QuadExt y = -yhat;
            if (sigma[i] < 0) y = -y;
            if (!y.is_zero()) cert.multipliers[sys.constraints[i].id] = y;
        }
        return cert;
    }

    FarkasCertificate phase1_certificate() const {
        std::vector<QuadExt> bc(tab.size());
        for (size_t k = 0; k < basis.size(); ++k)
            bc[k] = artificial[basis[k]] ? QuadExt(1) : QuadExt();
        return dual_certificate(bc);
    }

    FarkasCertificate margin_certificate() const {
        std::vector<QuadExt> bc(tab.size());
        for (size_t k = 0; k < basis.size(); ++k)
            bc[k] = (basis[k] == margin_column) ? QuadExt(-1) : QuadExt();
        return dual_certificate(bc);
    }
};

bool satisfies(const LinearSystem& s, const std::map<std::string, QuadExt>& point) {
    for (const auto& v : s.variables) {
        auto it = point.find(v.name);
        QuadExt val = it == point.end() ? QuadExt() : it->second;
        if (v.nonneg && val.sign() < 0) return false;
    }
    for (const auto& c : s.constraints) {
        QuadExt lhs;
        for (const auto& [v, q] : c.coeffs) {
            auto it = point.find(v);
            if (it != point.end()) lhs += q * it->second;
        }
        int d = (lhs - c.rhs).sign();
        bool ok = true;
        switch (c.rel) {
            case Relation::LE: ok = d <= 0; break;
            case Relation::GE: ok = d >= 0; break;
            case Relation::EQ: ok = d == 0; break;
            case Relation::LT: ok = d < 0; break;
            case Relation::GT: ok = d > 0; break;
        }
        if (!ok) return false;
    }
    return true;
}

}  // namespace

FeasibilityResult decide(const LinearSystem& s) {
    Simplex sx(s, /*with_margin=*/false);
    sx.run_phase1();
    FeasibilityResult res;
    if (sx.phase1_objective().sign() == 0) {
        res.status = FeasStatus::Feasible;
        res.point = sx.extract_point();
        if (!satisfies(s, res.point))
            throw Error("internal: simplex produced an invalid feasible point for " + s.name);
        return res;
    }
    res.status = FeasStatus::Infeasible;
    res.cert = sx.phase1_certificate();
    if (!verify_certificate(s, res.cert))
        throw Error("internal: simplex produced an invalid certificate for " + s.name);
    return res;
}

FeasibilityResult decide_strict(const LinearSystem& s) {
    FeasibilityResult relaxed = decide(relax_strict(s));
    if (relaxed.status == FeasStatus::Infeasible) return relaxed;  // cert covers s as well
    if (!s.has_strict()) return relaxed;

    Simplex sx(s, /*with_margin=*/true);
    sx.run_phase1();
    if (sx.phase1_objective().sign() != 0)
        throw Error("internal: margin system infeasible although the relaxation is not");
    auto sup = sx.maximize_margin();
    FeasibilityResult res;
    if (!sup || sup->sign() > 0) {
        // Some point satisfies every strict row with positive slack.
        res.status = FeasStatus::Feasible;
        res.point = sx.extract_point();
        if (!satisfies(s, res.point)) {
            // Unbounded margin ray: re-solve with the margin pinned to 1.
            LinearSystem pinned = relax_strict(s);
            VarDecl margin{"margin_", true};
            pinned.variables.push_back(margin);
            for (size_t i = 0; i < pinned.constraints.size(); ++i)
                if (is_strict(s.constraints[i].rel))
                    pinned.constraints[i].coeffs["margin_"] =
                        QuadExt(s.constraints[i].rel == Relation::GT ? -1 : 1);
            LinConstraint pin;
            pin.id = "margin_pin";
            pin.coeffs["margin_"] = QuadExt(1);
            pin.rel = Relation::GE;
            pin.rhs = QuadExt(1);
            pinned.constraints.push_back(pin);
            FeasibilityResult pr = decide(pinned);
            if (pr.status != FeasStatus::Feasible)
                throw Error("internal: margin ray lost for " + s.name);
            pr.point.erase("margin_");
            res.point = std::move(pr.point);
            if (!satisfies(s, res.point))
                throw Error("internal: strict point extraction failed for " + s.name);
        }
        return res;
    }
    res.status = FeasStatus::Infeasible;
    res.cert = sx.margin_certificate();
    if (!verify_certificate(s, res.cert))
        throw Error("internal: invalid strict-infeasibility certificate for " + s.name);
    return res;
}

bool verify_certificate(const LinearSystem& s, const FarkasCertificate& cert) {
    std::map<std::string, const LinConstraint*> by_id;
    for (const auto& c : s.constraints) by_id[c.id] = &c;

    std::map<std::string, QuadExt> combined;
    QuadExt rhs;
    bool any_nonzero = false;
    bool strict_weighted = false;
    for (const auto& [id, y] : cert.multipliers) {
        auto it = by_id.find(id);
        if (it == by_id.end()) throw UnknownConstraintId("unknown constraint id: " + id);
        const LinConstraint& c = *it->second;
        Relation rel = relaxed(c.rel);
        if (rel != Relation::EQ && y.sign() < 0) return false;
        if (y.is_zero()) continue;
        any_nonzero = true;
        if (is_strict(c.rel)) strict_weighted = true;
        QuadExt f = (rel == Relation::GE) ? -y : y;
        for (const auto& [v, q] : c.coeffs) combined[v] += f * q;
        rhs += f * c.rhs;
    }
    if (!any_nonzero) return false;
    // The combination c . x <= rhs (strict when a strict row carries weight)
    // must be impossible: nonnegative coefficients on sign-restricted
    // variables, free variables cancelled, and rhs < 0 -- or rhs == 0 with a
    // strictly weighted strict row, giving 0 <= c . x < 0.
    for (const auto& [v, q] : combined) {
        const VarDecl* d = nullptr;
        for (const auto& vd : s.variables)
            if (vd.name == v) d = &vd;
        if (!d) return false;
        if (d->nonneg) {
            if (q.sign() < 0) return false;
        } else {
            if (q.sign() != 0) return false;
        }
    }
    int sg = rhs.sign();
    return sg < 0 || (sg == 0 && strict_weighted);
}

// ---------------------------------------------------------------------------
// Fourier-Motzkin elimination (independent route).
// ---------------------------------------------------------------------------

namespace {

struct FmRow {
    std::vector<QuadExt> a;
    QuadExt b;
    bool strict = false;
};

}  // namespace

namespace {

// Scales a row so its first nonzero coefficient is +/-1 and renders it as a
// key; identical rows collapse, harmless tautologies disappear.
bool fm_normalize(FmRow& r, bool& violated) {
    const QuadExt* pivot = nullptr;
    for (const auto& q : r.a)
        if (!q.is_zero()) {
            pivot = &q;
            break;
        }
    if (!pivot) {
        int sg = r.b.sign();
        violated = sg < 0 || (r.strict && sg == 0);
        return false;  // constant row: either violated or a tautology
    }
    QuadExt scale = QuadExt(pivot->sign()) / *pivot;  // positive factor
    for (auto& q : r.a) q *= scale;
    r.b *= scale;
    violated = false;
    return true;
}

std::string fm_coeff_key(const FmRow& r) {
    std::string k;
    for (const auto& q : r.a) k += "|" + q.str();
    return k;
}

// r dominates s when both bound the same combination and r is at least as
// tight: smaller rhs, or equal rhs with r strict.
bool fm_dominates(const FmRow& r, const FmRow& s) {
    int c = (r.b - s.b).sign();
    if (c < 0) return true;
    if (c > 0) return false;
    return r.strict || !s.strict;
}

}  // namespace

bool fm_feasible(const LinearSystem& s, size_t row_limit) {
    const size_t n = s.variables.size();
    std::map<std::string, size_t> idx;
    for (size_t j = 0; j < n; ++j) idx[s.variables[j].name] = j;

    std::vector<FmRow> rows;
    auto add = [&](const std::map<std::string, QuadExt>& coeffs, QuadExt b, bool neg,
                   bool strict) {
        FmRow r;
        r.a.assign(n, QuadExt());
        for (const auto& [v, q] : coeffs) r.a[idx.at(v)] = neg ? -q : q;
        r.b = neg ? -b : b;
        r.strict = strict;
        rows.push_back(std::move(r));
    };
    for (const auto& c : s.constraints) {
        switch (c.rel) {
            case Relation::LE: add(c.coeffs, c.rhs, false, false); break;
            case Relation::LT: add(c.coeffs, c.rhs, false, true); break;
            case Relation::GE: add(c.coeffs, c.rhs, true, false); break;
            case Relation::GT: add(c.coeffs, c.rhs, true, true); break;
            case Relation::EQ:
                add(c.coeffs, c.rhs, false, false);
                add(c.coeffs, c.rhs, true, false);
                break;
        }
    }
    for (size_t j = 0; j < n; ++j) {
        if (!s.variables[j].nonneg) continue;
        FmRow r;
        r.a.assign(n, QuadExt());
        r.a[j] = QuadExt(-1);
        rows.push_back(std::move(r));
    }

    // Normalize and keep only the tightest row per coefficient direction;
    // flags infeasibility when a violated constant row appears.
    auto compact = [&](std::vector<FmRow>& rs, bool& infeasible) {
        std::map<std::string, FmRow> strongest;
        infeasible = false;
        for (auto& r : rs) {
            bool violated = false;
            if (!fm_normalize(r, violated)) {
                if (violated) {
                    infeasible = true;
                    return;
                }
                continue;
            }
            std::string key = fm_coeff_key(r);
            auto it = strongest.find(key);
            if (it == strongest.end())
                strongest.emplace(std::move(key), std::move(r));
            else if (fm_dominates(r, it->second))
                it->second = std::move(r);
        }
        rs.clear();
        for (auto& [k, r] : strongest) rs.push_back(std::move(r));
    };

    bool infeasible = false;
    compact(rows, infeasible);
    if (infeasible) return false;

    for (size_t step = 0; step < n; ++step) {
        size_t best = n;
        size_t best_cost = static_cast<size_t>(-1);
        for (size_t j = 0; j < n; ++j) {
            size_t pos = 0, neg = 0, any = 0;
            for (const auto& r : rows) {
                int sg = r.a[j].sign();
                if (sg > 0) ++pos;
                if (sg < 0) ++neg;
                if (sg != 0) ++any;
            }
            if (any == 0) continue;
            size_t cost = pos * neg;
            if (cost < best_cost) {
                best_cost = cost;
                best = j;
            }
        }
        if (best == n) break;
        std::vector<FmRow> keep, pos, neg;
        for (auto& r : rows) {
            int sg = r.a[best].sign();
            if (sg == 0)
                keep.push_back(std::move(r));
            else if (sg > 0)
                pos.push_back(std::move(r));
            else
                neg.push_back(std::move(r));
        }
        // Merge the eliminations into a strongest-per-direction map as they
        // are produced, so parallel combinations never pile up.
        std::map<std::string, FmRow> strongest;
        for (auto& r : keep) strongest.emplace(fm_coeff_key(r), std::move(r));
        for (const auto& p : pos) {
            for (const auto& q : neg) {
                QuadExt fp = p.a[best];
                QuadExt fq = -q.a[best];
                FmRow r;
                r.a.assign(n, QuadExt());
                for (size_t j = 0; j < n; ++j) r.a[j] = p.a[j] * fq + q.a[j] * fp;
                r.b = p.b * fq + q.b * fp;
                r.strict = p.strict || q.strict;
                bool violated = false;
                if (!fm_normalize(r, violated)) {
                    if (violated) return false;
                    continue;
                }
                std::string key = fm_coeff_key(r);
                auto it = strongest.find(key);
                if (it == strongest.end()) {
                    strongest.emplace(std::move(key), std::move(r));
                    if (strongest.size() > row_limit)
                        throw Error("Fourier-Motzkin row limit exceeded on " + s.name);
                } else if (fm_dominates(r, it->second)) {
                    it->second = std::move(r);
                }
            }
        }
        rows.clear();
        for (auto& [k, r] : strongest) rows.push_back(std::move(r));
    }
    return true;
}

// ---------------------------------------------------------------------------
// Certificate serialization.
// ---------------------------------------------------------------------------

std::string certificate_text(const LinearSystem& s, const FarkasCertificate& cert) {
    std::ostringstream os;
    os << "farkas-certificate\n";
    os << "system: " << s.name << "\n";
    os << "at: " << (s.instantiated_at.empty() ? "-" : s.instantiated_at) << "\n";
    os << "multipliers:  # applied to rows oriented as <=\n";
    for (const auto& c : s.constraints) {
        auto it = cert.multipliers.find(c.id);
        if (it == cert.multipliers.end() || it->second.is_zero()) continue;
        os << "  " << c.id << " = " << it->second.str() << "\n";
    }
    std::map<std::string, QuadExt> combined;
    QuadExt rhs;
    bool strict_weighted = false;
    for (const auto& c : s.constraints) {
        auto it = cert.multipliers.find(c.id);
        if (it == cert.multipliers.end() || it->second.is_zero()) continue;
        if (is_strict(c.rel)) strict_weighted = true;
        QuadExt f = relaxed(c.rel) == Relation::GE ? -it->second : it->second;
        for (const auto& [v, q] : c.coeffs) combined[v] += f * q;
        rhs += f * c.rhs;
    }
    os << "combined-row:";
    bool any = false;
    for (const auto& [v, q] : combined) {
        if (q.is_zero()) continue;
        os << (any ? " + " : " ") << q.str() << "*" << v;
        any = true;
    }
    if (!any) os << " 0";
    os << (strict_weighted && rhs.is_zero() ? " < " : " <= ") << rhs.str() << "\n";
    os << "contradiction: the left side is >= 0 for admissible points\n";
    return os.str();
}

FarkasCertificate parse_certificate(const std::string& text, std::string* system_name,
                                    std::string* instantiated_at) {
    std::istringstream in(text);
    std::string line;
    FarkasCertificate cert;
    bool in_mults = false;
    while (std::getline(in, line)) {
        if (auto h = line.find('#'); h != std::string::npos) line = line.substr(0, h);
        auto trim = [](std::string v) {
            size_t a = v.find_first_not_of(" \t\r");
            size_t b = v.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : v.substr(a, b - a + 1);
        };
        std::string t = trim(line);
        if (t.empty()) continue;
        if (t.rfind("system:", 0) == 0) {
            if (system_name) *system_name = trim(t.substr(7));
            continue;
        }
        if (t.rfind("at:", 0) == 0) {
            if (instantiated_at) *instantiated_at = trim(t.substr(3));
            continue;
        }
        if (t.rfind("multipliers:", 0) == 0) {
            in_mults = true;
            continue;
        }
        if (t.rfind("combined-row:", 0) == 0 || t.rfind("contradiction:", 0) == 0 ||
            t == "farkas-certificate")
            continue;
        if (in_mults) {
            auto eq = t.find('=');
            if (eq == std::string::npos) throw Error("malformed certificate line: " + t);
            std::string id = trim(t.substr(0, eq));
            cert.multipliers[id] = parse_quadext(trim(t.substr(eq + 1)));
        }
    }
    return cert;
}

// ---------------------------------------------------------------------------
// Threshold scanning and tail certification.
// ---------------------------------------------------------------------------

ThresholdReport scan_threshold(const ParametricSystem& s, const Int& lo, const Int& hi) {
    if (lo > hi) throw Error("empty scan range");
    ThresholdReport rep;
    rep.system = s.name;
    for (Int m = lo; m <= hi; ++m) {
        LinearSystem ls = instantiate(s, m);
        rep.entries.push_back({m, decide_strict(ls).status});
    }
    std::optional<Int> thr;
    for (auto it = rep.entries.rbegin(); it != rep.entries.rend(); ++it) {
        if (it->status == FeasStatus::Infeasible)
            thr = it->m;
        else
            break;
    }
    rep.minimal_infeasible_m = thr;
    if (thr) {
        TailCert tc = certify_tail(s, *thr);
        rep.tail_certified = tc.certified;
        rep.method = tc.certified ? "limit+monotone" : "finite-scan-only";
    }
    return rep;
}

TailCert certify_tail(const ParametricSystem& s, const Int& m0) {
    auto fail = [](std::string why) { return TailCert{false, std::move(why)}; };
    if (s.m_domain.hi) return fail("M-domain is bounded; nothing to certify");
    if (m0 < s.m_domain.lo) return fail("m0 below the declared domain");

    for (const auto& c : s.constraints) {
        for (const auto& [v, ce] : c.coeffs)
            if (ce.pole_on_tail(m0)) return fail("pole of " + c.id + " coefficient beyond m0");
        if (c.rhs_m.pole_on_tail(m0)) return fail("pole of " + c.id + " rhs beyond m0");
    }

    // Anchor: the system must actually be infeasible at m0.
    if (decide_strict(instantiate(s, m0)).status != FeasStatus::Infeasible)
        return fail("system is feasible at m0");

    // (a) limit system infeasible.
    LinearSystem lim;
    try {
        lim = instantiate_limit(s);
    } catch (const DomainError& e) {
        return fail(std::string("limit system unavailable: ") + e.what());
    }
    if (decide_strict(lim).status != FeasStatus::Infeasible)
        return fail("limit system is feasible");

    // (b) dominance: the feasible region must be non-increasing in M. After
    // orienting a row as <=, a point admissible at M+1 stays admissible at M
    // when every M-dependent coefficient is non-decreasing (it multiplies a
    // nonnegative variable) and the rhs is non-increasing. Strictness is
    // preserved by the same argument.
    for (const auto& c : s.constraints) {
        Relation rel = relaxed(c.rel);
        bool rhs_dep = !c.rhs_m.is_constant();
        if (rel == Relation::EQ) {
            for (const auto& [v, ce] : c.coeffs)
                if (ce.is_m_dependent())
                    return fail("equality row " + c.id + " has an M-dependent coefficient");
            if (rhs_dep) return fail("equality row " + c.id + " has an M-dependent rhs");
            continue;
        }
        bool le = (rel == Relation::LE);
        for (const auto& [v, ce] : c.coeffs) {
            if (!ce.is_m_dependent()) continue;
            const VarDecl* d = s.find_var(v);
            if (!d || !d->nonneg)
                return fail("M-dependent coefficient on free variable " + v + " in " + c.id);
            MonotoneFlags f = ce.monotone(m0);
            bool ok = le ? f.nondecreasing : f.nonincreasing;
            if (!ok) return fail("coefficient of " + v + " in " + c.id + " not certified monotone");
        }
        if (rhs_dep) {
            MonotoneFlags f = monotone_flags(c.rhs_m, m0);
            bool ok = le ? f.nonincreasing : f.nondecreasing;
            if (!ok) return fail("rhs of " + c.id + " not certified monotone");
        }
    }
    return TailCert{true, ""};
}

}  // namespace rigver
