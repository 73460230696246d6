#include "rigver/resgraph.hpp"

#include "rigver/dsl.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace rigver {

int ResolutionGraph::delta_of(int i) const {
    if (i < 2 || i > K) throw Error("delta is defined for vertices 2..K");
    return delta[i - 2];
}

void ResolutionGraph::validate() const {
    if (K < 1) throw Error("graph needs at least one vertex");
    if (static_cast<int>(delta.size()) != std::max(0, K - 1))
        throw Error("graph needs K-1 discrepancy values");
    int dmax = 0;
    for (int d : delta) {
        if (d < 1 || d > 4) throw Error("discrepancies must lie in {1,2,3,4}");
        dmax = std::max(dmax, d);
    }
    (void)dmax;
    if (K >= 2 && (L < 2 || L > K)) throw Error("L must satisfy 2 <= L <= K");
    std::vector<bool> has_out(K + 1, false);
    for (const auto& [i, j] : arrows) {
        if (j < 1 || i > K || i <= j) throw Error("arrows must go from higher to lower index");
        has_out[i] = true;
    }
    for (int i = 2; i <= K; ++i)
        if (!has_out[i]) throw Error("vertex " + std::to_string(i) + " has no outgoing arrow");
}

std::map<int, Int> path_counts(const ResolutionGraph& g, int from) {
    if (from < 1 || from > g.K) throw Error("path_counts: vertex out of range");
    std::vector<Int> p(g.K + 1, Int(0));
    p[from] = 1;
    for (int v = from - 1; v >= 1; --v) {
        Int sum(0);
        for (int i = v + 1; i <= from; ++i)
            if (g.has_arrow(i, v)) sum += p[i];
        p[v] = sum;
    }
    std::map<int, Int> out;
    for (int v = 1; v <= g.K; ++v) out[v] = p[v];
    return out;
}

ResolutionGraph remove_arrows(const ResolutionGraph& g) {
    ResolutionGraph h = g;
    for (auto it = h.arrows.begin(); it != h.arrows.end();) {
        if (it->second == 1 && it->first > g.L)
            it = h.arrows.erase(it);
        else
            ++it;
    }
    return h;
}

SigmaGroups sigma_groups(const ResolutionGraph& g) {
    auto p = path_counts(g, g.K);
    SigmaGroups out;
    out.p1 = p[1];
    int dmax = 3;
    for (int i = 2; i <= g.K; ++i) dmax = std::max(dmax, g.delta_of(i));
    out.levels = dmax;
    for (int k = 0; k < dmax; ++k) out.sigma[k] = 0;
    for (int i = 2; i <= g.K; ++i) out.sigma[dmax - g.delta_of(i)] += p[i];
    return out;
}

NFEvaluation evaluate_nf(const ResolutionGraph& g, const std::vector<Rat>& nu, NFKind kind) {
    if (static_cast<int>(nu.size()) != g.K)
        throw LengthMismatch("evaluate_nf: expected " + std::to_string(g.K) + " multiplicities");
    auto p = path_counts(g, g.K);
    NFEvaluation ev;
    for (int i = 1; i <= g.K; ++i) ev.lhs += Rat(p[i]) * nu[i - 1];
    switch (kind) {
        case NFKind::Canonical3:
        case NFKind::LogCanonical4: {
            Rat c(kind == NFKind::Canonical3 ? 3 : 4);
            ev.rhs = c * Rat(p[1]);
            for (int i = 2; i <= g.K; ++i) ev.rhs += Rat(p[i]) * Rat(g.delta_of(i));
            break;
        }
        case NFKind::Case51: {
            // Positional groups: Sigma0 over the lower part, Sigma1 above it.
            Rat s0(0), s1(0);
            for (int i = 2; i <= g.K; ++i)
                (i <= g.L ? s0 : s1) += Rat(p[i]);
            ev.rhs = Rat(3) * Rat(p[1]) + Rat(2) * s0 + s1;
            break;
        }
    }
    ev.satisfied = ev.lhs > ev.rhs;
    return ev;
}

Rat counting_mult_bound(const ResolutionGraph& g, const std::vector<Rat>& nu) {
    if (static_cast<int>(nu.size()) != g.K)
        throw LengthMismatch("counting_mult_bound: expected " + std::to_string(g.K) +
                             " multiplicities");
    auto p = path_counts(g, g.K);
    Rat sum(0);
    for (int i = 1; i <= g.K; ++i) sum += Rat(p[i]) * nu[i - 1] * nu[i - 1];
    return sum;
}

ResolutionGraph parse_graph(const std::string& text) {
    using dsl::Lexer;
    using dsl::Tok;
    using dsl::Token;
    ResolutionGraph g;
    Lexer lx(text);
    while (lx.peek().kind != Tok::End) {
        Token key = lx.expect(Tok::Ident, "K, L, delta or arrows");
        lx.expect(Tok::Eq, "'='");
        if (key.text == "K") {
            g.K = std::stoi(lx.expect(Tok::Number, "vertex count").text);
        } else if (key.text == "L") {
            g.L = std::stoi(lx.expect(Tok::Number, "lower-part bound").text);
        } else if (key.text == "delta") {
            do {
                g.delta.push_back(std::stoi(lx.expect(Tok::Number, "discrepancy").text));
            } while (lx.accept(Tok::Comma));
        } else if (key.text == "arrows") {
            if (!(lx.peek().kind == Tok::Semi)) {
                do {
                    lx.expect(Tok::LParen, "'('");
                    int i = std::stoi(lx.expect(Tok::Number, "source").text);
                    lx.expect(Tok::Gt, "'>'");
                    int j = std::stoi(lx.expect(Tok::Number, "target").text);
                    lx.expect(Tok::RParen, "')'");
                    g.arrows.insert({i, j});
                } while (lx.accept(Tok::Comma));
            }
        } else {
            throw SyntaxError("unknown graph field '" + key.text + "'", key.line, key.col);
        }
        lx.expect(Tok::Semi, "';'");
    }
    g.validate();
    return g;
}

ResolutionGraph parse_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open graph file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_graph(ss.str());
}

std::string print_graph(const ResolutionGraph& g) {
    std::ostringstream os;
    os << "K=" << g.K << "; L=" << g.L << "; delta=";
    for (size_t i = 0; i < g.delta.size(); ++i) os << (i ? "," : "") << g.delta[i];
    os << "; arrows=";
    bool first = true;
    for (const auto& [i, j] : g.arrows) {
        os << (first ? "" : ",") << "(" << i << ">" << j << ")";
        first = false;
    }
    os << ";";
    return os.str();
}

}  // namespace rigver
