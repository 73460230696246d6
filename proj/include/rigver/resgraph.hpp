#ifndef RIGVER_RESGRAPH_HPP
#define RIGVER_RESGRAPH_HPP

#include "rigver/arith.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace rigver {

struct LengthMismatch : Error {
    using Error::Error;
};

/// Oriented graph of a resolution: vertices E_1..E_K, arrows (i -> j) only
/// for i > j (acyclic by construction), elementary discrepancies delta_i for
/// i >= 2, and the last lower-part vertex L.
struct ResolutionGraph {
    int K = 0;
    int L = 0;
    std::set<std::pair<int, int>> arrows;
    std::vector<int> delta;  // delta[i-2] belongs to vertex i, i = 2..K

    int delta_of(int i) const;
    bool has_arrow(int i, int j) const { return arrows.count({i, j}) > 0; }

    /// Structural invariants: arrow indices in range and descending, delta
    /// values in {1..4} ({1..3} when no vertex carries 4), 2 <= L <= K for
    /// K >= 2, and every vertex i >= 2 has at least one outgoing arrow.
    void validate() const;
};

/// p_{from,j}: number of directed paths from `from` to each vertex, with
/// p_{from,from} = 1. Dynamic programming in decreasing index order.
std::map<int, Int> path_counts(const ResolutionGraph& g, int from);

/// Deletes the arrows (i, 1) with i > L; everything else is unchanged.
/// Leaves p_{K,j} for j >= 2 intact and never increases p_{K,1}.
ResolutionGraph remove_arrows(const ResolutionGraph& g);

/// Path-count sums over discrepancy classes of the graph as given
/// (callers pass the modified graph when the removed-arrow p_1 is wanted).
/// Three-level graphs: sigma[k] sums p_i over delta_i == 3-k; four-level:
/// over delta_i == 4-k.
struct SigmaGroups {
    std::map<int, Int> sigma;
    Int p1;
    int levels = 3;
};

SigmaGroups sigma_groups(const ResolutionGraph& g);

enum class NFKind {
    Canonical3,     // lhs > 3 p1 + sum_{i>=2} p_i delta_i
    LogCanonical4,  // lhs > 4 p1 + sum_{i>=2} p_i delta_i
    Case51,         // lhs > 3 p1 + 2 Sigma0 + Sigma1 with positional sigmas
};

struct NFEvaluation {
    Rat lhs, rhs;
    bool satisfied = false;  // lhs > rhs
};

/// Exact evaluation of the Noether-Fano-type inequality for multiplicities
/// nu (|nu| == K, normalized to n = 1). Throws LengthMismatch.
NFEvaluation evaluate_nf(const ResolutionGraph& g, const std::vector<Rat>& nu, NFKind kind);

/// The counting-multiplicities lower bound sum p_i nu_i^2.
Rat counting_mult_bound(const ResolutionGraph& g, const std::vector<Rat>& nu);

/// Text format: K=4; L=2; delta=3,2,1; arrows=(4>3),(3>2),(2>1);
ResolutionGraph parse_graph(const std::string& text);
ResolutionGraph parse_graph_file(const std::string& path);
std::string print_graph(const ResolutionGraph& g);

}  // namespace rigver

#endif
