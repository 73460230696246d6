#ifndef RIGVER_GRAPHGEN_HPP
#define RIGVER_GRAPHGEN_HPP

#include "rigver/resgraph.hpp"

#include <random>

namespace rigver {

/// Independent path-count oracle: plain depth-first enumeration, no dynamic
/// programming shared with path_counts().
Int enumerate_paths(const ResolutionGraph& g, int from, int to);

/// All resolution graphs on K vertices (every subset of the descending
/// arrows that keeps each vertex i >= 2 connected downwards), with fixed
/// delta pattern cycling through the allowed values.
std::vector<ResolutionGraph> all_graphs(int k, int levels = 3);

/// Random valid graph with K vertices; arrows (i, i-1) are always present so
/// every blow-up covers an earlier centre.
ResolutionGraph random_graph(std::mt19937& rng, int k, int levels = 3);

/// Non-increasing random multiplicity chain nu_2 >= ... >= nu_K with
/// nu_1 <= 3 (small rational values).
std::vector<Rat> random_multiplicities(std::mt19937& rng, int k);

}  // namespace rigver

#endif
