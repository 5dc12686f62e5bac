#pragma once

#include <map>
#include <string>

#include "mgl/graph.hpp"

namespace mgl {

// Rooted r-hop neighborhood of a node with a canonical form of its
// isomorphism class. Keys are equal iff the balls are isomorphic by a map
// sending root to root.
struct RootedBall {
    int radius;
    int root;        // node id in the censused graph; local id 0 in subgraph
    Graph subgraph;  // induced on the ball, nodes ordered by (distance, id)
    std::string canonical_key;
};

inline constexpr int kDefaultBallCap = 64;

RootedBall rooted_ball(const Graph& g, int root, int r, int ball_cap = kDefaultBallCap);

// Fraction of nodes carrying each rooted-ball class. Census is combinatorial:
// an edge exists iff its weight is nonzero.
struct MotifCensus {
    int radius;
    int n;
    int max_degree;
    std::map<std::string, double> densities;
};

MotifCensus motif_census(const Graph& g, int r, int ball_cap = kDefaultBallCap);

// Single-threaded reference; motif_census parallelizes over roots and must
// produce identical output.
MotifCensus motif_census_serial(const Graph& g, int r, int ball_cap = kDefaultBallCap);

// max over ball classes of |density_a - density_b|, missing classes count 0.
double census_distance(const MotifCensus& a, const MotifCensus& b);

std::string key_to_hex(const std::string& key);

} // namespace mgl
