#pragma once

#include <optional>
#include <string>

#include "sib/influence.hpp"

namespace sib {

/// Complete network: every pair (self included) carries weight 1/n.
InfluenceGraph complete_graph(int n);

// Erdos-Renyi at p = ln(n)/n (single connected component w.h.p.), row
// weights 1/deg(i); isolated vertices get a self-loop. `p_override` is a
// test hook pinning the edge probability.
InfluenceGraph erdos_renyi(int n, uint64_t seed, std::optional<double> p_override = {});

// Barabasi-Albert preferential attachment with m = ceil(ln n) (same average
// degree as ER), seeded from an m-clique; rows weighted 1/deg(i).
InfluenceGraph barabasi_albert(int n, uint64_t seed);

/// Edge-list CSV with header `src,dst,weight`, one row per nonzero entry.
void save_edge_csv(const InfluenceGraph& graph, const std::string& path);
InfluenceGraph load_edge_csv(const std::string& path, double teleport = 0.0);

}  // namespace sib
