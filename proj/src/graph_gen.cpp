#include "sib/graph_gen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace sib {

namespace {

/// Adjacency -> row-stochastic P with 1/deg rows; isolated vertices self-loop.
Matrix degree_normalize(const std::vector<std::vector<bool>>& adj) {
  const int n = static_cast<int>(adj.size());
  Matrix P = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    int deg = 0;
    for (int j = 0; j < n; ++j) deg += adj[static_cast<size_t>(i)][static_cast<size_t>(j)] ? 1 : 0;
    if (deg == 0) {
      P(i, i) = 1.0;
    } else {
      for (int j = 0; j < n; ++j) {
        if (adj[static_cast<size_t>(i)][static_cast<size_t>(j)]) P(i, j) = 1.0 / deg;
      }
    }
  }
  return P;
}

}  // namespace

InfluenceGraph complete_graph(int n) {
  if (n < 1) throw std::invalid_argument("complete_graph: n must be positive");
  return InfluenceGraph::from_matrix(Matrix::Constant(n, n, 1.0 / n));
}

InfluenceGraph erdos_renyi(int n, uint64_t seed, std::optional<double> p_override) {
  if (n < 1) throw std::invalid_argument("erdos_renyi: n must be positive");
  const double p = p_override.value_or(n > 1 ? std::log(static_cast<double>(n)) / n : 0.0);
  RngStream rng(hash_tag(seed, "er"));
  std::vector<std::vector<bool>> adj(static_cast<size_t>(n),
                                     std::vector<bool>(static_cast<size_t>(n), false));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (rng.uniform() < p) {
        adj[static_cast<size_t>(i)][static_cast<size_t>(j)] = true;
        adj[static_cast<size_t>(j)][static_cast<size_t>(i)] = true;
      }
    }
  }
  return InfluenceGraph::from_matrix(degree_normalize(adj));
}

InfluenceGraph barabasi_albert(int n, uint64_t seed) {
  if (n < 1) throw std::invalid_argument("barabasi_albert: n must be positive");
  const int m = std::max(1, static_cast<int>(std::ceil(std::log(static_cast<double>(n)))));
  if (n <= m) return complete_graph(n);  // degenerate: everything collapses to a clique

  RngStream rng(hash_tag(seed, "ba"));
  std::vector<std::vector<bool>> adj(static_cast<size_t>(n),
                                     std::vector<bool>(static_cast<size_t>(n), false));
  std::vector<int> degree(static_cast<size_t>(n), 0);
  // seed graph: m-clique
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      adj[static_cast<size_t>(i)][static_cast<size_t>(j)] = true;
      adj[static_cast<size_t>(j)][static_cast<size_t>(i)] = true;
      ++degree[static_cast<size_t>(i)];
      ++degree[static_cast<size_t>(j)];
    }
  }
  long degree_sum = static_cast<long>(m) * (m - 1);
  if (m == 1) {
    // a 1-clique has no edges; treat vertex 0 as its own attachment target
    degree_sum = 0;
  }

  for (int v = m; v < n; ++v) {
    std::vector<int> targets;
    // m distinct targets, probability proportional to degree (uniform among
    // the existing vertices while no edges exist yet)
    while (static_cast<int>(targets.size()) < std::min(m, v)) {
      int pick = -1;
      if (degree_sum == 0) {
        pick = rng.uniform_int(0, v - 1);
      } else {
        long x = static_cast<long>(rng.uniform() * static_cast<double>(degree_sum));
        long acc = 0;
        for (int j = 0; j < v; ++j) {
          acc += degree[static_cast<size_t>(j)];
          if (x < acc) {
            pick = j;
            break;
          }
        }
        if (pick < 0) pick = v - 1;
      }
      if (std::find(targets.begin(), targets.end(), pick) == targets.end()) {
        targets.push_back(pick);
      }
    }
    for (int j : targets) {
      adj[static_cast<size_t>(v)][static_cast<size_t>(j)] = true;
      adj[static_cast<size_t>(j)][static_cast<size_t>(v)] = true;
      ++degree[static_cast<size_t>(v)];
      ++degree[static_cast<size_t>(j)];
      degree_sum += 2;
    }
  }
  return InfluenceGraph::from_matrix(degree_normalize(adj));
}

void save_edge_csv(const InfluenceGraph& graph, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "src,dst,weight\n";
  char buf[64];
  for (int i = 0; i < graph.n; ++i) {
    for (int j = 0; j < graph.n; ++j) {
      if (graph.P(i, j) != 0.0) {
        std::snprintf(buf, sizeof(buf), "%.17g", graph.P(i, j));
        out << i << ',' << j << ',' << buf << '\n';
      }
    }
  }
}

InfluenceGraph load_edge_csv(const std::string& path, double teleport) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file: " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty graph file: " + path);
  struct Edge {
    int src, dst;
    double w;
  };
  std::vector<Edge> edges;
  int max_node = -1;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    Edge e{};
    std::getline(ss, cell, ',');
    e.src = std::stoi(cell);
    std::getline(ss, cell, ',');
    e.dst = std::stoi(cell);
    std::getline(ss, cell, ',');
    e.w = std::stod(cell);
    max_node = std::max({max_node, e.src, e.dst});
    edges.push_back(e);
  }
  if (max_node < 0) throw std::runtime_error("graph file has no edges: " + path);
  Matrix P = Matrix::Zero(max_node + 1, max_node + 1);
  for (const Edge& e : edges) P(e.src, e.dst) = e.w;
  return InfluenceGraph::from_matrix(std::move(P), teleport);
}

}  // namespace sib
