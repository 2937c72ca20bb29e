// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "masub/network.h"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace masub {
namespace {

constexpr double kWeightTol = 1e-12;

// Path-compressed union-find.
class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int Find(int u) {
    while (parent_[u] != u) {
      parent_[u] = parent_[parent_[u]];
      u = parent_[u];
    }
    return u;
  }
  bool Union(int u, int v) {
    u = Find(u);
    v = Find(v);
    if (u == v) return false;
    parent_[u] = v;
    return true;
  }

 private:
  std::vector<int> parent_;
};

}  // namespace

Graph::Graph(int num_nodes) {
  if (num_nodes < 1) {
    throw Error(ErrorCode::kInvalidArgument, "graph needs at least one node");
  }
  adjacency_.resize(num_nodes);
}

void Graph::AddEdge(int u, int v) {
  if (u < 0 || v < 0 || u >= num_nodes() || v >= num_nodes()) {
    throw Error(ErrorCode::kInvalidArgument, "edge (" + std::to_string(u) +
                                                 ", " + std::to_string(v) +
                                                 ") out of range");
  }
  if (u == v) {
    throw Error(ErrorCode::kInvalidArgument, "self loops are not allowed");
  }
  if (HasEdge(u, v)) return;
  auto insert = [](std::vector<int>& list, int x) {
    list.insert(std::lower_bound(list.begin(), list.end(), x), x);
  };
  insert(adjacency_[u], v);
  insert(adjacency_[v], u);
  ++num_edges_;
}

bool Graph::HasEdge(int u, int v) const {
  const auto& list = adjacency_[u];
  return std::binary_search(list.begin(), list.end(), v);
}

std::vector<std::pair<int, int>> Graph::Edges() const {
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < num_nodes(); ++u) {
    for (int v : adjacency_[u]) {
      if (u < v) edges.emplace_back(u, v);
    }
  }
  return edges;
}

bool Graph::IsConnected() const {
  DisjointSets sets(num_nodes());
  int components = num_nodes();
  for (const auto& [u, v] : Edges()) {
    if (sets.Union(u, v)) --components;
  }
  return components == 1;
}

Graph CompleteGraph(int n) {
  Graph g(n);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) g.AddEdge(u, v);
  }
  return g;
}

Graph PathGraph(int n) {
  Graph g(n);
  for (int u = 0; u + 1 < n; ++u) g.AddEdge(u, u + 1);
  return g;
}

Graph RingGraph(int n) {
  Graph g = PathGraph(n);
  if (n >= 3) g.AddEdge(n - 1, 0);
  return g;
}

Graph GenerateRandomGraph(int n, double avg_degree, Rng& rng,
                          int max_attempts) {
  if (n < 2) {
    throw Error(ErrorCode::kInvalidArgument, "random graph needs n >= 2");
  }
  if (!(avg_degree >= 1.0 && avg_degree < n)) {
    throw Error(ErrorCode::kInvalidArgument,
                "average degree must lie in [1, n)");
  }
  const double p = std::min(1.0, avg_degree / (n - 1));
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    Graph g(n);
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        if (UniformUnit(rng) < p) g.AddEdge(u, v);
      }
    }
    if (g.IsConnected()) return g;
  }
  throw Error(ErrorCode::kGeneration, "no connected G(n, p) draw in " +
                                          std::to_string(max_attempts) +
                                          " attempts");
}

Graph ReadEdgeList(std::istream& in, int num_nodes) {
  std::vector<std::pair<int, int>> edges;
  int max_index = -1;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.resize(hash);
    std::istringstream fields(line);
    int u = 0;
    int v = 0;
    if (!(fields >> u)) continue;  // blank line
    std::string extra;
    if (!(fields >> v) || (fields >> extra)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "edge list line " + std::to_string(line_no) +
                      ": expected two node indices");
    }
    edges.emplace_back(u, v);
    max_index = std::max({max_index, u, v});
  }
  Graph g(num_nodes >= 0 ? num_nodes : max_index + 1);
  for (const auto& [u, v] : edges) g.AddEdge(u, v);
  return g;
}

void WriteEdgeList(std::ostream& out, const Graph& graph) {
  for (const auto& [u, v] : graph.Edges()) out << u << ' ' << v << '\n';
}

double SecondEigenvalueMagnitude(const Eigen::MatrixXd& weights) {
  if (weights.rows() != weights.cols() || weights.rows() == 0) {
    throw Error(ErrorCode::kValidation, "weight matrix must be square");
  }
  if ((weights - weights.transpose()).cwiseAbs().maxCoeff() > kWeightTol) {
    throw Error(ErrorCode::kValidation, "weight matrix is not symmetric");
  }
  if (weights.rows() == 1) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(weights,
                                                        Eigen::EigenvaluesOnly);
  // Ascending: lambda_N first, lambda_1 last.
  const Eigen::VectorXd& ev = solver.eigenvalues();
  const Eigen::Index n = ev.size();
  return std::max(std::abs(ev(n - 2)), std::abs(ev(0)));
}

CommNetwork::CommNetwork(Graph graph, Eigen::MatrixXd weights)
    : graph_(std::move(graph)), weights_(std::move(weights)) {
  const int n = graph_.num_nodes();
  if (weights_.rows() != n || weights_.cols() != n) {
    throw Error(ErrorCode::kDimensionMismatch,
                "weight matrix does not match the graph size");
  }
  if (!graph_.IsConnected()) {
    throw Error(ErrorCode::kConnectivity,
                "communication graph is disconnected");
  }
  for (int i = 0; i < n; ++i) {
    double row = 0.0;
    for (int j = 0; j < n; ++j) {
      const double w = weights_(i, j);
      if (w < -kWeightTol) {
        throw Error(ErrorCode::kValidation, "negative weight");
      }
      if (i != j && w > kWeightTol && !graph_.HasEdge(i, j)) {
        throw Error(ErrorCode::kValidation, "positive weight on non-edge (" +
                                                std::to_string(i) + ", " +
                                                std::to_string(j) + ")");
      }
      row += w;
    }
    if (std::abs(row - 1.0) > kWeightTol) {
      throw Error(ErrorCode::kValidation,
                  "row " + std::to_string(i) + " does not sum to 1");
    }
    if (weights_(i, i) <= 0.0) {
      throw Error(ErrorCode::kValidation, "diagonal weight must be positive");
    }
  }
  beta_ = SecondEigenvalueMagnitude(weights_);  // also checks symmetry
  if (!(beta_ < 1.0 - kWeightTol)) {
    throw Error(ErrorCode::kConnectivity,
                "second eigenvalue magnitude is 1; consensus cannot mix");
  }
  support_.resize(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (weights_(i, j) > 0.0) support_[i].push_back(j);
    }
  }
}

CommNetwork BuildMetropolisWeights(const Graph& graph) {
  if (!graph.IsConnected()) {
    throw Error(ErrorCode::kConnectivity,
                "communication graph is disconnected");
  }
  const int n = graph.num_nodes();
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [u, v] : graph.Edges()) {
    const double x = 1.0 / (1.0 + std::max(graph.degree(u), graph.degree(v)));
    w(u, v) = x;
    w(v, u) = x;
  }
  for (int i = 0; i < n; ++i) {
    double off = 0.0;
    for (int j : graph.neighbors(i)) off += w(i, j);
    w(i, i) = 1.0 - off;
  }
  return CommNetwork(graph, std::move(w));
}

CommNetwork BuildCompleteWeights(int n) {
  return CommNetwork(CompleteGraph(n),
                     Eigen::MatrixXd::Constant(n, n, 1.0 / n));
}

std::vector<double> AggregateBeliefs(
    const CommNetwork& network, std::span<const std::vector<double>> beliefs,
    int agent) {
  if (static_cast<int>(beliefs.size()) != network.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "one belief per agent is required");
  }
  if (agent < 0 || agent >= network.size()) {
    throw Error(ErrorCode::kInvalidArgument, "agent out of range");
  }
  const size_t n = beliefs[agent].size();
  std::vector<double> y(n, 0.0);
  for (int j : network.support(agent)) {
    if (beliefs[j].size() != n) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "neighbor beliefs have different lengths");
    }
    const double w = network.weight(agent, j);
    for (size_t a = 0; a < n; ++a) y[a] += w * beliefs[j][a];
  }
  return y;
}

void WriteWeightsCsv(std::ostream& out, const Eigen::MatrixXd& weights) {
  const auto old_precision = out.precision(17);
  for (Eigen::Index i = 0; i < weights.rows(); ++i) {
    for (Eigen::Index j = 0; j < weights.cols(); ++j) {
      if (j > 0) out << ',';
      out << weights(i, j);
    }
    out << '\n';
  }
  out.precision(old_precision);
}

}  // namespace masub
