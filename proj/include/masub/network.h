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

// Communication graphs and consensus weight matrices.

#ifndef MASUB_NETWORK_H_
#define MASUB_NETWORK_H_

#include <Eigen/Dense>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "masub/common.h"

namespace masub {

// Simple undirected graph on nodes {0, ..., num_nodes - 1}.
class Graph {
 public:
  explicit Graph(int num_nodes);

  // Ignores duplicates; self loops and out-of-range nodes throw.
  void AddEdge(int u, int v);

  int num_nodes() const { return static_cast<int>(adjacency_.size()); }
  int num_edges() const { return num_edges_; }
  bool HasEdge(int u, int v) const;
  // Sorted neighbor list, excluding the node itself.
  std::span<const int> neighbors(int u) const { return adjacency_[u]; }
  int degree(int u) const { return static_cast<int>(adjacency_[u].size()); }
  // Edges with u < v, sorted.
  std::vector<std::pair<int, int>> Edges() const;

  bool IsConnected() const;

 private:
  std::vector<std::vector<int>> adjacency_;
  int num_edges_ = 0;
};

Graph CompleteGraph(int n);
Graph PathGraph(int n);
Graph RingGraph(int n);

// G(n, p) with p = avg_degree / (n - 1), redrawn until connected.
// Throws kGeneration when `max_attempts` draws are all disconnected.
Graph GenerateRandomGraph(int n, double avg_degree, Rng& rng,
                          int max_attempts = 1000);

// Edge-list text: one "i j" pair per line, 0-indexed; '#' starts a comment.
// With num_nodes < 0 the node count is one past the largest index seen.
Graph ReadEdgeList(std::istream& in, int num_nodes = -1);
void WriteEdgeList(std::ostream& out, const Graph& graph);

// max(|lambda_2(W)|, |lambda_N(W)|) of a symmetric matrix.
// Throws kValidation when W is not symmetric.
double SecondEigenvalueMagnitude(const Eigen::MatrixXd& weights);

// Connected graph plus a symmetric doubly stochastic weight matrix with a
// strictly positive diagonal, supported on the graph's edges. Immutable.
class CommNetwork {
 public:
  // Validates every invariant; throws kConnectivity for disconnected graphs
  // and kValidation for bad weights.
  CommNetwork(Graph graph, Eigen::MatrixXd weights);

  int size() const { return graph_.num_nodes(); }
  const Graph& graph() const { return graph_; }
  const Eigen::MatrixXd& weights() const { return weights_; }
  double weight(int i, int j) const { return weights_(i, j); }
  double beta() const { return beta_; }
  // Nodes j with w_ij > 0, including i, sorted.
  std::span<const int> support(int i) const { return support_[i]; }

 private:
  Graph graph_;
  Eigen::MatrixXd weights_;
  double beta_;
  std::vector<std::vector<int>> support_;
};

// w_ij = 1 / (1 + max(d_i, d_j)) on edges, w_ii = 1 - sum_j w_ij.
CommNetwork BuildMetropolisWeights(const Graph& graph);

// w_ij = 1 / n everywhere.
CommNetwork BuildCompleteWeights(int n);

// y_i = sum_{j in support(i)} w_ij x_j.
std::vector<double> AggregateBeliefs(
    const CommNetwork& network, std::span<const std::vector<double>> beliefs,
    int agent);

// Comma-separated rows, 17 significant digits.
void WriteWeightsCsv(std::ostream& out, const Eigen::MatrixXd& weights);

}  // namespace masub

#endif  // MASUB_NETWORK_H_
