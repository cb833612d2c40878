#ifndef SPECMIX_GRAPH_HPP
#define SPECMIX_GRAPH_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "specmix/errors.hpp"

namespace specmix {

struct Edge {
  int u;
  int v;
  double w;
};

/// Subset of vertex indices, kept sorted and duplicate-free.
struct VertexSet {
  std::vector<int> vertices;

  VertexSet() = default;
  explicit VertexSet(std::vector<int> v);
  VertexSet(std::initializer_list<int> v) : VertexSet(std::vector<int>(v)) {}

  static VertexSet from_mask(std::uint64_t mask);
  static VertexSet full(int n);

  bool empty() const { return vertices.empty(); }
  int size() const { return static_cast<int>(vertices.size()); }
  bool contains(int x) const;

  /// Lexicographic order on the sorted vertex sequences (tie-break order).
  bool lex_less(const VertexSet& other) const;
};

using VertexFunction = Eigen::VectorXd;

bool is_nonnegative(const VertexFunction& f, double tol = 0.0);
VertexSet support(const VertexFunction& f, double tol = 0.0);

/// Finite weighted graph with symmetric weight function. Immutable after
/// construction; all derived quantities are pure functions of the weights.
/// Self-loops are allowed and contribute once to the vertex weight.
class WeightedGraph {
public:
  static WeightedGraph build(int num_vertices, const std::vector<Edge>& edges);

  int num_vertices() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }

  double weight(int u, int v) const;
  double vertex_weight(int x) const { return vertex_weight_[x]; }
  double total_weight() const { return total_weight_; }

  double stationary(int x) const { return vertex_weight_[x] / total_weight_; }
  Eigen::VectorXd stationary() const;
  double min_stationary() const;

  double measure(const VertexSet& a) const;

  const std::vector<std::pair<int, double>>& neighbors(int x) const {
    return adjacency_[x];
  }

  bool connected() const;

  /// K(x,y) = w(x,y)/w(x); rows sum to one.
  Eigen::MatrixXd transition_kernel() const;

  /// Delta = I - K.
  Eigen::MatrixXd laplacian() const;

  /// I - M with M(x,y) = w(x,y)/sqrt(w(x)w(y)); symmetric, same spectrum
  /// as the Laplacian.
  Eigen::MatrixXd symmetrized_laplacian() const;

  /// Principal submatrix of I - K on the rows/columns of `a`.
  Eigen::MatrixXd dirichlet_operator(const VertexSet& a) const;

  /// Principal submatrix of the symmetrized Laplacian on `a`.
  Eigen::MatrixXd dirichlet_symmetrized(const VertexSet& a) const;

private:
  WeightedGraph() = default;

  int n_ = 0;
  std::vector<Edge> edges_;  // normalized u <= v
  std::vector<std::vector<std::pair<int, double>>> adjacency_;
  std::vector<double> vertex_weight_;
  double total_weight_ = 0.0;
};

inline WeightedGraph build_graph(int num_vertices,
                                 const std::vector<Edge>& edges) {
  return WeightedGraph::build(num_vertices, edges);
}

struct DirichletFormResult {
  double dirichlet;  // <Delta f, f> in L^2(pi)
  double l1_norm;    // sum |f| pi
  double l2_norm;    // sqrt(sum f^2 pi)
  double variance;   // ||f||_2^2 - (E_pi f)^2
};

/// Computes the Dirichlet form both as a quadratic form and as the
/// pairwise-difference sum and cross-checks the two to 1e-10.
DirichletFormResult dirichlet_form_and_norms(const WeightedGraph& g,
                                             const VertexFunction& f);

}  // namespace specmix

#endif
