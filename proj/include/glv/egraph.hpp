#ifndef GLV_EGRAPH_HPP
#define GLV_EGRAPH_HPP

#include <vector>

#include <Eigen/Dense>

#include "glv/errors.hpp"

namespace glv {

struct Edge {
    int src = 0;
    int dst = 0;
    double weight = 0.0;
};

/// Directed graph with vertices embedded in R^n and positive edge weights.
/// Construction validates: no self-loops, pairwise distinct vertices,
/// strictly positive finite weights, no duplicate (src,dst) pairs.
/// Immutable after construction.
class EGraph {
public:
    /// `vertices` is n x m, one vertex per column.
    EGraph(int dimension, Eigen::MatrixXd vertices, std::vector<Edge> edges,
           double distinct_tol = 1e-12);

    int dimension() const { return dimension_; }
    int num_vertices() const { return static_cast<int>(vertices_.cols()); }
    int num_edges() const { return static_cast<int>(edges_.size()); }

    /// n x m matrix whose columns are the embedded vertices.
    const Eigen::MatrixXd& vertex_matrix() const { return vertices_; }
    Eigen::VectorXd vertex(int i) const { return vertices_.col(i); }
    const std::vector<Edge>& edges() const { return edges_; }

    /// Difference vector target - source of edge e.
    Eigen::VectorXd edge_direction(int e) const {
        return vertices_.col(edges_[e].dst) - vertices_.col(edges_[e].src);
    }

    /// Same graph with every edge weight multiplied by lambda > 0.
    EGraph scaled_weights(double lambda) const;

private:
    int dimension_;
    Eigen::MatrixXd vertices_;
    std::vector<Edge> edges_;
};

/// Convenience constructor from a vertex list.
EGraph make_graph(int dimension, const std::vector<std::vector<double>>& vertices,
                  std::vector<Edge> edges);

/// m x m matrix A with A(i,j) = weight of edge j->i for i != j and
/// A(i,i) = -(total weight leaving vertex i); every column sums to zero.
Eigen::MatrixXd kirchhoff_matrix(const EGraph& g);

/// Orthonormal bases of the span S of all edge differences and of its
/// orthogonal complement.  basis_S is n x dim(S), basis_Sperp is n x (n - dim(S)).
struct SubspaceBasis {
    int dimension = 0;
    Eigen::MatrixXd basis_S;
    Eigen::MatrixXd basis_Sperp;
    int rank() const { return static_cast<int>(basis_S.cols()); }
};

/// Rank decided by singular values above rank_tol * sigma_max.
SubspaceBasis stoichiometric_basis(const EGraph& g, double rank_tol = 1e-10);

struct StructuralReport {
    int num_vertices = 0;
    int num_linkage_classes = 0;
    int dim_stoichiometric = 0;
    int deficiency = 0;
    bool weakly_reversible = false;
    std::vector<int> linkage_class;    // vertex -> undirected component index
    std::vector<int> strong_component; // vertex -> SCC index
};

/// Linkage classes from the underlying undirected graph, weak reversibility
/// from the SCC test (both edge endpoints in one component for every edge),
/// deficiency = m - #classes - dim S.
StructuralReport structural_report(const EGraph& g, double rank_tol = 1e-10);

/// Vertex -> linkage class assignment (undirected connected components).
std::vector<int> linkage_classes(const EGraph& g, int* num_classes = nullptr);

/// Vertex -> strongly connected component assignment (iterative Tarjan).
std::vector<int> strong_components(const EGraph& g, int* num_components = nullptr);

} // namespace glv

#endif
