#include "glv/egraph.hpp"

#include <algorithm>
#include <set>
#include <stack>
#include <string>
#include <utility>

namespace glv {

const char* errc_name(errc code) noexcept {
    switch (code) {
    case errc::self_loop: return "SelfLoop";
    case errc::duplicate_vertex: return "DuplicateVertex";
    case errc::non_positive_weight: return "NonPositiveWeight";
    case errc::duplicate_edge: return "DuplicateEdge";
    case errc::dimension_mismatch: return "DimensionMismatch";
    case errc::empty_system: return "EmptySystem";
    case errc::non_positive_state: return "NonPositiveState";
    case errc::overflow: return "Overflow";
    case errc::step_underflow: return "StepUnderflow";
    case errc::degenerate_intersection: return "DegenerateIntersection";
    case errc::missing_vertex: return "MissingVertex";
    case errc::not_a_steady_state: return "NotASteadyState";
    case errc::invalid_structure: return "InvalidStructure";
    case errc::parse_error: return "ParseError";
    }
    return "UnknownError";
}

EGraph::EGraph(int dimension, Eigen::MatrixXd vertices, std::vector<Edge> edges,
               double distinct_tol)
    : dimension_(dimension), vertices_(std::move(vertices)), edges_(std::move(edges)) {
    if (dimension_ < 1)
        fail(errc::dimension_mismatch, "dimension must be >= 1");
    if (vertices_.rows() != dimension_)
        fail(errc::dimension_mismatch, "vertex matrix has " + std::to_string(vertices_.rows()) +
                                           " rows, expected " + std::to_string(dimension_));
    const int m = num_vertices();
    if (m < 1)
        fail(errc::dimension_mismatch, "graph needs at least one vertex");
    if (!vertices_.allFinite())
        fail(errc::dimension_mismatch, "vertex coordinates must be finite");

    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            if ((vertices_.col(i) - vertices_.col(j)).lpNorm<Eigen::Infinity>() <= distinct_tol)
                fail(errc::duplicate_vertex,
                     "vertices " + std::to_string(i) + " and " + std::to_string(j));

    std::set<std::pair<int, int>> seen;
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        const Edge& ed = edges_[e];
        if (ed.src < 0 || ed.src >= m || ed.dst < 0 || ed.dst >= m)
            fail(errc::dimension_mismatch, "edge " + std::to_string(e) + " index out of range");
        if (ed.src == ed.dst)
            fail(errc::self_loop, "vertex " + std::to_string(ed.src));
        if (!(ed.weight > 0.0) || !std::isfinite(ed.weight))
            fail(errc::non_positive_weight, "edge " + std::to_string(e));
        if (!seen.insert({ed.src, ed.dst}).second)
            fail(errc::duplicate_edge,
                 "(" + std::to_string(ed.src) + "," + std::to_string(ed.dst) + ")");
    }
}

EGraph EGraph::scaled_weights(double lambda) const {
    std::vector<Edge> scaled = edges_;
    for (Edge& e : scaled) e.weight *= lambda;
    return EGraph(dimension_, vertices_, std::move(scaled));
}

EGraph make_graph(int dimension, const std::vector<std::vector<double>>& vertices,
                  std::vector<Edge> edges) {
    Eigen::MatrixXd V(dimension, static_cast<int>(vertices.size()));
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        if (static_cast<int>(vertices[i].size()) != dimension)
            fail(errc::dimension_mismatch, "vertex " + std::to_string(i));
        for (int k = 0; k < dimension; ++k) V(k, static_cast<int>(i)) = vertices[i][k];
    }
    return EGraph(dimension, std::move(V), std::move(edges));
}

Eigen::MatrixXd kirchhoff_matrix(const EGraph& g) {
    const int m = g.num_vertices();
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m, m);
    for (const Edge& e : g.edges()) {
        A(e.dst, e.src) += e.weight;
        A(e.src, e.src) -= e.weight;
    }
    return A;
}

SubspaceBasis stoichiometric_basis(const EGraph& g, double rank_tol) {
    const int n = g.dimension();
    SubspaceBasis basis;
    basis.dimension = n;
    const int ne = g.num_edges();
    if (ne == 0) {
        basis.basis_S = Eigen::MatrixXd(n, 0);
        basis.basis_Sperp = Eigen::MatrixXd::Identity(n, n);
        return basis;
    }
    Eigen::MatrixXd D(n, ne);
    for (int e = 0; e < ne; ++e) D.col(e) = g.edge_direction(e);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(D, Eigen::ComputeFullU);
    const auto& sigma = svd.singularValues();
    const double cutoff = rank_tol * sigma(0);
    int rank = 0;
    while (rank < sigma.size() && sigma(rank) > cutoff) ++rank;
    basis.basis_S = svd.matrixU().leftCols(rank);
    basis.basis_Sperp = svd.matrixU().rightCols(n - rank);
    return basis;
}

std::vector<int> linkage_classes(const EGraph& g, int* num_classes) {
    const int m = g.num_vertices();
    std::vector<std::vector<int>> adj(m);
    for (const Edge& e : g.edges()) {
        adj[e.src].push_back(e.dst);
        adj[e.dst].push_back(e.src);
    }
    std::vector<int> comp(m, -1);
    int next = 0;
    for (int start = 0; start < m; ++start) {
        if (comp[start] >= 0) continue;
        std::stack<int> todo;
        todo.push(start);
        comp[start] = next;
        while (!todo.empty()) {
            int v = todo.top();
            todo.pop();
            for (int w : adj[v])
                if (comp[w] < 0) {
                    comp[w] = next;
                    todo.push(w);
                }
        }
        ++next;
    }
    if (num_classes) *num_classes = next;
    return comp;
}

// Iterative Tarjan; component ids are renumbered in order of lowest vertex.
std::vector<int> strong_components(const EGraph& g, int* num_components) {
    const int m = g.num_vertices();
    std::vector<std::vector<int>> adj(m);
    for (const Edge& e : g.edges()) adj[e.src].push_back(e.dst);

    std::vector<int> index(m, -1), low(m, 0), comp(m, -1);
    std::vector<bool> on_stack(m, false);
    std::vector<int> stack;
    int next_index = 0, next_comp = 0;

    struct Frame {
        int v;
        std::size_t child;
    };
    for (int root = 0; root < m; ++root) {
        if (index[root] >= 0) continue;
        std::vector<Frame> frames{{root, 0}};
        index[root] = low[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!frames.empty()) {
            Frame& f = frames.back();
            if (f.child < adj[f.v].size()) {
                int w = adj[f.v][f.child++];
                if (index[w] < 0) {
                    index[w] = low[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    frames.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
            } else {
                if (low[f.v] == index[f.v]) {
                    int w;
                    do {
                        w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        comp[w] = next_comp;
                    } while (w != f.v);
                    ++next_comp;
                }
                int v = f.v;
                frames.pop_back();
                if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
            }
        }
    }

    // Renumber so ids follow first appearance by vertex order.
    std::vector<int> remap(next_comp, -1);
    int next = 0;
    for (int v = 0; v < m; ++v)
        if (remap[comp[v]] < 0) remap[comp[v]] = next++;
    for (int v = 0; v < m; ++v) comp[v] = remap[comp[v]];
    if (num_components) *num_components = next;
    return comp;
}

StructuralReport structural_report(const EGraph& g, double rank_tol) {
    StructuralReport rep;
    rep.num_vertices = g.num_vertices();
    rep.linkage_class = linkage_classes(g, &rep.num_linkage_classes);
    rep.strong_component = strong_components(g);
    rep.weakly_reversible = true;
    for (const Edge& e : g.edges())
        if (rep.strong_component[e.src] != rep.strong_component[e.dst]) {
            rep.weakly_reversible = false;
            break;
        }
    rep.dim_stoichiometric = stoichiometric_basis(g, rank_tol).rank();
    rep.deficiency = rep.num_vertices - rep.num_linkage_classes - rep.dim_stoichiometric;
    if (rep.deficiency < 0)
        throw std::logic_error("negative deficiency: stoichiometric rank overestimated");
    return rep;
}

} // namespace glv
