// Shared graph builders for tests: the worked examples and the candidate
// graphs used by the realization routines.
#ifndef GLV_TESTS_FIXTURES_HPP
#define GLV_TESTS_FIXTURES_HPP

#include <map>
#include <utility>
#include <vector>

#include "glv/dynamics.hpp"
#include "glv/egraph.hpp"

namespace fixtures {

/// Triangle on the standard basis of R^3 with all six directed edges.
/// Weights default to 1; override individual (src,dst) pairs as needed.
inline glv::EGraph triangle(std::map<std::pair<int, int>, double> weights = {}) {
    std::vector<glv::Edge> edges;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            if (i == j) continue;
            double w = 1.0;
            if (auto it = weights.find({i, j}); it != weights.end()) w = it->second;
            edges.push_back({i, j, w});
        }
    return glv::make_graph(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, std::move(edges));
}

/// Complete reversible graph on {0, e_1, ..., e_n}, all weights 1.
inline glv::EGraph cooperative_graph(int n) {
    std::vector<std::vector<double>> vertices(static_cast<std::size_t>(n) + 1,
                                              std::vector<double>(static_cast<std::size_t>(n), 0.0));
    for (int i = 1; i <= n; ++i) vertices[static_cast<std::size_t>(i)][static_cast<std::size_t>(i - 1)] = 1.0;
    std::vector<glv::Edge> edges;
    for (int i = 0; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            edges.push_back({i, j, 1.0});
            edges.push_back({j, i, 1.0});
        }
    return glv::make_graph(n, vertices, std::move(edges));
}

/// Unit square in R^2 with the four reversible side pairs, all weights 1.
inline glv::EGraph square_graph() {
    std::vector<glv::Edge> edges;
    const int cycle[4] = {0, 1, 2, 3};
    for (int k = 0; k < 4; ++k) {
        edges.push_back({cycle[k], cycle[(k + 1) % 4], 1.0});
        edges.push_back({cycle[(k + 1) % 4], cycle[k], 1.0});
    }
    return glv::make_graph(2, {{0, 0}, {1, 0}, {1, 1}, {0, 1}}, std::move(edges));
}

/// The 8-vertex graph realizing the worked two-species example, with its
/// published weights.  The (3 -> 4) weight is zero and the edge is omitted,
/// leaving 15 edges.  Vertex order:
///   0:(0,0) 1:(1,0) 2:(1,1) 3:(0,1) 4:(-2,0) 5:(0,-1) 6:(2,0) 7:(0,3/2)
inline glv::EGraph example_graph() {
    const std::vector<std::vector<double>> vertices = {
        {0, 0}, {1, 0}, {1, 1}, {0, 1}, {-2, 0}, {0, -1}, {2, 0}, {0, 1.5}};
    // (src, dst, weight), 1-based indices as published.
    const std::vector<std::tuple<int, int, double>> table = {
        {1, 2, 3},  {2, 1, 7}, {1, 4, 11}, {4, 1, 7}, {2, 3, 2},
        {3, 2, 6},  {4, 3, 4}, {1, 5, 5},  {5, 1, 5}, {1, 6, 6},
        {6, 1, 6},  {2, 7, 1}, {7, 2, 1},  {4, 8, 6}, {8, 4, 6}};
    std::vector<glv::Edge> edges;
    for (const auto& [s, t, w] : table) edges.push_back({s - 1, t - 1, w});
    return glv::make_graph(2, vertices, std::move(edges));
}

/// The generated two-species system, one coefficient vector per exponent:
///   dx1/dt = x1 (10 x1^-2 - 7 - 6 x1 + 4 x2 - x1^2)
///   dx2/dt = x2 ( 6 x2^-1 + 5 + 2 x1 - 4 x2 - 6 x1 x2 - 3 x2^(3/2))
/// (1,1) is a complex balanced steady state.
inline glv::GlvSystem example_system() {
    glv::GlvSystem sys;
    sys.dimension = 2;
    auto term = [&sys](double e1, double e2, double c1, double c2) {
        sys.terms.push_back({Eigen::Vector2d(e1, e2), Eigen::Vector2d(c1, c2)});
    };
    term(-2, 0, 10, 0);
    term(0, -1, 0, 6);
    term(0, 0, -7, 5);
    term(1, 0, -6, 2);
    term(0, 1, 4, -4);
    term(1, 1, 0, -6);
    term(2, 0, -1, 0);
    term(0, 1.5, 0, -3);
    return sys;
}

/// Single edge 0 -> e_1 in R^1 (not weakly reversible).
inline glv::EGraph single_edge(double weight = 1.0) {
    return glv::make_graph(1, {{0}, {1}}, {{0, 1, weight}});
}

/// Directed path 0 -> e_1 -> e_1 + e_2 in R^2.
inline glv::EGraph path_graph() {
    return glv::make_graph(2, {{0, 0}, {1, 0}, {1, 1}}, {{0, 1, 1.0}, {1, 2, 1.0}});
}

/// Directed 3-cycle e_1 -> e_2 -> e_3 -> e_1 with the given weights.
inline glv::EGraph cycle3(double k12, double k23, double k31) {
    return glv::make_graph(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}},
                           {{0, 1, k12}, {1, 2, k23}, {2, 0, k31}});
}

} // namespace fixtures

#endif
