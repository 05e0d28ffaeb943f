#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "glv/balance.hpp"

using namespace glv;

namespace {

Eigen::VectorXd random_positive(std::mt19937_64& rng, int n, double lo = -2.0, double hi = 2.0) {
    std::uniform_real_distribution<double> dist(lo, hi);
    Eigen::VectorXd xi(n);
    for (int i = 0; i < n; ++i) xi(i) = dist(rng);
    return xi.array().exp().matrix();
}

} // namespace

TEST_CASE("mass-action field on the triangle") {
    const EGraph tri = fixtures::triangle();
    CHECK(mass_action_rhs(tri, Eigen::Vector3d(1, 1, 1)).lpNorm<Eigen::Infinity>() == 0.0);

    const Eigen::VectorXd f = mass_action_rhs(tri, Eigen::Vector3d(2, 1, 1));
    CHECK(f.isApprox(Eigen::Vector3d(-2, 1, 1), 1e-14));

    CHECK_THROWS_AS(mass_action_rhs(tri, Eigen::Vector3d(1, 0, 1)), Error);
}

TEST_CASE("worked example is steady at (1,1)") {
    const EGraph ex = fixtures::example_graph();
    CHECK(mass_action_rhs(ex, Eigen::Vector2d(1, 1)).lpNorm<Eigen::Infinity>() <= 1e-12);
    const ScaledSystem sys(ex);
    CHECK(glv_rhs(sys, Eigen::Vector2d(1, 1)).lpNorm<Eigen::Infinity>() <= 1e-12);
    CHECK(eval_glv(fixtures::example_system(), Eigen::Vector2d(1, 1)).lpNorm<Eigen::Infinity>() <=
          1e-12);
}

TEST_CASE("glv_rhs applies the state and scaling diagonals") {
    const EGraph tri = fixtures::triangle();
    const ScaledSystem sys(tri);
    CHECK(glv_rhs(sys, Eigen::Vector3d(2, 1, 1)).isApprox(Eigen::Vector3d(-4, 1, 1), 1e-14));

    const ScaledSystem scaled(tri, Eigen::Vector3d(2, 3, 4));
    // Scaling cannot move zeros of the field.
    CHECK(glv_rhs(scaled, Eigen::Vector3d(1, 1, 1)).lpNorm<Eigen::Infinity>() == 0.0);
}

TEST_CASE("polyexp field equals the mass-action field after exp") {
    const EGraph tri = fixtures::triangle();
    const ScaledSystem sys(tri);
    CHECK(polyexp_rhs(sys, Eigen::Vector3d(0, 0, 0)).lpNorm<Eigen::Infinity>() == 0.0);

    const Eigen::Vector3d xi(std::log(2.0), 0, 0);
    CHECK(polyexp_rhs(sys, xi).isApprox(Eigen::Vector3d(-2, 1, 1), 1e-14));

    CHECK_THROWS_AS(polyexp_rhs(sys, Eigen::Vector3d(800, 0, 0)), Error);
}

TEST_CASE("change-of-variables and matrix-form identities on random graphs") {
    std::mt19937_64 rng(45);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    for (int trial = 0; trial < 200; ++trial) {
        const EGraph g = oracles::random_graph(rng);
        const int n = g.dimension();
        Eigen::VectorXd d(n);
        for (int i = 0; i < n; ++i) d(i) = std::exp(dist(rng) * 0.5);
        const ScaledSystem sys(g, d);

        Eigen::VectorXd xi(n);
        for (int i = 0; i < n; ++i) xi(i) = dist(rng);
        const Eigen::VectorXd x = xi.array().exp().matrix();

        const Eigen::VectorXd lhs = polyexp_rhs(sys, xi);
        const Eigen::VectorXd rhs = (d.array() * mass_action_rhs(g, x).array()).matrix();
        CHECK((lhs - rhs).norm() <= 1e-12 * (1.0 + rhs.norm()));

        // Edge-sum evaluation against Y * A_kappa * x^Y.
        const Eigen::VectorXd matrix_form =
            g.vertex_matrix() * (kirchhoff_matrix(g) * vertex_monomials(g, x));
        const Eigen::VectorXd edge_sum = mass_action_rhs(g, x);
        CHECK((edge_sum - matrix_form).norm() <= 1e-12 * (1.0 + matrix_form.norm()));
    }
}

TEST_CASE("polyexp output stays in the scaled stoichiometric subspace") {
    std::mt19937_64 rng(46);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    for (int trial = 0; trial < 100; ++trial) {
        const EGraph g = oracles::random_graph(rng);
        const int n = g.dimension();
        Eigen::VectorXd d(n);
        for (int i = 0; i < n; ++i) d(i) = std::exp(0.5 * dist(rng));
        const ScaledSystem sys(g, d);
        const SubspaceBasis basis = stoichiometric_basis(g);

        Eigen::VectorXd xi(n);
        for (int i = 0; i < n; ++i) xi(i) = dist(rng);
        const Eigen::VectorXd f = polyexp_rhs(sys, xi);

        if (basis.rank() == n) continue;
        Eigen::MatrixXd ds = d.asDiagonal() * basis.basis_S;
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(ds);
        Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, basis.rank());
        const Eigen::VectorXd out = f - q * (q.transpose() * f);
        CHECK(out.norm() <= 1e-12 * (1.0 + f.norm()));
    }
}

TEST_CASE("graph expansion reproduces the published coefficients") {
    const GlvSystem sys = glv_from_graph(fixtures::example_graph());
    const GlvSystem expected = fixtures::example_system();
    REQUIRE(sys.terms.size() == expected.terms.size());
    for (const GlvTerm& want : expected.terms) {
        bool found = false;
        for (const GlvTerm& got : sys.terms)
            if ((got.exponent - want.exponent).lpNorm<Eigen::Infinity>() <= 1e-12) {
                CHECK((got.coeffs - want.coeffs).lpNorm<Eigen::Infinity>() <= 1e-12);
                found = true;
            }
        CHECK(found);
    }
}

TEST_CASE("graph expansion merges, drops, and validates") {
    // Single edge 0 -> e1 with weight 5 gives one constant term.
    const GlvSystem single = glv_from_graph(fixtures::single_edge(5.0));
    REQUIRE(single.terms.size() == 1);
    CHECK(single.terms[0].exponent(0) == 0.0);
    CHECK(single.terms[0].coeffs(0) == 5.0);

    // Opposite edges from one source cancel exactly and leave the zero field.
    const EGraph cancel =
        make_graph(1, {{0}, {1}, {-1}}, {{0, 1, 2.0}, {0, 2, 2.0}, {1, 2, 1.0}});
    const GlvSystem reduced = glv_from_graph(cancel);
    REQUIRE(reduced.terms.size() == 1); // the 0 -> +-1 pair cancels, edge from 1 stays
    CHECK(reduced.terms[0].exponent(0) == 1.0);

    const EGraph zero = make_graph(1, {{0}, {1}, {-1}}, {{0, 1, 2.0}, {0, 2, 2.0}});
    CHECK_THROWS_AS(glv_from_graph(zero), Error);
}

TEST_CASE("round trip graph -> system -> evaluation") {
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 100; ++trial) {
        const EGraph g = oracles::random_graph(rng);
        GlvSystem sys;
        try {
            sys = glv_from_graph(g);
        } catch (const Error& err) {
            REQUIRE(err.code() == errc::empty_system);
            continue;
        }
        const ScaledSystem unscaled(g);
        for (int k = 0; k < 5; ++k) {
            const Eigen::VectorXd x = random_positive(rng, g.dimension());
            const Eigen::VectorXd a = eval_glv(sys, x);
            const Eigen::VectorXd b = glv_rhs(unscaled, x);
            CHECK((a - b).norm() <= 1e-12 * (1.0 + b.norm()));
        }
    }
}

TEST_CASE("doubling the weights doubles the fields exactly") {
    std::mt19937_64 rng(48);
    for (int trial = 0; trial < 50; ++trial) {
        const EGraph g = oracles::random_graph(rng);
        const EGraph g2 = g.scaled_weights(2.0);
        const Eigen::VectorXd x = random_positive(rng, g.dimension());
        CHECK((mass_action_rhs(g2, x) - 2.0 * mass_action_rhs(g, x)).lpNorm<Eigen::Infinity>() ==
              0.0);
        const Eigen::VectorXd xi = x.array().log().matrix();
        CHECK((polyexp_rhs(ScaledSystem(g2), xi) - 2.0 * polyexp_rhs(ScaledSystem(g), xi))
                  .lpNorm<Eigen::Infinity>() == 0.0);
    }
}

TEST_CASE("pure exponential growth system") {
    GlvSystem sys;
    sys.dimension = 2;
    sys.terms.push_back({Eigen::Vector2d(0, 0), Eigen::Vector2d(1, 1)});
    const Eigen::Vector2d x(0.3, 7.0);
    CHECK(eval_glv(sys, x).isApprox(x, 1e-15));
}

TEST_CASE("system validation rejects malformed inputs") {
    GlvSystem empty;
    empty.dimension = 2;
    CHECK_THROWS_AS(validate_system(empty), Error);

    GlvSystem dup;
    dup.dimension = 1;
    dup.terms.push_back({Eigen::VectorXd::Zero(1), Eigen::VectorXd::Ones(1)});
    dup.terms.push_back({Eigen::VectorXd::Zero(1), Eigen::VectorXd::Ones(1)});
    CHECK_THROWS_AS(validate_system(dup), Error);

    GlvSystem zero;
    zero.dimension = 1;
    zero.terms.push_back({Eigen::VectorXd::Zero(1), Eigen::VectorXd::Zero(1)});
    CHECK_THROWS_AS(validate_system(zero), Error);
}
