#include <doctest.h>

#include <cmath>

#include "fyk/model_geometry.hpp"

using namespace fyk;

namespace {
std::vector<double> dense_grid() {
    std::vector<double> g;
    for (int i = 1; i <= 50; ++i) g.push_back(0.01 * i);
    return g;
}
}  // namespace

TEST_CASE("rational arithmetic") {
    CHECK(Rat(1, 2) + Rat(1, 3) == Rat(5, 6));
    CHECK(Rat(2, 4) == Rat(1, 2));
    CHECK(Rat(1, -2) == Rat(-1, 2));
    CHECK(Rat(3, 4) * Rat(2, 3) == Rat(1, 2));
    CHECK(Rat(1, 2) / Rat(1, 4) == Rat(2));
    CHECK((-Rat(1, 2)).to_double() == -0.5);
    CHECK_THROWS_AS(Rat(1, 0), std::domain_error);
    CHECK_THROWS_AS(Rat(1, 2) / Rat(0), std::domain_error);
}

TEST_CASE("metric series from the warp factor") {
    const ModelMetric ball = ModelMetric::hyperbolic_ball(5);
    const auto F = ball.metric_series();
    CHECK(F[0] == Rat(1));
    CHECK(F[1] == Rat(0));
    CHECK(F[2] == Rat(-1, 2));
    CHECK(F[3] == Rat(0));
    CHECK(F[4] == Rat(1, 16));
    CHECK(ball.trace_h(2) == Rat(-5, 2));
}

TEST_CASE("normal-form ODE residual vanishes on the exact models") {
    for (int n = 4; n <= 12; ++n) {
        CHECK(fg_residual(ModelMetric::hyperbolic_ball(n), dense_grid()) <=
              1e-12);
        CHECK(fg_residual(ModelMetric::hyperbolic_half_space(n), dense_grid()) ==
              0.0);
    }
}

TEST_CASE("perturbed warp factors are detected") {
    ModelMetric probe = ModelMetric::hyperbolic_ball(4);
    probe.warp_series[3] = Rat(1, 100);  // f = 1 - rho^2/4 + 0.01 rho^3
    CHECK(fg_residual(probe, dense_grid()) > 1e-4);

    // each single coefficient at the 1e-3 scale must trip the residual
    for (int k = 1; k <= 4; ++k) {
        ModelMetric m = ModelMetric::hyperbolic_ball(6);
        m.warp_series[k] = m.warp_series[k] + Rat(1, 1000);
        CHECK(fg_residual(m, dense_grid()) > 1e-4);
    }
}

TEST_CASE("second-order coefficient identities") {
    for (int n = 4; n <= 12; ++n) {
        const ExpansionReport rep =
            verify_h2_formulas(ModelMetric::hyperbolic_ball(n));
        for (const auto& row : rep.rows) {
            CHECK(row.exact);
            CHECK(row.abs_err == 0.0);
        }
    }
    // round sphere: coefficient -1/2; trace at n = 5 equals 20/(-8)
    const ExpansionReport rep5 =
        verify_h2_formulas(ModelMetric::hyperbolic_ball(5));
    CHECK(rep5.rows[0].lhs == doctest::Approx(-2.5));
    CHECK(rep5.rows[1].lhs == doctest::Approx(-0.5));

    const ExpansionReport flat =
        verify_h2_formulas(ModelMetric::hyperbolic_half_space(6));
    CHECK(flat.rows[0].lhs == 0.0);
    CHECK(flat.rows[0].rhs == 0.0);

    ModelMetric bent = ModelMetric::hyperbolic_ball(5);
    bent.warp_series[1] = Rat(1, 10);
    CHECK_THROWS_AS(verify_h2_formulas(bent), std::domain_error);
}

TEST_CASE("fourth-order trace identity") {
    for (int n = 4; n <= 12; ++n) {
        const ExpansionReport rep =
            verify_h4_trace(ModelMetric::hyperbolic_ball(n));
        CHECK(rep.rows[0].abs_err == 0.0);
    }
    const ExpansionReport rep6 = verify_h4_trace(ModelMetric::hyperbolic_ball(6));
    CHECK(rep6.rows[0].lhs == doctest::Approx(0.375));  // 6/16
    CHECK(rep6.rows[0].rhs == doctest::Approx(0.375));

    const ExpansionReport flat =
        verify_h4_trace(ModelMetric::hyperbolic_half_space(7));
    CHECK(flat.rows[0].lhs == 0.0);
    CHECK(flat.rows[0].rhs == 0.0);

    ModelMetric probe = ModelMetric::hyperbolic_ball(6);
    probe.warp_series[4] = probe.warp_series[4] + Rat(1, 1000);
    CHECK(verify_h4_trace(probe).rows[0].abs_err > 1e-4);
}

TEST_CASE("determinant expansion matches term by term") {
    for (int n = 4; n <= 12; ++n) {
        const ExpansionReport rep =
            verify_det_expansion(ModelMetric::hyperbolic_ball(n));
        for (const auto& row : rep.rows) CHECK(row.abs_err == 0.0);
    }
}

TEST_CASE("E(rho) leading behavior") {
    std::vector<double> grid;
    for (int i = 0; i < 40; ++i)
        grid.push_back(1e-4 * std::pow(100.0, i / 39.0));

    const FractionalParams params = FractionalParams::make(5.0, 0.3);
    const ERhoExpansion flat = e_rho_expansion(
        ModelMetric::hyperbolic_half_space(5), grid, params);
    CHECK(flat.identically_zero);

    const ERhoExpansion ball =
        e_rho_expansion(ModelMetric::hyperbolic_ball(5), grid, params);
    CHECK_FALSE(ball.identically_zero);
    CHECK(std::fabs(ball.fitted_slope - params.a) <= 1e-3);
    // prefactor: -((n-1+a)/2) tr h^{(2)} = -((n-1+a)/2)(-n/2)
    const double expected = -0.5 * (5.0 - 1.0 + params.a) * (-2.5);
    CHECK(ball.expected_prefactor == doctest::Approx(expected).epsilon(1e-14));
    CHECK(std::fabs(ball.fitted_prefactor - expected) <= 1e-6 * expected);
}

TEST_CASE("conformal covariance of the third-order trace") {
    for (double w0 : {0.0, 1.0}) {
        const ExpansionReport rep =
            conformal_trace_h3(ModelMetric::hyperbolic_ball(6), w0);
        for (const auto& row : rep.rows) CHECK(row.abs_err == 0.0);
    }
    ModelMetric cubic = ModelMetric::hyperbolic_ball(6);
    cubic.warp_series[3] = Rat(1, 7);
    CHECK_THROWS_AS(conformal_trace_h3(cubic, 0.0), std::domain_error);
}

TEST_CASE("custom model validation") {
    CHECK_THROWS_AS(ModelMetric::custom(BoundaryType::RoundSphere, 5,
                                        {Rat(2), Rat(0), Rat(0), Rat(0), Rat(0)}),
                    std::domain_error);
    const ModelMetric torus = ModelMetric::custom(
        BoundaryType::FlatTorus, 6, {Rat(1), Rat(0), Rat(1, 8), Rat(0), Rat(0)});
    CHECK(torus.boundary_scalar_R == Rat(0));
    CHECK(fg_residual(torus, dense_grid()) > 1e-4);  // not a solution
}
