#include <doctest.h>

#include <cmath>
#include <random>

#include "fyk/params.hpp"
#include "fyk/quadrature.hpp"
#include "fyk/special_functions.hpp"
#include "support/oracles.hpp"

using namespace fyk;

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrtPi = 1.77245385090551602730;

IntegrandSpec gamma_family(double p, double q) {
    IntegrandSpec spec;
    spec.f = [p, q](double s) { return std::pow(s, p) * std::exp(-q * s); };
    spec.endpoint_exponent_at_zero = p;
    spec.decay_rate = q;
    return spec;
}
}  // namespace

TEST_CASE("semi-infinite Gamma integrals") {
    CHECK(integrate_semi_infinite(gamma_family(2.0, 2.0), 1e-12).value ==
          doctest::Approx(0.25).epsilon(1e-12));
    CHECK(integrate_semi_infinite(gamma_family(-0.5, 1.0), 1e-12).value ==
          doctest::Approx(kSqrtPi).epsilon(1e-11));
    // s^{a+1} phi^2 at gamma = 1/2 is the s e^{-2s} integral
    const SpectralProfile prof(FractionalParams::make(7.0, 0.5));
    IntegrandSpec spec;
    spec.f = [&prof](double s) {
        const double ph = prof.phi(s);
        return s * ph * ph;
    };
    spec.endpoint_exponent_at_zero = 1.0;
    spec.decay_rate = 2.0;
    CHECK(integrate_semi_infinite(spec, 1e-12).value ==
          doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("error estimates are honest") {
    for (double p : {-0.5, 0.0, 1.5, 4.0}) {
        for (double q : {1.0, 2.0, 3.0}) {
            const QuadratureEstimate est =
                integrate_semi_infinite(gamma_family(p, q), 1e-10);
            const double truth = test::gamma_integral(p, q);
            CHECK(est.abs_error_estimate >= 0.0);
            CHECK(std::isfinite(est.value));
            CHECK(std::fabs(est.value - truth) <=
                  std::max(10.0 * est.abs_error_estimate, 1e-14));
            // halved tolerance moves the value by at most 10x the estimate
            const QuadratureEstimate tighter =
                integrate_semi_infinite(gamma_family(p, q), 5e-11);
            CHECK(std::fabs(tighter.value - est.value) <=
                  std::max(10.0 * est.abs_error_estimate, 1e-14));
        }
    }
}

TEST_CASE("finite integrals") {
    // Wallis: int_0^pi sin^{n-2} at n = 4
    CHECK(integrate_finite([](double t) { const double s = std::sin(t); return s * s; },
                           0.0, kPi, 1e-12)
              .value == doctest::Approx(kPi / 2.0).epsilon(1e-12));
    CHECK(integrate_finite([](double x) { return x * x * x; }, 0.0, 1.0, 1e-12)
              .value == doctest::Approx(0.25).epsilon(1e-13));
}

TEST_CASE("oscillatory kernel self-convergence") {
    auto f = [](double r) {
        return std::pow(r, 1.5) * detail::bessel_j_core(0.5, r) *
               std::pow(1.0 + r * r, -3.0);
    };
    const double coarse = integrate_finite(f, 0.0, 20.0, 1e-7).value;
    const double fine = integrate_finite(f, 0.0, 20.0, 1e-10).value;
    CHECK(std::fabs(coarse - fine) <= 1e-7 * std::fabs(fine) + 1e-12);
}

TEST_CASE("linearity") {
    std::mt19937_64 rng(20240912);
    std::uniform_real_distribution<double> coef(-3.0, 3.0);
    std::uniform_real_distribution<double> power(-0.4, 3.0);
    for (int trial = 0; trial < 25; ++trial) {
        const double alpha = coef(rng), beta = coef(rng);
        const double p1 = power(rng), p2 = power(rng);
        IntegrandSpec combined;
        combined.f = [=](double s) {
            return alpha * std::pow(s, p1) * std::exp(-s) +
                   beta * std::pow(s, p2) * std::exp(-s);
        };
        combined.endpoint_exponent_at_zero = std::min(p1, p2);
        combined.decay_rate = 1.0;
        const QuadratureEstimate lhs = integrate_semi_infinite(combined, 1e-11);
        const QuadratureEstimate r1 =
            integrate_semi_infinite(gamma_family(p1, 1.0), 1e-11);
        const QuadratureEstimate r2 =
            integrate_semi_infinite(gamma_family(p2, 1.0), 1e-11);
        const double rhs = alpha * r1.value + beta * r2.value;
        const double budget =
            2.0 * (lhs.abs_error_estimate +
                   std::fabs(alpha) * r1.abs_error_estimate +
                   std::fabs(beta) * r2.abs_error_estimate) +
            1e-13;
        CHECK(std::fabs(lhs.value - rhs) <= budget);
    }
}

TEST_CASE("tolerance monotonicity on the Gamma family") {
    for (double p : {0.5, 2.0}) {
        const double truth = test::gamma_integral(p, 2.0);
        double prev_err = 1e100;
        for (double tol : {1e-4, 1e-6, 1e-8, 1e-10, 1e-12}) {
            const double got =
                integrate_semi_infinite(gamma_family(p, 2.0), tol).value;
            const double err = std::fabs(got - truth);
            CHECK(err <= prev_err + 1e-15);
            prev_err = err;
        }
    }
}

TEST_CASE("determinism is bit exact") {
    const IntegrandSpec spec = gamma_family(1.3, 2.0);
    const QuadratureEstimate a = integrate_semi_infinite(spec, 1e-11);
    const QuadratureEstimate b = integrate_semi_infinite(spec, 1e-11);
    CHECK(a.value == b.value);
    CHECK(a.abs_error_estimate == b.abs_error_estimate);
    CHECK(a.intervals_used == b.intervals_used);
}

TEST_CASE("panel budget exhaustion raises AccuracyError") {
    // highly oscillatory with slowly decaying amplitude; 2^14 panels cannot
    // reach 1e-14 relative
    auto nasty = [](double x) { return std::cos(3000.0 * x / (x * x + 1e-4)); };
    bool threw = false;
    try {
        integrate_finite(nasty, 0.0, 1.0, 1e-14, 1e-16);
    } catch (const AccuracyError& e) {
        threw = true;
        CHECK(std::isfinite(e.best_estimate.value));
        CHECK(e.best_estimate.intervals_used > 1000);
    }
    CHECK(threw);
}

TEST_CASE("input validation") {
    IntegrandSpec bad = gamma_family(-1.5, 1.0);
    CHECK_THROWS_AS(integrate_semi_infinite(bad, 1e-10), std::domain_error);
    IntegrandSpec nodecay = gamma_family(1.0, 1.0);
    nodecay.decay_rate = 0.0;
    CHECK_THROWS_AS(integrate_semi_infinite(nodecay, 1e-10), std::domain_error);
    CHECK_THROWS_AS(
        integrate_finite([](double) { return 0.0; }, 1.0, 0.0, 1e-10),
        std::domain_error);
    CHECK_THROWS_AS(integrate_semi_infinite(gamma_family(1.0, 1.0), 0.0),
                    std::domain_error);
}

TEST_CASE("euler accelerator on a slow alternating series") {
    // sum (-1)^{k+1} / k = ln 2
    EulerAccelerator acc;
    double est = 0.0;
    for (int k = 1; k <= 40; ++k)
        est = acc.add((k % 2 == 1 ? 1.0 : -1.0) / k);
    CHECK(est == doctest::Approx(std::log(2.0)).epsilon(1e-12));
}
