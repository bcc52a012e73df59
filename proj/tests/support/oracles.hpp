#ifndef FYK_TESTS_ORACLES_HPP
#define FYK_TESTS_ORACLES_HPP

// Independent oracles used by the test suites. Everything here deliberately
// avoids the library's evaluation paths: plain ascending series, closed-form
// Gamma integrals and direct Monte-Carlo estimates.

#include <cmath>
#include <cstdint>
#include <random>

#include "fyk/special_functions.hpp"

namespace fyk::test {

/// Modified Bessel function of the first kind by its ascending series
/// (all terms positive, no cancellation).
inline double bessel_i(double nu, double x) {
    const double q = 0.25 * x * x;
    double term = std::pow(0.5 * x, nu) / fyk::gamma_fn(nu + 1.0);
    double sum = term;
    for (int k = 1; k <= 200; ++k) {
        term *= q / (k * (nu + k));
        sum += term;
        if (term < 1e-18 * sum) break;
    }
    return sum;
}

/// I_nu'(x) = (I_{nu-1}(x) + I_{nu+1}(x)) / 2
inline double bessel_i_prime(double nu, double x) {
    return 0.5 * (bessel_i(nu - 1.0, x) + bessel_i(nu + 1.0, x));
}

/// Gamma-integral closed form: int_0^inf s^p e^{-q s} ds.
inline double gamma_integral(double p, double q) {
    return fyk::gamma_fn(p + 1.0) / std::pow(q, p + 1.0);
}

/// Importance-sampled Monte-Carlo estimate of int_0^inf s^p phi(s)^2 ds,
/// sampling s ~ Gamma(p+1, rate 2), which matches both the s^p endpoint and
/// the e^{-2s} tail of the integrand; the weight phi^2 e^{2s} stays O(1).
/// Deterministic for a fixed seed.
inline double mc_profile_moment(const fyk::SpectralProfile& prof, double p,
                                std::int64_t samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::gamma_distribution<double> proposal(p + 1.0, 0.5);  // rate 2
    const double norm = fyk::gamma_fn(p + 1.0) / std::pow(2.0, p + 1.0);
    double acc = 0.0;
    for (std::int64_t i = 0; i < samples; ++i) {
        const double s = proposal(rng);
        if (s <= 0.0) continue;
        const double ph = prof.phi(s);
        acc += ph * ph * std::exp(2.0 * s);
    }
    return norm * acc / static_cast<double>(samples);
}

/// Fixed-node composite Simpson quadrature on [0,1] after r = u/(1-u); a
/// deliberately different integration method for the minimizer grid-search
/// oracle.
template <typename F>
double simpson_radial(F&& f, int nodes = 4001) {
    const double h = 1.0 / (nodes - 1);
    double acc = 0.0;
    for (int i = 1; i < nodes - 1; ++i) {
        const double u = i * h;
        const double r = u / (1.0 - u);
        const double w = (i % 2 == 1) ? 4.0 : 2.0;
        acc += w * f(r) / ((1.0 - u) * (1.0 - u));
    }
    return acc * h / 3.0;
}

}  // namespace fyk::test

#endif
