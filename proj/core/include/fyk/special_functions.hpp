#ifndef FYK_SPECIAL_FUNCTIONS_HPP
#define FYK_SPECIAL_FUNCTIONS_HPP

#include <string>

#include "fyk/params.hpp"

namespace fyk {

/// Gamma function for real x, x not a nonpositive integer.
/// Lanczos approximation (g = 607/128, 15 terms) with reflection for x < 1/2.
/// Relative error below 1e-13 on the desk range |x| <= 30.
double gamma_fn(double x);

/// Modified Bessel function K_nu(s) for real order |nu| < 2 and s > 0.
/// Even in the order; half-integer orders dispatch to the elementary closed
/// forms. Temme's series is used for s <= 2 (it is the stable nu -> integer
/// limit, so near-integer orders need no special casing) and a Steed
/// continued fraction for s > 2, followed by upward recurrence in the order.
double bessel_k(double nu, double s);

/// d/ds K_nu(s), via K_nu' = -(K_{nu-1} + K_{nu+1})/2.
double bessel_k_prime(double nu, double s);

/// Bessel function J_nu(x) for 0 <= nu <= 10 and 0 < x <= 60.
/// Ascending series (extended precision accumulation) for x <= 16,
/// Hankel's asymptotic expansion beyond.
double bessel_j(double nu, double x);

namespace detail {
// Order-unrestricted kernels used by derivative recurrences and by the
// oscillatory Hankel machinery, which needs J at large arguments.
double bessel_k_core(double nu, double s);
double bessel_j_core(double nu, double x);
// The two evaluation branches individually, for overlap-band validation:
// the series branch is accurate for s <= ~2.5, the continued fraction for
// s >= ~1.5.
double bessel_k_series_branch(double nu, double s);
double bessel_k_cf_branch(double nu, double s);
}  // namespace detail

/// Radial Fourier profile of the extension: phi(s) = c1 * s^gamma * K_gamma(s),
/// normalized so phi(0+) = 1 via c1 = 2^{1-gamma}/Gamma(gamma).
/// Solves phi'' + (a/s) phi' - phi = 0 with a = 1 - 2*gamma, is strictly
/// positive and strictly decreasing, and decays like s^{gamma-1/2} e^{-s}.
class SpectralProfile {
  public:
    enum class Method { SeriesNearZero, AsymptoticLarge, ClosedFormHalf };

    explicit SpectralProfile(const FractionalParams& params);

    double gamma() const { return gamma_; }
    double c1() const { return c1_; }

    /// Evaluation regime used at s (closed form everywhere when gamma = 1/2).
    Method method(double s) const;

    double phi(double s) const;

    /// phi'(s) by the product rule with bessel_k_prime.
    double phi_prime(double s) const;

    /// phi''(s), again through the order recurrences (no finite differences).
    double phi_second(double s) const;

    /// Residual of phi'' + (a/s) phi' - phi at s.
    double ode_residual(double s) const;

  private:
    double gamma_;
    double a_;
    double c1_;
};

SpectralProfile profile(const FractionalParams& params);

}  // namespace fyk

#endif
