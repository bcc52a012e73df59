#ifndef FYK_QUADRATURE_HPP
#define FYK_QUADRATURE_HPP

#include <functional>
#include <stdexcept>
#include <vector>

namespace fyk {

struct QuadratureEstimate {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    int intervals_used = 0;
};

/// Integrand on (0, inf) together with the analytic facts the substitutions
/// need: the power p of the (integrable) algebraic behavior s^p near 0
/// (p > -1), and the exponential decay rate q (f ~ e^{-q s} up to powers).
struct IntegrandSpec {
    std::function<double(double)> f;
    double endpoint_exponent_at_zero = 0.0;
    double decay_rate = 1.0;
};

/// Raised when the panel budget is exhausted before the tolerance is met.
/// Carries the best estimate obtained so far.
class AccuracyError : public std::runtime_error {
  public:
    AccuracyError(const std::string& what, QuadratureEstimate best)
        : std::runtime_error(what), best_estimate(best) {}
    QuadratureEstimate best_estimate;
};

/// Adaptive Gauss-Kronrod 15 on [lo, hi]; bisects the worst panel until the
/// summed error estimate meets max(tol*|value|, abs_floor), within a budget
/// of 2^14 panels. Endpoints are never evaluated.
QuadratureEstimate integrate_finite(const std::function<double(double)>& f,
                                    double lo, double hi, double tol,
                                    double abs_floor = 1e-14);

/// Integral over (0, inf). Splits at s = 1; on [0,1] the substitution
/// s = u^{1/(1+p)} removes the endpoint power, on [1,inf) the substitution
/// s = 1 - ln(v)/q turns exponential decay into a bounded integrand on (0,1].
QuadratureEstimate integrate_semi_infinite(const IntegrandSpec& spec, double tol,
                                           double abs_floor = 1e-14);

/// Accelerated summation of an alternating series by Euler's transformation.
/// Feed signed terms in order; estimate() returns the current accelerated sum.
class EulerAccelerator {
  public:
    double add(double term);
    double estimate() const { return sum_; }
    int terms() const { return count_; }

  private:
    std::vector<double> wksp_;
    int nterm_ = 0;
    int count_ = 0;
    double sum_ = 0.0;
};

}  // namespace fyk

#endif
