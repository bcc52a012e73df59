#ifndef FYK_PARAMS_HPP
#define FYK_PARAMS_HPP

#include <stdexcept>

namespace fyk {

/// Parameter bundle for the fractional problem: dimension n and order
/// gamma in (0,1), with the derived quantities used throughout.
///
///   a  = 1 - 2*gamma          (extension weight exponent, in (-1,1))
///   s  = n/2 + gamma          (spectral parameter)
///   2* = 2n/(n - 2*gamma)     (critical trace exponent)
struct FractionalParams {
    double n = 0.0;
    double gamma = 0.0;
    double a = 0.0;
    double s = 0.0;
    double two_star = 0.0;
    bool n_above_4_plus_2gamma = false;
    bool n_above_5_plus_2gamma = false;

    static FractionalParams make(double n, double gamma) {
        if (!(gamma > 0.0 && gamma < 1.0))
            throw std::domain_error("FractionalParams: gamma must lie in (0,1)");
        if (!(n >= 2.0))
            throw std::domain_error("FractionalParams: n must be >= 2");
        if (!(n > 2.0 * gamma))
            throw std::domain_error("FractionalParams: need n > 2*gamma");
        FractionalParams p;
        p.n = n;
        p.gamma = gamma;
        p.a = 1.0 - 2.0 * gamma;
        p.s = 0.5 * n + gamma;
        p.two_star = 2.0 * n / (n - 2.0 * gamma);
        p.n_above_4_plus_2gamma = n > 4.0 + 2.0 * gamma;
        p.n_above_5_plus_2gamma = n > 5.0 + 2.0 * gamma;
        return p;
    }
};

}  // namespace fyk

#endif
