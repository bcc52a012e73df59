#ifndef FYK_MODEL_GEOMETRY_HPP
#define FYK_MODEL_GEOMETRY_HPP

#include <array>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "fyk/params.hpp"

namespace fyk {

/// Exact rational number over int64 (canonical form, positive denominator).
/// The model-metric coefficients are tiny, so no overflow guarding beyond
/// normalization is needed.
struct Rat {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rat() = default;
    Rat(std::int64_t n) : num(n), den(1) {}
    Rat(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw std::domain_error("Rat: zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    double to_double() const {
        return static_cast<double>(num) / static_cast<double>(den);
    }

    friend Rat operator+(Rat x, Rat y) {
        return Rat(x.num * y.den + y.num * x.den, x.den * y.den);
    }
    friend Rat operator-(Rat x, Rat y) {
        return Rat(x.num * y.den - y.num * x.den, x.den * y.den);
    }
    friend Rat operator*(Rat x, Rat y) { return Rat(x.num * y.num, x.den * y.den); }
    friend Rat operator/(Rat x, Rat y) {
        if (y.num == 0) throw std::domain_error("Rat: division by zero");
        return Rat(x.num * y.den, x.den * y.num);
    }
    friend Rat operator-(Rat x) { return Rat(-x.num, x.den); }
    friend bool operator==(Rat x, Rat y) {
        return x.num == y.num && x.den == y.den;
    }
    friend bool operator!=(Rat x, Rat y) { return !(x == y); }
};

enum class BoundaryType { RoundSphere, FlatTorus };

/// Warped-product model metric over a space form: h_rho = f(rho)^2 * h_hat on
/// an n-dimensional boundary, with f a quartic polynomial in rho, f(0) = 1.
/// For these models every curvature entering the normal-form identities is a
/// scalar multiple of h_hat, so the identities reduce to exact rational
/// relations between the warp coefficients.
struct ModelMetric {
    BoundaryType boundary_type = BoundaryType::FlatTorus;
    int n = 0;                     // boundary dimension
    Rat boundary_scalar_R;         // n(n-1) round, 0 flat
    Rat boundary_ricci_coefficient;  // Ric[h_hat] = c * h_hat: n-1 round, 0 flat
    std::array<Rat, 5> warp_series;  // f coefficients, warp_series[0] == 1

    /// Coefficients of F = f^2 through rho^4; h^{(k)} = F_k * h_hat.
    std::array<Rat, 5> metric_series() const;

    Rat h_coefficient(int k) const { return metric_series()[k]; }
    Rat trace_h(int k) const { return Rat(n) * metric_series()[k]; }

    /// Coefficients of det(h_rho)/det(h_hat) = f^{2n} through rho^4.
    std::array<Rat, 5> det_series() const;

    double f(double rho) const;
    double f_prime(double rho) const;

    static ModelMetric hyperbolic_ball(int n);        // f = 1 - rho^2/4, round S^n
    static ModelMetric hyperbolic_half_space(int n);  // f = 1, flat torus
    static ModelMetric custom(BoundaryType type, int n,
                              const std::array<Rat, 5>& warp_series);
};

struct ExpansionRow {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double abs_err = 0.0;
    bool exact = false;  // set when both sides were compared in rational arithmetic
};

struct ExpansionReport {
    std::vector<ExpansionRow> rows;
    double max_abs_err() const {
        double m = 0.0;
        for (const auto& r : rows) m = std::max(m, r.abs_err);
        return m;
    }
};

/// Max over the grid of the normal-form ODE residual (per h_hat component)
///   rho F'' + (1-2n) F' + ((n-2)/2) rho F'^2/F - 2 rho c,
/// which is identically zero for the exact hyperbolic models.
double fg_residual(const ModelMetric& model, const std::vector<double>& rho_grid);

/// Second-order coefficient identities (require f1 = 0):
///   trace h^{(2)} = R[h_hat]/(2(1-n))
///   h^{(2)} = (R[h_hat] h_hat + 2(1-n) Ric[h_hat]) / (2(n-2)(n-1))
ExpansionReport verify_h2_formulas(const ModelMetric& model);

/// Fourth-order trace identity (requires f1 = 0):
///   trace h^{(4)} = (d^2/drho^2[h_hat^{ij} Ric_ij[h_rho]]|_0
///                    - 2(n-2) |h^{(2)}|^2) / (8(2-n));
/// for warped space forms Ric[h_rho] = Ric[h_hat] is rho-independent, so the
/// first numerator term vanishes identically.
ExpansionReport verify_h4_trace(const ModelMetric& model);

/// Term-by-term comparison of det(h_rho)/det(h_hat) with
///   1 + tr h2 rho^2 + tr h3 rho^3
///     + (tr h4 + (tr h2)^2/2 - |h2|^2/2) rho^4   (for f1 = 0 models).
ExpansionReport verify_det_expansion(const ModelMetric& model);

struct ERhoExpansion {
    std::vector<double> rho;
    std::vector<double> value;      // E(rho)
    double fitted_slope = 0.0;      // log-log slope, expected a
    double fitted_prefactor = 0.0;  // E(rho)/rho^a extrapolated to 0
    double expected_prefactor = 0.0;  // -((n-1+a)/2) trace h^{(2)}
    bool identically_zero = false;
};

/// Leading behavior of E(rho) = -((n-1+a)/4) rho^{a-1} d/drho[det h_rho]/det h_rho
/// on the grid (requires f1 = 0).
ERhoExpansion e_rho_expansion(const ModelMetric& model,
                              const std::vector<double>& rho_grid,
                              const FractionalParams& params);

/// Conformal covariance of the third-order trace for constant rescalings
/// h_hat -> e^{2 w0} h_hat: trace_h h^{(3)} = e^{3 w0} trace_h~ h~^{(3)}
/// (both vanish for space-form models), together with the consistency
/// relation Ric_rho_rho,rho = -3 trace h^{(3)}.
ExpansionReport conformal_trace_h3(const ModelMetric& model, double w0);

}  // namespace fyk

#endif
