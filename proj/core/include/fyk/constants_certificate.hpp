#ifndef FYK_CONSTANTS_CERTIFICATE_HPP
#define FYK_CONSTANTS_CERTIFICATE_HPP

#include <optional>
#include <string>
#include <vector>

#include "fyk/moments.hpp"
#include "fyk/params.hpp"

namespace fyk {

/// The sharp constants of the problem:
///   d_gamma  = 2^{2 gamma} Gamma(gamma)/Gamma(-gamma)          (< 0 on (0,1))
///   d*_gamma = 2^{2 gamma - 1} Gamma(gamma)/(gamma Gamma(-gamma))
///   S(n,gamma) = Gamma((n-2 gamma)/2)/Gamma((n+2 gamma)/2) * vol(S^n)^{-2 gamma/n}
///   Lambda = 1/S(n,gamma)   (sharp quotient on the round sphere)
struct SharpConstants {
    double d_gamma = 0.0;
    double d_star = 0.0;
    double S_n_gamma = 0.0;
    double Lambda_sphere = 0.0;
};

SharpConstants sharp_constants(const FractionalParams& params);

/// Volume of the unit n-sphere S^n embedded in R^{n+1}.
double sphere_volume(double n);

/// The rational coefficient of |W|^2 mu^4 in the test-function energy,
///
///           15n^5 - 90n^4 + (-10a^2+20a+90)n^3 + (20a^2-40a+300)n^2
///             + (3a^4-12a^3+38a^2-52a-585)n + 6(a+1)(a-3)(a-5)(a+3)
///   theta = -----------------------------------------------------------
///                     10 n (n+2)(n-3)(3-a)(a+1)
///
/// normalized so that (4-n)I3 - I5 + (n-1+a)I7 = theta(n,a) * int y^{a+2} U1^2.
/// Poles at n in {0,-2,3} and a in {3,-1} are rejected.
double theta(double n, double a);

/// Independent Horner-scheme evaluation of the same rational function
/// (coefficients in n, each a polynomial in a), for cross-checking.
double theta_horner(double n, double a);

struct ThetaScanReport {
    double min_value = 0.0;
    double argmin_n = 0.0;
    double argmin_a = 0.0;
    bool all_positive = false;
    long points_scanned = 0;
};

/// Scans integer n in [n_min, n_max] x a in {-0.99,...,0.99} (step 0.01) and,
/// for each gamma in gamma_grid, real n on a 0.05 grid over (5+2*gamma, n_max]
/// with a = 1-2*gamma. Reports the minimum and whether all values are positive.
ThetaScanReport theta_positivity_scan(int n_min, int n_max,
                                      const std::vector<double>& gamma_grid);

/// Boundary curvature data entering the solvability certificate. All fields
/// are inputs; the consistency relation ric_rho_rho_rho = -3 trace_h3 is
/// validated when trace_h3 is supplied.
struct CurvatureData {
    bool umbilic = false;
    double mean_curvature_H = 0.0;
    bool F_trace_zero = false;
    bool F_rho_derivative_zero = false;
    bool F_third_derivative_zero = false;
    double ric_rho_rho_rho = 0.0;
    double weyl_norm_sq = 0.0;
    std::optional<double> trace_h3;
};

struct HypothesisResult {
    std::string name;
    bool pass = false;
};

enum class TheoremApplied { None, Theorem1, Theorem2 };

/// Energy-coefficient certificate: the mu^3 coefficient is
/// ((n-3)/4) ric_rho_rho_rho * J1 and the mu^4 coefficient is
/// -theta(n,a) |W|^2 /(48(n-1)) * J2. The verdict is certified exactly when
/// the lowest-order nonzero coefficient is negative and every hypothesis of
/// the applied theorem passes.
struct SolvabilityCertificate {
    TheoremApplied theorem_applied = TheoremApplied::None;
    double mu3_coefficient = 0.0;
    double mu4_coefficient = 0.0;
    std::vector<HypothesisResult> hypotheses_report;
    std::vector<std::string> notes;
    bool certified = false;

    std::string verdict() const {
        return certified ? "strict-inequality-certified" : "not-certified";
    }
};

SolvabilityCertificate certify(const FractionalParams& params,
                               const CurvatureData& curvature,
                               double tol = 1e-10);

}  // namespace fyk

#endif
