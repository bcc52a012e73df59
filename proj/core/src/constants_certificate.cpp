#include "fyk/constants_certificate.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "fyk/bubble_extension.hpp"

namespace fyk {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

bool near_pole(double x, double pole) { return std::fabs(x - pole) < 1e-12; }

}  // namespace

double sphere_volume(double n) {
    return 2.0 * std::pow(kPi, 0.5 * (n + 1.0)) / gamma_fn(0.5 * (n + 1.0));
}

SharpConstants sharp_constants(const FractionalParams& params) {
    const double g = params.gamma;
    const double n = params.n;
    SharpConstants c;
    c.d_gamma = std::pow(2.0, 2.0 * g) * gamma_fn(g) / gamma_fn(-g);
    c.d_star = std::pow(2.0, 2.0 * g - 1.0) * gamma_fn(g) / (g * gamma_fn(-g));
    c.S_n_gamma = gamma_fn(0.5 * (n - 2.0 * g)) / gamma_fn(0.5 * (n + 2.0 * g)) *
                  std::pow(sphere_volume(n), -2.0 * g / n);
    c.Lambda_sphere = 1.0 / c.S_n_gamma;
    return c;
}

double theta(double n, double a) {
    if (near_pole(n, 0.0) || near_pole(n, -2.0) || near_pole(n, 3.0))
        throw std::domain_error("theta: pole at n in {0,-2,3}");
    if (near_pole(a, 3.0) || near_pole(a, -1.0))
        throw std::domain_error("theta: pole at a in {3,-1}");
    const double a2 = a * a, a3 = a2 * a, a4 = a2 * a2;
    const double num =
        15.0 * std::pow(n, 5) - 90.0 * std::pow(n, 4) +
        (-10.0 * a2 + 20.0 * a + 90.0) * std::pow(n, 3) +
        (20.0 * a2 - 40.0 * a + 300.0) * n * n +
        (3.0 * a4 - 12.0 * a3 + 38.0 * a2 - 52.0 * a - 585.0) * n +
        6.0 * (a + 1.0) * (a - 3.0) * (a - 5.0) * (a + 3.0);
    const double den =
        10.0 * n * (n + 2.0) * (n - 3.0) * (3.0 - a) * (a + 1.0);
    return num / den;
}

double theta_horner(double n, double a) {
    if (near_pole(n, 0.0) || near_pole(n, -2.0) || near_pole(n, 3.0))
        throw std::domain_error("theta_horner: pole at n in {0,-2,3}");
    if (near_pole(a, 3.0) || near_pole(a, -1.0))
        throw std::domain_error("theta_horner: pole at a in {3,-1}");
    const double c5 = 15.0;
    const double c4 = -90.0;
    const double c3 = (-10.0 * a + 20.0) * a + 90.0;
    const double c2 = (20.0 * a - 40.0) * a + 300.0;
    const double c1 = (((3.0 * a - 12.0) * a + 38.0) * a - 52.0) * a - 585.0;
    const double c0 =
        6.0 * (((a - 5.0) * (a - 3.0)) * ((a + 1.0) * (a + 3.0)));
    const double num = ((((c5 * n + c4) * n + c3) * n + c2) * n + c1) * n + c0;
    const double den =
        10.0 * n * (n + 2.0) * (n - 3.0) * (3.0 - a) * (a + 1.0);
    return num / den;
}

ThetaScanReport theta_positivity_scan(int n_min, int n_max,
                                      const std::vector<double>& gamma_grid) {
    if (n_min > n_max)
        throw std::domain_error("theta_positivity_scan: empty n range");
    if (n_min <= 3)
        throw std::domain_error("theta_positivity_scan: range must avoid n <= 3");
    ThetaScanReport r;
    r.min_value = std::numeric_limits<double>::infinity();
    auto visit = [&r](double n, double a) {
        const double v = theta(n, a);
        ++r.points_scanned;
        if (v < r.min_value) {
            r.min_value = v;
            r.argmin_n = n;
            r.argmin_a = a;
        }
    };
    for (int n = n_min; n <= n_max; ++n)
        for (int k = -99; k <= 99; ++k) visit(n, k / 100.0);
    for (double g : gamma_grid) {
        const double a = 1.0 - 2.0 * g;
        const double lo = 5.0 + 2.0 * g;
        // smallest multiple of 0.05 strictly above the threshold
        long k0 = static_cast<long>(std::floor(lo / 0.05)) + 1;
        for (long k = k0; k * 0.05 <= n_max + 1e-12; ++k) visit(k * 0.05, a);
    }
    r.all_positive = r.min_value > 0.0;
    return r;
}

SolvabilityCertificate certify(const FractionalParams& params,
                               const CurvatureData& curvature, double tol) {
    if (curvature.weyl_norm_sq < 0.0)
        throw std::invalid_argument("certify: weyl_norm_sq must be >= 0");
    if (curvature.trace_h3.has_value()) {
        const double expect = -3.0 * *curvature.trace_h3;
        const double scale =
            std::max({1.0, std::fabs(expect), std::fabs(curvature.ric_rho_rho_rho)});
        if (std::fabs(curvature.ric_rho_rho_rho - expect) > 1e-9 * scale)
            throw std::invalid_argument(
                "certify: inconsistent curvature data, ric_rho_rho_rho must "
                "equal -3 * trace_h3");
    }

    const double n = params.n;
    const double g = params.gamma;
    const double a = params.a;

    SolvabilityCertificate cert;
    MomentTable table(params, tol);

    const bool j1_finite = n - 4.0 > 2.0 * g - 1.0;
    const bool j2_finite = n - 5.0 > 2.0 * g - 1.0;
    double C0 = 0.0;
    if (j1_finite || j2_finite) C0 = fit_C0(params);

    if (j1_finite) {
        const double J1 = reduce_Jp(table, 1.0, C0);
        cert.mu3_coefficient =
            0.25 * (n - 3.0) * curvature.ric_rho_rho_rho * J1;
    } else {
        cert.mu3_coefficient = std::numeric_limits<double>::quiet_NaN();
    }

    double theta_here = std::numeric_limits<double>::quiet_NaN();
    if (j2_finite) {
        const double J2 = reduce_Jp(table, 2.0, C0);
        theta_here = theta(n, a);  // re-evaluated, never taken from a scan
        cert.mu4_coefficient = -theta_here * curvature.weyl_norm_sq /
                                   (48.0 * (n - 1.0)) * J2 +
                               0.0;  // normalizes -0.0 when |W|^2 = 0
    } else {
        cert.mu4_coefficient = std::numeric_limits<double>::quiet_NaN();
    }

    auto add = [&cert](const std::string& name, bool pass) {
        cert.hypotheses_report.push_back({name, pass});
        return pass;
    };

    const bool h_zero = std::fabs(curvature.mean_curvature_H) <= 1e-12;

    // first-order route: negative mu^3 coefficient
    bool thm1 = true;
    thm1 &= add("umbilic", curvature.umbilic);
    thm1 &= add("mean_curvature_zero", h_zero);
    thm1 &= add("F_trace_zero", curvature.F_trace_zero);
    thm1 &= add("F_rho_derivative_zero", curvature.F_rho_derivative_zero);
    thm1 &= add("F_third_derivative_zero", curvature.F_third_derivative_zero);
    thm1 &= add("n_at_least_5", n >= 5.0);
    thm1 &= add("mu3_moment_finite", j1_finite);
    if (n >= 5.0 && n < 6.0 && j1_finite)
        cert.notes.push_back(
            "n in [5,6): mu^3 moment converges (n > 3 + 2*gamma) although the "
            "finiteness discussion is usually stated for n >= 6");

    // fourth-order route: vanishing odd terms and negative mu^4 coefficient
    const bool odd_terms_vanish =
        h_zero && (!curvature.trace_h3.has_value() || *curvature.trace_h3 == 0.0) &&
        curvature.ric_rho_rho_rho == 0.0;
    bool thm2 = true;
    thm2 &= add("umbilic(thm2)", curvature.umbilic);
    thm2 &= add("h1_h3_vanish", odd_terms_vanish);
    thm2 &= add("n_above_5_plus_2gamma", params.n_above_5_plus_2gamma);
    thm2 &= add("mu4_moment_finite", j2_finite);
    thm2 &= add("weyl_nonzero", curvature.weyl_norm_sq > 0.0);

    const bool mu3_nonzero =
        j1_finite && curvature.ric_rho_rho_rho != 0.0;
    if (mu3_nonzero) {
        // the mu^3 coefficient is the lowest-order nonzero term
        cert.certified = thm1 && cert.mu3_coefficient < 0.0;
        cert.theorem_applied =
            cert.certified ? TheoremApplied::Theorem1 : TheoremApplied::None;
    } else if (j2_finite && thm2 && cert.mu4_coefficient < 0.0) {
        cert.theorem_applied = TheoremApplied::Theorem2;
        cert.certified = true;
    } else {
        cert.theorem_applied = TheoremApplied::None;
        cert.certified = false;
    }
    return cert;
}

}  // namespace fyk
