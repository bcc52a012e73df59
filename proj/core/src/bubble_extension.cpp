#include "fyk/bubble_extension.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <stdexcept>
#include <string>

namespace fyk {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

// McMahon's expansion for the k-th zero of J_nu, refined by bisection/secant.
double bessel_j_zero_uncached(double nu, int k) {
    const double m4 = 4.0 * nu * nu;
    const double beta = (k + 0.5 * nu - 0.25) * kPi;
    double z = beta - (m4 - 1.0) / (8.0 * beta) -
               4.0 * (m4 - 1.0) * (7.0 * m4 - 31.0) /
                   (3.0 * std::pow(8.0 * beta, 3));
    // bracket and refine
    double lo = z - 0.45 * kPi, hi = z + 0.45 * kPi;
    if (lo <= 0.0) lo = 0.5 * z;
    double flo = detail::bessel_j_core(nu, lo);
    double fhi = detail::bessel_j_core(nu, hi);
    // widen if McMahon was off (only relevant for the first zeros)
    for (int tries = 0; flo * fhi > 0.0 && tries < 8; ++tries) {
        lo = std::max(0.25 * lo, 1e-8);
        hi += 0.5 * kPi;
        flo = detail::bessel_j_core(nu, lo);
        fhi = detail::bessel_j_core(nu, hi);
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = detail::bessel_j_core(nu, mid);
        if (fm == 0.0) return mid;
        if (flo * fm < 0.0) {
            hi = mid;
            fhi = fm;
        } else {
            lo = mid;
            flo = fm;
        }
        if (hi - lo < 1e-12 * hi) break;
    }
    return 0.5 * (lo + hi);
}

double d_star_abs(double g) {
    return std::fabs(std::pow(2.0, 2.0 * g - 1.0) * gamma_fn(g) /
                     (g * gamma_fn(-g)));
}

// int_0^inf t^{n-4} K_gamma(t) K_{gamma+1}(t) dt
double cross_k_moment(const FractionalParams& params, double n, double tol) {
    const double g = params.gamma;
    IntegrandSpec spec;
    spec.f = [g, n](double t) {
        return std::pow(t, n - 4.0) * detail::bessel_k_core(g, t) *
               detail::bessel_k_core(g + 1.0, t);
    };
    spec.endpoint_exponent_at_zero = n - 5.0 - 2.0 * g;
    spec.decay_rate = 2.0;
    return integrate_semi_infinite(spec, tol).value;
}

// int_0^inf s^p phi'(s) phi''(s) ds
double d_phi_moment(const SpectralProfile& prof, double p, double gamma,
                    double tol) {
    IntegrandSpec spec;
    spec.f = [&prof, p](double s) {
        return std::pow(s, p) * prof.phi_prime(s) * prof.phi_second(s);
    };
    spec.endpoint_exponent_at_zero = p + 4.0 * gamma - 3.0;
    spec.decay_rate = 2.0;
    return integrate_semi_infinite(spec, tol).value;
}

// int_0^inf s^p phi''(s)^2 ds
double e_phi_moment(const SpectralProfile& prof, double p, double gamma,
                    double tol) {
    IntegrandSpec spec;
    spec.f = [&prof, p](double s) {
        const double dd = prof.phi_second(s);
        return std::pow(s, p) * dd * dd;
    };
    spec.endpoint_exponent_at_zero = p + 4.0 * gamma - 4.0;
    spec.decay_rate = 2.0;
    return integrate_semi_infinite(spec, tol).value;
}

ValueCheck make_check(double numeric, double closed) {
    ValueCheck v;
    v.numeric = numeric;
    v.closed_form = closed;
    v.rel_err = std::fabs(numeric - closed) /
                std::max(std::fabs(closed), 1e-300);
    return v;
}

}  // namespace

double sphere_area(double n) {
    return 2.0 * std::pow(kPi, 0.5 * n) / gamma_fn(0.5 * n);
}

double bessel_j_zero(double nu, int k) {
    if (k < 1) throw std::domain_error("bessel_j_zero: requires k >= 1");
    static thread_local std::map<double, std::vector<double>> cache;
    auto& zeros = cache[nu];
    while (static_cast<int>(zeros.size()) < k)
        zeros.push_back(
            bessel_j_zero_uncached(nu, static_cast<int>(zeros.size()) + 1));
    return zeros[k - 1];
}

double hankel_radial_transform(double n, double mu_exp, double zeta,
                               double tol) {
    if (!(zeta > 0.0))
        throw std::domain_error("hankel_radial_transform: requires zeta > 0");
    const double nu = 0.5 * n - 1.0;
    auto f = [n, mu_exp, zeta, nu](double r) {
        return std::pow(r, 0.5 * n) * detail::bessel_j_core(nu, zeta * r) *
               std::pow(1.0 + r * r, -mu_exp);
    };

    const double seg_tol = 0.05 * tol;
    // head: up to the first zero of the oscillating factor
    double r_prev = bessel_j_zero(nu, 1) / zeta;
    double total = integrate_finite(f, 0.0, r_prev, seg_tol, 1e-15).value;

    EulerAccelerator acc;
    double accelerated = total;
    double last = accelerated;
    int stable = 0;
    const int max_segments = 600;
    for (int k = 2; k <= max_segments + 1; ++k) {
        const double r_next = bessel_j_zero(nu, k) / zeta;
        const double seg =
            integrate_finite(f, r_prev, r_next, seg_tol, 1e-16).value;
        accelerated = total + acc.add(seg);
        r_prev = r_next;
        if (std::fabs(accelerated - last) <=
            std::max(tol * std::fabs(accelerated), 1e-15))
            ++stable;
        else
            stable = 0;
        last = accelerated;
        if (stable >= 4 && acc.terms() >= 12) break;
        if (k == max_segments + 1)
            throw AccuracyError(
                "hankel_radial_transform: oscillatory tail failed to converge",
                QuadratureEstimate{std::pow(zeta, 1.0 - 0.5 * n) * accelerated,
                                   std::fabs(accelerated - last),
                                   acc.terms()});
    }
    return std::pow(zeta, 1.0 - 0.5 * n) * accelerated;
}

FourierCheckResult fit_radial_transform(double n, double mu_exp,
                                        const std::vector<double>& zeta_grid,
                                        double tol) {
    if (zeta_grid.empty())
        throw std::domain_error("fit_radial_transform: empty zeta grid");
    const double nu = 0.5 * n - mu_exp;
    FourierCheckResult result;
    result.points.reserve(zeta_grid.size());
    double num = 0.0, den = 0.0;
    for (double z : zeta_grid) {
        FourierFitPoint pt;
        pt.zeta = z;
        pt.transform = hankel_radial_transform(n, mu_exp, z, tol);
        pt.model = std::pow(z, -nu) * detail::bessel_k_core(nu, z);
        num += pt.transform * pt.model;
        den += pt.model * pt.model;
        result.points.push_back(pt);
    }
    result.C0 = num / den;
    for (const auto& pt : result.points) {
        const double dev = std::fabs(pt.transform / (result.C0 * pt.model) - 1.0);
        result.max_rel_deviation = std::max(result.max_rel_deviation, dev);
    }
    return result;
}

FourierCheckResult verify_appendix_fourier(const FractionalParams& params,
                                           const std::vector<double>& zeta_grid,
                                           double tol) {
    return fit_radial_transform(params.n, 0.5 * (params.n - 2.0 * params.gamma),
                                zeta_grid, tol);
}

std::vector<double> default_zeta_grid() {
    return {0.4, 0.7, 1.0, 1.5, 2.2, 3.0, 4.0, 5.5};
}

double fit_C0(const FractionalParams& params, double tol) {
    return verify_appendix_fourier(params, default_zeta_grid(), tol).C0;
}

double BubbleFamily::w(double r) const {
    return std::pow(mu / (r * r + mu * mu), 0.5 * (params.n - 2.0 * params.gamma));
}

BubbleFamily BubbleFamily::make(const FractionalParams& params, double mu) {
    if (!(mu > 0.0)) throw std::domain_error("BubbleFamily: requires mu > 0");
    BubbleFamily b;
    b.params = params;
    b.mu = mu;
    b.C0 = fit_C0(params);
    return b;
}

double reduce_Jp(MomentTable& table, double p, double C0, double mu) {
    const FractionalParams& params = table.params();
    const double n = params.n;
    const double g = params.gamma;
    const double a = params.a;
    if (!(n - 3.0 - p > 2.0 * g - 1.0))
        throw std::domain_error(
            "J_" + std::to_string(static_cast<int>(p)) +
            " diverges: requires n - 3 - p > 2*gamma - 1 (n - 4 - 2*gamma > -1 "
            "at p = 1)");
    const double area = sphere_area(n);
    if (mu == 1.0)
        return table.a(p + a) * area * C0 * C0 * table.m(n - 3.0 - p);

    IntegrandSpec spec;
    spec.f = [g, n, p, mu](double t) {
        const double k = detail::bessel_k_core(g, mu * t);
        return std::pow(t, n - 3.0 - p) * k * k;
    };
    spec.endpoint_exponent_at_zero = n - 3.0 - p - 2.0 * g;
    spec.decay_rate = 2.0 * mu;
    const double scaled_m = integrate_semi_infinite(spec, table.tolerance()).value;
    return table.a(p + a) * area * C0 * C0 * std::pow(mu, n) * scaled_m;
}

AngularMoments angular_moments(double n) {
    if (!(n >= 2.0)) throw std::domain_error("angular_moments: requires n >= 2");
    AngularMoments am;
    am.xi2_over_zeta2 = 1.0 / n;
    am.xi4_over_zeta4 = 3.0 / (n * (n + 2.0));
    am.xi2eta2_over_zeta4 = 1.0 / (n * (n + 2.0));
    return am;
}

AngularMoments angular_moments_mc(int n, std::int64_t samples,
                                  std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    // symmetrized estimators: average z_j^4/|z|^4 over all coordinates, and
    // use sum_{j!=k} z_j^2 z_k^2 = |z|^4 - sum_j z_j^4 for the pair average
    double s2 = 0.0, s4 = 0.0;
    std::vector<double> z(n);
    for (std::int64_t i = 0; i < samples; ++i) {
        double norm2 = 0.0;
        for (int j = 0; j < n; ++j) {
            z[j] = normal(rng);
            norm2 += z[j] * z[j];
        }
        double quart = 0.0;
        for (int j = 0; j < n; ++j) {
            const double u = z[j] * z[j] / norm2;
            quart += u * u;
        }
        s2 += z[0] * z[0] / norm2;
        s4 += quart;
    }
    const double mean_q = s4 / samples;  // E sum_j xi_j^4 = n <xi^4>
    AngularMoments am;
    am.xi2_over_zeta2 = s2 / samples;
    am.xi4_over_zeta4 = mean_q / n;
    am.xi2eta2_over_zeta4 =
        (1.0 - mean_q) / (static_cast<double>(n) * (n - 1));
    return am;
}

HDecomposition compute_H(MomentTable& table, double C0) {
    const FractionalParams& params = table.params();
    const double n = params.n;
    const double g = params.gamma;
    const double a = params.a;
    if (!params.n_above_4_plus_2gamma)
        throw std::domain_error("compute_H: requires n > 4 + 2*gamma");

    const double area = sphere_area(n);
    const double c2 = C0 * C0;
    const double J2 = table.a(a + 2.0) * area * c2 * table.m(n - 5.0);
    const double ang4 = 3.0 / (n * (n + 2.0));

    const KprimeMoment kp = kprime_moment(table, n);
    const double n2 = cross_k_moment(params, n, table.tolerance());

    HDecomposition h;
    {
        const double raw = ang4 * table.a(a + 2.0) * area * c2 * kp.direct;
        const double closed =
            3.0 / (n * (n + 2.0)) *
            ((n - 2.0) * (n - 5.0 + a) * (n - 3.0 - a) / (4.0 * (n - 3.0)) +
             g * (n - 4.0) + 2.0 * g * g) *
            J2;
        h.H1 = make_check(raw, closed);
    }
    {
        const double raw = -2.0 * ang4 * table.c(a + 3.0) * area * c2 * n2;
        const double closed =
            3.0 * (n - a - 3.0) * (a + 3.0) / (2.0 * n * (n + 2.0)) * J2;
        h.H2 = make_check(raw, closed);
    }
    {
        const double raw = ang4 * table.b(a + 4.0) * area * c2 * table.m(n - 5.0);
        const double closed =
            3.0 * (a + 5.0) * (a + 3.0) / (5.0 * n * (n + 2.0)) * J2;
        h.H3 = make_check(raw, closed);
    }
    h.sum = h.H1.numeric + h.H2.numeric + h.H3.numeric;
    return h;
}

ExtensionIntegrals compute_I(MomentTable& table, double C0, bool validate) {
    const FractionalParams& params = table.params();
    const double n = params.n;
    const double g = params.gamma;
    const double a = params.a;
    if (!params.n_above_4_plus_2gamma)
        throw std::domain_error("compute_I: requires n > 4 + 2*gamma");

    const SpectralProfile prof(params);
    const double area = sphere_area(n);
    const double c2 = C0 * C0;
    const double tol = table.tolerance();

    // phi-side moments
    const double A_a = table.a(a);
    const double A_a2 = table.a(a + 2.0);
    const double A_a4 = table.a(a + 4.0);
    const double B_a2 = table.b(a + 2.0);
    const double B_a4 = table.b(a + 4.0);
    const double C_a1 = table.c(a + 1.0);
    const double C_a3 = table.c(a + 3.0);
    const double D_a3 = d_phi_moment(prof, a + 3.0, g, tol);
    const double E_a4 = e_phi_moment(prof, a + 4.0, g, tol);

    // K-side moments
    const double M5 = table.m(n - 5.0);
    const double N1 = kprime_moment(table, n).direct;  // int t^{n-3} K_{g+1}^2
    const double N2 = cross_k_moment(params, n, tol);  // int t^{n-4} K_g K_{g+1}

    const double J2 = A_a2 * area * c2 * M5;
    const double ang = 1.0 / (n * (n + 2.0));

    ExtensionIntegrals out;
    out.J2 = J2;
    if (n - 4.0 > 2.0 * g - 1.0) {
        out.J1_finite = true;
        out.J1 = table.a(a + 1.0) * area * c2 * table.m(n - 4.0);
    } else {
        out.J1 = std::numeric_limits<double>::quiet_NaN();
    }

    // Fourier reductions: angular average x 1-D moment products.
    const double I2_raw = ang * (A_a2 * N1 - 2.0 * C_a3 * N2 + B_a4 * M5) * area * c2;
    const double I4_raw = A_a4 * area * c2 * M5;
    const double I5_raw =
        (B_a2 * (M5 - 2.0 * N2 + N1) + 2.0 * D_a3 * (M5 - N2) + E_a4 * M5) *
        area * c2 / n;
    const double I6_raw = B_a4 * area * c2 * M5;
    const double I7_raw =
        (A_a * N1 - 2.0 * C_a1 * N2 + B_a2 * M5) * area * c2 / n;

    // closed forms, in units of J2
    const double I3_closed =
        (5.0 * std::pow(n, 3) - 10.0 * n * n - (a * a - 2.0 * a + 25.0) * n -
         2.0 * a * a + 4.0 * a + 30.0) /
        (20.0 * n * (n + 2.0) * (n - 3.0)) * J2;
    const double I4_closed = (a + 3.0) * (5.0 - a) / 5.0 * J2;
    const double I5_closed =
        (3.0 + a) / (20.0 * n * (3.0 - a) * (n - 3.0)) *
        (5.0 * std::pow(n, 3) - 30.0 * n * n - (a * a + 2.0 * a - 55.0) * n -
         2.0 * a * a + 16.0 * a - 30.0) *
        J2;
    const double I6_closed = (a + 5.0) * (a + 3.0) / 5.0 * J2;
    const double I7_closed =
        (3.0 * n * n - 18.0 * n - (a * a - 2.0 * a - 27.0)) /
        (2.0 * (n - 3.0) * (3.0 - a) * (a + 1.0)) * J2;

    out.I1 = make_check(3.0 * I2_raw, 3.0 * I3_closed);
    out.I2 = make_check(I2_raw, I3_closed);
    out.I3 = make_check(I2_raw, I3_closed);
    out.I4 = make_check(I4_raw, I4_closed);
    out.I5 = make_check(I5_raw, I5_closed);
    out.I6 = make_check(I6_raw, I6_closed);
    out.I7 = make_check(I7_raw, I7_closed);

    const HDecomposition h = compute_H(table, C0);
    out.H1 = h.H1;
    out.H2 = h.H2;
    out.H3 = h.H3;

    if (validate) {
        const ValueCheck* checks[] = {&out.I1, &out.I2, &out.I3, &out.I4,
                                      &out.I5, &out.I6, &out.I7};
        const char* names[] = {"I1", "I2", "I3", "I4", "I5", "I6", "I7"};
        double worst = 0.0;
        const char* worst_name = nullptr;
        for (int i = 0; i < 7; ++i) {
            if (checks[i]->rel_err > worst) {
                worst = checks[i]->rel_err;
                worst_name = names[i];
            }
        }
        if (worst > 1e-6)
            throw AccuracyError(
                std::string("compute_I: worst integral ") + worst_name +
                    " relative error " + std::to_string(worst),
                QuadratureEstimate{0.0, worst, 0});
        const double sum_dev = std::fabs(h.sum - out.I1.numeric) /
                               std::fabs(out.I1.numeric);
        if (sum_dev > 1e-6)
            throw AccuracyError(
                "compute_I: H1+H2+H3 deviates from I1 by relative " +
                    std::to_string(sum_dev),
                QuadratureEstimate{h.sum, sum_dev, 0});
    }
    return out;
}

ExtensionIntegrals compute_I(const FractionalParams& params, double tol,
                             bool validate) {
    MomentTable table(params, tol);
    return compute_I(table, fit_C0(params), validate);
}

namespace {

// int_0^inf r^{n-1} (r^2+y^2)^{-beta} dr with 2 beta = n + 2 gamma; the tail
// decays like r^{-1-2 gamma}, so split at r = y and map the tail through
// r = y w^{-1/(2 gamma)}, which makes both pieces smooth and bounded.
double poisson_radial_integral(double n, double beta, double y, double tol) {
    const double two_gamma = 2.0 * beta - n;
    auto f_head = [n, beta, y](double r) {
        return std::pow(r, n - 1.0) * std::pow(r * r + y * y, -beta);
    };
    const double head = integrate_finite(f_head, 0.0, y, 0.5 * tol).value;
    auto f_tail = [n, beta, y, two_gamma](double w) {
        const double r = y * std::pow(w, -1.0 / two_gamma);
        // r^{n-1-2 beta} (1 + (y/r)^2)^{-beta} * dr/dw, grouped for large r
        const double yr = y / r;
        return std::pow(r, -1.0 - two_gamma) *
               std::pow(1.0 + yr * yr, -beta) * (y / two_gamma) *
               std::pow(w, -1.0 / two_gamma - 1.0);
    };
    const double tail = integrate_finite(f_tail, 0.0, 1.0, 0.5 * tol).value;
    return head + tail;
}

}  // namespace

double poisson_kernel_mass_constant(const FractionalParams& params, double tol) {
    const double n = params.n;
    const double beta = 0.5 * (n + 1.0 - params.a);
    const double radial = poisson_radial_integral(n, beta, 1.0, tol);
    return 1.0 / (sphere_area(n) * radial);
}

double extension_of_one(const FractionalParams& params, double c_kernel,
                        double y, double tol) {
    if (!(y > 0.0)) throw std::domain_error("extension_of_one: requires y > 0");
    const double n = params.n;
    const double beta = 0.5 * (n + 1.0 - params.a);
    const double radial = poisson_radial_integral(n, beta, y, tol);
    return c_kernel * std::pow(y, 1.0 - params.a) * sphere_area(n) * radial;
}

}  // namespace fyk
