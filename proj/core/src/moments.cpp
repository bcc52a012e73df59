#include "fyk/moments.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fyk {

namespace {

std::string cond(const char* name, double p, const char* req) {
    return std::string(name) + " at exponent " + std::to_string(p) +
           " diverges: requires " + req;
}

}  // namespace

MomentTable::MomentTable(const FractionalParams& params, double tol)
    : params_(params), profile_(params), tol_(tol) {
    if (!(tol > 0.0)) throw std::domain_error("MomentTable: requires tol > 0");
}

void MomentTable::set_tolerance(double tol) {
    if (!(tol > 0.0)) throw std::domain_error("MomentTable: requires tol > 0");
    tol_ = tol;
    a_.clear();
    b_.clear();
    c_.clear();
    m_.clear();
}

const QuadratureEstimate& MomentTable::a_moment(double p) {
    if (auto it = a_.find(p); it != a_.end()) return it->second;
    if (!(p > -1.0))
        throw std::domain_error(cond("A-moment", p, "p > -1"));
    IntegrandSpec spec;
    spec.f = [this, p](double s) {
        const double ph = profile_.phi(s);
        return std::pow(s, p) * ph * ph;
    };
    spec.endpoint_exponent_at_zero = p;  // phi(0+) = 1
    spec.decay_rate = 2.0;
    return a_.emplace(p, integrate_semi_infinite(spec, tol_)).first->second;
}

const QuadratureEstimate& MomentTable::b_moment(double p) {
    if (auto it = b_.find(p); it != b_.end()) return it->second;
    const double g = params_.gamma;
    if (!(p + 4.0 * g - 2.0 > -1.0))
        throw std::domain_error(cond("B-moment", p, "p + 4*gamma - 2 > -1"));
    IntegrandSpec spec;
    spec.f = [this, p](double s) {
        const double dp = profile_.phi_prime(s);
        return std::pow(s, p) * dp * dp;
    };
    spec.endpoint_exponent_at_zero = p + 4.0 * g - 2.0;  // phi' ~ s^{2g-1}
    spec.decay_rate = 2.0;
    return b_.emplace(p, integrate_semi_infinite(spec, tol_)).first->second;
}

const QuadratureEstimate& MomentTable::c_moment(double p) {
    if (auto it = c_.find(p); it != c_.end()) return it->second;
    const double g = params_.gamma;
    if (!(p + 2.0 * g - 1.0 > -1.0))
        throw std::domain_error(cond("C-moment", p, "p + 2*gamma - 1 > -1"));
    IntegrandSpec spec;
    spec.f = [this, p](double s) {
        return std::pow(s, p) * profile_.phi(s) * profile_.phi_prime(s);
    };
    spec.endpoint_exponent_at_zero = p + 2.0 * g - 1.0;
    spec.decay_rate = 2.0;
    return c_.emplace(p, integrate_semi_infinite(spec, tol_)).first->second;
}

const QuadratureEstimate& MomentTable::m_moment(double q) {
    if (auto it = m_.find(q); it != m_.end()) return it->second;
    const double g = params_.gamma;
    if (!(q > 2.0 * g - 1.0 && q > -1.0))
        throw std::domain_error(
            cond("M-moment", q, "q > 2*gamma - 1 and q > -1"));
    IntegrandSpec spec;
    spec.f = [g, q](double t) {
        const double k = bessel_k(g, t);
        return std::pow(t, q) * k * k;
    };
    spec.endpoint_exponent_at_zero = q - 2.0 * g;
    spec.decay_rate = 2.0;
    return m_.emplace(q, integrate_semi_infinite(spec, tol_)).first->second;
}

MomentTable build_moments(const FractionalParams& params,
                          const std::vector<double>& a_exponents,
                          const std::vector<double>& b_exponents,
                          const std::vector<double>& c_exponents,
                          const std::vector<double>& m_exponents, double tol) {
    MomentTable table(params, tol);
    for (double p : a_exponents) table.a_moment(p);
    for (double p : b_exponents) table.b_moment(p);
    for (double p : c_exponents) table.c_moment(p);
    for (double q : m_exponents) table.m_moment(q);
    return table;
}

IdentityCheck make_identity_check(double lhs, double rhs) {
    IdentityCheck chk;
    chk.lhs = lhs;
    chk.rhs = rhs;
    const double scale = std::max(std::fabs(rhs), std::fabs(lhs));
    chk.rel_err = scale > 0.0 ? std::fabs(lhs - rhs) / scale
                              : std::fabs(lhs - rhs);
    return chk;
}

IdentityCheck verify_energy_shift_identity(MomentTable& table) {
    const double a = table.params().a;
    const double lhs = table.a(a + 3.0) + table.b(a + 3.0);
    const double rhs = 1.5 * (a + 2.0) * table.a(a + 1.0);
    return make_identity_check(lhs, rhs);
}

IdentityCheck verify_derivative_ratio_identity(MomentTable& table) {
    const double a = table.params().a;
    const double lhs = table.b(a + 2.0);
    const double rhs = (3.0 + a) / (3.0 - a) * table.a(a + 2.0);
    return make_identity_check(lhs, rhs);
}

IdentityCheck verify_derivative_fourth_identity(MomentTable& table) {
    const double a = table.params().a;
    const double lhs = table.b(a + 4.0);
    const double rhs = (a + 5.0) * (a + 3.0) / 5.0 * table.a(a + 2.0);
    return make_identity_check(lhs, rhs);
}

IdentityCheck verify_profile_fourth_identity(MomentTable& table) {
    const double a = table.params().a;
    const double lhs = table.a(a + 4.0);
    const double rhs = (a + 3.0) * (5.0 - a) / 5.0 * table.a(a + 2.0);
    return make_identity_check(lhs, rhs);
}

IdentityCheck verify_dimension_recursion_identity(MomentTable& table, double n) {
    const double a = table.params().a;
    const double g = table.params().gamma;
    if (!(n > 4.0))
        throw std::domain_error("dimension recursion identity: requires n > 4");
    if (!(n > 4.0 + 2.0 * g))
        throw std::domain_error(
            "dimension recursion identity: requires n > 4 + 2*gamma");
    const double lhs = table.a(n - 4.0 + a);
    const double rhs = (n - 4.0) * (n - 5.0 + a) * (n - 3.0 - a) /
                       (4.0 * (n - 3.0)) * table.a(n - 6.0 + a);
    return make_identity_check(lhs, rhs);
}

KprimeMoment kprime_moment(MomentTable& table, double n) {
    const double g = table.params().gamma;
    if (!(n > 4.0 + 2.0 * g))
        throw std::domain_error("kprime_moment: requires n > 4 + 2*gamma");

    IntegrandSpec spec;
    spec.f = [g, n](double t) {
        const double d = bessel_k_prime(g, t) - g * bessel_k(g, t) / t;
        return std::pow(t, n - 3.0) * d * d;
    };
    // K' - gamma K/t = -K_{gamma+1}, so the integrand behaves like
    // t^{n-3-2(gamma+1)} at the origin
    spec.endpoint_exponent_at_zero = n - 5.0 - 2.0 * g;
    spec.decay_rate = 2.0;
    const QuadratureEstimate direct =
        integrate_semi_infinite(spec, table.tolerance());

    const double reduced =
        (n - 2.0) / (n - 4.0) * table.m(n - 3.0) +
        (2.0 * g * g + g * (n - 4.0)) * table.m(n - 5.0);

    KprimeMoment result;
    result.direct = direct.value;
    result.reduced = reduced;
    result.rel_err = std::fabs(direct.value - reduced) / std::fabs(reduced);
    return result;
}

double energy_normalization(MomentTable& table) {
    const double g = table.params().gamma;
    const double a = table.params().a;
    const double d_star =
        std::pow(2.0, 2.0 * g - 1.0) * gamma_fn(g) / (g * gamma_fn(-g));
    return std::fabs(d_star) * (table.a(a) + table.b(a));
}

}  // namespace fyk
