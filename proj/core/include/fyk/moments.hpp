#ifndef FYK_MOMENTS_HPP
#define FYK_MOMENTS_HPP

#include <map>
#include <vector>

#include "fyk/params.hpp"
#include "fyk/quadrature.hpp"
#include "fyk/special_functions.hpp"

namespace fyk {

/// Cached semi-infinite moments of the profile phi and of K_gamma:
///
///   A_p = int_0^inf s^p phi(s)^2 ds          (p > -1)
///   B_p = int_0^inf s^p phi'(s)^2 ds         (p + 4*gamma - 2 > -1)
///   C_p = int_0^inf s^p phi(s) phi'(s) ds    (p + 2*gamma - 1 > -1)
///   M_q = int_0^inf t^q K_gamma(t)^2 dt      (q > 2*gamma - 1 and q > -1)
///
/// Entries are cached per exponent; changing the tolerance invalidates the
/// cache. Populate everything needed up front (ensure_* / build_moments),
/// then share the table read-only across threads.
class MomentTable {
  public:
    MomentTable(const FractionalParams& params, double tol = 1e-11);

    const FractionalParams& params() const { return params_; }
    double gamma() const { return params_.gamma; }
    double tolerance() const { return tol_; }

    /// Clears all cached entries (explicit invalidation).
    void set_tolerance(double tol);

    const QuadratureEstimate& a_moment(double p);
    const QuadratureEstimate& b_moment(double p);
    const QuadratureEstimate& c_moment(double p);
    const QuadratureEstimate& m_moment(double q);

    double a(double p) { return a_moment(p).value; }
    double b(double p) { return b_moment(p).value; }
    double c(double p) { return c_moment(p).value; }
    double m(double q) { return m_moment(q).value; }

  private:
    FractionalParams params_;
    SpectralProfile profile_;
    double tol_;
    std::map<double, QuadratureEstimate> a_, b_, c_, m_;
};

/// Eagerly computes A/B/C at the exponents used by the identity suite
/// (and M at the exponents implied by the given n values).
MomentTable build_moments(const FractionalParams& params,
                          const std::vector<double>& a_exponents,
                          const std::vector<double>& b_exponents,
                          const std::vector<double>& c_exponents,
                          const std::vector<double>& m_exponents,
                          double tol = 1e-11);

struct IdentityCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    double rel_err = 0.0;
};

IdentityCheck make_identity_check(double lhs, double rhs);

/// int s^{a+3}(phi^2 + phi'^2) ds = (3(a+2)/2) int s^{a+1} phi^2 ds
IdentityCheck verify_energy_shift_identity(MomentTable& table);

/// int s^{a+2} phi'^2 ds = ((3+a)/(3-a)) int s^{a+2} phi^2 ds
IdentityCheck verify_derivative_ratio_identity(MomentTable& table);

/// int s^{a+4} phi'^2 ds = ((a+5)(a+3)/5) int s^{a+2} phi^2 ds
IdentityCheck verify_derivative_fourth_identity(MomentTable& table);

/// int s^{a+4} phi^2 ds = ((a+3)(5-a)/5) int s^{a+2} phi^2 ds
IdentityCheck verify_profile_fourth_identity(MomentTable& table);

/// int s^{n-4+a} phi^2 ds = ((n-4)(n-5+a)(n-3-a)/(4(n-3))) int s^{n-6+a} phi^2 ds
/// Requires n > 4 and n > 4 + 2*gamma (convergence of the right-hand moment).
IdentityCheck verify_dimension_recursion_identity(MomentTable& table, double n);

struct KprimeMoment {
    double direct = 0.0;   // quadrature of t^{n-3} (K_gamma'(t) - gamma K_gamma(t)/t)^2
    double reduced = 0.0;  // ((n-2)/(n-4)) M_{n-3} + (2 gamma^2 + gamma(n-4)) M_{n-5}
    double rel_err = 0.0;
};

/// Both evaluation routes for the derivative moment entering H1.
/// Requires n > 4 + 2*gamma.
KprimeMoment kprime_moment(MomentTable& table, double n);

/// |d*_gamma| * int_0^inf s^a (phi^2 + phi'^2) ds, equal to 1 for every gamma.
double energy_normalization(MomentTable& table);

}  // namespace fyk

#endif
