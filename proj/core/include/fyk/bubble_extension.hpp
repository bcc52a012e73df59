#ifndef FYK_BUBBLE_EXTENSION_HPP
#define FYK_BUBBLE_EXTENSION_HPP

#include <cstdint>
#include <vector>

#include "fyk/moments.hpp"
#include "fyk/params.hpp"
#include "fyk/quadrature.hpp"

namespace fyk {

/// Surface area of the unit sphere S^{n-1} in R^n (n may be real).
double sphere_area(double n);

/// k-th positive zero of J_nu (1-based), for the oscillatory segmentation.
double bessel_j_zero(double nu, int k);

/// Radial Fourier transform (unitary convention) of (1+r^2)^{-mu_exp}:
///   ghat(zeta) = zeta^{1-n/2} \int_0^inf r^{n/2} J_{n/2-1}(zeta r) (1+r^2)^{-mu_exp} dr,
/// computed by splitting at the Bessel zeros and Euler-accelerating the
/// alternating segment sums.
double hankel_radial_transform(double n, double mu_exp, double zeta,
                               double tol = 1e-10);

struct FourierFitPoint {
    double zeta = 0.0;
    double transform = 0.0;  // ghat(zeta) by oscillatory quadrature
    double model = 0.0;      // zeta^{-nu} K_{|nu|}(zeta)
};

struct FourierCheckResult {
    double C0 = 0.0;                 // least-squares fit of transform = C0 * model
    double max_rel_deviation = 0.0;  // max over grid of |transform/(C0*model) - 1|
    std::vector<FourierFitPoint> points;
};

/// Fits the single constant in ghat = C * zeta^{-nu} K_{|nu|}(zeta) for the
/// transform of (1+r^2)^{-mu_exp}, where nu = n/2 - mu_exp.
FourierCheckResult fit_radial_transform(double n, double mu_exp,
                                        const std::vector<double>& zeta_grid,
                                        double tol = 1e-10);

/// The transform lemma specialized to the bubble (mu_exp = (n-2*gamma)/2,
/// nu = gamma): checks ghat(zeta) = C0 |zeta|^{-gamma} K_gamma(|zeta|) on the
/// grid and returns the fitted C0 with the worst relative deviation.
FourierCheckResult verify_appendix_fourier(const FractionalParams& params,
                                           const std::vector<double>& zeta_grid,
                                           double tol = 1e-10);

/// Bubble w_mu(x) = (mu/(|x|^2+mu^2))^{(n-2*gamma)/2} and its extension data.
/// C0 is the fitted spectral constant in w_1's transform.
struct BubbleFamily {
    FractionalParams params;
    double mu = 1.0;
    double C0 = 0.0;

    /// w_mu at radius r = |x|.
    double w(double r) const;

    static BubbleFamily make(const FractionalParams& params, double mu = 1.0);
};

/// J_p(mu) = int y^{p+a} U_mu^2 dx dy, reduced to
/// A_{p+a} * |S^{n-1}| * C0^2 * mu^n * int t^{n-3-p} K_gamma(mu t)^2 dt
/// (equal to A_{p+a} |S^{n-1}| C0^2 M_{n-3-p} at mu = 1).
/// Requires n - 3 - p > 2*gamma - 1.
double reduce_Jp(MomentTable& table, double p, double C0, double mu = 1.0);

/// Exact angular averages over S^{n-1}:
///   <xi^2>/|z|^2 = 1/n, <xi^4>/|z|^4 = 3/(n(n+2)), <xi^2 eta^2>/|z|^4 = 1/(n(n+2)).
struct AngularMoments {
    double xi2_over_zeta2 = 0.0;
    double xi4_over_zeta4 = 0.0;
    double xi2eta2_over_zeta4 = 0.0;
};

AngularMoments angular_moments(double n);

/// Monte-Carlo sphere averages for the cross-check (deterministic per seed).
AngularMoments angular_moments_mc(int n, std::int64_t samples,
                                  std::uint64_t seed);

struct ValueCheck {
    double numeric = 0.0;
    double closed_form = 0.0;
    double rel_err = 0.0;
};

/// The three pieces of I1 in the Fourier reduction, each computed from raw
/// moment products and compared against its closed form (in units of J2):
///   H1 = 3/(n(n+2)) * A_{a+2} |S| C0^2 * int t^{n-3} K_{gamma+1}^2 dt
///   H2 = -6/(n(n+2)) * C_{a+3} |S| C0^2 * int t^{n-4} K_gamma K_{gamma+1} dt
///   H3 = 3/(n(n+2)) * B_{a+4} |S| C0^2 * M_{n-5}
struct HDecomposition {
    ValueCheck H1, H2, H3;
    double sum = 0.0;  // numeric H1+H2+H3 (= I1)
};

HDecomposition compute_H(MomentTable& table, double C0);

/// All extension integrals for U_1 at fixed (n, gamma): numeric values by the
/// Fourier reduction (angular averages x cached 1-D moments), closed forms,
/// and relative errors. J1 is NaN when n <= 3 + 2*gamma.
struct ExtensionIntegrals {
    ValueCheck I1, I2, I3, I4, I5, I6, I7;
    ValueCheck H1, H2, H3;
    double J1 = 0.0;
    double J2 = 0.0;
    bool J1_finite = false;
};

/// Requires n > 4 + 2*gamma. With validate set, throws AccuracyError naming
/// the worst integral if any closed-form comparison exceeds 1e-6.
ExtensionIntegrals compute_I(MomentTable& table, double C0,
                             bool validate = true);

/// Convenience: fits C0 on a default grid, builds the moment table, runs compute_I.
ExtensionIntegrals compute_I(const FractionalParams& params, double tol = 1e-11,
                             bool validate = true);

/// Default fitting grid used when none is supplied.
std::vector<double> default_zeta_grid();

/// Fits the bubble's spectral constant C0 for the given parameters.
double fit_C0(const FractionalParams& params, double tol = 1e-10);

/// Poisson kernel normalization: C_{n,gamma} such that the kernel has unit
/// x-mass for every y (fixed numerically at y = 1).
double poisson_kernel_mass_constant(const FractionalParams& params,
                                    double tol = 1e-11);

/// Value at height y of the extension of the constant boundary function 1,
/// using the mass-normalized kernel; equals 1 for every y.
double extension_of_one(const FractionalParams& params, double c_kernel,
                        double y, double tol = 1e-11);

}  // namespace fyk

#endif
