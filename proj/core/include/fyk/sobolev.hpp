#ifndef FYK_SOBOLEV_HPP
#define FYK_SOBOLEV_HPP

#include <stdexcept>
#include <vector>

#include "fyk/moments.hpp"
#include "fyk/params.hpp"

namespace fyk {

class IllConditionedError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class StepSizeError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Finite-dimensional trace-Sobolev quotient over radial profiles
/// v_k(r) = (1+r^2)^{-beta_k}, with the bubble's exponent beta_1 = (n-2g)/2.
///
///   Q(c) = (c^T G c) / ||sum_k c_k v_k||_{2*}^2,
///   G_jk = int |zeta|^{2 gamma} vhat_j vhat_k dzeta,
///
/// assembled through the K-Bessel closed forms of the radial transforms
/// (vhat_k = c_k t^{-nu_k} K_{|nu_k|}(t), nu_k = n/2 - beta_k, with c_k fitted
/// from the oscillatory Hankel transform).
class QuotientProblem {
  public:
    const FractionalParams& params() const { return params_; }
    const std::vector<double>& basis_exponents() const { return betas_; }
    int size() const { return static_cast<int>(betas_.size()); }

    const std::vector<double>& gram() const { return gram_; }  // row-major
    double gram_condition() const { return condition_; }

    /// c^T G c
    double dirichlet_form(const std::vector<double>& c) const;
    /// ||v_c||_{2*}^2 on R^n
    double l2star_norm_sq(const std::vector<double>& c) const;
    double quotient(const std::vector<double>& c) const;
    std::vector<double> quotient_gradient(const std::vector<double>& c) const;

    /// Rescales c so that ||v_c||_{2*} = 1.
    std::vector<double> normalized(const std::vector<double>& c) const;

    double transform_constant(int k) const { return ck_[k]; }

    friend QuotientProblem assemble(const FractionalParams&,
                                    const std::vector<double>&, double);

  private:
    double basis_value(int k, double r) const;

    FractionalParams params_;
    std::vector<double> betas_;
    std::vector<double> nus_;
    std::vector<double> ck_;
    std::vector<double> gram_;
    double condition_ = 0.0;
    double tol_ = 1e-10;
};

/// Builds the Gram matrix and norm evaluators. Throws IllConditionedError when
/// the Gram condition number exceeds 1e12 (thin the basis), and domain_error
/// on duplicate exponents.
QuotientProblem assemble(const FractionalParams& params,
                         const std::vector<double>& basis_exponents,
                         double tol = 1e-10);

struct MinimizeResult {
    std::vector<double> c_star;
    double q_star = 0.0;
    int iterations = 0;
    double gradient_norm = 0.0;
};

/// Step rule for the descent direction. The Gram-preconditioned direction
/// -G^{-1} grad Q (still a descent direction, G is SPD) removes the basis
/// ill-conditioning that makes the plain gradient crawl along the quotient's
/// flat valley.
enum class StepRule { PreconditionedArmijo, PlainArmijo };

/// Projected gradient descent on Q with the ||v_c||_{2*} = 1 normalization
/// re-imposed after every step. Monotone in Q (Armijo backtracking); stops at
/// gradient norm 1e-8. Throws StepSizeError when no decrease is possible away
/// from stationarity.
MinimizeResult minimize(const QuotientProblem& problem,
                        const std::vector<double>& c_init, int max_iters = 500,
                        double gradient_tol = 1e-8,
                        StepRule rule = StepRule::PreconditionedArmijo);

/// Max componentwise deviation between the analytic gradient of Q and central
/// finite differences (step 1e-5).
double gradient_check(const QuotientProblem& problem,
                      const std::vector<double>& c);

/// Q(bubble) through the Fourier-side Gram entry.
double bubble_quotient_fourier_route(const QuotientProblem& problem);

/// Q(bubble) through the extension energy: |d*| (A_a + B_a) |S| c1^2 M_{n-1}
/// divided by the same 2*-norm. Agrees with the Fourier route.
double bubble_quotient_extension_route(const QuotientProblem& problem,
                                       MomentTable& table);

}  // namespace fyk

#endif
