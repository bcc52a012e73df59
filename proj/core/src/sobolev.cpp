#include "fyk/sobolev.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fyk/bubble_extension.hpp"
#include "fyk/quadrature.hpp"

namespace fyk {

namespace {

// Jacobi eigenvalue sweep for the small symmetric Gram matrices.
std::vector<double> symmetric_eigenvalues(std::vector<double> m, int dim) {
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < dim; ++i)
            for (int j = i + 1; j < dim; ++j) off += std::fabs(m[i * dim + j]);
        if (off < 1e-300) break;
        for (int p = 0; p < dim; ++p) {
            for (int q = p + 1; q < dim; ++q) {
                const double apq = m[p * dim + q];
                if (std::fabs(apq) < 1e-300) continue;
                const double app = m[p * dim + p];
                const double aqq = m[q * dim + q];
                const double phi = 0.5 * std::atan2(2.0 * apq, aqq - app);
                const double c = std::cos(phi), s = std::sin(phi);
                for (int k = 0; k < dim; ++k) {
                    const double akp = m[k * dim + p];
                    const double akq = m[k * dim + q];
                    m[k * dim + p] = c * akp - s * akq;
                    m[k * dim + q] = s * akp + c * akq;
                }
                for (int k = 0; k < dim; ++k) {
                    const double apk = m[p * dim + k];
                    const double aqk = m[q * dim + k];
                    m[p * dim + k] = c * apk - s * aqk;
                    m[q * dim + k] = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> ev(dim);
    for (int i = 0; i < dim; ++i) ev[i] = m[i * dim + i];
    std::sort(ev.begin(), ev.end());
    return ev;
}

}  // namespace

double QuotientProblem::basis_value(int k, double r) const {
    return std::pow(1.0 + r * r, -betas_[k]);
}

namespace detail_sobolev {

// After r = u/(1-u), each basis profile factors as
//   v_k(r) = (1-u)^{2 beta_k} / D(u)^{beta_k},  D = (1-u)^2 + u^2,
// so pulling out (1-u)^{2 beta_1} leaves a bounded sum; together with
// r^{n-1}/(1-u)^2 the full 2*-integrand becomes
//   |h(u)|^{2*} (1-u)^{n-1} u^{n-1},  h = sum_k c_k (1-u)^{2(beta_k-beta_1)} / D^{beta_k},
// with no overflowing intermediates (beta_1 2* = n).
double bounded_sum(const std::vector<double>& c,
                   const std::vector<double>& betas, double u) {
    const double v = 1.0 - u;
    const double d = v * v + u * u;
    double h = 0.0;
    for (size_t k = 0; k < c.size(); ++k)
        h += c[k] * std::pow(v, 2.0 * (betas[k] - betas[0])) /
             std::pow(d, betas[k]);
    return h;
}

}  // namespace detail_sobolev

double QuotientProblem::dirichlet_form(const std::vector<double>& c) const {
    const int dim = size();
    double acc = 0.0;
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) acc += c[i] * gram_[i * dim + j] * c[j];
    return acc;
}

double QuotientProblem::l2star_norm_sq(const std::vector<double>& c) const {
    const double n = params_.n;
    const double expo = params_.two_star;
    auto f = [&](double u) {
        const double h = detail_sobolev::bounded_sum(c, betas_, u);
        return std::pow(std::fabs(h), expo) *
               std::pow((1.0 - u) * u, n - 1.0);
    };
    const double integral =
        integrate_finite(f, 0.0, 1.0, tol_, 1e-300).value * sphere_area(n);
    return std::pow(integral, 2.0 / expo);
}

double QuotientProblem::quotient(const std::vector<double>& c) const {
    return dirichlet_form(c) / l2star_norm_sq(c);
}

std::vector<double> QuotientProblem::quotient_gradient(
    const std::vector<double>& c) const {
    const int dim = size();
    const double n = params_.n;
    const double expo = params_.two_star;
    const double area = sphere_area(n);

    const double dir = dirichlet_form(c);
    auto lint = [&](double u) {
        const double h = detail_sobolev::bounded_sum(c, betas_, u);
        return std::pow(std::fabs(h), expo) *
               std::pow((1.0 - u) * u, n - 1.0);
    };
    const double L = integrate_finite(lint, 0.0, 1.0, tol_, 1e-300).value * area;
    const double N = std::pow(L, 2.0 / expo);
    const double Q = dir / N;

    std::vector<double> grad(dim);
    for (int k = 0; k < dim; ++k) {
        double gk = 0.0;
        for (int j = 0; j < dim; ++j) gk += gram_[k * dim + j] * c[j];
        // |v|^{2*-2} v v_k r^{n-1} du-weight in the same factored form; the
        // extra (1-u)^{2(beta_k - beta_1)} / D^{beta_k} is v_k itself
        auto dk = [&](double u) {
            const double v1 = 1.0 - u;
            const double d = v1 * v1 + u * u;
            const double h = detail_sobolev::bounded_sum(c, betas_, u);
            return std::pow(std::fabs(h), expo - 2.0) * h *
                   std::pow(v1, n - 1.0 + 2.0 * (betas_[k] - betas_[0])) *
                   std::pow(u, n - 1.0) / std::pow(d, betas_[k]);
        };
        const double dL =
            expo * integrate_finite(dk, 0.0, 1.0, tol_, 1e-300).value * area;
        const double dN = 2.0 / expo * std::pow(L, 2.0 / expo - 1.0) * dL;
        grad[k] = (2.0 * gk - Q * dN) / N;
    }
    return grad;
}

std::vector<double> QuotientProblem::normalized(
    const std::vector<double>& c) const {
    const double norm = std::sqrt(l2star_norm_sq(c));
    std::vector<double> out(c);
    for (double& x : out) x /= norm;
    return out;
}

QuotientProblem assemble(const FractionalParams& params,
                         const std::vector<double>& basis_exponents,
                         double tol) {
    if (basis_exponents.empty())
        throw std::domain_error("assemble: empty basis");
    for (size_t i = 0; i < basis_exponents.size(); ++i)
        for (size_t j = i + 1; j < basis_exponents.size(); ++j)
            if (basis_exponents[i] == basis_exponents[j])
                throw std::domain_error("assemble: basis exponents must be distinct");
    const double n = params.n;
    const double g = params.gamma;
    for (double beta : basis_exponents)
        if (!(beta >= 0.5 * (n - 2.0 * g)))
            throw std::domain_error(
                "assemble: basis exponents must be at least (n-2*gamma)/2");

    QuotientProblem p;
    p.params_ = params;
    p.betas_ = basis_exponents;
    p.tol_ = tol;
    const int dim = p.size();
    p.nus_.resize(dim);
    p.ck_.resize(dim);
    for (int k = 0; k < dim; ++k) {
        p.nus_[k] = 0.5 * n - p.betas_[k];
        p.ck_[k] =
            fit_radial_transform(n, p.betas_[k], default_zeta_grid(), tol).C0;
    }

    const double area = sphere_area(n);
    p.gram_.assign(dim * dim, 0.0);
    for (int i = 0; i < dim; ++i) {
        for (int j = i; j < dim; ++j) {
            const double ni = p.nus_[i], nj = p.nus_[j];
            IntegrandSpec spec;
            spec.f = [ni, nj, g, n](double t) {
                return std::pow(t, n - 1.0 + 2.0 * g - ni - nj) *
                       detail::bessel_k_core(ni, t) *
                       detail::bessel_k_core(nj, t);
            };
            spec.endpoint_exponent_at_zero =
                n - 1.0 + 2.0 * g - ni - nj - std::fabs(ni) - std::fabs(nj);
            spec.decay_rate = 2.0;
            const double entry = area * p.ck_[i] * p.ck_[j] *
                                 integrate_semi_infinite(spec, tol).value;
            p.gram_[i * dim + j] = entry;
            p.gram_[j * dim + i] = entry;
        }
    }

    const std::vector<double> ev = symmetric_eigenvalues(p.gram_, dim);
    if (ev.front() <= 0.0)
        throw IllConditionedError(
            "assemble: Gram matrix is not positive definite");
    p.condition_ = ev.back() / ev.front();
    if (p.condition_ > 1e12)
        throw IllConditionedError(
            "assemble: Gram condition number " + std::to_string(p.condition_) +
            " exceeds 1e12; thin the basis");
    return p;
}

namespace {

// Cholesky solve of G x = b for the small SPD Gram matrix.
std::vector<double> spd_solve(const std::vector<double>& g, int dim,
                              std::vector<double> b) {
    std::vector<double> l(dim * dim, 0.0);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j <= i; ++j) {
            double s = g[i * dim + j];
            for (int k = 0; k < j; ++k) s -= l[i * dim + k] * l[j * dim + k];
            if (i == j) {
                if (s <= 0.0)
                    throw IllConditionedError(
                        "spd_solve: Gram matrix not positive definite");
                l[i * dim + i] = std::sqrt(s);
            } else {
                l[i * dim + j] = s / l[j * dim + j];
            }
        }
    }
    for (int i = 0; i < dim; ++i) {
        double s = b[i];
        for (int k = 0; k < i; ++k) s -= l[i * dim + k] * b[k];
        b[i] = s / l[i * dim + i];
    }
    for (int i = dim - 1; i >= 0; --i) {
        double s = b[i];
        for (int k = i + 1; k < dim; ++k) s -= l[k * dim + i] * b[k];
        b[i] = s / l[i * dim + i];
    }
    return b;
}

}  // namespace

namespace {

MinimizeResult descend(const QuotientProblem& problem,
                       const std::vector<double>& c_init, int max_iters,
                       double gradient_tol, StepRule rule);

}  // namespace

MinimizeResult minimize(const QuotientProblem& problem,
                        const std::vector<double>& c_init, int max_iters,
                        double gradient_tol, StepRule rule) {
    MinimizeResult res =
        descend(problem, c_init, max_iters, gradient_tol, rule);
    // The restricted quotient can have saddles; restart from any unit basis
    // vector that beats the found stationary value (deterministic multistart).
    for (int k = 0; k < problem.size(); ++k) {
        std::vector<double> ek(problem.size(), 0.0);
        ek[k] = 1.0;
        if (problem.quotient(problem.normalized(ek)) <
            res.q_star - 1e-9 * std::fabs(res.q_star)) {
            MinimizeResult again =
                descend(problem, ek, max_iters, gradient_tol, rule);
            again.iterations += res.iterations;
            if (again.q_star < res.q_star) res = again;
        }
    }
    return res;
}

namespace {

MinimizeResult descend(const QuotientProblem& problem,
                       const std::vector<double>& c_init, int max_iters,
                       double gradient_tol, StepRule rule) {
    if (static_cast<int>(c_init.size()) != problem.size())
        throw std::domain_error("minimize: wrong coefficient dimension");
    const int dim = problem.size();

    std::vector<double> c = problem.normalized(c_init);
    double q = problem.quotient(c);
    double step = 1.0;

    MinimizeResult res;
    for (int iter = 0; iter <= max_iters; ++iter) {
        const std::vector<double> grad = problem.quotient_gradient(c);
        double gnorm = 0.0;
        for (double gk : grad) gnorm += gk * gk;
        gnorm = std::sqrt(gnorm);
        res.c_star = c;
        res.q_star = q;
        res.iterations = iter;
        res.gradient_norm = gnorm;
        if (gnorm <= gradient_tol) return res;
        if (iter == max_iters) break;

        std::vector<double> dir = grad;
        if (rule == StepRule::PreconditionedArmijo) {
            // once the preconditioned step stops making fast progress, switch
            // to a damped Newton direction (FD Hessian of the analytic
            // gradient); the quotient valley is badly conditioned near the
            // minimizer and plain descent crawls
            if (gnorm < 1e-3 * std::fabs(q)) {
                const double h = 1e-5;
                std::vector<double> hess(dim * dim, 0.0);
                for (int k = 0; k < dim; ++k) {
                    std::vector<double> cp(c), cm(c);
                    cp[k] += h;
                    cm[k] -= h;
                    const auto gp = problem.quotient_gradient(cp);
                    const auto gm = problem.quotient_gradient(cm);
                    for (int j = 0; j < dim; ++j)
                        hess[j * dim + k] = (gp[j] - gm[j]) / (2.0 * h);
                }
                for (int i = 0; i < dim; ++i)
                    for (int j = i + 1; j < dim; ++j) {
                        const double s =
                            0.5 * (hess[i * dim + j] + hess[j * dim + i]);
                        hess[i * dim + j] = hess[j * dim + i] = s;
                    }
                double trace = 0.0;
                for (int i = 0; i < dim; ++i) trace += hess[i * dim + i];
                double damping = 0.0;
                for (int attempt = 0; attempt < 12; ++attempt) {
                    std::vector<double> damped = hess;
                    for (int i = 0; i < dim; ++i)
                        damped[i * dim + i] += damping;
                    try {
                        std::vector<double> nd = spd_solve(damped, dim, grad);
                        double descent = 0.0;
                        for (int k = 0; k < dim; ++k) descent += grad[k] * nd[k];
                        if (descent > 0.0) {
                            dir = std::move(nd);
                            break;
                        }
                    } catch (const IllConditionedError&) {
                    }
                    damping = damping == 0.0 ? 1e-10 * std::fabs(trace)
                                             : damping * 10.0;
                }
            } else {
                dir = spd_solve(problem.gram(), dim, grad);
            }
        }
        double slope = 0.0;  // grad . dir > 0, so -dir is a descent direction
        for (int k = 0; k < dim; ++k) slope += grad[k] * dir[k];
        if (slope <= 0.0) {
            dir = grad;
            slope = gnorm * gnorm;
        }

        bool accepted = false;
        double eta = step;
        for (int half = 0; half < 60; ++half) {
            std::vector<double> trial(c);
            for (int k = 0; k < dim; ++k) trial[k] -= eta * dir[k];
            trial = problem.normalized(trial);
            const double q_trial = problem.quotient(trial);
            if (q_trial < q - 1e-4 * eta * slope) {
                c = std::move(trial);
                q = q_trial;
                step = std::min(eta * 2.0, 4.0);
                accepted = true;
                break;
            }
            eta *= 0.5;
        }
        if (!accepted)
            throw StepSizeError(
                "minimize: no decrease along the search direction (gradient "
                "norm " +
                std::to_string(gnorm) + ", Q = " + std::to_string(q) + ")");
    }
    return res;
}

}  // namespace

double gradient_check(const QuotientProblem& problem,
                      const std::vector<double>& c) {
    const std::vector<double> grad = problem.quotient_gradient(c);
    double worst = 0.0;
    const double h = 1e-5;
    for (int k = 0; k < problem.size(); ++k) {
        std::vector<double> cp(c), cm(c);
        cp[k] += h;
        cm[k] -= h;
        const double fd =
            (problem.quotient(cp) - problem.quotient(cm)) / (2.0 * h);
        worst = std::max(worst, std::fabs(fd - grad[k]));
    }
    return worst;
}

double bubble_quotient_fourier_route(const QuotientProblem& problem) {
    std::vector<double> e1(problem.size(), 0.0);
    e1[0] = 1.0;
    return problem.quotient(e1);
}

double bubble_quotient_extension_route(const QuotientProblem& problem,
                                       MomentTable& table) {
    const FractionalParams& params = table.params();
    const double g = params.gamma;
    const double a = params.a;
    const double d_star = std::fabs(std::pow(2.0, 2.0 * g - 1.0) * gamma_fn(g) /
                                    (g * gamma_fn(-g)));
    const double c1 = problem.transform_constant(0);
    const double energy = sphere_area(params.n) * c1 * c1 *
                          table.m(params.n - 1.0) *
                          (table.a(a) + table.b(a));
    std::vector<double> e1(problem.size(), 0.0);
    e1[0] = 1.0;
    return d_star * energy / problem.l2star_norm_sq(e1);
}

}  // namespace fyk
