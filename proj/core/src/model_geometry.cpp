#include "fyk/model_geometry.hpp"

#include <algorithm>
#include <cmath>

namespace fyk {

namespace {

// product of two quartic-truncated series
std::array<Rat, 5> series_mul(const std::array<Rat, 5>& x,
                              const std::array<Rat, 5>& y) {
    std::array<Rat, 5> out{};
    for (int i = 0; i <= 4; ++i)
        for (int j = 0; i + j <= 4; ++j) out[i + j] = out[i + j] + x[i] * y[j];
    return out;
}

void require_no_linear_term(const ModelMetric& model, const char* who) {
    if (model.warp_series[1] != Rat(0))
        throw std::domain_error(std::string(who) +
                                ": model must have f1 = 0 (mean curvature "
                                "zero hypothesis)");
}

}  // namespace

std::array<Rat, 5> ModelMetric::metric_series() const {
    return series_mul(warp_series, warp_series);
}

std::array<Rat, 5> ModelMetric::det_series() const {
    // f^{2n} truncated at rho^4
    std::array<Rat, 5> acc{};
    acc[0] = Rat(1);
    const auto F = metric_series();
    for (int k = 0; k < n; ++k) acc = series_mul(acc, F);
    return acc;
}

double ModelMetric::f(double rho) const {
    double v = 0.0;
    for (int k = 4; k >= 0; --k) v = v * rho + warp_series[k].to_double();
    return v;
}

double ModelMetric::f_prime(double rho) const {
    double v = 0.0;
    for (int k = 4; k >= 1; --k) v = v * rho + k * warp_series[k].to_double();
    return v;
}

ModelMetric ModelMetric::hyperbolic_ball(int n) {
    ModelMetric m;
    m.boundary_type = BoundaryType::RoundSphere;
    m.n = n;
    m.boundary_scalar_R = Rat(static_cast<std::int64_t>(n) * (n - 1));
    m.boundary_ricci_coefficient = Rat(n - 1);
    m.warp_series = {Rat(1), Rat(0), Rat(-1, 4), Rat(0), Rat(0)};
    return m;
}

ModelMetric ModelMetric::hyperbolic_half_space(int n) {
    ModelMetric m;
    m.boundary_type = BoundaryType::FlatTorus;
    m.n = n;
    m.boundary_scalar_R = Rat(0);
    m.boundary_ricci_coefficient = Rat(0);
    m.warp_series = {Rat(1), Rat(0), Rat(0), Rat(0), Rat(0)};
    return m;
}

ModelMetric ModelMetric::custom(BoundaryType type, int n,
                                const std::array<Rat, 5>& warp_series) {
    if (warp_series[0] != Rat(1))
        throw std::domain_error("ModelMetric: warp series must have f0 = 1");
    ModelMetric m;
    m.boundary_type = type;
    m.n = n;
    if (type == BoundaryType::RoundSphere) {
        m.boundary_scalar_R = Rat(static_cast<std::int64_t>(n) * (n - 1));
        m.boundary_ricci_coefficient = Rat(n - 1);
    } else {
        m.boundary_scalar_R = Rat(0);
        m.boundary_ricci_coefficient = Rat(0);
    }
    m.warp_series = warp_series;
    return m;
}

double fg_residual(const ModelMetric& model,
                   const std::vector<double>& rho_grid) {
    if (model.n < 2) throw std::domain_error("fg_residual: requires n >= 2");
    const int n = model.n;
    const double c = model.boundary_ricci_coefficient.to_double();

    // F = f^2 as an exact degree-8 polynomial
    double F[9] = {0};
    for (int i = 0; i <= 4; ++i)
        for (int j = 0; j <= 4; ++j)
            F[i + j] += model.warp_series[i].to_double() *
                        model.warp_series[j].to_double();

    auto poly = [&](const double* coef, int deg, double x) {
        double v = 0.0;
        for (int k = deg; k >= 0; --k) v = v * x + coef[k];
        return v;
    };
    double Fp[8], Fpp[7];
    for (int k = 1; k <= 8; ++k) Fp[k - 1] = k * F[k];
    for (int k = 2; k <= 8; ++k) Fpp[k - 2] = k * (k - 1) * F[k];

    double worst = 0.0;
    for (double rho : rho_grid) {
        const double Fv = poly(F, 8, rho);
        const double F1 = poly(Fp, 7, rho);
        const double F2 = poly(Fpp, 6, rho);
        const double res = rho * F2 + (1.0 - 2.0 * n) * F1 +
                           0.5 * (n - 2.0) * rho * F1 * F1 / Fv - 2.0 * rho * c;
        worst = std::max(worst, std::fabs(res));
    }
    return worst;
}

ExpansionReport verify_h2_formulas(const ModelMetric& model) {
    require_no_linear_term(model, "verify_h2_formulas");
    const int n = model.n;
    if (n < 3) throw std::domain_error("verify_h2_formulas: requires n >= 3");
    const auto F = model.metric_series();

    ExpansionReport rep;
    {
        // trace h^{(2)} = R / (2(1-n))
        const Rat lhs = Rat(n) * F[2];
        const Rat rhs = model.boundary_scalar_R / Rat(2 * (1 - n));
        rep.rows.push_back({"h2-trace", lhs.to_double(), rhs.to_double(),
                            std::fabs((lhs - rhs).to_double()), true});
    }
    {
        // h^{(2)} coefficient = (R + 2(1-n) c) / (2(n-2)(n-1))
        const Rat lhs = F[2];
        const Rat rhs = (model.boundary_scalar_R +
                         Rat(2 * (1 - n)) * model.boundary_ricci_coefficient) /
                        Rat(2LL * (n - 2) * (n - 1));
        rep.rows.push_back({"h2-tensor", lhs.to_double(), rhs.to_double(),
                            std::fabs((lhs - rhs).to_double()), true});
    }
    return rep;
}

ExpansionReport verify_h4_trace(const ModelMetric& model) {
    require_no_linear_term(model, "verify_h4_trace");
    const int n = model.n;
    if (n < 3) throw std::domain_error("verify_h4_trace: requires n >= 3");
    const auto F = model.metric_series();

    // Ric[h_rho] = c * h_hat for every rho (constant conformal factor on a
    // space form), so the h_hat-traced second rho-derivative vanishes.
    const Rat ric_trace_rho_rho(0);
    const Rat h2_norm_sq = Rat(n) * F[2] * F[2];
    const Rat lhs = Rat(n) * F[4];
    const Rat rhs = (ric_trace_rho_rho - Rat(2 * (n - 2)) * h2_norm_sq) /
                    Rat(8 * (2 - n));
    ExpansionReport rep;
    rep.rows.push_back({"h4-trace", lhs.to_double(), rhs.to_double(),
                        std::fabs((lhs - rhs).to_double()), true});
    return rep;
}

ExpansionReport verify_det_expansion(const ModelMetric& model) {
    require_no_linear_term(model, "verify_det_expansion");
    const int n = model.n;
    const auto F = model.metric_series();
    const auto det = model.det_series();

    const Rat tr2 = Rat(n) * F[2];
    const Rat tr3 = Rat(n) * F[3];
    const Rat tr4 = Rat(n) * F[4];
    const Rat h2sq = Rat(n) * F[2] * F[2];

    ExpansionReport rep;
    auto row = [&rep](const char* name, Rat lhs, Rat rhs) {
        rep.rows.push_back({name, lhs.to_double(), rhs.to_double(),
                            std::fabs((lhs - rhs).to_double()), true});
    };
    row("det-rho0", det[0], Rat(1));
    row("det-rho1", det[1], Rat(0));
    row("det-rho2", det[2], tr2);
    row("det-rho3", det[3], tr3);
    row("det-rho4", det[4], tr4 + tr2 * tr2 / Rat(2) - h2sq / Rat(2));
    return rep;
}

ERhoExpansion e_rho_expansion(const ModelMetric& model,
                              const std::vector<double>& rho_grid,
                              const FractionalParams& params) {
    require_no_linear_term(model, "e_rho_expansion");
    const double n = model.n;
    const double a = params.a;

    ERhoExpansion out;
    out.expected_prefactor =
        -0.5 * (n - 1.0 + a) * model.trace_h(2).to_double();

    for (double rho : rho_grid) {
        // d/drho[det h_rho]/det h_rho = 2n f'/f
        const double logdet_prime = 2.0 * n * model.f_prime(rho) / model.f(rho);
        const double e =
            -0.25 * (n - 1.0 + a) * std::pow(rho, a - 1.0) * logdet_prime;
        out.rho.push_back(rho);
        out.value.push_back(e);
    }

    bool all_zero = true;
    for (double v : out.value)
        if (v != 0.0) all_zero = false;
    if (all_zero) {
        out.identically_zero = true;
        return out;
    }

    // least-squares slope of log|E| against log rho
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const int m = static_cast<int>(out.rho.size());
    for (int i = 0; i < m; ++i) {
        const double x = std::log(out.rho[i]);
        const double y = std::log(std::fabs(out.value[i]));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    out.fitted_slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    // prefactor from the smallest rho in the grid
    int imin = 0;
    for (int i = 1; i < m; ++i)
        if (out.rho[i] < out.rho[imin]) imin = i;
    out.fitted_prefactor = out.value[imin] / std::pow(out.rho[imin], a);
    return out;
}

ExpansionReport conformal_trace_h3(const ModelMetric& model, double w0) {
    require_no_linear_term(model, "conformal_trace_h3");
    if (model.warp_series[3] != Rat(0))
        throw std::domain_error(
            "conformal_trace_h3: requires a space-form model with h^(3) = 0");

    // Constant rescalings h_hat -> e^{2 w0} h_hat keep the same warp series in
    // the rescaled defining function, so both third-order traces vanish and
    // the covariance relation is 0 = e^{3 w0} * 0.
    const double tr3 = model.trace_h(3).to_double();
    ExpansionReport rep;
    rep.rows.push_back({"trace-h3-covariance", tr3,
                        std::exp(3.0 * w0) * tr3,
                        std::fabs(tr3 * (1.0 - std::exp(3.0 * w0))), true});
    // Ric_rho_rho,rho = -3 trace h^{(3)}
    rep.rows.push_back({"ric-h3-consistency", -3.0 * tr3, 0.0,
                        std::fabs(-3.0 * tr3), true});
    return rep;
}

}  // namespace fyk
