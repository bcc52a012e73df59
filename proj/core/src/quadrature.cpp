#include "fyk/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace fyk {

namespace {

// 15-point Kronrod / 7-point Gauss pair (QUADPACK dqk15 nodes and weights).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double lo, hi;
    double value;
    double err;
    long id;  // creation index, used as a deterministic tie break
};

struct PanelOrder {
    bool operator()(const Panel& x, const Panel& y) const {
        if (x.err != y.err) return x.err < y.err;
        return x.id > y.id;
    }
};

Panel gk15(const std::function<double(double)>& f, double lo, double hi,
           long id) {
    const double center = 0.5 * (lo + hi);
    const double hl = 0.5 * (hi - lo);
    double fv[15];
    for (int j = 0; j < 7; ++j) {
        fv[j] = f(center - hl * kXgk[j]);
        fv[14 - j] = f(center + hl * kXgk[j]);
    }
    fv[7] = f(center);
    double resk = 0.0, resabs = 0.0;
    for (int j = 0; j < 7; ++j) {
        resk += kWgk[j] * (fv[j] + fv[14 - j]);
        resabs += kWgk[j] * (std::fabs(fv[j]) + std::fabs(fv[14 - j]));
    }
    resk += kWgk[7] * fv[7];
    resabs += kWgk[7] * std::fabs(fv[7]);
    double resg = kWg[3] * fv[7];
    for (int j = 0; j < 3; ++j)
        resg += kWg[j] * (fv[2 * j + 1] + fv[13 - 2 * j]);

    const double reskh = 0.5 * resk;
    double resasc = kWgk[7] * std::fabs(fv[7] - reskh);
    for (int j = 0; j < 7; ++j)
        resasc += kWgk[j] *
                  (std::fabs(fv[j] - reskh) + std::fabs(fv[14 - j] - reskh));

    double err = std::fabs(resk - resg) * hl;
    resasc *= hl;
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double round_floor =
        50.0 * std::numeric_limits<double>::epsilon() * resabs * hl;
    err = std::max(err, round_floor);
    return Panel{lo, hi, resk * hl, err, id};
}

constexpr int kPanelBudget = 1 << 14;

}  // namespace

QuadratureEstimate integrate_finite(const std::function<double(double)>& f,
                                    double lo, double hi, double tol,
                                    double abs_floor) {
    if (!(lo < hi)) throw std::domain_error("integrate_finite: requires lo < hi");
    if (!(tol > 0.0)) throw std::domain_error("integrate_finite: requires tol > 0");

    long next_id = 0;
    std::priority_queue<Panel, std::vector<Panel>, PanelOrder> queue;
    queue.push(gk15(f, lo, hi, next_id++));
    double total = queue.top().value;
    double total_err = queue.top().err;
    int panels = 1;

    while (total_err > std::max(tol * std::fabs(total), abs_floor)) {
        if (panels >= kPanelBudget) {
            throw AccuracyError(
                "integrate_finite: panel budget exhausted before tolerance",
                QuadratureEstimate{total, total_err, panels});
        }
        Panel worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (mid <= worst.lo || mid >= worst.hi) {
            // interval no longer splittable in double precision
            queue.push(Panel{worst.lo, worst.hi, worst.value, 0.0, worst.id});
            continue;
        }
        Panel left = gk15(f, worst.lo, mid, next_id++);
        Panel right = gk15(f, mid, worst.hi, next_id++);
        total += left.value + right.value - worst.value;
        total_err += left.err + right.err - worst.err;
        queue.push(left);
        queue.push(right);
        ++panels;
    }

    // re-sum by position for a stable, refinement-independent rounding pattern
    std::vector<Panel> all;
    all.reserve(panels);
    while (!queue.empty()) {
        all.push_back(queue.top());
        queue.pop();
    }
    std::sort(all.begin(), all.end(),
              [](const Panel& x, const Panel& y) { return x.lo < y.lo; });
    double value = 0.0, err = 0.0;
    for (const Panel& p : all) {
        value += p.value;
        err += p.err;
    }
    return QuadratureEstimate{value, err, panels};
}

QuadratureEstimate integrate_semi_infinite(const IntegrandSpec& spec, double tol,
                                           double abs_floor) {
    if (!(tol > 0.0))
        throw std::domain_error("integrate_semi_infinite: requires tol > 0");
    if (!(spec.endpoint_exponent_at_zero > -1.0))
        throw std::domain_error(
            "integrate_semi_infinite: endpoint exponent must exceed -1 for "
            "convergence at 0");
    if (!(spec.decay_rate > 0.0))
        throw std::domain_error("integrate_semi_infinite: decay rate must be > 0");

    const double p = spec.endpoint_exponent_at_zero;
    const double q = spec.decay_rate;
    const auto& f = spec.f;

    // head: s in (0,1], s = u^{1/(1+p)} flattens the s^p endpoint behavior
    const double inv1p = 1.0 / (1.0 + p);
    auto head = [&](double u) {
        const double s = std::pow(u, inv1p);
        return f(s) * inv1p * std::pow(u, inv1p - 1.0);
    };
    // tail: s in [1,inf), s = 1 - ln(v)/q maps to v in (0,1]
    auto tail = [&](double v) {
        const double s = 1.0 - std::log(v) / q;
        return f(s) / (q * v);
    };

    const QuadratureEstimate h =
        integrate_finite(head, 0.0, 1.0, 0.5 * tol, 0.5 * abs_floor);
    const QuadratureEstimate t =
        integrate_finite(tail, 0.0, 1.0, 0.5 * tol, 0.5 * abs_floor);
    return QuadratureEstimate{h.value + t.value,
                              h.abs_error_estimate + t.abs_error_estimate,
                              h.intervals_used + t.intervals_used};
}

double EulerAccelerator::add(double term) {
    ++count_;
    if (count_ == 1) {
        nterm_ = 1;
        wksp_.assign(1, term);
        sum_ = 0.5 * term;
        return sum_;
    }
    if (static_cast<int>(wksp_.size()) < nterm_ + 1) wksp_.resize(nterm_ + 1);
    double tmp = wksp_[0];
    wksp_[0] = term;
    for (int j = 0; j < nterm_ - 1; ++j) {
        const double dum = wksp_[j + 1];
        wksp_[j + 1] = 0.5 * (wksp_[j] + tmp);
        tmp = dum;
    }
    wksp_[nterm_] = 0.5 * (wksp_[nterm_ - 1] + tmp);
    if (std::fabs(wksp_[nterm_]) <= std::fabs(wksp_[nterm_ - 1])) {
        sum_ += 0.5 * wksp_[nterm_];
        ++nterm_;
    } else {
        sum_ += wksp_[nterm_];
    }
    return sum_;
}

}  // namespace fyk
