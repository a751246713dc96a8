#include "qrg/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace qrg {

using std::numbers::pi;

PeakRecord t_max_analytic(const Coupling& bare, int n, int k, ExchangeScale scale) {
    if (k < 1)
        throw InvalidInput("t_max_analytic: k must be >= 1");
    const RgTrajectory traj = flow(bare, n);
    const Coupling& end = traj.steps.back();
    const double j_scale = scale == ExchangeScale::flowed_j ? end.J : bare.J;
    PeakRecord rec;
    rec.n = n;
    rec.N = effective_size(n);
    rec.g = bare.g;
    rec.k = k;
    rec.t_max = (2.0 * k - 1.0) * pi / (2.0 * j_scale * std::sqrt(1.0 + 4.0 * end.g * end.g));
    rec.c_max = concurrence_envelope(end.g);
    return rec;
}

PeakRecord t_max_numeric(const ConcurrenceSeries& series, int k) {
    if (k < 1)
        throw InvalidInput("t_max_numeric: k must be >= 1");
    const auto& v = series.values;
    const auto n_pts = static_cast<long>(v.size());
    if (n_pts < 3)
        throw InvalidInput("t_max_numeric: series too short");

    // >= on the right side keeps a peak whose two highest samples tie exactly
    // (the apex can fall midway between symmetric samples).
    int found = 0;
    long idx = -1;
    for (long i = 1; i + 1 < n_pts; ++i) {
        if (v[i] > v[i - 1] && v[i] >= v[i + 1]) {
            if (++found == k) {
                idx = i;
                break;
            }
        }
    }
    if (idx < 0)
        throw InvalidInput("t_max_numeric: insufficient peaks in series (found " +
                           std::to_string(found) + ", need " + std::to_string(k) + ")");

    const double h = series.times[1] - series.times[0];
    const double denom = v[idx - 1] - 2.0 * v[idx] + v[idx + 1];
    double t_peak = series.times[idx];
    double c_peak = v[idx];
    if (denom < 0.0) {
        const double shift = 0.5 * (v[idx - 1] - v[idx + 1]) / denom;
        t_peak += shift * h;
        c_peak = v[idx] - 0.25 * (v[idx - 1] - v[idx + 1]) * shift;
    }
    PeakRecord rec;
    rec.n = series.rg_step;
    rec.N = effective_size(series.rg_step);
    rec.g = series.coupling.g;
    rec.k = k;
    rec.t_max = t_peak;
    rec.c_max = c_peak;
    return rec;
}

double dtmax_dg(double bare_g, int n, int k, DerivMethod method, double bare_J,
                ExchangeScale scale) {
    if (!(bare_g > 0.0))
        throw InvalidInput("dtmax_dg: bare g must be positive");
    if (method == DerivMethod::finite_difference) {
        const double h = 1e-6 * bare_g;
        const double hi = t_max_analytic({bare_J, bare_g + h}, n, k, scale).t_max;
        const double lo = t_max_analytic({bare_J, bare_g - h}, n, k, scale).t_max;
        return (hi - lo) / (2.0 * h);
    }
    const RgTrajectory traj = flow({bare_J, bare_g}, n);
    const Coupling& end = traj.steps.back();
    const FlowDerivatives der = flow_derivatives({bare_J, bare_g}, n);
    const double root = std::sqrt(1.0 + 4.0 * end.g * end.g);
    if (scale == ExchangeScale::bare_j) {
        // d/dg of (2k-1) pi / (2 J sqrt(1+4 g_n^2))
        return -(2.0 * k - 1.0) * 2.0 * pi * end.g * der.dgn_dg /
               (bare_J * root * root * root);
    }
    const double a = end.J * root;
    const double da = der.dJn_dg * root + end.J * 4.0 * end.g * der.dgn_dg / root;
    return -(2.0 * k - 1.0) * pi / (2.0 * a * a) * da;
}

DerivativeCurve derivative_curve(double bare_J, double g_lo, double g_hi, int points,
                                 int n, int k, DerivMethod method, ExchangeScale scale) {
    if (!(g_lo > 0.0) || !(g_hi > g_lo))
        throw InvalidInput("derivative_curve: need 0 < g_lo < g_hi");
    if (points < 100)
        throw InvalidInput("derivative_curve: points must be >= 100");
    flow({bare_J, g_hi}, n);  // reject ranges reaching the overflow region up front

    DerivativeCurve curve;
    curve.n = n;
    curve.N = effective_size(n);
    curve.k = k;
    curve.bare_J = bare_J;
    curve.scale = scale;
    curve.g.resize(points);
    curve.dT_dg.resize(points);
    const double step = (g_hi - g_lo) / (points - 1);
    for (int i = 0; i < points; ++i) {
        curve.g[i] = g_lo + step * i;
        curve.dT_dg[i] = dtmax_dg(curve.g[i], n, k, method, bare_J, scale);
    }
    return curve;
}

double golden_section_min(const std::function<double(double)>& f, double a, double b,
                          double tol) {
    constexpr double inv_phi = 0.6180339887498949;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    while (b - a > tol) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

Minimum find_minimum(const DerivativeCurve& curve) {
    if (curve.g.size() < 3)
        throw InvalidInput("find_minimum: curve too short");
    const auto it = std::min_element(curve.dT_dg.begin(), curve.dT_dg.end());
    const auto idx = static_cast<std::size_t>(it - curve.dT_dg.begin());
    if (idx == 0 || idx + 1 == curve.dT_dg.size())
        throw InvalidInput("find_minimum: minimum sits on the g-range boundary at g = " +
                           std::to_string(curve.g[idx]) + "; widen range");
    const auto f = [&](double g) {
        return dtmax_dg(g, curve.n, curve.k, DerivMethod::exact, curve.bare_J, curve.scale);
    };
    const double g_m = golden_section_min(f, curve.g[idx - 1], curve.g[idx + 1], 1e-8);
    return {g_m, f(g_m)};
}

namespace {

ScalingFit fit_loglog(const std::vector<std::pair<double, double>>& samples,
                      const std::vector<double>& log_y, const char* who) {
    const auto n = static_cast<double>(samples.size());
    double sx = 0.0, sy = 0.0;
    std::vector<double> log_x(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        log_x[i] = std::log(samples[i].first);
        sx += log_x[i];
        sy += log_y[i];
    }
    const double mx = sx / n;
    const double my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        sxx += (log_x[i] - mx) * (log_x[i] - mx);
        sxy += (log_x[i] - mx) * (log_y[i] - my);
    }
    if (sxx <= 0.0)
        throw InvalidInput(std::string(who) + ": degenerate abscissa");
    ScalingFit fit;
    fit.exponent = sxy / sxx;
    fit.prefactor = std::exp(my - fit.exponent * mx);
    double ss = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double r = log_y[i] - (my + fit.exponent * (log_x[i] - mx));
        ss += r * r;
    }
    fit.residual = std::sqrt(ss / n);
    fit.sample = samples;
    return fit;
}

void check_samples(const std::vector<std::pair<double, double>>& samples, const char* who) {
    if (samples.size() < 3)
        throw InvalidInput(std::string(who) + ": insufficient samples (need >= 3, got " +
                           std::to_string(samples.size()) + ")");
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (!(samples[i].first > 0.0))
            throw InvalidInput(std::string(who) + ": sizes must be positive");
        if (i > 0 && !(samples[i].first > samples[i - 1].first))
            throw InvalidInput(std::string(who) + ": sizes must be strictly increasing");
    }
}

} // namespace

ScalingFit fit_theta(const std::vector<std::pair<double, double>>& samples) {
    check_samples(samples, "fit_theta");
    std::vector<double> log_y(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (!(samples[i].second > 0.0))
            throw InvalidInput("fit_theta: values must be positive (pass |dT/dg|)");
        log_y[i] = std::log(samples[i].second);
    }
    return fit_loglog(samples, log_y, "fit_theta");
}

ScalingFit fit_gm_drift(const std::vector<std::pair<double, double>>& samples) {
    check_samples(samples, "fit_gm_drift");
    std::vector<double> log_y(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (samples[i].second >= 1.0)
            throw InvalidInput("fit_gm_drift: g_m must lie below the critical point");
        log_y[i] = std::log(1.0 - samples[i].second);
    }
    return fit_loglog(samples, log_y, "fit_gm_drift");
}

namespace {

double interp(const std::vector<CollapsePoint>& pts, double x) {
    // pts sorted in x; x within [front, back]
    auto hi = std::lower_bound(pts.begin(), pts.end(), x,
                               [](const CollapsePoint& p, double v) { return p.x < v; });
    if (hi == pts.begin())
        return hi->y;
    if (hi == pts.end())
        return pts.back().y;
    const auto lo = hi - 1;
    const double w = (x - lo->x) / (hi->x - lo->x);
    return lo->y + w * (hi->y - lo->y);
}

} // namespace

CollapseResult collapse(const std::vector<DerivativeCurve>& curves,
                        const std::vector<Minimum>& minima) {
    if (curves.size() != minima.size())
        throw InvalidInput("collapse: need exactly one minimum per curve");
    if (curves.size() < 2)
        throw InvalidInput("collapse: need at least two curves");
    for (const auto& c : curves)
        if (c.k != curves.front().k)
            throw InvalidInput("collapse: curves must share the peak order k");

    CollapseResult result;
    result.curves.reserve(curves.size());
    for (std::size_t i = 0; i < curves.size(); ++i) {
        const double depth = std::abs(minima[i].value);
        if (!(depth > 0.0))
            throw InvalidInput("collapse: minimum value must be nonzero");
        CollapseCurve cc;
        cc.N = curves[i].N;
        cc.points.resize(curves[i].g.size());
        for (std::size_t j = 0; j < curves[i].g.size(); ++j) {
            cc.points[j].N = curves[i].N;
            cc.points[j].x = static_cast<double>(curves[i].N) * (curves[i].g[j] - minima[i].g_m);
            cc.points[j].y = (minima[i].value - curves[i].dT_dg[j]) / depth;
        }
        result.curves.push_back(std::move(cc));
    }

    // metric from the two largest sizes
    std::vector<const CollapseCurve*> by_size;
    for (const auto& c : result.curves)
        by_size.push_back(&c);
    std::sort(by_size.begin(), by_size.end(),
              [](const CollapseCurve* a, const CollapseCurve* b) { return a->N < b->N; });
    const CollapseCurve& second = *by_size[by_size.size() - 2];
    const CollapseCurve& largest = *by_size[by_size.size() - 1];

    const double lo = std::max(second.points.front().x, largest.points.front().x);
    const double hi = std::min(second.points.back().x, largest.points.back().x);
    if (!(hi > lo))
        throw InvalidInput("collapse: transformed x-ranges do not overlap");

    constexpr int kGrid = 2001;
    double sup_diff = 0.0;
    double y_min = std::numeric_limits<double>::infinity();
    double y_max = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < kGrid; ++i) {
        const double x = lo + (hi - lo) * i / (kGrid - 1);
        const double ya = interp(second.points, x);
        const double yb = interp(largest.points, x);
        sup_diff = std::max(sup_diff, std::abs(ya - yb));
        y_min = std::min(y_min, yb);
        y_max = std::max(y_max, yb);
    }
    const double y_range = y_max - y_min;
    result.metric = sup_diff == 0.0 ? 0.0 : sup_diff / y_range;
    return result;
}

} // namespace qrg
