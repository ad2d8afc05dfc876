#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "udw/errors.hpp"

namespace udw {

struct QuadratureConfig {
    double s_max = 0.0;  // 0 picks a family-dependent default (40/kappa_min)
    double abs_tol = 1e-14;
    double rel_tol = 1e-10;
    int max_subdivisions = 200000;
    double oscillation_resolution = 8.0;  // panels per period 2pi/|omega|

    void validate() const;
};

template <class T>
struct QuadResult {
    T value{};
    double error = 0.0;
    int intervals = 0;
};

namespace detail {

// 21-point Gauss-Kronrod with embedded 10-point Gauss rule.
inline constexpr double xgk[11] = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
inline constexpr double wgk[11] = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
inline constexpr double wg[5] = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(std::complex<double> v) { return std::abs(v); }

template <class T>
struct Panel {
    double a, b;
    T value;
    double error;
    bool settled;  // roundoff-limited, splitting cannot help

    bool operator<(const Panel& o) const { return error < o.error; }
};

template <class T, class F>
Panel<T> gk21(F& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const T fc = f(c);
    T resk = fc * wgk[10];
    T resg{};
    double resabs = magnitude(fc) * wgk[10];
    T fv1[10], fv2[10];
    for (int k = 0; k < 10; ++k) {
        const double dx = h * xgk[k];
        fv1[k] = f(c - dx);
        fv2[k] = f(c + dx);
        resk += wgk[k] * (fv1[k] + fv2[k]);
        resabs += wgk[k] * (magnitude(fv1[k]) + magnitude(fv2[k]));
        if (k % 2 == 1) resg += wg[k / 2] * (fv1[k] + fv2[k]);
    }
    const T mean = 0.5 * resk;
    double resasc = wgk[10] * magnitude(fc - mean);
    for (int k = 0; k < 10; ++k) {
        resasc += wgk[k] * (magnitude(fv1[k] - mean) + magnitude(fv2[k] - mean));
    }
    const double ah = std::abs(h);
    resk *= h;
    resabs *= ah;
    resasc *= ah;
    const double diff = magnitude((resk - resg * h));

    constexpr double eps = std::numeric_limits<double>::epsilon();
    double err = diff;
    if (resasc != 0.0 && err != 0.0) {
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) {
        err = std::max(50.0 * eps * resabs, err);
    }
    const bool settled = diff <= 50.0 * eps * resabs;
    return {a, b, resk, err, settled};
}

// Neumaier-compensated accumulator.
template <class T>
struct CompensatedSum {
    T sum{};
    T comp{};

    void add(T x) {
        add_part(sum, comp, x);
    }

private:
    static void add_scalar(double& s, double& c, double x) {
        const double t = s + x;
        if (std::abs(s) >= std::abs(x)) {
            c += (s - t) + x;
        } else {
            c += (x - t) + s;
        }
        s = t;
    }
    static void add_part(double& s, double& c, double x) { add_scalar(s, c, x); }
    static void add_part(std::complex<double>& s, std::complex<double>& c, std::complex<double> x) {
        double sr = s.real(), si = s.imag(), cr = c.real(), ci = c.imag();
        add_scalar(sr, cr, x.real());
        add_scalar(si, ci, x.imag());
        s = {sr, si};
        c = {cr, ci};
    }

public:
    T total() const { return sum + comp; }
};

}  // namespace detail

// Globally adaptive Gauss-Kronrod quadrature over consecutive breakpoints.
// Breakpoints must be sorted; duplicates are dropped. The panel with the
// largest error estimate is bisected until the summed error meets
// max(abs_tol, rel_tol * |value|). Panels limited by roundoff are frozen.
template <class T, class F>
QuadResult<T> integrate_adaptive(F&& f, const std::vector<double>& breakpoints, double abs_tol,
                                 double rel_tol, int max_subdivisions) {
    if (breakpoints.size() < 2) throw InvalidArgument("integration needs at least two breakpoints");

    std::priority_queue<detail::Panel<T>> active;
    std::vector<detail::Panel<T>> frozen;
    double total_err = 0.0;
    double frozen_err = 0.0;
    T total{};
    int count = 0;

    for (size_t k = 0; k + 1 < breakpoints.size(); ++k) {
        const double a = breakpoints[k];
        const double b = breakpoints[k + 1];
        if (!(b > a)) continue;
        auto panel = detail::gk21<T>(f, a, b);
        total += panel.value;
        total_err += panel.error;
        ++count;
        if (panel.settled) {
            frozen.push_back(panel);
            frozen_err += panel.error;
        } else {
            active.push(panel);
        }
    }

    auto tolerance = [&] { return std::max(abs_tol, rel_tol * detail::magnitude(total)); };

    // Once the frozen panels dominate the error budget, refining the rest
    // cannot reach the tolerance.
    auto worth_refining = [&] {
        const double active_err = total_err - frozen_err;
        return active_err > std::max(tolerance() - frozen_err, 1e-2 * frozen_err);
    };

    while (total_err > tolerance() && !active.empty() && worth_refining()) {
        if (count >= max_subdivisions) {
            throw ConvergenceError("adaptive quadrature hit " + std::to_string(max_subdivisions) +
                                       " subdivisions",
                                   total_err);
        }
        const auto worst = active.top();
        active.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            frozen.push_back(worst);
            frozen_err += worst.error;
            continue;
        }
        auto left = detail::gk21<T>(f, worst.a, mid);
        auto right = detail::gk21<T>(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        ++count;
        // Bisection that neither changes the value nor shrinks the error is
        // chasing noise in the integrand.
        const T joined = left.value + right.value;
        if (left.error + right.error >= 0.99 * worst.error &&
            detail::magnitude(joined - worst.value) <= 1e-5 * detail::magnitude(joined)) {
            left.settled = right.settled = true;
        }
        for (auto* p : {&left, &right}) {
            if (p->settled) {
                frozen.push_back(*p);
                frozen_err += p->error;
            } else {
                active.push(*p);
            }
        }
    }

    // Resum from scratch; the running total drifts after many updates.
    detail::CompensatedSum<T> sum;
    double err = 0.0;
    for (const auto& p : frozen) {
        sum.add(p.value);
        err += p.error;
    }
    while (!active.empty()) {
        sum.add(active.top().value);
        err += active.top().error;
        active.pop();
    }
    return {sum.total(), err, count};
}

// Sorted, de-duplicated breakpoints restricted to [a, b] with both ends included.
std::vector<double> normalize_breakpoints(std::vector<double> points, double a, double b);

// Geometric grading a + sign * h * 2^k (k = 0..) until the distance exceeds
// reach; used to resolve a spike of width h.
void add_graded_points(std::vector<double>& points, double centre, double h, double reach,
                       double ratio = 4.0);

// Uniform mesh of panel width at most (2pi/|omega|)/resolution on [a, b].
void add_oscillation_mesh(std::vector<double>& points, double a, double b, double omega,
                          double resolution);

}  // namespace udw
