#include "rsma/wmath.hpp"

#include <cmath>
#include <stdexcept>

#include "rsma/units.hpp"

namespace rsma {

namespace {

const double kInvE = std::exp(-1.0);
const double kE = std::exp(1.0);

// Expansion around the branch point x = -1/e with p = +-sqrt(2(1 + e x)):
// w = -1 + p - p^2/3 + 11 p^3/72 - 43 p^4/540 + 769 p^5/17280 + O(p^6).
double branch_point_series(double p) {
    return -1.0 +
           p * (1.0 +
                p * (-1.0 / 3.0 +
                     p * (11.0 / 72.0 +
                          p * (-43.0 / 540.0 + p * (769.0 / 17280.0)))));
}

// Bracketed Newton on g(v) = v + sign*ln(v) - u over v > 0. In log form the
// final |g| equals the relative plug-back error of w e^w, so no magnitude is
// ever larger than ~u and nothing can overflow.
double solve_log_form(double u, double sign, double v0, double v_lo, double v_hi) {
    double v = std::min(std::max(v0, v_lo), v_hi);
    for (int i = 0; i < 80; ++i) {
        const double g = v + sign * std::log(v) - u;
        if (std::abs(g) <= 1e-15 * (std::abs(u) + v) + 1e-300) return v;
        if (g > 0.0) v_hi = std::min(v_hi, v); else v_lo = std::max(v_lo, v);
        const double dg = 1.0 + sign / v;
        double next = dg > 0.0 ? v - g / dg : 0.5 * (v_lo + v_hi);
        if (!(next > v_lo) || !(next < v_hi)) next = 0.5 * (v_lo + v_hi);
        v = next;
    }
    return v;
}

// Bracketed Halley iteration on f(w) = w e^w - x for the principal branch,
// where f is increasing on [-1, inf).
double halley_wexp(double x, double w, double lo, double hi) {
    const double tol = 1e-14 * std::max(std::abs(x), 1e-300);
    for (int i = 0; i < 50; ++i) {
        const double ew = std::exp(w);
        const double f = w * ew - x;
        if (std::abs(f) <= tol) return w;
        if (f > 0.0) hi = w; else lo = w;
        const double fp = ew * (w + 1.0);
        const double fpp = ew * (w + 2.0);
        const double denom = fp - 0.5 * f * fpp / fp;
        double next = (fp != 0.0 && denom != 0.0) ? w - f / denom : 0.5 * (lo + hi);
        if (!(next > lo) || !(next < hi) || !std::isfinite(next)) next = 0.5 * (lo + hi);
        w = next;
    }
    // Halley stalled; finish with plain bisection on the bracket.
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double f = mid * std::exp(mid) - x;
        if (std::abs(f) <= tol) return mid;
        if (f > 0.0) hi = mid; else lo = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double lambert_w0(double x) {
    if (std::isnan(x)) throw std::domain_error("lambert_w0: NaN input");
    if (x < -kInvE) {
        if (x > -kInvE * (1.0 + 1e-12)) return -1.0;  // a few ulp past the branch point
        throw std::domain_error("lambert_w0: x below -1/e");
    }
    if (x == 0.0) return 0.0;

    const double q = 2.0 * (1.0 + kE * x);  // p^2
    if (q <= 0.0) return -1.0;
    const double p = std::sqrt(q);
    if (p <= 0.01) return branch_point_series(p);

    if (x >= 3.0) {
        // Log form: v + ln v = ln x with v = w; the root sits in
        // [u - ln u, u], both ends checked by sign.
        const double u = std::log(x);
        const double lu = std::log(u);
        return solve_log_form(u, +1.0, u - lu + lu / u,
                              std::max(1.0, u - lu) * (1.0 - 1e-12), u);
    }

    double w0;
    if (x < -0.18) {
        w0 = branch_point_series(std::min(p, 1.0));
    } else {
        w0 = x * (1.0 - x * (1.0 - 1.5 * x));  // series near zero
    }
    const double lo = -1.0;
    const double hi = x < 0.0 ? 0.0 : std::log1p(x) + 1e-3;
    w0 = std::min(std::max(w0, lo + 1e-14), hi - 1e-14);
    return halley_wexp(x, w0, lo, hi);
}

double lambert_wm1(double x) {
    if (std::isnan(x)) throw std::domain_error("lambert_wm1: NaN input");
    if (x >= 0.0) throw std::domain_error("lambert_wm1: x must be negative");
    if (x < -kInvE) {
        if (x > -kInvE * (1.0 + 1e-12)) return -1.0;
        throw std::domain_error("lambert_wm1: x below -1/e");
    }

    const double q = 2.0 * (1.0 + kE * x);
    if (q <= 0.0) return -1.0;
    const double p = std::sqrt(q);
    if (p <= 0.01) return branch_point_series(-p);

    // With v = -w >= 1: v - ln v = -ln(-x); root above 1 + p/2 and below
    // u + ln u + 1.
    const double u = -std::log(-x);
    const double lu = std::log(std::max(u, 1.0));
    const double v_lo = std::max(1.0, 1.0 + 0.5 * p * (1.0 - p));
    const double v_hi = u + lu + 1.0;
    return -solve_log_form(u, -1.0, u + lu + lu / u, v_lo, v_hi);
}

double rate_feasibility_margin(const BandwidthSolveInput& in) {
    return kLn2 * in.target_rate_bps * in.noise_psd_w_per_hz / in.received_power_w;
}

namespace {

void check_bandwidth_input(const BandwidthSolveInput& in) {
    if (!(in.received_power_w > 0.0) || !(in.target_rate_bps > 0.0) ||
        !(in.total_bandwidth_hz > 0.0) || !(in.noise_psd_w_per_hz > 0.0))
        throw std::invalid_argument("solve_bandwidth_for_rate: inputs must be strictly positive");
}

double rate_at_alpha(const BandwidthSolveInput& in, double alpha) {
    const double band = in.total_bandwidth_hz * alpha;
    return capacity_bps(band, in.received_power_w, in.noise_psd_w_per_hz * band);
}

// Monotone scalar fallback used when the Lambert argument sits essentially on
// the branch point (double root) where the closed form loses digits.
double bisect_alpha(const BandwidthSolveInput& in, double hint) {
    double hi = hint > 0.0 && std::isfinite(hint) ? hint : 1.0;
    while (rate_at_alpha(in, hi) < in.target_rate_bps) {
        hi *= 2.0;
        if (!std::isfinite(hi)) return hi;
    }
    double lo = hi;
    while (rate_at_alpha(in, lo) >= in.target_rate_bps && lo > 1e-300) lo *= 0.5;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (rate_at_alpha(in, mid) >= in.target_rate_bps) hi = mid; else lo = mid;
    }
    return hi;
}

}  // namespace

std::optional<double> solve_bandwidth_for_rate(const BandwidthSolveInput& in) {
    check_bandwidth_input(in);
    const double a = rate_feasibility_margin(in);
    if (a >= 1.0) return std::nullopt;

    const double arg = -a * std::exp(-a);
    double alpha;
    if (arg < -kInvE * (1.0 - 1e-12)) {
        alpha = bisect_alpha(in, in.received_power_w /
                                     (in.noise_psd_w_per_hz * in.total_bandwidth_hz));
    } else {
        const double w = lambert_wm1(arg);
        alpha = -a * in.received_power_w /
                (in.noise_psd_w_per_hz * in.total_bandwidth_hz * (w + a));
    }

    // Newton polish on the defining equation absorbs the cancellation in
    // w + a as a -> 1 and pins the plug-back error near machine precision.
    for (int i = 0; i < 3; ++i) {
        const double f = rate_at_alpha(in, alpha) - in.target_rate_bps;
        if (std::abs(f) <= 1e-12 * in.target_rate_bps) break;
        const double k = in.received_power_w / (in.noise_psd_w_per_hz * in.total_bandwidth_hz);
        const double df = in.total_bandwidth_hz / kLn2 *
                          (std::log1p(k / alpha) - k / (alpha + k));
        const double next = alpha - f / df;
        if (!(next > 0.0) || !std::isfinite(next)) break;
        alpha = next;
    }
    return alpha;
}

}  // namespace rsma
