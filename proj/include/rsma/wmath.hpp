#pragma once
#include <optional>

namespace rsma {

// Real branches of the Lambert-W function, w * exp(w) = x.
//
// lambert_w0:  principal branch, w >= -1, defined for x >= -1/e.
// lambert_wm1: lower branch, w <= -1, defined for -1/e <= x < 0.
// Both converge to relative residual |w e^w - x| <= ~1e-14 |x|; inputs a few
// ulp past the branch point collapse to -1, anything further throws
// std::domain_error.
double lambert_w0(double x);
double lambert_wm1(double x);

struct BandwidthSolveInput {
    double received_power_w;    // aggregate h*p of the targeted streams
    double target_rate_bps;
    double total_bandwidth_hz;
    double noise_psd_w_per_hz;
};

// Feasibility margin a = ln2 * R * sigma^2 / c. The target rate is reachable
// with some finite band iff a < 1 (c / (sigma^2 ln2) is the wideband ceiling).
double rate_feasibility_margin(const BandwidthSolveInput& in);

// The unique alpha > 0 with  B*alpha*log2(1 + c/(sigma^2*B*alpha)) = R,
// from the lower Lambert-W branch; the trivial root W = -a sits on the
// principal branch for a in (0,1) and is rejected. Returns nullopt when
// a >= 1 (rate unreachable at any bandwidth). Plug-back relative error
// <= 1e-9; result may exceed 1, callers own any budget constraint.
std::optional<double> solve_bandwidth_for_rate(const BandwidthSolveInput& in);

}  // namespace rsma
