#pragma once

#include <chrono>
#include <cmath>

#include "piexp/series.hpp"

namespace piexp::cli {

struct BenchPoint {
    long D = 0;
    long mults = 0;
    long bound = 0;  // D(D-1)/2 + D
    double wall_ms = 0.0;
};

struct BenchResult {
    std::vector<BenchPoint> points;
    double fit_exponent = 0.0;  // least-squares slope of log(mults) vs log(D)
    bool bound_ok = true;
};

// Run the exponential recurrence over a grid of degree bounds on a dense
// input (pi_0 times T + ... + T^D) and report the instrumented ring-product
// counts together with the fitted growth exponent.
inline BenchResult run_bench(long p, const std::vector<long>& grid, long margin = kDefaultMargin) {
    BenchResult out;
    for (long D : grid) {
        Params prm = make_params(p, D, margin);
        Poly P;
        P.bound = D;
        CycElem pi0(prm.ring->pi_layer(0));
        for (long i = 1; i <= D; ++i) P.set(i, pi0);

        auto t0 = std::chrono::steady_clock::now();
        Pipeline pipe = run_exp_pipeline(P, prm);
        auto t1 = std::chrono::steady_clock::now();

        BenchPoint pt;
        pt.D = D;
        pt.mults = pipe.ring_mults;
        pt.bound = D * (D - 1) / 2 + D;
        pt.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        if (pt.mults > pt.bound) out.bound_ok = false;
        out.points.push_back(pt);
    }
    if (out.points.size() >= 2) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        double n = static_cast<double>(out.points.size());
        for (const BenchPoint& pt : out.points) {
            double x = std::log(static_cast<double>(pt.D));
            double y = std::log(static_cast<double>(pt.mults));
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        out.fit_exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    }
    return out;
}

inline std::string format_exponent(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

} // namespace piexp::cli
