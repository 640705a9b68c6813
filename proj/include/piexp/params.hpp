#pragma once

#include <vector>

#include "piexp/cyclotomic.hpp"

namespace piexp {

inline bool is_prime_long(long n) {
    if (n < 2) return false;
    for (long q = 2; q * q <= n; ++q)
        if (n % q == 0) return false;
    return true;
}

constexpr long kDefaultMargin = 8;

// Arithmetic context for analyses at degree bound D:
//   d         = floor(log_p D)
//   dtable[i] = floor(log_p (D/i)) for 1 <= i <= D     (dtable[0] unused)
//   A         = ceil(D (p+1)/(p-1)) + margin           (absolute precision)
// plus the shared cyclotomic ring. Component analyses at bound D/m reuse the
// parent ring (their coefficients live there), so `d` and `dtable` may be
// smaller than the ring's tower.
struct Params {
    long p = 0;
    long D = 0;
    long d = 0;
    long A = 0;
    long margin = 0;
    std::vector<long> dtable;
    RingPtr ring;

    long e() const { return ring->degree(); }
    long pi_divisor_val(long i) const {
        // pi-adic valuation of pi_{dtable[i]} in the ambient ring.
        return ipow_long(p, ring->tower() - dtable[static_cast<size_t>(i)]);
    }
};

inline std::vector<long> make_dtable(long p, long D) {
    std::vector<long> t(static_cast<size_t>(D) + 1, 0);
    for (long i = 1; i <= D; ++i) t[static_cast<size_t>(i)] = ilog(p, D / i);
    return t;
}

inline Params make_params(long p, long D, long margin = kDefaultMargin) {
    if (!is_prime_long(p)) throw std::invalid_argument("make_params: p must be prime");
    if (D < 1) throw std::invalid_argument("make_params: degree bound must be >= 1");
    if (margin < 0) throw std::invalid_argument("make_params: margin must be >= 0");
    Params prm;
    prm.p = p;
    prm.D = D;
    prm.d = ilog(p, D);
    prm.margin = margin;
    prm.A = ceil_div(D * (p + 1), p - 1) + margin;
    prm.dtable = make_dtable(p, D);
    prm.ring = CycRing::create(p, prm.d, prm.A);
    return prm;
}

// Same ring, smaller degree bound (for p-typical components and for the
// degree-lowering reduction).
inline Params params_with_bound(const Params& parent, long D) {
    if (D < 1 || D > parent.D) throw std::invalid_argument("params_with_bound: bad bound");
    Params prm = parent;
    prm.D = D;
    prm.d = ilog(parent.p, D);
    prm.dtable = make_dtable(parent.p, D);
    return prm;
}

inline Params component_params(const Params& parent, long m) {
    return params_with_bound(parent, parent.D / m);
}

} // namespace piexp
