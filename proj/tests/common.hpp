#pragma once

#include <random>

#include "piexp/analysis.hpp"
#include "piexp/oracle.hpp"

namespace piexp::testing {

inline CycElem pi_elem(const Params& prm, long i) { return CycElem(prm.ring->pi_layer(i)); }

inline CycElem rat_elem(const Params& prm, const Rat& q) {
    return CycElem::from_rational(prm.ring, q);
}

inline CycElem int_elem(const Params& prm, long v) { return rat_elem(prm, Rat(v)); }

inline Poly make_poly(const Params& prm, std::initializer_list<std::pair<long, CycElem>> coeffs) {
    Poly P;
    P.bound = prm.D;
    for (const auto& [i, c] : coeffs) P.add_to(i, c);
    return P;
}

// pi-exponential polynomial: pi_k T + pi_{k-1} T^p / p + ... + pi_0 T^{p^k} / p^k.
// Its equation has index 1 - p^k at bound D = p^k.
inline Poly pi_exponential_poly(const Params& prm, long k) {
    Poly P;
    P.bound = prm.D;
    Rat inv_ppow(1);
    for (long j = 0; j <= k; ++j) {
        CycElem c = pi_elem(prm, k - j).mul_rational(inv_ppow);
        P.set(ipow_long(prm.p, j), c);
        inv_ppow /= prm.p;
    }
    return P;
}

inline ResidueSeries random_residue_series(std::mt19937_64& rng, long p, long D) {
    ResidueSeries s = residue_one(p, D);
    std::uniform_int_distribution<long> digit(0, p - 1);
    for (long i = 1; i <= D; ++i) s.c[static_cast<size_t>(i)] = digit(rng);
    return s;
}

// Random CycInt with a sprinkle of extra p-valuation.
inline CycInt random_cycint(std::mt19937_64& rng, const Params& prm, long max_extra_val = 2) {
    std::uniform_int_distribution<long> ext(0, max_extra_val);
    std::vector<Int> poly;
    const Int& mod = prm.ring->prime_pow(prm.A);
    std::uniform_int_distribution<unsigned long> word;
    for (long j = 0; j < prm.e(); ++j) {
        Int v = 0;
        for (int w = 0; w < 4; ++w) v = (v << 64) + Int(word(rng));
        v = mod_pos(v, mod);
        for (long t = ext(rng); t > 0; --t) v *= prm.p;
        poly.push_back(mod_pos(v, mod));
    }
    return CycInt::from_poly(prm.ring, poly);
}

// Random exact coefficient: r * pi_j^a for small random pieces; mirrors into
// both the working ring and the oracle's exact field.
struct DualCoeff {
    CycElem approx;
    oracle::ExactCyc exact;
};

inline DualCoeff random_dual_coeff(std::mt19937_64& rng, const Params& prm) {
    std::uniform_int_distribution<long> num(-6, 6);
    std::uniform_int_distribution<long> den(1, 4);
    std::uniform_int_distribution<long> layer(0, prm.ring->tower());
    std::uniform_int_distribution<long> pw(0, 2);
    Rat r(num(rng), den(rng));
    if (r == 0) r = 1;
    r.canonicalize();
    long j = layer(rng), a = pw(rng);
    DualCoeff out;
    out.approx = rat_elem(prm, r);
    out.exact = oracle::ExactCyc::from_rational(prm.ring, r);
    oracle::ExactCyc pl = oracle::ExactCyc::pi_layer(prm.ring, j);
    for (long t = 0; t < a; ++t) {
        out.approx = out.approx * pi_elem(prm, j);
        out.exact = out.exact * pl;
    }
    return out;
}

} // namespace piexp::testing
