#pragma once

#include <algorithm>

#include "piexp/poly.hpp"

namespace piexp {

// Divide each coefficient a_i by the layer uniformizer pi_{d_i}. The division
// is by the cached unit part plus a pi-power shift, so it is exact.
inline Poly pi_rescale(const Poly& P, const Params& prm) {
    if (!P.zero() && P.degree() > prm.D)
        throw std::invalid_argument("pi_rescale: degree exceeds bound");
    Poly r;
    r.bound = P.bound;
    const RingPtr& ring = prm.ring;
    for (const auto& [i, c] : P.coeffs) {
        long di = prm.dtable[static_cast<size_t>(i)];
        long s = ipow_long(prm.p, ring->tower() - di);
        CycElem q = c * CycElem(ring->pi_layer_unit_inv(di));
        r.set(i, q.mul_pi_pow(-s));
    }
    return r;
}

struct Prepared {
    Poly scaled;       // Q(pi^k T), coefficients materialized as ring integers
    long k = 0;        // smallest exponent making every coefficient integral
    long min_val = 0;  // min pi-valuation over the scaled coefficients
};

// Substitute T -> pi^k T with the smallest k (possibly negative) making all
// coefficients integral: k = max_i ceil(-v(a_i)/i). Minimality yields the
// Gauss-norm bound min_val <= D - 1. clamp_nonnegative restricts to k >= 0
// for callers that only need integrality.
inline Prepared prepare(const Poly& rescaled, const Params& prm, bool clamp_nonnegative = false) {
    if (rescaled.zero()) throw std::invalid_argument("prepare: zero polynomial");
    long k = 0;
    bool have = false;
    for (const auto& [i, c] : rescaled.coeffs) {
        auto v = c.valuation();
        long cand;
        if (v) {
            cand = ceil_div(-*v, i);
        } else {
            if (c.val_floor() < 0)
                throw precision_error("prepare: coefficient valuation not certified");
            continue;  // certified integral at any k >= 0 we may pick
        }
        if (!have || cand > k) {
            k = cand;
            have = true;
        }
    }
    if (!have) k = 0;  // every coefficient certified integral already
    if (clamp_nonnegative && k < 0) k = 0;

    Prepared out;
    out.k = k;
    out.scaled.bound = rescaled.bound;
    bool have_min = false;
    for (const auto& [i, c] : rescaled.coeffs) {
        CycInt w = c.mul_pi_pow(i * k).to_integral();
        out.scaled.set(i, CycElem(w));
        auto v = w.valuation();
        if (v && (!have_min || *v < out.min_val)) {
            out.min_val = *v;
            have_min = true;
        }
    }
    if (!have_min) out.min_val = prm.e() * prm.A;
    return out;
}

// Truncated exponential of the equation with right-hand side `lscaled`, via
// the coefficient recurrence in factorial form:
//
//   b_0 = 1,   b_{i+1} = sum_{k=0..min(i,D-1)} c_k * i(i-1)...(i-k+1) * b_{i-k}
//
// where exp = sum b_i T^i / i!. Equivalently (i+1) B_{i+1} = sum c_k B_{i-k}
// on the plain coefficients. With integral input all b_i stay in the ring.
// Counts exactly sum_{i<D} min(i+1, D) <= D(D-1)/2 + D ring products into
// *mult_count when given.
inline TruncSeries exp_series_recurrence(const Poly& lscaled, const Params& prm,
                                         long* mult_count = nullptr) {
    long D = prm.D;
    if (!lscaled.zero() && lscaled.degree() > D - 1)
        throw std::invalid_argument("exp_series_recurrence: derivative degree exceeds D-1");
    const RingPtr& ring = prm.ring;

    long prec = ring->max_prec();
    std::vector<CycInt> c(static_cast<size_t>(D), CycInt());
    for (long j = 0; j < D; ++j) {
        const CycElem* cj = lscaled.at(j);
        if (cj) {
            if (cj->val_floor() < 0)
                throw internal_error("exp_series_recurrence: non-integral input");
            CycInt w = cj->to_integral();
            prec = std::min(prec, w.prec());
            c[static_cast<size_t>(j)] = w;
        }
    }
    for (long j = 0; j < D; ++j) {
        if (!c[static_cast<size_t>(j)].valid()) c[static_cast<size_t>(j)] = CycInt::zero(ring, prec);
    }

    std::vector<CycInt> b(static_cast<size_t>(D) + 1);
    b[0] = CycInt::one(ring, prec);
    long mults = 0;
    for (long i = 0; i < D; ++i) {
        CycInt acc = CycInt::zero(ring, prec);
        Int fall = 1;
        long kmax = std::min(i, D - 1);
        for (long k = 0; k <= kmax; ++k) {
            if (k > 0) fall *= (i - k + 1);
            acc = acc + c[static_cast<size_t>(k)] * b[static_cast<size_t>(i - k)].mul_int(fall);
            ++mults;
        }
        b[static_cast<size_t>(i + 1)] = acc;
    }
    if (mult_count) *mult_count = mults;

    TruncSeries s;
    s.basis = SeriesBasis::factorial;
    s.c.reserve(b.size());
    for (auto& x : b) s.c.emplace_back(std::move(x));
    return s;
}

// Same series by truncated powers: 1 + Q + Q^2/2 + ... + Q^D/D!. Slower and
// independent of the recurrence; used as the in-library cross-check path.
inline TruncSeries exp_series_direct(const Poly& rescaled, const Params& prm) {
    if (!rescaled.zero() && rescaled.coeffs.begin()->first < 1)
        throw std::invalid_argument("exp_series_direct: constant term present");
    long D = prm.D;
    TruncSeries acc = series_one(prm);
    std::vector<CycElem> pw = acc.c;  // current power of the input, truncated
    Rat inv_fact(1);
    for (long j = 1; j <= D; ++j) {
        // pw <- trunc(pw * rescaled)
        std::vector<CycElem> next(static_cast<size_t>(D) + 1, CycElem::zero(prm.ring));
        for (long i = 0; i <= D; ++i) {
            if (pw[static_cast<size_t>(i)].is_zero()) continue;
            for (const auto& [deg, coeff] : rescaled.coeffs) {
                if (i + deg > D) break;
                next[static_cast<size_t>(i + deg)] =
                    next[static_cast<size_t>(i + deg)] + pw[static_cast<size_t>(i)] * coeff;
            }
        }
        pw = std::move(next);
        inv_fact /= j;
        bool any = false;
        for (long i = j; i <= D; ++i) {
            if (pw[static_cast<size_t>(i)].is_zero()) continue;
            acc.c[static_cast<size_t>(i)] =
                acc.c[static_cast<size_t>(i)] + pw[static_cast<size_t>(i)].mul_rational(inv_fact);
            any = true;
        }
        if (!any) break;  // Q^j already vanished below the truncation order
    }
    return acc;
}

// Undo the preparation substitution: coefficient i picks up pi^{-ik}.
inline TruncSeries unscale(const TruncSeries& s, long k, const Params& prm) {
    (void)prm;
    if (k == 0) return s;
    TruncSeries r;
    r.basis = s.basis;
    r.c.reserve(s.c.size());
    for (long i = 0; i < static_cast<long>(s.c.size()); ++i)
        r.c.push_back(s.c[static_cast<size_t>(i)].mul_pi_pow(-i * k));
    return r;
}

// b_i -> B_i = b_i / i!, performed as an exact rational multiplication (the
// p-part of i! becomes denominator bookkeeping, no digit is spent here).
inline TruncSeries factorial_to_plain(const TruncSeries& s, const Params& prm) {
    (void)prm;
    if (s.basis == SeriesBasis::plain) return s;
    TruncSeries r;
    r.basis = SeriesBasis::plain;
    r.c.reserve(s.c.size());
    Rat inv_fact(1);
    for (long i = 0; i < static_cast<long>(s.c.size()); ++i) {
        if (i > 1) inv_fact /= i;
        r.c.push_back(i <= 1 ? s.c[static_cast<size_t>(i)]
                             : s.c[static_cast<size_t>(i)].mul_rational(inv_fact));
    }
    return r;
}

// One full run of the main computation: rescale by the uniformizers, prepare,
// run the exponential recurrence, and undo both scalings. The `plain` series
// holds the coefficients B_i of the truncated exponential of the rescaled
// equation; everything downstream (solubility, residues) reads off it.
struct Pipeline {
    Poly rescaled;
    long k = 0;
    long min_prepared_val = 0;
    TruncSeries factorial_scaled;  // b_i of the prepared equation
    TruncSeries plain;             // B_i of the rescaled equation
    long ring_mults = 0;
};

inline Pipeline run_exp_pipeline(const Poly& P, const Params& prm) {
    validate_equation(P, prm);
    Pipeline out;
    if (P.zero()) {
        out.factorial_scaled = series_one(prm, SeriesBasis::factorial);
        out.plain = series_one(prm);
        return out;
    }
    out.rescaled = pi_rescale(P, prm);
    Prepared prep = prepare(out.rescaled, prm);
    out.k = prep.k;
    out.min_prepared_val = prep.min_val;
    Poly l = derivative(prep.scaled);
    out.factorial_scaled = exp_series_recurrence(l, prm, &out.ring_mults);
    out.plain = unscale(factorial_to_plain(out.factorial_scaled, prm), prep.k, prm);
    return out;
}

} // namespace piexp
