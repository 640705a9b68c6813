#pragma once

#include <map>
#include <vector>

#include "piexp/params.hpp"

namespace piexp {

// Sparse polynomial over the cyclotomic field: degree -> coefficient, absent
// means zero, plus a declared degree bound. Equation polynomials P (the
// antiderivatives of the right-hand side L) additionally have no constant
// term; validate_equation enforces that at the user boundary. Coefficients
// that are zero at working precision are dropped on insertion.
struct Poly {
    std::map<long, CycElem> coeffs;
    long bound = 0;

    bool zero() const { return coeffs.empty(); }
    long degree() const { return coeffs.empty() ? 0 : coeffs.rbegin()->first; }

    void set(long i, const CycElem& c) {
        if (c.is_zero())
            coeffs.erase(i);
        else
            coeffs[i] = c;
    }

    void add_to(long i, const CycElem& c) {
        auto it = coeffs.find(i);
        if (it == coeffs.end()) {
            set(i, c);
        } else {
            CycElem s = it->second + c;
            if (s.is_zero())
                coeffs.erase(it);
            else
                it->second = s;
        }
    }

    const CycElem* at(long i) const {
        auto it = coeffs.find(i);
        return it == coeffs.end() ? nullptr : &it->second;
    }
};

inline void validate_equation(const Poly& P, const Params& prm) {
    if (P.coeffs.count(0))
        throw std::invalid_argument("equation polynomial has a constant term");
    if (!P.zero() && P.degree() > prm.D)
        throw std::invalid_argument("polynomial degree exceeds the declared bound");
    for (const auto& [i, c] : P.coeffs) {
        if (i < 0) throw std::invalid_argument("negative degree");
        (void)c;
    }
}

inline Poly poly_add(const Poly& a, const Poly& b) {
    Poly r = a;
    r.bound = std::max(a.bound, b.bound);
    for (const auto& [i, c] : b.coeffs) r.add_to(i, c);
    return r;
}

inline Poly poly_sub(const Poly& a, const Poly& b) {
    Poly r = a;
    r.bound = std::max(a.bound, b.bound);
    for (const auto& [i, c] : b.coeffs) r.add_to(i, -c);
    return r;
}

// d/dT: coefficient i goes to i * a_i at degree i-1. The result may have a
// constant term; it is a right-hand side L, not an equation polynomial.
inline Poly derivative(const Poly& P) {
    Poly r;
    r.bound = std::max(0L, P.bound - 1);
    for (const auto& [i, c] : P.coeffs) {
        if (i == 0) continue;
        r.set(i - 1, c.mul_int(Int(i)));
    }
    return r;
}

// P(uT) for an integer scalar u.
inline Poly substitute_scale(const Poly& P, const Int& u) {
    Poly r;
    r.bound = P.bound;
    Int pw = 1;
    long prev = 0;
    for (const auto& [i, c] : P.coeffs) {
        for (long t = prev; t < i; ++t) pw *= u;
        prev = i;
        r.set(i, c.mul_int(pw));
    }
    return r;
}

// P(T^m).
inline Poly substitute_power(const Poly& P, long m) {
    Poly r;
    r.bound = P.bound * m;
    for (const auto& [i, c] : P.coeffs) r.set(i * m, c);
    return r;
}

enum class SeriesBasis { plain, factorial };

// Truncated power series, indices 0..D. `plain` entries are the series
// coefficients B_i themselves; `factorial` entries are b_i = i! B_i (the shape
// in which the exponential recurrence stays integral).
struct TruncSeries {
    std::vector<CycElem> c;
    SeriesBasis basis = SeriesBasis::plain;

    long trunc_degree() const { return static_cast<long>(c.size()) - 1; }
};

inline TruncSeries series_one(const Params& prm, SeriesBasis basis = SeriesBasis::plain) {
    TruncSeries s;
    s.basis = basis;
    s.c.assign(static_cast<size_t>(prm.D) + 1, CycElem::zero(prm.ring));
    s.c[0] = CycElem::one(prm.ring);
    return s;
}

inline TruncSeries series_mul(const TruncSeries& a, const TruncSeries& b, const Params& prm) {
    if (a.basis != SeriesBasis::plain || b.basis != SeriesBasis::plain)
        throw internal_error("series_mul: expects plain-basis series");
    TruncSeries r;
    r.basis = SeriesBasis::plain;
    long D = prm.D;
    r.c.assign(static_cast<size_t>(D) + 1, CycElem::zero(prm.ring));
    for (long i = 0; i <= D; ++i) {
        if (a.c[static_cast<size_t>(i)].is_zero()) continue;
        for (long j = 0; i + j <= D; ++j) {
            if (b.c[static_cast<size_t>(j)].is_zero()) continue;
            r.c[static_cast<size_t>(i + j)] =
                r.c[static_cast<size_t>(i + j)] + a.c[static_cast<size_t>(i)] * b.c[static_cast<size_t>(j)];
        }
    }
    return r;
}

} // namespace piexp
