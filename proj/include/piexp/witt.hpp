#pragma once

#include "piexp/invariants.hpp"

namespace piexp::witt {

// AH(T) = exp(T + T^p/p + T^{p^2}/p^2 + ...) mod (p, T^{D+1}). The expansion
// is done once in exact rationals (the coefficients are p-integral) and then
// reduced; a mod-p recurrence would have to divide by multiples of p.
class ArtinHasse {
public:
    ArtinHasse(long p, long D) : p_(p) {
        std::vector<Rat> g(static_cast<size_t>(D) + 1, Rat(0));
        Rat ppow(1);
        for (long pk = 1; pk <= D; pk *= p) {
            g[static_cast<size_t>(pk)] = 1 / ppow;
            ppow *= p;
        }
        std::vector<Rat> acc(static_cast<size_t>(D) + 1, Rat(0));
        acc[0] = 1;
        std::vector<Rat> pw(acc);
        Rat inv_fact(1);
        for (long j = 1; j <= D; ++j) {
            std::vector<Rat> next(static_cast<size_t>(D) + 1, Rat(0));
            for (long a = 0; a <= D; ++a) {
                if (pw[static_cast<size_t>(a)] == 0) continue;
                for (long b = 1; a + b <= D; ++b) {
                    if (g[static_cast<size_t>(b)] == 0) continue;
                    next[static_cast<size_t>(a + b)] +=
                        pw[static_cast<size_t>(a)] * g[static_cast<size_t>(b)];
                }
            }
            pw = std::move(next);
            inv_fact /= j;
            for (long i = j; i <= D; ++i) acc[static_cast<size_t>(i)] += pw[static_cast<size_t>(i)] * inv_fact;
        }
        coeffs_.reserve(acc.size());
        Int pz(p);
        for (const Rat& q : acc) {
            // p-integrality of AH is classical; a p in a denominator here is a bug.
            Int den = q.get_den();
            if (mpz_divisible_p(den.get_mpz_t(), pz.get_mpz_t()))
                throw internal_error("ArtinHasse: coefficient not p-integral");
            Int dinv;
            mpz_invert(dinv.get_mpz_t(), den.get_mpz_t(), pz.get_mpz_t());
            coeffs_.push_back(
                mpz_get_si(mod_pos(q.get_num() * dinv, pz).get_mpz_t()));
        }
    }

    long p() const { return p_; }
    const std::vector<long>& coeffs() const { return coeffs_; }

    // AH(u T^n) mod (p, T^{D+1}).
    ResidueSeries series(long u, long n, long D) const {
        ResidueSeries s = residue_one(p_, D);
        long upow = 1;
        for (long j = 1; j * n <= D; ++j) {
            upow = (upow * (u % p_)) % p_;
            s.c[static_cast<size_t>(j * n)] =
                ((coeffs_[static_cast<size_t>(j)] * upow) % p_ + p_) % p_;
        }
        return s;
    }

private:
    long p_;
    std::vector<long> coeffs_;
};

inline ResidueSeries ah_series(long u, long n, const Params& prm) {
    if (n < 1 || n > prm.D) throw std::invalid_argument("ah_series: n out of range");
    return ArtinHasse(prm.p, prm.D).series(u, n, prm.D);
}

// The unique family u_n with ehat = prod_n AH(u_n T^n) mod T^{D+1}; absent
// entries are 0.
struct WittFactorization {
    std::map<long, long> factors;
};

inline WittFactorization witt_factorize(const ResidueSeries& ehat, const ArtinHasse& ah) {
    if (ehat.c.empty() || ehat.c[0] != 1)
        throw std::invalid_argument("witt_factorize: constant coefficient must be 1");
    long D = ehat.trunc_degree();
    WittFactorization out;
    ResidueSeries cur = ehat;
    for (long n = 1; n <= D; ++n) {
        long u = cur.c[static_cast<size_t>(n)];
        if (u == 0) continue;
        out.factors[n] = u;
        cur = residue_div(cur, ah.series(u, n, D));
    }
    if (!cur.is_one())
        throw internal_error("witt_factorize: greedy peel left a nontrivial remainder");
    return out;
}

inline WittFactorization witt_factorize(const ResidueSeries& ehat, const Params& prm) {
    return witt_factorize(ehat, ArtinHasse(prm.p, prm.D));
}

inline ResidueSeries witt_reconstruct(const WittFactorization& w, const ArtinHasse& ah, long D) {
    ResidueSeries s = residue_one(ah.p(), D);
    for (const auto& [n, u] : w.factors) s = residue_mul(s, ah.series(u, n, D));
    return s;
}

// Index through the Witt coordinates of the residue invariant:
// chi = 1 - max{ m p^{floor(log_p(D/n))} : u_n != 0, n = m p^e, p not | m },
// an independent route from the componentwise formula.
inline long index_via_witt(const Poly& P, const Params& prm) {
    ResidueSeries ehat = residue_invariant(P, prm);
    WittFactorization w = witt_factorize(ehat, prm);
    long best = 0;
    for (const auto& [n, u] : w.factors) {
        long m = n;
        while (m % prm.p == 0) m /= prm.p;
        best = std::max(best, m * ipow_long(prm.p, prm.dtable[static_cast<size_t>(n)]));
        (void)u;
    }
    return 1 - best;
}

} // namespace piexp::witt
