#pragma once

#include <sstream>

#include "piexp/series.hpp"
#include "piexp/invariants.hpp"

namespace piexp::oracle {

// Exact element of Q(zeta) in the pi-power basis mod E(x): integer coordinate
// vector over a common positive denominator, normalized. Deliberately slow
// and simple; its only job is to be independent of the finite-precision path.
class ExactCyc {
public:
    ExactCyc() = default;

    static ExactCyc zero(const RingPtr& r) {
        ExactCyc x;
        x.ring_ = r;
        x.num_.assign(static_cast<size_t>(r->degree()), Int(0));
        x.den_ = 1;
        return x;
    }

    static ExactCyc from_rational(const RingPtr& r, const Rat& q) {
        ExactCyc x = zero(r);
        x.num_[0] = q.get_num();
        x.den_ = q.get_den();
        return x;
    }

    static ExactCyc one(const RingPtr& r) { return from_rational(r, 1); }

    // x^t mod E for the basis generator x = pi.
    static ExactCyc pi_pow(const RingPtr& r, long t) {
        std::vector<Int> poly(static_cast<size_t>(t) + 1, Int(0));
        poly.back() = 1;
        ExactCyc x = zero(r);
        x.num_ = reduce_poly(*r, std::move(poly));
        return x;
    }

    // The layer uniformizer pi_i = (1+pi)^{p^{tower-i}} - 1, exactly.
    static ExactCyc pi_layer(const RingPtr& r, long i) {
        if (i < 0 || i > r->tower()) throw std::invalid_argument("pi_layer: out of range");
        ExactCyc base = pi_pow(r, 1) + one(r);
        ExactCyc acc = one(r);
        long t = ipow_long(r->p(), r->tower() - i);
        while (t > 0) {
            if (t & 1) acc = acc * base;
            t >>= 1;
            if (t) base = base * base;
        }
        return acc - one(r);
    }

    const RingPtr& ring() const { return ring_; }
    const std::vector<Int>& num() const { return num_; }
    const Int& den() const { return den_; }

    bool is_zero() const {
        for (const Int& v : num_)
            if (v != 0) return false;
        return true;
    }

    Rat coord(long j) const {
        Rat r(num_[static_cast<size_t>(j)], den_);
        r.canonicalize();  // mpq_class(num, den) does not canonicalize
        return r;
    }

    friend ExactCyc operator+(const ExactCyc& a, const ExactCyc& b) {
        check_same(a, b);
        ExactCyc x = zero(a.ring_);
        x.den_ = a.den_ * b.den_;
        for (size_t j = 0; j < x.num_.size(); ++j)
            x.num_[j] = a.num_[j] * b.den_ + b.num_[j] * a.den_;
        x.normalize();
        return x;
    }

    friend ExactCyc operator-(const ExactCyc& a, const ExactCyc& b) {
        check_same(a, b);
        ExactCyc x = zero(a.ring_);
        x.den_ = a.den_ * b.den_;
        for (size_t j = 0; j < x.num_.size(); ++j)
            x.num_[j] = a.num_[j] * b.den_ - b.num_[j] * a.den_;
        x.normalize();
        return x;
    }

    ExactCyc operator-() const {
        ExactCyc x = *this;
        for (Int& v : x.num_) v = -v;
        return x;
    }

    friend ExactCyc operator*(const ExactCyc& a, const ExactCyc& b) {
        check_same(a, b);
        long e = a.ring_->degree();
        std::vector<Int> prod(static_cast<size_t>(2 * e - 1), Int(0));
        for (long i = 0; i < e; ++i) {
            if (a.num_[static_cast<size_t>(i)] == 0) continue;
            for (long j = 0; j < e; ++j) {
                if (b.num_[static_cast<size_t>(j)] == 0) continue;
                prod[static_cast<size_t>(i + j)] +=
                    a.num_[static_cast<size_t>(i)] * b.num_[static_cast<size_t>(j)];
            }
        }
        ExactCyc x = zero(a.ring_);
        x.num_ = reduce_poly(*a.ring_, std::move(prod));
        x.den_ = a.den_ * b.den_;
        x.normalize();
        return x;
    }

    ExactCyc mul_rational(const Rat& q) const {
        ExactCyc x = *this;
        for (Int& v : x.num_) v *= q.get_num();
        x.den_ *= q.get_den();
        x.normalize();
        return x;
    }

    // Exact pi-adic valuation (in units of v(pi) = 1); nullopt for 0.
    std::optional<long> pi_valuation() const {
        std::optional<long> best;
        long e = ring_->degree();
        long vden = den_ == 1 ? 0 : padic_val(den_, ring_->p_int());
        for (long j = 0; j < e; ++j) {
            const Int& n = num_[static_cast<size_t>(j)];
            if (n == 0) continue;
            long cand = e * (padic_val(n, ring_->p_int()) - vden) + j;
            if (!best || cand < *best) best = cand;
        }
        return best;
    }

    // Field inverse by the extended Euclidean algorithm over Q[x] against E.
    ExactCyc inverse() const {
        if (is_zero()) throw std::invalid_argument("ExactCyc: inverse of zero");
        long e = ring_->degree();
        // Work with rational polynomial vectors (constant first).
        std::vector<Rat> r0(static_cast<size_t>(e) + 1);  // E, monic
        for (long j = 0; j < e; ++j) {
            // recover exact E_j: eis() is reduced mod p^A, but eis_over_p is exact
            r0[static_cast<size_t>(j)] = Rat(ring_->eis_over_p()[static_cast<size_t>(j)] *
                                             ring_->p_int());
        }
        r0[static_cast<size_t>(e)] = 1;
        std::vector<Rat> r1;
        r1.reserve(num_.size());
        for (const Int& n : num_) {
            Rat v(n, den_);
            v.canonicalize();
            r1.push_back(v);
        }
        trim(r1);
        std::vector<Rat> s0{Rat(0)}, s1{Rat(1)};  // coefficients on *this

        while (!r1.empty()) {
            // divide r0 by r1
            std::vector<Rat> q(std::max<size_t>(1, r0.size() - r1.size() + 1), Rat(0));
            std::vector<Rat> rem = r0;
            while (rem.size() >= r1.size() && !rem.empty()) {
                Rat f = rem.back() / r1.back();
                size_t off = rem.size() - r1.size();
                q[off] = f;
                for (size_t j = 0; j < r1.size(); ++j) rem[off + j] -= f * r1[j];
                trim(rem);
            }
            // (r0, r1) <- (r1, rem); (s0, s1) <- (s1, s0 - q s1)
            std::vector<Rat> s2 = s0;
            s2.resize(std::max(s2.size(), q.size() + s1.size()), Rat(0));
            for (size_t a = 0; a < q.size(); ++a) {
                if (q[a] == 0) continue;
                for (size_t b = 0; b < s1.size(); ++b) s2[a + b] -= q[a] * s1[b];
            }
            trim(s2);
            r0 = std::move(r1);
            r1 = std::move(rem);
            s0 = std::move(s1);
            s1 = std::move(s2);
        }
        // r0 is a nonzero constant gcd (E is irreducible): inverse = s0 / r0.
        if (r0.size() != 1 || r0[0] == 0)
            throw internal_error("ExactCyc::inverse: unexpected gcd");
        std::vector<Int> ipoly;
        Rat scale = 1 / r0[0];
        Int den(1);
        std::vector<Rat> coef = s0;
        for (Rat& c : coef) {
            c *= scale;
            c.canonicalize();
            den = lcm(den, Int(c.get_den()));
        }
        ipoly.assign(static_cast<size_t>(e), Int(0));
        std::vector<Int> raw(coef.size());
        for (size_t j = 0; j < coef.size(); ++j)
            raw[j] = Int(coef[j].get_num()) * (den / Int(coef[j].get_den()));
        raw = reduce_poly(*ring_, std::move(raw));
        ExactCyc x = zero(ring_);
        x.num_ = std::move(raw);
        x.den_ = den;
        x.normalize();
        return x;
    }

    friend bool operator==(const ExactCyc& a, const ExactCyc& b) {
        return (a - b).is_zero();
    }

private:
    static void check_same(const ExactCyc& a, const ExactCyc& b) {
        if (a.ring_.get() == b.ring_.get()) return;
        if (!a.ring_ || !b.ring_ || a.ring_->p() != b.ring_->p() ||
            a.ring_->tower() != b.ring_->tower())
            throw internal_error("ExactCyc: ring context mismatch");
    }

    static void trim(std::vector<Rat>& v) {
        while (!v.empty() && v.back() == 0) v.pop_back();
    }

    static std::vector<Int> reduce_poly(const CycRing& r, std::vector<Int> poly) {
        long e = r.degree();
        for (long t = static_cast<long>(poly.size()) - 1; t >= e; --t) {
            Int c = std::move(poly[static_cast<size_t>(t)]);
            poly[static_cast<size_t>(t)] = 0;
            if (c == 0) continue;
            for (long j = 0; j < e; ++j)
                poly[static_cast<size_t>(t - e + j)] -=
                    c * r.eis_over_p()[static_cast<size_t>(j)] * r.p_int();
        }
        poly.resize(static_cast<size_t>(e), Int(0));
        return poly;
    }

    void normalize() {
        if (den_ < 0) {
            den_ = -den_;
            for (Int& v : num_) v = -v;
        }
        Int g = den_;
        for (const Int& v : num_) {
            if (v != 0) g = gcd(g, v);
            if (g == 1) return;
        }
        if (g > 1) {
            den_ /= g;
            for (Int& v : num_) v /= g;
        }
    }

    RingPtr ring_;
    std::vector<Int> num_;
    Int den_ = 1;
};

// Exact sparse polynomial: degree -> exact coefficient.
using ExactPoly = std::map<long, ExactCyc>;

// Coefficients 0..N of exp(P(T)), exactly, by truncated powers. Requires
// P(0) = 0.
inline std::vector<ExactCyc> exp_series_exact(const ExactPoly& P, long N, const RingPtr& ring) {
    if (P.count(0) && !P.at(0).is_zero())
        throw std::invalid_argument("exp_series_exact: constant term present");
    std::vector<ExactCyc> acc(static_cast<size_t>(N) + 1, ExactCyc::zero(ring));
    acc[0] = ExactCyc::one(ring);
    std::vector<ExactCyc> pw = acc;
    Rat inv_fact(1);
    for (long j = 1; j <= N; ++j) {
        std::vector<ExactCyc> next(static_cast<size_t>(N) + 1, ExactCyc::zero(ring));
        bool any = false;
        for (long i = 0; i <= N; ++i) {
            if (pw[static_cast<size_t>(i)].is_zero()) continue;
            for (const auto& [deg, coeff] : P) {
                if (deg == 0) continue;
                if (i + deg > N) break;
                next[static_cast<size_t>(i + deg)] =
                    next[static_cast<size_t>(i + deg)] + pw[static_cast<size_t>(i)] * coeff;
                any = true;
            }
        }
        pw = std::move(next);
        if (!any) break;
        inv_fact /= j;
        for (long i = j; i <= N; ++i) {
            if (pw[static_cast<size_t>(i)].is_zero()) continue;
            acc[static_cast<size_t>(i)] =
                acc[static_cast<size_t>(i)] + pw[static_cast<size_t>(i)].mul_rational(inv_fact);
        }
    }
    return acc;
}

struct ProbeResult {
    bool integral = true;
    long first_failure = -1;   // degree of the first non-integral coefficient
    long failure_val = 0;      // its (negative) pi-valuation
};

// Finite probe of the integrality of exp(P(T)) up to degree N. A falsifier,
// not a prover: the underlying condition quantifies over all degrees.
inline ProbeResult probe_integrality(const ExactPoly& P, long N, const RingPtr& ring) {
    std::vector<ExactCyc> e = exp_series_exact(P, N, ring);
    ProbeResult res;
    for (long i = 1; i <= N; ++i) {
        auto v = e[static_cast<size_t>(i)].pi_valuation();
        if (v && *v < 0) {
            res.integral = false;
            res.first_failure = i;
            res.failure_val = *v;
            return res;
        }
    }
    return res;
}

// Materialize an exact coefficient into the working ring at full precision:
// one rational embedding for the common denominator, integer coordinates for
// the rest.
inline CycElem to_cyc_elem(const ExactCyc& x, const RingPtr& ring) {
    CycInt numerator = CycInt::from_poly(ring, x.num());
    if (x.den() == 1) return CycElem(numerator);
    return CycElem(numerator) * CycElem::from_rational(ring, Rat(1, x.den()));
}

inline Poly to_poly(const ExactPoly& P, const Params& prm) {
    Poly out;
    out.bound = prm.D;
    for (const auto& [i, c] : P) {
        if (c.is_zero()) continue;
        out.set(i, to_cyc_elem(c, prm.ring));
    }
    return out;
}

struct CrosscheckResult {
    bool ok = true;
    bool series_match = true;
    long first_mismatch = -1;
    bool main_soluble = false;
    bool main_precise = true;    // false when the main path raised a precision error
    ProbeResult probe;
    bool contradiction = false;  // main says soluble, probe found a non-integral coefficient
    std::string detail;
};

// Recompute the truncated exponential of the rescaled equation exactly (no
// preparation, no scaling, no precision bookkeeping) and compare it
// coefficientwise, at the main path's working precision, with the pipeline's
// series. Also probes integrality of exp(P) itself up to `horizon` and flags
// a contradiction with the main solubility verdict.
inline CrosscheckResult crosscheck_pipeline(const ExactPoly& P, const Params& prm,
                                            long horizon = -1) {
    if (horizon < 0) horizon = 3 * prm.D;
    const RingPtr& ring = prm.ring;
    CrosscheckResult res;

    // Exact rescale: a_i / pi_{d_i}.
    ExactPoly rescaled;
    std::vector<ExactCyc> layer_inv;
    for (long i = 0; i <= ring->tower(); ++i)
        layer_inv.push_back(ExactCyc::pi_layer(ring, i).inverse());
    for (const auto& [i, c] : P) {
        if (c.is_zero()) continue;
        rescaled[i] = c * layer_inv[static_cast<size_t>(prm.dtable[static_cast<size_t>(i)])];
    }

    std::vector<ExactCyc> exact = exp_series_exact(rescaled, prm.D, ring);

    Poly mainP = to_poly(P, prm);
    Pipeline pipe;
    SolubilityResult sol;
    try {
        pipe = run_exp_pipeline(mainP, prm);
        sol = detail::solubility_from_pipeline(pipe, prm);
    } catch (const precision_error& ex) {
        res.main_precise = false;
        res.ok = false;
        res.detail = std::string("main path precision failure: ") + ex.what();
        return res;
    }
    res.main_soluble = sol.soluble;

    for (long i = 0; i <= prm.D; ++i) {
        const CycElem& mc = pipe.plain.c[static_cast<size_t>(i)];
        // Compare exact * pi^shift with the stored numerator mod p^prec.
        ExactCyc w = exact[static_cast<size_t>(i)];
        if (mc.shift() > 0) w = w * ExactCyc::pi_pow(ring, mc.shift());
        bool match = true;
        long prec = mc.prec();
        const Int& mod = ring->prime_pow(prec);
        Int den = w.den();
        if (mpz_divisible_p(den.get_mpz_t(), ring->p_int().get_mpz_t())) {
            match = false;  // exact value not integral where the main value is
        } else {
            Int dinv;
            mpz_invert(dinv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t());
            for (long j = 0; j < ring->degree() && match; ++j) {
                Int lhs = mod_pos(w.num()[static_cast<size_t>(j)] * dinv, mod);
                if (lhs != mc.num().coeffs()[static_cast<size_t>(j)]) match = false;
            }
        }
        if (!match) {
            res.series_match = false;
            res.first_mismatch = i;
            break;
        }
    }

    res.probe = probe_integrality(P, horizon, ring);
    res.contradiction = res.main_soluble && !res.probe.integral;
    res.ok = res.series_match && !res.contradiction;
    if (!res.ok && res.detail.empty()) {
        std::ostringstream os;
        if (!res.series_match) os << "series mismatch at degree " << res.first_mismatch;
        if (res.contradiction) os << " solubility contradicted at degree " << res.probe.first_failure;
        res.detail = os.str();
    }
    return res;
}

} // namespace piexp::oracle
