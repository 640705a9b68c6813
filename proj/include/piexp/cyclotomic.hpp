#pragma once

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <vector>

#include "piexp/errors.hpp"

namespace piexp {

using Int = mpz_class;
using Rat = mpq_class;

inline long ipow_long(long b, long n) {
    long r = 1;
    while (n-- > 0) r *= b;
    return r;
}

// Largest t >= 0 with p^t <= x, for x >= 1.
inline long ilog(long p, long x) {
    long t = 0, pw = 1;
    while (pw <= x / p) { pw *= p; ++t; }
    return t;
}

// v_p(x) for x != 0.
inline long padic_val(const Int& x, const Int& p) {
    Int rest;
    return static_cast<long>(mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t()));
}

inline Int mod_pos(const Int& a, const Int& m) {
    Int r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

// Ceiling of a/b for b > 0.
inline long ceil_div(long a, long b) {
    long q = a / b, r = a % b;
    return q + ((r != 0 && (r > 0) == (b > 0)) ? 1 : 0);
}

// Coefficients (constant first) of Phi_{p^{d+1}}(1+x) = sum_{j<p} (1+x)^{j p^d}:
// monic of degree e = p^d (p-1), Eisenstein at p, constant term p. This is the
// minimal polynomial of pi_d = zeta - 1 for zeta of order p^{d+1}.
inline std::vector<Int> eisenstein_poly(long p, long d) {
    if (p < 2 || d < 0) throw std::invalid_argument("eisenstein_poly: bad arguments");
    long pd = ipow_long(p, d);
    long e = pd * (p - 1);
    std::vector<Int> c(static_cast<size_t>(e) + 1, 0);
    Int b;
    for (long j = 0; j < p; ++j) {
        long n = j * pd;
        for (long t = 0; t <= n; ++t) {
            mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n),
                         static_cast<unsigned long>(t));
            c[static_cast<size_t>(t)] += b;
        }
    }
    return c;
}

class CycInt;

// Arithmetic context for the ring of integers R of Q_p(zeta), zeta of order
// p^{tower+1}, in the pi-power basis modulo (E(x), p^prec):
//
//   * basis 1, pi, ..., pi^{e-1} with pi = zeta - 1 and E = eisenstein_poly;
//   * e = p^tower (p-1), the ramification index;
//   * absolute precision capped at max_prec digits, with a floor below which
//     divisions refuse to go.
//
// The Eisenstein shape makes the pi-adic valuation of an element readable
// directly off its coordinates (the e basis monomials have pairwise distinct
// valuations mod e). Constructed once via CycRing::create and shared by all
// values; immutable afterwards. Cached constants are stored as bare
// coordinate vectors and wrapped into elements on access, so the ring never
// holds owning references back to itself.
class CycRing : public std::enable_shared_from_this<CycRing> {
public:
    static std::shared_ptr<const CycRing> create(long p, long tower, long max_prec,
                                                 long floor_prec = 1);

    long p() const { return p_; }
    long tower() const { return tower_; }   // d of the ring's cyclotomic layer
    long degree() const { return e_; }      // e = p^tower (p-1)
    long max_prec() const { return A_; }
    long floor_prec() const { return floor_; }

    const Int& p_int() const { return p_int_; }
    // p^k for 0 <= k <= max_prec.
    const Int& prime_pow(long k) const { return ppow_[static_cast<size_t>(k)]; }
    // E_j, reduced mod p^max_prec (E is monic; only j < e stored).
    const std::vector<Int>& eis() const { return eis_; }
    // E_j / p for j < e (exact integers; Eisenstein property).
    const std::vector<Int>& eis_over_p() const { return eis_over_p_; }

    CycInt pi() const;                     // pi = pi_tower
    CycInt unit_pi_e_over_p() const;       // pi^e / p, a unit, exact
    CycInt inv_unit_pi_e_over_p() const;   // its inverse
    CycInt pi_layer(long i) const;         // pi_i = (1+pi)^{p^{tower-i}} - 1
    CycInt pi_layer_unit_inv(long i) const;  // inverse of pi_i / pi^{p^{tower-i}}

private:
    struct Stored {
        long prec = 0;
        std::vector<Int> c;
    };

    CycRing() = default;
    void init(long p, long tower, long max_prec, long floor_prec);
    CycInt attach(const Stored& s) const;

    long p_ = 0, tower_ = 0, e_ = 0, A_ = 0, floor_ = 1;
    Int p_int_;
    std::vector<Int> ppow_;
    std::vector<Int> eis_, eis_over_p_;
    Stored pi_store_, u_e_store_, inv_u_e_store_;
    std::vector<Stored> layer_store_;           // 0..tower
    std::vector<Stored> layer_unit_inv_store_;
};

using RingPtr = std::shared_ptr<const CycRing>;

// Element of R/(p^prec) in the pi-power basis: sum_j c_[j] pi^j with residues
// c_[j] in [0, p^prec). prec <= ring->max_prec() tracks how many p-adic digits
// are still trustworthy; ring operations propagate the minimum, divisions
// consume digits.
class CycInt {
public:
    CycInt() = default;

    static CycInt zero(const RingPtr& r, long prec = -1) {
        CycInt x;
        x.ring_ = r;
        x.prec_ = prec < 0 ? r->max_prec() : prec;
        x.c_.assign(static_cast<size_t>(r->degree()), Int(0));
        return x;
    }

    static CycInt constant(const RingPtr& r, const Int& v, long prec = -1) {
        CycInt x = zero(r, prec);
        x.c_[0] = mod_pos(v, r->prime_pow(x.prec_));
        return x;
    }

    static CycInt one(const RingPtr& r, long prec = -1) { return constant(r, 1, prec); }

    static CycInt from_parts(RingPtr r, long prec, std::vector<Int> coeffs) {
        if (static_cast<long>(coeffs.size()) != r->degree())
            throw internal_error("CycInt::from_parts: wrong coordinate count");
        CycInt x;
        x.ring_ = std::move(r);
        x.prec_ = prec;
        x.c_ = std::move(coeffs);
        return x;
    }

    // Reduce an arbitrary integer polynomial (constant first) by E, then mod p^prec.
    static CycInt from_poly(const RingPtr& r, std::vector<Int> poly, long prec = -1) {
        CycInt x = zero(r, prec);
        reduce_by_eis(*r, poly);
        for (size_t j = 0; j < x.c_.size() && j < poly.size(); ++j)
            x.c_[j] = mod_pos(poly[j], r->prime_pow(x.prec_));
        return x;
    }

    bool valid() const { return static_cast<bool>(ring_); }
    const RingPtr& ring() const { return ring_; }
    long prec() const { return prec_; }
    const std::vector<Int>& coeffs() const { return c_; }

    bool is_zero() const {
        for (const Int& v : c_)
            if (v != 0) return false;
        return true;
    }

    bool is_one() const {
        if (c_[0] != 1) return false;
        for (size_t j = 1; j < c_.size(); ++j)
            if (c_[j] != 0) return false;
        return true;
    }

    // pi-adic valuation, exact whenever the element is nonzero at the current
    // precision. nullopt is the "zero at working precision" marker: the true
    // valuation is only known to be >= degree()*prec().
    std::optional<long> valuation() const {
        std::optional<long> v;
        long e = ring_->degree();
        for (long j = 0; j < e; ++j) {
            const Int& cj = c_[static_cast<size_t>(j)];
            if (cj == 0) continue;
            long cand = e * padic_val(cj, ring_->p_int()) + j;
            if (!v || cand < *v) v = cand;
        }
        return v;
    }

    // Lower bound on the valuation that also covers the zero-at-precision case.
    long val_floor() const {
        auto v = valuation();
        return v ? *v : ring_->degree() * prec_;
    }

    CycInt reduced_to(long prec) const {
        if (prec >= prec_) return *this;
        if (prec < 1) throw precision_error("precision exhausted");
        CycInt x;
        x.ring_ = ring_;
        x.prec_ = prec;
        x.c_.reserve(c_.size());
        const Int& m = ring_->prime_pow(prec);
        for (const Int& v : c_) x.c_.push_back(mod_pos(v, m));
        return x;
    }

    friend CycInt operator+(const CycInt& a, const CycInt& b) {
        check_same(a, b);
        long prec = std::min(a.prec_, b.prec_);
        CycInt x = zero(a.ring_, prec);
        const Int& m = a.ring_->prime_pow(prec);
        for (size_t j = 0; j < x.c_.size(); ++j) x.c_[j] = mod_pos(a.c_[j] + b.c_[j], m);
        return x;
    }

    friend CycInt operator-(const CycInt& a, const CycInt& b) {
        check_same(a, b);
        long prec = std::min(a.prec_, b.prec_);
        CycInt x = zero(a.ring_, prec);
        const Int& m = a.ring_->prime_pow(prec);
        for (size_t j = 0; j < x.c_.size(); ++j) x.c_[j] = mod_pos(a.c_[j] - b.c_[j], m);
        return x;
    }

    CycInt operator-() const {
        CycInt x = zero(ring_, prec_);
        const Int& m = ring_->prime_pow(prec_);
        for (size_t j = 0; j < c_.size(); ++j) x.c_[j] = mod_pos(-c_[j], m);
        return x;
    }

    friend CycInt operator*(const CycInt& a, const CycInt& b) {
        check_same(a, b);
        long prec = std::min(a.prec_, b.prec_);
        long e = a.ring_->degree();
        std::vector<Int> prod(static_cast<size_t>(2 * e - 1), Int(0));
        for (long i = 0; i < e; ++i) {
            if (a.c_[static_cast<size_t>(i)] == 0) continue;
            for (long j = 0; j < e; ++j) {
                if (b.c_[static_cast<size_t>(j)] == 0) continue;
                prod[static_cast<size_t>(i + j)] +=
                    a.c_[static_cast<size_t>(i)] * b.c_[static_cast<size_t>(j)];
            }
        }
        reduce_by_eis(*a.ring_, prod);
        CycInt x = zero(a.ring_, prec);
        const Int& m = a.ring_->prime_pow(prec);
        for (size_t j = 0; j < x.c_.size(); ++j) x.c_[j] = mod_pos(prod[j], m);
        return x;
    }

    CycInt mul_int(const Int& s) const {
        CycInt x = zero(ring_, prec_);
        const Int& m = ring_->prime_pow(prec_);
        for (size_t j = 0; j < c_.size(); ++j) x.c_[j] = mod_pos(c_[j] * s, m);
        return x;
    }

    // Multiply by pi^t, t >= 0.
    CycInt mul_pi_pow(long t) const {
        if (t == 0) return *this;
        return *this * pi_pow(ring_, t, prec_);
    }

    static CycInt pi_pow(const RingPtr& r, long t, long prec = -1) {
        if (t < 0) throw internal_error("pi_pow: negative exponent");
        CycInt acc = one(r, prec);
        CycInt base = r->pi().reduced_to(prec < 0 ? r->max_prec() : prec);
        while (t > 0) {
            if (t & 1) acc = acc * base;
            t >>= 1;
            if (t) base = base * base;
        }
        return acc;
    }

    // Exact coefficientwise division by p^k; every coordinate must be
    // divisible. Consumes k digits of precision.
    CycInt div_p(long k) const {
        if (k == 0) return *this;
        if (prec_ - k < ring_->floor_prec())
            throw precision_error("precision exhausted dividing by p^" + std::to_string(k));
        CycInt x = zero(ring_, prec_ - k);
        const Int& pk = ring_->prime_pow(k);
        for (size_t j = 0; j < c_.size(); ++j) {
            if (!mpz_divisible_p(c_[j].get_mpz_t(), pk.get_mpz_t()))
                throw internal_error("div_p: coordinate not divisible");
            x.c_[j] = c_[j] / pk;
        }
        return x;
    }

    size_t hash_coeffs() const {
        size_t seed = c_.size();
        for (const Int& v : c_) {
            seed ^= mpz_get_ui(v.get_mpz_t()) + 0x9e3779b97f4a7c15ull + (seed << 6) + (seed >> 2);
        }
        return seed;
    }

    friend bool operator==(const CycInt& a, const CycInt& b) {
        return a.ring_.get() == b.ring_.get() && a.prec_ == b.prec_ && a.c_ == b.c_;
    }

private:
    // Two contexts are compatible when they present the same ring, i.e. the
    // same prime and cyclotomic tower; the precision caps may differ (results
    // carry the minimum).
    static void check_same(const CycInt& a, const CycInt& b) {
        if (a.ring_.get() == b.ring_.get()) return;
        if (!a.ring_ || !b.ring_ || a.ring_->p() != b.ring_->p() ||
            a.ring_->tower() != b.ring_->tower())
            throw internal_error("CycInt: ring context mismatch");
    }

    static void reduce_by_eis(const CycRing& r, std::vector<Int>& poly) {
        long e = r.degree();
        const std::vector<Int>& E = r.eis();
        for (long t = static_cast<long>(poly.size()) - 1; t >= e; --t) {
            Int c = std::move(poly[static_cast<size_t>(t)]);
            poly[static_cast<size_t>(t)] = 0;
            if (c == 0) continue;
            for (long j = 0; j < e; ++j)
                poly[static_cast<size_t>(t - e + j)] -= c * E[static_cast<size_t>(j)];
        }
        poly.resize(static_cast<size_t>(e), Int(0));
    }

    RingPtr ring_;
    long prec_ = 0;
    std::vector<Int> c_;
};

// Exact quotient x / pi^m for m <= val(x). Costs ceil(m/e) digits: the
// remainder m mod e is first cleared by multiplying with pi^(e - m mod e),
// after which each pi^e divides off as one exact p-division times the unit
// pi^e/p (from E(pi) = 0, i.e. p = -pi (pi^{e-1} + E_{e-1} pi^{e-2} + ... + E_1)).
inline CycInt div_pi_pow(const CycInt& x, long m) {
    if (m < 0) throw internal_error("div_pi_pow: negative exponent");
    if (m == 0) return x;
    const RingPtr& r = x.ring();
    long e = r->degree();
    auto v = x.valuation();
    if (v) {
        if (*v < m) throw internal_error("div_pi_pow: valuation too small");
    } else if (e * x.prec() < m) {
        throw precision_error("div_pi_pow: cannot certify valuation at working precision");
    }
    long q = m / e, rem = m % e;
    CycInt y = x;
    if (rem != 0) {
        y = y.mul_pi_pow(e - rem);
        ++q;
    }
    if (q > 0) {
        y = y.div_p(q);
        CycInt inv = CycInt::one(r, y.prec());
        CycInt base = r->inv_unit_pi_e_over_p().reduced_to(y.prec());
        long t = q;
        while (t > 0) {
            if (t & 1) inv = inv * base;
            t >>= 1;
            if (t) base = base * base;
        }
        y = y * inv;
    }
    return y;
}

// Inverse of a unit, by lifting the inverse of the residue mod p through
// Newton steps z <- z (2 - xz); the error 1 - xz squares at each step.
inline CycInt unit_inverse(const CycInt& x) {
    auto v = x.valuation();
    if (!v || *v != 0) throw internal_error("unit_inverse: input is not a unit");
    const RingPtr& r = x.ring();
    Int c0 = mod_pos(x.coeffs()[0], r->p_int());
    Int inv0;
    if (mpz_invert(inv0.get_mpz_t(), c0.get_mpz_t(), r->p_int().get_mpz_t()) == 0)
        throw internal_error("unit_inverse: residue not invertible");
    CycInt z = CycInt::constant(r, inv0, x.prec());
    CycInt one = CycInt::one(r, x.prec());
    for (int step = 0; step < 64; ++step) {
        CycInt err = one - x * z;
        if (err.is_zero()) return z;
        z = z + z * err;
    }
    throw internal_error("unit_inverse: Newton iteration failed to converge");
}

inline void CycRing::init(long p, long tower, long max_prec, long floor_prec) {
    p_ = p;
    tower_ = tower;
    e_ = ipow_long(p, tower) * (p - 1);
    A_ = max_prec;
    floor_ = floor_prec;
    p_int_ = p;
    if (A_ < 1) throw std::invalid_argument("CycRing: precision must be >= 1");

    ppow_.resize(static_cast<size_t>(A_) + 1);
    ppow_[0] = 1;
    for (long k = 1; k <= A_; ++k) ppow_[static_cast<size_t>(k)] = ppow_[static_cast<size_t>(k - 1)] * p;

    std::vector<Int> E = eisenstein_poly(p, tower);
    eis_.assign(E.begin(), E.end() - 1);  // drop the monic leading 1
    eis_over_p_.resize(eis_.size());
    for (size_t j = 0; j < eis_.size(); ++j) {
        if (!mpz_divisible_p(eis_[j].get_mpz_t(), p_int_.get_mpz_t()))
            throw internal_error("eisenstein_poly: not Eisenstein at p");
        eis_over_p_[j] = eis_[j] / p_int_;
        eis_[j] = mod_pos(eis_[j], ppow_.back());
    }
}

inline std::shared_ptr<const CycRing> CycRing::create(long p, long tower, long max_prec,
                                                      long floor_prec) {
    auto ring = std::shared_ptr<CycRing>(new CycRing());
    ring->init(p, tower, max_prec, floor_prec);
    RingPtr self = ring;
    auto detach = [](const CycInt& x) { return Stored{x.prec(), x.coeffs()}; };

    // pi itself: the polynomial "x" reduced by E (for e = 1 this is -E_0 = -p).
    std::vector<Int> xpoly{Int(0), Int(1)};
    CycInt pi = CycInt::from_poly(self, xpoly);

    // pi^e/p = -(E_0/p + (E_1/p) pi + ... + (E_{e-1}/p) pi^{e-1}), exact.
    std::vector<Int> upoly(ring->eis_over_p_.begin(), ring->eis_over_p_.end());
    for (Int& v : upoly) v = -v;
    CycInt u_e = CycInt::from_poly(self, upoly);

    ring->pi_store_ = detach(pi);
    ring->u_e_store_ = detach(u_e);
    ring->inv_u_e_store_ = detach(unit_inverse(u_e));

    // Layer uniformizers pi_i = (1+pi)^{p^{tower-i}} - 1 and the inverses of
    // their unit parts pi_i / pi^{p^{tower-i}}.
    CycInt one = CycInt::one(self);
    for (long i = 0; i <= tower; ++i) {
        long t = ipow_long(p, tower - i);
        CycInt base = one + pi;
        CycInt acc = one;
        long n = t;
        while (n > 0) {
            if (n & 1) acc = acc * base;
            n >>= 1;
            if (n) base = base * base;
        }
        CycInt pi_i = acc - one;
        ring->layer_store_.push_back(detach(pi_i));
        ring->layer_unit_inv_store_.push_back(detach(unit_inverse(div_pi_pow(pi_i, t))));
    }
    return self;
}

inline CycInt CycRing::attach(const Stored& s) const {
    return CycInt::from_parts(shared_from_this(), s.prec, s.c);
}

inline CycInt CycRing::pi() const { return attach(pi_store_); }
inline CycInt CycRing::unit_pi_e_over_p() const { return attach(u_e_store_); }
inline CycInt CycRing::inv_unit_pi_e_over_p() const { return attach(inv_u_e_store_); }

inline CycInt CycRing::pi_layer(long i) const {
    if (i < 0 || i > tower_) throw std::invalid_argument("pi_layer: index out of range");
    return attach(layer_store_[static_cast<size_t>(i)]);
}

inline CycInt CycRing::pi_layer_unit_inv(long i) const {
    if (i < 0 || i > tower_) throw std::invalid_argument("pi_layer_unit_inv: index out of range");
    return attach(layer_unit_inv_store_[static_cast<size_t>(i)]);
}

// Element of the fraction field with bounded denominator: num * pi^{-shift}.
// Arithmetic keeps the pair lazy (no digit is spent until a division is
// actually materialized); canonical() clears the shift when the numerator's
// valuation permits it in full.
class CycElem {
public:
    CycElem() = default;
    explicit CycElem(CycInt num, long shift = 0) : num_(std::move(num)), shift_(shift) {
        if (shift_ < 0) throw internal_error("CycElem: negative shift");
    }

    static CycElem zero(const RingPtr& r) { return CycElem(CycInt::zero(r)); }
    static CycElem one(const RingPtr& r) { return CycElem(CycInt::one(r)); }

    // Exact embedding of a rational: r = p^v a/b with a, b prime to p becomes
    // a * b^{-1} * p^v, where a negative v turns into the unit (pi^e/p)^{-v}
    // and a shift of e|v| (no precision is lost).
    static CycElem from_rational(const RingPtr& r, const Rat& q) {
        if (q == 0) return zero(r);
        Int a, b;
        long vn = static_cast<long>(
            mpz_remove(a.get_mpz_t(), q.get_num().get_mpz_t(), r->p_int().get_mpz_t()));
        long vd = static_cast<long>(
            mpz_remove(b.get_mpz_t(), q.get_den().get_mpz_t(), r->p_int().get_mpz_t()));
        long v = vn - vd;
        CycInt base = CycInt::constant(r, a) * unit_inverse(CycInt::constant(r, b));
        if (v >= 0) {
            if (v >= base.prec()) return CycElem(CycInt::zero(r, base.prec()));
            return CycElem(base.mul_int(r->prime_pow(v)));
        }
        CycInt u = CycInt::one(r);
        CycInt pw = r->unit_pi_e_over_p();
        long t = -v;
        long shift = r->degree() * t;
        while (t > 0) {
            if (t & 1) u = u * pw;
            t >>= 1;
            if (t) pw = pw * pw;
        }
        return CycElem(base * u, shift);
    }

    bool valid() const { return num_.valid(); }
    const CycInt& num() const { return num_; }
    long shift() const { return shift_; }
    const RingPtr& ring() const { return num_.ring(); }
    long prec() const { return num_.prec(); }
    bool is_zero() const { return num_.is_zero(); }

    std::optional<long> valuation() const {
        auto v = num_.valuation();
        if (!v) return std::nullopt;
        return *v - shift_;
    }

    // Valuation lower bound covering the zero-at-precision case.
    long val_floor() const { return num_.val_floor() - shift_; }

    friend CycElem operator+(const CycElem& a, const CycElem& b) {
        long s = std::max(a.shift_, b.shift_);
        CycInt an = a.num_.mul_pi_pow(s - a.shift_);
        CycInt bn = b.num_.mul_pi_pow(s - b.shift_);
        return CycElem(an + bn, s);
    }

    friend CycElem operator-(const CycElem& a, const CycElem& b) {
        long s = std::max(a.shift_, b.shift_);
        CycInt an = a.num_.mul_pi_pow(s - a.shift_);
        CycInt bn = b.num_.mul_pi_pow(s - b.shift_);
        return CycElem(an - bn, s);
    }

    CycElem operator-() const { return CycElem(-num_, shift_); }

    friend CycElem operator*(const CycElem& a, const CycElem& b) {
        return CycElem(a.num_ * b.num_, a.shift_ + b.shift_);
    }

    CycElem mul_int(const Int& s) const { return CycElem(num_.mul_int(s), shift_); }

    // Multiply by pi^t; negative t divides. Pending shift is consumed first so
    // that no digit is spent when the two cancel.
    CycElem mul_pi_pow(long t) const {
        if (t >= 0) {
            long take = std::min(shift_, t);
            CycElem x(num_, shift_ - take);
            t -= take;
            if (t > 0) x.num_ = x.num_.mul_pi_pow(t);
            return x;
        }
        return CycElem(num_, shift_ - t);
    }

    CycElem mul_rational(const Rat& q) const {
        return *this * from_rational(ring(), q);
    }

    // Canonical form: shift cleared whenever the numerator's valuation is
    // certified to permit it.
    CycElem canonical() const {
        if (shift_ == 0) return *this;
        long vf = num_.val_floor();
        if (vf >= shift_) return CycElem(div_pi_pow(num_, shift_));
        return *this;
    }

    // Materialize as a ring integer; requires valuation >= 0.
    CycInt to_integral() const {
        if (shift_ == 0) return num_;
        auto v = num_.valuation();
        if (!v && num_.val_floor() < shift_)
            throw precision_error("to_integral: integrality not certified at working precision");
        if (v && *v < shift_)
            throw internal_error("to_integral: element has negative valuation");
        return div_pi_pow(num_, shift_);
    }

    // Residue in F_p (requires valuation >= 0, certified at working precision).
    long residue() const {
        auto v = valuation();
        if (!v) {
            if (val_floor() < 1)
                throw precision_error("residue: cannot separate from zero at working precision");
            return 0;
        }
        if (*v < 0) throw internal_error("residue: negative valuation");
        if (*v > 0) return 0;
        CycInt u = div_pi_pow(num_, shift_);
        return mpz_get_ui(mod_pos(u.coeffs()[0], ring()->p_int()).get_mpz_t()) %
               static_cast<unsigned long>(ring()->p());
    }

private:
    CycInt num_;
    long shift_ = 0;
};

// Equality of the represented values at the shared working precision.
inline bool same_value(const CycElem& a, const CycElem& b) {
    return (a - b).is_zero();
}

} // namespace piexp
