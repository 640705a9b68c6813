#pragma once

#include <optional>

#include "piexp/series.hpp"

namespace piexp {

// Truncated series over the residue field F_p, indices 0..D, constant 1. The
// complete invariant of a soluble equation lives here.
struct ResidueSeries {
    long p = 0;
    std::vector<long> c;

    long trunc_degree() const { return static_cast<long>(c.size()) - 1; }

    bool is_one() const {
        for (size_t i = 1; i < c.size(); ++i)
            if (c[i] != 0) return false;
        return c.empty() || c[0] == 1;
    }

    friend bool operator==(const ResidueSeries& a, const ResidueSeries& b) {
        return a.p == b.p && a.c == b.c;
    }
};

inline ResidueSeries residue_one(long p, long D) {
    ResidueSeries s;
    s.p = p;
    s.c.assign(static_cast<size_t>(D) + 1, 0);
    s.c[0] = 1;
    return s;
}

inline ResidueSeries residue_mul(const ResidueSeries& a, const ResidueSeries& b) {
    ResidueSeries r = residue_one(a.p, a.trunc_degree());
    r.c[0] = 0;
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (size_t j = 0; i + j < r.c.size() && j < b.c.size(); ++j)
            r.c[i + j] = (r.c[i + j] + a.c[i] * b.c[j]) % a.p;
    }
    return r;
}

// Quotient a/b for b with constant term 1, truncated.
inline ResidueSeries residue_div(const ResidueSeries& a, const ResidueSeries& b) {
    if (b.c.empty() || b.c[0] != 1) throw internal_error("residue_div: divisor constant must be 1");
    ResidueSeries q = a;
    for (size_t i = 0; i < q.c.size(); ++i) {
        long qi = q.c[i] % a.p;
        q.c[i] = qi;
        if (qi == 0) continue;
        for (size_t j = 1; i + j < q.c.size() && j < b.c.size(); ++j)
            q.c[i + j] = ((q.c[i + j] - qi * b.c[j]) % a.p + a.p) % a.p;
    }
    return q;
}

// Order of vanishing of s - 1 at T = 0; nullopt when s = 1 (the downstream
// index formulas treat that case by the "evaluates to 0" convention).
inline std::optional<long> vanishing_order(const ResidueSeries& s) {
    for (size_t i = 1; i < s.c.size(); ++i)
        if (s.c[i] != 0) return static_cast<long>(i);
    return std::nullopt;
}

struct SolubilityResult {
    bool soluble = false;
    long witness_degree = -1;  // first degree with a negative valuation
    long witness_deficit = 0;  // by how much the valuation falls short
};

namespace detail {

inline SolubilityResult solubility_from_pipeline(const Pipeline& pipe, const Params& prm) {
    SolubilityResult res;
    for (long i = 1; i <= prm.D; ++i) {
        const CycElem& B = pipe.plain.c[static_cast<size_t>(i)];
        auto v = B.valuation();
        if (v) {
            if (*v < 0) {
                res.soluble = false;
                res.witness_degree = i;
                res.witness_deficit = -*v;
                return res;
            }
        } else if (B.val_floor() < 0) {
            throw precision_error("solubility: coefficient sign not certified at degree " +
                                  std::to_string(i));
        }
    }
    res.soluble = true;
    return res;
}

inline ResidueSeries residues_from_pipeline(const Pipeline& pipe, const Params& prm) {
    ResidueSeries s = residue_one(prm.p, prm.D);
    for (long i = 1; i <= prm.D; ++i)
        s.c[static_cast<size_t>(i)] = pipe.plain.c[static_cast<size_t>(i)].residue();
    return s;
}

} // namespace detail

// Solubility test: the equation has solution radius >= 1 iff every
// coefficient of the truncated exponential of the rescaled equation is
// integral. Returns a witness (degree, deficit) when not.
inline SolubilityResult is_soluble(const Poly& P, const Params& prm) {
    Pipeline pipe = run_exp_pipeline(P, prm);
    return detail::solubility_from_pipeline(pipe, prm);
}

// The complete invariant: coefficientwise reduction of the truncated
// exponential into F_p. Requires solubility.
inline ResidueSeries residue_invariant(const Poly& P, const Params& prm) {
    Pipeline pipe = run_exp_pipeline(P, prm);
    SolubilityResult sol = detail::solubility_from_pipeline(pipe, prm);
    if (!sol.soluble)
        throw insoluble_error("residue invariant requires a soluble equation",
                              sol.witness_degree, sol.witness_deficit);
    return detail::residues_from_pipeline(pipe, prm);
}

// P = sum_m parts[m](T^m) over m prime to p, each part supported on powers
// of p (including p^0) with degree bound floor(D/m).
struct PTypicalParts {
    std::map<long, Poly> parts;
};

inline PTypicalParts p_typical_parts(const Poly& P, const Params& prm) {
    validate_equation(P, prm);
    PTypicalParts out;
    for (const auto& [i, c] : P.coeffs) {
        Int rest;
        long j = static_cast<long>(
            mpz_remove(rest.get_mpz_t(), Int(i).get_mpz_t(), prm.ring->p_int().get_mpz_t()));
        long m = mpz_get_si(rest.get_mpz_t());
        Poly& part = out.parts[m];
        part.bound = prm.D / m;
        part.set(ipow_long(prm.p, j), c);
    }
    return out;
}

inline bool is_p_typical(const Poly& P, long p) {
    for (const auto& [i, c] : P.coeffs) {
        long n = i;
        while (n % p == 0) n /= p;
        if (n != 1) return false;
        (void)c;
    }
    return true;
}

// Verschiebung-style shift on a p-typical polynomial: the coefficient at
// T^{p^{j+1}} moves to T^{p^j}; the T^1 coefficient drops.
inline Poly vshift(const Poly& pm, long p) {
    if (!is_p_typical(pm, p)) throw std::invalid_argument("vshift: input is not p-typical");
    Poly r;
    r.bound = std::max(1L, pm.bound / p);
    for (const auto& [i, c] : pm.coeffs) {
        if (i == 1) continue;
        r.set(i / p, c);
    }
    return r;
}

// Index of a p-typical soluble equation: chi = 1 - p^d / v_T(ehat - 1),
// with chi = 1 for the trivial equation. The order of vanishing is asserted
// to be a power of p dividing p^d.
inline long index_p_typical(const Poly& P, const Params& prm) {
    if (!is_p_typical(P, prm.p))
        throw std::invalid_argument("index_p_typical: support must be contained in powers of p");
    ResidueSeries ehat = residue_invariant(P, prm);
    auto vt = vanishing_order(ehat);
    if (!vt) return 1;
    long pd = ipow_long(prm.p, prm.d);
    if (pd % *vt != 0)
        throw internal_error("index_p_typical: v_T(ehat-1) is not a power of p dividing p^d");
    long q = *vt;
    while (q % prm.p == 0) q /= prm.p;
    if (q != 1) throw internal_error("index_p_typical: v_T(ehat-1) is not a power of p");
    return 1 - pd / *vt;
}

struct ComponentReport {
    long m = 0;
    ResidueSeries ehat;
    std::optional<long> vt;
    long chi = 1;  // index of the component equation P_m(T^m)
};

namespace detail {

inline std::vector<ComponentReport> component_reports(const Poly& P, const Params& prm) {
    std::vector<ComponentReport> out;
    PTypicalParts parts = p_typical_parts(P, prm);
    for (const auto& [m, part] : parts.parts) {
        Params sub = component_params(prm, m);
        Pipeline pipe = run_exp_pipeline(part, sub);
        SolubilityResult sol = solubility_from_pipeline(pipe, sub);
        if (!sol.soluble)
            throw insoluble_error("component m=" + std::to_string(m) + " is not soluble",
                                  sol.witness_degree, sol.witness_deficit);
        ComponentReport rep;
        rep.m = m;
        rep.ehat = residues_from_pipeline(pipe, sub);
        rep.vt = vanishing_order(rep.ehat);
        if (rep.vt) {
            long pdm = ipow_long(prm.p, prm.dtable[static_cast<size_t>(m)]);
            if (pdm % *rep.vt != 0)
                throw internal_error("component v_T is not a power of p dividing p^{d_m}");
            rep.chi = 1 - m * (pdm / *rep.vt);
        }
        out.push_back(std::move(rep));
    }
    return out;
}

} // namespace detail

// Index of a soluble equation via the p-typical decomposition:
// chi = 1 - max_m m p^{d_m} / v_T(ehat_m - 1), the max over nontrivial
// components (empty max gives the trivial index 1).
inline long index(const Poly& P, const Params& prm) {
    SolubilityResult sol = is_soluble(P, prm);
    if (!sol.soluble)
        throw insoluble_error("index requires a soluble equation", sol.witness_degree,
                              sol.witness_deficit);
    long best = 0;
    for (const ComponentReport& rep : detail::component_reports(P, prm))
        if (rep.vt) best = std::max(best, 1 - rep.chi);
    return 1 - best;
}

// Two equations (under a common bound) are equivalent iff both are soluble
// with equal residue invariants. At least one side must be soluble.
inline bool equivalent(const Poly& P1, const Poly& P2, const Params& prm) {
    SolubilityResult s1 = is_soluble(P1, prm);
    SolubilityResult s2 = is_soluble(P2, prm);
    if (!s1.soluble && !s2.soluble)
        throw insoluble_error("equivalence test requires at least one soluble equation");
    if (s1.soluble != s2.soluble) return false;
    return residue_invariant(P1, prm) == residue_invariant(P2, prm);
}

// Exact rational coefficients r_i of the truncated logarithm of the digit
// lift of ehat; the lifted equation polynomial is P_i = r_i * pi_{d_i}.
inline std::vector<Rat> lift_residue_exact(const ResidueSeries& ehat, const Params& prm) {
    if (ehat.c.empty() || ehat.c[0] != 1)
        throw std::invalid_argument("lift: constant coefficient must be 1");
    long D = prm.D;
    std::vector<Rat> x(static_cast<size_t>(D) + 1, Rat(0));  // digit lift of ehat - 1
    for (long i = 1; i <= std::min(D, ehat.trunc_degree()); ++i)
        x[static_cast<size_t>(i)] = ehat.c[static_cast<size_t>(i)];
    std::vector<Rat> logs(static_cast<size_t>(D) + 1, Rat(0));
    std::vector<Rat> pw(x);  // x^j truncated
    Rat sign(1);
    for (long j = 1; j <= D; ++j) {
        if (j > 1) {
            std::vector<Rat> next(static_cast<size_t>(D) + 1, Rat(0));
            for (long a = 1; a <= D; ++a) {
                if (pw[static_cast<size_t>(a)] == 0) continue;
                for (long b = 1; a + b <= D; ++b) {
                    if (x[static_cast<size_t>(b)] == 0) continue;
                    next[static_cast<size_t>(a + b)] +=
                        pw[static_cast<size_t>(a)] * x[static_cast<size_t>(b)];
                }
            }
            pw = std::move(next);
        }
        for (long i = j; i <= D; ++i)
            logs[static_cast<size_t>(i)] += sign * pw[static_cast<size_t>(i)] / j;
        sign = -sign;
    }
    return logs;
}

// Lift a residue series back to an equation producing it: digits {0..p-1},
// truncated logarithm, then multiply coefficient i by pi_{d_i}.
inline Poly lift_residue(const ResidueSeries& ehat, const Params& prm) {
    std::vector<Rat> logs = lift_residue_exact(ehat, prm);
    Poly P;
    P.bound = prm.D;
    for (long i = 1; i <= prm.D; ++i) {
        const Rat& r = logs[static_cast<size_t>(i)];
        if (r == 0) continue;
        CycElem c = CycElem::from_rational(prm.ring, r) *
                    CycElem(prm.ring->pi_layer(prm.dtable[static_cast<size_t>(i)]));
        P.set(i, c.canonical());
    }
    return P;
}

// Degree of the Euler factor attached to the equation's exponential sums:
// 0 when trivial, -chi otherwise.
inline long lfunction_degree(const Poly& P, const Params& prm) {
    ResidueSeries ehat = residue_invariant(P, prm);
    if (ehat.is_one()) return 0;
    return -index(P, prm);
}

struct ComparisonResult {
    bool iso = false;
    bool chi_criterion = false;         // chi == 1 - D
    bool derivative_criterion = false;  // T-coefficient of ehat_m nonzero
    std::optional<bool> innocuous;      // |a_D| = |pi_0|, evaluated when p does not divide D
    long chi = 1;
    long m = 0, n = 0;  // D = m p^n
};

// Whether the comparison map from rational to Dwork cohomology is an
// isomorphism. Requires D = deg P. The three available criteria are all
// evaluated and asserted to agree.
inline ComparisonResult comparison_is_iso(const Poly& P, const Params& prm) {
    if (P.zero()) throw std::invalid_argument("comparison: zero polynomial");
    if (P.degree() != prm.D)
        throw std::invalid_argument("comparison requires the bound to equal deg P");
    SolubilityResult sol = is_soluble(P, prm);
    if (!sol.soluble)
        throw insoluble_error("comparison requires a soluble equation", sol.witness_degree,
                              sol.witness_deficit);

    ComparisonResult res;
    long D = prm.D;
    res.n = 0;
    res.m = D;
    while (res.m % prm.p == 0) {
        res.m /= prm.p;
        ++res.n;
    }
    res.chi = index(P, prm);
    res.chi_criterion = (res.chi == 1 - D);

    for (const ComponentReport& rep : detail::component_reports(P, prm)) {
        if (rep.m == res.m) {
            res.derivative_criterion = rep.ehat.trunc_degree() >= 1 && rep.ehat.c[1] != 0;
        }
    }
    if (res.derivative_criterion != res.chi_criterion)
        throw internal_error("comparison criteria disagree (chi vs derivative)");

    if (res.n == 0) {
        const CycElem* aD = P.at(D);
        auto v = aD->valuation();
        if (!v) throw precision_error("comparison: top coefficient valuation not certified");
        bool innoc = (*v == ipow_long(prm.p, prm.ring->tower()));
        res.innocuous = innoc;
        if (innoc != res.chi_criterion)
            throw internal_error("comparison criteria disagree (innocuous check)");
    }
    res.iso = res.chi_criterion;
    return res;
}

struct ReductionResult {
    Poly reduced;                // P* with the comparison isomorphism restored
    std::vector<Poly> factors;   // the removed trivial summands, in order
};

// Peel trivial summands off P until the comparison map is an isomorphism.
// While it fails at current degree D' = m p^n, the factor
// F = P_m(T^m) - (V P_m)(T^m) is removed; F is asserted trivial at runtime
// (its residue invariant must be 1) rather than taken on faith. A trivial
// nonzero P is itself one big removable factor and reduces to 0.
inline ReductionResult reduce_comparison(const Poly& P, const Params& prm) {
    {
        SolubilityResult sol = is_soluble(P, prm);
        if (!sol.soluble)
            throw insoluble_error("reduction requires a soluble equation", sol.witness_degree,
                                  sol.witness_deficit);
    }
    ReductionResult out;
    Poly cur = P;
    long guard = prm.D + 2;
    while (!cur.zero() && guard-- > 0) {
        Params cp = params_with_bound(prm, cur.degree());
        ResidueSeries ehat = residue_invariant(cur, cp);
        if (ehat.is_one()) {
            out.factors.push_back(cur);
            cur = Poly{};
            break;
        }
        ComparisonResult cmp = comparison_is_iso(cur, cp);
        if (cmp.iso) break;

        PTypicalParts parts = p_typical_parts(cur, cp);
        auto it = parts.parts.find(cmp.m);
        if (it == parts.parts.end())
            throw internal_error("reduction: top component missing from decomposition");
        Poly pm_comp = substitute_power(it->second, cmp.m);
        Poly vm_comp = substitute_power(vshift(it->second, prm.p), cmp.m);
        Poly F = poly_sub(pm_comp, vm_comp);
        F.bound = F.degree();

        Params fp = params_with_bound(prm, F.degree());
        ResidueSeries ef = residue_invariant(F, fp);  // throws if F insoluble
        if (!ef.is_one())
            throw internal_error("reduction: removed factor is not trivial at degree " +
                                 std::to_string(F.degree()));
        out.factors.push_back(F);
        Poly next = poly_sub(cur, F);
        if (!next.zero() && next.degree() >= cur.degree())
            throw internal_error("reduction: degree did not decrease");
        cur = std::move(next);
        cur.bound = cur.zero() ? 1 : cur.degree();
    }
    out.reduced = cur;
    out.reduced.bound = out.reduced.zero() ? 1 : out.reduced.degree();
    return out;
}

} // namespace piexp
