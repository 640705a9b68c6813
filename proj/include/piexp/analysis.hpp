#pragma once

#include "piexp/invariants.hpp"
#include "piexp/witt.hpp"

namespace piexp {

// Everything the analysis derives from one equation, assembled in a single
// pass over the pipeline. The two index routes (componentwise formula and
// Witt coordinates) are both evaluated and must agree.
struct AnalysisReport {
    // context
    long p = 0, D = 0, d = 0, e = 0, A = 0;
    long k = 0;
    long ring_mults = 0;
    long input_degree = 0;
    bool input_integral = true;

    // solubility
    bool soluble = false;
    long witness_degree = -1;
    long witness_deficit = 0;

    // invariants (meaningful only when soluble)
    bool trivial = false;
    ResidueSeries ehat;
    std::optional<long> vt;
    long chi = 1;
    long delta = 0;
    std::map<long, long> witt_factors;
    std::vector<ComponentReport> components;
    std::optional<ComparisonResult> comparison;
};

inline AnalysisReport analyze(const Poly& P, const Params& prm) {
    AnalysisReport rep;
    rep.p = prm.p;
    rep.D = prm.D;
    rep.d = prm.d;
    rep.e = prm.e();
    rep.A = prm.A;
    rep.input_degree = P.degree();
    for (const auto& [i, c] : P.coeffs) {
        (void)i;
        if (c.val_floor() < 0) rep.input_integral = false;
    }

    Pipeline pipe = run_exp_pipeline(P, prm);
    rep.k = pipe.k;
    rep.ring_mults = pipe.ring_mults;

    SolubilityResult sol = detail::solubility_from_pipeline(pipe, prm);
    rep.soluble = sol.soluble;
    rep.witness_degree = sol.witness_degree;
    rep.witness_deficit = sol.witness_deficit;
    if (!rep.soluble) return rep;

    rep.ehat = detail::residues_from_pipeline(pipe, prm);
    rep.vt = vanishing_order(rep.ehat);
    rep.trivial = !rep.vt.has_value();

    rep.components = detail::component_reports(P, prm);
    long best = 0;
    for (const ComponentReport& c : rep.components)
        if (c.vt) best = std::max(best, 1 - c.chi);
    rep.chi = 1 - best;
    rep.delta = rep.trivial ? 0 : -rep.chi;

    witt::WittFactorization w = witt::witt_factorize(rep.ehat, prm);
    rep.witt_factors = w.factors;
    long best_w = 0;
    for (const auto& [n, u] : rep.witt_factors) {
        (void)u;
        long m = n;
        while (m % prm.p == 0) m /= prm.p;
        best_w = std::max(best_w, m * ipow_long(prm.p, prm.dtable[static_cast<size_t>(n)]));
    }
    if (1 - best_w != rep.chi)
        throw internal_error("index routes disagree: componentwise " + std::to_string(rep.chi) +
                             " vs Witt " + std::to_string(1 - best_w));

    if (!P.zero() && P.degree() == prm.D)
        rep.comparison = comparison_is_iso(P, prm);
    return rep;
}

} // namespace piexp
