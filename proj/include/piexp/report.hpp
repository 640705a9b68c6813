#pragma once

#include <cstdio>
#include <sstream>
#include <string>

#include "piexp/analysis.hpp"
#include "piexp/oracle.hpp"

namespace piexp::cli {

// Balanced residue lift in (-p^prec/2, p^prec/2].
inline Int balanced(const Int& c, const Int& modulus) {
    Int half = modulus / 2;
    if (c > half) return c - modulus;
    return c;
}

// Render a ring integer as a coefficient expression in the pi(tower) basis,
// skipping zero coordinates. Always parseable back under the same bound.
inline std::string cycint_to_text(const CycInt& x, long tower) {
    const Int& mod = x.ring()->prime_pow(x.prec());
    std::ostringstream os;
    bool first = true;
    for (long j = 0; j < x.ring()->degree(); ++j) {
        Int c = balanced(x.coeffs()[static_cast<size_t>(j)], mod);
        if (c == 0) continue;
        bool neg = c < 0;
        Int a = neg ? Int(-c) : c;
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        first = false;
        if (j == 0) {
            os << a;
        } else {
            if (a != 1) os << a << "*";
            os << "pi(" << tower << ")";
            if (j > 1) os << "^" << j;
        }
    }
    if (first) os << "0";
    return "(" + os.str() + ")";
}

inline std::string cycelem_to_text(const CycElem& e, const Params& prm) {
    CycElem c = e.canonical();
    long tower = prm.ring->tower();
    if (c.shift() == 0) return cycint_to_text(c.num(), tower);
    // num * pi^{-s} = (1/p^q) * Y with Y = num * (pi^e/p)^{-q} * pi^{eq-s},
    // q = ceil(s/e), so the printed form stays inside the input grammar.
    long e_deg = prm.e();
    long q = ceil_div(c.shift(), e_deg);
    CycInt scaled = c.num();
    CycInt inv_u = prm.ring->inv_unit_pi_e_over_p().reduced_to(scaled.prec());
    for (long t = 0; t < q; ++t) scaled = scaled * inv_u;
    scaled = scaled.mul_pi_pow(e_deg * q - c.shift());
    std::string frac = "1/" + std::to_string(prm.p);
    std::string pow = q == 1 ? frac : frac + "^" + std::to_string(q);
    return pow + "*" + cycint_to_text(scaled, tower);
}

inline std::string poly_to_text(const Poly& P, const Params& prm) {
    if (P.zero()) return "0*T";
    std::ostringstream os;
    bool first = true;
    for (const auto& [i, c] : P.coeffs) {
        if (!first) os << " + ";
        first = false;
        os << cycelem_to_text(c, prm) << "*T";
        if (i > 1) os << "^" << i;
    }
    return os.str();
}

inline std::string residues_to_text(const ResidueSeries& s) {
    std::ostringstream os;
    for (size_t i = 0; i < s.c.size(); ++i) {
        if (i) os << " ";
        os << s.c[i];
    }
    return os.str();
}

inline std::string witt_to_text(const std::map<long, long>& factors) {
    if (factors.empty()) return "-";
    std::ostringstream os;
    bool first = true;
    for (const auto& [n, u] : factors) {
        if (!first) os << ",";
        first = false;
        os << n << ":" << u;
    }
    return os.str();
}

inline const char* yn(bool b) { return b ? "yes" : "no"; }

// Flat key/value lines; the machine format is exactly these lines and nothing
// else, so downstream scripts never touch the human format. Keys appear in a
// fixed order and the output carries no timing, making reports byte-identical
// across runs.
class ReportWriter {
public:
    explicit ReportWriter(bool machine) : machine_(machine) {}

    void kv(const std::string& key, const std::string& value) {
        out_ << key << " " << value << "\n";
    }
    void kv(const std::string& key, long value) { out_ << key << " " << value << "\n"; }
    void human(const std::string& line) {
        if (!machine_) out_ << line << "\n";
    }
    bool machine() const { return machine_; }
    std::string str() const { return out_.str(); }

private:
    bool machine_;
    std::ostringstream out_;
};

inline void write_context(ReportWriter& w, const Params& prm, const std::string& command,
                          const std::string& input) {
    w.kv("schema", 1);
    w.kv("command", command);
    if (!input.empty()) w.kv("input", input);
    w.kv("p", prm.p);
    w.kv("degree_bound", prm.D);
    w.kv("d", prm.d);
    w.kv("e", prm.e());
    w.kv("precision", prm.A);
    w.kv("margin", prm.margin);
}

inline void write_analysis(ReportWriter& w, const AnalysisReport& rep, bool full) {
    w.kv("input_degree", rep.input_degree);
    w.kv("input_integral", yn(rep.input_integral));
    w.kv("k", rep.k);
    w.kv("ring_mults", rep.ring_mults);
    w.kv("soluble", yn(rep.soluble));
    if (!rep.soluble) {
        w.kv("witness_degree", rep.witness_degree);
        w.kv("witness_deficit", rep.witness_deficit);
        return;
    }
    w.kv("trivial", yn(rep.trivial));
    w.kv("ehat", residues_to_text(rep.ehat));
    w.kv("vt", rep.vt ? std::to_string(*rep.vt) : "inf");
    w.kv("chi", rep.chi);
    w.kv("delta", rep.delta);
    w.kv("witt", witt_to_text(rep.witt_factors));
    if (full) {
        w.kv("components", static_cast<long>(rep.components.size()));
        for (const ComponentReport& c : rep.components) {
            std::ostringstream os;
            os << c.m << " vt " << (c.vt ? std::to_string(*c.vt) : "inf") << " chi " << c.chi
               << " ehat " << residues_to_text(c.ehat);
            w.kv("component", os.str());
        }
    }
    if (rep.comparison) {
        const ComparisonResult& cmp = *rep.comparison;
        w.kv("comparison", cmp.iso ? "iso" : "not-iso");
        if (full) {
            w.kv("chi_criterion", yn(cmp.chi_criterion));
            w.kv("derivative_criterion", yn(cmp.derivative_criterion));
            w.kv("innocuous", cmp.innocuous ? yn(*cmp.innocuous) : "n/a");
        }
    } else if (full) {
        w.kv("comparison", "n/a");
    }
}

inline void write_probe(ReportWriter& w, const oracle::CrosscheckResult& res, long horizon) {
    w.kv("probe", res.ok ? "pass" : "fail");
    w.kv("probe_horizon", horizon);
    w.kv("probe_series_match", yn(res.series_match));
    w.kv("probe_integral", yn(res.probe.integral));
    if (!res.probe.integral) w.kv("probe_first_failure", res.probe.first_failure);
    if (!res.detail.empty()) w.kv("probe_detail", res.detail);
}

} // namespace piexp::cli
