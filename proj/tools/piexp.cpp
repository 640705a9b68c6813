// Command-line front end: rank-one p-adic differential equations y' = L(T) y
// with polynomial coefficient. Decides solubility and triviality, computes
// the residue invariant, the index and the L-function degree, checks the
// rational-vs-Dwork comparison criterion, removes superfluous factors, and
// cross-checks everything against an exact-rational oracle on request.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "piexp/analysis.hpp"
#include "piexp/bench.hpp"
#include "piexp/parser.hpp"
#include "piexp/report.hpp"

namespace {

using namespace piexp;

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitInsoluble = 3;
constexpr int kExitPrecision = 4;
constexpr int kExitInternal = 5;

struct CommonOpts {
    long p = 0;
    long degree_bound = 0;  // 0 = default to the syntactic degree
    long margin = kDefaultMargin;
    std::string format = "text";
    bool probe = false;
    long horizon = 0;  // 0 = default 3D
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--p", opts.p, "prime p")->required();
    cmd->add_option("--degree-bound", opts.degree_bound,
                    "degree bound D (default: the degree of the input)");
    cmd->add_option("--margin", opts.margin, "extra precision digits")->default_val(kDefaultMargin);
    cmd->add_option("--format", opts.format, "output format: text or machine")
        ->check(CLI::IsMember({"text", "machine"}))
        ->default_val("text");
    cmd->add_flag("--probe", opts.probe, "cross-check against the exact-rational oracle");
    cmd->add_option("--horizon", opts.horizon, "oracle probe horizon (default 3D)");
}

std::string read_input(const std::string& arg) {
    if (arg == "-") {
        std::ostringstream os;
        os << std::cin.rdbuf();
        return os.str();
    }
    if (!arg.empty() && arg[0] == '@') {
        std::ifstream in(arg.substr(1));
        if (!in) throw parse_error("cannot open input file " + arg.substr(1), 0, 0);
        std::ostringstream os;
        os << in.rdbuf();
        return os.str();
    }
    return arg;
}

struct LoadedPoly {
    cli::ParsedPoly parsed;
    Params prm;
    Poly poly;
    std::string canonical;
};

LoadedPoly load_poly(const std::string& text, const CommonOpts& opts) {
    LoadedPoly out;
    out.parsed = cli::parse_poly(text);
    long D = opts.degree_bound > 0 ? opts.degree_bound
                                   : std::max(1L, out.parsed.syntactic_degree());
    out.prm = make_params(opts.p, D, opts.margin);
    out.poly = cli::to_poly(out.parsed, out.prm);
    out.canonical = cli::print_poly(out.parsed);
    return out;
}

void maybe_probe(cli::ReportWriter& w, const LoadedPoly& lp, const CommonOpts& opts) {
    if (!opts.probe) return;
    long horizon = opts.horizon > 0 ? opts.horizon : 3 * lp.prm.D;
    oracle::ExactPoly ex = cli::to_exact_poly(lp.parsed, lp.prm);
    oracle::CrosscheckResult res = oracle::crosscheck_pipeline(ex, lp.prm, horizon);
    cli::write_probe(w, res, horizon);
    if (!res.ok) throw internal_error("oracle cross-check failed: " + res.detail);
}

void emit(const cli::ReportWriter& w, double wall_ms, bool machine) {
    std::cout << w.str();
    if (!machine) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "wall_ms %.2f", wall_ms);
        std::cout << buf << "\n";
    }
}

int run_analysis_command(const std::string& command, const std::string& text,
                         const CommonOpts& opts, bool full, bool require_soluble) {
    auto t0 = std::chrono::steady_clock::now();
    LoadedPoly lp = load_poly(text, opts);
    AnalysisReport rep = analyze(lp.poly, lp.prm);
    cli::ReportWriter w(opts.format == "machine");
    cli::write_context(w, lp.prm, command, lp.canonical);
    cli::write_analysis(w, rep, full);
    maybe_probe(w, lp, opts);
    auto t1 = std::chrono::steady_clock::now();
    emit(w, std::chrono::duration<double, std::milli>(t1 - t0).count(), w.machine());
    if (require_soluble && !rep.soluble) return kExitInsoluble;
    return kExitOk;
}

int run_equiv(const std::string& in1, const std::string& in2, const CommonOpts& opts) {
    auto t0 = std::chrono::steady_clock::now();
    cli::ParsedPoly p1 = cli::parse_poly(read_input(in1));
    cli::ParsedPoly p2 = cli::parse_poly(read_input(in2));
    long D = opts.degree_bound > 0
                 ? opts.degree_bound
                 : std::max(1L, std::max(p1.syntactic_degree(), p2.syntactic_degree()));
    Params prm = make_params(opts.p, D, opts.margin);
    Poly P1 = cli::to_poly(p1, prm);
    Poly P2 = cli::to_poly(p2, prm);
    bool eq = equivalent(P1, P2, prm);
    cli::ReportWriter w(opts.format == "machine");
    cli::write_context(w, prm, "equiv", "");
    w.kv("input1", cli::print_poly(p1));
    w.kv("input2", cli::print_poly(p2));
    SolubilityResult s1 = is_soluble(P1, prm);
    SolubilityResult s2 = is_soluble(P2, prm);
    w.kv("soluble1", cli::yn(s1.soluble));
    w.kv("soluble2", cli::yn(s2.soluble));
    if (s1.soluble) w.kv("ehat1", cli::residues_to_text(residue_invariant(P1, prm)));
    if (s2.soluble) w.kv("ehat2", cli::residues_to_text(residue_invariant(P2, prm)));
    w.kv("equivalent", cli::yn(eq));
    auto t1 = std::chrono::steady_clock::now();
    emit(w, std::chrono::duration<double, std::milli>(t1 - t0).count(), w.machine());
    return kExitOk;
}

int run_reduce(const std::string& input, const CommonOpts& opts) {
    auto t0 = std::chrono::steady_clock::now();
    LoadedPoly lp = load_poly(read_input(input), opts);
    ReductionResult red = reduce_comparison(lp.poly, lp.prm);
    cli::ReportWriter w(opts.format == "machine");
    cli::write_context(w, lp.prm, "reduce", lp.canonical);
    w.kv("steps", static_cast<long>(red.factors.size()));
    for (size_t i = 0; i < red.factors.size(); ++i)
        w.kv("factor" + std::to_string(i + 1), cli::poly_to_text(red.factors[i], lp.prm));
    w.kv("reduced", cli::poly_to_text(red.reduced, lp.prm));
    w.kv("reduced_degree", red.reduced.zero() ? 0 : red.reduced.degree());
    if (!red.reduced.zero()) {
        Params rp = params_with_bound(lp.prm, red.reduced.degree());
        AnalysisReport rep = analyze(red.reduced, rp);
        w.kv("chi", rep.chi);
        w.kv("comparison", rep.comparison && rep.comparison->iso ? "iso" : "not-iso");
    } else {
        w.kv("chi", 1);
        w.kv("comparison", "iso");
    }
    w.kv("equivalent_to_input", cli::yn(equivalent(lp.poly, red.reduced, lp.prm)));
    maybe_probe(w, lp, opts);
    auto t1 = std::chrono::steady_clock::now();
    emit(w, std::chrono::duration<double, std::milli>(t1 - t0).count(), w.machine());
    return kExitOk;
}

int run_witt(const std::string& input, const CommonOpts& opts) {
    auto t0 = std::chrono::steady_clock::now();
    LoadedPoly lp = load_poly(read_input(input), opts);
    ResidueSeries ehat = residue_invariant(lp.poly, lp.prm);
    witt::WittFactorization f = witt::witt_factorize(ehat, lp.prm);
    cli::ReportWriter w(opts.format == "machine");
    cli::write_context(w, lp.prm, "witt", lp.canonical);
    w.kv("ehat", cli::residues_to_text(ehat));
    w.kv("witt", cli::witt_to_text(f.factors));
    w.kv("chi", witt::index_via_witt(lp.poly, lp.prm));
    maybe_probe(w, lp, opts);
    auto t1 = std::chrono::steady_clock::now();
    emit(w, std::chrono::duration<double, std::milli>(t1 - t0).count(), w.machine());
    return kExitOk;
}

int run_lift(const std::string& series, const CommonOpts& opts) {
    auto t0 = std::chrono::steady_clock::now();
    // Residue coefficients 0..D, separated by commas or spaces; leading 1.
    std::string text = read_input(series);
    for (char& c : text)
        if (c == ',') c = ' ';
    std::istringstream is(text);
    std::vector<long> digits;
    long v;
    while (is >> v) digits.push_back(v);
    if (digits.empty()) throw parse_error("empty residue series", 1, 1);
    if (digits[0] != 1) throw parse_error("residue series must start with 1", 1, 1);
    long D = opts.degree_bound > 0 ? opts.degree_bound
                                   : std::max(1L, static_cast<long>(digits.size()) - 1);
    Params prm = make_params(opts.p, D, opts.margin);
    ResidueSeries ehat;
    ehat.p = prm.p;
    ehat.c.assign(static_cast<size_t>(D) + 1, 0);
    for (size_t i = 0; i < digits.size() && i < ehat.c.size(); ++i) {
        long r = digits[i] % prm.p;
        ehat.c[i] = r < 0 ? r + prm.p : r;
    }

    std::vector<Rat> logs = lift_residue_exact(ehat, prm);
    Poly lifted = lift_residue(ehat, prm);
    ResidueSeries back = residue_invariant(lifted, prm);
    if (!(back == ehat)) throw internal_error("lift round trip failed");

    cli::ReportWriter w(opts.format == "machine");
    cli::write_context(w, prm, "lift", "");
    w.kv("ehat", cli::residues_to_text(ehat));
    std::ostringstream poly;
    bool first = true;
    for (long i = 1; i <= D; ++i) {
        const Rat& r = logs[static_cast<size_t>(i)];
        if (r == 0) continue;
        bool neg = r < 0;
        if (first)
            poly << (neg ? "-" : "");
        else
            poly << (neg ? " - " : " + ");
        first = false;
        poly << abs(r.get_num());
        if (r.get_den() != 1) poly << "/" << r.get_den();
        poly << "*pi(" << prm.dtable[static_cast<size_t>(i)] << ")*T";
        if (i > 1) poly << "^" << i;
    }
    if (first) poly << "0*T";
    w.kv("lifted", poly.str());
    w.kv("roundtrip", "ok");
    auto t1 = std::chrono::steady_clock::now();
    emit(w, std::chrono::duration<double, std::milli>(t1 - t0).count(), w.machine());
    return kExitOk;
}

int run_bench_cmd(long p, std::vector<long> grid, long margin, const std::string& format) {
    auto t0 = std::chrono::steady_clock::now();
    if (grid.empty()) grid = {8, 16, 32, 64};
    cli::BenchResult res = cli::run_bench(p, grid, margin);
    cli::ReportWriter w(format == "machine");
    w.kv("schema", 1);
    w.kv("command", "bench");
    w.kv("p", p);
    {
        std::ostringstream g, m, b;
        bool first = true;
        for (const cli::BenchPoint& pt : res.points) {
            if (!first) {
                g << ",";
                m << ",";
                b << ",";
            }
            first = false;
            g << pt.D;
            m << pt.mults;
            b << pt.bound;
        }
        w.kv("bench_grid", g.str());
        w.kv("bench_mults", m.str());
        w.kv("bench_bounds", b.str());
    }
    w.kv("bench_bound_ok", cli::yn(res.bound_ok));
    w.kv("bench_fit_exponent", cli::format_exponent(res.fit_exponent));
    if (format != "machine") {
        for (const cli::BenchPoint& pt : res.points) {
            char buf[128];
            std::snprintf(buf, sizeof(buf), "point D=%ld mults=%ld bound=%ld wall_ms=%.2f", pt.D,
                          pt.mults, pt.bound, pt.wall_ms);
            w.human(buf);
        }
    }
    auto t1 = std::chrono::steady_clock::now();
    emit(w, std::chrono::duration<double, std::milli>(t1 - t0).count(), format == "machine");
    if (!res.bound_ok) return kExitInternal;
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"rank-one p-adic differential equation analyzer"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string input, input2;

    CLI::App* analyze_cmd = app.add_subcommand("analyze", "full analysis of one equation");
    analyze_cmd->add_option("poly", input, "polynomial P(T) (text, @file, or - for stdin)")
        ->required();
    add_common(analyze_cmd, opts);

    CLI::App* index_cmd = app.add_subcommand("index", "index and L-function degree");
    index_cmd->add_option("poly", input, "polynomial P(T)")->required();
    add_common(index_cmd, opts);

    CLI::App* equiv_cmd = app.add_subcommand("equiv", "equivalence of two equations");
    equiv_cmd->add_option("poly1", input, "first polynomial")->required();
    equiv_cmd->add_option("poly2", input2, "second polynomial")->required();
    add_common(equiv_cmd, opts);

    CLI::App* compare_cmd =
        app.add_subcommand("compare", "rational-vs-Dwork comparison criterion (D = deg P)");
    compare_cmd->add_option("poly", input, "polynomial P(T)")->required();
    add_common(compare_cmd, opts);

    CLI::App* reduce_cmd =
        app.add_subcommand("reduce", "remove superfluous factors until the comparison holds");
    reduce_cmd->add_option("poly", input, "polynomial P(T)")->required();
    add_common(reduce_cmd, opts);

    CLI::App* witt_cmd = app.add_subcommand("witt", "Witt coordinates of the residue invariant");
    witt_cmd->add_option("poly", input, "polynomial P(T)")->required();
    add_common(witt_cmd, opts);

    CLI::App* lift_cmd = app.add_subcommand("lift", "lift a residue series to an equation");
    lift_cmd->add_option("series", input, "residue coefficients 0..D (comma or space separated)")
        ->required();
    add_common(lift_cmd, opts);

    long bench_p = 2;
    long bench_margin = kDefaultMargin;
    std::vector<long> bench_grid;
    std::string bench_format = "text";
    CLI::App* bench_cmd = app.add_subcommand("bench", "recurrence operation-count benchmark");
    bench_cmd->add_option("--p", bench_p, "prime p")->default_val(2);
    bench_cmd->add_option("--grid", bench_grid, "degree bounds (default 8 16 32 64)");
    bench_cmd->add_option("--margin", bench_margin, "extra precision digits")
        ->default_val(kDefaultMargin);
    bench_cmd->add_option("--format", bench_format, "output format: text or machine")
        ->check(CLI::IsMember({"text", "machine"}))
        ->default_val("text");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitParse;
    }

    try {
        if (analyze_cmd->parsed())
            return run_analysis_command("analyze", read_input(input), opts, true, false);
        if (index_cmd->parsed())
            return run_analysis_command("index", read_input(input), opts, false, true);
        if (equiv_cmd->parsed()) return run_equiv(input, input2, opts);
        if (compare_cmd->parsed()) {
            // The comparison criterion is stated for D = deg P exactly.
            std::string text = read_input(input);
            LoadedPoly lp = load_poly(text, opts);
            if (lp.poly.degree() != lp.prm.D) {
                std::cerr << "error: compare requires the degree bound to equal deg P "
                             "(a top coefficient may have evaluated to zero)"
                          << std::endl;
                return kExitParse;
            }
            return run_analysis_command("compare", text, opts, true, true);
        }
        if (reduce_cmd->parsed()) return run_reduce(input, opts);
        if (witt_cmd->parsed()) return run_witt(input, opts);
        if (lift_cmd->parsed()) return run_lift(input, opts);
        if (bench_cmd->parsed())
            return run_bench_cmd(bench_p, bench_grid, bench_margin, bench_format);
        return kExitParse;
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << std::endl;
        return kExitParse;
    } catch (const insoluble_error& e) {
        std::cerr << "insoluble: " << e.what();
        if (e.degree() >= 0)
            std::cerr << " (first failure at degree " << e.degree() << ", deficit " << e.deficit()
                      << ")";
        std::cerr << std::endl;
        return kExitInsoluble;
    } catch (const precision_error& e) {
        std::cerr << "precision exhausted: " << e.what() << " (try a larger --margin)"
                  << std::endl;
        return kExitPrecision;
    } catch (const internal_error& e) {
        std::cerr << "internal consistency failure: " << e.what() << std::endl;
        return kExitInternal;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << std::endl;
        return kExitParse;
    }
}
