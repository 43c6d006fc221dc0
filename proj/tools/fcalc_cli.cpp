// fcalc: fractal-calculus toolkit CLI.
//
// Subcommands: set, curve, staircase, dim, solve-linear, solve-bernoulli,
// solve-separable, solve-numeric, model-interest, model-escape,
// model-cooling, figure. Outputs are CSV (fixed column orders) and JSON
// descriptors; FCALC_OUT_DIR overrides the output directory.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fcalc/calculus.hpp"
#include "fcalc/cantor.hpp"
#include "fcalc/curves.hpp"
#include "fcalc/expr.hpp"
#include "fcalc/figures.hpp"
#include "fcalc/fode.hpp"
#include "fcalc/io.hpp"
#include "fcalc/mass.hpp"
#include "fcalc/models.hpp"
#include "fcalc/staircase.hpp"

namespace fs = std::filesystem;
using namespace fcalc;

namespace {

fs::path resolve_out(const std::string& path) {
    fs::path p(path);
    if (p.is_absolute()) return p;
    if (const char* dir = std::getenv("FCALC_OUT_DIR")) return fs::path(dir) / p;
    return p;
}

void write_out(const std::string& path, const std::string& contents) {
    const fs::path p = resolve_out(path);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    io::write_text_file(p, contents);
    std::cout << "wrote " << p.string() << "\n";
}

struct SetFlags {
    double xi = 1.0 / 3.0;
    int depth = 8;
    double lo = 0.0, hi = 1.0;
    double origin = 0.0;
    std::string alpha_str;  // empty: estimated dimension

    void attach(CLI::App* cmd, bool with_staircase_bits = true) {
        cmd->add_option("--xi", xi, "middle removal fraction in (0,1)")
            ->check(CLI::Range(1e-9, 1.0 - 1e-9));
        cmd->add_option("--depth", depth, "generation depth")->check(CLI::Range(0, 24));
        cmd->add_option("--lo", lo, "left bound");
        cmd->add_option("--hi", hi, "right bound");
        if (with_staircase_bits) {
            cmd->add_option("--origin", origin, "staircase reference point a0");
            cmd->add_option("--alpha", alpha_str, "order (default: estimated dimension)");
        }
    }

    io::SetDescriptor descriptor() const {
        std::optional<double> alpha;
        if (!alpha_str.empty()) alpha = std::stod(alpha_str);
        return {xi, {lo, hi}, depth, alpha, origin};
    }
};

// Shared solver flags; each solve-* command adds its own coefficients.
struct SolveFlags {
    double y0 = 0.0, s0 = 0.0;
    double s_end = 1.0, step = 1e-4;
    int samples = 1001;
    double alpha = 1.0;
    std::string mode = "surrogate";
    SetFlags set;
    std::string out = "trace.csv";
    std::string save_problem;
    std::string from_json;

    void attach(CLI::App* cmd) {
        cmd->add_option("--y0", y0, "initial value");
        cmd->add_option("--s0", s0, "initial staircase coordinate");
        cmd->add_option("--s-end", s_end, "solve range end (staircase coordinate)");
        cmd->add_option("--step", step, "grid step")->check(CLI::PositiveNumber);
        cmd->add_option("--samples", samples, "trace rows (0 keeps the whole grid)");
        cmd->add_option("--alpha", alpha, "order for the t-column map");
        cmd->add_option("--mode", mode, "staircase mode: surrogate | exact")
            ->check(CLI::IsMember({"surrogate", "exact"}));
        cmd->add_option("--out", out, "trace CSV path");
        cmd->add_option("--save-problem", save_problem, "write the problem descriptor JSON");
        cmd->add_option("--problem", from_json, "load the problem descriptor JSON");
        // staircase source for --mode exact
        cmd->add_option("--set-xi", set.xi, "exact mode: middle removal fraction");
        cmd->add_option("--set-depth", set.depth, "exact mode: cover depth");
        cmd->add_option("--set-lo", set.lo, "exact mode: left bound");
        cmd->add_option("--set-hi", set.hi, "exact mode: right bound");
        cmd->add_option("--set-origin", set.origin, "exact mode: staircase origin");
    }
};

std::string slurp_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot read " + path);
    return std::string((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
}

io::ProblemDescriptor load_or_build(const SolveFlags& flags, io::ProblemDescriptor d) {
    if (!flags.from_json.empty()) return io::ProblemDescriptor::from_json(slurp_file(flags.from_json));
    d.y0 = flags.y0;
    d.s0 = flags.s0;
    d.alpha = flags.alpha;
    d.staircase_mode = flags.mode;
    if (flags.mode == "exact") d.set = flags.set.descriptor();
    d.grid = {flags.s_end, flags.step, flags.samples};
    return d;
}

void run_problem(const SolveFlags& flags, io::ProblemDescriptor d) {
    d = load_or_build(flags, std::move(d));
    if (!flags.save_problem.empty()) write_out(flags.save_problem, d.to_json() + "\n");
    const SolutionTrace trace = d.run();
    write_out(flags.out, io::trace_csv(trace));
    std::cout << "solver=" << trace.solver << " max|residual|=" << trace.error_estimate << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fcalc: numerical fractal calculus toolkit"};
    app.require_subcommand(1);

    // --- set -----------------------------------------------------------
    auto* set_cmd = app.add_subcommand("set", "build a Cantor cover, emit CSV (lo,hi)");
    SetFlags set_flags;
    set_flags.attach(set_cmd, false);
    std::string set_out = "cover.csv", set_json;
    set_cmd->add_option("--out", set_out, "cover CSV path");
    set_cmd->add_option("--json", set_json, "also write the JSON descriptor");
    set_cmd->callback([&] {
        const IntervalCover cover = set_flags.descriptor().build_cover();
        write_out(set_out, io::cover_csv(cover));
        if (!set_json.empty()) write_out(set_json, set_flags.descriptor().to_json() + "\n");
    });

    // --- curve ----------------------------------------------------------
    auto* curve_cmd = app.add_subcommand("curve", "build a Koch-family curve, emit CSV (u,x1..xn,J)");
    std::string curve_variant = "koch";
    int curve_depth = 4;
    double curve_origin = 0.0;
    std::string curve_alpha_str;
    std::string curve_out = "curve.csv", curve_json;
    curve_cmd->add_option("--variant", curve_variant, "line | koch | koch5")
        ->check(CLI::IsMember({"line", "koch", "koch5"}));
    curve_cmd->add_option("--depth", curve_depth, "generation depth")->check(CLI::Range(0, 10));
    curve_cmd->add_option("--origin", curve_origin, "rise origin parameter p0");
    curve_cmd->add_option("--alpha", curve_alpha_str, "order (default: estimated curve dimension)");
    curve_cmd->add_option("--out", curve_out, "curve CSV path");
    curve_cmd->add_option("--json", curve_json, "also write the JSON descriptor");
    curve_cmd->callback([&] {
        std::optional<double> curve_alpha;
        if (!curve_alpha_str.empty()) curve_alpha = std::stod(curve_alpha_str);
        io::CurveDescriptor d{curve_variant, curve_depth, curve_alpha, curve_origin};
        write_out(curve_out, io::curve_csv(d.build_curve_with_rise()));
        if (!curve_json.empty()) write_out(curve_json, d.to_json() + "\n");
    });

    // --- staircase --------------------------------------------------------
    auto* st_cmd = app.add_subcommand("staircase", "integral staircase of a Cantor cover, CSV (x,S)");
    SetFlags st_flags;
    st_flags.attach(st_cmd);
    int st_samples = 2;
    std::string st_out = "staircase.csv", st_json;
    st_cmd->add_option("--samples", st_samples, "minimum uniform sample count");
    st_cmd->add_option("--out", st_out, "staircase CSV path");
    st_cmd->add_option("--json", st_json, "also write the JSON descriptor");
    st_cmd->callback([&] {
        const auto d = st_flags.descriptor();
        const IntervalCover cover = d.build_cover();
        const StaircaseTable table =
            build_staircase(cover, AlphaOrder::for_set(d.resolved_alpha()), d.origin,
                            std::max(2, st_samples));
        write_out(st_out, io::staircase_csv(table));
        if (!st_json.empty()) {
            auto with_alpha = d;
            with_alpha.alpha = d.resolved_alpha();
            write_out(st_json, with_alpha.to_json() + "\n");
        }
    });

    // --- dim -------------------------------------------------------------
    auto* dim_cmd = app.add_subcommand("dim", "estimate the gamma-dimension");
    std::string dim_set, dim_curve;
    double dim_xi = 1.0 / 3.0, dim_tol = 1e-3;
    dim_cmd->add_option("--set", dim_set, "set family: cantor");
    dim_cmd->add_option("--curve", dim_curve, "curve family: line | koch | koch5");
    dim_cmd->add_option("--xi", dim_xi, "middle removal fraction");
    dim_cmd->add_option("--tol", dim_tol, "bisection tolerance")->check(CLI::PositiveNumber);
    dim_cmd->callback([&] {
        if (dim_set.empty() == dim_curve.empty())
            throw CLI::ValidationError("dim", "pass exactly one of --set / --curve");
        double d;
        if (!dim_set.empty()) {
            if (dim_set != "cantor") throw CLI::ValidationError("dim", "unknown set family");
            d = gamma_dimension(CantorGenerator{dim_xi, {0.0, 1.0}}, {0.0, 1.0}, dim_tol);
        } else {
            d = curve_gamma_dimension(koch_variant_from_string(dim_curve), dim_tol);
        }
        std::cout << io::format_number(d) << "\n";
    });

    // --- solvers -----------------------------------------------------------
    auto* lin_cmd = app.add_subcommand("solve-linear", "D y + p(s) y = g(s)");
    SolveFlags lin_flags;
    std::string lin_p = "0", lin_g = "0";
    lin_cmd->add_option("--p", lin_p, "coefficient p(s)");
    lin_cmd->add_option("--g", lin_g, "forcing g(s)");
    lin_flags.attach(lin_cmd);
    lin_cmd->callback([&] {
        io::ProblemDescriptor d;
        d.type = "linear";
        d.p = lin_p;
        d.g = lin_g;
        run_problem(lin_flags, std::move(d));
    });

    auto* ber_cmd = app.add_subcommand("solve-bernoulli", "D y + q(s) y = r(s) y^beta");
    SolveFlags ber_flags;
    std::string ber_q = "0", ber_r = "0";
    double ber_beta = 2.0;
    ber_cmd->add_option("--q", ber_q, "coefficient q(s)");
    ber_cmd->add_option("--r", ber_r, "coefficient r(s)");
    ber_cmd->add_option("--beta", ber_beta, "exponent beta");
    ber_flags.attach(ber_cmd);
    ber_cmd->callback([&] {
        io::ProblemDescriptor d;
        d.type = "bernoulli";
        d.q = ber_q;
        d.r = ber_r;
        d.beta = ber_beta;
        run_problem(ber_flags, std::move(d));
    });

    auto* sep_cmd = app.add_subcommand("solve-separable", "M(s) ds + N(y) dy = 0");
    SolveFlags sep_flags;
    std::string sep_M = "0", sep_N = "1";
    sep_cmd->add_option("--M", sep_M, "M(s), i.e. -f for D y = f");
    sep_cmd->add_option("--N", sep_N, "N(y)");
    sep_flags.attach(sep_cmd);
    sep_cmd->callback([&] {
        io::ProblemDescriptor d;
        d.type = "separable";
        d.M = sep_M;
        d.N = sep_N;
        run_problem(sep_flags, std::move(d));
    });

    auto* num_cmd = app.add_subcommand("solve-numeric", "D y = f(s, y), RK4 in the s-coordinate");
    SolveFlags num_flags;
    std::string num_rhs = "0";
    num_cmd->add_option("--rhs", num_rhs, "right side f(s, y)");
    num_flags.attach(num_cmd);
    num_cmd->callback([&] {
        io::ProblemDescriptor d;
        d.type = "numeric";
        d.rhs = num_rhs;
        run_problem(num_flags, std::move(d));
    });

    // --- models -------------------------------------------------------------
    auto* int_cmd = app.add_subcommand("model-interest", "fractal compound interest");
    double ip0 = 1000.0, ir = 0.05, ik = 100.0, ialpha = 1.0, it_end = 10.0;
    int isamples = 1001;
    std::string int_out = "interest.csv", int_params, int_save;
    int_cmd->add_option("--p0", ip0, "initial balance");
    int_cmd->add_option("--r", ir, "interest rate (per time^alpha)");
    int_cmd->add_option("--k", ik, "deposit rate (per time^alpha)");
    int_cmd->add_option("--alpha", ialpha, "order");
    int_cmd->add_option("--t-end", it_end, "time horizon");
    int_cmd->add_option("--samples", isamples, "rows");
    int_cmd->add_option("--out", int_out, "CSV path (t,p)");
    int_cmd->add_option("--params", int_params, "load the JSON parameter file");
    int_cmd->add_option("--save-params", int_save, "write the JSON parameter file");
    int_cmd->callback([&] {
        const InterestParams params = int_params.empty()
                                          ? InterestParams{ip0, ir, ik, ialpha}
                                          : io::interest_params_from_json(slurp_file(int_params));
        if (!int_save.empty()) write_out(int_save, io::interest_params_json(params) + "\n");
        std::string csv = "t,p\n";
        for (int i = 0; i < isamples; ++i) {
            const double t = it_end * static_cast<double>(i) / static_cast<double>(isamples - 1);
            csv += io::format_number(t) + "," + io::format_number(interest_balance(params, t)) +
                   "\n";
        }
        write_out(int_out, csv);
    });

    auto* esc_cmd = app.add_subcommand("model-escape", "fractal escape velocity");
    double eg = 9.8, eR = 6.37e6, ev0 = 0.0, ealpha = 1.0;
    std::string esc_params, esc_save;
    esc_cmd->add_option("--g", eg, "surface gravity");
    esc_cmd->add_option("--R", eR, "body radius");
    esc_cmd->add_option("--v0", ev0, "initial velocity");
    esc_cmd->add_option("--alpha", ealpha, "order");
    esc_cmd->add_option("--params", esc_params, "load the JSON parameter file");
    esc_cmd->add_option("--save-params", esc_save, "write the JSON parameter file");
    esc_cmd->callback([&] {
        const EscapeParams params = esc_params.empty()
                                        ? EscapeParams{eg, eR, ev0, ealpha}
                                        : io::escape_params_from_json(slurp_file(esc_params));
        if (!esc_save.empty()) write_out(esc_save, io::escape_params_json(params) + "\n");
        const EscapeProfile p = escape_profile(params);
        std::cout << "x_max=" << io::format_number(p.x_max)
                  << " v0_required=" << io::format_number(p.v0_required)
                  << " v_escape=" << io::format_number(p.v_escape) << "\n";
    });

    auto* cool_cmd = app.add_subcommand("model-cooling", "fractal Newton cooling / time of death");
    CoolingParams cp;
    std::string cool_out, cool_params, cool_save;
    double cool_t_end = 6.0;
    int cool_samples = 601;
    cool_cmd->add_option("--Ts", cp.Ts, "ambient temperature");
    cool_cmd->add_option("--T0", cp.T0, "temperature at discovery");
    cool_cmd->add_option("--T1", cp.T1, "temperature at t1");
    cool_cmd->add_option("--t1", cp.t1, "measurement time");
    cool_cmd->add_option("--Td", cp.Td, "temperature at death");
    cool_cmd->add_option("--alpha", cp.alpha, "order");
    cool_cmd->add_option("--trace", cool_out, "also emit the T(t) CSV to this path");
    cool_cmd->add_option("--t-end", cool_t_end, "trace horizon");
    cool_cmd->add_option("--samples", cool_samples, "trace rows");
    cool_cmd->add_option("--params", cool_params, "load the JSON parameter file");
    cool_cmd->add_option("--save-params", cool_save, "write the JSON parameter file");
    cool_cmd->callback([&] {
        if (!cool_params.empty()) cp = io::cooling_params_from_json(slurp_file(cool_params));
        if (!cool_save.empty()) write_out(cool_save, io::cooling_params_json(cp) + "\n");
        const double k = estimate_k(cp);
        const double td = estimate_time_of_death(cp);
        std::cout << "k=" << io::format_number(k)
                  << " time_of_death=" << io::format_number(td) << "\n";
        if (!cool_out.empty()) {
            std::string csv = "t,T\n";
            for (int i = 0; i < cool_samples; ++i) {
                const double t =
                    cool_t_end * static_cast<double>(i) / static_cast<double>(cool_samples - 1);
                csv += io::format_number(t) + "," +
                       io::format_number(cooling_temperature(cp, k, t)) + "\n";
            }
            write_out(cool_out, csv);
        }
    });

    // --- figure ---------------------------------------------------------
    auto* fig_cmd = app.add_subcommand("figure", "emit the CSV data behind figures 1..5");
    int fig_n = 1;
    std::vector<double> fig_alphas;
    std::string fig_dir = ".";
    int fig_samples = 1001;
    bool fig_gnuplot = false;
    fig_cmd->add_option("n", fig_n, "figure index")->required()->check(CLI::Range(1, 5));
    fig_cmd->add_option("--alphas", fig_alphas, "alpha sweep (defaults per figure)")
        ->delimiter(',');
    fig_cmd->add_option("--out-dir", fig_dir, "output directory");
    fig_cmd->add_option("--samples", fig_samples, "rows per CSV");
    fig_cmd->add_flag("--gnuplot", fig_gnuplot, "also write a gnuplot script");
    fig_cmd->callback([&] {
        figures::FigureOptions opt;
        opt.alphas = fig_alphas;
        opt.out_dir = resolve_out(fig_dir);
        opt.samples = fig_samples;
        opt.gnuplot = fig_gnuplot;
        fs::create_directories(opt.out_dir);
        for (const auto& p : figures::emit_figure(fig_n, opt))
            std::cout << "wrote " << p.string() << "\n";
    });

    try {
        CLI11_PARSE(app, argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
