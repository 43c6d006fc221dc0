#include "fcalc/figures.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "fcalc/fode.hpp"
#include "fcalc/io.hpp"
#include "fcalc/models.hpp"

namespace fcalc::figures {

namespace {

namespace fs = std::filesystem;

std::string alpha_tag(double a) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", a);
    return buf;
}

fs::path figure_path(const fs::path& dir, int n, const std::string& suffix) {
    return dir / ("figure" + std::to_string(n) + suffix + ".csv");
}

std::string two_column_csv(const char* h1, const char* h2, const std::vector<double>& a,
                           const std::vector<double>& b) {
    std::string out = std::string(h1) + "," + h2 + "\n";
    for (std::size_t i = 0; i < a.size(); ++i) {
        out += io::format_number(a[i]);
        out += ',';
        out += io::format_number(b[i]);
        out += '\n';
    }
    return out;
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        v[static_cast<std::size_t>(i)] =
            lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    return v;
}

// Figure 1: the oscillatory linear worked example, plotted in t per alpha.
std::vector<fs::path> figure1(const FigureOptions& opt) {
    const std::vector<double> alphas = opt.alphas.empty()
                                           ? std::vector<double>{0.6, 0.8, 1.0}
                                           : opt.alphas;
    const double t_end = 10.0;
    std::vector<fs::path> paths;
    for (const double a : alphas) {
        LinearFODEProblem problem;
        problem.p = [](double) { return 0.5; };
        problem.g = [](double s) { return 10.0 + 5.0 * std::sin(2.0 * s); };
        problem.y0 = 0.0;
        problem.s0 = 0.0;
        problem.time = TimeMap::surrogate(a);
        const SolutionTrace trace =
            solve_linear(problem, {std::pow(t_end, a), 1e-4, 0});

        const auto ts = linspace(0.0, t_end, opt.samples);
        std::vector<double> ys(ts.size());
        for (std::size_t i = 0; i < ts.size(); ++i)
            ys[i] = trace.y_at_s(std::pow(ts[i], a));

        const fs::path p = figure_path(opt.out_dir, 1, "_alpha" + alpha_tag(a));
        io::write_text_file(p, two_column_csv("t", "y", ts, ys));
        paths.push_back(p);
    }
    return paths;
}

// Figure 2: the separable worked example y = 1 - sqrt(J^3 + 2J^2 + 2J + 4).
std::vector<fs::path> figure2(const FigureOptions& opt) {
    const std::vector<double> alphas = opt.alphas.empty()
                                           ? std::vector<double>{0.6, 0.8, 1.0}
                                           : opt.alphas;
    const double J_end = 3.0;
    std::vector<fs::path> paths;
    for (const double a : alphas) {
        SeparableFODEProblem problem;
        problem.M = [](double s) { return -(3.0 * s * s + 4.0 * s + 2.0); };
        problem.N = [](double y) { return 2.0 * (y - 1.0); };
        problem.y0 = -1.0;
        problem.s0 = 0.0;
        problem.time = TimeMap::surrogate(a);
        const SeparableSolution sol = solve_separable(problem, {J_end, 1e-3, 0});

        const auto ts = linspace(0.0, std::pow(J_end, 1.0 / a), opt.samples);
        std::vector<double> ys(ts.size());
        for (std::size_t i = 0; i < ts.size(); ++i)
            ys[i] = sol.trace.y_at_s(std::pow(ts[i], a));

        const fs::path p = figure_path(opt.out_dir, 2, "_alpha" + alpha_tag(a));
        io::write_text_file(p, two_column_csv("t", "y", ts, ys));
        paths.push_back(p);
    }
    return paths;
}

// Figure 3: investment growth per alpha.
std::vector<fs::path> figure3(const FigureOptions& opt) {
    const std::vector<double> alphas = opt.alphas.empty()
                                           ? std::vector<double>{0.6, 0.8, 1.0}
                                           : opt.alphas;
    std::vector<fs::path> paths;
    for (const double a : alphas) {
        InterestParams params{1000.0, 0.05, 100.0, a};
        const auto ts = linspace(0.0, 10.0, opt.samples);
        std::vector<double> ps(ts.size());
        for (std::size_t i = 0; i < ts.size(); ++i) ps[i] = interest_balance(params, ts[i]);
        const fs::path p = figure_path(opt.out_dir, 3, "_alpha" + alpha_tag(a));
        io::write_text_file(p, two_column_csv("t", "p", ts, ps));
        paths.push_back(p);
    }
    return paths;
}

// Figure 4: escape velocity against alpha; the sweep is the curve.
std::vector<fs::path> figure4(const FigureOptions& opt) {
    std::vector<double> alphas = opt.alphas;
    if (alphas.empty()) {
        for (int i = 0; i <= 50; ++i) alphas.push_back(0.5 + 0.01 * static_cast<double>(i));
    }
    std::vector<double> ve(alphas.size());
    for (std::size_t i = 0; i < alphas.size(); ++i)
        ve[i] = escape_profile({9.8, 6.37e6, 0.0, alphas[i]}).v_escape;
    const fs::path p = figure_path(opt.out_dir, 4, "");
    io::write_text_file(p, two_column_csv("alpha", "v_e", alphas, ve));
    return {p};
}

// Figure 5: cooling curves per alpha with a shared rate constant.
std::vector<fs::path> figure5(const FigureOptions& opt) {
    const std::vector<double> alphas =
        opt.alphas.empty() ? std::vector<double>{0.7, 1.0} : opt.alphas;
    const double k = std::log(2.0);
    std::vector<fs::path> paths;
    for (const double a : alphas) {
        CoolingParams params;
        params.Ts = 20.0;
        params.T0 = 37.0;
        params.alpha = a;
        const auto ts = linspace(0.0, 6.0, opt.samples);
        std::vector<double> Ts_out(ts.size());
        for (std::size_t i = 0; i < ts.size(); ++i)
            Ts_out[i] = cooling_temperature(params, k, ts[i]);
        const fs::path p = figure_path(opt.out_dir, 5, "_alpha" + alpha_tag(a));
        io::write_text_file(p, two_column_csv("t", "T", ts, Ts_out));
        paths.push_back(p);
    }
    return paths;
}

} // namespace

namespace {

fs::path write_gnuplot_script(int n, const std::vector<fs::path>& csvs, const fs::path& dir) {
    std::string script = "set datafile separator ','\nset key autotitle columnhead\nplot ";
    for (std::size_t i = 0; i < csvs.size(); ++i) {
        if (i) script += ", \\\n     ";
        script += "'" + csvs[i].filename().string() + "' using 1:2 with lines title '" +
                  csvs[i].stem().string() + "'";
    }
    script += "\npause mouse close\n";
    const fs::path p = dir / ("figure" + std::to_string(n) + ".gp");
    io::write_text_file(p, script);
    return p;
}

} // namespace

std::vector<fs::path> emit_figure(int n, const FigureOptions& options) {
    if (options.samples < 2) throw std::invalid_argument("samples must be at least 2");
    std::vector<fs::path> paths;
    switch (n) {
        case 1: paths = figure1(options); break;
        case 2: paths = figure2(options); break;
        case 3: paths = figure3(options); break;
        case 4: paths = figure4(options); break;
        case 5: paths = figure5(options); break;
        default: throw std::invalid_argument("figure index must be 1..5");
    }
    if (options.gnuplot) paths.push_back(write_gnuplot_script(n, paths, options.out_dir));
    return paths;
}

} // namespace fcalc::figures
