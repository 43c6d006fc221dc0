// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Criterion 8 shells out to the CLI binary named by FCALC_CLI.

#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fcalc/calculus.hpp"
#include "fcalc/cantor.hpp"
#include "fcalc/curves.hpp"
#include "fcalc/fode.hpp"
#include "fcalc/mass.hpp"
#include "fcalc/models.hpp"
#include "fcalc/staircase.hpp"

namespace fs = std::filesystem;
using namespace fcalc;
using Clock = std::chrono::steady_clock;

namespace {

struct Runner {
    int failures = 0;

    void criterion(int n, const std::string& what, const std::function<bool(std::string&)>& fn) {
        std::string detail;
        bool ok = false;
        const auto start = Clock::now();
        try {
            ok = fn(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const double sec =
            std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start)
                .count() /
            1000.0;
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << "criterion " << n << ": " << what;
        if (!detail.empty()) std::cout << " (" << detail << ")";
        std::cout << " [" << sec << " s]\n";
        if (!ok) ++failures;
    }
};

double ssa_closed_form(double s) {
    return 20.0 - 40.0 / 17.0 * std::cos(2.0 * s) + 10.0 / 17.0 * std::sin(2.0 * s) -
           300.0 / 17.0 * std::exp(-0.5 * s);
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(3);
    os << v;
    return os.str();
}

// --- CSV helpers for criterion 8 -------------------------------------------

std::vector<std::pair<double, double>> read_two_column_csv(const fs::path& p) {
    std::ifstream f(p);
    if (!f) throw std::runtime_error("missing CSV: " + p.string());
    std::vector<std::pair<double, double>> rows;
    std::string line;
    std::getline(f, line);  // header
    while (std::getline(f, line)) {
        const auto comma = line.find(',');
        if (comma == std::string::npos) continue;
        rows.emplace_back(std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1)));
    }
    return rows;
}

int count_extrema(const std::vector<std::pair<double, double>>& rows, double tol = 1e-7) {
    int count = 0, last_sign = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double d = rows[i].second - rows[i - 1].second;
        if (std::abs(d) <= tol) continue;
        const int sign = d > 0.0 ? 1 : -1;
        if (last_sign != 0 && sign != last_sign) ++count;
        last_sign = sign;
    }
    return count;
}

} // namespace

int main() {
    Runner runner;
    const double dim_third = std::log(2.0) / std::log(3.0);
    const double dim_koch = std::log(4.0) / std::log(3.0);

    runner.criterion(1, "dimension recovery (cantor within 0.02, koch within 0.03)",
                     [&](std::string& detail) {
                         const auto t0 = Clock::now();
                         const double d_set =
                             gamma_dimension(CantorGenerator{1.0 / 3.0, {0.0, 1.0}},
                                             {0.0, 1.0}, 1e-3);
                         const double secs =
                             std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() -
                                                                                   t0)
                                 .count() /
                             1000.0;
                         const double d_curve =
                             curve_gamma_dimension(KochVariant::Triadic, 1e-3);
                         detail = "cantor " + fmt(d_set) + ", koch " + fmt(d_curve) + ", set in " +
                                  fmt(secs) + " s";
                         return std::abs(d_set - dim_third) <= 0.02 &&
                                std::abs(d_curve - dim_koch) <= 0.03 && secs < 10.0;
                     });

    runner.criterion(2, "coarse mass matches the closed form to 1e-12 (n <= 20)",
                     [&](std::string& detail) {
                         double worst = 0.0;
                         for (const double xi : {1.0 / 3.0, 0.5}) {
                             const double r = (1.0 - xi) / 2.0;
                             const double dim = std::log(2.0) / std::log(1.0 / r);
                             for (int n = 0; n <= 20; ++n) {
                                 const auto cover = build_cantor_cover(xi, n, {0.0, 1.0});
                                 for (const double a : {0.4, dim, 0.9}) {
                                     const double m =
                                         coarse_mass(cover, AlphaOrder::for_set(a), {0.0, 1.0},
                                                     cover.native_width());
                                     const double closed = gamma_alpha_plus_1(a) *
                                                           std::pow(2.0 * std::pow(r, a), n);
                                     worst = std::max(worst,
                                                      std::abs(m - closed) / closed);
                                 }
                             }
                         }
                         detail = "max rel err " + fmt(worst);
                         return worst <= 1e-12;
                     });

    runner.criterion(3, "linear worked example to 1e-6; RK4 agrees to 1e-5 at step 1e-3",
                     [&](std::string& detail) {
                         LinearFODEProblem problem;
                         problem.p = [](double) { return 0.5; };
                         problem.g = [](double s) { return 10.0 + 5.0 * std::sin(2.0 * s); };
                         problem.y0 = 0.0;
                         const SolutionTrace lin = solve_linear(problem, {10.0, 1e-4, 0});
                         double err_lin = 0.0;
                         for (const auto& row : lin.samples)
                             err_lin = std::max(err_lin,
                                                std::abs(row.y - ssa_closed_form(row.s)));

                         const SolutionTrace num = solve_numeric_conjugate(
                             [](double s, double y) {
                                 return 10.0 + 5.0 * std::sin(2.0 * s) - 0.5 * y;
                             },
                             0.0, {0.0, 10.0}, 1e-3);
                         double err_num = 0.0, err_cross = 0.0;
                         for (const auto& row : num.samples) {
                             err_num = std::max(err_num,
                                                std::abs(row.y - ssa_closed_form(row.s)));
                             err_cross = std::max(err_cross,
                                                  std::abs(row.y - lin.y_at_s(row.s)));
                         }
                         detail = "linear " + fmt(err_lin) + ", rk4 " + fmt(err_num) +
                                  ", cross " + fmt(err_cross);
                         return err_lin <= 1e-6 && err_num <= 1e-5 && err_cross <= 1e-5;
                     });

    runner.criterion(4, "separable worked example to 1e-8 with y(0) = -1 exact",
                     [&](std::string& detail) {
                         SeparableFODEProblem problem;
                         problem.M = [](double s) {
                             return -(3.0 * s * s + 4.0 * s + 2.0);
                         };
                         problem.N = [](double y) { return 2.0 * (y - 1.0); };
                         problem.y0 = -1.0;
                         const auto sol = solve_separable(problem, {3.0, 1e-3, 0});
                         if (!sol.completed) {
                             detail = "branch terminated early";
                             return false;
                         }
                         if (sol.trace.samples.front().y != -1.0) {
                             detail = "initial condition not exact";
                             return false;
                         }
                         double worst = 0.0;
                         for (const auto& row : sol.trace.samples) {
                             const double J = row.s;
                             const double closed =
                                 1.0 - std::sqrt(((J + 2.0) * J + 2.0) * J + 4.0);
                             worst = std::max(worst, std::abs(row.y - closed));
                         }
                         detail = "max abs err " + fmt(worst);
                         return worst <= 1e-8;
                     });

    runner.criterion(5, "bernoulli worked example residual <= 1e-4 at step 1e-4",
                     [&](std::string& detail) {
                         const double s0 = 0.1, c = 1.0;
                         BernoulliFODEProblem problem;
                         problem.q = [](double s) { return -2.0 / s; };
                         problem.r = [](double s) { return 2.0 * s; };
                         problem.beta = 0.5;
                         problem.s0 = s0;
                         problem.y0 = std::pow(s0 * s0 + c * s0, 2.0);
                         const auto result = solve_bernoulli(problem, {5.0, 1e-4, 0});
                         double check = 0.0;  // solution must really be (s^2 + c s)^2
                         for (const auto& row : result.trace.samples) {
                             const double expect =
                                 std::pow(row.s * row.s + c * row.s, 2.0);
                             check = std::max(check, std::abs(row.y - expect) / expect);
                         }
                         const double res = result.trace.max_residual();
                         detail = "max residual " + fmt(res) + ", closed-form rel dev " +
                                  fmt(check);
                         return res <= 1e-4 && check <= 1e-5;
                     });

    runner.criterion(6, "classical limits at alpha = 1 match direct evaluation to 1e-12",
                     [&](std::string& detail) {
                         double worst = 0.0;
                         const InterestParams ip{1000.0, 0.05, 100.0, 1.0};
                         for (double t = 0.0; t <= 10.0; t += 0.25) {
                             const double direct =
                                 1000.0 * std::exp(0.05 * t) +
                                 (100.0 / 0.05) * (std::exp(0.05 * t) - 1.0);
                             worst = std::max(worst, std::abs(interest_balance(ip, t) - direct) /
                                                         std::max(1.0, direct));
                         }

                         const EscapeProfile ep = escape_profile({9.8, 6.37e6, 0.0, 1.0});
                         const double ve_direct = std::sqrt(2.0 * 9.8 * 6.37e6);
                         worst = std::max(worst,
                                          std::abs(ep.v_escape - ve_direct) / ve_direct);
                         const bool magnitude_ok = std::abs(ep.v_escape - 1.117e4) <
                                                   0.001 * ve_direct;

                         const CoolingParams cp{18.0, 34.0, 27.0, 2.0, 37.0, 1.0};
                         for (double t = 0.0; t <= 8.0; t += 0.25) {
                             const double direct = 18.0 + 16.0 * std::exp(-0.31 * t);
                             worst = std::max(worst,
                                              std::abs(cooling_temperature(cp, 0.31, t) -
                                                       direct) /
                                                  direct);
                         }
                         detail = "max rel dev " + fmt(worst) + ", v_e = " + fmt(ep.v_escape);
                         return worst <= 1e-12 && magnitude_ok;
                     });

    runner.criterion(7, "time-of-death round trip over 1000 random draws (<= 1e-6 rel)",
                     [&](std::string& detail) {
                         std::mt19937 rng(1234);
                         std::uniform_real_distribution<double> alpha_d(0.5, 1.0);
                         std::uniform_real_distribution<double> k_d(0.05, 1.5);
                         std::uniform_real_distribution<double> td_d(0.25, 24.0);
                         std::uniform_real_distribution<double> ts_d(0.0, 30.0);
                         std::uniform_real_distribution<double> t1_d(0.25, 6.0);
                         int failures = 0;
                         double worst = 0.0;
                         for (int i = 0; i < 1000; ++i) {
                             CoolingParams params;
                             double k = 0.0, td_true = 0.0;
                             // valid draw: the body must not have equilibrated,
                             // or the measurements carry no signal
                             do {
                                 params.alpha = alpha_d(rng);
                                 params.Ts = ts_d(rng);
                                 params.Td = 37.0;
                                 if (params.Td - params.Ts < 5.0)
                                     params.Ts = params.Td - 5.0;
                                 params.t1 = t1_d(rng);
                                 k = k_d(rng);
                                 td_true = td_d(rng);
                             } while (k * std::pow(td_true, params.alpha) > 12.0 ||
                                      k * std::pow(params.t1, params.alpha) > 8.0);
                             params.T0 = params.Ts + (params.Td - params.Ts) *
                                                         std::exp(-k * std::pow(td_true,
                                                                                params.alpha));
                             params.T1 = cooling_temperature(params, k, params.t1);
                             const double td = estimate_time_of_death(params);
                             const double rel = std::abs(td - td_true) / td_true;
                             worst = std::max(worst, rel);
                             if (rel > 1e-6) ++failures;
                         }
                         detail = "worst rel " + fmt(worst) + ", failures " +
                                  std::to_string(failures);
                         return failures == 0;
                     });

    runner.criterion(8, "figure CSVs reproduce the qualitative claims", [&](std::string& detail) {
        const char* cli = std::getenv("FCALC_CLI");
        if (!cli) {
            detail = "FCALC_CLI not set";
            return false;
        }
        const fs::path dir =
            fs::temp_directory_path() / ("fcalc_acceptance_" + std::to_string(::getpid()));
        fs::create_directories(dir);
        for (int n = 1; n <= 5; ++n) {
            const std::string cmd = std::string(cli) + " figure " + std::to_string(n) +
                                    " --out-dir " + dir.string() + " > /dev/null 2>&1";
            if (std::system(cmd.c_str()) != 0) {
                detail = "figure " + std::to_string(n) + " failed";
                return false;
            }
        }

        // fig 1: oscillation count non-decreasing in alpha
        const int e06 = count_extrema(read_two_column_csv(dir / "figure1_alpha0.6.csv"));
        const int e08 = count_extrema(read_two_column_csv(dir / "figure1_alpha0.8.csv"));
        const int e10 = count_extrema(read_two_column_csv(dir / "figure1_alpha1.csv"));
        const bool fig1 = e06 <= e08 && e08 <= e10 && e10 > e06;

        // fig 2 exists and starts at y = -1
        const auto f2 = read_two_column_csv(dir / "figure2_alpha1.csv");
        const bool fig2 = !f2.empty() && std::abs(f2.front().second + 1.0) < 1e-9;

        // fig 3: p(t = 10) increasing in alpha
        const double p06 = read_two_column_csv(dir / "figure3_alpha0.6.csv").back().second;
        const double p08 = read_two_column_csv(dir / "figure3_alpha0.8.csv").back().second;
        const double p10 = read_two_column_csv(dir / "figure3_alpha1.csv").back().second;
        const bool fig3 = p06 < p08 && p08 < p10;

        // fig 4: v_e decreasing in alpha
        const auto f4 = read_two_column_csv(dir / "figure4.csv");
        bool fig4 = f4.size() > 10;
        for (std::size_t i = 1; i < f4.size(); ++i)
            if (f4[i].second >= f4[i - 1].second) fig4 = false;

        // fig 5: exactly one crossover for t > 0
        const auto c07 = read_two_column_csv(dir / "figure5_alpha0.7.csv");
        const auto c10 = read_two_column_csv(dir / "figure5_alpha1.csv");
        int crossings = 0, last_sign = 0;
        for (std::size_t i = 1; i < std::min(c07.size(), c10.size()); ++i) {
            const double diff = c07[i].second - c10[i].second;
            if (std::abs(diff) < 1e-12) continue;
            const int sign = diff > 0.0 ? 1 : -1;
            if (last_sign != 0 && sign != last_sign) ++crossings;
            last_sign = sign;
        }
        const bool fig5 = crossings == 1;

        fs::remove_all(dir);
        detail = "extrema " + std::to_string(e06) + "/" + std::to_string(e08) + "/" +
                 std::to_string(e10) + ", crossings " + std::to_string(crossings);
        return fig1 && fig2 && fig3 && fig4 && fig5;
    });

    runner.criterion(9, "derivative order >= 1 and fundamental-theorem error <= 1e-3",
                     [&](std::string& detail) {
                         auto cover = std::make_shared<IntervalCover>(
                             build_cantor_cover(1.0 / 3.0, 14, {0.0, 1.0}));
                         auto table = std::make_shared<StaircaseTable>(build_staircase(
                             *cover, AlphaOrder::for_set(dim_third), 0.0));
                         auto t = table;
                         const auto f = FractalFunction::on_set(
                             cover, table, [t](double x) {
                                 const double s = staircase_eval(*t, x);
                                 return s * s;
                             });
                         const double e1 = std::abs(f_alpha_derivative(f, 0.0, 0.04));
                         const double e2 = std::abs(f_alpha_derivative(f, 0.0, 0.02));
                         const double e3 = std::abs(f_alpha_derivative(f, 0.0, 0.01));
                         const bool halving = e2 <= 0.6 * e1 && e3 <= 0.6 * e2;

                         auto coarse_cover = std::make_shared<IntervalCover>(
                             build_cantor_cover(1.0 / 3.0, 12, {0.0, 1.0}));
                         auto coarse_table = std::make_shared<StaircaseTable>(build_staircase(
                             *coarse_cover, AlphaOrder::for_set(dim_third), 0.0, 64));
                         auto ct = coarse_table;
                         const auto g = [](double s) { return s * s - 0.5 * s; };
                         const auto fg = FractalFunction::on_set(
                             coarse_cover, coarse_table,
                             [ct, g](double x) { return g(staircase_eval(*ct, x)); });
                         const auto df = FractalFunction::on_set(
                             coarse_cover, coarse_table,
                             [fg](double x) { return f_alpha_derivative(fg, x); });
                         const double s1 = staircase_eval(*coarse_table, 1.0);
                         const auto integral = f_alpha_integral(df, 0.0, 1.0);
                         const double ft_err = std::abs(integral.value - (g(s1) - g(0.0)));

                         detail = "halving " + fmt(e1) + "/" + fmt(e2) + "/" + fmt(e3) +
                                  ", ft err " + fmt(ft_err);
                         return halving && ft_err <= 1e-3;
                     });

    if (runner.failures == 0) {
        std::cout << "acceptance: all criteria passed\n";
        return 0;
    }
    std::cout << "acceptance: " << runner.failures << " criterion(s) failed\n";
    return 1;
}
