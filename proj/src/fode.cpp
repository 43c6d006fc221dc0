#include "fcalc/fode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fcalc {

TimeMap TimeMap::surrogate(double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("surrogate alpha must be positive");
    TimeMap m;
    m.alpha_ = alpha;
    return m;
}

TimeMap TimeMap::exact(std::shared_ptr<const StaircaseTable> table) {
    if (!table) throw std::invalid_argument("exact time map needs a staircase table");
    TimeMap m;
    m.alpha_ = table->alpha();
    m.table_ = std::move(table);
    return m;
}

double TimeMap::t_of_s(double s) const {
    if (table_) return staircase_invert(*table_, s);
    if (s < 0.0) throw std::domain_error("surrogate map requires s >= 0");
    return std::pow(s, 1.0 / alpha_);
}

double TimeMap::s_of_t(double t) const {
    if (table_) return staircase_eval(*table_, t);
    if (t < 0.0) throw std::domain_error("surrogate map requires t >= 0");
    return std::pow(t, alpha_);
}

double SolutionTrace::max_residual() const {
    double m = 0.0;
    for (const auto& r : samples) m = std::max(m, std::abs(r.residual));
    return m;
}

double SolutionTrace::y_at_s(double s) const {
    if (samples.empty()) throw std::logic_error("empty trace");
    if (s <= samples.front().s) return samples.front().y;
    if (s >= samples.back().s) return samples.back().y;
    const auto it = std::lower_bound(samples.begin(), samples.end(), s,
                                     [](const TraceSample& a, double v) { return a.s < v; });
    const auto prev = it - 1;
    const double ds = it->s - prev->s;
    if (ds <= 0.0) return it->y;
    const double w = (s - prev->s) / ds;
    return prev->y + w * (it->y - prev->y);
}

namespace {

struct Grid {
    std::vector<double> s;
    double h;
};

Grid make_grid(double s0, double s_end, double step) {
    if (!(step > 0.0)) throw std::invalid_argument("step must be positive");
    if (!(s_end > s0)) throw std::invalid_argument("s_end must exceed s0");
    const double span = s_end - s0;
    const std::size_t n =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(span / step - 1e-9)));
    const double h = span / static_cast<double>(n);
    Grid g;
    g.h = h;
    g.s.resize(n + 1);
    for (std::size_t i = 0; i <= n; ++i) g.s[i] = s0 + h * static_cast<double>(i);
    g.s.back() = s_end;
    return g;
}

std::vector<double> eval_on_grid(const std::function<double(double)>& f,
                                 const std::vector<double>& s, const char* name) {
    if (!f) throw std::invalid_argument(std::string(name) + " coefficient is required");
    std::vector<double> out(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        out[i] = f(s[i]);
        if (!std::isfinite(out[i]))
            throw NumericError(std::string("non-finite ") + name + " at s = " +
                               std::to_string(s[i]));
    }
    return out;
}

std::vector<double> cumulative_trapezoid(const std::vector<double>& f, double h) {
    std::vector<double> out(f.size(), 0.0);
    double comp = 0.0;
    for (std::size_t i = 1; i < f.size(); ++i) {
        const double term = 0.5 * h * (f[i - 1] + f[i]) - comp;
        const double next = out[i - 1] + term;
        comp = (next - out[i - 1]) - term;
        out[i] = next;
    }
    return out;
}

// Central differences inside, second-order one-sided stencils at the ends.
std::vector<double> central_difference(const std::vector<double>& y, double h) {
    const std::size_t n = y.size();
    std::vector<double> d(n, 0.0);
    if (n < 2) return d;
    if (n == 2) {
        d[0] = d[1] = (y[1] - y[0]) / h;
        return d;
    }
    d[0] = (-3.0 * y[0] + 4.0 * y[1] - y[2]) / (2.0 * h);
    d[n - 1] = (3.0 * y[n - 1] - 4.0 * y[n - 2] + y[n - 3]) / (2.0 * h);
    for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (y[i + 1] - y[i - 1]) / (2.0 * h);
    return d;
}

SolutionTrace assemble_trace(const std::vector<double>& s, const std::vector<double>& y,
                             const std::vector<double>& residual, const TimeMap& time,
                             std::string solver, double h, int samples) {
    SolutionTrace trace;
    trace.solver = std::move(solver);
    trace.step = h;
    for (double r : residual) trace.error_estimate = std::max(trace.error_estimate, std::abs(r));

    const std::size_t n = s.size();
    std::size_t keep = samples <= 0 ? n : std::min<std::size_t>(n, static_cast<std::size_t>(samples));
    if (keep < 2) keep = 2;
    trace.samples.reserve(keep);
    std::size_t prev = static_cast<std::size_t>(-1);
    for (std::size_t k = 0; k < keep; ++k) {
        const std::size_t i =
            keep == n ? k
                      : static_cast<std::size_t>(std::llround(static_cast<double>(k) *
                                                              static_cast<double>(n - 1) /
                                                              static_cast<double>(keep - 1)));
        if (i == prev) continue;
        prev = i;
        trace.samples.push_back({time.t_of_s(s[i]), s[i], y[i], residual[i]});
    }
    return trace;
}

constexpr double kLambdaLimit = 700.0;  // exp overflow guard

} // namespace

IntegratingFactor::IntegratingFactor(std::vector<double> grid, std::vector<double> lambda)
    : grid_(std::move(grid)), lambda_(std::move(lambda)) {
    if (grid_.size() != lambda_.size() || grid_.size() < 2)
        throw std::invalid_argument("integrating factor needs a grid of at least 2 nodes");
}

double IntegratingFactor::lambda(double s) const {
    if (s < grid_.front() - 1e-12 || s > grid_.back() + 1e-12)
        throw std::out_of_range("integrating factor queried outside its grid");
    s = std::clamp(s, grid_.front(), grid_.back());
    const auto it = std::upper_bound(grid_.begin(), grid_.end(), s);
    if (it == grid_.begin()) return lambda_.front();
    if (it == grid_.end()) return lambda_.back();
    const std::size_t i = static_cast<std::size_t>(it - grid_.begin());
    const double w = (s - grid_[i - 1]) / (grid_[i] - grid_[i - 1]);
    return lambda_[i - 1] + w * (lambda_[i] - lambda_[i - 1]);
}

IntegratingFactor integrating_factor(const std::function<double(double)>& p, Interval s_range,
                                     double quadrature_step) {
    Grid grid = make_grid(s_range.lo, s_range.hi, quadrature_step);
    const auto pv = eval_on_grid(p, grid.s, "p");
    auto lambda = cumulative_trapezoid(pv, grid.h);
    for (double l : lambda)
        if (std::abs(l) > kLambdaLimit)
            throw ScalingError("integrating factor exponent exceeds the representable range; "
                               "split the s-range");
    return IntegratingFactor(std::move(grid.s), std::move(lambda));
}

SolutionTrace solve_linear(const LinearFODEProblem& problem, const SolveGrid& grid) {
    Grid g = make_grid(problem.s0, grid.s_end, grid.step);
    const auto pv = eval_on_grid(problem.p, g.s, "p");
    const auto gv = eval_on_grid(problem.g, g.s, "g");

    const auto lambda = cumulative_trapezoid(pv, g.h);
    for (double l : lambda)
        if (std::abs(l) > kLambdaLimit)
            throw ScalingError("integrating factor under/overflow on the solve range; "
                               "split the s-range");

    // integrand mu * g, then y = (I + y0) * exp(-lambda)
    std::vector<double> mug(g.s.size());
    for (std::size_t i = 0; i < g.s.size(); ++i) mug[i] = std::exp(lambda[i]) * gv[i];
    const auto I = cumulative_trapezoid(mug, g.h);

    std::vector<double> y(g.s.size());
    for (std::size_t i = 0; i < g.s.size(); ++i)
        y[i] = (I[i] + problem.y0) * std::exp(-lambda[i]);

    auto dy = central_difference(y, g.h);
    std::vector<double> residual(g.s.size());
    for (std::size_t i = 0; i < g.s.size(); ++i)
        residual[i] = dy[i] + pv[i] * y[i] - gv[i];

    return assemble_trace(g.s, y, residual, problem.time, "linear-integrating-factor", g.h,
                          grid.samples);
}

namespace {

bool is_integer(double x) { return std::abs(x - std::round(x)) < 1e-9; }

double real_pow(double base, double exponent, double at_s) {
    if (base < 0.0) {
        if (!is_integer(exponent))
            throw DomainBreakError("real root of a negative quantity required at s = " +
                                       std::to_string(at_s),
                                   at_s);
        // snap so pow sees an exact integer (non-integer exponents of a
        // negative base evaluate to NaN)
        return std::pow(base, std::round(exponent));
    }
    return std::pow(base, exponent);
}

} // namespace

BernoulliResult solve_bernoulli(const BernoulliFODEProblem& problem, const SolveGrid& grid) {
    BernoulliResult result;
    result.zero_solution_exists = problem.beta > 0.0;

    if (problem.beta == 0.0) {
        // reduces to the linear equation with g = r
        result.trace = solve_linear({problem.q, problem.r, problem.y0, problem.s0, problem.time},
                                    grid);
        return result;
    }
    if (problem.beta == 1.0) {
        // D y + (q - r) y = 0
        auto q = problem.q;
        auto r = problem.r;
        auto p = [q, r](double s) { return q(s) - r(s); };
        result.trace = solve_linear(
            {p, [](double) { return 0.0; }, problem.y0, problem.s0, problem.time}, grid);
        return result;
    }

    if (problem.y0 == 0.0) {
        if (problem.beta < 1.0)
            throw std::invalid_argument("y0 = 0 is an invalid initial condition for beta < 1");
        // y == 0 is the solution through this initial condition.
        Grid g = make_grid(problem.s0, grid.s_end, grid.step);
        std::vector<double> zero(g.s.size(), 0.0);
        result.trace = assemble_trace(g.s, zero, zero, problem.time, "bernoulli-substitution",
                                      g.h, grid.samples);
        return result;
    }

    const double one_minus_beta = 1.0 - problem.beta;
    const double z0 = real_pow(problem.y0, one_minus_beta, problem.s0);

    auto q = problem.q;
    auto r = problem.r;
    LinearFODEProblem zp;
    zp.p = [q, one_minus_beta](double s) { return one_minus_beta * q(s); };
    zp.g = [r, one_minus_beta](double s) { return one_minus_beta * r(s); };
    zp.y0 = z0;
    zp.s0 = problem.s0;
    zp.time = problem.time;

    SolveGrid zgrid = grid;
    zgrid.samples = 0;  // substitute on the full grid, then subsample
    SolutionTrace ztrace = solve_linear(zp, zgrid);

    const double back_exp = 1.0 / one_minus_beta;
    std::vector<double> s(ztrace.samples.size()), y(ztrace.samples.size());
    for (std::size_t i = 0; i < ztrace.samples.size(); ++i) {
        s[i] = ztrace.samples[i].s;
        y[i] = real_pow(ztrace.samples[i].y, back_exp, s[i]);
    }
    // even-root branch: follow the sign of the initial value
    if (problem.y0 < 0.0 && y.front() > 0.0)
        for (double& v : y) v = -v;

    const double h = ztrace.step;
    auto dy = central_difference(y, h);
    std::vector<double> residual(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        residual[i] =
            dy[i] + problem.q(s[i]) * y[i] - problem.r(s[i]) * real_pow(y[i], problem.beta, s[i]);
    }

    result.trace =
        assemble_trace(s, y, residual, problem.time, "bernoulli-substitution", h, grid.samples);
    return result;
}

namespace {

// Adaptive Simpson quadrature; fine for the smooth user coefficients the
// separable pipeline integrates.
double simpson_recurse(const std::function<double(double)>& f, double a, double b, double fa,
                       double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return simpson_recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol) {
    if (a == b) return 0.0;
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    if (!std::isfinite(fa) || !std::isfinite(fb) || !std::isfinite(fm))
        throw NumericError("non-finite integrand in quadrature");
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_recurse(f, a, b, fa, fm, fb, whole, tol, 40);
}

// Brent-style bracketed root finder (bisection/secant hybrid).
double brent_root(const std::function<double(double)>& f, double a, double b, double fa,
                  double fb, double tol) {
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    double c = a, fc = fa, d = b - a, e = d;
    while (true) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol1 = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) + 0.5 * tol;
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0.0) return b;
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            double p, q;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                const double qq = fa / fc, rr = fb / fc;
                p = s * (2.0 * xm * qq * (qq - rr) - (b - a) * (rr - 1.0));
                q = (qq - 1.0) * (rr - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q; else p = -p;
            if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = xm; e = d;
            }
        } else {
            d = xm; e = d;
        }
        a = b; fa = fb;
        b += std::abs(d) > tol1 ? d : std::copysign(tol1, xm);
        fb = f(b);
    }
}

} // namespace

SeparableSolution solve_separable(const SeparableFODEProblem& problem, const SolveGrid& grid) {
    if (!problem.M || !problem.N) throw std::invalid_argument("M and N are required");
    const double n0 = problem.N(problem.y0);
    if (!std::isfinite(n0) || n0 == 0.0)
        throw std::invalid_argument("N(y0) must be finite and nonzero");

    constexpr double kQuadTol = 1e-13;
    Grid g = make_grid(problem.s0, grid.s_end, grid.step);

    SeparableSolution out;
    const auto M = problem.M;
    const auto N = problem.N;
    const double s0 = problem.s0, y0 = problem.y0;
    out.H1 = [M, s0](double s) { return adaptive_simpson(M, s0, s, kQuadTol); };
    out.H2 = [N, y0](double y) { return adaptive_simpson(N, y0, y, kQuadTol); };
    out.c = 0.0;  // both primitives anchored at the initial condition

    std::vector<double> s_nodes{g.s.front()};
    std::vector<double> y_nodes{problem.y0};

    double H1_acc = 0.0;      // H1 at the current node, accumulated stepwise
    double y_prev = problem.y0;
    double H2_prev = 0.0;     // H2 at y_prev
    const double y_scale = std::max(1.0, std::abs(problem.y0));

    for (std::size_t i = 1; i < g.s.size(); ++i) {
        H1_acc += adaptive_simpson(problem.M, g.s[i - 1], g.s[i], kQuadTol);
        const double target = -H1_acc;  // want H2(y) = target

        // phi(y) = H2(y) - target, evaluated incrementally from y_prev
        const auto phi = [&](double y) {
            return H2_prev + adaptive_simpson(problem.N, y_prev, y, kQuadTol) - target;
        };

        const double n_prev = problem.N(y_prev);
        if (!std::isfinite(n_prev) || n_prev == 0.0) {
            out.completed = false;
            out.fold_s = g.s[i - 1];
            break;
        }

        double fa = phi(y_prev);
        // Newton-style first guess for the bracket width.
        double step_guess = std::abs(fa / n_prev);
        if (!(step_guess > 0.0) || !std::isfinite(step_guess))
            step_guess = 1e-8 * y_scale;
        step_guess = std::max(step_guess, 1e-12 * y_scale);

        const double dir = fa == 0.0 ? 1.0 : -std::copysign(1.0, fa) * std::copysign(1.0, n_prev);
        double a = y_prev, b = y_prev;
        double fb = fa;
        bool bracketed = fa == 0.0;
        if (!bracketed) {
            double w = step_guess;
            for (int k = 0; k < 60; ++k) {
                b = a + dir * w;
                fb = phi(b);
                if (!std::isfinite(fb)) break;
                if ((fa > 0.0) != (fb > 0.0) || fb == 0.0) {
                    bracketed = true;
                    break;
                }
                // If N changed sign the solution branch folded here.
                const double nb = problem.N(b);
                if (!std::isfinite(nb) || (nb > 0.0) != (n_prev > 0.0)) break;
                w *= 2.0;
            }
        }
        if (!bracketed) {
            out.completed = false;
            out.fold_s = g.s[i - 1];
            break;
        }

        const double y_next =
            fa == 0.0 ? y_prev
                      : brent_root(phi, std::min(a, b), std::max(a, b),
                                   a < b ? fa : fb, a < b ? fb : fa, 1e-14 * y_scale);

        H2_prev += adaptive_simpson(problem.N, y_prev, y_next, kQuadTol);
        y_prev = y_next;
        s_nodes.push_back(g.s[i]);
        y_nodes.push_back(y_next);
    }

    auto dy = central_difference(y_nodes, g.h);
    std::vector<double> residual(y_nodes.size(), 0.0);
    for (std::size_t i = 0; i < y_nodes.size(); ++i) {
        const double n = problem.N(y_nodes[i]);
        if (n != 0.0) residual[i] = dy[i] + problem.M(s_nodes[i]) / n;
    }

    out.trace = assemble_trace(s_nodes, y_nodes, residual, problem.time, "separable-implicit",
                               g.h, grid.samples);
    return out;
}

SolutionTrace solve_numeric_conjugate(const std::function<double(double, double)>& rhs, double y0,
                                      Interval s_range, double step, const TimeMap& time,
                                      int samples) {
    if (!rhs) throw std::invalid_argument("rhs is required");
    Grid g = make_grid(s_range.lo, s_range.hi, step);

    const auto f = [&rhs](double s, double y) {
        const double v = rhs(s, y);
        if (!std::isfinite(v)) throw NumericError("non-finite rhs at s = " + std::to_string(s));
        return v;
    };

    std::vector<double> y(g.s.size());
    y[0] = y0;
    const double h = g.h;
    for (std::size_t i = 1; i < g.s.size(); ++i) {
        const double s = g.s[i - 1];
        const double yi = y[i - 1];
        const double k1 = f(s, yi);
        const double k2 = f(s + 0.5 * h, yi + 0.5 * h * k1);
        const double k3 = f(s + 0.5 * h, yi + 0.5 * h * k2);
        const double k4 = f(s + h, yi + h * k3);
        y[i] = yi + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }

    auto dy = central_difference(y, h);
    std::vector<double> residual(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) residual[i] = dy[i] - f(g.s[i], y[i]);

    return assemble_trace(g.s, y, residual, time, "rk4-conjugate", h, samples);
}

} // namespace fcalc
