#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fcalc/errors.hpp"
#include "fcalc/staircase.hpp"

namespace fcalc {

/// Map between the axis/parameter coordinate t and the staircase coordinate
/// s. Surrogate mode uses the power law s = t^alpha (the proportionality the
/// worked examples print); exact mode inverts a staircase table.
class TimeMap {
  public:
    static TimeMap surrogate(double alpha);
    static TimeMap exact(std::shared_ptr<const StaircaseTable> table);

    double t_of_s(double s) const;
    double s_of_t(double t) const;
    double alpha() const { return alpha_; }
    bool is_exact() const { return table_ != nullptr; }
    const StaircaseTable* table() const { return table_.get(); }

  private:
    TimeMap() = default;
    double alpha_ = 1.0;
    std::shared_ptr<const StaircaseTable> table_;
};

/// One row of a sampled solution.
struct TraceSample {
    double t = 0.0;
    double s = 0.0;
    double y = 0.0;
    double residual = 0.0;
};

struct SolutionTrace {
    std::vector<TraceSample> samples;
    std::string solver;
    double step = 0.0;
    double error_estimate = 0.0;  // max |residual| over the solve grid

    double max_residual() const;
    /// y at the given staircase coordinate, interpolated between samples.
    double y_at_s(double s) const;
};

/// Grid controls shared by the solvers: solve on [s0, s_end] with the given
/// step; the trace keeps about `samples` rows (0 keeps every grid node).
struct SolveGrid {
    double s_end = 1.0;
    double step = 1e-4;
    int samples = 1001;
};

/// D y + p(s) y = g(s), y(s0) = y0, expressed in the staircase coordinate.
struct LinearFODEProblem {
    std::function<double(double)> p;
    std::function<double(double)> g;
    double y0 = 0.0;
    double s0 = 0.0;
    TimeMap time = TimeMap::surrogate(1.0);
};

/// D y + q(s) y = r(s) y^beta.
struct BernoulliFODEProblem {
    std::function<double(double)> q;
    std::function<double(double)> r;
    double beta = 2.0;
    double y0 = 1.0;
    double s0 = 0.0;
    TimeMap time = TimeMap::surrogate(1.0);
};

/// M(s) ds + N(y) dy = 0, y(s0) = y0 (M = -f for D y = f).
struct SeparableFODEProblem {
    std::function<double(double)> M;
    std::function<double(double)> N;
    double y0 = 0.0;
    double s0 = 0.0;
    TimeMap time = TimeMap::surrogate(1.0);
};

/// Cumulative integrating factor mu(s) = exp(int_{s0}^{s} p), tabulated by
/// composite trapezoid on a uniform grid and interpolated linearly in the
/// exponent. mu(s0) = 1.
class IntegratingFactor {
  public:
    IntegratingFactor(std::vector<double> grid, std::vector<double> lambda);

    double lambda(double s) const;  // the primitive of p, anchored at s0
    double mu(double s) const { return std::exp(lambda(s)); }
    double operator()(double s) const { return mu(s); }
    const std::vector<double>& grid() const { return grid_; }

  private:
    std::vector<double> grid_;
    std::vector<double> lambda_;
};

IntegratingFactor integrating_factor(const std::function<double(double)>& p, Interval s_range,
                                     double quadrature_step);

/// Integrating-factor pipeline: y = (int mu g + y0) / mu with the primitive
/// anchored at s0, so y(s0) = y0 exactly.
SolutionTrace solve_linear(const LinearFODEProblem& problem, const SolveGrid& grid);

struct BernoulliResult {
    SolutionTrace trace;
    bool zero_solution_exists = false;  // beta > 0 admits y == 0 as well
};

/// Bernoulli substitution z = y^(1-beta); beta in {0, 1} delegates to the
/// linear path.
BernoulliResult solve_bernoulli(const BernoulliFODEProblem& problem, const SolveGrid& grid);

struct SeparableSolution {
    std::function<double(double)> H1;  // primitive of M, anchored at s0
    std::function<double(double)> H2;  // primitive of N, anchored at y0
    double c = 0.0;                    // H1(s0) + H2(y0)
    SolutionTrace trace;
    bool completed = true;
    std::optional<double> fold_s;  // last valid s when the branch folded
};

/// Implicit solution H1(s) + H2(y) = c, traced by continuity-seeded
/// bracketed root-finding from the initial condition.
SeparableSolution solve_separable(const SeparableFODEProblem& problem, const SolveGrid& grid);

/// Generic conjugacy fallback: D y = f(s, y) integrated as an ordinary ODE
/// in s with the classical fixed-step RK4 scheme.
SolutionTrace solve_numeric_conjugate(const std::function<double(double, double)>& rhs, double y0,
                                      Interval s_range, double step,
                                      const TimeMap& time = TimeMap::surrogate(1.0),
                                      int samples = 0);

} // namespace fcalc
