#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "fcalc/cantor.hpp"
#include "fcalc/curves.hpp"
#include "fcalc/fode.hpp"
#include "fcalc/models.hpp"
#include "fcalc/staircase.hpp"

namespace fcalc::io {

/// CSV renderings with fixed column orders:
///   cover:     lo,hi
///   staircase: x,S
///   curve:     u,x1..xn,J
///   trace:     t,s,y,residual
/// Numbers print as %.12g, so identical inputs give identical bytes.
std::string cover_csv(const IntervalCover& cover);
std::string staircase_csv(const StaircaseTable& table);
std::string curve_csv(const CurveApprox& curve);  // needs the rise built
std::string trace_csv(const SolutionTrace& trace);

std::string format_number(double v);

void write_text_file(const std::filesystem::path& path, const std::string& contents);

/// JSON descriptor for a cover + staircase: generator, depth, alpha, origin.
struct SetDescriptor {
    double xi = 1.0 / 3.0;
    Interval bounds{0.0, 1.0};
    int depth = 8;
    std::optional<double> alpha;  // absent: use the estimated dimension
    double origin = 0.0;

    std::string to_json() const;
    static SetDescriptor from_json(const std::string& text);

    CantorGenerator generator() const { return {xi, bounds}; }
    IntervalCover build_cover() const;
    StaircaseTable build_table() const;
    double resolved_alpha() const;
};

/// JSON descriptor for a curve: variant, depth, alpha, origin_param.
struct CurveDescriptor {
    std::string variant = "koch";
    int depth = 4;
    std::optional<double> alpha;  // absent: estimated curve dimension
    double origin_param = 0.0;

    std::string to_json() const;
    static CurveDescriptor from_json(const std::string& text);

    CurveApprox build_curve_with_rise() const;
    double resolved_alpha() const;
};

/// JSON descriptor for the fractal ODE problems. Coefficient functions
/// travel as expression strings in s (J/t aliases) and y.
struct ProblemDescriptor {
    std::string type;  // linear | bernoulli | separable | numeric
    std::string p, g;  // linear
    std::string q, r;  // bernoulli
    double beta = 2.0;
    std::string M, N;  // separable
    std::string rhs;   // numeric: f(s, y)
    double y0 = 0.0;
    double s0 = 0.0;
    double alpha = 1.0;
    std::string staircase_mode = "surrogate";  // or "exact"
    std::optional<SetDescriptor> set;          // staircase source for exact mode
    SolveGrid grid{1.0, 1e-4, 1001};

    std::string to_json() const;
    static ProblemDescriptor from_json(const std::string& text);

    TimeMap time_map() const;
    /// Solve per `type` and return the trace (the Bernoulli flag and the
    /// separable implicit relation are dropped; use the typed solvers for
    /// those).
    SolutionTrace run() const;
};

/// JSON parameter files for the application models, tagged by "model".
std::string interest_params_json(const InterestParams& params);
InterestParams interest_params_from_json(const std::string& text);
std::string escape_params_json(const EscapeParams& params);
EscapeParams escape_params_from_json(const std::string& text);
std::string cooling_params_json(const CoolingParams& params);
CoolingParams cooling_params_from_json(const std::string& text);

} // namespace fcalc::io
