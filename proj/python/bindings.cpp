#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>

#include "fcalc/calculus.hpp"
#include "fcalc/cantor.hpp"
#include "fcalc/curves.hpp"
#include "fcalc/fode.hpp"
#include "fcalc/mass.hpp"
#include "fcalc/models.hpp"
#include "fcalc/staircase.hpp"

namespace py = pybind11;
using namespace fcalc;

namespace {

AlphaOrder alpha_for_set(double a) { return AlphaOrder::for_set(a); }

// Solver wrappers: python passes plain callables and an alpha (surrogate
// t = s^(1/alpha) map); traces come back as sample tuples.
py::list trace_to_list(const SolutionTrace& trace) {
    py::list rows;
    for (const auto& r : trace.samples) rows.append(py::make_tuple(r.t, r.s, r.y, r.residual));
    return rows;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "numerical fractal calculus core";
    m.attr("__version__") = "0.1.0";

    py::class_<AlphaOrder>(m, "AlphaOrder")
        .def_static("for_set", &AlphaOrder::for_set, py::arg("alpha"))
        .def_static("for_curve", &AlphaOrder::for_curve, py::arg("alpha"),
                    py::arg("ambient_dim") = 2)
        .def_property_readonly("value", &AlphaOrder::value);

    py::class_<IntervalCover, std::shared_ptr<IntervalCover>>(m, "IntervalCover")
        .def_property_readonly("depth", &IntervalCover::depth)
        .def_property_readonly("size", &IntervalCover::size)
        .def_property_readonly("native_width", &IntervalCover::native_width)
        .def("intervals",
             [](const IntervalCover& c) {
                 py::list out;
                 for (const auto& p : c.pieces()) out.append(py::make_tuple(p.lo, p.hi()));
                 return out;
             })
        .def("contains", &IntervalCover::contains, py::arg("x"));

    m.def(
        "build_cantor_cover",
        [](double xi, int depth, double lo, double hi) {
            return std::make_shared<IntervalCover>(build_cantor_cover(xi, depth, {lo, hi}));
        },
        py::arg("removal_fraction"), py::arg("depth"), py::arg("lo") = 0.0, py::arg("hi") = 1.0);

    m.def(
        "flag",
        [](const IntervalCover& cover, double lo, double hi) {
            return cover.flag(Interval{lo, hi});
        },
        py::arg("cover"), py::arg("lo"), py::arg("hi"));

    m.def(
        "coarse_mass",
        [](const IntervalCover& cover, double alpha, double lo, double hi, double delta) {
            return coarse_mass(cover, alpha_for_set(alpha), {lo, hi}, delta);
        },
        py::arg("cover"), py::arg("alpha"), py::arg("lo"), py::arg("hi"), py::arg("delta"));

    py::class_<MassEstimate>(m, "MassEstimate")
        .def_readonly("alpha", &MassEstimate::alpha)
        .def_readonly("delta", &MassEstimate::delta)
        .def_readonly("value", &MassEstimate::value)
        .def_readonly("depth", &MassEstimate::depth)
        .def_readonly("converged", &MassEstimate::converged)
        .def_readonly("diverged", &MassEstimate::diverged);

    m.def(
        "mass_function",
        [](double xi, double alpha, double lo, double hi, double tol, int max_depth) {
            MassFunctionOptions opt;
            opt.max_depth = max_depth;
            return mass_function(CantorGenerator{xi, {lo, hi}}, alpha_for_set(alpha), {lo, hi},
                                 tol, opt);
        },
        py::arg("removal_fraction"), py::arg("alpha"), py::arg("lo") = 0.0, py::arg("hi") = 1.0,
        py::arg("tol") = 1e-6, py::arg("max_depth") = 40);

    m.def(
        "gamma_dimension",
        [](double xi, double lo, double hi, double tol) {
            return gamma_dimension(CantorGenerator{xi, {lo, hi}}, {lo, hi}, tol);
        },
        py::arg("removal_fraction"), py::arg("lo") = 0.0, py::arg("hi") = 1.0,
        py::arg("tol") = 1e-3);

    py::class_<StaircaseTable, std::shared_ptr<StaircaseTable>>(m, "StaircaseTable")
        .def_property_readonly("breakpoints", &StaircaseTable::breakpoints)
        .def_property_readonly("values", &StaircaseTable::values)
        .def_property_readonly("origin", &StaircaseTable::origin)
        .def_property_readonly("alpha", &StaircaseTable::alpha);

    m.def(
        "build_staircase",
        [](const IntervalCover& cover, double alpha, double origin, int samples) {
            return std::make_shared<StaircaseTable>(
                build_staircase(cover, alpha_for_set(alpha), origin, samples));
        },
        py::arg("cover"), py::arg("alpha"), py::arg("origin") = 0.0, py::arg("samples") = 2);

    m.def("staircase_eval", &staircase_eval, py::arg("table"), py::arg("x"));
    m.def("staircase_invert", &staircase_invert, py::arg("table"), py::arg("s"));

    py::class_<CurveApprox, std::shared_ptr<CurveApprox>>(m, "CurveApprox")
        .def_property_readonly("depth", &CurveApprox::depth)
        .def_property_readonly("dim", &CurveApprox::dim)
        .def_property_readonly("variant", &CurveApprox::variant)
        .def_property_readonly("vertex_count", &CurveApprox::vertex_count)
        .def_property_readonly("params", &CurveApprox::params)
        .def("length", &CurveApprox::length)
        .def("point_at", &CurveApprox::point_at, py::arg("u"))
        .def("rise_at", &CurveApprox::rise_at, py::arg("u"))
        .def("has_rise", &CurveApprox::has_rise);

    m.def(
        "build_koch",
        [](int depth, const std::string& variant) {
            return std::make_shared<CurveApprox>(
                build_koch(depth, koch_variant_from_string(variant)));
        },
        py::arg("depth"), py::arg("variant") = "koch");

    m.def(
        "curve_mass",
        [](const CurveApprox& curve, double alpha, double t_lo, double t_hi) {
            return curve_mass(curve, AlphaOrder::for_curve(alpha, curve.dim()),
                              CurveSegment{t_lo, t_hi});
        },
        py::arg("curve"), py::arg("alpha"), py::arg("t_lo") = 0.0, py::arg("t_hi") = 1.0);

    m.def(
        "curve_gamma_dimension",
        [](const std::string& variant, double tol) {
            return curve_gamma_dimension(koch_variant_from_string(variant), tol);
        },
        py::arg("variant") = "koch", py::arg("tol") = 1e-3);

    m.def(
        "build_rise",
        [](const CurveApprox& curve, double alpha, double origin_param) {
            return std::make_shared<CurveApprox>(build_rise(
                curve, AlphaOrder::for_curve(alpha, curve.dim()), origin_param));
        },
        py::arg("curve"), py::arg("alpha"), py::arg("origin_param") = 0.0);

    m.def(
        "f_alpha_derivative",
        [](std::shared_ptr<const IntervalCover> cover,
           std::shared_ptr<const StaircaseTable> table, std::function<double(double)> f,
           double x, double h) {
            return f_alpha_derivative(
                FractalFunction::on_set(std::move(cover), std::move(table), std::move(f)), x, h);
        },
        py::arg("cover"), py::arg("staircase"), py::arg("f"), py::arg("x"), py::arg("h") = 0.0);

    py::class_<IntegralResult>(m, "IntegralResult")
        .def_readonly("value", &IntegralResult::value)
        .def_readonly("lower", &IntegralResult::lower)
        .def_readonly("upper", &IntegralResult::upper)
        .def_property_readonly("gap", &IntegralResult::gap);

    m.def(
        "f_alpha_integral",
        [](std::shared_ptr<const StaircaseTable> table, std::function<double(double)> f,
           double a, double b) {
            return f_alpha_integral(
                FractalFunction::on_staircase(std::move(table), std::move(f)), a, b);
        },
        py::arg("staircase"), py::arg("f"), py::arg("a"), py::arg("b"));

    py::class_<TraceSample>(m, "TraceSample")
        .def_readonly("t", &TraceSample::t)
        .def_readonly("s", &TraceSample::s)
        .def_readonly("y", &TraceSample::y)
        .def_readonly("residual", &TraceSample::residual);

    py::class_<SolutionTrace>(m, "SolutionTrace")
        .def_readonly("solver", &SolutionTrace::solver)
        .def_readonly("step", &SolutionTrace::step)
        .def_readonly("error_estimate", &SolutionTrace::error_estimate)
        .def("samples", &trace_to_list)
        .def("y_at_s", &SolutionTrace::y_at_s, py::arg("s"));

    m.def(
        "solve_linear",
        [](std::function<double(double)> p, std::function<double(double)> g, double y0,
           double s0, double s_end, double step, double alpha, int samples) {
            LinearFODEProblem problem{std::move(p), std::move(g), y0, s0,
                                      TimeMap::surrogate(alpha)};
            return solve_linear(problem, {s_end, step, samples});
        },
        py::arg("p"), py::arg("g"), py::arg("y0"), py::arg("s0") = 0.0, py::arg("s_end") = 1.0,
        py::arg("step") = 1e-4, py::arg("alpha") = 1.0, py::arg("samples") = 1001);

    m.def(
        "solve_bernoulli",
        [](std::function<double(double)> q, std::function<double(double)> r, double beta,
           double y0, double s0, double s_end, double step, double alpha, int samples) {
            BernoulliFODEProblem problem{std::move(q), std::move(r), beta, y0, s0,
                                         TimeMap::surrogate(alpha)};
            return solve_bernoulli(problem, {s_end, step, samples}).trace;
        },
        py::arg("q"), py::arg("r"), py::arg("beta"), py::arg("y0"), py::arg("s0") = 0.0,
        py::arg("s_end") = 1.0, py::arg("step") = 1e-4, py::arg("alpha") = 1.0,
        py::arg("samples") = 1001);

    m.def(
        "solve_separable",
        [](std::function<double(double)> M, std::function<double(double)> N, double y0,
           double s0, double s_end, double step, double alpha, int samples) {
            SeparableFODEProblem problem{std::move(M), std::move(N), y0, s0,
                                         TimeMap::surrogate(alpha)};
            return solve_separable(problem, {s_end, step, samples}).trace;
        },
        py::arg("M"), py::arg("N"), py::arg("y0"), py::arg("s0") = 0.0, py::arg("s_end") = 1.0,
        py::arg("step") = 1e-3, py::arg("alpha") = 1.0, py::arg("samples") = 1001);

    m.def(
        "solve_numeric",
        [](std::function<double(double, double)> rhs, double y0, double s0, double s_end,
           double step, double alpha, int samples) {
            return solve_numeric_conjugate(std::move(rhs), y0, {s0, s_end}, step,
                                           TimeMap::surrogate(alpha), samples);
        },
        py::arg("rhs"), py::arg("y0"), py::arg("s0") = 0.0, py::arg("s_end") = 1.0,
        py::arg("step") = 1e-3, py::arg("alpha") = 1.0, py::arg("samples") = 1001);

    py::class_<InterestParams>(m, "InterestParams")
        .def(py::init([](double p0, double r, double k, double alpha) {
                 return InterestParams{p0, r, k, alpha};
             }),
             py::arg("p0"), py::arg("r"), py::arg("k"), py::arg("alpha") = 1.0)
        .def_readwrite("p0", &InterestParams::p0)
        .def_readwrite("r", &InterestParams::r)
        .def_readwrite("k", &InterestParams::k)
        .def_readwrite("alpha", &InterestParams::alpha);

    m.def(
        "interest_balance",
        [](const InterestParams& params, double t) { return interest_balance(params, t); },
        py::arg("params"), py::arg("t"));

    py::class_<EscapeParams>(m, "EscapeParams")
        .def(py::init([](double g, double R, double v0, double alpha) {
                 return EscapeParams{g, R, v0, alpha};
             }),
             py::arg("g") = 9.8, py::arg("R") = 6.37e6, py::arg("v0") = 0.0,
             py::arg("alpha") = 1.0)
        .def_readwrite("g", &EscapeParams::g)
        .def_readwrite("R", &EscapeParams::R)
        .def_readwrite("v0", &EscapeParams::v0)
        .def_readwrite("alpha", &EscapeParams::alpha);

    py::class_<EscapeProfile>(m, "EscapeProfile")
        .def_readonly("x_max", &EscapeProfile::x_max)
        .def_readonly("v0_required", &EscapeProfile::v0_required)
        .def_readonly("v_escape", &EscapeProfile::v_escape)
        .def("unbounded", &EscapeProfile::unbounded);

    m.def(
        "escape_profile",
        [](const EscapeParams& params) { return escape_profile(params); }, py::arg("params"));

    py::class_<CoolingParams>(m, "CoolingParams")
        .def(py::init([](double Ts, double T0, double T1, double t1, double Td, double alpha) {
                 return CoolingParams{Ts, T0, T1, t1, Td, alpha};
             }),
             py::arg("Ts") = 20.0, py::arg("T0") = 30.0, py::arg("T1") = 25.0,
             py::arg("t1") = 1.0, py::arg("Td") = 37.0, py::arg("alpha") = 1.0)
        .def_readwrite("Ts", &CoolingParams::Ts)
        .def_readwrite("T0", &CoolingParams::T0)
        .def_readwrite("T1", &CoolingParams::T1)
        .def_readwrite("t1", &CoolingParams::t1)
        .def_readwrite("Td", &CoolingParams::Td)
        .def_readwrite("alpha", &CoolingParams::alpha);

    m.def(
        "cooling_temperature",
        [](const CoolingParams& params, double k, double t) {
            return cooling_temperature(params, k, t);
        },
        py::arg("params"), py::arg("k"), py::arg("t"));
    m.def(
        "estimate_k", [](const CoolingParams& params) { return estimate_k(params); },
        py::arg("params"));
    m.def(
        "estimate_time_of_death",
        [](const CoolingParams& params) { return estimate_time_of_death(params); },
        py::arg("params"));
}
