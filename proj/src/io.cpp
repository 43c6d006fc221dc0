#include "fcalc/io.hpp"

#include <cstdio>
#include <fstream>
#include <memory>

#include <json.hpp>

#include "fcalc/expr.hpp"
#include "fcalc/mass.hpp"

namespace fcalc::io {

using nlohmann::json;

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string cover_csv(const IntervalCover& cover) {
    std::string out = "lo,hi\n";
    for (const auto& p : cover.pieces()) {
        out += format_number(p.lo);
        out += ',';
        out += format_number(p.hi());
        out += '\n';
    }
    return out;
}

std::string staircase_csv(const StaircaseTable& table) {
    std::string out = "x,S\n";
    const auto& xs = table.breakpoints();
    const auto& ss = table.values();
    for (std::size_t i = 0; i < xs.size(); ++i) {
        out += format_number(xs[i]);
        out += ',';
        out += format_number(ss[i]);
        out += '\n';
    }
    return out;
}

std::string curve_csv(const CurveApprox& curve) {
    std::string out = "u";
    for (int d = 1; d <= curve.dim(); ++d) out += ",x" + std::to_string(d);
    out += ",J\n";
    const auto& J = curve.rise();
    for (std::size_t i = 0; i < curve.vertex_count(); ++i) {
        out += format_number(curve.params()[i]);
        for (const double c : curve.vertex(i)) {
            out += ',';
            out += format_number(c);
        }
        out += ',';
        out += format_number(J[i]);
        out += '\n';
    }
    return out;
}

std::string trace_csv(const SolutionTrace& trace) {
    std::string out = "t,s,y,residual\n";
    for (const auto& r : trace.samples) {
        out += format_number(r.t);
        out += ',';
        out += format_number(r.s);
        out += ',';
        out += format_number(r.y);
        out += ',';
        out += format_number(r.residual);
        out += '\n';
    }
    return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path.string());
    f << contents;
    if (!f) throw std::runtime_error("write failed: " + path.string());
}

// --- set descriptor -------------------------------------------------------

std::string SetDescriptor::to_json() const {
    json j;
    j["generator"] = {{"type", "cantor"}, {"xi", xi}, {"bounds", {bounds.lo, bounds.hi}}};
    j["depth"] = depth;
    if (alpha) j["alpha"] = *alpha;
    j["origin"] = origin;
    return j.dump(2);
}

SetDescriptor SetDescriptor::from_json(const std::string& text) {
    const json j = json::parse(text);
    SetDescriptor d;
    const auto& gen = j.at("generator");
    if (gen.at("type").get<std::string>() != "cantor")
        throw std::invalid_argument("unknown generator type in set descriptor");
    d.xi = gen.at("xi").get<double>();
    d.bounds = {gen.at("bounds").at(0).get<double>(), gen.at("bounds").at(1).get<double>()};
    d.depth = j.at("depth").get<int>();
    if (j.contains("alpha") && !j.at("alpha").is_null()) d.alpha = j.at("alpha").get<double>();
    d.origin = j.value("origin", d.bounds.lo);
    return d;
}

IntervalCover SetDescriptor::build_cover() const { return build_cantor_cover(generator(), depth); }

double SetDescriptor::resolved_alpha() const {
    if (alpha) return *alpha;
    return gamma_dimension(generator(), bounds, 1e-3);
}

StaircaseTable SetDescriptor::build_table() const {
    return build_staircase(build_cover(), AlphaOrder::for_set(resolved_alpha()), origin);
}

// --- curve descriptor -----------------------------------------------------

std::string CurveDescriptor::to_json() const {
    json j;
    j["variant"] = variant;
    j["depth"] = depth;
    if (alpha) j["alpha"] = *alpha;
    j["origin_param"] = origin_param;
    return j.dump(2);
}

CurveDescriptor CurveDescriptor::from_json(const std::string& text) {
    const json j = json::parse(text);
    CurveDescriptor d;
    d.variant = j.at("variant").get<std::string>();
    d.depth = j.at("depth").get<int>();
    if (j.contains("alpha") && !j.at("alpha").is_null()) d.alpha = j.at("alpha").get<double>();
    d.origin_param = j.value("origin_param", 0.0);
    return d;
}

double CurveDescriptor::resolved_alpha() const {
    if (alpha) return *alpha;
    const KochVariant v = koch_variant_from_string(variant);
    if (v == KochVariant::Line) return 1.0;
    return curve_gamma_dimension(v, 1e-3);
}

CurveApprox CurveDescriptor::build_curve_with_rise() const {
    const CurveApprox bare = build_koch(depth, koch_variant_from_string(variant));
    return build_rise(bare, AlphaOrder::for_curve(resolved_alpha(), bare.dim()), origin_param);
}

// --- problem descriptor ---------------------------------------------------

std::string ProblemDescriptor::to_json() const {
    json j;
    j["type"] = type;
    if (type == "linear") {
        j["p"] = p;
        j["g"] = g;
    } else if (type == "bernoulli") {
        j["q"] = q;
        j["r"] = r;
        j["beta"] = beta;
    } else if (type == "separable") {
        j["M"] = M;
        j["N"] = N;
    } else if (type == "numeric") {
        j["rhs"] = rhs;
    } else {
        throw std::invalid_argument("unknown problem type: " + type);
    }
    j["y0"] = y0;
    j["s0"] = s0;
    j["alpha"] = alpha;
    j["staircase_mode"] = staircase_mode;
    if (set) j["set"] = json::parse(set->to_json());
    j["grid"] = {{"s_end", grid.s_end}, {"step", grid.step}, {"samples", grid.samples}};
    return j.dump(2);
}

ProblemDescriptor ProblemDescriptor::from_json(const std::string& text) {
    const json j = json::parse(text);
    ProblemDescriptor d;
    d.type = j.at("type").get<std::string>();
    d.p = j.value("p", "");
    d.g = j.value("g", "");
    d.q = j.value("q", "");
    d.r = j.value("r", "");
    d.beta = j.value("beta", 2.0);
    d.M = j.value("M", "");
    d.N = j.value("N", "");
    d.rhs = j.value("rhs", "");
    d.y0 = j.at("y0").get<double>();
    d.s0 = j.value("s0", 0.0);
    d.alpha = j.value("alpha", 1.0);
    d.staircase_mode = j.value("staircase_mode", "surrogate");
    if (j.contains("set")) d.set = SetDescriptor::from_json(j.at("set").dump());
    if (j.contains("grid")) {
        const auto& g = j.at("grid");
        d.grid.s_end = g.at("s_end").get<double>();
        d.grid.step = g.value("step", 1e-4);
        d.grid.samples = g.value("samples", 1001);
    }
    return d;
}

// --- model parameter files --------------------------------------------------

namespace {

void require_model_tag(const json& j, const char* tag) {
    if (j.at("model").get<std::string>() != tag)
        throw std::invalid_argument(std::string("expected a '") + tag + "' parameter file");
}

} // namespace

std::string interest_params_json(const InterestParams& params) {
    const json j{{"model", "interest"}, {"p0", params.p0},       {"r", params.r},
                 {"k", params.k},       {"alpha", params.alpha}};
    return j.dump(2);
}

InterestParams interest_params_from_json(const std::string& text) {
    const json j = json::parse(text);
    require_model_tag(j, "interest");
    return {j.at("p0").get<double>(), j.at("r").get<double>(), j.at("k").get<double>(),
            j.value("alpha", 1.0)};
}

std::string escape_params_json(const EscapeParams& params) {
    const json j{{"model", "escape"}, {"g", params.g},          {"R", params.R},
                 {"v0", params.v0},   {"alpha", params.alpha}};
    return j.dump(2);
}

EscapeParams escape_params_from_json(const std::string& text) {
    const json j = json::parse(text);
    require_model_tag(j, "escape");
    return {j.at("g").get<double>(), j.at("R").get<double>(), j.value("v0", 0.0),
            j.value("alpha", 1.0)};
}

std::string cooling_params_json(const CoolingParams& params) {
    const json j{{"model", "cooling"}, {"Ts", params.Ts}, {"T0", params.T0},
                 {"T1", params.T1},    {"t1", params.t1}, {"Td", params.Td},
                 {"alpha", params.alpha}};
    return j.dump(2);
}

CoolingParams cooling_params_from_json(const std::string& text) {
    const json j = json::parse(text);
    require_model_tag(j, "cooling");
    return {j.at("Ts").get<double>(), j.at("T0").get<double>(), j.at("T1").get<double>(),
            j.value("t1", 1.0),       j.value("Td", 37.0),      j.value("alpha", 1.0)};
}

TimeMap ProblemDescriptor::time_map() const {
    if (staircase_mode == "surrogate") return TimeMap::surrogate(alpha);
    if (staircase_mode == "exact") {
        if (!set)
            throw std::invalid_argument("exact staircase mode needs a 'set' descriptor");
        return TimeMap::exact(std::make_shared<StaircaseTable>(set->build_table()));
    }
    throw std::invalid_argument("staircase_mode must be 'surrogate' or 'exact'");
}

SolutionTrace ProblemDescriptor::run() const {
    const TimeMap time = time_map();
    if (type == "linear") {
        LinearFODEProblem problem{Expr::parse(p).as_function_of_s(),
                                  Expr::parse(g).as_function_of_s(), y0, s0, time};
        return solve_linear(problem, grid);
    }
    if (type == "bernoulli") {
        BernoulliFODEProblem problem{Expr::parse(q).as_function_of_s(),
                                     Expr::parse(r).as_function_of_s(),
                                     beta, y0, s0, time};
        return solve_bernoulli(problem, grid).trace;
    }
    if (type == "separable") {
        SeparableFODEProblem problem{Expr::parse(M).as_function_of_s(),
                                     Expr::parse(N).as_function_of_y(), y0, s0, time};
        return solve_separable(problem, grid).trace;
    }
    if (type == "numeric") {
        return solve_numeric_conjugate(Expr::parse(rhs).as_function_of_sy(), y0,
                                       {s0, grid.s_end}, grid.step, time, grid.samples);
    }
    throw std::invalid_argument("unknown problem type: " + type);
}

} // namespace fcalc::io
