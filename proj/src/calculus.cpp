#include "fcalc/calculus.hpp"

#include <algorithm>
#include <cmath>

namespace fcalc {

FractalFunction FractalFunction::on_set(std::shared_ptr<const IntervalCover> cover,
                                        std::shared_ptr<const StaircaseTable> staircase,
                                        std::function<double(double)> evaluator) {
    if (!cover || !staircase || !evaluator)
        throw std::invalid_argument("cover, staircase and evaluator are all required");
    FractalFunction f;
    f.cover_ = std::move(cover);
    f.staircase_ = std::move(staircase);
    f.evaluator_ = std::move(evaluator);
    return f;
}

FractalFunction FractalFunction::on_staircase(std::shared_ptr<const StaircaseTable> staircase,
                                              std::function<double(double)> evaluator) {
    if (!staircase || !evaluator)
        throw std::invalid_argument("staircase and evaluator are required");
    FractalFunction f;
    f.staircase_ = std::move(staircase);
    f.evaluator_ = std::move(evaluator);
    return f;
}

FractalFunction FractalFunction::on_curve(std::shared_ptr<const CurveApprox> curve,
                                          std::function<double(double)> evaluator) {
    if (!curve || !evaluator) throw std::invalid_argument("curve and evaluator are required");
    if (!curve->has_rise())
        throw std::invalid_argument("curve must carry a rise; call build_rise first");
    auto table = std::make_shared<StaircaseTable>(
        curve->params(), curve->rise(), curve->origin_param(),
        AlphaOrder::for_curve(curve->rise_alpha(), curve->dim()));
    FractalFunction f;
    f.staircase_ = std::move(table);
    f.evaluator_ = std::move(evaluator);
    return f;
}

bool FractalFunction::on_support(double x) const {
    if (x < staircase_->min_x() || x > staircase_->max_x()) return false;
    if (cover_) {
        // widen the probe by a relative 1e-12 so points one rounding step
        // off a piece boundary still count as set points; genuine gap
        // interiors sit far outside this slack
        const double slack =
            1e-12 * std::max(1.0, cover_->bounds().hi - cover_->bounds().lo);
        return cover_->flag({x - slack, x + slack}) == 1;
    }
    return true;
}

double f_alpha_derivative(const FractalFunction& f, double x, double h) {
    const StaircaseTable& table = f.staircase();
    if (x < table.min_x() || x > table.max_x())
        throw std::out_of_range("point outside the staircase range");
    if (!f.on_support(x)) return 0.0;  // off the set the derivative vanishes

    if (h <= 0.0) {
        const double inc = table.min_positive_increment();
        if (inc <= 0.0) throw DerivativeUndefinedError("staircase has no positive increments");
        h = std::sqrt(inc);
    }

    const auto& xs = table.breakpoints();
    const auto& ss = table.values();
    const double sx = staircase_eval(table, x);
    const double fx = f.eval(x);

    // First breakpoint to the right with S(y) >= sx + h.
    double right = 0.0;
    bool have_right = false;
    {
        auto it = std::lower_bound(ss.begin(), ss.end(), sx + h);
        while (it != ss.end() && xs[static_cast<std::size_t>(it - ss.begin())] <= x) ++it;
        if (it != ss.end()) {
            const std::size_t i = static_cast<std::size_t>(it - ss.begin());
            right = (f.eval(xs[i]) - fx) / (ss[i] - sx);
            have_right = true;
        }
    }
    // Last breakpoint to the left with S(y) <= sx - h.
    double left = 0.0;
    bool have_left = false;
    {
        auto it = std::upper_bound(ss.begin(), ss.end(), sx - h);
        while (it != ss.begin() && xs[static_cast<std::size_t>(it - ss.begin()) - 1] >= x) --it;
        if (it != ss.begin()) {
            const std::size_t i = static_cast<std::size_t>(it - ss.begin()) - 1;
            left = (fx - f.eval(xs[i])) / (sx - ss[i]);
            have_left = true;
        }
    }

    if (have_right && have_left) return 0.5 * (right + left);
    if (have_right) return right;
    if (have_left) return left;
    throw DerivativeUndefinedError("no support point at staircase distance >= h from x");
}

namespace {

IntegralResult stieltjes_sums(const FractalFunction& f, double a, double b, double tol) {
    const StaircaseTable& table = f.staircase();
    if (a > b) throw std::invalid_argument("integration range must satisfy a <= b");
    if (a < table.min_x() || b > table.max_x())
        throw std::out_of_range("integration range outside the staircase");

    const auto& xs = table.breakpoints();
    std::vector<double> cuts;
    cuts.push_back(a);
    for (const double x : xs)
        if (x > a && x < b) cuts.push_back(x);
    cuts.push_back(b);

    double upper = 0.0, lower = 0.0;
    double s_prev = staircase_eval(table, cuts.front());
    double f_prev = f.eval(cuts.front());
    for (std::size_t i = 1; i < cuts.size(); ++i) {
        const double s_next = staircase_eval(table, cuts[i]);
        const double ds = s_next - s_prev;
        s_prev = s_next;
        const double f_next = f.eval(cuts[i]);
        if (ds > 0.0) {
            const double f_mid = f.eval(0.5 * (cuts[i - 1] + cuts[i]));
            const double hi = std::max({f_prev, f_mid, f_next});
            const double lo = std::min({f_prev, f_mid, f_next});
            upper += hi * ds;
            lower += lo * ds;
        }
        f_prev = f_next;
    }

    IntegralResult r{0.5 * (upper + lower), lower, upper};
    if (r.gap() > tol)
        throw NonIntegrableError("upper and lower Stieltjes sums disagree beyond tolerance",
                                 r.gap());
    return r;
}

} // namespace

IntegralResult f_alpha_integral(const FractalFunction& f, double a, double b, double tol) {
    return stieltjes_sums(f, a, b, tol);
}

IntegralResult f_alpha_integral(const FractalFunction& f, CurveSegment segment, double tol) {
    return stieltjes_sums(f, segment.t_lo, segment.t_hi, tol);
}

std::function<double(double)> conjugate_to_ordinary(const FractalFunction& f) {
    // The closure owns a copy of f (cheap: shared state).
    return [f](double s) { return f.eval(staircase_invert(f.staircase(), s)); };
}

FractalFunction conjugate_from_ordinary(std::function<double(double)> g,
                                        std::shared_ptr<const StaircaseTable> staircase) {
    if (!g || !staircase) throw std::invalid_argument("g and staircase are required");
    auto table = staircase;
    auto evaluator = [g = std::move(g), table](double x) {
        return g(staircase_eval(*table, x));
    };
    return FractalFunction::on_staircase(std::move(staircase), std::move(evaluator));
}

} // namespace fcalc
