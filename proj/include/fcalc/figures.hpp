#pragma once

#include <filesystem>
#include <vector>

namespace fcalc::figures {

struct FigureOptions {
    std::vector<double> alphas;  // empty: per-figure defaults
    std::filesystem::path out_dir = ".";
    int samples = 1001;
    bool gnuplot = false;  // also write figureN.gp plotting the CSVs
};

/// Emit the CSV data behind figure `n` (1..5); returns the written paths.
/// All values come from the library solvers and models; the emitter only
/// formats rows. Default parameters are chosen so `figure N` with no extra
/// flags reproduces each plot:
///   1  linear worked example y(t), one file per alpha      (t, y)
///   2  separable worked example y(t), one file per alpha   (t, y)
///   3  investment growth p(t), one file per alpha          (t, p)
///   4  escape velocity against alpha, single file          (alpha, v_e)
///   5  cooling curves T(t), one file per alpha             (t, T)
std::vector<std::filesystem::path> emit_figure(int n, const FigureOptions& options = {});

} // namespace fcalc::figures
