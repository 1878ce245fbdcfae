#include "kstefan/limits.hpp"

#include <algorithm>
#include <cmath>

#include "kstefan/errors.hpp"

namespace kstefan {
namespace {

ProblemSpec with_h0(const ProblemSpec& base, double h0) {
    return base.with_boundary(Convective{h0, base.convective_data().t_inf});
}

}  // namespace

ProblemSpec limit_problem(const ProblemSpec& convective) {
    return convective.with_boundary(Temperature{convective.convective_data().t_inf});
}

LimitStudy run_limit_study(const ProblemSpec& base, std::span<const double> h0_grid,
                           const RootSolverConfig& cfg) {
    if (h0_grid.empty()) throw InvalidSpec("h0 grid is empty");
    for (std::size_t i = 0; i < h0_grid.size(); ++i) {
        if (!(h0_grid[i] > 0.0) || (i > 0 && !(h0_grid[i] > h0_grid[i - 1]))) {
            throw InvalidSpec("h0 grid must be positive and strictly ascending");
        }
    }
    LimitStudy study{base, {h0_grid.begin(), h0_grid.end()}, {}, 0.0};
    study.nu_values.reserve(h0_grid.size());
    for (double h0 : h0_grid) {
        study.nu_values.push_back(solve_front(with_h0(base, h0), cfg).nu);
    }
    study.nu_infinity = solve_front(limit_problem(base), cfg).nu;
    return study;
}

double field_convergence_gap(const ProblemSpec& base, double h0, std::span<const SamplePoint> sample,
                             const RootSolverConfig& cfg) {
    const SimilaritySolution finite = solve_front(with_h0(base, h0), cfg);
    const SimilaritySolution limit = solve_front(limit_problem(base), cfg);
    double gap = 0.0;
    for (const auto& p : sample) {
        gap = std::max(gap, std::abs(temperature(finite, p.x, p.t) - temperature(limit, p.x, p.t)));
    }
    return gap;
}

CoefficientGap coefficient_gap(const ProblemSpec& base, double h0, const RootSolverConfig& cfg) {
    const SimilaritySolution finite = solve_front(with_h0(base, h0), cfg);
    const SimilaritySolution limit = solve_front(limit_problem(base), cfg);
    return {std::abs(finite.coeff_even - limit.coeff_even),
            std::abs(finite.coeff_odd - limit.coeff_odd)};
}

}  // namespace kstefan
