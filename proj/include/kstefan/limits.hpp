#pragma once

#include <span>
#include <vector>

#include "kstefan/problem.hpp"
#include "kstefan/stefan.hpp"

namespace kstefan {

/// Front coefficients of the convective problem along increasing h0, next to
/// the coefficient of the limit problem Psi(0,t) = t_inf t^{alpha/2}.
struct LimitStudy {
    ProblemSpec base;
    std::vector<double> h0_grid;
    std::vector<double> nu_values;
    double nu_infinity;
};

/// The h0 -> infinity limit of a convective problem: temperature boundary with t0 = t_inf.
ProblemSpec limit_problem(const ProblemSpec& convective);

/// Solves `base` (whose h0 is replaced) at every grid value. The grid must be
/// positive and strictly ascending.
LimitStudy run_limit_study(const ProblemSpec& base, std::span<const double> h0_grid,
                           const RootSolverConfig& cfg = {});

struct SamplePoint {
    double x;
    double t;
};

/// sup over `sample` of |Psi_{h0}(x,t) - Psi_inf(x,t)|.
double field_convergence_gap(const ProblemSpec& base, double h0, std::span<const SamplePoint> sample,
                             const RootSolverConfig& cfg = {});

struct CoefficientGap {
    double even;  ///< |c_even(h0) - t_inf|
    double odd;   ///< |c_odd(h0) - c_odd_inf|
};

CoefficientGap coefficient_gap(const ProblemSpec& base, double h0, const RootSolverConfig& cfg = {});

}  // namespace kstefan
