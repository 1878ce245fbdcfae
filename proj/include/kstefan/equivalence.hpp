#pragma once

#include <vector>

#include "kstefan/problem.hpp"
#include "kstefan/stefan.hpp"

namespace kstefan {

/// Outcome of re-solving a converted problem next to its source.
struct EquivalenceReport {
    ProblemSpec source_spec;
    ProblemSpec target_spec;
    double nu_source;
    double nu_target;
    double max_temperature_gap;  ///< sup |Psi_source - Psi_target| over the sample grid
    double max_temperature;      ///< sup |Psi_source| over the same grid, for scaling
};

/// Boundary temperature that reproduces a convective problem:
/// t0 = 2 sqrt(d) h0 t_inf nu M1 / (k M0 + 2 sqrt(d) h0 nu M1),
/// with M0 = M(-alpha/2, 1/2, -nu^2), M1 = M(-alpha/2+1/2, 3/2, -nu^2).
ProblemSpec convective_to_temperature(const ProblemSpec& convective,
                                      const RootSolverConfig& cfg = {});

/// Convective data (h0, t_inf) reproducing a temperature problem:
/// h0 = -k t0 M0 / (2 sqrt(d) (t0 - t_inf) mu M1). Requires t_inf > t0
/// (PreconditionError carries t0 as the threshold).
ProblemSpec temperature_to_convective(const ProblemSpec& temperature, double t_inf,
                                      const RootSolverConfig& cfg = {});

/// Boundary flux that reproduces a convective problem:
/// c = h0 t_inf M0 / (M0 + 2 sqrt(d) h0/k nu M1).
ProblemSpec convective_to_flux(const ProblemSpec& convective, const RootSolverConfig& cfg = {});

/// Smallest bulk temperature a flux problem can be matched with,
/// 2 c sqrt(d)/k * lambda M1 / M0.
double flux_to_convective_threshold(const ProblemSpec& flux, const RootSolverConfig& cfg = {});

/// Convective data reproducing a flux problem:
/// h0 = -c M0 / (2 c sqrt(d)/k lambda M1 - t_inf M0). Requires t_inf above
/// flux_to_convective_threshold (PreconditionError carries the threshold).
ProblemSpec flux_to_convective(const ProblemSpec& flux, double t_inf,
                               const RootSolverConfig& cfg = {});

/// Solves both problems and compares front coefficients and fields on an
/// n_x by n_t grid of (x, t) with t in (t_min, t_max] and x in (0, s(t)).
EquivalenceReport compare_problems(const ProblemSpec& source, const ProblemSpec& target,
                                   int n_x = 20, int n_t = 20, double t_min = 0.1,
                                   double t_max = 2.0, const RootSolverConfig& cfg = {});

}  // namespace kstefan
