#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "kstefan/problem.hpp"
#include "kstefan/stefan.hpp"

namespace kstefan {

/// Fixed-grid explicit enthalpy solver settings.
struct OracleConfig {
    double domain_length = 0.0;  ///< must exceed the front travel; 4 s(t_end) is a safe choice
    int nx = 2000;               ///< number of cells
    double t_end = 1.0;
    double t_start = 0.0;  ///< start time; 0 selects 0.01 t_end
    double dt_safety = 0.4;  ///< dt = dt_safety dx^2 / d, stable for <= 0.5
    double liquid_fraction_tol = 1e-10;
    int n_front_samples = 101;  ///< front positions recorded on a uniform time grid incl. both ends
    int n_snapshots = 10;       ///< temperature snapshots on a uniform grid in (t_start, t_end]
    bool cold_start = false;    ///< start from an unmelted, zero-temperature slab

    double start_time() const { return t_start > 0.0 ? t_start : 0.01 * t_end; }
    void validate() const;
};

struct TemperatureSnapshot {
    double time;
    double front;                ///< melt front at `time`
    std::vector<double> values;  ///< at cell centers
};

struct OracleResult {
    ProblemSpec problem;
    double dx = 0.0;
    std::vector<double> cell_centers;
    std::vector<double> times;
    std::vector<double> front_positions;
    std::vector<TemperatureSnapshot> snapshots;
    double energy_balance_drift = 0.0;  ///< |stored - (initial + boundary input)| / boundary input
    std::size_t steps = 0;
};

/// State at the start time: melted depth and temperature inside it.
struct InitialState {
    double front = 0.0;
    std::function<double(double)> temperature;  ///< only queried on (0, front)
};

/// Runs the enthalpy scheme from an explicit initial state. Uses only the
/// physical and boundary data of `problem`, never the closed form.
///
/// Each cell of width dx carries H = (k/d) Psi + L phi with L = gamma x_c^alpha
/// evaluated at the cell center and phi the liquid fraction; the front is the
/// last fully melted face plus phi dx of the first unmelted cell.
///
/// Throws OracleError when the front gets within two cells of the domain end.
OracleResult run_enthalpy(const ProblemSpec& problem, const OracleConfig& cfg,
                          const InitialState& initial);

/// Runs the scheme from the closed-form state at the start time, or from a
/// cold slab when cfg.cold_start is set.
OracleResult run_oracle(const ProblemSpec& problem, const OracleConfig& cfg);

/// The closed form sampled on the grid and times run_oracle would produce.
OracleResult sample_closed_form(const SimilaritySolution& sol, const OracleConfig& cfg);

/// 4 s(t_end): a domain the front does not leave in [0, t_end].
double suggested_domain_length(const SimilaritySolution& sol, double t_end);

struct ComparisonReport {
    double max_front_err = 0.0;  ///< sup |s_num - s| / s over recorded times >= t_min
    double max_field_err = 0.0;  ///< sup over snapshots (>= t_min) of max|Psi_num - Psi| / max|Psi|
};

/// Errors of an oracle run against the closed form; throws InvalidSpec if the
/// two were produced from different problems.
ComparisonReport compare_to_closed_form(const OracleResult& result, const SimilaritySolution& sol,
                                        double t_min = 0.0);

}  // namespace kstefan
