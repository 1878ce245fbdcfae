#include "kstefan/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "kstefan/errors.hpp"

namespace kstefan {
namespace {

std::vector<double> uniform_times(double from, double to, int count, bool include_from) {
    std::vector<double> out;
    if (count <= 0) return out;
    if (to == from) return include_from ? std::vector<double>{to} : out;
    if (include_from) {
        if (count == 1) return {to};
        for (int i = 0; i < count; ++i) out.push_back(from + (to - from) * i / (count - 1));
    } else {
        for (int i = 1; i <= count; ++i) out.push_back(from + (to - from) * i / count);
    }
    out.back() = to;
    return out;
}

// Heat flux entering the slab through x = 0, given the first cell's temperature.
double boundary_flux(const ProblemSpec& p, double t, double psi_first, double dx) {
    const double alpha = p.alpha();
    const double k = p.k();
    const double half_cell_conductance = 2.0 * k / dx;
    switch (p.kind()) {
        case BoundaryKind::convective: {
            const auto [h0, t_inf] = p.convective_data();
            const double h = h0 / std::sqrt(t);
            const double ambient = t_inf * std::pow(t, 0.5 * alpha);
            // Face temperature balances conduction through the half cell
            // against the surface transfer.
            const double face = (half_cell_conductance * psi_first + h * ambient) /
                                (half_cell_conductance + h);
            return h * (ambient - face);
        }
        case BoundaryKind::temperature: {
            const double face = p.temperature_data().t0 * std::pow(t, 0.5 * alpha);
            return half_cell_conductance * (face - psi_first);
        }
        case BoundaryKind::flux:
            return p.flux_data().c * std::pow(t, 0.5 * (alpha - 1.0));
    }
    return 0.0;
}

class Slab {
public:
    Slab(const ProblemSpec& p, const OracleConfig& cfg)
        : p_(p),
          n_(static_cast<std::size_t>(cfg.nx)),
          dx_(cfg.domain_length / cfg.nx),
          melt_tol_(cfg.liquid_fraction_tol),
          capacity_(p.k() / p.d()),
          centers_(n_),
          latent_(n_),
          enthalpy_(n_, 0.0),
          psi_(n_, 0.0) {
        for (std::size_t i = 0; i < n_; ++i) {
            centers_[i] = (static_cast<double>(i) + 0.5) * dx_;
            latent_[i] = p.gamma() * std::pow(centers_[i], p.alpha());
        }
    }

    void initialize(const InitialState& init) {
        for (std::size_t i = 0; i < n_; ++i) {
            const double left = static_cast<double>(i) * dx_;
            const double right = left + dx_;
            if (right <= init.front) {
                const double psi = init.temperature ? init.temperature(centers_[i]) : 0.0;
                enthalpy_[i] = capacity_ * std::max(psi, 0.0) + latent_[i];
            } else if (left < init.front) {
                enthalpy_[i] = latent_[i] * (init.front - left) / dx_;
            } else {
                enthalpy_[i] = 0.0;
            }
        }
        front_cell_ = 0;
        advance_front_cell();
        refresh_temperature(n_ - 1);
    }

    // One explicit step; returns the heat that entered through x = 0.
    double step(double t, double dt) {
        const std::size_t last = front_cell_ + 1;  // cells beyond carry no heat
        refresh_temperature(std::min(last + 1, n_ - 1));
        const double r = dt / dx_;
        const double q_in = boundary_flux(p_, t, psi_[0], dx_);
        double flux_left = q_in;
        const double k_over_dx = p_.k() / dx_;
        for (std::size_t i = 0; i <= last; ++i) {
            const double flux_right = -k_over_dx * (psi_[i + 1] - psi_[i]);
            enthalpy_[i] += r * (flux_left - flux_right);
            flux_left = flux_right;
        }
        advance_front_cell();
        return q_in * dt;
    }

    double front() const {
        return (static_cast<double>(front_cell_) + liquid_fraction(front_cell_)) * dx_;
    }

    std::vector<double> temperatures() {
        refresh_temperature(n_ - 1);
        return psi_;
    }

    double stored_energy() const {
        double total = 0.0;
        for (double h : enthalpy_) total += h;
        return total * dx_;
    }

    const std::vector<double>& centers() const { return centers_; }
    double dx() const { return dx_; }

private:
    double liquid_fraction(std::size_t i) const {
        if (enthalpy_[i] >= latent_[i]) return 1.0;
        if (enthalpy_[i] <= 0.0) return 0.0;
        return enthalpy_[i] / latent_[i];
    }

    void refresh_temperature(std::size_t upto) {
        for (std::size_t i = 0; i <= upto; ++i) {
            const double h = enthalpy_[i];
            if (h >= latent_[i]) {
                psi_[i] = (h - latent_[i]) / capacity_;
            } else if (h < 0.0) {
                psi_[i] = h / capacity_;
            } else {
                psi_[i] = 0.0;
            }
        }
    }

    void advance_front_cell() {
        while (front_cell_ < n_ && liquid_fraction(front_cell_) >= 1.0 - melt_tol_) ++front_cell_;
        if (front_cell_ + 3 >= n_) {
            std::ostringstream os;
            os << "melt front reached the end of the domain (length " << dx_ * static_cast<double>(n_)
               << "); increase domain_length";
            throw OracleError(os.str());
        }
    }

    const ProblemSpec& p_;
    std::size_t n_;
    double dx_;
    double melt_tol_;
    double capacity_;  // k / d, heat per unit volume per degree
    std::vector<double> centers_;
    std::vector<double> latent_;
    std::vector<double> enthalpy_;
    std::vector<double> psi_;
    std::size_t front_cell_ = 0;
};

}  // namespace

void OracleConfig::validate() const {
    if (!(domain_length > 0.0) || !std::isfinite(domain_length)) {
        throw InvalidSpec("oracle domain_length must be positive");
    }
    if (nx < 50) throw InvalidSpec("oracle nx must be at least 50");
    if (!(dt_safety > 0.0)) throw InvalidSpec("oracle dt_safety must be positive");
    if (dt_safety > 0.5) {
        std::ostringstream os;
        os << "explicit step unstable: dt_safety = " << dt_safety << " exceeds 0.5";
        throw OracleError(os.str());
    }
    if (!(t_end > 0.0) || t_start < 0.0 || start_time() > t_end) {
        throw InvalidSpec("oracle needs 0 < t_start <= t_end");
    }
    if (!(liquid_fraction_tol >= 0.0 && liquid_fraction_tol < 0.5)) {
        throw InvalidSpec("oracle liquid_fraction_tol must be in [0, 0.5)");
    }
    if (n_front_samples < 1 || n_snapshots < 0) {
        throw InvalidSpec("oracle sample counts must be positive");
    }
}

OracleResult run_enthalpy(const ProblemSpec& problem, const OracleConfig& cfg,
                          const InitialState& initial) {
    cfg.validate();
    Slab slab(problem, cfg);
    slab.initialize(initial);

    const double t0 = cfg.start_time();
    const double dt_max = cfg.dt_safety * slab.dx() * slab.dx() / problem.d();
    const std::vector<double> front_times = uniform_times(t0, cfg.t_end, cfg.n_front_samples, true);
    const std::vector<double> snapshot_times = uniform_times(t0, cfg.t_end, cfg.n_snapshots, false);

    OracleResult out{problem, slab.dx(), slab.centers(), {}, {}, {}, 0.0, 0};
    const double initial_energy = slab.stored_energy();
    double energy_in = 0.0;
    double t = t0;
    std::size_t next_front = 0;
    std::size_t next_snapshot = 0;

    auto record = [&] {
        while (next_front < front_times.size() && front_times[next_front] <= t) {
            out.times.push_back(front_times[next_front++]);
            out.front_positions.push_back(slab.front());
        }
        while (next_snapshot < snapshot_times.size() && snapshot_times[next_snapshot] <= t) {
            out.snapshots.push_back({snapshot_times[next_snapshot++], slab.front(), slab.temperatures()});
        }
    };
    record();

    while (t < cfg.t_end) {
        double target = cfg.t_end;
        if (next_front < front_times.size()) target = std::min(target, front_times[next_front]);
        if (next_snapshot < snapshot_times.size()) target = std::min(target, snapshot_times[next_snapshot]);
        const double dt = std::min(dt_max, target - t);
        energy_in += slab.step(t, dt);
        ++out.steps;
        t = (target - t <= dt_max) ? target : t + dt;
        record();
    }

    const double stored = slab.stored_energy() - initial_energy;
    out.energy_balance_drift = energy_in > 0.0 ? std::abs(stored - energy_in) / energy_in : 0.0;
    return out;
}

OracleResult run_oracle(const ProblemSpec& problem, const OracleConfig& cfg) {
    cfg.validate();
    if (cfg.cold_start) return run_enthalpy(problem, cfg, InitialState{});
    const SimilaritySolution sol = solve_front(problem);
    const double t0 = cfg.start_time();
    InitialState init{front_position(sol, t0),
                      [&sol, t0](double x) { return temperature(sol, x, t0); }};
    return run_enthalpy(problem, cfg, init);
}

OracleResult sample_closed_form(const SimilaritySolution& sol, const OracleConfig& cfg) {
    cfg.validate();
    const double t0 = cfg.start_time();
    OracleResult out{sol.problem, cfg.domain_length / cfg.nx, {}, {}, {}, {}, 0.0, 0};
    for (int i = 0; i < cfg.nx; ++i) out.cell_centers.push_back((i + 0.5) * out.dx);
    out.times = uniform_times(t0, cfg.t_end, cfg.n_front_samples, true);
    for (double t : out.times) out.front_positions.push_back(front_position(sol, t));
    for (double t : uniform_times(t0, cfg.t_end, cfg.n_snapshots, false)) {
        const double front = front_position(sol, t);
        TemperatureSnapshot snap{t, front, {}};
        for (double x : out.cell_centers) snap.values.push_back(x < front ? temperature(sol, x, t) : 0.0);
        out.snapshots.push_back(std::move(snap));
    }
    return out;
}

double suggested_domain_length(const SimilaritySolution& sol, double t_end) {
    return 4.0 * front_position(sol, t_end);
}

ComparisonReport compare_to_closed_form(const OracleResult& result, const SimilaritySolution& sol,
                                        double t_min) {
    if (!(result.problem == sol.problem)) {
        throw InvalidSpec("oracle result and closed form come from different problems");
    }
    ComparisonReport report;
    for (std::size_t i = 0; i < result.times.size(); ++i) {
        const double t = result.times[i];
        if (t < t_min || t <= 0.0) continue;
        const double exact = front_position(sol, t);
        report.max_front_err =
            std::max(report.max_front_err, std::abs(result.front_positions[i] - exact) / exact);
    }
    for (const auto& snap : result.snapshots) {
        if (snap.time < t_min) continue;
        const double front = std::min(snap.front, front_position(sol, snap.time));
        double scale = 0.0;
        double worst = 0.0;
        for (std::size_t i = 0; i < result.cell_centers.size(); ++i) {
            const double x = result.cell_centers[i];
            if (x >= front) break;
            const double exact = temperature(sol, x, snap.time);
            scale = std::max(scale, std::abs(exact));
            worst = std::max(worst, std::abs(snap.values[i] - exact));
        }
        if (scale > 0.0) report.max_field_err = std::max(report.max_field_err, worst / scale);
    }
    return report;
}

}  // namespace kstefan
