// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "kstefan/equivalence.hpp"
#include "kstefan/errors.hpp"
#include "kstefan/kummer.hpp"
#include "kstefan/limits.hpp"
#include "kstefan/oracle.hpp"
#include "kstefan/stefan.hpp"
#include "support/fixtures.hpp"
#include "support/kummer_reference.hpp"
#include "support/oracles.hpp"

using namespace kstefan;

namespace {

struct Verdict {
    bool pass = true;
    std::ostringstream detail;

    // Records a check; keeps the first failure message only.
    void require(bool ok, const std::string& what) {
        if (!ok && pass) detail << "first failure: " << what << "; ";
        pass = pass && ok;
    }
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// 1: interface, boundary, Stefan and heat-equation residuals on 30 specs.
void criterion_residuals(Verdict& v) {
    const auto start = std::chrono::steady_clock::now();
    double worst_interface = 0.0, worst_bc = 0.0, worst_stefan = 0.0, worst_pde = 0.0;
    for (const auto& p : fixtures::convective_grid()) {
        const auto sol = solve_front(p);
        const auto [h0, t_inf] = p.convective_data();
        for (double t : {0.1, 0.5, 1.0, 2.0}) {
            const double s = front_position(sol, t);
            worst_interface = std::max(worst_interface, std::abs(temperature(sol, s, t)));
            const double bc = p.k() * temperature_flux(sol, 0.0, t) -
                              h0 / std::sqrt(t) * (temperature(sol, 0.0, t) - t_inf * std::pow(t, 0.5 * p.alpha()));
            worst_bc = std::max(worst_bc, std::abs(bc));
            const double stefan =
                p.k() * temperature_flux(sol, s, t) + p.gamma() * std::pow(s, p.alpha()) * front_velocity(sol, t);
            worst_stefan = std::max(worst_stefan, std::abs(stefan));
            for (int i = 1; i < 10; ++i) {
                const double x = s * i / 10.0;
                const double psi = temperature(sol, x, t);
                const double psi_t =
                    oracles::central_difference([&](double tt) { return temperature(sol, x, tt); }, t, 1e-3 * t);
                const double psi_xx =
                    oracles::second_difference([&](double xx) { return temperature(sol, xx, t); }, x, 1e-3 * s);
                worst_pde = std::max(worst_pde, std::abs(psi_t - p.d() * psi_xx) / std::max(1.0, std::abs(psi)));
            }
        }
    }
    const double elapsed = seconds_since(start);
    v.require(worst_interface <= 1e-9, "interface " + fmt(worst_interface));
    v.require(worst_bc <= 1e-9, "convective BC " + fmt(worst_bc));
    v.require(worst_stefan <= 1e-6, "Stefan condition " + fmt(worst_stefan));
    v.require(worst_pde <= 1e-5, "heat equation " + fmt(worst_pde));
    v.require(elapsed < 30.0, "runtime " + fmt(elapsed) + " s");
    v.detail << "30 specs; max interface " << fmt(worst_interface) << ", BC " << fmt(worst_bc) << ", Stefan "
             << fmt(worst_stefan) << ", PDE " << fmt(worst_pde) << "; " << fmt(elapsed) << " s";
}

// 2: Newton root against plain bisection of the series-written residual.
void criterion_roots(Verdict& v) {
    double worst = 0.0;
    int most_iterations = 0;
    for (const auto& p : fixtures::convective_grid()) {
        const auto sol = solve_front(p);
        worst = std::max(worst, std::abs(sol.nu - fixtures::bisection_root(p)));
        most_iterations = std::max(most_iterations, sol.report.iterations);
    }
    v.require(worst <= 1e-12, "max |dnu| " + fmt(worst));
    v.require(most_iterations <= 25, "iterations " + std::to_string(most_iterations));
    v.detail << "30 specs; max |dnu| " << fmt(worst) << ", max iterations " << most_iterations;
}

// 3: Kummer transformation, bridge identities, derivative rule.
void criterion_identities(Verdict& v) {
    double worst_transform = 0.0;
    for (const auto& r : reference::kTransformationGrid) {
        const double scale = std::max(1.0, std::abs(r.m));
        const double direct = kummer_m({r.a, r.b, r.z});
        const double transformed = std::exp(r.z) * kummer_m({r.b - r.a, r.b, -r.z});
        worst_transform = std::max({worst_transform, std::abs(direct - r.m) / scale,
                                    std::abs(transformed - r.m) / scale, std::abs(direct - transformed) / scale});
    }

    double worst_bridge = 0.0;
    for (int n = 0; n <= 4; ++n) {
        for (int i = 0; i <= 60; ++i) {
            const double z = 0.05 * i;
            const double even = kummer_m({-0.5 * n, 0.5, -z * z});
            const double even_erfc = std::ldexp(1.0, n) * gamma_fn(0.5 * n + 1.0) * e_n(n, z);
            worst_bridge = std::max(worst_bridge, std::abs(even - even_erfc) / std::max(std::abs(even), 1e-300));
            if (z > 0.0) {
                const double odd = z * kummer_m({-0.5 * n + 0.5, 1.5, -z * z});
                const double odd_erfc = std::ldexp(1.0, n - 1) * gamma_fn(0.5 * n + 0.5) * f_n(n, z);
                worst_bridge = std::max(worst_bridge, std::abs(odd - odd_erfc) / std::abs(odd));
            }
        }
    }

    double worst_derivative = 0.0;
    for (double a : {-2.5, -0.2, 0.7, 1.5, 3.0}) {
        for (double b : {0.5, 1.5}) {
            for (double z : {-5.0, -1.0, -0.25, 0.09, 0.5, 2.0, 5.0}) {
                const double exact = kummer_m_derivative({a, b, z});
                const double fd =
                    oracles::central_difference([&](double y) { return kummer_m({a, b, y}); }, z, 1e-6);
                worst_derivative = std::max(worst_derivative, std::abs(exact - fd) / std::max(1.0, std::abs(exact)));
            }
        }
    }
    v.require(worst_transform <= 1e-10, "transformation " + fmt(worst_transform));
    v.require(worst_bridge <= 1e-10, "bridge " + fmt(worst_bridge));
    v.require(worst_derivative <= 1e-7, "derivative " + fmt(worst_derivative));
    v.detail << "transformation " << fmt(worst_transform) << " (296 pts vs 80-digit sums), bridge "
             << fmt(worst_bridge) << ", derivative vs FD " << fmt(worst_derivative);
}

// 4: alpha = 0 against the erf-form classical solution.
void criterion_classical(Verdict& v) {
    double worst_root = 0.0, worst_equation = 0.0, worst_field = 0.0;
    for (double h0 : {0.1, 1.0, 10.0}) {
        for (double t_inf : {0.5, 1.0}) {
            for (const Material m : {Material{}, Material{1.7, 0.4, 2.2}}) {
                const auto p = ProblemSpec::convective(0.0, h0, t_inf, m);
                const auto sol = solve_front(p);
                const double spd = std::sqrt(std::numbers::pi * m.d);
                auto erf_equation = [&](double x) {
                    return h0 * t_inf / (m.gamma * std::sqrt(m.d) * (1.0 + spd * h0 / m.k * std::erf(x))) -
                           x * std::exp(x * x);
                };
                worst_root = std::max(worst_root, std::abs(sol.nu - oracles::bisect(erf_equation, 1e-9, 3.0)));
                worst_equation = std::max(worst_equation, std::abs(erf_equation(sol.nu)));
                for (double t : {0.1, 0.5, 1.0, 3.0}) {
                    const double s = front_position(sol, t);
                    const double scale = h0 * t_inf * spd * std::erf(sol.nu) / (m.k + spd * h0 * std::erf(sol.nu));
                    for (int i = 0; i <= 20; ++i) {
                        const double x = s * i / 20.0;
                        const double eta = x / (2.0 * std::sqrt(m.d * t));
                        const double erf_form = h0 * t_inf * spd * (std::erf(sol.nu) - std::erf(eta)) /
                                                (m.k + spd * h0 * std::erf(sol.nu));
                        worst_field = std::max(worst_field, std::abs(temperature(sol, x, t) - erf_form) / scale);
                    }
                }
            }
        }
    }
    v.require(worst_root <= 1e-12, "root " + fmt(worst_root));
    v.require(worst_equation <= 1e-12, "erf equation residual " + fmt(worst_equation));
    v.require(worst_field <= 1e-12, "field " + fmt(worst_field));
    v.detail << "12 specs; root " << fmt(worst_root) << ", erf-equation residual " << fmt(worst_equation)
             << ", field " << fmt(worst_field) << " (relative to surface value)";
}

// 5: equivalence maps, field gaps, round trips, preconditions.
void criterion_equivalence(Verdict& v) {
    double worst_nu = 0.0, worst_gap = 0.0, worst_round_trip = 0.0;
    for (const auto& p1 : fixtures::convective_grid()) {
        const double h0 = p1.convective_data().h0;
        const double t_inf = p1.convective_data().t_inf;
        const auto p2 = convective_to_temperature(p1);
        const auto p3 = convective_to_flux(p1);
        for (const auto& target : {p2, p3}) {
            const auto r = compare_problems(p1, target);
            worst_nu = std::max(worst_nu, std::abs(r.nu_source - r.nu_target));
            worst_gap = std::max(worst_gap, r.max_temperature_gap / r.max_temperature);
        }
        worst_round_trip = std::max(
            {worst_round_trip, std::abs(temperature_to_convective(p2, t_inf).convective_data().h0 - h0) / h0,
             std::abs(flux_to_convective(p3, t_inf).convective_data().h0 - h0) / h0});
    }
    bool rejected = true;
    const auto p2 = ProblemSpec::temperature(1.0, 1.0);
    for (double t_inf : {1.0, 0.5}) {
        try {
            temperature_to_convective(p2, t_inf);
            rejected = false;
        } catch (const PreconditionError&) {
        }
    }
    const auto p3 = ProblemSpec::flux(2.0, 1.0);
    const double threshold = flux_to_convective_threshold(p3);
    for (double t_inf : {threshold, 0.5 * threshold}) {
        try {
            flux_to_convective(p3, t_inf);
            rejected = false;
        } catch (const PreconditionError&) {
        }
    }
    v.require(worst_nu <= 1e-10, "nu gap " + fmt(worst_nu));
    v.require(worst_gap <= 1e-8, "field gap " + fmt(worst_gap));
    v.require(worst_round_trip <= 1e-8, "round trip " + fmt(worst_round_trip));
    v.require(rejected, "precondition violation accepted");
    v.detail << "30 specs x {temperature, flux}; nu gap " << fmt(worst_nu) << ", field gap " << fmt(worst_gap)
             << ", h0 round trip " << fmt(worst_round_trip) << "; preconditions rejected";
}

// 6: h0 -> infinity.
void criterion_limit(Verdict& v) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<double> grid;
    for (int e = 0; e <= 6; ++e) grid.push_back(std::pow(10.0, e));
    for (double alpha : {0.4, 2.0}) {
        const auto study = run_limit_study(ProblemSpec::convective(alpha, 1.0, 1.0), grid);
        bool ascending = true;
        bool bounded = true;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            if (i > 0 && !(study.nu_values[i] > study.nu_values[i - 1])) ascending = false;
            if (!(study.nu_values[i] < study.nu_infinity)) bounded = false;
        }
        const double gap = std::abs(study.nu_values.back() - study.nu_infinity);
        v.require(ascending, "not ascending at alpha " + fmt(alpha));
        v.require(bounded, "not bounded at alpha " + fmt(alpha));
        v.require(gap <= 1e-3, "gap " + fmt(gap) + " at alpha " + fmt(alpha));
        v.detail << "alpha " << fmt(alpha) << ": |nu(1e6) - nu_inf| " << fmt(gap) << "; ";
    }
    const double elapsed = seconds_since(start);
    v.require(elapsed < 10.0, "runtime " + fmt(elapsed) + " s");
    v.detail << fmt(elapsed) << " s";
}

// 7: enthalpy oracle, started from the closed form and from a cold slab.
void criterion_oracle(Verdict& v) {
    const auto start = std::chrono::steady_clock::now();
    const auto p = fixtures::baseline_case();
    const auto sol = solve_front(p);
    for (bool cold : {false, true}) {
        OracleConfig cfg;
        cfg.nx = 2000;
        cfg.t_end = 1.0;
        cfg.domain_length = suggested_domain_length(sol, cfg.t_end);
        cfg.cold_start = cold;
        if (cold) cfg.t_start = 1e-6;
        const auto result = run_oracle(p, cfg);
        const auto report = compare_to_closed_form(result, sol, 0.1);
        const std::string tag = cold ? "cold" : "warm";
        v.require(report.max_front_err <= 1e-2, tag + " front " + fmt(report.max_front_err));
        v.require(report.max_field_err <= 2e-2, tag + " field " + fmt(report.max_field_err));
        v.require(result.energy_balance_drift <= 5e-3, tag + " drift " + fmt(result.energy_balance_drift));
        v.detail << tag << " start: front " << fmt(report.max_front_err) << ", field " << fmt(report.max_field_err)
                 << ", drift " << fmt(result.energy_balance_drift) << "; ";
    }
    const double elapsed = seconds_since(start);
    v.require(elapsed < 60.0, "runtime " + fmt(elapsed) + " s");
    v.detail << "nx 2000, " << fmt(elapsed) << " s";
}

std::vector<std::vector<double>> read_numeric_csv(const std::filesystem::path& path,
                                                  std::vector<std::string>& header) {
    std::ifstream in(path);
    std::string line;
    std::vector<std::vector<double>> rows;
    header.clear();
    if (!std::getline(in, line)) return rows;
    std::istringstream hs(line);
    for (std::string cell; std::getline(hs, cell, ',');) header.push_back(cell);
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::vector<double> row;
        for (std::string cell; std::getline(ls, cell, ',');) row.push_back(std::stod(cell));
        rows.push_back(row);
    }
    return rows;
}

int run_binary(const std::string& args) {
    const std::string cmd = std::string("\"") + STEFAN_KUMMER_BIN + "\" " + args;
    return std::system(cmd.c_str());
}

// 8: sweep and field output of the command-line tool.
void criterion_cli_output(Verdict& v) {
    const auto dir = std::filesystem::temp_directory_path() / "stefan_kummer_acceptance";
    std::filesystem::create_directories(dir);

    const std::string values = "0.01,0.03,0.1,0.3,1,3,10,30,100,300,1000,1e4,1e5,1e6";
    int curves = 0;
    for (const auto& [alpha, t_inf] : std::vector<std::pair<double, double>>{
             {0.4, 1.0}, {0.4, 0.5}, {1.0, 1.0}, {2.0, 0.7}, {5.5, 1.0}}) {
        const auto path = dir / ("sweep_" + std::to_string(curves) + ".csv");
        const int code = run_binary("sweep --alpha " + fmt(alpha) + " --tinf " + fmt(t_inf) +
                                    " --vary h0 --include-limit --values " + values + " --out \"" + path.string() +
                                    "\"");
        v.require(code == 0, "sweep exit code");
        std::vector<std::string> header;
        const auto rows = read_numeric_csv(path, header);
        v.require(header == std::vector<std::string>{"param", "nu", "nu_infinity"}, "sweep header");
        v.require(rows.size() == 14, "sweep rows");
        if (rows.size() != 14) continue;
        for (std::size_t i = 1; i < rows.size(); ++i) {
            v.require(rows[i][1] > rows[i - 1][1], "sweep not increasing");
            v.require(rows[i][1] < rows[i][2], "sweep above nu_infinity");
        }
        // Saturation: per-decade increments shrink over the upper half and the
        // curve ends within 1e-3 of the limit.
        for (std::size_t i = 8; i + 2 < rows.size(); i += 2) {
            v.require(rows[i + 2][1] - rows[i][1] < rows[i][1] - rows[i - 2][1], "sweep not saturating");
        }
        v.require(rows.back()[2] - rows.back()[1] <= 1e-3, "sweep far from nu_infinity");
        ++curves;
    }

    const auto field_path = dir / "field.csv";
    const int code = run_binary("field --alpha 0.4 --h0 0.5 --tinf 1 --xmax 1.2 --tmax 1 --nx 50 --nt 50 --out \"" +
                                field_path.string() + "\"");
    v.require(code == 0, "field exit code");
    std::vector<std::string> header;
    const auto rows = read_numeric_csv(field_path, header);
    v.require(header == std::vector<std::string>{"x", "t", "psi", "s_of_t", "melted_flag"}, "field header");
    v.require(rows.size() == 2500, "field rows");
    std::map<double, std::vector<std::pair<double, double>>> by_x;  // x -> (t, psi) once melted
    std::size_t melted_rows = 0;
    for (const auto& r : rows) {
        if (r[4] == 1.0) {
            by_x[r[0]].emplace_back(r[1], r[2]);
            ++melted_rows;
        } else {
            v.require(r[2] == 0.0, "unmasked psi beyond the front");
        }
    }
    for (auto& [x, series] : by_x) {
        std::sort(series.begin(), series.end());
        for (std::size_t i = 1; i < series.size(); ++i) {
            v.require(series[i].second >= series[i - 1].second, "psi decreasing in t at x = " + fmt(x));
        }
    }
    v.require(melted_rows > 0 && melted_rows < rows.size(), "field grid does not straddle the front");
    v.detail << curves << " sweep curves increasing and saturating; field " << rows.size() << " rows, "
             << melted_rows << " melted, psi nondecreasing in t at " << by_x.size() << " x-columns";
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Verdict&)>>> criteria = {
        {"C1 closed-form residuals", criterion_residuals},
        {"C2 root correctness", criterion_roots},
        {"C3 identity suite", criterion_identities},
        {"C4 alpha=0 classical reduction", criterion_classical},
        {"C5 equivalence maps", criterion_equivalence},
        {"C6 large-h0 limit", criterion_limit},
        {"C7 oracle cross-validation", criterion_oracle},
        {"C8 sweep and field output", criterion_cli_output},
    };
    int failures = 0;
    for (const auto& [name, check] : criteria) {
        Verdict v;
        try {
            check(v);
        } catch (const std::exception& e) {
            v.pass = false;
            v.detail << "exception: " << e.what();
        }
        if (!v.pass) ++failures;
        std::printf("[%s] %s: %s\n", v.pass ? "PASS" : "FAIL", name.c_str(), v.detail.str().c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
