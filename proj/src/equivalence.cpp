#include "kstefan/equivalence.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "kstefan/errors.hpp"

namespace kstefan {
namespace {

struct FrontBasis {
    double nu;
    double m_even;  // M(-alpha/2, 1/2, -nu^2)
    double m_odd;   // nu M(-alpha/2+1/2, 3/2, -nu^2)
};

FrontBasis solve_basis(const ProblemSpec& p, const RootSolverConfig& cfg) {
    const SimilaritySolution sol = solve_front(p, cfg);
    const double m_even = even_basis(p.alpha(), sol.nu);
    if (!(m_even > 0.0)) {
        throw InvariantViolation("M(-alpha/2, 1/2, -nu^2) is not positive at the solved front");
    }
    return {sol.nu, m_even, odd_basis(p.alpha(), sol.nu)};
}

void require_derived_positive(double value, const char* name) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        std::ostringstream os;
        os.precision(17);
        os << "derived " << name << " is not a positive finite number: " << value;
        throw InvariantViolation(os.str());
    }
}

}  // namespace

ProblemSpec convective_to_temperature(const ProblemSpec& p1, const RootSolverConfig& cfg) {
    const auto [h0, t_inf] = p1.convective_data();
    const FrontBasis f = solve_basis(p1, cfg);
    const double two_sqrt_d_h0 = 2.0 * std::sqrt(p1.d()) * h0;
    const double t0 = two_sqrt_d_h0 * t_inf * f.m_odd / (p1.k() * f.m_even + two_sqrt_d_h0 * f.m_odd);
    require_derived_positive(t0, "t0");
    return p1.with_boundary(Temperature{t0});
}

ProblemSpec temperature_to_convective(const ProblemSpec& p2, double t_inf,
                                      const RootSolverConfig& cfg) {
    const double t0 = p2.temperature_data().t0;
    if (!(t_inf > t0)) {
        std::ostringstream os;
        os.precision(17);
        os << "temperature -> convective requires t_inf > t0 = " << t0 << ", got t_inf = " << t_inf;
        throw PreconditionError(os.str(), t0);
    }
    const FrontBasis f = solve_basis(p2, cfg);
    const double h0 = -p2.k() * t0 * f.m_even / (2.0 * std::sqrt(p2.d()) * (t0 - t_inf) * f.m_odd);
    require_derived_positive(h0, "h0");
    return p2.with_boundary(Convective{h0, t_inf});
}

ProblemSpec convective_to_flux(const ProblemSpec& p1, const RootSolverConfig& cfg) {
    const auto [h0, t_inf] = p1.convective_data();
    const FrontBasis f = solve_basis(p1, cfg);
    const double c =
        h0 * t_inf * f.m_even / (f.m_even + 2.0 * std::sqrt(p1.d()) * h0 / p1.k() * f.m_odd);
    require_derived_positive(c, "c");
    return p1.with_boundary(Flux{c});
}

double flux_to_convective_threshold(const ProblemSpec& p3, const RootSolverConfig& cfg) {
    const double c = p3.flux_data().c;
    const FrontBasis f = solve_basis(p3, cfg);
    return 2.0 * c * std::sqrt(p3.d()) / p3.k() * f.m_odd / f.m_even;
}

ProblemSpec flux_to_convective(const ProblemSpec& p3, double t_inf, const RootSolverConfig& cfg) {
    const double c = p3.flux_data().c;
    const FrontBasis f = solve_basis(p3, cfg);
    const double scaled_flux = 2.0 * c * std::sqrt(p3.d()) / p3.k();
    const double threshold = scaled_flux * f.m_odd / f.m_even;
    if (!(t_inf > threshold)) {
        std::ostringstream os;
        os.precision(17);
        os << "flux -> convective requires t_inf > " << threshold << ", got t_inf = " << t_inf;
        throw PreconditionError(os.str(), threshold);
    }
    const double h0 = -c * f.m_even / (scaled_flux * f.m_odd - t_inf * f.m_even);
    require_derived_positive(h0, "h0");
    return p3.with_boundary(Convective{h0, t_inf});
}

EquivalenceReport compare_problems(const ProblemSpec& source, const ProblemSpec& target, int n_x,
                                   int n_t, double t_min, double t_max,
                                   const RootSolverConfig& cfg) {
    if (n_x < 1 || n_t < 1 || !(t_min > 0.0) || !(t_max > t_min)) {
        throw InvalidSpec("comparison grid needs n_x, n_t >= 1 and 0 < t_min < t_max");
    }
    const SimilaritySolution a = solve_front(source, cfg);
    const SimilaritySolution b = solve_front(target, cfg);
    double gap = 0.0;
    double scale = 0.0;
    for (int j = 1; j <= n_t; ++j) {
        const double t = t_min + (t_max - t_min) * j / n_t;
        const double front = front_position(a, t);
        for (int i = 0; i < n_x; ++i) {
            const double x = front * (i + 0.5) / n_x;
            const double psi_a = temperature(a, x, t);
            gap = std::max(gap, std::abs(psi_a - temperature(b, x, t)));
            scale = std::max(scale, std::abs(psi_a));
        }
    }
    return EquivalenceReport{source, target, a.nu, b.nu, gap, scale};
}

}  // namespace kstefan
