#pragma once

#include <cmath>
#include <vector>

#include "kstefan/problem.hpp"
#include "support/oracles.hpp"

namespace fixtures {

/// The 30 convective specs used by the residual and root suites.
inline std::vector<kstefan::ProblemSpec> convective_grid() {
    std::vector<kstefan::ProblemSpec> out;
    for (double alpha : {0.0, 0.4, 1.0, 2.0, 5.5}) {
        for (double h0 : {0.1, 1.0, 10.0}) {
            for (double t_inf : {0.5, 1.0}) {
                out.push_back(kstefan::ProblemSpec::convective(alpha, h0, t_inf));
            }
        }
    }
    return out;
}

/// Baseline case: gamma = d = k = 1, alpha = 0.4, h0 = 0.5, t_inf = 1.
inline kstefan::ProblemSpec baseline_case() {
    return kstefan::ProblemSpec::convective(0.4, 0.5, 1.0);
}

/// Front residual written out from the series definition, sharing nothing
/// with the library. All series arguments are positive here so the direct
/// sum has no cancellation.
inline double front_residual(const kstefan::ProblemSpec& p, double x) {
    const long double a = p.alpha();
    const long double x2 = static_cast<long double>(x) * x;
    const long double scale_common = std::pow(2.0L, a) * std::pow(static_cast<long double>(p.d()), (a + 1) / 2) * p.gamma();
    long double lhs = 0.0L;
    switch (p.kind()) {
        case kstefan::BoundaryKind::convective: {
            const auto [h0, t_inf] = p.convective_data();
            const long double den = oracles::kummer_series_direct(a / 2 + 0.5L, 0.5L, x2) +
                                    2.0L * std::sqrt(static_cast<long double>(p.d())) * h0 / p.k() * x *
                                        oracles::kummer_series_direct(a / 2 + 1, 1.5L, x2);
            lhs = h0 * t_inf / scale_common / den;
            break;
        }
        case kstefan::BoundaryKind::temperature: {
            const long double den = x * oracles::kummer_series_direct(a / 2 + 1, 1.5L, x2);
            lhs = p.k() * p.temperature_data().t0 /
                  (std::pow(2.0L, a + 1) * std::pow(static_cast<long double>(p.d()), a / 2 + 1) * p.gamma()) / den;
            break;
        }
        case kstefan::BoundaryKind::flux: {
            lhs = p.flux_data().c / scale_common / oracles::kummer_series_direct(a / 2 + 0.5L, 0.5L, x2);
            break;
        }
    }
    return static_cast<double>(lhs - std::pow(static_cast<long double>(x), a + 1));
}

/// Root of front_residual by plain bisection.
inline double bisection_root(const kstefan::ProblemSpec& p) {
    double hi = 1.0;
    while (front_residual(p, hi) > 0.0) hi *= 2.0;
    return oracles::bisect([&](double x) { return front_residual(p, x); }, 1e-12, hi);
}

}  // namespace fixtures
