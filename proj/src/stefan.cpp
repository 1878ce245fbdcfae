#include "kstefan/stefan.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "kstefan/errors.hpp"
#include "kstefan/kummer.hpp"

namespace kstefan {
namespace {

// Scaled lhs = scale / denom(x); both the denominator and its x-derivative
// are Kummer combinations with non-negative argument x^2.
struct FrontTerms {
    double scale;
    double denom;
    double denom_derivative;
};

FrontTerms front_terms(const ProblemSpec& p, double x, bool with_derivative) {
    const double alpha = p.alpha();
    const double gamma = p.gamma();
    const double d = p.d();
    const double k = p.k();
    const double sqrt_d = std::sqrt(d);
    const double x2 = x * x;
    FrontTerms out{};

    switch (p.kind()) {
        case BoundaryKind::convective: {
            const auto [h0, t_inf] = p.convective_data();
            const double biot = 2.0 * sqrt_d * h0 / k;
            out.scale = h0 * t_inf / (gamma * std::pow(2.0, alpha) * std::pow(d, 0.5 * (alpha + 1.0)));
            out.denom = kummer_m({0.5 * alpha + 0.5, 0.5, x2}) +
                        biot * x * kummer_m({0.5 * alpha + 1.0, 1.5, x2});
            if (with_derivative) {
                out.denom_derivative =
                    2.0 * (alpha + 1.0) * x * kummer_m({0.5 * alpha + 1.5, 1.5, x2}) +
                    biot * kummer_m({0.5 * alpha + 1.0, 0.5, x2});
            }
            break;
        }
        case BoundaryKind::temperature: {
            const double t0 = p.temperature_data().t0;
            out.scale = k * t0 / (std::pow(2.0, alpha + 1.0) * std::pow(d, 0.5 * alpha + 1.0) * gamma);
            out.denom = x * kummer_m({0.5 * alpha + 1.0, 1.5, x2});
            if (with_derivative) out.denom_derivative = kummer_m({0.5 * alpha + 1.0, 0.5, x2});
            break;
        }
        case BoundaryKind::flux: {
            const double c = p.flux_data().c;
            out.scale = c / (gamma * std::pow(2.0, alpha) * std::pow(d, 0.5 * (alpha + 1.0)));
            out.denom = kummer_m({0.5 * alpha + 0.5, 0.5, x2});
            if (with_derivative) {
                out.denom_derivative =
                    2.0 * (alpha + 1.0) * x * kummer_m({0.5 * alpha + 1.5, 1.5, x2});
            }
            break;
        }
    }
    return out;
}

void require_nonnegative_x(double x, const char* what) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
        std::ostringstream os;
        os << what << " requires a finite x >= 0, got " << x;
        throw DomainError(os.str());
    }
}

void require_positive_t(double t, const char* what) {
    if (!(t > 0.0) || !std::isfinite(t)) {
        std::ostringstream os;
        os << what << " requires a finite t > 0, got " << t;
        throw DomainError(os.str());
    }
}

int integer_exponent(double alpha) {
    if (alpha != std::floor(alpha) || alpha > 64.0) {
        std::ostringstream os;
        os << "iterated-erfc form requires an integer alpha in [0, 64], got " << alpha;
        throw DomainError(os.str());
    }
    return static_cast<int>(alpha);
}

double similarity_variable(const ProblemSpec& p, double x, double t) {
    return x / (2.0 * std::sqrt(p.d() * t));
}

}  // namespace

void RootSolverConfig::validate() const {
    if (!(abs_step_tol > 0.0) || max_newton_iters <= 0 || !(bracket_growth > 1.0) ||
        !(max_bracket > 1.0)) {
        throw InvalidSpec("root solver config: tolerances and caps must be positive, growth > 1");
    }
}

double front_equation_lhs(const ProblemSpec& problem, double x) {
    require_nonnegative_x(x, "front_equation_lhs");
    const FrontTerms terms = front_terms(problem, x, false);
    if (terms.denom == 0.0) return std::numeric_limits<double>::infinity();
    return terms.scale / terms.denom;
}

double front_equation_residual(const ProblemSpec& problem, double x) {
    return front_equation_lhs(problem, x) - std::pow(x, problem.alpha() + 1.0);
}

double residual_derivative(const ProblemSpec& problem, double x) {
    require_nonnegative_x(x, "residual_derivative");
    const double alpha = problem.alpha();
    const double power_term = (alpha + 1.0) * std::pow(x, alpha);
    const FrontTerms terms = front_terms(problem, x, true);
    if (!std::isfinite(terms.denom)) return -power_term;  // lhs has decayed to 0
    const double lhs = terms.scale / terms.denom;
    return -lhs * (terms.denom_derivative / terms.denom) - power_term;
}

double even_basis(double alpha, double eta) {
    return kummer_m({-0.5 * alpha, 0.5, -eta * eta});
}

double odd_basis(double alpha, double eta) {
    return eta * kummer_m({-0.5 * alpha + 0.5, 1.5, -eta * eta});
}

FieldCoefficients field_coefficients(const ProblemSpec& p, double nu) {
    const double alpha = p.alpha();
    const double sqrt_d = std::sqrt(p.d());
    const double k = p.k();
    const double m_even = even_basis(alpha, nu);
    const double m_odd = odd_basis(alpha, nu);  // nu M(-alpha/2+1/2, 3/2, -nu^2)
    if (!(m_even > 0.0) || !std::isfinite(m_even) || !std::isfinite(m_odd)) {
        std::ostringstream os;
        os.precision(17);
        os << "M(-alpha/2, 1/2, -nu^2) must be positive at the front, got " << m_even
           << " (alpha=" << alpha << ", nu=" << nu << ")";
        throw InvariantViolation(os.str());
    }

    FieldCoefficients c{};
    switch (p.kind()) {
        case BoundaryKind::convective: {
            const auto [h0, t_inf] = p.convective_data();
            c.odd = -2.0 * h0 * sqrt_d * t_inf * m_even / (k * m_even + 2.0 * sqrt_d * h0 * m_odd);
            c.even = -m_odd / m_even * c.odd;
            break;
        }
        case BoundaryKind::temperature: {
            c.even = p.temperature_data().t0;
            c.odd = -c.even * m_even / m_odd;
            break;
        }
        case BoundaryKind::flux: {
            c.odd = -2.0 * p.flux_data().c * sqrt_d / k;
            c.even = -m_odd / m_even * c.odd;
            break;
        }
    }
    return c;
}

SimilaritySolution solve_front(const ProblemSpec& problem, const RootSolverConfig& cfg) {
    cfg.validate();
    const double alpha = problem.alpha();
    auto residual = [&](double x) { return front_equation_residual(problem, x); };

    double lo = 1e-8;
    double hi = 1.0;
    double f_lo = residual(lo);
    while (!(f_lo > 0.0)) {
        lo /= cfg.bracket_growth;
        if (lo < 1e-300) throw BracketError("front residual is not positive near x = 0");
        f_lo = residual(lo);
    }
    double f_hi = residual(hi);
    while (f_hi > 0.0) {
        lo = hi;
        hi *= cfg.bracket_growth;
        if (hi > cfg.max_bracket) {
            std::ostringstream os;
            os << "no sign change of the front residual below x = " << cfg.max_bracket;
            throw BracketError(os.str());
        }
        f_hi = residual(hi);
    }

    double x = 0.5 * (lo + hi);
    int iterations = 0;
    bool converged = false;
    bool arrived_by_newton = false;
    while (iterations < cfg.max_newton_iters) {
        ++iterations;
        const double fx = residual(x);
        if (fx == 0.0) {
            lo = hi = x;
            converged = true;
            break;
        }
        if (fx > 0.0) {
            lo = x;
        } else {
            hi = x;
        }
        // Judge the iterate a Newton step produced before proposing another:
        // one-sided convergence otherwise lands the next step on the bracket
        // edge and falls back to bisection.
        const double lhs = fx + std::pow(x, alpha + 1.0);
        if (iterations >= 2 && arrived_by_newton &&
            std::abs(fx) <= 1e-12 * std::max(1.0, std::abs(lhs))) {
            // A last correction costs one derivative and turns a small
            // residual into a root accurate to rounding when F' is small.
            const double polished = x - fx / residual_derivative(problem, x);
            if (std::isfinite(polished) && polished >= lo && polished <= hi) x = polished;
            converged = true;
            break;
        }

        const double newton = x - fx / residual_derivative(problem, x);
        if (iterations >= 2 && std::isfinite(newton) && std::abs(newton - x) < cfg.abs_step_tol) {
            converged = true;
            break;
        }
        double next = newton;
        arrived_by_newton = true;
        if (!std::isfinite(next) || next <= lo || next >= hi) {
            next = 0.5 * (lo + hi);
            arrived_by_newton = false;
        }
        const double step = std::abs(next - x);
        const bool bracket_collapsed = hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi;
        x = next;
        if (iterations >= 2 && (step < cfg.abs_step_tol || bracket_collapsed)) {
            converged = true;
            break;
        }
    }
    if (!converged) {
        std::ostringstream os;
        os << "Newton iteration did not converge in " << cfg.max_newton_iters << " steps";
        throw ConvergenceError(os.str());
    }

    const FieldCoefficients coeffs = field_coefficients(problem, x);
    SolverReport report{iterations, residual(x), lo, hi};
    return SimilaritySolution{problem, x, coeffs.even, coeffs.odd, report};
}

double temperature(const SimilaritySolution& sol, double x, double t) {
    require_nonnegative_x(x, "temperature");
    require_positive_t(t, "temperature");
    const double alpha = sol.problem.alpha();
    const double eta = similarity_variable(sol.problem, x, t);
    return std::pow(t, 0.5 * alpha) *
           (sol.coeff_even * even_basis(alpha, eta) + sol.coeff_odd * odd_basis(alpha, eta));
}

double temperature_flux(const SimilaritySolution& sol, double x, double t) {
    require_nonnegative_x(x, "temperature_flux");
    require_positive_t(t, "temperature_flux");
    const double alpha = sol.problem.alpha();
    const double eta = similarity_variable(sol.problem, x, t);
    const double z = -eta * eta;
    const double even_part =
        alpha == 0.0 ? 0.0 : sol.coeff_even * alpha * eta * kummer_m({-0.5 * alpha + 1.0, 1.5, z});
    const double odd_part = 0.5 * sol.coeff_odd * kummer_m({-0.5 * alpha + 0.5, 0.5, z});
    return std::pow(t, 0.5 * (alpha - 1.0)) / std::sqrt(sol.problem.d()) * (even_part + odd_part);
}

double front_position(const SimilaritySolution& sol, double t) {
    if (!(t >= 0.0)) throw DomainError("front_position requires t >= 0");
    return 2.0 * sol.nu * std::sqrt(sol.problem.d() * t);
}

double front_velocity(const SimilaritySolution& sol, double t) {
    require_positive_t(t, "front_velocity");
    return sol.nu * std::sqrt(sol.problem.d() / t);
}

double temperature_integer_alpha(const SimilaritySolution& sol, double x, double t) {
    const int n = integer_exponent(sol.problem.alpha());
    require_nonnegative_x(x, "temperature_integer_alpha");
    require_positive_t(t, "temperature_integer_alpha");
    const auto [h0, t_inf] = sol.problem.convective_data();
    const double sqrt_d = std::sqrt(sol.problem.d());
    const double k = sol.problem.k();
    const double eta = similarity_variable(sol.problem, x, t);
    const double nu = sol.nu;

    const double g_half = gamma_fn(0.5 * n + 0.5);
    const double g_one = gamma_fn(0.5 * n + 1.0);
    const double e_nu = e_n(n, nu);
    const double f_nu = f_n(n, nu);
    const double bracket = f_n(n, eta) * e_nu - f_nu * e_n(n, eta);
    const double numerator =
        -std::pow(t, 0.5 * n) * std::ldexp(1.0, n) * h0 * t_inf * sqrt_d * g_half * g_one * bracket;
    return numerator / (k * g_one * e_nu + sqrt_d * h0 * g_half * f_nu);
}

double front_equation_integer_alpha(const ProblemSpec& problem, double x) {
    const int n = integer_exponent(problem.alpha());
    require_nonnegative_x(x, "front_equation_integer_alpha");
    const auto [h0, t_inf] = problem.convective_data();
    const double d = problem.d();
    const double denom = problem.gamma() * std::pow(d, 0.5 * (n + 1)) * std::ldexp(1.0, 2 * n) *
                         (gamma_fn(0.5 * n + 1.0) * e_n(n, x) +
                          std::sqrt(d) * h0 / problem.k() * gamma_fn(0.5 * n + 0.5) * f_n(n, x));
    return h0 * t_inf / denom - std::pow(x, n + 1) * std::exp(x * x);
}

}  // namespace kstefan
