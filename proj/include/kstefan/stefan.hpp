#pragma once

#include "kstefan/problem.hpp"

namespace kstefan {

/// Controls for the safeguarded Newton iteration on the front equation.
struct RootSolverConfig {
    double abs_step_tol = 1e-15;  ///< stop once |nu_{k+1} - nu_k| falls below this
    int max_newton_iters = 100;
    double bracket_growth = 2.0;
    double max_bracket = 1e3;

    void validate() const;
};

struct SolverReport {
    int iterations = 0;
    double residual = 0.0;   ///< F(nu) at the returned root
    double bracket_lo = 0.0;  ///< sign-change bracket in force at exit
    double bracket_hi = 0.0;
};

/// Closed-form similarity solution
///
///     Psi(x,t) = t^{alpha/2} [coeff_even M(-alpha/2, 1/2, -eta^2)
///                             + coeff_odd eta M(-alpha/2 + 1/2, 3/2, -eta^2)],
///     s(t)     = 2 nu sqrt(d t),          eta = x / (2 sqrt(d t)).
///
/// `nu` is the front coefficient of whichever boundary family `problem` carries.
struct SimilaritySolution {
    ProblemSpec problem;
    double nu;
    double coeff_even;
    double coeff_odd;
    SolverReport report;
};

/// Left-hand side of the front equation, lhs(x) = x^{alpha+1} at the root.
///
///   convective:  h0 t_inf / (gamma 2^alpha d^{(alpha+1)/2}) f1(x),
///       f1(x) = 1 / [M(alpha/2+1/2, 1/2, x^2) + 2 sqrt(d) h0/k x M(alpha/2+1, 3/2, x^2)]
///   temperature: k t0 / (2^{alpha+1} d^{alpha/2+1} gamma) f2(x),
///       f2(x) = 1 / [x M(alpha/2+1, 3/2, x^2)]
///   flux:        c / (gamma 2^alpha d^{(alpha+1)/2}) f3(x),
///       f3(x) = 1 / M(alpha/2+1/2, 1/2, x^2)
///
/// At x = 0 the convective and flux forms return their finite limits and the
/// temperature form returns +inf.
double front_equation_lhs(const ProblemSpec& problem, double x);

/// F(x) = lhs(x) - x^{alpha+1}; strictly decreasing with a single positive root.
double front_equation_residual(const ProblemSpec& problem, double x);

/// F'(x), analytic.
double residual_derivative(const ProblemSpec& problem, double x);

/// Solves F(nu) = 0 and fills the field coefficients.
///
/// Newton starts from the midpoint of a sign-change bracket found by growing
/// [1e-8, 1]; any step that leaves the bracket, or is not finite, is replaced
/// by bisection. Throws BracketError or ConvergenceError.
SimilaritySolution solve_front(const ProblemSpec& problem, const RootSolverConfig& cfg = {});

/// Field coefficients (coeff_even, coeff_odd) for a given front coefficient.
/// Throws InvariantViolation if M(-alpha/2, 1/2, -nu^2) is not positive.
struct FieldCoefficients {
    double even;
    double odd;
};
FieldCoefficients field_coefficients(const ProblemSpec& problem, double nu);

/// M(-alpha/2, 1/2, -eta^2)
double even_basis(double alpha, double eta);
/// eta M(-alpha/2 + 1/2, 3/2, -eta^2)
double odd_basis(double alpha, double eta);

/// Psi(x,t). Beyond the front the analytic continuation is returned, not 0.
double temperature(const SimilaritySolution& sol, double x, double t);

/// Psi_x(x,t) =
///   t^{(alpha-1)/2}/sqrt(d) [even alpha eta M(-alpha/2+1, 3/2, -eta^2)
///                            + odd/2 M(-alpha/2+1/2, 1/2, -eta^2)]
double temperature_flux(const SimilaritySolution& sol, double x, double t);

/// s(t) = 2 nu sqrt(d t)
double front_position(const SimilaritySolution& sol, double t);

/// Front velocity s'(t) = nu sqrt(d / t).
double front_velocity(const SimilaritySolution& sol, double t);

/// Temperature through iterated erfc (alpha = n integer, convective boundary):
///
///   Psi = -t^{n/2} 2^n h0 t_inf sqrt(d) G(n/2+1/2) G(n/2+1) [F_n(eta)E_n(nu) - F_n(nu)E_n(eta)]
///         / [k G(n/2+1) E_n(nu) + sqrt(d) h0 G(n/2+1/2) F_n(nu)]
///
/// Throws DomainError if alpha is not an integer, InvalidSpec for other boundaries.
double temperature_integer_alpha(const SimilaritySolution& sol, double x, double t);

/// Residual of the iterated-erfc front equation,
///
///   h0 t_inf / (gamma d^{(n+1)/2} 2^{2n} [G(n/2+1) E_n(x) + sqrt(d) h0/k G(n/2+1/2) F_n(x)])
///   - x^{n+1} e^{x^2}.
double front_equation_integer_alpha(const ProblemSpec& problem, double x);

}  // namespace kstefan
