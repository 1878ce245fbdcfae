#pragma once

namespace kstefan {

/// Parameters of the confluent hypergeometric function M(a, b, z).
/// b must not be zero or a negative integer.
struct KummerArgs {
    double a;
    double b;
    double z;
};

/// Kummer's function of the first kind,
///
///     M(a, b, z) = sum_s (a)_s / ((b)_s s!) z^s.
///
/// The series is only ever summed for z >= 0; negative arguments go through
/// M(a, b, z) = e^z M(b - a, b, -z), which removes the alternating-sign
/// cancellation. Overflow of the sum (z of several hundred) is returned as
/// +/-inf rather than thrown.
///
/// Throws DomainError for invalid b or non-finite input and ConvergenceError
/// if the series has not settled after 10000 terms.
double kummer_m(const KummerArgs& args);

inline constexpr int kKummerTermCap = 10000;

/// As above with an explicit cap on the number of series terms.
double kummer_m(const KummerArgs& args, int max_terms);

/// d/dz M(a, b, z) = (a / b) M(a + 1, b + 1, z).
double kummer_m_derivative(const KummerArgs& args);

/// Gamma function for x > 0 (Lanczos, g = 7, nine terms).
double gamma_fn(double x);

/// n-th iterated integral of erfc: i^0 erfc = erfc, i^n erfc(z) = int_z^inf i^{n-1} erfc.
double iterated_erfc(int n, double z);

/// E_n(z) = [i^n erfc(z) + i^n erfc(-z)] / 2.
double e_n(int n, double z);

/// F_n(z) = [i^n erfc(-z) - i^n erfc(z)] / 2.
double f_n(int n, double z);

}  // namespace kstefan
