#include "kstefan/kummer.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "kstefan/errors.hpp"

namespace kstefan {
namespace {

constexpr long double kSeriesRelTol = 1e-18L;
constexpr int kSeriesSettleTerms = 3;

bool is_non_positive_integer(double b) {
    return b <= 0.0 && std::floor(b) == b;
}

std::string describe(const KummerArgs& args) {
    std::ostringstream os;
    os.precision(17);
    os << "M(" << args.a << ", " << args.b << ", " << args.z << ")";
    return os.str();
}

// Extended-precision sum of the defining series. With z >= 0 every term past
// the first |a| has the same sign; the wider accumulator absorbs the
// cancellation among those first terms when a < 0.
double sum_series(double a, double b, double z, int term_cap) {
    const long double al = a;
    const long double bl = b;
    const long double zl = z;
    long double sum = 1.0L;
    long double term = 1.0L;
    int settled = 0;
    for (int s = 0;; ++s) {
        if (s >= term_cap) {
            throw ConvergenceError("Kummer series did not converge for " +
                                   describe({a, b, z}));
        }
        term *= (al + s) / ((bl + s) * (s + 1.0L)) * zl;
        if (term == 0.0L) break;  // a is a non-positive integer: polynomial
        sum += term;
        if (!std::isfinite(static_cast<double>(sum))) return static_cast<double>(sum);

        // Only count small terms once the tail is monotonically decaying.
        const long double next_ratio = std::abs((al + s + 1) / ((bl + s + 1) * (s + 2.0L)) * zl);
        const bool small = std::abs(term) <= kSeriesRelTol * std::abs(sum);
        if (small && s + 1 >= std::abs(a) && next_ratio < 1.0L) {
            if (++settled >= kSeriesSettleTerms) break;
        } else {
            settled = 0;
        }
    }
    return static_cast<double>(sum);
}

// Lanczos coefficients for g = 7, n = 9 (Godfrey).
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7,
};

// i^{-1} erfc(z) = (2 / sqrt(pi)) exp(-z^2) seeds the upward recurrence.
double iterated_erfc_forward(int n, double z) {
    double prev = 2.0 * std::numbers::inv_sqrtpi * std::exp(-z * z);
    double cur = std::erfc(z);
    for (int k = 1; k <= n; ++k) {
        const double next = -(z / k) * cur + prev / (2.0 * k);
        prev = cur;
        cur = next;
    }
    return cur;
}

// Miller's algorithm: run i^{k-2} = 2k i^k + 2z i^{k-1} downward from an
// arbitrary start at order `top`, then normalize with i^0 erfc = erfc(z).
double iterated_erfc_backward(int n, double z, int top) {
    double upper = 0.0;  // order k
    double lower = 1.0;  // order k - 1
    double at_n = (top == n) ? lower : 0.0;
    for (int k = top + 1; k >= 2; --k) {
        const double next = 2.0 * k * upper + 2.0 * z * lower;  // order k - 2
        upper = lower;
        lower = next;
        if (k - 2 == n) at_n = lower;
        if (std::abs(lower) > 1e250) {
            upper *= 1e-250;
            lower *= 1e-250;
            at_n *= 1e-250;
        }
    }
    return at_n / lower * std::erfc(z);
}

}  // namespace

double kummer_m(const KummerArgs& args) {
    return kummer_m(args, kKummerTermCap);
}

double kummer_m(const KummerArgs& args, int max_terms) {
    const auto [a, b, z] = args;
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(z)) {
        throw DomainError("non-finite argument in " + describe(args));
    }
    if (is_non_positive_integer(b)) {
        throw DomainError("b must not be a non-positive integer in " + describe(args));
    }
    if (z < 0.0) {
        return std::exp(z) * sum_series(b - a, b, -z, max_terms);
    }
    return sum_series(a, b, z, max_terms);
}

double kummer_m_derivative(const KummerArgs& args) {
    if (is_non_positive_integer(args.b) || is_non_positive_integer(args.b + 1.0)) {
        throw DomainError("b must not be a non-positive integer in " + describe(args));
    }
    if (args.a == 0.0) return 0.0;
    return args.a / args.b * kummer_m({args.a + 1.0, args.b + 1.0, args.z});
}

double gamma_fn(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        std::ostringstream os;
        os << "gamma_fn requires a finite positive argument, got " << x;
        throw DomainError(os.str());
    }
    if (x < 0.5) return gamma_fn(x + 1.0) / x;

    const double y = x - 1.0;
    double series = kLanczos[0];
    for (std::size_t i = 1; i < kLanczos.size(); ++i) {
        series += kLanczos[i] / (y + static_cast<double>(i));
    }
    const double t = y + kLanczosG + 0.5;
    // t^(y+1/2) split in two to delay overflow near x = 171.
    const double half_power = std::pow(t, 0.5 * (y + 0.5));
    return std::sqrt(2.0 * std::numbers::pi) * half_power * (half_power * std::exp(-t)) * series;
}

double iterated_erfc(int n, double z) {
    if (n < 0) {
        throw DomainError("iterated_erfc requires n >= 0, got " + std::to_string(n));
    }
    if (!std::isfinite(z)) throw DomainError("iterated_erfc requires a finite argument");
    if (n == 0) return std::erfc(z);
    // The upward recurrence only loses accuracy when i^n erfc(z) is the
    // recessive solution, i.e. for z > 0; mildly so below z = 1.
    if (z <= 1.0) return iterated_erfc_forward(n, z);
    if (std::erfc(z) == 0.0) return 0.0;

    int top = n + 40;
    double value = iterated_erfc_backward(n, z, top);
    for (int round = 0; round < 12; ++round) {
        top *= 2;
        const double refined = iterated_erfc_backward(n, z, top);
        if (std::abs(refined - value) <= 1e-15 * std::abs(refined)) return refined;
        value = refined;
    }
    throw ConvergenceError("backward recurrence for iterated erfc did not settle");
}

double e_n(int n, double z) {
    return 0.5 * (iterated_erfc(n, z) + iterated_erfc(n, -z));
}

double f_n(int n, double z) {
    return 0.5 * (iterated_erfc(n, -z) - iterated_erfc(n, z));
}

}  // namespace kstefan
