#pragma once

#include <string_view>
#include <variant>

namespace kstefan {

/// Bulk material data. The defaults are the normalized set used throughout
/// the examples and the CLI.
struct Material {
    double gamma = 1.0;  ///< latent-heat coefficient, latent heat per volume is gamma * x^alpha
    double d = 1.0;      ///< thermal diffusivity
    double k = 1.0;      ///< thermal conductivity
};

/// k Psi_x(0,t) = h0 t^{-1/2} [Psi(0,t) - t_inf t^{alpha/2}]
struct Convective {
    double h0;
    double t_inf;
};

/// Psi(0,t) = t0 t^{alpha/2}. With t0 = t_inf this is also the h0 -> inf limit problem.
struct Temperature {
    double t0;
};

/// k Psi_x(0,t) = -c t^{(alpha-1)/2}
struct Flux {
    double c;
};

using Boundary = std::variant<Convective, Temperature, Flux>;

enum class BoundaryKind { convective, temperature, flux };

std::string_view to_string(BoundaryKind kind);

/// Physical data of a one-phase melting problem with latent heat gamma x^alpha.
///
/// Construction validates the melting-case positivity constraints and throws
/// InvalidSpec otherwise. Freezing (gamma < 0, t_inf < 0) is rejected; it maps
/// onto melting by flipping the sign of the temperature data and gamma.
class ProblemSpec {
public:
    ProblemSpec(double alpha, Material material, Boundary boundary);

    static ProblemSpec convective(double alpha, double h0, double t_inf, Material material = {});
    static ProblemSpec temperature(double alpha, double t0, Material material = {});
    static ProblemSpec flux(double alpha, double c, Material material = {});

    double alpha() const noexcept { return alpha_; }
    const Material& material() const noexcept { return material_; }
    double gamma() const noexcept { return material_.gamma; }
    double d() const noexcept { return material_.d; }
    double k() const noexcept { return material_.k; }

    const Boundary& boundary() const noexcept { return boundary_; }
    BoundaryKind kind() const noexcept;

    /// Boundary datum of a given family; throws InvalidSpec on a family mismatch.
    const Convective& convective_data() const;
    const Temperature& temperature_data() const;
    const Flux& flux_data() const;

    /// Same material and exponent, different boundary condition.
    ProblemSpec with_boundary(Boundary boundary) const;

    bool operator==(const ProblemSpec&) const = default;

private:
    double alpha_;
    Material material_;
    Boundary boundary_;
};

inline bool operator==(const Convective& l, const Convective& r) {
    return l.h0 == r.h0 && l.t_inf == r.t_inf;
}
inline bool operator==(const Temperature& l, const Temperature& r) { return l.t0 == r.t0; }
inline bool operator==(const Flux& l, const Flux& r) { return l.c == r.c; }
inline bool operator==(const Material& l, const Material& r) {
    return l.gamma == r.gamma && l.d == r.d && l.k == r.k;
}

}  // namespace kstefan
