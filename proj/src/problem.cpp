#include "kstefan/problem.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "kstefan/errors.hpp"

namespace kstefan {
namespace {

void require_positive(double value, const char* name) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        std::ostringstream os;
        os.precision(17);
        os << name << " must be finite and > 0 (melting case), got " << value;
        throw InvalidSpec(os.str());
    }
}

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

std::string_view to_string(BoundaryKind kind) {
    switch (kind) {
        case BoundaryKind::convective: return "convective";
        case BoundaryKind::temperature: return "temperature";
        case BoundaryKind::flux: return "flux";
    }
    return "unknown";
}

ProblemSpec::ProblemSpec(double alpha, Material material, Boundary boundary)
    : alpha_(alpha), material_(material), boundary_(boundary) {
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
        std::ostringstream os;
        os << "alpha must be finite and >= 0, got " << alpha;
        throw InvalidSpec(os.str());
    }
    require_positive(material.gamma, "gamma");
    require_positive(material.d, "d");
    require_positive(material.k, "k");
    std::visit(Overloaded{
                   [](const Convective& b) {
                       require_positive(b.h0, "h0");
                       require_positive(b.t_inf, "t_inf");
                   },
                   [](const Temperature& b) { require_positive(b.t0, "t0"); },
                   [](const Flux& b) { require_positive(b.c, "c"); },
               },
               boundary_);
}

ProblemSpec ProblemSpec::convective(double alpha, double h0, double t_inf, Material material) {
    return {alpha, material, Convective{h0, t_inf}};
}

ProblemSpec ProblemSpec::temperature(double alpha, double t0, Material material) {
    return {alpha, material, Temperature{t0}};
}

ProblemSpec ProblemSpec::flux(double alpha, double c, Material material) {
    return {alpha, material, Flux{c}};
}

BoundaryKind ProblemSpec::kind() const noexcept {
    return static_cast<BoundaryKind>(boundary_.index());
}

const Convective& ProblemSpec::convective_data() const {
    if (const auto* b = std::get_if<Convective>(&boundary_)) return *b;
    throw InvalidSpec("expected a convective boundary, got " + std::string(to_string(kind())));
}

const Temperature& ProblemSpec::temperature_data() const {
    if (const auto* b = std::get_if<Temperature>(&boundary_)) return *b;
    throw InvalidSpec("expected a temperature boundary, got " + std::string(to_string(kind())));
}

const Flux& ProblemSpec::flux_data() const {
    if (const auto* b = std::get_if<Flux>(&boundary_)) return *b;
    throw InvalidSpec("expected a flux boundary, got " + std::string(to_string(kind())));
}

ProblemSpec ProblemSpec::with_boundary(Boundary boundary) const {
    return {alpha_, material_, boundary};
}

}  // namespace kstefan
