#include "kstefan/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "kstefan/equivalence.hpp"
#include "kstefan/errors.hpp"
#include "kstefan/limits.hpp"
#include "kstefan/oracle.hpp"
#include "kstefan/stefan.hpp"

namespace kstefan::cli {
namespace {

using Value = std::variant<double, long long, std::string, bool>;
using Record = std::vector<std::pair<std::string, Value>>;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    std::optional<double> alpha;
    std::optional<double> gamma;
    std::optional<double> d;
    std::optional<double> k;
    std::optional<double> h0;
    std::optional<double> tinf;
    std::optional<double> t0;
    std::optional<double> c;
    std::string out;
    std::string format;
    std::string vary;
    std::vector<double> values;
    bool include_limit = false;
    double xmax = 1.0;
    double tmax = 1.0;
    int nx = 50;
    int nt = 50;
    int nx_oracle = 2000;
    double t_end = 1.0;
    double tol = 1e-2;
    double field_tol = 2e-2;
    std::optional<double> domain_length;
    bool cold_start = false;
    std::string to;
};

// -- output ----------------------------------------------------------------

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void require_finite(const Record& r) {
    for (const auto& [key, value] : r) {
        if (const double* v = std::get_if<double>(&value); v && !std::isfinite(*v)) {
            throw ConvergenceError("non-finite value for '" + key + "'");
        }
    }
}

std::string csv_cell(const Value& v) {
    return std::visit(
        [](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, double>) {
                return format_number(x);
            } else if constexpr (std::is_same_v<T, long long>) {
                return std::to_string(x);
            } else if constexpr (std::is_same_v<T, bool>) {
                return x ? "1" : "0";
            } else {
                return x;
            }
        },
        v);
}

nlohmann::ordered_json to_json(const Record& r) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [key, value] : r) {
        std::visit([&](const auto& x) { j[key] = x; }, value);
    }
    return j;
}

std::string render(const std::vector<Record>& rows, const std::string& format, bool single) {
    for (const auto& r : rows) require_finite(r);
    std::ostringstream os;
    if (format == "json") {
        if (single) {
            os << to_json(rows.front()).dump(2) << '\n';
        } else {
            nlohmann::ordered_json arr = nlohmann::ordered_json::array();
            for (const auto& r : rows) arr.push_back(to_json(r));
            os << arr.dump(2) << '\n';
        }
        return os.str();
    }
    if (rows.empty()) return {};
    for (std::size_t i = 0; i < rows.front().size(); ++i) {
        os << (i ? "," : "") << rows.front()[i].first;
    }
    os << '\n';
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_cell(r[i].second);
        os << '\n';
    }
    return os.str();
}

void emit(const Options& opt, std::ostream& out, const std::string& text) {
    if (opt.out.empty()) {
        out << text;
        return;
    }
    std::ofstream file(opt.out, std::ios::binary | std::ios::trunc);
    if (!file) throw UsageError("cannot open output file '" + opt.out + "'");
    file << text;
    if (!file) throw UsageError("failed writing output file '" + opt.out + "'");
}

void write_error(std::ostream& err, const std::string& kind, const std::string& message,
                 std::optional<double> threshold = std::nullopt) {
    nlohmann::ordered_json j;
    j["error"] = kind;
    j["message"] = message;
    if (threshold) j["threshold"] = *threshold;
    err << j.dump() << '\n';
}

// -- problem assembly --------------------------------------------------------

Material material_from(const Options& opt) {
    return Material{opt.gamma.value_or(1.0), opt.d.value_or(1.0), opt.k.value_or(1.0)};
}

ProblemSpec problem_from(const Options& opt) {
    const int given = (opt.h0 ? 1 : 0) + (opt.t0 ? 1 : 0) + (opt.c ? 1 : 0);
    if (given == 0) {
        throw UsageError("missing boundary datum: give --h0 with --tinf, --t0, or --c");
    }
    if (given > 1) throw UsageError("give exactly one of --h0, --t0, --c");
    const double alpha = opt.alpha.value_or(0.0);
    const Material m = material_from(opt);
    if (opt.h0) {
        if (!opt.tinf) throw UsageError("missing boundary datum: --h0 needs --tinf");
        return ProblemSpec::convective(alpha, *opt.h0, *opt.tinf, m);
    }
    if (opt.t0) return ProblemSpec::temperature(alpha, *opt.t0, m);
    return ProblemSpec::flux(alpha, *opt.c, m);
}

void append_spec(Record& r, const std::string& prefix, const ProblemSpec& p) {
    r.emplace_back(prefix + "boundary", std::string(to_string(p.kind())));
    r.emplace_back(prefix + "alpha", p.alpha());
    r.emplace_back(prefix + "gamma", p.gamma());
    r.emplace_back(prefix + "d", p.d());
    r.emplace_back(prefix + "k", p.k());
    switch (p.kind()) {
        case BoundaryKind::convective:
            r.emplace_back(prefix + "h0", p.convective_data().h0);
            r.emplace_back(prefix + "tinf", p.convective_data().t_inf);
            break;
        case BoundaryKind::temperature:
            r.emplace_back(prefix + "t0", p.temperature_data().t0);
            break;
        case BoundaryKind::flux:
            r.emplace_back(prefix + "c", p.flux_data().c);
            break;
    }
}

// -- commands ----------------------------------------------------------------

int cmd_solve(const Options& opt, std::ostream& out) {
    const SimilaritySolution sol = solve_front(problem_from(opt));
    Record r;
    append_spec(r, "", sol.problem);
    r.emplace_back("nu", sol.nu);
    r.emplace_back("coeff_even", sol.coeff_even);
    r.emplace_back("coeff_odd", sol.coeff_odd);
    r.emplace_back("iterations", static_cast<long long>(sol.report.iterations));
    r.emplace_back("residual", sol.report.residual);
    emit(opt, out, render({r}, opt.format.empty() ? "json" : opt.format, true));
    return kOk;
}

int cmd_sweep(const Options& opt, std::ostream& out) {
    if (opt.values.empty()) throw UsageError("sweep needs a non-empty --values list");
    const std::string vary = opt.vary == "tinf" ? "t_inf" : opt.vary;
    if (vary != "h0" && vary != "t_inf" && vary != "alpha") {
        throw UsageError("--vary must be one of h0, t_inf, alpha");
    }
    for (std::size_t i = 0; i < opt.values.size(); ++i) {
        const double v = opt.values[i];
        const bool sign_ok = vary == "alpha" ? v >= 0.0 : v > 0.0;
        if (!sign_ok || !std::isfinite(v) || (i > 0 && !(v > opt.values[i - 1]))) {
            throw UsageError("--values must be positive and strictly ascending");
        }
    }

    Options fixed = opt;
    if (vary == "h0") {
        if (!fixed.tinf) throw UsageError("sweeping h0 needs --tinf");
        fixed.h0 = opt.values.front();
    } else if (vary == "t_inf") {
        if (!fixed.h0 && !fixed.t0 && !fixed.c) fixed.h0 = 1.0;
        fixed.tinf = opt.values.front();
    }
    const ProblemSpec base = problem_from(fixed);
    if (opt.include_limit && base.kind() != BoundaryKind::convective) {
        throw UsageError("--include-limit needs a convective problem (--h0/--tinf)");
    }

    std::vector<Record> rows;
    for (double v : opt.values) {
        ProblemSpec p = base;
        if (vary == "h0") {
            p = base.with_boundary(Convective{v, base.convective_data().t_inf});
        } else if (vary == "t_inf") {
            if (base.kind() != BoundaryKind::convective) {
                throw UsageError("sweeping t_inf needs a convective problem");
            }
            p = base.with_boundary(Convective{base.convective_data().h0, v});
        } else {
            p = ProblemSpec(v, base.material(), base.boundary());
        }
        Record r{{"param", v}, {"nu", solve_front(p).nu}};
        if (opt.include_limit) r.emplace_back("nu_infinity", solve_front(limit_problem(p)).nu);
        rows.push_back(std::move(r));
    }
    emit(opt, out, render(rows, opt.format.empty() ? "csv" : opt.format, false));
    return kOk;
}

int cmd_field(const Options& opt, std::ostream& out) {
    if (opt.nx < 2 || opt.nt < 1 || !(opt.xmax > 0.0) || !(opt.tmax > 0.0)) {
        throw UsageError("field grid needs --nx >= 2, --nt >= 1, --xmax > 0, --tmax > 0");
    }
    const SimilaritySolution sol = solve_front(problem_from(opt));
    std::vector<Record> rows;
    rows.reserve(static_cast<std::size_t>(opt.nx) * opt.nt);
    for (int i = 0; i < opt.nx; ++i) {
        const double x = opt.xmax * i / (opt.nx - 1);
        for (int j = 1; j <= opt.nt; ++j) {
            const double t = opt.tmax * j / opt.nt;
            const double s = front_position(sol, t);
            const bool melted = x < s;
            rows.push_back(Record{{"x", x},
                                  {"t", t},
                                  {"psi", melted ? temperature(sol, x, t) : 0.0},
                                  {"s_of_t", s},
                                  {"melted_flag", static_cast<long long>(melted ? 1 : 0)}});
        }
    }
    emit(opt, out, render(rows, opt.format.empty() ? "csv" : opt.format, false));
    return kOk;
}

int cmd_equiv(const Options& opt, std::ostream& out) {
    const ProblemSpec source = problem_from(opt);
    const std::string& to = opt.to;
    std::optional<ProblemSpec> target;
    std::optional<ProblemSpec> back;

    if (source.kind() == BoundaryKind::convective && to == "temperature") {
        target = convective_to_temperature(source);
        back = temperature_to_convective(*target, source.convective_data().t_inf);
    } else if (source.kind() == BoundaryKind::convective && to == "flux") {
        target = convective_to_flux(source);
        back = flux_to_convective(*target, source.convective_data().t_inf);
    } else if (source.kind() == BoundaryKind::temperature && to == "convective") {
        if (!opt.tinf) throw UsageError("temperature -> convective needs --tinf");
        target = temperature_to_convective(source, *opt.tinf);
    } else if (source.kind() == BoundaryKind::flux && to == "convective") {
        if (!opt.tinf) throw UsageError("flux -> convective needs --tinf");
        target = flux_to_convective(source, *opt.tinf);
    } else {
        throw UsageError("unsupported conversion " + std::string(to_string(source.kind())) +
                         " -> '" + to + "' (use --to temperature|flux from a convective problem, "
                         "or --to convective from a temperature or flux problem)");
    }

    const EquivalenceReport rep = compare_problems(source, *target);
    Record r;
    append_spec(r, "source_", rep.source_spec);
    append_spec(r, "target_", rep.target_spec);
    r.emplace_back("nu_source", rep.nu_source);
    r.emplace_back("nu_target", rep.nu_target);
    r.emplace_back("nu_gap", std::abs(rep.nu_source - rep.nu_target));
    r.emplace_back("max_temperature_gap", rep.max_temperature_gap);
    r.emplace_back("max_temperature", rep.max_temperature);
    if (back) {
        const double h0 = source.convective_data().h0;
        r.emplace_back("round_trip_h0", back->convective_data().h0);
        r.emplace_back("round_trip_h0_rel_err", std::abs(back->convective_data().h0 - h0) / h0);
    }
    emit(opt, out, render({r}, opt.format.empty() ? "json" : opt.format, true));
    return kOk;
}

int cmd_verify(const Options& opt, std::ostream& out) {
    const ProblemSpec problem = problem_from(opt);
    const SimilaritySolution sol = solve_front(problem);
    OracleConfig cfg;
    cfg.nx = opt.nx_oracle;
    cfg.t_end = opt.t_end;
    cfg.cold_start = opt.cold_start;
    // An unmelted slab is only a good initial state very close to t = 0.
    if (opt.cold_start) cfg.t_start = 1e-6 * opt.t_end;
    cfg.domain_length = opt.domain_length.value_or(suggested_domain_length(sol, opt.t_end));
    try {
        cfg.validate();
    } catch (const InvalidSpec& e) {
        throw UsageError(e.what());
    }
    const OracleResult result = run_oracle(problem, cfg);
    const ComparisonReport cmp = compare_to_closed_form(result, sol, 0.1 * opt.t_end);
    const bool passed = cmp.max_front_err <= opt.tol && cmp.max_field_err <= opt.field_tol;

    Record r;
    append_spec(r, "", problem);
    r.emplace_back("nu", sol.nu);
    r.emplace_back("nx", static_cast<long long>(cfg.nx));
    r.emplace_back("domain_length", cfg.domain_length);
    r.emplace_back("t_end", cfg.t_end);
    r.emplace_back("steps", static_cast<long long>(result.steps));
    r.emplace_back("max_front_err", cmp.max_front_err);
    r.emplace_back("max_field_err", cmp.max_field_err);
    r.emplace_back("energy_balance_drift", result.energy_balance_drift);
    r.emplace_back("tol", opt.tol);
    r.emplace_back("field_tol", opt.field_tol);
    r.emplace_back("passed", passed);
    emit(opt, out, render({r}, opt.format.empty() ? "json" : opt.format, true));
    return passed ? kOk : kVerificationFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Similarity solutions of one-phase Stefan problems with latent heat gamma x^alpha"};
    app.fallthrough();
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value config file (flags win over its entries)")
        ->envname(kConfigEnvVar);

    Options opt;
    app.add_option("--alpha", opt.alpha, "latent heat exponent (default 0)");
    app.add_option("--gamma", opt.gamma, "latent heat coefficient (default 1)");
    app.add_option("--d", opt.d, "diffusivity (default 1)");
    app.add_option("--k", opt.k, "conductivity (default 1)");
    app.add_option("--h0", opt.h0, "convective transfer coefficient");
    app.add_option("--tinf", opt.tinf, "bulk temperature coefficient");
    app.add_option("--t0", opt.t0, "boundary temperature coefficient");
    app.add_option("--c", opt.c, "boundary flux coefficient");
    app.add_option("--out", opt.out, "output file (default stdout)");
    app.add_option("--format", opt.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--vary", opt.vary, "sweep parameter: h0, t_inf or alpha");
    app.add_option("--values", opt.values, "ascending sweep values")->delimiter(',');
    app.add_flag("--include-limit", opt.include_limit, "add the h0 -> inf coefficient column");
    app.add_option("--xmax", opt.xmax, "field grid: largest x");
    app.add_option("--tmax", opt.tmax, "field grid: largest t");
    app.add_option("--nx", opt.nx, "field grid: points in x");
    app.add_option("--nt", opt.nt, "field grid: points in t");
    app.add_option("--nx-oracle", opt.nx_oracle, "verify: finite-difference cells");
    app.add_option("--t-end", opt.t_end, "verify: final time");
    app.add_option("--tol", opt.tol, "verify: front error tolerance");
    app.add_option("--field-tol", opt.field_tol, "verify: temperature error tolerance");
    app.add_option("--domain-length", opt.domain_length, "verify: slab length (default 4 s(t_end))");
    app.add_flag("--cold-start", opt.cold_start, "verify: start the oracle from an unmelted slab at 1e-6 t_end");
    app.add_option("--to", opt.to, "equiv: target family (temperature, flux, convective)");

    auto* solve = app.add_subcommand("solve", "front coefficient and field coefficients (JSON)");
    auto* sweep = app.add_subcommand("sweep", "front coefficient over a parameter grid (CSV)");
    auto* field = app.add_subcommand("field", "temperature on an (x, t) grid (CSV)");
    auto* equiv = app.add_subcommand("equiv", "map a problem onto an equivalent boundary family");
    auto* verify = app.add_subcommand("verify", "cross-check against the finite-difference oracle");

    std::vector<std::string> storage(args);
    if (storage.empty()) storage.emplace_back("stefan_kummer");
    std::vector<char*> argv;
    for (auto& a : storage) argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        write_error(err, "usage", e.what());
        return kUsageError;
    }

    try {
        if (solve->parsed()) return cmd_solve(opt, out);
        if (sweep->parsed()) return cmd_sweep(opt, out);
        if (field->parsed()) return cmd_field(opt, out);
        if (equiv->parsed()) return cmd_equiv(opt, out);
        if (verify->parsed()) return cmd_verify(opt, out);
        write_error(err, "usage", "no command given");
        return kUsageError;
    } catch (const UsageError& e) {
        write_error(err, "usage", e.what());
        return kUsageError;
    } catch (const PreconditionError& e) {
        write_error(err, "precondition", e.what(), e.threshold());
        return kUsageError;
    } catch (const InvalidSpec& e) {
        write_error(err, "invalid_spec", e.what());
        return kUsageError;
    } catch (const Error& e) {
        write_error(err, "numerical", e.what());
        return kNumericalFailure;
    }
}

}  // namespace kstefan::cli
