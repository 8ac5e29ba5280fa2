#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "katolab/data_space.hpp"
#include "katolab/estimates.hpp"
#include "katolab/hardy_littlewood.hpp"
#include "katolab/kato_solver.hpp"
#include "katolab/probes.hpp"
#include "katolab/reference.hpp"
#include "katolab/reports.hpp"
#include "katolab/threshold.hpp"

namespace katolab {

inline constexpr const char* config_schema = "katolab-config/1";

struct RunOptions {
    std::string out_dir = ".";
    std::uint64_t seed = 1;
    int threads = 1;
    bool expect_failure = false;
};

namespace detail_exp {

inline double parse_number(const Json& j, const std::string& key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (j[key].is_string()) {
        if (j[key] == "inf") return infty;
        throw DomainError("config: non-numeric value for " + key);
    }
    return j[key].get<double>();
}

inline ExponentConfig exponents_from(const Json& p) {
    ExponentConfig e;
    std::string space = p.value("space", "lebesgue");
    if (space == "lebesgue")
        e.space = ExponentConfig::Space::lebesgue;
    else if (space == "weak-lebesgue")
        e.space = ExponentConfig::Space::weak_lebesgue;
    else if (space == "morrey")
        e.space = ExponentConfig::Space::morrey;
    else if (space == "hoelder")
        e.space = ExponentConfig::Space::hoelder;
    else
        throw DomainError("config: unknown space " + space);
    e.n = p.value("n", 2);
    e.q = parse_number(p, "q", 6.0);
    e.p = parse_number(p, "p", infty);
    e.alpha = parse_number(p, "alpha", 0.0);
    e.lambda = parse_number(p, "lambda", 0.5);
    e.eps = parse_number(p, "eps", 0.3);
    e.tau = parse_number(p, "tau", 0.5);
    return e;
}

inline KatoConfig kato_config_from(const Json& p) {
    KatoConfig cfg;
    cfg.exponents = exponents_from(p);
    cfg.tol = parse_number(p, "tol", 1e-10);
    cfg.max_iter = static_cast<int>(parse_number(p, "max_iter", 25));
    cfg.shift_nu = parse_number(p, "shift_nu", cfg.exponents.space == ExponentConfig::Space::hoelder ? 1.0 : 0.0);
    cfg.time_nodes = static_cast<int>(parse_number(p, "time_nodes", 256));
    cfg.time_grading = parse_number(p, "grading", 2.0);
    return cfg;
}

inline SpectralField initial_field(const Grid& g, const Json& init, Rng& rng) {
    std::string kind = init.value("kind", "taylor-green");
    double amplitude = parse_number(init, "amplitude", 1e-3);
    SpectralField f(g, g.dim());
    if (kind == "taylor-green")
        f = taylor_green(g);
    else if (kind == "mixed-vortex")
        f = mixed_vortex(g);
    else if (kind == "random")
        f = random_divergence_free(g, rng, static_cast<int>(parse_number(init, "kmax", g.modes() / 4.0)));
    else if (kind == "zero")
        f = SpectralField(g, g.dim());
    else
        throw DomainError("config: unknown initial field " + kind);
    f *= amplitude;
    return f;
}

inline SpaceTag tag_from(const Json& t) {
    std::string kind = t.value("kind", "Lq");
    double q = parse_number(t, "q", 2.0);
    double s = parse_number(t, "s", 0.0);
    double p = parse_number(t, "p", 2.0);
    if (kind == "Lq") return SpaceTag::lq(q);
    if (kind == "WeakLq") return SpaceTag::weak_lq(q);
    if (kind == "Besov") return SpaceTag::besov(s, q, p);
    if (kind == "HomBesov") return SpaceTag::hom_besov(s, q, p);
    if (kind == "WeakBesov") return SpaceTag::weak_besov(s, q, p);
    if (kind == "HomWeakBesov") return SpaceTag::hom_weak_besov(s, q, p);
    if (kind == "Hoelder") return SpaceTag::hoelder(parse_number(t, "eps", 0.5));
    if (kind == "Morrey") return SpaceTag::morrey(q, parse_number(t, "lambda", 0.5));
    if (kind == "HomSobolev") return SpaceTag::hom_sobolev(s, q);
    if (kind == "HomWeakSobolev") return SpaceTag::hom_weak_sobolev(s, q);
    throw DomainError("config: unknown space tag " + kind);
}

} // namespace detail_exp

// residuals of the scaling identities for a config; empty when valid
struct ValidationDiagnostic {
    std::string identity;
    double residual;
    bool ok;
};

inline std::vector<ValidationDiagnostic> validate(const Json& config) {
    std::vector<ValidationDiagnostic> out;
    if (config.value("schema", "") != config_schema)
        out.push_back({"schema == " + std::string(config_schema), 1.0, false});
    std::string cmd = config.value("command", "");
    if (cmd == "solve" || cmd == "threshold" || cmd == "norms") {
        if (cmd != "norms") {
            ExponentConfig e = detail_exp::exponents_from(config.value("params", Json::object()));
            double res = e.scaling_residual();
            switch (e.space) {
                case ExponentConfig::Space::lebesgue:
                case ExponentConfig::Space::weak_lebesgue:
                    out.push_back({"alpha + 1/p = 1/2 - n/(2q)", res, std::abs(res) <= 1e-12});
                    break;
                case ExponentConfig::Space::morrey:
                    out.push_back({"alpha + 1/p = (1-lambda)/2", res, std::abs(res) <= 1e-12});
                    break;
                case ExponentConfig::Space::hoelder: {
                    double aip = e.alpha + e.inv_p();
                    out.push_back({"alpha + 1/p < 1/2", aip < 0.5 ? 0.0 : aip - 0.5, aip < 0.5});
                    break;
                }
            }
            for (const auto& msg : e.validate())
                if (out.empty() || msg != out.back().identity) out.push_back({msg, 1.0, false});
        }
    }
    return out;
}

int run(const Json& config, const RunOptions& opts); // defined below

} // namespace katolab

#include "katolab/experiment_impl.hpp"
