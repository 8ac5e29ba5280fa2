#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "katolab/duhamel.hpp"
#include "katolab/norms.hpp"
#include "katolab/trajectory.hpp"

namespace katolab {

// Exponent bookkeeping for a solver run. The active scaling identity ties
// alpha + 1/p to the semigroup decay rate gamma = 1 - alpha - 1/p:
//   Lebesgue / weak Lebesgue:  alpha + 1/p = 1/2 - n/(2q)
//   Morrey:                    alpha + 1/p = (1 - lambda)/2
//   Hoelder (finite horizon):  alpha + 1/p < 1/2, gamma = (1+delta)/2
struct ExponentConfig {
    enum class Space { lebesgue, weak_lebesgue, morrey, hoelder };

    Space space = Space::lebesgue;
    int n = 2;
    double q = 6.0;
    double p = infty;
    double alpha = 0.0;
    double lambda = 0.5; // Morrey exponent
    double eps = 0.5;    // Hoelder exponent
    double tau = 0.5;

    double inv_p() const { return p == infty ? 0.0 : 1.0 / p; }
    double gamma() const { return 1.0 - alpha - inv_p(); }

    // residual of the active scaling identity (zero when satisfied)
    double scaling_residual() const {
        switch (space) {
            case Space::lebesgue:
            case Space::weak_lebesgue: return alpha + inv_p() - (0.5 - n / (2.0 * q));
            case Space::morrey: return alpha + inv_p() - (1.0 - lambda) / 2.0;
            case Space::hoelder: return 0.0; // inequality constraints only
        }
        return 0.0;
    }

    std::vector<std::string> validate() const {
        std::vector<std::string> bad;
        double aip = alpha + inv_p();
        if (!(p > 2.0)) bad.push_back("p must lie in (2, inf]");
        if (alpha < 0.0) bad.push_back("alpha must be >= 0");
        if (!(aip > 0.0 && aip < 0.5)) bad.push_back("alpha + 1/p must lie in (0, 1/2)");
        if (tau <= 0.0) bad.push_back("tau must be > 0");
        switch (space) {
            case Space::lebesgue:
            case Space::weak_lebesgue:
                if (!(q > n)) bad.push_back("q must exceed the dimension n");
                if (std::abs(scaling_residual()) > 1e-12) bad.push_back("alpha + 1/p != 1/2 - n/(2q)");
                break;
            case Space::morrey:
                if (!(lambda > 0.0 && lambda < static_cast<double>(n) / q)) bad.push_back("lambda must lie in (0, n/q)");
                if (!(q > n)) bad.push_back("q must exceed the dimension n");
                if (std::abs(scaling_residual()) > 1e-12) bad.push_back("alpha + 1/p != (1-lambda)/2");
                break;
            case Space::hoelder:
                if (!(eps > 0.0 && eps < 1.0)) bad.push_back("eps must lie in (0,1)");
                if (!(alpha > 0.0)) bad.push_back("alpha must be > 0 for Hoelder runs");
                break;
        }
        return bad;
    }

    SpaceTag z_tag() const {
        switch (space) {
            case Space::lebesgue: return SpaceTag::lq(q);
            case Space::weak_lebesgue: return SpaceTag::weak_lq(q);
            case Space::morrey: return SpaceTag::morrey(q, lambda);
            case Space::hoelder: return SpaceTag::hoelder(eps);
        }
        return SpaceTag::lq(q);
    }
};

struct KatoConfig {
    enum class StartIterate { from_y, from_zero };

    ExponentConfig exponents;
    double tol = 1e-10;
    int max_iter = 25;
    double eta_bilinear = 0.0;      // measured bound of the bilinear map on E
    double smallness_margin = 1.0;  // required ||y||_E < margin / (4 eta)
    double shift_nu = 0.0;          // generator shift; 1 for Hoelder runs
    int time_nodes = 256;
    double time_grading = 2.0;
    StartIterate start = StartIterate::from_y;

    TimeGrid time_grid() const { return TimeGrid(exponents.tau, time_nodes, time_grading); }
    WeightedTimeNorm e_norm() const { return WeightedTimeNorm(exponents.p, exponents.alpha, exponents.z_tag()); }

    void validate_or_throw() const {
        auto bad = exponents.validate();
        if (!bad.empty()) throw DomainError("KatoConfig: " + bad.front());
        if (tol <= 0.0) throw DomainError("KatoConfig: tol must be > 0");
        if (max_iter < 1) throw DomainError("KatoConfig: max_iter must be >= 1");
    }
};

struct IterationDiagnostics {
    std::vector<double> e_norms;             // ||z_n||_E
    std::vector<double> increments;          // ||z_{n+1} - z_n||_E
    std::vector<double> contraction_factors; // increment ratios
    double y_norm = 0.0;
    double final_residual = 0.0; // ||z - y - B(z,z)||_E
    bool smallness_ok = false;
    bool converged = false;
    int iterations = 0;
    std::string verdict;
};

struct SolverDivergence : std::runtime_error {
    IterationDiagnostics diagnostics;
    explicit SolverDivergence(IterationDiagnostics d)
        : std::runtime_error("picard_solve: iteration diverged (" + d.verdict + ")"), diagnostics(std::move(d)) {}
};
using DivergenceError = SolverDivergence;

struct NoConvergenceError : std::runtime_error {
    IterationDiagnostics diagnostics;
    explicit NoConvergenceError(IterationDiagnostics d)
        : std::runtime_error("picard_solve: iteration cap reached"), diagnostics(std::move(d)) {}
};

// forcing f = f0 + div F with per-node fields; F is stored row-major with
// n^2 components, F_{ij} = component(i*n + j)
struct Forcing {
    std::optional<Trajectory> f0;
    std::optional<Trajectory> tensor;
};

inline SpectralField divergence_of_tensor_field(const SpectralField& T) {
    const Grid& g = T.grid();
    const int n = g.dim();
    if (T.components() != n * n) throw GridError("divergence_of_tensor_field: need n^2 components");
    SpectralField out(g, n);
    const std::size_t m = g.size();
    for (int i = 0; i < n; ++i) {
        auto& oc = out.component(i);
        for (int j = 0; j < n; ++j) {
            const auto& tc = T.component(i * n + j);
            for (std::size_t k = 1; k < m; ++k) {
                auto kv = g.wavevector(k);
                oc[k] += Complex{0.0, static_cast<double>(kv[j])} * tc[k];
            }
        }
    }
    return out;
}

// projected right-hand side nodes P f0 + P div F
inline std::vector<SpectralField> forcing_nodes(const Forcing& f, const TimeGrid& tg, const Grid& g, int ncomp) {
    std::vector<SpectralField> out(static_cast<std::size_t>(tg.M) + 1, SpectralField(g, ncomp));
    for (int j = 0; j <= tg.M; ++j) {
        SpectralField rhs(g, ncomp);
        if (f.f0) rhs += f.f0->at(j);
        if (f.tensor) rhs += divergence_of_tensor_field(f.tensor->at(j));
        out[static_cast<std::size_t>(j)] = leray_project(rhs);
    }
    return out;
}

inline Trajectory free_evolution(const SpectralField& u0, const TimeGrid& tg, double shift_nu = 0.0) {
    if (!u0.is_divergence_free(1e-10)) throw InputError("free_evolution: initial field is not divergence-free");
    Trajectory out(tg, u0);
    for (int j = 0; j <= tg.M; ++j) out.at(j) = heat_semigroup(u0, tg.node(j), shift_nu);
    return out;
}

struct SolveResult {
    Trajectory x;             // reconstructed mild solution
    Trajectory z;             // fixed-point iterate Cx
    Trajectory y;             // free evolution + forcing terms
    IterationDiagnostics diagnostics;
    SpectralField u0;
    double shift_nu = 0.0;
    Trajectory duhamel_z;                    // B-part of the reconstruction
    std::vector<SpectralField> g_nodes;      // F(z,z) at nodes
    std::optional<Trajectory> forcing_duh;   // Duhamel of the forcing
    std::vector<SpectralField> forcing_rhs;  // projected forcing nodes

    // mild solution at an arbitrary time in (0, tau]
    SpectralField evaluate(double t) const {
        SpectralField v = heat_semigroup(u0, t, shift_nu);
        if (forcing_duh) v += duhamel_evaluate(*forcing_duh, forcing_rhs, t, shift_nu);
        v -= duhamel_evaluate(duhamel_z, g_nodes, t, shift_nu);
        return v;
    }
};

// Picard iteration z_{n+1} = y - Duhamel(z_n, z_n) in E = L^p_alpha((0,tau), Z).
// The quadratic term enters with the minus sign of the mild formulation
// u = T(.)v0 - T(.)*P div(u(x)u) + T(.)*P f.
inline SolveResult picard_solve(const SpectralField& u0, const std::optional<Forcing>& forcing, const KatoConfig& cfg) {
    cfg.validate_or_throw();
    if (!u0.is_divergence_free(1e-10)) throw InputError("picard_solve: initial field is not divergence-free");
    if (!u0.has_zero_mean(1e-10)) throw InputError("picard_solve: initial field must be mean-zero");

    const TimeGrid tg = cfg.time_grid();
    const WeightedTimeNorm enorm = cfg.e_norm();

    Trajectory y = free_evolution(u0, tg, cfg.shift_nu);
    std::optional<Trajectory> f_duh;
    std::vector<SpectralField> f_rhs;
    if (forcing) {
        f_rhs = forcing_nodes(*forcing, tg, u0.grid(), u0.components());
        f_duh = duhamel_of_nodes(f_rhs, tg, cfg.shift_nu);
        y += *f_duh;
    }

    IterationDiagnostics diag;
    diag.y_norm = trajectory_norm(y, enorm);
    if (cfg.eta_bilinear > 0.0)
        diag.smallness_ok = diag.y_norm < cfg.smallness_margin / (4.0 * cfg.eta_bilinear);

    // default start z_0 = y: the first Picard step matches the classical expansion
    Trajectory z = cfg.start == KatoConfig::StartIterate::from_y ? y : Trajectory(tg, SpectralField(u0.grid(), u0.components()));
    double prev_inc = infty;
    int growth_run = 0;

    for (int it = 1; it <= cfg.max_iter; ++it) {
        Trajectory d = duhamel_bilinear(z, z, cfg.shift_nu);
        Trajectory z_next = y - d;
        double inc = trajectory_norm(z_next - z, enorm);
        double zn = trajectory_norm(z_next, enorm);
        diag.e_norms.push_back(zn);
        diag.increments.push_back(inc);
        if (diag.increments.size() >= 2) {
            double prev = diag.increments[diag.increments.size() - 2];
            diag.contraction_factors.push_back(prev > 0.0 ? inc / prev : 0.0);
        }
        diag.iterations = it;
        z = std::move(z_next);

        if (inc < cfg.tol) {
            diag.converged = true;
            break;
        }
        if (zn > 4.0 * diag.y_norm) {
            diag.verdict = "iterate escaped the 4||y||_E ball";
            throw SolverDivergence(diag);
        }
        growth_run = (inc > prev_inc) ? growth_run + 1 : 0;
        if (growth_run >= 3) {
            diag.verdict = "increments grew over 3 consecutive iterations";
            throw SolverDivergence(diag);
        }
        prev_inc = inc;
    }
    if (!diag.converged) {
        diag.verdict = "max_iter reached";
        throw NoConvergenceError(diag);
    }
    diag.verdict = "converged";

    // reconstruction with the final iterate; the residual ||z - x||_E is the
    // fixed-point defect
    std::vector<SpectralField> Gz = bilinear_nodes(z, z);
    Trajectory Dz = duhamel_of_nodes(Gz, tg, cfg.shift_nu);
    Trajectory x = y - Dz;
    diag.final_residual = trajectory_norm(z - x, enorm);

    return SolveResult{std::move(x), std::move(z), std::move(y), std::move(diag), u0, cfg.shift_nu,
                       std::move(Dz), std::move(Gz), std::move(f_duh), std::move(f_rhs)};
}

} // namespace katolab
