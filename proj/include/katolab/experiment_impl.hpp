#pragma once

// implementation of the experiment runner (included from experiment.hpp)

namespace katolab {

namespace detail_exp {

inline Json manifest_for(const Json& config, const RunOptions& opts) {
    Json m;
    m["schema"] = config_schema;
    m["config"] = config;
    m["seed"] = opts.seed;
    m["config_hash"] = hex64(fnv1a64(config.dump() + "#" + std::to_string(opts.seed)));
    return m;
}

inline std::string joined(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

// --- solve -----------------------------------------------------------------

inline int run_solve(const Json& config, const RunOptions& opts, Json& summary) {
    const Json p = config.value("params", Json::object());
    Rng rng(opts.seed);
    KatoConfig cfg = kato_config_from(p);
    cfg.validate_or_throw();
    Grid g(cfg.exponents.n, static_cast<int>(parse_number(p, "N", cfg.exponents.n == 2 ? 64.0 : 32.0)));
    SpectralField u0 = initial_field(g, p.value("initial", Json::object()), rng);

    // eta over a generic corpus for the smallness verdict
    std::vector<SpectralField> seeds{u0};
    seeds.push_back(random_divergence_free(g, rng, g.modes() / 4));
    cfg.eta_bilinear = measure_eta(eta_probe_corpus(seeds, cfg), cfg);

    SolveResult res = picard_solve(u0, std::nullopt, cfg);

    summary["diagnostics"] = Json{{"iterations", res.diagnostics.iterations},
                                  {"converged", res.diagnostics.converged},
                                  {"y_norm_E", res.diagnostics.y_norm},
                                  {"final_residual_E", res.diagnostics.final_residual},
                                  {"smallness_ok", res.diagnostics.smallness_ok},
                                  {"eta", cfg.eta_bilinear},
                                  {"verdict", res.diagnostics.verdict},
                                  {"e_norms", res.diagnostics.e_norms},
                                  {"increments", res.diagnostics.increments},
                                  {"contraction_factors", res.diagnostics.contraction_factors}};

    if (p.value("write_trajectory", true)) save_trajectory(res.x, joined(opts.out_dir, "trajectory.field"));

    // per-node norm reports: t, ||x||_X, ||x||_Z, t^alpha ||x||_Z
    CsvWriter csv({"t", "x_norm_X", "x_norm_Z", "weighted_Z"});
    const SpaceTag ztag = cfg.exponents.z_tag();
    for (int j = 1; j <= res.x.grid.M; ++j) {
        double t = res.x.grid.node(j);
        double xz = space_norm(res.x.at(j), ztag);
        double xx = x_space_norm(res.x.at(j), cfg.exponents);
        csv.row({fmt_g17(t), fmt_g17(xx), fmt_g17(xz), fmt_g17(std::pow(t, cfg.exponents.alpha) * xz)});
    }
    csv.save(joined(opts.out_dir, "norms.csv"));
    return 0;
}

// --- threshold ---------------------------------------------------------------

inline int run_threshold(const Json& config, const RunOptions& opts, Json& summary) {
    const Json p = config.value("params", Json::object());
    Rng rng(opts.seed);
    KatoConfig cfg = kato_config_from(p);
    cfg.validate_or_throw();
    Grid g(cfg.exponents.n, static_cast<int>(parse_number(p, "N", cfg.exponents.n == 2 ? 64.0 : 32.0)));
    SpectralField dir = initial_field(g, p.value("initial", Json{{"kind", "mixed-vortex"}, {"amplitude", 1.0}}), rng);

    cfg.eta_bilinear = measure_eta_on_orbit(dir, parse_number(p, "eta_ref_amplitude", 1e-3), cfg);
    ThresholdResult th = smallness_threshold(dir, cfg, parse_number(p, "c0", 1e-3),
                                             static_cast<int>(parse_number(p, "max_doublings", 24)));

    summary["threshold"] = th.infinite ? Json("inf") : Json(th.threshold);
    summary["prediction"] = th.prediction_infinite ? Json("inf") : Json(th.prediction);
    summary["eta_orbit"] = cfg.eta_bilinear;
    summary["monotone"] = th.monotone;
    summary["verdict"] = th.verdict;
    CsvWriter csv({"amplitude", "converged"});
    for (auto& [amp, ok] : th.samples) csv.row({fmt_g17(amp), ok ? "1" : "0"});
    csv.save(joined(opts.out_dir, "samples.csv"));

    bool consistent = true;
    if (th.infinite != th.prediction_infinite) consistent = false;
    if (!th.infinite && !th.prediction_infinite)
        consistent = th.threshold <= 4.0 * th.prediction && th.prediction <= 4.0 * th.threshold;
    summary["within_factor_4"] = consistent;
    return (consistent && th.monotone) ? 0 : 2;
}

// --- verify-decay ------------------------------------------------------------

inline int run_verify_decay(const Json& config, const RunOptions& opts, Json& summary) {
    const Json p = config.value("params", Json::object());
    int n = static_cast<int>(parse_number(p, "n", 2));
    double q = parse_number(p, "q", 6.0);
    int N = static_cast<int>(parse_number(p, "N", n == 2 ? 128.0 : 48.0));
    Grid g(n, N);
    const double kmax_probe = N / 3.0;
    auto probes = decay_probe_family(g, kmax_probe);

    const double window_lo = 10.0 / (kmax_probe * kmax_probe);
    const double window_hi = 0.1;
    LogGrid ts = LogGrid::make(window_lo, window_hi, static_cast<int>(parse_number(p, "points_per_decade", 32)));

    SpaceTag wtag = SpaceTag::hom_sobolev(-1.0, q / 2.0);
    SpaceTag ztag = SpaceTag::lq(q);
    PowerLawFit fit = decay_exponent(probes, wtag, ztag, ts.points, window_lo, window_hi);

    const double expected = 0.5 + n / (2.0 * q);
    summary["gamma_fit"] = fit.gamma;
    summary["gamma_expected"] = expected;
    summary["c_fit"] = fit.c;
    summary["r2"] = fit.r2;
    summary["reliable"] = fit.reliable;
    summary["window"] = Json{{"lo", window_lo}, {"hi", window_hi}};

    CsvWriter csv({"t", "R"});
    for (std::size_t i = 0; i < fit.ts.size(); ++i) csv.row({fmt_g17(fit.ts[i]), fmt_g17(fit.values[i])});
    csv.save(joined(opts.out_dir, "decay.csv"));

    bool pass = std::abs(fit.gamma - expected) <= 0.05 && fit.r2 >= 0.98;
    summary["pass"] = pass;
    return pass ? 0 : 2;
}

// --- verify-hl ---------------------------------------------------------------

inline int run_verify_hl(const Json& config, const RunOptions& opts, Json& summary) {
    const Json p = config.value("params", Json::object());
    int exit_code = 0;
    Json tuples = Json::array();
    CsvWriter csv({"q", "beta", "p", "alpha", "gamma", "step", "ratio_sup", "verdict"});
    for (const auto& t : p.value("tuples", Json::array())) {
        double q = parse_number(t, "q", infty), beta = parse_number(t, "beta", 0.0);
        double pp = parse_number(t, "p", infty), alpha = parse_number(t, "alpha", 0.0);
        double gamma = parse_number(t, "gamma", 0.5);
        std::string expect = t.value("expect", "stable");
        HLBoundResult r = hardy_littlewood_bound_probe(q, beta, pp, alpha, gamma,
                                                       static_cast<int>(parse_number(p, "steps", 8.0)), 1.0,
                                                       static_cast<int>(parse_number(p, "M", 256.0)));
        for (std::size_t e = 0; e < r.ratio_per_step.size(); ++e)
            csv.row({fmt_g17(q), fmt_g17(beta), fmt_g17(pp), fmt_g17(alpha), fmt_g17(gamma), std::to_string(e),
                     fmt_g17(r.ratio_per_step[e]), r.verdict});
        Json tj;
        tj["tuple"] = Json{{"q", q == infty ? Json("inf") : Json(q)},
                           {"beta", beta},
                           {"p", pp == infty ? Json("inf") : Json(pp)},
                           {"alpha", alpha},
                           {"gamma", gamma}};
        tj["identity_residual"] = r.identity_residual;
        tj["verdict"] = r.verdict;
        tj["expected"] = expect;
        bool ok = r.verdict == expect;
        tj["pass"] = ok;
        if (!ok) exit_code = 2;
        tuples.push_back(tj);
    }
    summary["tuples"] = tuples;

    // Beta-function closed-form checks
    Json beta_checks = Json::array();
    for (const auto& bc : p.value("beta_checks", Json::array())) {
        double a = parse_number(bc, "a", 0.0), gamma = parse_number(bc, "gamma", 0.5);
        TimeGrid tg(1.0, static_cast<int>(parse_number(p, "beta_M", 512.0)), 2.0);
        std::vector<double> f(static_cast<std::size_t>(tg.M));
        for (int j = 1; j <= tg.M; ++j) f[static_cast<std::size_t>(j) - 1] = std::pow(tg.node(j), a);
        auto Tf = hardy_littlewood_apply(f, gamma, tg, a);
        double B = boost::math::beta(1.0 + a, 1.0 - gamma);
        double worst = 0.0;
        for (int j = 1; j <= tg.M; ++j) {
            double exact = B * std::pow(tg.node(j), 1.0 + a - gamma);
            worst = std::max(worst, std::abs(Tf[static_cast<std::size_t>(j) - 1] - exact) / exact);
        }
        bool ok = worst <= 1e-8;
        if (!ok) exit_code = 2;
        beta_checks.push_back(Json{{"a", a}, {"gamma", gamma}, {"max_rel_err", worst}, {"pass", ok}});
    }
    summary["beta_checks"] = beta_checks;
    csv.save(joined(opts.out_dir, "hl.csv"));
    if (opts.expect_failure && exit_code == 2) {
        summary["expected_failure"] = true;
        return 0;
    }
    return exit_code;
}

// --- verify-admissibility ------------------------------------------------------

inline int run_verify_admissibility(const Json& config, const RunOptions& opts, Json& summary) {
    const Json p = config.value("params", Json::object());
    double pp = parse_number(p, "p", infty);
    double alpha = parse_number(p, "alpha", 0.3);
    double ip = pp == infty ? 0.0 : 1.0 / pp;
    double theta = alpha + ip;
    // the control family B = A^{1-2/p} is exponent-critical at alpha = 0
    double p_a2 = parse_number(p, "p_a2", 4.0);
    double alpha_a2 = parse_number(p, "alpha_a2", 0.0);
    int d0 = static_cast<int>(parse_number(p, "d0", 64));
    int d1 = static_cast<int>(parse_number(p, "d1", 512));
    double off = parse_number(p, "supercritical_offset", 0.2);

    auto run_dim = [&](int d, double extra) {
        // spectrum range widens with dimension at fixed geometric ratio
        double half_decades = 3.0 * d / 64.0;
        DiagonalModel m = DiagonalModel::geometric(d, std::pow(10.0, -half_decades), std::pow(10.0, half_decades));
        m.with_observation_power(theta + extra).with_control_power(1.0 - 2.0 / p_a2 + extra);
        Rng rng(opts.seed);
        auto probes = diagonal_probes(d, rng, 6);
        TriEquivalence tri = tri_equivalence(m, pp, alpha, probes);
        std::vector<std::pair<double, double>> intervals;
        LogGrid ig = LogGrid::for_spectrum(m.lambda, 2);
        for (std::size_t i = 0; i + 1 < ig.points.size(); i += 8) intervals.emplace_back(ig.points[i], ig.points[i + 1]);
        AdmissibilityPair a2 = admissibility_A2(m, p_a2, alpha_a2, probes, intervals);
        return std::make_pair(tri, a2);
    };

    auto [tri0, a20] = run_dim(d0, 0.0);
    auto [tri1, a21] = run_dim(d1, 0.0);
    auto [tri0s, a20s] = run_dim(d0, off);
    auto [tri1s, a21s] = run_dim(d1, off);

    auto drift = [](double a, double b) { return b / std::max(a, 1e-300); };
    bool critical_stable = drift(tri0.trajectory, tri1.trajectory) < 2.0 &&
                           drift(tri0.resolvent, tri1.resolvent) < 2.0 &&
                           drift(tri0.interpolation, tri1.interpolation) < 2.0 &&
                           drift(a20.lhs, a21.lhs) < 2.0 && drift(a20.rhs, a21.rhs) < 2.0;
    bool supercritical_diverges = drift(tri0s.trajectory, tri1s.trajectory) > 10.0 &&
                                  drift(tri0s.interpolation, tri1s.interpolation) > 10.0 &&
                                  drift(a20s.lhs, a21s.lhs) > 10.0 && drift(a20s.rhs, a21s.rhs) > 10.0;

    summary["critical"] = Json{{"d0", Json{{"trajectory", tri0.trajectory},
                                           {"resolvent", tri0.resolvent},
                                           {"interpolation", tri0.interpolation},
                                           {"A2_lhs", a20.lhs},
                                           {"A2_rhs", a20.rhs}}},
                               {"d1", Json{{"trajectory", tri1.trajectory},
                                           {"resolvent", tri1.resolvent},
                                           {"interpolation", tri1.interpolation},
                                           {"A2_lhs", a21.lhs},
                                           {"A2_rhs", a21.rhs}}},
                               {"stable", critical_stable}};
    summary["supercritical"] = Json{{"diverges", supercritical_diverges}};
    bool pass = critical_stable && supercritical_diverges;
    summary["pass"] = pass;
    return pass ? 0 : 2;
}

// --- verify-interp -------------------------------------------------------------

inline int run_verify_interp(const Json& config, const RunOptions& opts, Json& summary) {
    const Json p = config.value("params", Json::object());
    int models = static_cast<int>(parse_number(p, "models", 20));
    int d = static_cast<int>(parse_number(p, "d", 64));
    double theta = parse_number(p, "theta", 0.5);
    double pp = parse_number(p, "p", 2.0);
    Rng rng(opts.seed);

    double rmin = infty, rmax = 0.0, smin = infty, smax = 0.0;
    for (int mi = 0; mi < models; ++mi) {
        DiagonalModel m = DiagonalModel::random(d, 1e-3, 1e3, rng);
        auto probes = diagonal_probes(d, rng, 4);
        WeightedCouple c01;
        c01.w0.assign(m.lambda.size(), 1.0);
        c01.w1 = m.lambda;
        for (const auto& x : probes) {
            double k = real_interp_norm(c01, x, theta, pp);
            if (k <= 0.0) continue;
            double r = resolvent_interp_norm(m, x, theta, pp);
            double s = semigroup_interp_norm(m, x, theta, pp);
            rmin = std::min(rmin, r / k);
            rmax = std::max(rmax, r / k);
            smin = std::min(smin, s / k);
            smax = std::max(smax, s / k);
        }
    }
    summary["resolvent_vs_k"] = Json{{"min", rmin}, {"max", rmax}};
    summary["semigroup_vs_k"] = Json{{"min", smin}, {"max", smax}};

    DiagonalModel m = DiagonalModel::random(d, 1e-3, 1e3, rng);
    auto probes = diagonal_probes(d, rng, 4);
    EmbeddingChainReport emb = check_embedding_chain(m, 0, 1, 2, probes);
    ReiterationReport reit = check_reiteration(m, theta, 1.0, pp, probes);
    summary["embedding_chain"] = Json{{"theta", emb.theta}, {"c_into", emb.c_into}, {"c_outof", emb.c_outof}};
    summary["reiteration"] = Json{{"ratio_min", reit.ratio_min}, {"ratio_max", reit.ratio_max}};

    bool pass = std::isfinite(rmax) && std::isfinite(smax) && rmax / rmin < 50.0 && smax / smin < 50.0 && emb.finite;
    summary["pass"] = pass;
    return pass ? 0 : 2;
}

// --- norms ----------------------------------------------------------------------

inline int run_norms(const Json& config, const RunOptions& opts, Json& summary) {
    const Json p = config.value("params", Json::object());
    Rng rng(opts.seed);
    int n = static_cast<int>(parse_number(p, "n", 2));
    int N = static_cast<int>(parse_number(p, "N", 64));
    Grid g(n, N);
    SpectralField f(g, g.dim());
    if (p.contains("field_file"))
        f = SpectralField::load(p["field_file"].get<std::string>());
    else
        f = initial_field(g, p.value("initial", Json{{"kind", "random"}, {"amplitude", 1.0}}), rng);

    Json reports = Json::array();
    CsvWriter csv({"space", "value"});
    for (const auto& tj : p.value("tags", Json::array())) {
        SpaceTag tag = tag_from(tj);
        double v = space_norm(f, tag);
        reports.push_back(norm_report(tag, v, n, N, "grid estimator"));
        csv.row({tag.name(), fmt_g17(v)});
    }
    summary["reports"] = reports;
    csv.save(joined(opts.out_dir, "norms.csv"));
    return 0;
}

} // namespace detail_exp

inline int run(const Json& config, const RunOptions& opts) {
    std::filesystem::create_directories(opts.out_dir);
    Json summary;
    summary["command"] = config.value("command", "");
    summary["config_hash"] = hex64(fnv1a64(config.dump() + "#" + std::to_string(opts.seed)));
    try {
        auto diags = validate(config);
        Json vj = Json::array();
        bool config_ok = true;
        for (auto& d : diags) {
            vj.push_back(Json{{"identity", d.identity}, {"residual", d.residual}, {"ok", d.ok}});
            config_ok = config_ok && d.ok;
        }
        summary["validation"] = vj;
        if (!config_ok && !opts.expect_failure) {
            Json err{{"error", "config violates the active scaling identity"}, {"validation", vj}};
            write_json(detail_exp::joined(opts.out_dir, "error.json"), err);
            return 1;
        }

        write_json(detail_exp::joined(opts.out_dir, "manifest.json"), detail_exp::manifest_for(config, opts));
        std::string cmd = config.value("command", "");
        int code;
        if (cmd == "solve")
            code = detail_exp::run_solve(config, opts, summary);
        else if (cmd == "threshold")
            code = detail_exp::run_threshold(config, opts, summary);
        else if (cmd == "verify-decay")
            code = detail_exp::run_verify_decay(config, opts, summary);
        else if (cmd == "verify-hl")
            code = detail_exp::run_verify_hl(config, opts, summary);
        else if (cmd == "verify-admissibility")
            code = detail_exp::run_verify_admissibility(config, opts, summary);
        else if (cmd == "verify-interp")
            code = detail_exp::run_verify_interp(config, opts, summary);
        else if (cmd == "norms")
            code = detail_exp::run_norms(config, opts, summary);
        else {
            Json err{{"error", "unknown command: " + cmd}};
            write_json(detail_exp::joined(opts.out_dir, "error.json"), err);
            return 1;
        }
        summary["exit_code"] = code;
        write_json(detail_exp::joined(opts.out_dir, "summary.json"), summary);
        return code;
    } catch (const std::exception& e) {
        Json err{{"error", e.what()}};
        write_json(detail_exp::joined(opts.out_dir, "error.json"), err);
        return 1;
    }
}

} // namespace katolab
