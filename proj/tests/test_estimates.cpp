#include <boost/math/special_functions/beta.hpp>
#include <catch2/catch_amalgamated.hpp>

#include "katolab/katolab.hpp"

using namespace katolab;
using Catch::Approx;

TEST_CASE("fit_power_law recovers synthetic exponents") {
    std::vector<double> ts, vs;
    for (int i = 0; i < 50; ++i) {
        double t = std::pow(10.0, -3.0 + i * 0.1);
        ts.push_back(t);
        vs.push_back(2.5 * std::pow(t, -0.62));
    }
    PowerLawFit f = fit_power_law(ts, vs, 1e-3, 1e2);
    CHECK(f.gamma == Approx(0.62).epsilon(1e-10));
    CHECK(f.c == Approx(2.5).epsilon(1e-9));
    CHECK(f.r2 == Approx(1.0).epsilon(1e-12));
    CHECK(f.reliable);
}

TEST_CASE("decay_exponent on the torus reproduces gamma = 1/2 + n/(2q)") {
    Grid g(2, 64);
    auto probes = decay_probe_family(g, 64.0 / 3.0);
    const double q = 4.0;
    double lo = 10.0 / std::pow(64.0 / 3.0, 2.0), hi = 0.1;
    LogGrid ts = LogGrid::make(lo, hi, 24);
    PowerLawFit fit = decay_exponent(probes, SpaceTag::hom_sobolev(-1.0, q / 2.0), SpaceTag::lq(q), ts.points, lo, hi);
    CHECK(std::abs(fit.gamma - 0.75) < 0.05);
    CHECK(fit.r2 >= 0.98);
}

TEST_CASE("decay_exponent: bounded pair W = Z = L2 fits a flat law") {
    Grid g(2, 32);
    auto probes = decay_probe_family(g, 8.0);
    LogGrid ts = LogGrid::make(1e-3, 1e-2, 24); // well below the spectral-gap time
    PowerLawFit fit = decay_exponent(probes, SpaceTag::lq(2.0), SpaceTag::lq(2.0), ts.points, 1e-3, 1e-2);
    CHECK(std::abs(fit.gamma) < 0.05);
}

TEST_CASE("decay_exponent_diagonal: scalar-calculus slope for C = A^sigma") {
    const double sigma = 0.4;
    DiagonalModel m;
    const int d = 14;
    m.lambda.resize(d);
    for (int i = 0; i < d; ++i) m.lambda[static_cast<std::size_t>(i)] = std::pow(4.0, i);
    m.with_observation_power(sigma);
    m.b_weights.assign(d, 1.0);
    std::vector<std::vector<double>> probes;
    for (int i = 0; i < d; ++i) {
        std::vector<double> e(static_cast<std::size_t>(d), 0.0);
        e[static_cast<std::size_t>(i)] = 1.0;
        probes.push_back(std::move(e));
    }
    // window well inside [1/lambda_max, 1/lambda_min]
    LogGrid ts = LogGrid::make(1e-6, 1e-1, 16);
    PowerLawFit fit = decay_exponent_diagonal(m, probes, ts.points, 1e-6, 1e-1);
    CHECK(std::abs(fit.gamma - sigma) < 0.03);
}

TEST_CASE("hardy_littlewood_apply: zero, Beta closed forms, linearity") {
    TimeGrid tg(1.0, 512, 2.0);
    std::vector<double> zero(512, 0.0);
    auto Tz = hardy_littlewood_apply(zero, 0.5, tg);
    for (double v : Tz) CHECK(v == 0.0);

    struct Case {
        double a, gamma;
    };
    for (auto [a, gamma] : {Case{0.0, 0.5}, Case{0.3, 0.75}, Case{-0.2, 0.6}}) {
        std::vector<double> f(512);
        for (int j = 1; j <= 512; ++j) f[static_cast<std::size_t>(j) - 1] = std::pow(tg.node(j), a);
        auto Tf = hardy_littlewood_apply(f, gamma, tg, a);
        double B = boost::math::beta(1.0 + a, 1.0 - gamma);
        for (int j = 1; j <= 512; ++j) {
            double exact = B * std::pow(tg.node(j), 1.0 + a - gamma);
            CHECK(std::abs(Tf[static_cast<std::size_t>(j) - 1] - exact) <= 1e-8 * exact);
        }
    }

    Rng rng(3);
    std::vector<double> f(512), g(512), fg(512);
    for (int j = 0; j < 512; ++j) {
        f[static_cast<std::size_t>(j)] = rng.normal();
        g[static_cast<std::size_t>(j)] = rng.normal();
        fg[static_cast<std::size_t>(j)] = f[static_cast<std::size_t>(j)] + g[static_cast<std::size_t>(j)];
    }
    auto Tf = hardy_littlewood_apply(f, 0.7, tg);
    auto Tg = hardy_littlewood_apply(g, 0.7, tg);
    auto Tfg = hardy_littlewood_apply(fg, 0.7, tg);
    for (int j = 0; j < 512; ++j)
        CHECK(Tfg[static_cast<std::size_t>(j)] ==
              Approx(Tf[static_cast<std::size_t>(j)] + Tg[static_cast<std::size_t>(j)]).margin(1e-12));

    CHECK_THROWS_AS(hardy_littlewood_apply(f, 1.2, tg), DomainError);
    CHECK_THROWS_AS(hardy_littlewood_apply(f, 0.5, tg, -1.5), DomainError);
}

TEST_CASE("hardy_littlewood_bound_probe: scaling identity controls the verdict") {
    // p = q = inf with 1 + alpha = beta + gamma
    HLBoundResult r1 = hardy_littlewood_bound_probe(infty, 0.6, infty, 0.2, 0.6, 6, 1.0, 128);
    CHECK(r1.identity_residual < 1e-14);
    CHECK(r1.verdict == "stable");
    // alpha = beta = 0 Young case
    HLBoundResult r2 = hardy_littlewood_bound_probe(2.0, 0.0, 10.0, 0.0, 0.6, 6, 1.0, 128);
    CHECK(r2.verdict == "stable");
    // interior case
    HLBoundResult r3 = hardy_littlewood_bound_probe(5.0, 0.5, 10.0, 0.25, 0.65, 6, 1.0, 128);
    CHECK(r3.verdict == "stable");
    // violations
    HLBoundResult r4 = hardy_littlewood_bound_probe(5.0, 0.5, 10.0, 0.25, 0.9, 6, 1.0, 128);
    CHECK(r4.identity_residual > 0.1);
    CHECK(r4.verdict == "unbounded");
    HLBoundResult r5 = hardy_littlewood_bound_probe(5.0, 0.75, 10.0, 0.25, 0.65, 6, 1.0, 128);
    CHECK(r5.verdict == "unbounded");
}

TEST_CASE("resolvent_family_bound: identity observation, critical power, supercritical growth") {
    DiagonalModel m;
    const int d = 12;
    m.lambda.resize(d);
    for (int i = 0; i < d; ++i) m.lambda[static_cast<std::size_t>(i)] = std::pow(4.0, i - 6);
    m.c_weights.assign(d, 1.0);
    m.b_weights.assign(d, 1.0);

    // C = identity at the boundary exponent: sup approaches 1 from below
    CHECK(resolvent_family_bound(m, 1.0, infty) == Approx(1.0).epsilon(1e-3));

    // C = A^theta: scalar maximization gives theta^theta (1-theta)^{1-theta}
    const double theta = 0.35;
    DiagonalModel mc = m;
    mc.with_observation_power(theta);
    double expect = std::pow(theta, theta) * std::pow(1.0 - theta, 1.0 - theta);
    CHECK(resolvent_family_bound(mc, theta, infty) == Approx(expect).epsilon(1e-3));

    // supercritical exponent: the sup grows across the lambda grid
    DiagonalModel ms = m;
    ms.with_observation_power(theta + 0.2);
    LogGrid narrow = LogGrid::make(1e-4, 1e-1, 64);
    LogGrid wide = LogGrid::make(1e-4, 1e4, 64);
    double low = resolvent_family_bound(ms, theta, infty, narrow);
    double high = resolvent_family_bound(ms, theta, infty, wide);
    CHECK(high > 10.0 * low);
}

TEST_CASE("admissibility A1: zero observation and the critical family") {
    DiagonalModel m = DiagonalModel::geometric(48, 1e-3, 1e3);
    Rng rng(5);
    auto probes = diagonal_probes(48, rng, 4);

    DiagonalModel zero = m;
    zero.c_weights.assign(48, 0.0);
    AdmissibilityPair z = admissibility_A1(zero, infty, 0.3, probes);
    CHECK(z.lhs == 0.0);
    CHECK(z.rhs == 0.0);

    DiagonalModel crit = m;
    crit.with_observation_power(0.3);
    AdmissibilityPair a = admissibility_A1(crit, infty, 0.3, probes);
    CHECK(a.lhs > 0.0);
    CHECK(a.rhs > 0.0);
    CHECK(std::isfinite(a.lhs));
    CHECK(std::isfinite(a.rhs));
}

TEST_CASE("verify_A3_convolution: identity wiring bounded, broken identity flagged") {
    DiagonalModel m = DiagonalModel::geometric(32, 1e-2, 1e2);
    // gamma_true = 3/4 from C = A^{3/8}, B = A^{3/8}
    m.with_observation_power(0.375).with_control_power(0.375);
    // p = inf, alpha = 1/4, beta = 2 alpha = 1/2, q_in = inf: identity holds
    ConvolutionVerdict ok = verify_A3_convolution(m, infty, 0.5, infty, 0.25, 0.75, 5, 1.0, 96);
    CHECK(ok.identity_residual < 1e-14);
    CHECK(ok.verdict == "bounded");

    // inflate the claimed gamma: alpha' + 1/p = 1 - 0.9, beta' = 2 alpha'
    ConvolutionVerdict bad = verify_A3_convolution(m, infty, 0.2, infty, 0.1, 0.9, 5, 1.0, 96);
    CHECK(bad.identity_residual < 1e-14); // arithmetic identity holds for the claimed gamma...
    CHECK(bad.verdict == "unbounded");    // ...but the measured kernel decays at 3/4, not 0.9
}

TEST_CASE("verify_A3 on the torus: the Lebesgue wiring at q = 6, n = 3 is bounded") {
    Grid g(3, 24);
    const double q = 6.0;
    auto bumps = decay_probe_family(g, 8.0);
    const SpaceTag wtag = SpaceTag::hom_sobolev(-1.0, q / 2.0);
    const SpaceTag ztag = SpaceTag::lq(q);
    const double alpha = 0.25, beta = 0.5; // p = q_time = inf
    double sup = 0.0;
    std::vector<double> sups;
    for (double tau : {0.25, 0.5, 1.0}) {
        TimeGrid tg(tau, 48, 2.0);
        for (std::size_t bi = 0; bi < bumps.size(); bi += 2) {
            const SpectralField& w = bumps[bi];
            double wnorm = space_norm(w, wtag);
            if (wnorm <= 0.0) continue;
            // u(s) = s^{0.1} w
            std::vector<SpectralField> nodes(static_cast<std::size_t>(tg.M) + 1, SpectralField(g, 1));
            std::vector<double> gvals(static_cast<std::size_t>(tg.M));
            for (int j = 1; j <= tg.M; ++j) {
                double s = std::pow(tg.node(j), 0.1);
                SpectralField ws = w;
                ws *= s;
                nodes[static_cast<std::size_t>(j)] = ws;
                gvals[static_cast<std::size_t>(j) - 1] = s * wnorm;
            }
            Trajectory conv = duhamel_of_nodes(nodes, tg);
            std::vector<double> zv(static_cast<std::size_t>(tg.M));
            for (int j = 1; j <= tg.M; ++j) zv[static_cast<std::size_t>(j) - 1] = space_norm(conv.at(j), ztag);
            double ratio = weighted_lp_time_norm(zv, infty, alpha, tg) / weighted_lp_time_norm(gvals, infty, beta, tg);
            sup = std::max(sup, ratio);
        }
        sups.push_back(sup);
    }
    CHECK(sups.back() < 2.0 * sups.front()); // stable over the horizon ladder
}

TEST_CASE("verify_linfty_convolution: interpolation-midpoint weights are admissible, stronger ones are not") {
    auto build = [](int d) {
        DiagonalModel m = DiagonalModel::geometric(d, std::pow(10.0, -3.0 * d / 64.0), std::pow(10.0, 3.0 * d / 64.0));
        return m;
    };
    Rng rng(9);
    auto run = [&](int d, double upow) {
        DiagonalModel m = build(d);
        std::vector<double> u(m.lambda.size());
        for (std::size_t i = 0; i < u.size(); ++i) u[i] = std::pow(m.lambda[i], upow);
        auto probes = diagonal_probes(d, rng, 3);
        std::vector<std::pair<double, double>> ivals;
        LogGrid ig = LogGrid::for_spectrum(m.lambda, 2);
        for (std::size_t i = 0; i + 1 < ig.points.size(); i += 6) ivals.emplace_back(ig.points[i], ig.points[i + 1]);
        return verify_linfty_convolution(m, u, probes, ivals);
    };
    // U = W_1 (u_i = lambda_i): the hypothesis constant is 1/e and C stays O(1)
    auto r64 = run(64, 1.0);
    auto r256 = run(256, 1.0);
    CHECK(r64.c_hypothesis == Approx(1.0 / std::exp(1.0)).epsilon(1e-12));
    CHECK(r256.C < 2.0 * r64.C);
    // stronger-than-allowed weights: C grows under dimension doubling
    auto s64 = run(64, 1.2);
    auto s256 = run(256, 1.2);
    CHECK(s256.C > 10.0 * s64.C);
    // the hypothesis cap triggers HypothesisError
    DiagonalModel m = build(64);
    std::vector<double> u(m.lambda.size());
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = std::pow(m.lambda[i], 1.2);
    CHECK_THROWS_AS(verify_linfty_convolution(m, u, {}, {}, 1.0), HypothesisError);
}

TEST_CASE("trajectory-norm interpolation inequality across exponents (A1 p -> q)") {
    // measured-constant(q) <= measured-constant(p)^{p/q} resolvent^{1-p/q} x 2
    DiagonalModel m = DiagonalModel::geometric(64, 1e-3, 1e3);
    const double p = 4.0, alpha = 0.05;
    m.with_observation_power(alpha + 1.0 / p);
    Rng rng(13);
    auto probes = diagonal_probes(64, rng, 6);
    double Kp = admissibility_A1(m, p, alpha, probes).lhs;
    const double qq = 8.0;
    double Kq = admissibility_A1(m, qq, alpha + 1.0 / p - 1.0 / qq, probes).lhs;
    double Kres = resolvent_family_bound(m, alpha, p);
    CHECK(Kq <= 2.0 * std::pow(Kp, p / qq) * std::pow(Kres, 1.0 - p / qq));
}

TEST_CASE("tri-equivalence: pairwise comparable constants, stable under dimension doubling") {
    const double p = infty, alpha = 0.3;
    auto run = [&](int d) {
        double half_decades = 3.0 * d / 64.0;
        DiagonalModel m = DiagonalModel::geometric(d, std::pow(10.0, -half_decades), std::pow(10.0, half_decades));
        m.with_observation_power(alpha);
        Rng rng(17);
        return tri_equivalence(m, p, alpha, diagonal_probes(d, rng, 4));
    };
    TriEquivalence t64 = run(64), t512 = run(512);
    for (double r : {t64.trajectory / t64.resolvent, t64.trajectory / t64.interpolation,
                     t64.resolvent / t64.interpolation}) {
        CHECK(r > 0.1);
        CHECK(r < 10.0);
    }
    CHECK(t512.trajectory / t64.trajectory < 2.0);
    CHECK(t512.resolvent / t64.resolvent < 2.0);
    CHECK(t512.interpolation / t64.interpolation < 2.0);
    CHECK(t64.trajectory / t512.trajectory < 2.0);
    CHECK(t64.resolvent / t512.resolvent < 2.0);
    CHECK(t64.interpolation / t512.interpolation < 2.0);
}
