#include <catch2/catch_amalgamated.hpp>

#include "katolab/katolab.hpp"

using namespace katolab;

namespace {

double rel_diff(const SpectralField& a, const SpectralField& b) {
    SpectralField d = a;
    d -= b;
    double bn = b.l2_norm();
    return bn > 0 ? d.l2_norm() / bn : d.l2_norm();
}

} // namespace

TEST_CASE("apply_multiplier: identity symbol is the identity") {
    Grid g(2, 16);
    Rng rng(7);
    SpectralField f = random_field(g, 2, rng, 5);
    Multiplier id{[](const std::array<int, 3>&, double) { return Complex{1.0, 0.0}; }, ZeroModeRule::identity};
    CHECK(rel_diff(apply_multiplier(f, id), f) < 1e-14);
}

TEST_CASE("apply_multiplier: i k_1 differentiates a single mode") {
    Grid g(2, 16);
    SpectralField f(g, 1);
    f.at(0, {1, 0, 0}) = Complex{1.0, 0.0}; // e^{i x_1}
    Multiplier ddx{[](const std::array<int, 3>& k, double) { return Complex{0.0, static_cast<double>(k[0])}; },
                   ZeroModeRule::zero};
    SpectralField df = apply_multiplier(f, ddx);
    CHECK(std::abs(df.at(0, {1, 0, 0}) - Complex{0.0, 1.0}) < 1e-15);
}

TEST_CASE("apply_multiplier: |k|^2 symbol converges to second differences") {
    // -Laplacian against the 2nd-order finite-difference stencil on the
    // physical samples; the defect shrinks as the resolution doubles
    auto fd_defect = [](int N) {
        Grid g(2, N);
        Rng rng(11);
        SpectralField f = random_field(g, 1, rng, 3, 2.5); // smooth: only |k| <= 3
        Multiplier lap{[](const std::array<int, 3>&, double k2) { return Complex{k2, 0.0}; }, ZeroModeRule::zero};
        SpectralField lf = apply_multiplier(f, lap);
        auto s = f.samples(0);
        auto ls = lf.samples(0);
        double h = g.h();
        double worst = 0.0, scale = 0.0;
        for (int i = 0; i < N; ++i) {
            for (int j = 0; j < N; ++j) {
                auto idx = [N](int a, int b) { return static_cast<std::size_t>(((a + N) % N) * N + (b + N) % N); };
                Complex fd = (4.0 * s[idx(i, j)] - s[idx(i + 1, j)] - s[idx(i - 1, j)] - s[idx(i, j + 1)] -
                              s[idx(i, j - 1)]) /
                             (h * h);
                worst = std::max(worst, std::abs(fd - ls[idx(i, j)]));
                scale = std::max(scale, std::abs(ls[idx(i, j)]));
            }
        }
        return worst / scale;
    };
    double e16 = fd_defect(16), e32 = fd_defect(32), e64 = fd_defect(64);
    CHECK(e32 < 0.5 * e16);
    CHECK(e64 < 0.5 * e32); // second-order stencil: defect ~ h^2
}

TEST_CASE("apply_multiplier: reject rule throws on nonzero mean") {
    Grid g(2, 16);
    SpectralField f(g, 1);
    f.at(0, {0, 0, 0}) = Complex{1.0, 0.0};
    Multiplier m{[](const std::array<int, 3>&, double k2) { return Complex{k2, 0.0}; }, ZeroModeRule::reject};
    CHECK_THROWS_AS(apply_multiplier(f, m), ZeroModeError);
}

TEST_CASE("leray_project: gradients are killed, divergence-free fields are fixed") {
    Grid g(2, 32);
    SpectralField grad = gradient_probe(g, 0);
    CHECK(leray_project(grad).l2_norm() < 1e-14 * grad.l2_norm());

    // (sin x_2, 0) is divergence-free
    Grid g3(3, 16);
    SpectralField f(g3, 3);
    f.at(0, {0, 1, 0}) = Complex{0.0, -0.5};
    f.at(0, {0, -1, 0}) = Complex{0.0, 0.5};
    CHECK(rel_diff(leray_project(f), f) < 1e-14);
}

TEST_CASE("leray_project: hand evaluation of the 3x3 symbol at k = +-e_1") {
    // f = (sin x_1, sin x_1, 0): at k = (1,0,0), P(k) = I - e_1 e_1^T kills
    // the first component and keeps the second
    Grid g(3, 16);
    SpectralField f(g, 3);
    for (int c : {0, 1}) {
        f.at(c, {1, 0, 0}) = Complex{0.0, -0.5};
        f.at(c, {-1, 0, 0}) = Complex{0.0, 0.5};
    }
    SpectralField pf = leray_project(f);
    CHECK(std::abs(pf.at(0, {1, 0, 0})) < 1e-15);
    CHECK(std::abs(pf.at(1, {1, 0, 0}) - Complex{0.0, -0.5}) < 1e-15);
    CHECK(std::abs(pf.at(2, {1, 0, 0})) < 1e-15);
}

TEST_CASE("leray_project: idempotent and symmetric on random fields") {
    Grid g(2, 32);
    Rng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        SpectralField f = random_field(g, 2, rng, 10);
        SpectralField pf = leray_project(f);
        CHECK(rel_diff(leray_project(pf), pf) < 1e-12);
        SpectralField h = random_field(g, 2, rng, 10);
        CHECK(std::abs(leray_project(f).l2_inner(h) - f.l2_inner(leray_project(h))) <=
              1e-12 * f.l2_norm() * h.l2_norm());
    }
}

TEST_CASE("heat_semigroup: identity at t=0, closed-form single mode, semigroup law") {
    Grid g(2, 32);
    Rng rng(5);
    SpectralField f = random_field(g, 2, rng, 10);
    CHECK(rel_diff(heat_semigroup(f, 0.0), f) == 0.0);

    SpectralField mode(g, 1);
    mode.at(0, {2, 1, 0}) = Complex{1.0, 0.0};
    SpectralField ev = heat_semigroup(mode, 0.3);
    CHECK(std::abs(ev.at(0, {2, 1, 0}) - Complex{std::exp(-0.3 * 5.0), 0.0}) < 1e-15);

    SpectralField ab = heat_semigroup(heat_semigroup(f, 0.1), 0.2);
    CHECK(rel_diff(ab, heat_semigroup(f, 0.3)) < 1e-12);

    CHECK_THROWS_AS(heat_semigroup(f, -1.0), DomainError);
}

TEST_CASE("heat_semigroup: commutes with leray and contracts L2 on mean-zero fields") {
    Grid g(3, 16);
    Rng rng(9);
    SpectralField f = random_field(g, 3, rng, 5);
    CHECK(rel_diff(heat_semigroup(leray_project(f), 0.2), leray_project(heat_semigroup(f, 0.2))) < 1e-12);
    double prev = f.l2_norm();
    for (double t : {0.01, 0.1, 1.0}) {
        double cur = heat_semigroup(f, t).l2_norm();
        CHECK(cur <= prev * (1.0 + 1e-14));
        prev = cur;
    }
}

TEST_CASE("fractional_laplacian: identity, eigenvalue |k|^{2s}, inverse pair") {
    Grid g(2, 16);
    Rng rng(13);
    SpectralField f = random_field(g, 1, rng, 5);
    CHECK(rel_diff(fractional_laplacian(f, 0.0), f) == 0.0);

    SpectralField mode(g, 1);
    mode.at(0, {1, 2, 0}) = Complex{1.0, 0.0};
    SpectralField lf = fractional_laplacian(mode, 1.0);
    CHECK(std::abs(lf.at(0, {1, 2, 0}) - Complex{5.0, 0.0}) < 1e-14); // |k|^2 with s=1

    SpectralField rt = fractional_laplacian(fractional_laplacian(f, -0.5), 0.5);
    CHECK(rel_diff(rt, f) < 1e-12);

    SpectralField with_mean = f;
    with_mean.component(0)[0] = Complex{1.0, 0.0};
    CHECK_THROWS_AS(fractional_laplacian(with_mean, -0.5), ZeroModeError);
}

TEST_CASE("nonlinearity: bilinear, divergence-free range, zero on zero") {
    Grid g(2, 32);
    Rng rng(17);
    SpectralField u = random_divergence_free(g, rng, 8);
    SpectralField v = random_divergence_free(g, rng, 8);
    SpectralField w = random_divergence_free(g, rng, 8);

    SpectralField zero(g, 2);
    CHECK(nonlinearity(zero, v).l2_norm() == 0.0);

    SpectralField lhs = nonlinearity(2.0 * u + 3.0 * w, v);
    SpectralField rhs = 2.0 * nonlinearity(u, v) + 3.0 * nonlinearity(w, v);
    CHECK(rel_diff(lhs, rhs) < 1e-12);

    CHECK(nonlinearity(u, v).divergence_defect() < 1e-12);

    Grid other(2, 16);
    SpectralField small(other, 2);
    CHECK_THROWS_AS(nonlinearity(u, small), GridError);
}

TEST_CASE("nonlinearity: symbolic expansion for the 2D vortex") {
    // div(u (x) u) for u = (sin x1 cos x2, -cos x1 sin x2) equals
    // (sin(2 x1)/2, sin(2 x2)/2); the Leray projection then kills it entirely
    Grid g(2, 32);
    SpectralField tg = taylor_green(g);
    SpectralField div = divergence_of_tensor_product(tg, tg);

    // sin(2x1)/2 has coefficients -+ i/4 at k = (+-2, 0)
    CHECK(std::abs(div.at(0, {2, 0, 0}) - Complex{0.0, -0.25}) < 1e-14);
    CHECK(std::abs(div.at(0, {-2, 0, 0}) - Complex{0.0, 0.25}) < 1e-14);
    CHECK(std::abs(div.at(1, {0, 2, 0}) - Complex{0.0, -0.25}) < 1e-14);
    CHECK(std::abs(div.at(1, {0, -2, 0}) - Complex{0.0, 0.25}) < 1e-14);
    // nothing else
    double offmass = 0.0;
    for (int c = 0; c < 2; ++c)
        for (std::size_t i = 0; i < g.size(); ++i) {
            auto k = g.wavevector(i);
            bool named = (c == 0 && k[1] == 0 && std::abs(k[0]) == 2) || (c == 1 && k[0] == 0 && std::abs(k[1]) == 2);
            if (!named) offmass = std::max(offmass, std::abs(div.component(c)[i]));
        }
    CHECK(offmass < 1e-14);

    CHECK(nonlinearity(tg, tg).l2_norm() < 1e-14);
}

TEST_CASE("serialization round trip") {
    Grid g(3, 8);
    Rng rng(23);
    SpectralField f = random_field(g, 3, rng, 3);
    auto path = std::filesystem::temp_directory_path() / "katolab_field_test.field";
    f.save(path.string());
    SpectralField back = SpectralField::load(path.string());
    CHECK(back.grid().dim() == 3);
    CHECK(back.grid().modes() == 8);
    CHECK(rel_diff(back, f) == 0.0);
    std::filesystem::remove(path);
}
