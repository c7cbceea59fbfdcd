#include "../support/figures.hpp"

#include <esc/error.hpp>
#include <esc/contour.hpp>
#include <esc/maps.hpp>
#include <esc/verify.hpp>

#include <doctest.h>

#include <cmath>

namespace
{

std::unique_ptr<esc::ConformalMap> build(const esc_test::Figure &f)
{
    return esc::make_map(f.config, f.loading(), 1.0, 0.0, 1e-11);
}

} // namespace

TEST_CASE("figure maps satisfy their identities")
{
    for (const auto &fig : esc_test::figures()) {
        CAPTURE(fig.name);
        if (esc::is_gamma_unit(fig.loading())) {
            continue;
        }
        const auto map = build(fig);
        for (const auto &r : map->residuals()) {
            CAPTURE(r.name);
            if (r.name == "full_matrix_singularity") {
                CHECK(r.value < 1e-9);
            } else if (r.name.rfind("loop_", 0) == 0) {
                CHECK(r.value < 1e-10);
            } else {
                CHECK(r.value < 1e-9);
            }
        }
        CHECK(esc::boundary_residual(*map).max < 1e-9);
    }
}

TEST_CASE("figure maps recover the far field")
{
    for (const auto &fig : esc_test::figures()) {
        CAPTURE(fig.name);
        const auto map = build(fig);
        const auto ff = esc::far_field(*map);
        CHECK(ff.psi_error < 1e-8);
        CHECK(ff.scale_error < (fig.config.zeta_inf ? 1e-7 : 1e-8));
    }
}

TEST_CASE("contours close and there is one per cavity")
{
    for (const auto &fig : esc_test::figures()) {
        CAPTURE(fig.name);
        const auto map = build(fig);
        const auto cs = esc::trace(*map, 256);
        REQUIRE(static_cast<int>(cs.size()) == fig.config.slit_count());
        for (const auto &c : cs) {
            CHECK(c.closed);
            CHECK(c.closure_gap < 1e-8 * c.diameter());
            CHECK(c.points.front() == c.points.back());
            CHECK(c.s.back() > 0.0);
        }
    }
}

TEST_CASE("scale and offset act affinely on the contours")
{
    const auto fig = esc_test::figures().at(1);
    const auto m1 = esc::make_map(fig.config, fig.loading(), 1.0, 0.0, 1e-11);
    const esc::cplx B(0.7, -1.1);
    const auto m2 = esc::make_map(fig.config, fig.loading(), 2.5, B, 1e-11);
    const auto c1 = esc::trace(*m1, 64);
    const auto c2 = esc::trace(*m2, 64);
    for (std::size_t i = 0; i < c1.size(); ++i) {
        for (std::size_t j = 0; j < c1[i].points.size(); ++j) {
            CHECK(std::abs(c2[i].points[j] - (2.5 * c1[i].points[j] + B)) < 1e-9);
        }
    }
}

TEST_CASE("symmetric two-slit finite map matches its symmetric closed form")
{
    const auto fig = esc_test::figures().at(5);
    REQUIRE(fig.name == "fig4");
    const auto map = build(fig);
    const auto &n2 = dynamic_cast<const esc::N2FiniteMap &>(*map);
    for (esc::cplx z : {esc::cplx(0.3, 0.4), esc::cplx(-2.0, 1.0), esc::cplx(50.0, -3.0)}) {
        CHECK(std::abs(n2.omega_prime(z) - n2.omega_prime_symmetric(z)) < 1e-9 * std::abs(n2.omega_prime(z)));
    }
}

TEST_CASE("invalid geometry is rejected")
{
    const auto load = esc::derive_loading(2.0, 1.0, 0.0, 0.0, 0.0);
    CHECK_THROWS_AS(esc::make_map(esc::SlitConfig::n2_finite(1.5, 0.0), load, 1.0, 0.0, 1e-11), esc::Error);
    CHECK_THROWS_AS(esc::make_map(esc::SlitConfig::n2_finite(0.1, 1.0), load, 1.0, 0.0, 1e-11), esc::Error);
    CHECK_THROWS_AS(esc::make_map(esc::SlitConfig::n3_finite(0.2, 0.5, 0.4, {0.0, 1.0}), load, 1.0, 0.0, 1e-11),
                    esc::Error);
    CHECK_THROWS_AS(esc::make_map(esc::SlitConfig::n_line({-1, 0, 1}), load, 1.0, 0.0, 1e-11), esc::Error);
    CHECK_THROWS_AS(esc::make_map(esc::SlitConfig::n_line({-1, -0.5, 0.2, 0.1, 0.5, 1}), load, 1.0, 0.0, 1e-11),
                    esc::Error);
}
