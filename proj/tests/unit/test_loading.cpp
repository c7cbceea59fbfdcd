#include "../support/figures.hpp"

#include <esc/error.hpp>
#include <esc/loading.hpp>

#include <doctest.h>

#include <cmath>

TEST_CASE("derived loading parameters")
{
    // sigma1 = 2, sigma2 = 1, tau_inf = -1, p = 0.5, tau = 0.25
    const auto L = esc::derive_loading(2.0, 1.0, -1.0, 0.5, 0.25);
    CHECK(L.sigma == doctest::Approx(2.5));
    CHECK(L.a.real() == doctest::Approx(1.0));
    CHECK(L.a.imag() == doctest::Approx(0.25));
    CHECK(L.b.real() == doctest::Approx(-0.5));
    CHECK(L.b.imag() == doctest::Approx(-1.0));
    CHECK(L.alpha_plus == doctest::Approx(0.5));
    CHECK(L.alpha_minus == doctest::Approx(-1.5));
    CHECK(L.beta_plus == doctest::Approx(-1.25));
    CHECK(L.beta_minus == doctest::Approx(-0.75));
    CHECK(L.gamma == doctest::Approx(std::abs(L.b) / std::abs(L.a)));
    // b + conj a and b - conj a
    CHECK(std::abs(L.b_plus_abar() - (L.b + std::conj(L.a))) < 1e-15);
    CHECK(std::abs(L.b_minus_abar() - (L.b - std::conj(L.a))) < 1e-15);
}

TEST_CASE("figure loading ratios match the captions to five decimals")
{
    for (const auto &f : esc_test::figures()) {
        CAPTURE(f.name);
        CHECK(std::abs(f.loading().gamma - f.caption_gamma) < 5e-6);
    }
}

TEST_CASE("loading errors and the unit ratio")
{
    // sigma = p makes a = 0.
    try {
        esc::derive_loading(1.0, 1.0, 0.3, 1.0, 0.0);
        FAIL("expected null loading");
    } catch (const esc::Error &e) {
        CHECK(e.code() == esc::ErrorCode::null_loading);
    }
    try {
        esc::derive_loading(NAN, 1.0, 0.0, 0.0, 0.0);
        FAIL("expected invalid argument");
    } catch (const esc::Error &e) {
        CHECK(e.code() == esc::ErrorCode::invalid_argument);
    }
    CHECK(esc::is_gamma_unit(esc::derive_loading(0.0, 2.0, 0.0, 0.0, 0.0)));
    CHECK_FALSE(esc::is_gamma_unit(esc::derive_loading(0.0, 2.0, 0.0, 0.0, 1e-5)));
}
