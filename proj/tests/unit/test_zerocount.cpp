#include "../support/figures.hpp"
#include "../support/generators.hpp"

#include <esc/error.hpp>
#include <esc/maps.hpp>
#include <esc/zerocount.hpp>

#include <doctest.h>

#include <algorithm>
#include <cmath>

TEST_CASE("figure pole counts by argument principle and oracle")
{
    for (const auto &fig : esc_test::figures()) {
        CAPTURE(fig.name);
        const auto map = esc::make_map(fig.config, fig.loading(), 1.0, 0.0, 1e-11);
        const auto ap = esc::count_argument_principle(*map);
        REQUIRE(ap.Z);
        CHECK(*ap.Z == fig.Z);
        CHECK(std::abs(ap.raw - fig.Z) < 1e-6);
        const auto orc = esc::locate_zeros_oracle(*map);
        CHECK(orc.Z == ap.Z);
        CHECK(ap.verdict == (fig.Z == 0 ? esc::Verdict::exists : esc::Verdict::nonexistent));
    }
}

TEST_CASE("oracle zeros are zeros of omega'")
{
    const auto figs = esc_test::figures();
    for (const char *name : {"fig3d", "fig7d", "fig8d", "fig6d"}) {
        CAPTURE(name);
        const auto &fig = *std::find_if(figs.begin(), figs.end(), [&](const auto &f) { return f.name == name; });
        const auto map = esc::make_map(fig.config, fig.loading(), 1.0, 0.0, 1e-11);
        const auto orc = esc::locate_zeros_oracle(*map);
        int total = 0, removable = 0;
        for (const auto &z : orc.zeros) {
            total += z.multiplicity;
            const auto rem = map->removable_eta_zeros();
            if (std::any_of(rem.begin(), rem.end(), [&](const auto &r) { return std::abs(r.first - z.z) < 1e-6; })) {
                removable += z.multiplicity;
                continue;
            }
            const double scale = std::abs(map->omega_prime(z.z + 0.1));
            CHECK(std::abs(map->omega_prime(z.z)) < 1e-6 * scale);
        }
        CHECK(total == orc.Z);
        CHECK(total - removable == orc.omega_prime_zeros);
    }
}

TEST_CASE("n2 symmetric closed form has two roots inside the disc")
{
    esc_test::Gen g(404);
    for (int trial = 0; trial < 20; ++trial) {
        const auto c = g.make(esc::CaseFamily::n2_sym_inf, trial % 2 == 1);
        CAPTURE(c.label);
        const auto map = esc_test::build(c);
        const auto &m = dynamic_cast<const esc::N2SymInfMap &>(*map);
        const auto cf = esc::count_closed_form_n2inf(c.load, m.k(), m.rho(), 1e-11);
        CHECK(cf.inside == 2);
        CHECK(cf.forms_agree);
        CHECK(cf.report.Z == esc::count_argument_principle(*map).Z);
        CHECK(*cf.report.Z == (c.gamma > 1.0 ? 4 : 0));
    }
}

TEST_CASE("unit ratio classification")
{
    const auto unit = esc::derive_loading(0.0, 2.0, 0.0, 0.0, 0.0);
    CHECK(esc::classify(unit, 0) == esc::Verdict::degenerate);
    const auto near = esc::derive_loading(0.01, 2.0, 0.0, 0.0, 0.0);
    CHECK(esc::classify(near, 0) == esc::Verdict::degenerate_adjacent);
    const auto low = esc::derive_loading(1.0, 2.0, 0.0, 0.0, 0.0);
    CHECK(esc::classify(low, 0) == esc::Verdict::exists);
    CHECK(esc::classify(low, 2) == esc::Verdict::nonexistent);
    CHECK_THROWS_AS(esc::count_closed_form_n2inf(unit, 0.1, 1.0, 1e-11), esc::Error);
}

TEST_CASE("n2 symmetric closed form at b = 0 takes the root limit")
{
    for (double k : {0.001, 0.1, 0.4}) {
        const auto load = esc::derive_loading(1.0, 1.0, 0.0, 0.3, 0.0);
        const auto map = esc::make_map(esc::SlitConfig::n2_sym_inf(k), load, 1.0, 0.0, 1e-11);
        const auto &m = dynamic_cast<const esc::N2SymInfMap &>(*map);
        const auto cf = esc::count_closed_form_n2inf(load, k, m.rho(), 1e-11);
        CHECK(cf.inside == 2);
        REQUIRE(cf.residue_corrected);
        CHECK(std::abs(*cf.residue_corrected) < 1e-9);
        CHECK(std::abs(cf.integral_corrected) < 1e-9);
        CHECK(std::isinf(std::abs(cf.w[1])));
        CHECK(cf.w[3] == esc::cplx(0.0, 0.0));
    }
}
