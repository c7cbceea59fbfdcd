#ifndef ESC_TEST_GENERATORS_HPP
#define ESC_TEST_GENERATORS_HPP

#include <esc/loading.hpp>
#include <esc/maps.hpp>
#include <esc/radicals.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

namespace esc_test
{

using esc::cplx;

struct Case {
    esc::SlitConfig config;
    esc::LoadingParams load;
    cplx c{1.0, 0.0};
    cplx B{0.0, 0.0};
    double gamma = 0.0;
    std::string label;
};

class Gen
{
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi)
    {
        return std::uniform_real_distribution<double>(lo, hi)(rng_);
    }
    bool coin()
    {
        return std::bernoulli_distribution(0.5)(rng_);
    }
    // gamma in [0.1, 0.9] or [1.1, 3].
    double gamma(bool above)
    {
        return above ? uniform(1.1, 3.0) : uniform(0.1, 0.9);
    }

    // Loading with prescribed gamma. Symmetric families need tau = tau_inf = 0.
    esc::LoadingParams loading(double g, bool symmetric)
    {
        const double p = uniform(-1.0, 1.0);
        const double re_a = (coin() ? 1.0 : -1.0) * uniform(0.5, 2.0);
        const double tau = symmetric ? 0.0 : uniform(-0.5, 0.5);
        const double abs_a = std::hypot(re_a, tau);
        const double phi = symmetric ? (coin() ? 0.0 : std::numbers::pi) : uniform(0.0, 2.0 * std::numbers::pi);
        const cplx b = std::polar(g * abs_a, phi);
        const double sigma = p + 2.0 * re_a;
        const double sum = sigma + p;
        const double diff = 2.0 * b.real();
        const double s1 = 0.5 * (sum - diff);
        const double s2 = 0.5 * (sum + diff);
        return esc::derive_loading(s1, s2, symmetric ? 0.0 : b.imag(), p, tau);
    }

    // Increasing interior points in (-1, 1) with a minimum spacing.
    std::vector<double> line_endpoints(int n)
    {
        while (true) {
            std::vector<double> e{-1.0, 1.0};
            for (int i = 0; i < 2 * n - 2; ++i) {
                e.push_back(uniform(-0.95, 0.95));
            }
            std::sort(e.begin(), e.end());
            bool ok = true;
            for (std::size_t i = 1; i < e.size(); ++i) {
                ok = ok && e[i] - e[i - 1] > 0.05;
            }
            if (ok) {
                return e;
            }
        }
    }

    Case make(esc::CaseFamily family, bool above, int line_n = 3)
    {
        Case c;
        c.gamma = gamma(above);
        const bool symmetric = family == esc::CaseFamily::n2_sym_finite || family == esc::CaseFamily::n2_sym_inf;
        c.load = loading(c.gamma, symmetric);
        c.c = cplx(uniform(0.5, 2.0), 0.0);
        c.B = cplx(uniform(-1.0, 1.0), uniform(-1.0, 1.0));
        switch (family) {
            case esc::CaseFamily::n1:
                c.config = esc::SlitConfig::n1();
                break;
            case esc::CaseFamily::n2_finite:
                c.config = esc::SlitConfig::n2_finite(uniform(0.02, 0.4), uniform(-0.7, 0.7));
                break;
            case esc::CaseFamily::n2_sym_finite:
                c.config = esc::SlitConfig::n2_sym_finite(uniform(0.02, 0.4));
                break;
            case esc::CaseFamily::n2_sym_inf:
                c.config = esc::SlitConfig::n2_sym_inf(uniform(0.02, 0.4));
                break;
            case esc::CaseFamily::n3_finite: {
                const double y = (coin() ? 1.0 : -1.0) * uniform(0.3, 1.5);
                c.config = esc::SlitConfig::n3_finite(uniform(0.1, 0.4), uniform(-0.8, -0.3), uniform(0.3, 0.8),
                                                      cplx(uniform(-1.5, 1.5), y));
                break;
            }
            case esc::CaseFamily::n_line:
                c.config = esc::SlitConfig::n_line(line_endpoints(line_n));
                break;
        }
        c.label = std::string(esc::family_name(family)) + (above ? " gamma>1" : " gamma<1") +
                  " gamma=" + std::to_string(c.gamma);
        return c;
    }

private:
    std::mt19937_64 rng_;
};

inline std::unique_ptr<esc::ConformalMap> build(const Case &c, double tol = 1e-11)
{
    return esc::make_map(c.config, c.load, c.c, c.B, tol);
}

} // namespace esc_test

#endif
