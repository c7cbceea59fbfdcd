#ifndef ESC_TEST_FIGURES_HPP
#define ESC_TEST_FIGURES_HPP

#include <esc/loading.hpp>
#include <esc/radicals.hpp>

#include <optional>
#include <string>
#include <vector>

namespace esc_test
{

// Reference parameter sets: loading, expected loading ratio (5 decimals) and
// pole count; intersect only where it is pinned down.
struct Figure {
    std::string name;
    esc::SlitConfig config;
    double s1, s2, tau_inf, p, tau;
    double caption_gamma;
    int Z;
    std::optional<bool> intersect;

    esc::LoadingParams loading() const
    {
        return esc::derive_loading(s1, s2, tau_inf, p, tau);
    }
};

inline std::vector<Figure> figures()
{
    using esc::SlitConfig;
    const esc::cplx i(0.0, 1.0);
    return {
        {"fig2", SlitConfig::n2_finite(0.01, 0.5), 1, 1, 0.1, 0, 0, 0.1, 0, {}},
        {"fig3a", SlitConfig::n2_finite(0.01, 0.0), 2, 1, -1, 0, 0, 0.745360, 0, {}},
        {"fig3b", SlitConfig::n2_finite(0.1, -0.1), 2, 1, -1, 0, 0, 0.745360, 0, {}},
        {"fig3c", SlitConfig::n2_finite(0.01, -0.1), 2, 2, 1, 0, 0, 0.5, 0, {}},
        {"fig3d", SlitConfig::n2_finite(0.01, -0.1), 1, 1, 2, 0, 0, 2.0, 4, true},
        {"fig4", SlitConfig::n2_sym_finite(0.01), 2, 1, 0, 0, 0, 1.0 / 3.0, 0, {}},
        {"fig6a", SlitConfig::n2_sym_inf(0.001), 1, 1, 0, 0, 0, 0.0, 0, {}},
        {"fig6b", SlitConfig::n2_sym_inf(0.01), 1.5, 0.5, 0, 0, 0, 0.5, 0, {}},
        {"fig6c", SlitConfig::n2_sym_inf(0.1), 1.5, 0.5, 0, 0, 0, 0.5, 0, {}},
        {"fig6d", SlitConfig::n2_sym_inf(0.1), -4, 6, 0, 0, 0, 5.0, 4, {}},
        {"fig7a", SlitConfig::n3_finite(0.2, -0.8, 0.8, i), 1, 2, 0, 0, 0, 1.0 / 3.0, 2, {}},
        {"fig7b", SlitConfig::n3_finite(0.2, -0.8, 0.8, 1.0 + i), 1, 2, 0, 0, 0, 1.0 / 3.0, 2, {}},
        {"fig7c", SlitConfig::n3_finite(0.2, -0.8, 0.8, i), 2, 1, 1, 0, 0, 0.7453560, 2, {}},
        {"fig7d", SlitConfig::n3_finite(0.2, -0.8, 0.8, i), 1, 1, 2, 0, 0, 2.0, 8, true},
        {"fig8a", SlitConfig::n_line({-1, -0.35, -0.3, 0.3, 0.35, 1}), 0, 1, 0, 5, 0, 1.0 / 9.0, 0, {}},
        {"fig8b", SlitConfig::n_line({-1, -0.5, -0.3, 0, 0.1, 1}), 2, 1, 1, 0, 0, 0.745360, 0, {}},
        {"fig8c", SlitConfig::n_line({-1, -0.5, -0.4, 0.4, 0.5, 1}), 1, 1, 0, 5, 0, 0.0, 0, {}},
        {"fig8d", SlitConfig::n_line({-1, -0.5, -0.4, 0.4, 0.5, 1}), 1, 1, 1.5, 0, 0, 1.5, 6, false},
    };
}

} // namespace esc_test

#endif
