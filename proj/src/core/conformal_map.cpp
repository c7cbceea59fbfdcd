#include <esc/conformal_map.hpp>
#include <esc/error.hpp>
#include <esc/quadrature.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace esc
{

ConformalMap::ConformalMap(SlitConfig config, LoadingParams load, cplx c, cplx B, double tol)
    : config_(std::move(config)), branch_(config_), load_(load), c_(c), B_(B), tol_(tol), abar_(std::conj(load.a))
{
    config_.validate();
    if (load_.a == cplx(0.0, 0.0)) {
        fail(ErrorCode::null_loading, "loading parameter a vanishes");
    }
    if (c_ == cplx(0.0, 0.0) || !std::isfinite(c_.real()) || !std::isfinite(c_.imag())) {
        fail(ErrorCode::invalid_argument, "scale c must be finite and nonzero");
    }
    if (!std::isfinite(B_.real()) || !std::isfinite(B_.imag())) {
        fail(ErrorCode::invalid_argument, "additive constant B must be finite");
    }
    if (!(tol_ > 0.0)) {
        fail(ErrorCode::invalid_argument, "tolerance must be positive");
    }
}

cplx ConformalMap::omega_prime(cplx z) const
{
    if (auto zi = zeta_inf(); zi && std::abs(z - *zi) < 1e-10) {
        fail(ErrorCode::pole_hit, "omega' evaluated at the preimage of infinity");
    }
    return omega_prime(z, branch_(z));
}

cplx ConformalMap::psi(cplx z) const
{
    return psi(z, branch_(z));
}

double ConformalMap::residual(const std::string &name) const
{
    for (const auto &r : residuals_) {
        if (r.name == name) {
            return r.value;
        }
    }
    fail(ErrorCode::invalid_argument, "no residual named " + name);
}

std::pair<cplx, double> ConformalMap::loop_integral(int m) const
{
    SlitIntegral mag;
    mag.lo = branch_.slit_lo(m);
    mag.hi = branch_.slit_hi(m);
    mag.integrand_offset = [this, m](double xi, double dl, double dh) {
        const cplx fu = branch_.side_value_offset(m, dl, dh, Side::upper);
        const cplx z(xi, 0.0);
        return cplx(std::abs(omega_prime(z, fu)) + std::abs(omega_prime(z, std::conj(fu))), 0.0);
    };
    const double scale = integrate_slit(mag, tol_).value.real();
    // The loop value is ideally zero, so the target is relative to the scale.
    const cplx value = esc::loop_integral(
        branch_, m, [this](double xi, cplx f) { return omega_prime(cplx(xi, 0.0), f); },
        tol_ * std::max(1.0, scale));
    return {value, scale};
}

cplx ConformalMap::path_integral(cplx from, cplx to, bool singular_from, bool singular_to) const
{
    std::optional<cplx> avoid;
    for (cplx p : q_poles()) {
        if (!avoid || std::abs(p - from) < std::abs(*avoid - from)) {
            avoid = p;
        }
    }
    auto g = [this](cplx z) { return q_part(z) / branch_(z); };
    return integrate_segment(from, to, g, singular_from, singular_to, tol_, avoid).value;
}

namespace
{

double segment_distance(cplx p, cplx a, cplx b)
{
    const cplx d = b - a;
    const double len2 = std::norm(d);
    double t = len2 > 0.0 ? std::real((p - a) * std::conj(d)) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(a + t * d - p);
}

} // namespace

cplx ConformalMap::gap_integral(double from, double to) const
{
    const auto &roots = branch_.roots();
    auto is_root = [&](double x) { return std::find(roots.begin(), roots.end(), x) != roots.end(); };
    const bool sing_from = is_root(from);
    const bool sing_to = is_root(to);
    const auto poles = q_poles();
    const cplx a(from, 0.0);
    const cplx b(to, 0.0);
    const double len = std::abs(to - from);

    auto clearance = [&](const std::vector<cplx> &path) {
        double best = std::numeric_limits<double>::infinity();
        for (cplx p : poles) {
            for (std::size_t i = 0; i + 1 < path.size(); ++i) {
                best = std::min(best, segment_distance(p, path[i], path[i + 1]));
            }
        }
        return best;
    };

    // Q/f has zero residue at its poles, so any pole-free deformation of the
    // gap path gives the same value. Prefer the straight path.
    std::vector<cplx> best_path{a, b};
    double best_clear = clearance(best_path);
    if (best_clear < 0.05 * len) {
        const cplx mid = 0.5 * (a + b);
        for (double h : {0.5, -0.5, 1.0, -1.0, 2.0, -2.0}) {
            std::vector<cplx> path{a, mid + cplx(0.0, h * len), b};
            const double cl = clearance(path);
            if (cl > best_clear) {
                best_clear = cl;
                best_path = path;
            }
        }
    }
    if (best_path.size() == 2) {
        return path_integral(a, b, sing_from, sing_to);
    }
    return path_integral(best_path[0], best_path[1], sing_from, false) +
           path_integral(best_path[1], best_path[2], false, sing_to);
}

std::vector<cplx> ConformalMap::compute_bases() const
{
    std::vector<cplx> bases(branch_.slit_count());
    bases[0] = B_;
    for (int m = 1; m < branch_.slit_count(); ++m) {
        // P is single-valued, so only the Q/f part accumulates; the full
        // one-sided integral over slit m-1 vanishes by the loop condition.
        bases[m] = bases[m - 1] + gap_integral(branch_.slit_hi(m - 1), branch_.slit_lo(m));
    }
    return bases;
}

void ConformalMap::finalize()
{
    bases_ = compute_bases();
    for (int m = 0; m < branch_.slit_count(); ++m) {
        const auto [value, scale] = loop_integral(m);
        add_residual("loop_l" + std::to_string(m), std::abs(value) / std::max(scale, 1e-300));
    }
}

} // namespace esc
