#include <esc/contour.hpp>
#include <esc/error.hpp>
#include <esc/quadrature.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace esc
{

double Contour::diameter() const
{
    // Bounding-box diagonal: within a factor sqrt(2) of the true diameter.
    if (points.empty()) {
        return 0.0;
    }
    double x0 = points[0].real(), x1 = x0, y0 = points[0].imag(), y1 = y0;
    for (cplx p : points) {
        x0 = std::min(x0, p.real());
        x1 = std::max(x1, p.real());
        y0 = std::min(y0, p.imag());
        y1 = std::max(y1, p.imag());
    }
    return std::hypot(x1 - x0, y1 - y0);
}

double Contour::signed_area() const
{
    double a = 0.0;
    const std::size_t n = points.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
        a += points[i].real() * points[i + 1].imag() - points[i + 1].real() * points[i].imag();
    }
    if (n > 1 && points.front() != points.back()) {
        a += points.back().real() * points.front().imag() - points.front().real() * points.back().imag();
    }
    return 0.5 * a;
}

std::vector<Contour> trace(const ConformalMap &map, int points_per_side)
{
    if (points_per_side < 16) {
        fail(ErrorCode::invalid_argument, "points_per_side must be at least 16");
    }
    const Branch &br = map.branch();
    const int N = points_per_side;
    std::vector<Contour> out;
    for (int m = 0; m < br.slit_count(); ++m) {
        const double lo = br.slit_lo(m);
        const double hi = br.slit_hi(m);
        const double half = 0.5 * (hi - lo);
        // Distances to both ends in half-angle form.
        auto ends = [&](double th) {
            const double s = std::sin(0.5 * th);
            const double c = std::cos(0.5 * th);
            return std::pair{2.0 * half * s * s, 2.0 * half * c * c};
        };
        auto xi_of = [&](double th) {
            const auto [dl, dh] = ends(th);
            return dl < dh ? lo + dl : hi - dh;
        };
        // d/dtheta of int_{lo}^{xi(theta)} Q / f_+, finite at both ends.
        auto integrand = [&](double th) {
            const auto [dl, dh] = ends(th);
            const double x = dl < dh ? lo + dl : hi - dh;
            return map.q_part(x) / br.side_value_offset(m, dl, dh, Side::upper) * (half * std::sin(th));
        };
        std::vector<double> thetas(N + 1);
        for (int i = 0; i <= N; ++i) {
            thetas[i] = std::numbers::pi * i / N;
        }
        const auto J = cumulative_integral(integrand, thetas, map.tolerance());

        std::vector<double> xs(N + 1);
        std::vector<cplx> Pm(N + 1);
        for (int i = 0; i <= N; ++i) {
            xs[i] = i == 0 ? lo : (i == N ? hi : xi_of(thetas[i]));
            Pm[i] = map.p_part(xs[i]);
        }
        const cplx base = map.slit_base(m);

        Contour c;
        c.cavity = m;
        for (int i = 0; i <= N; ++i) {
            c.points.push_back(Pm[i] + base + J[i]);
            c.xi.push_back(xs[i]);
            c.side.push_back(1);
        }
        c.closure_gap = std::abs(2.0 * J[N]);
        for (int i = N - 1; i >= 0; --i) {
            c.points.push_back(Pm[i] + base - J[i]);
            c.xi.push_back(xs[i]);
            c.side.push_back(-1);
        }
        c.s.resize(c.points.size());
        c.s[0] = 0.0;
        for (std::size_t i = 1; i < c.points.size(); ++i) {
            c.s[i] = c.s[i - 1] + std::abs(c.points[i] - c.points[i - 1]);
        }
        c.closed = c.closure_gap <= 1e-8 * std::max(c.diameter(), 1e-300);
        out.push_back(std::move(c));
    }
    return out;
}

} // namespace esc
