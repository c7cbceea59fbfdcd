#include <esc/error.hpp>
#include <esc/verify.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace esc
{

BoundaryResidual boundary_residual(const ConformalMap &map, int samples_per_side)
{
    if (samples_per_side < 64) {
        fail(ErrorCode::invalid_argument, "boundary_residual needs at least 64 samples per side");
    }
    const Branch &br = map.branch();
    const cplx a = map.loading().a;

    struct Point {
        int slit;
        double xi;
        cplx wp;
        cplx pw;
    };
    std::vector<Point> pts;
    for (int m = 0; m < br.slit_count(); ++m) {
        const double lo = br.slit_lo(m);
        const double len = br.slit_hi(m) - lo;
        for (int i = 1; i < samples_per_side; ++i) {
            const double s = std::sin(0.5 * std::numbers::pi * i / samples_per_side);
            const double xi = lo + len * s * s;
            for (Side side : {Side::upper, Side::lower}) {
                const cplx f = br.side_value(xi, side);
                pts.push_back({m, xi, map.omega_prime(xi, f), map.psi_omega_prime(xi, f)});
            }
        }
    }
    std::vector<double> mags(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        mags[i] = std::abs(pts[i].wp);
    }
    std::nth_element(mags.begin(), mags.begin() + mags.size() / 2, mags.end());
    const double median = mags[mags.size() / 2];

    BoundaryResidual out;
    out.samples = static_cast<int>(pts.size());
    for (const Point &p : pts) {
        const double wm = std::abs(p.wp);
        if (wm < 1e-8 * median) {
            ++out.near_zero_samples;
            continue;
        }
        const double r = std::abs(p.pw + a * std::conj(p.wp)) / (std::abs(a) * std::max(wm, 1e-300));
        if (!(r <= out.max)) {
            out.max = r;
            out.worst_xi = p.xi;
            out.worst_slit = p.slit;
        }
    }
    return out;
}

namespace
{

StressSample stress_at(const ConformalMap &map, double xi, Side side)
{
    const LoadingParams &L = map.loading();
    const cplx f = map.branch().side_value(xi, side);
    const cplx wp = map.omega_prime(xi, f);
    const cplx Psi = map.psi_omega_prime(xi, f) / wp;
    const double S = L.sigma + L.p;
    const cplx rot = -wp / std::conj(wp);
    const cplx R = rot * 2.0 * Psi;
    StressSample out;
    out.sigma1 = 0.5 * S - Psi.real();
    out.sigma2 = 0.5 * S + Psi.real();
    out.tau12 = Psi.imag();
    out.sigma_t = 0.5 * (S + R.real());
    out.sigma_n = 0.5 * (S - R.real());
    out.tau_nt = 0.5 * R.imag();
    out.xi = xi;
    out.side = static_cast<int>(side);
    return out;
}

double distance_to_segment(cplx z, double lo, double hi)
{
    const double x = std::clamp(z.real(), lo, hi);
    return std::abs(z - cplx(x, 0.0));
}

} // namespace

StressProfile stress_profile(const ConformalMap &map, int cavity, const StressOptions &options)
{
    const Branch &br = map.branch();
    if (cavity < 0 || cavity >= br.slit_count()) {
        fail(ErrorCode::invalid_argument, "cavity index out of range");
    }
    if (map.loading().gamma > 1.0 && !options.allow_inadmissible) {
        fail(ErrorCode::invalid_argument, "stress profile requested with gamma > 1; psi has poles in the domain");
    }
    for (const LocatedZero &z : options.zeros) {
        if (distance_to_segment(z.z, br.slit_lo(cavity), br.slit_hi(cavity)) < 1e-6) {
            fail(ErrorCode::pole_proximity, "a zero of omega' lies within 1e-6 of the cavity preimage");
        }
    }

    StressProfile out;
    int n = options.points_per_side;
    Contour c = trace(map, n).at(cavity);
    while (true) {
        if (2 * n > options.max_points_per_side) {
            break;
        }
        Contour finer = trace(map, 2 * n).at(cavity);
        const double change = std::abs(finer.length() - c.length()) / std::max(finer.length(), 1e-300);
        n *= 2;
        c = std::move(finer);
        if (change < options.arclength_rtol) {
            out.arclength_converged = true;
            break;
        }
    }

    const double lo = br.slit_lo(cavity);
    const double hi = br.slit_hi(cavity);
    for (std::size_t i = 0; i < c.points.size(); ++i) {
        const double xi = c.xi[i];
        if (xi <= lo || xi >= hi) {
            continue;
        }
        StressSample s = stress_at(map, xi, c.side[i] > 0 ? Side::upper : Side::lower);
        s.s = c.s[i];
        out.samples.push_back(s);
    }
    out.contour = std::move(c);
    return out;
}

// ---------------------------------------------------------------------------

namespace
{

double orient(cplx a, cplx b, cplx c)
{
    return (b.real() - a.real()) * (c.imag() - a.imag()) - (b.imag() - a.imag()) * (c.real() - a.real());
}

struct Segment {
    cplx p, q;
    int contour;
    std::size_t index;
    std::size_t count; // segments in the contour
    double xmin, xmax;
};

bool adjacent(const Segment &s, const Segment &t, bool closed)
{
    if (s.contour != t.contour) {
        return false;
    }
    const std::size_t d = s.index > t.index ? s.index - t.index : t.index - s.index;
    return d <= 1 || (closed && d == s.count - 1);
}

} // namespace

Intersection contours_intersect(const std::vector<Contour> &contours, int max_witnesses)
{
    std::vector<Segment> segs;
    std::vector<bool> closed;
    for (std::size_t ci = 0; ci < contours.size(); ++ci) {
        const auto &pts = contours[ci].points;
        closed.push_back(pts.size() > 2 && pts.front() == pts.back());
        const std::size_t n = pts.size() < 2 ? 0 : pts.size() - 1;
        for (std::size_t i = 0; i < n; ++i) {
            const cplx p = pts[i], q = pts[i + 1];
            segs.push_back({p, q, static_cast<int>(ci), i, n, std::min(p.real(), q.real()), std::max(p.real(), q.real())});
        }
    }
    std::sort(segs.begin(), segs.end(), [](const Segment &a, const Segment &b) { return a.xmin < b.xmin; });

    Intersection out;
    std::vector<const Segment *> active;
    for (const Segment &s : segs) {
        std::erase_if(active, [&](const Segment *t) { return t->xmax < s.xmin; });
        for (const Segment *t : active) {
            if (adjacent(s, *t, closed[s.contour])) {
                continue;
            }
            if (std::max(s.p.imag(), s.q.imag()) < std::min(t->p.imag(), t->q.imag()) ||
                std::max(t->p.imag(), t->q.imag()) < std::min(s.p.imag(), s.q.imag())) {
                continue;
            }
            const double o1 = orient(s.p, s.q, t->p);
            const double o2 = orient(s.p, s.q, t->q);
            const double o3 = orient(t->p, t->q, s.p);
            const double o4 = orient(t->p, t->q, s.q);
            if (o1 * o2 < 0.0 && o3 * o4 < 0.0) {
                out.intersect = true;
                const int a = std::min(s.contour, t->contour);
                const int b = std::max(s.contour, t->contour);
                if (std::find(out.pairs.begin(), out.pairs.end(), std::make_pair(a, b)) == out.pairs.end()) {
                    out.pairs.emplace_back(a, b);
                }
                if (static_cast<int>(out.witnesses.size()) < max_witnesses) {
                    const double t_par = o1 / (o1 - o2);
                    out.witnesses.push_back(t->p + (t->q - t->p) * t_par);
                }
            }
        }
        active.push_back(&s);
    }
    std::sort(out.pairs.begin(), out.pairs.end());
    return out;
}

// ---------------------------------------------------------------------------

FarField far_field(const ConformalMap &map)
{
    const cplx b = map.loading().b;
    const cplx c = map.scale();
    FarField out;
    const auto zinf = map.zeta_inf();
    // Averages over +-h cancel the odd Laurent terms; Richardson removes h^2.
    auto extrapolate = [](auto &&g, double h) {
        const cplx s1 = 0.5 * (g(h) + g(-h));
        const cplx s2 = 0.5 * (g(0.5 * h) + g(-0.5 * h));
        return (4.0 * s2 - s1) / 3.0;
    };
    if (zinf) {
        const cplx z0 = *zinf;
        // Direction off the real axis so that no sample touches a slit.
        const cplx dir = std::polar(1.0, 0.37 * std::numbers::pi);
        const double h = 1e-3 * std::max(1.0, std::abs(z0));
        out.psi_limit = extrapolate([&](double t) { return map.psi(z0 + t * dir); }, h);
        out.scale_recovered = -extrapolate(
            [&](double t) {
                const cplx d = t * dir;
                return d * d * map.omega_prime(z0 + d);
            },
            h);
    } else {
        const cplx dir = std::polar(1.0, 0.37 * std::numbers::pi);
        double extent = 1.0;
        for (double r : map.branch().roots()) {
            extent = std::max(extent, std::abs(r));
        }
        const double R = 1e4 * extent;
        // g(t) with t = 1/zeta along a ray; t -> 0 is infinity.
        out.psi_limit = extrapolate([&](double t) { return map.psi(dir / t); }, 1.0 / R);
        out.scale_recovered = extrapolate([&](double t) { return map.omega_prime(dir / t); }, 1.0 / R);
    }
    out.psi_error = std::abs(out.psi_limit - b);
    out.scale_error = std::abs(out.scale_recovered - c);
    return out;
}

Verdict overall_verdict(const LoadingParams &load, std::optional<int> Z, bool intersect) noexcept
{
    const Verdict v = classify(load, Z);
    if (v == Verdict::exists && intersect) {
        return Verdict::nonexistent;
    }
    return v;
}

} // namespace esc
