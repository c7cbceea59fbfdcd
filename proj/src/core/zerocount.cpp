#include <esc/error.hpp>
#include <esc/maps.hpp>
#include <esc/quadrature.hpp>
#include <esc/zerocount.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace esc
{

namespace
{

constexpr double two_pi = 2.0 * std::numbers::pi;

int rounded_count(double value, const char *what)
{
    const double r = std::round(value);
    if (!(std::abs(value - r) <= 0.05)) {
        fail(ErrorCode::non_integer_count, std::string(what) + " gave non-integer value " + std::to_string(value));
    }
    return static_cast<int>(r);
}

int removable_multiplicity(const ConformalMap &map)
{
    int m = 0;
    for (const auto &[z, mult] : map.removable_eta_zeros()) {
        m += mult;
    }
    return m;
}

void finish_report(ZeroReport &rep, const LoadingParams &load, int removable)
{
    rep.gamma = load.gamma;
    if (rep.Z) {
        rep.omega_prime_zeros = *rep.Z - removable;
    }
    rep.verdict = classify(load, rep.Z);
}

} // namespace

std::string_view method_name(CountMethod method) noexcept
{
    switch (method) {
        case CountMethod::argument_principle:
            return "argument-principle";
        case CountMethod::closed_form:
            return "closed-form";
        case CountMethod::oracle:
            return "oracle";
    }
    return "unknown";
}

std::string_view verdict_name(Verdict verdict) noexcept
{
    switch (verdict) {
        case Verdict::exists:
            return "exists";
        case Verdict::nonexistent:
            return "nonexistent";
        case Verdict::degenerate:
            return "degenerate";
        case Verdict::degenerate_adjacent:
            return "degenerate-adjacent";
    }
    return "unknown";
}

Verdict classify(const LoadingParams &load, std::optional<int> count) noexcept
{
    if (is_gamma_unit(load)) {
        return Verdict::degenerate;
    }
    if (load.gamma > 0.98 && load.gamma < 1.02) {
        return Verdict::degenerate_adjacent;
    }
    if (!count) {
        return Verdict::degenerate_adjacent;
    }
    return *count == 0 ? Verdict::exists : Verdict::nonexistent;
}

// ---------------------------------------------------------------------------
// Argument principle

ZeroReport count_argument_principle(const ConformalMap &map)
{
    const Branch &br = map.branch();
    auto eta_side = [&](double xi, Side side) {
        const cplx f = br.side_value(xi, side);
        return map.eta(xi, f);
    };

    double eta_max = 0.0;
    double eta_min = std::numeric_limits<double>::infinity();
    double where = 0.0;
    constexpr int guard_samples = 512;
    for (int m = 0; m < br.slit_count(); ++m) {
        const double lo = br.slit_lo(m);
        const double half = 0.5 * (br.slit_hi(m) - lo);
        for (int i = 1; i < guard_samples; ++i) {
            const double s = std::sin(0.5 * std::numbers::pi * i / guard_samples);
            const double xi = lo + 2.0 * half * s * s;
            for (Side side : {Side::upper, Side::lower}) {
                const double v = std::abs(eta_side(xi, side));
                eta_max = std::max(eta_max, v);
                if (v < eta_min) {
                    eta_min = v;
                    where = xi;
                }
            }
        }
    }
    if (!(eta_min >= 1e-10 * eta_max)) {
        fail(ErrorCode::on_contour_zero, "eta nearly vanishes on a slit bank near xi = " + std::to_string(where));
    }

    cplx total(0.0, 0.0);
    for (int m = 0; m < br.slit_count(); ++m) {
        SlitIntegral si;
        si.lo = br.slit_lo(m);
        si.hi = br.slit_hi(m);
        si.integrand_offset = [&, m](double xi, double dl, double dh) {
            const cplx fu = br.side_value_offset(m, dl, dh, Side::upper);
            const cplx fl = std::conj(fu);
            const cplx ld = br.log_derivative_offset(m, dl, dh);
            return map.eta_prime(xi, fu, fu * ld) / map.eta(xi, fu) - map.eta_prime(xi, fl, fl * ld) / map.eta(xi, fl);
        };
        total += integrate_slit(si, map.tolerance()).value;
    }
    const cplx value = static_cast<double>(map.eta_degree()) + total / cplx(0.0, two_pi);

    ZeroReport rep;
    rep.method = CountMethod::argument_principle;
    rep.raw = value.real();
    if (!(std::abs(value.imag()) <= 0.05)) {
        fail(ErrorCode::non_integer_count, "argument principle left an imaginary part " + std::to_string(value.imag()));
    }
    rep.Z = rounded_count(value.real(), "argument principle");
    finish_report(rep, map.loading(), removable_multiplicity(map));
    return rep;
}

// ---------------------------------------------------------------------------
// Closed forms

N2InfClosedForm count_closed_form_n2inf(const LoadingParams &load, double k, double rho, double tol)
{
    if (is_gamma_unit(load)) {
        fail(ErrorCode::degenerate_loading, "closed-form count is undefined at gamma = 1");
    }
    if (!(k > 0.0 && k < 1.0)) {
        fail(ErrorCode::invalid_argument, "k must lie in (0, 1)");
    }
    const double a0 = load.alpha_minus;
    const double a1 = load.alpha_plus;
    const double ik2 = 1.0 / (k * k);
    const double mp = 0.5 * (ik2 + 1.0);
    const double mm = 0.5 * (ik2 - 1.0);

    N2InfClosedForm out;
    out.report.method = CountMethod::closed_form;

    // Integral form.
    SlitIntegral si;
    si.lo = 1.0;
    si.hi = 1.0 / k;
    si.integrand_offset = [&](double x, double dl, double dh) {
        const double p2 = dl * (x + 1.0) * dh * (x + 1.0 / k);
        const double q = x * x - rho;
        return cplx(2.0 * (q * (2.0 * x * x - 1.0 - ik2) + 2.0 * p2) * x / ((a1 * a1 * q * q + a0 * a0 * p2) * std::sqrt(p2)),
                    0.0);
    };
    out.integral = integrate_slit(si, tol).value.real();
    out.integral_inverted = 2.0 - a0 * a1 * out.integral / std::numbers::pi;
    out.integral_corrected = 2.0 + a0 * a1 * out.integral / std::numbers::pi;

    // d = (w + 1/w) / 2 solves mm diff d^2 - 2 a1^2 (rho - mp) d + C = 0.
    const double diff = a1 * a1 - a0 * a0;
    const double scale = a1 * a1 + a0 * a0;
    const double C = (a1 * a1 * (rho - mp) * (rho - mp) + a0 * a0 * mm * mm) / mm;
    if (std::abs(diff) > 1e-12 * scale) {
        const cplx disc = a1 * a1 * (mp - rho) * (mp - rho) - mm * mm * diff;
        const cplx sq = std::sqrt(disc);
        const cplx dp = (a1 * a1 * (rho - mp) + a0 * sq) / (mm * diff);
        const cplx dm = (a1 * a1 * (rho - mp) - a0 * sq) / (mm * diff);
        const cplx sp = std::sqrt(dp * dp - 1.0);
        const cplx sm = std::sqrt(dm * dm - 1.0);
        out.w = {dp + sp, dm + sm, dp - sp, dm - sm};
    } else if (a1 != 0.0 && rho != mp) {
        // diff = 0: the quartic in w loses its leading and constant terms,
        // one root pair goes to {0, infinity}.
        const cplx d = C / (2.0 * a1 * a1 * (rho - mp));
        const cplx sd = std::sqrt(d * d - 1.0);
        out.w = {d + sd, cplx(std::numeric_limits<double>::infinity(), 0.0), d - sd, cplx(0.0, 0.0)};
    }
    if (a1 != 0.0 && (std::abs(diff) > 1e-12 * scale || rho != mp)) {
        const double ast = a0 / a1;
        cplx sum(0.0, 0.0);
        for (const cplx w : out.w) {
            if (!(std::abs(w) < 1.0)) {
                continue;
            }
            ++out.inside;
            const cplx num = (mm * (w * w + 1.0) + 2.0 * mp * w) * (mp - rho) + 2.0 * w * (rho * mp - ik2);
            const cplx g = mm * mm * (1.0 - ast * ast) * w * (w * w + 1.0) + mm * (mp - rho) * (3.0 * w * w + 1.0) +
                           2.0 * w * ((mp - rho) * (mp - rho) + ast * ast * mm * mm);
            sum += num / g;
        }
        if (out.inside != 2) {
            fail(ErrorCode::root_selection,
                 std::to_string(out.inside) + " of the four residue roots lie inside the unit disc, expected 2");
        }
        out.residue_inverted = 2.0 - ast * sum.real();
        out.residue_corrected = 2.0 + ast * sum.real();
    }

    const double chosen = out.residue_corrected ? *out.residue_corrected : out.integral_corrected;
    out.report.raw = chosen;
    out.report.Z = rounded_count(chosen, "closed-form count");
    if (out.residue_corrected) {
        out.forms_agree = std::abs(out.integral_corrected - *out.residue_corrected) <= 0.05;
    }
    finish_report(out.report, load, 0);
    return out;
}

ZeroReport count_closed_form_n1(const LoadingParams &load)
{
    ZeroReport rep;
    rep.method = CountMethod::closed_form;
    const N1Poles poles = poles_n1(load);
    rep.Z = poles.count;
    rep.raw = poles.count;
    for (cplx z : poles.locations) {
        rep.zeros.push_back({z, 1});
    }
    finish_report(rep, load, 0);
    return rep;
}

// ---------------------------------------------------------------------------
// Winding oracle

namespace
{

struct Ambiguous {
};

class Oracle
{
public:
    Oracle(const ConformalMap &map, const OracleOptions &opt, double R, double jitter)
        : map_(map), br_(map.branch()), opt_(opt), jitter_(jitter)
    {
        x0_ = -R * (1.0 + 0.0131 * jitter_);
        x1_ = R * (1.0 + 0.0173 * jitter_);
        y1_ = R * (1.0 + 0.0157 * jitter_);
    }

    ZeroReport run()
    {
        find_axis_zeros();
        ZeroReport rep;
        rep.method = CountMethod::oracle;
        int total = 0;
        for (const auto &z : axis_zeros_) {
            rep.zeros.push_back({cplx(z.x, 0.0), z.multiplicity});
            total += z.multiplicity;
        }
        for (int half : {1, -1}) {
            Box b{x0_, x1_, 0.0, y1_, half};
            if (half < 0) {
                b.y0 = -y1_;
                b.y1 = 0.0;
            }
            const int w = winding(b);
            if (w < 0) {
                throw Ambiguous{};
            }
            total += w;
            refine(b, w, rep.zeros);
        }
        rep.Z = total;
        rep.raw = total;
        return rep;
    }

    // Winding of eta around |zeta| = r, which must clear every slit.
    int circle_winding(double r) const
    {
        const double w = arg_change(
                             [&](double t) { return t == 1.0 ? cplx(r, 0.0) : std::polar(r, two_pi * t); }, 1) /
                         two_pi;
        const double n = std::round(w);
        if (std::abs(w - n) > 0.1) {
            throw Ambiguous{};
        }
        return static_cast<int>(n);
    }

private:
    struct Box {
        double x0, x1, y0, y1;
        int half; // +1 upper region, -1 lower region; the axis edge is y = 0
    };
    struct AxisZero {
        double x;
        int multiplicity;
        double radius;
    };

    cplx eta(cplx z, int half) const
    {
        if (z.imag() == 0.0) {
            const double x = z.real();
            if (br_.slit_of(x)) {
                return map_.eta(x, br_.side_value(x, half > 0 ? Side::upper : Side::lower));
            }
        }
        return map_.eta(z, br_(z));
    }

    cplx eta_prime(cplx z) const
    {
        const cplx f = br_(z);
        return map_.eta_prime(z, f, f * br_.log_derivative(z));
    }

    // Argument change of eta along a parametrized path.
    template <class Path> double arg_change(const Path &path, int half) const
    {
        const int n = opt_.initial_samples;
        double total = 0.0;
        double t_prev = 0.0;
        cplx e_prev = eta(path(0.0), half);
        check_sample(e_prev);
        for (int i = 1; i <= n; ++i) {
            const double t = static_cast<double>(i) / n;
            const cplx e = eta(path(t), half);
            check_sample(e);
            total += segment_change(path, half, t_prev, e_prev, t, e, 0);
            t_prev = t;
            e_prev = e;
        }
        return total;
    }

    template <class Path>
    double segment_change(const Path &path, int half, double ta, cplx ea, double tb, cplx eb, int depth) const
    {
        const double d = std::arg(eb / ea);
        if (std::abs(d) <= opt_.max_arg_step) {
            return d;
        }
        if (depth > 48) {
            throw Ambiguous{};
        }
        const double tm = 0.5 * (ta + tb);
        const cplx em = eta(path(tm), half);
        check_sample(em);
        return segment_change(path, half, ta, ea, tm, em, depth + 1) + segment_change(path, half, tm, em, tb, eb, depth + 1);
    }

    static void check_sample(cplx e)
    {
        if (!(std::abs(e) > 0.0) || !std::isfinite(e.real()) || !std::isfinite(e.imag())) {
            throw Ambiguous{};
        }
    }

    double line_change(cplx a, cplx b, int half) const
    {
        return arg_change([&](double t) { return t == 1.0 ? b : a + (b - a) * t; }, half);
    }

    // Axis edge from xa to xb with dents away from the box around gap zeros.
    double axis_change(double xa, double xb, int half) const
    {
        const double dir = xb > xa ? 1.0 : -1.0;
        std::vector<const AxisZero *> inside;
        for (const auto &z : axis_zeros_) {
            if ((z.x - xa) * dir > 0.0 && (xb - z.x) * dir > 0.0) {
                inside.push_back(&z);
            }
        }
        std::sort(inside.begin(), inside.end(), [&](auto *p, auto *q) { return (p->x - q->x) * dir < 0.0; });
        // Branch points are break points so that every slit and gap gets its
        // own initial sampling.
        auto run = [&](double from, double to) {
            double t = 0.0;
            double at = from;
            std::vector<double> cuts;
            for (double r : br_.roots()) {
                if ((r - from) * dir > 0.0 && (to - r) * dir > 0.0) {
                    cuts.push_back(r);
                }
            }
            std::sort(cuts.begin(), cuts.end(), [&](double p, double q) { return (p - q) * dir < 0.0; });
            for (double r : cuts) {
                t += line_change(at, r, half);
                at = r;
            }
            return t + line_change(at, to, half);
        };
        double total = 0.0;
        double x = xa;
        for (const AxisZero *z : inside) {
            const double r = z->radius;
            if (std::abs(z->x - xa) <= r || std::abs(xb - z->x) <= r) {
                throw Ambiguous{};
            }
            const double enter = z->x - dir * r;
            total += run(x, enter);
            // Upper boxes detour above the zero, lower boxes below it.
            const double s = half > 0 ? 1.0 : -1.0;
            total += arg_change(
                [&](double t) {
                    const double th = std::numbers::pi * t;
                    return cplx(z->x - dir * r * std::cos(th), s * r * std::sin(th));
                },
                half);
            x = z->x + dir * r;
        }
        total += run(x, xb);
        return total;
    }

    int winding(const Box &b) const
    {
        const cplx c00(b.x0, b.y0), c10(b.x1, b.y0), c11(b.x1, b.y1), c01(b.x0, b.y1);
        double total = 0.0;
        if (b.half > 0 && b.y0 == 0.0) {
            total += axis_change(b.x0, b.x1, b.half);
        } else {
            total += line_change(c00, c10, b.half);
        }
        total += line_change(c10, c11, b.half);
        if (b.half < 0 && b.y1 == 0.0) {
            total += axis_change(b.x1, b.x0, b.half);
        } else {
            total += line_change(c11, c01, b.half);
        }
        total += line_change(c01, c00, b.half);
        const double w = total / two_pi;
        const double r = std::round(w);
        if (std::abs(w - r) > 0.1) {
            throw Ambiguous{};
        }
        return static_cast<int>(r);
    }

    double split_x(const Box &b) const
    {
        double x = b.x0 + (0.5 + 0.0123 * (1.0 + jitter_)) * (b.x1 - b.x0);
        // Keep vertical edges clear of the dents.
        for (const auto &z : axis_zeros_) {
            if (std::abs(x - z.x) < 3.0 * z.radius) {
                const double alt = x < z.x ? z.x - 3.0 * z.radius : z.x + 3.0 * z.radius;
                x = alt > b.x0 && alt < b.x1 ? alt : x;
            }
        }
        return x;
    }

    void refine(const Box &b, int w, std::vector<LocatedZero> &out) const
    {
        if (w == 0) {
            return;
        }
        const double size = std::max(b.x1 - b.x0, b.y1 - b.y0);
        // Cancellation noise swamps eta near its removable zeros, so a box
        // that isolates one stops at a coarser size.
        for (const auto &[z, mult] : map_.removable_eta_zeros()) {
            const bool in_box = z.real() > b.x0 && z.real() < b.x1 && z.imag() > b.y0 && z.imag() < b.y1;
            if (in_box && w == mult && size < 1e-4 * (1.0 + std::abs(z))) {
                out.push_back({z, w});
                return;
            }
        }
        if (size < opt_.min_box) {
            out.push_back({polish(cplx(0.5 * (b.x0 + b.x1), 0.5 * (b.y0 + b.y1)), size), w});
            return;
        }
        const double xm = split_x(b);
        const double ym = b.y0 + (0.5 + 0.0089 * (1.0 + jitter_)) * (b.y1 - b.y0);
        const Box kids[4] = {{b.x0, xm, b.y0, ym, b.half},
                             {xm, b.x1, b.y0, ym, b.half},
                             {b.x0, xm, ym, b.y1, b.half},
                             {xm, b.x1, ym, b.y1, b.half}};
        int ws[4];
        int sum = 0;
        for (int i = 0; i < 4; ++i) {
            ws[i] = winding(kids[i]);
            if (ws[i] < 0) {
                throw Ambiguous{};
            }
            sum += ws[i];
        }
        if (sum != w) {
            throw Ambiguous{};
        }
        for (int i = 0; i < 4; ++i) {
            refine(kids[i], ws[i], out);
        }
    }

    // Newton from the box centre; keeps the centre if the step wanders.
    cplx polish(cplx z0, double size) const
    {
        cplx z = z0;
        try {
            for (int it = 0; it < 30; ++it) {
                const cplx e = map_.eta(z, br_(z));
                const cplx d = eta_prime(z);
                if (e == 0.0 || d == 0.0) {
                    break;
                }
                const cplx step = e / d;
                z -= step;
                if (std::abs(z - z0) > 4.0 * size) {
                    return z0;
                }
                if (std::abs(step) < 1e-15 * (1.0 + std::abs(z))) {
                    break;
                }
            }
        } catch (const Error &) {
            return z0;
        }
        return z;
    }

    void find_axis_zeros()
    {
        const auto &roots = br_.roots();
        std::vector<std::pair<double, double>> gaps;
        double left = x0_;
        for (std::size_t i = 0; i < roots.size(); i += 2) {
            if (roots[i] > left) {
                gaps.emplace_back(left, roots[i]);
            }
            left = roots[i + 1];
        }
        gaps.emplace_back(left, x1_);

        constexpr int samples = 4000;
        for (const auto &[ga, gb] : gaps) {
            const double len = gb - ga;
            std::vector<double> xs(samples + 1);
            std::vector<double> v(samples + 1);
            for (int i = 0; i <= samples; ++i) {
                const double s = std::sin(0.5 * std::numbers::pi * i / samples);
                const double c = std::cos(0.5 * std::numbers::pi * i / samples);
                xs[i] = 2 * i <= samples ? ga + len * s * s : gb - len * c * c;
                v[i] = std::abs(map_.eta(xs[i], br_(xs[i])));
            }
            for (int i = 1; i < samples; ++i) {
                if (!(v[i] <= v[i - 1] && v[i] <= v[i + 1])) {
                    continue;
                }
                const double local = std::max(v[i - 1], v[i + 1]);
                cplx z(xs[i], 0.0);
                bool ok = false;
                try {
                    for (int it = 0; it < 200; ++it) {
                        const cplx e = map_.eta(z, br_(z));
                        if (std::abs(e) <= 1e-14 * local) {
                            ok = true;
                            break;
                        }
                        const cplx d = eta_prime(z);
                        if (d == 0.0) {
                            break;
                        }
                        z -= e / d;
                        if (!(z.real() > ga && z.real() < gb) || std::abs(z.imag()) > 1e-3 * len) {
                            break;
                        }
                    }
                    ok = ok || std::abs(map_.eta(z, br_(z))) <= 1e-10 * local;
                } catch (const Error &) {
                    ok = false;
                }
                if (!ok || std::abs(z.imag()) > 1e-9 * (1.0 + std::abs(z))) {
                    continue;
                }
                const double x = z.real();
                const double clearance = std::min(x - ga, gb - x);
                if (clearance < 1e-9 * (1.0 + std::abs(x))) {
                    continue;
                }
                bool dup = false;
                for (const auto &q : axis_zeros_) {
                    dup = dup || std::abs(q.x - x) < 1e-7 * (1.0 + std::abs(x));
                }
                if (dup) {
                    continue;
                }
                axis_zeros_.push_back({x, 0, std::min(1e-3 * len, 0.25 * clearance)});
            }
        }
        for (auto &z : axis_zeros_) {
            for (const auto &q : axis_zeros_) {
                if (&q != &z) {
                    z.radius = std::min(z.radius, 0.25 * std::abs(q.x - z.x));
                }
            }
        }
        for (auto &z : axis_zeros_) {
            const double r = z.radius;
            const double w = arg_change(
                                 [&](double t) {
                                     const double th = two_pi * t;
                                     return cplx(z.x + r * std::cos(th), r * std::sin(th));
                                 },
                                 1) /
                             two_pi;
            z.multiplicity = static_cast<int>(std::round(w));
            if (std::abs(w - z.multiplicity) > 0.1 || z.multiplicity < 1) {
                throw Ambiguous{};
            }
        }
    }

    const ConformalMap &map_;
    const Branch &br_;
    const OracleOptions &opt_;
    double jitter_;
    double x0_ = 0.0, x1_ = 0.0, y1_ = 0.0;
    std::vector<AxisZero> axis_zeros_;
};

double default_radius(const ConformalMap &map)
{
    const SlitConfig &cfg = map.config();
    switch (cfg.family) {
        case CaseFamily::n2_finite:
        case CaseFamily::n2_sym_finite:
        case CaseFamily::n2_sym_inf:
        case CaseFamily::n3_finite:
            return 10.0 / cfg.k;
        default:
            return 10.0;
    }
}

} // namespace

ZeroReport locate_zeros_oracle(const ConformalMap &map, const OracleOptions &options)
{
    double R = options.search_radius;
    if (!(R > 0.0)) {
        // Grow until the circle winding reaches the degree at infinity, so
        // that no zero lies outside the search square.
        R = default_radius(map);
        bool found = false;
        for (int grow = 0; grow < 60 && !found; ++grow) {
            try {
                const Oracle probe(map, options, R, 0.0);
                found = probe.circle_winding(R) == map.eta_degree();
            } catch (const Ambiguous &) {
            }
            if (!found) {
                R *= 1.9;
            }
        }
        if (!found) {
            fail(ErrorCode::boundary_sample_failure, "winding oracle found zeros beyond every search radius");
        }
    }
    for (int attempt = 0; attempt <= options.retries; ++attempt) {
        try {
            Oracle oracle(map, options, R, static_cast<double>(attempt));
            ZeroReport rep = oracle.run();
            finish_report(rep, map.loading(), removable_multiplicity(map));
            return rep;
        } catch (const Ambiguous &) {
        }
    }
    fail(ErrorCode::boundary_sample_failure, "winding oracle could not sample box boundaries unambiguously");
}

} // namespace esc
