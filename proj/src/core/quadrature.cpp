#include <esc/error.hpp>
#include <esc/quadrature.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <queue>
#include <string>

namespace esc
{

double tolerance_from_env()
{
    if (const char *s = std::getenv("ESC_TOL")) {
        char *end = nullptr;
        const double v = std::strtod(s, &end);
        if (end != s && std::isfinite(v) && v > 0.0) {
            return v;
        }
    }
    return default_tolerance;
}

const GaussRule &gauss_legendre(int n)
{
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<GaussRule>> cache;

    std::lock_guard<std::mutex> lock(mutex);
    auto &slot = cache[n];
    if (slot) {
        return *slot;
    }
    auto rule = std::make_unique<GaussRule>();
    rule->nodes.resize(n);
    rule->weights.resize(n);
    // Newton iteration on P_n from the Chebyshev-like initial guess; nodes
    // are symmetric so only half are computed.
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) {
                break;
            }
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule->nodes[i] = -x;
        rule->nodes[n - 1 - i] = x;
        rule->weights[i] = w;
        rule->weights[n - 1 - i] = w;
    }
    slot = std::move(rule);
    return *slot;
}

namespace
{

constexpr std::array<double, 8> xgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851, 0.864864423359769072789712788640926,
    0.741531185599394439863864773280788, 0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> wgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204, 0.104790010322250183839876322541518,
    0.140653259715525918745189590510238, 0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> wg = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                      0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Piece {
    double a;
    double b;
    cplx value;
    double error;
    bool operator<(const Piece &o) const
    {
        return error < o.error;
    }
};

Piece gk15(const std::function<cplx(double)> &f, double a, double b)
{
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const cplx fc = f(c);
    cplx kron = fc * wgk[7];
    cplx gauss = fc * wg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = h * xgk[j];
        const cplx fsum = f(c - dx) + f(c + dx);
        kron += wgk[j] * fsum;
        if (j % 2 == 1) {
            gauss += wg[j / 2] * fsum;
        }
    }
    kron *= h;
    gauss *= h;
    return {a, b, kron, std::abs(kron - gauss)};
}

bool within(double err, cplx value, double tol)
{
    return err <= tol * std::max(1.0, std::abs(value));
}

// Maps the angle variable onto the segment parameter t in [0, 1] so that
// sqrt-type endpoint singularities become smooth.
struct AngleMap {
    bool sing0;
    bool sing1;

    double theta_max() const
    {
        if (sing0 && sing1) {
            return std::numbers::pi;
        }
        if (sing0 || sing1) {
            return 0.5 * std::numbers::pi;
        }
        return 1.0;
    }
    struct Point {
        double t;
        double one_minus_t;
        double dt;
    };
    // Half-angle forms keep both t and 1 - t accurate near the ends.
    Point operator()(double th) const
    {
        if (sing0 && sing1) {
            const double s = std::sin(0.5 * th);
            const double c = std::cos(0.5 * th);
            return {s * s, c * c, 0.5 * std::sin(th)};
        }
        if (sing0) {
            const double s = std::sin(0.5 * th);
            return {2.0 * s * s, std::cos(th), std::sin(th)};
        }
        if (sing1) {
            const double s = std::sin(0.25 * std::numbers::pi - 0.5 * th);
            return {std::sin(th), 2.0 * s * s, std::cos(th)};
        }
        return {th, 1.0 - th, 1.0};
    }
};

QuadResult integrate_angle(const std::function<cplx(double)> &g, double th_max, double tol)
{
    QuadResult out;
    cplx prev;
    bool have_prev = false;
    for (int n = 16; n <= 1024; n *= 2) {
        const auto &rule = gauss_legendre(n);
        cplx sum(0.0, 0.0);
        for (int i = 0; i < n; ++i) {
            const double th = 0.5 * th_max * (rule.nodes[i] + 1.0);
            sum += rule.weights[i] * g(th);
        }
        sum *= 0.5 * th_max;
        out.evaluations += n;
        if (!std::isfinite(sum.real()) || !std::isfinite(sum.imag())) {
            fail(ErrorCode::non_convergence, "non-finite integrand value");
        }
        if (have_prev && within(std::abs(sum - prev), sum, tol)) {
            out.value = sum;
            out.error = std::abs(sum - prev);
            return out;
        }
        prev = sum;
        have_prev = true;
    }
    QuadResult fallback = integrate_smooth(g, 0.0, th_max, tol);
    fallback.evaluations += out.evaluations;
    return fallback;
}

void guard_pole(cplx from, cplx to, std::optional<cplx> avoid)
{
    if (!avoid) {
        return;
    }
    const cplx d = to - from;
    const double len2 = std::norm(d);
    double t = len2 > 0.0 ? std::real((*avoid - from) * std::conj(d)) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    if (std::abs(from + t * d - *avoid) < 1e-8) {
        fail(ErrorCode::non_convergence, "integration path passes through the preimage of infinity");
    }
}

} // namespace

QuadResult integrate_smooth(const std::function<cplx(double)> &integrand, double a, double b, double tol)
{
    if (!(tol > 0.0)) {
        fail(ErrorCode::invalid_argument, "quadrature tolerance must be positive");
    }
    if (a == b) {
        return {};
    }
    std::priority_queue<Piece> heap;
    Piece first = gk15(integrand, a, b);
    cplx total = first.value;
    double err = first.error;
    heap.push(first);
    int evaluations = 15;
    constexpr int max_pieces = 20000;
    while (!within(err, total, tol)) {
        if (static_cast<int>(heap.size()) >= max_pieces) {
            fail(ErrorCode::non_convergence,
                 "adaptive quadrature stalled with error estimate " + std::to_string(err));
        }
        Piece worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            fail(ErrorCode::non_convergence, "adaptive quadrature exhausted interval resolution");
        }
        Piece left = gk15(integrand, worst.a, mid);
        Piece right = gk15(integrand, mid, worst.b);
        evaluations += 30;
        total += left.value + right.value - worst.value;
        err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    if (!std::isfinite(total.real()) || !std::isfinite(total.imag())) {
        fail(ErrorCode::non_convergence, "non-finite integrand value");
    }
    // Recompute the sum from the pieces to shed accumulated update roundoff.
    cplx exact(0.0, 0.0);
    double exact_err = 0.0;
    while (!heap.empty()) {
        exact += heap.top().value;
        exact_err += heap.top().error;
        heap.pop();
    }
    return {exact, exact_err, evaluations};
}

QuadResult integrate_segment(cplx from, cplx to, const std::function<cplx(cplx)> &integrand, bool singular_from,
                             bool singular_to, double tol, std::optional<cplx> avoid)
{
    if (!(tol > 0.0)) {
        fail(ErrorCode::invalid_argument, "quadrature tolerance must be positive");
    }
    guard_pole(from, to, avoid);
    const AngleMap map{singular_from, singular_to};
    const cplx d = to - from;
    auto g = [&](double th) {
        const auto pt = map(th);
        const cplx z = pt.t < 0.5 ? from + pt.t * d : to - pt.one_minus_t * d;
        return integrand(z) * d * pt.dt;
    };
    return integrate_angle(g, map.theta_max(), tol);
}

QuadResult integrate_slit(const SlitIntegral &si, double tol)
{
    if (!(si.lo < si.hi)) {
        fail(ErrorCode::invalid_argument, "slit integral requires lo < hi");
    }
    if (!(tol > 0.0)) {
        fail(ErrorCode::invalid_argument, "quadrature tolerance must be positive");
    }
    guard_pole(cplx(si.lo, 0.0), cplx(si.hi, 0.0), si.avoid);
    const AngleMap map{si.singular_lo, si.singular_hi};
    const double lo = si.lo;
    const double hi = si.hi;
    const double len = hi - lo;
    auto g = [&](double th) {
        const auto pt = map(th);
        // Evaluate from the nearer endpoint to keep the distance accurate.
        const double x = pt.t < 0.5 ? lo + pt.t * len : hi - pt.one_minus_t * len;
        const cplx v = si.integrand_offset ? si.integrand_offset(x, pt.t * len, pt.one_minus_t * len) : si.integrand(x);
        return v * (len * pt.dt);
    };
    return integrate_angle(g, map.theta_max(), tol);
}

std::vector<cplx> cumulative_integral(const std::function<cplx(double)> &integrand, std::span<const double> knots,
                                      double tol)
{
    std::vector<cplx> out(knots.size());
    cplx acc(0.0, 0.0);
    for (std::size_t i = 1; i < knots.size(); ++i) {
        acc += integrate_smooth(integrand, knots[i - 1], knots[i], tol).value;
        out[i] = acc;
    }
    return out;
}

cplx loop_integral(const Branch &branch, int m, const std::function<cplx(double, cplx)> &side_integrand, double tol)
{
    if (m < 0 || m >= branch.slit_count()) {
        fail(ErrorCode::invalid_argument, "slit index out of range");
    }
    SlitIntegral si;
    si.lo = branch.slit_lo(m);
    si.hi = branch.slit_hi(m);
    si.integrand_offset = [&](double xi, double dl, double dh) {
        const cplx fu = branch.side_value_offset(m, dl, dh, Side::upper);
        return side_integrand(xi, fu) - side_integrand(xi, std::conj(fu));
    };
    return integrate_slit(si, tol).value;
}

} // namespace esc
