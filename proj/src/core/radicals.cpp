#include <esc/error.hpp>
#include <esc/radicals.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

namespace esc
{

std::string_view family_name(CaseFamily family) noexcept
{
    switch (family) {
        case CaseFamily::n1:
            return "n1";
        case CaseFamily::n2_finite:
            return "n2-finite";
        case CaseFamily::n2_sym_finite:
            return "n2-sym-finite";
        case CaseFamily::n2_sym_inf:
            return "n2-sym-inf";
        case CaseFamily::n3_finite:
            return "n3-finite";
        case CaseFamily::n_line:
            return "n-line";
    }
    return "unknown";
}

std::optional<CaseFamily> parse_family(std::string_view name) noexcept
{
    for (auto f : {CaseFamily::n1, CaseFamily::n2_finite, CaseFamily::n2_sym_finite, CaseFamily::n2_sym_inf,
                   CaseFamily::n3_finite, CaseFamily::n_line}) {
        if (family_name(f) == name) {
            return f;
        }
    }
    return std::nullopt;
}

SlitConfig SlitConfig::n1()
{
    SlitConfig c;
    c.family = CaseFamily::n1;
    return c;
}

SlitConfig SlitConfig::n2_finite(double k, double zeta_inf)
{
    SlitConfig c;
    c.family = CaseFamily::n2_finite;
    c.k = k;
    c.zeta_inf = cplx(zeta_inf, 0.0);
    return c;
}

SlitConfig SlitConfig::n2_sym_finite(double k)
{
    SlitConfig c;
    c.family = CaseFamily::n2_sym_finite;
    c.k = k;
    c.zeta_inf = cplx(0.0, 0.0);
    return c;
}

SlitConfig SlitConfig::n2_sym_inf(double k)
{
    SlitConfig c;
    c.family = CaseFamily::n2_sym_inf;
    c.k = k;
    return c;
}

SlitConfig SlitConfig::n3_finite(double k, double k1, double k2, cplx zeta_inf)
{
    SlitConfig c;
    c.family = CaseFamily::n3_finite;
    c.k = k;
    c.k1 = k1;
    c.k2 = k2;
    c.zeta_inf = zeta_inf;
    return c;
}

SlitConfig SlitConfig::n_line(std::vector<double> endpoints)
{
    SlitConfig c;
    c.family = CaseFamily::n_line;
    c.endpoints = std::move(endpoints);
    return c;
}

std::vector<double> SlitConfig::roots() const
{
    switch (family) {
        case CaseFamily::n1:
            return {-1.0, 1.0};
        case CaseFamily::n2_finite:
        case CaseFamily::n2_sym_finite:
        case CaseFamily::n2_sym_inf:
            return {-1.0 / k, -1.0, 1.0, 1.0 / k};
        case CaseFamily::n3_finite:
            return {-1.0 / k, -1.0, k1, k2, 1.0, 1.0 / k};
        case CaseFamily::n_line:
            return endpoints;
    }
    return {};
}

int SlitConfig::slit_count() const
{
    return static_cast<int>(roots().size()) / 2;
}

namespace
{

[[noreturn]] void invalid(const std::string &what)
{
    fail(ErrorCode::invalid_argument, what);
}

bool finite(cplx z)
{
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

} // namespace

void SlitConfig::validate() const
{
    const bool needs_k = family != CaseFamily::n1 && family != CaseFamily::n_line;
    if (needs_k && !(k > 0.0 && k < 1.0)) {
        invalid("k must lie in (0, 1)");
    }
    switch (family) {
        case CaseFamily::n1:
        case CaseFamily::n2_sym_inf:
            if (zeta_inf) {
                invalid(std::string(family_name(family)) + " requires zeta_inf = infinity");
            }
            break;
        case CaseFamily::n2_finite:
        case CaseFamily::n2_sym_finite:
            if (!zeta_inf || !finite(*zeta_inf) || zeta_inf->imag() != 0.0 || !(std::abs(zeta_inf->real()) < 1.0)) {
                invalid("zeta_inf must be real and inside (-1, 1)");
            }
            if (family == CaseFamily::n2_sym_finite && zeta_inf->real() != 0.0) {
                invalid("the symmetric finite variant fixes zeta_inf = 0");
            }
            break;
        case CaseFamily::n3_finite: {
            if (!(-1.0 < k1 && k1 < k2 && k2 < 1.0)) {
                invalid("n3-finite requires -1 < k1 < k2 < 1");
            }
            if (!zeta_inf || !finite(*zeta_inf)) {
                invalid("n3-finite requires a finite zeta_inf");
            }
            if (zeta_inf->imag() == 0.0) {
                const double x = zeta_inf->real();
                const auto r = roots();
                for (std::size_t m = 0; m + 1 < r.size(); m += 2) {
                    if (x >= r[m] && x <= r[m + 1]) {
                        invalid("zeta_inf lies on a slit");
                    }
                }
            }
            break;
        }
        case CaseFamily::n_line: {
            if (zeta_inf) {
                invalid("n-line requires zeta_inf = infinity");
            }
            if (endpoints.size() < 6 || endpoints.size() % 2 != 0) {
                invalid("n-line requires 2n endpoints with n >= 3");
            }
            if (endpoints.front() != -1.0 || endpoints.back() != 1.0) {
                invalid("n-line endpoints must start at -1 and end at 1");
            }
            for (std::size_t i = 1; i < endpoints.size(); ++i) {
                if (!(endpoints[i] > endpoints[i - 1])) {
                    invalid("n-line endpoints must be strictly increasing");
                }
            }
            break;
        }
    }
}

std::pair<std::vector<double>, bool> normalize_endpoints(const std::vector<double> &endpoints)
{
    if (endpoints.size() < 2) {
        return {endpoints, false};
    }
    const double lo = endpoints.front();
    const double hi = endpoints.back();
    if (lo == -1.0 && hi == 1.0) {
        return {endpoints, false};
    }
    if (!(hi > lo)) {
        invalid("endpoint list is not increasing");
    }
    std::vector<double> out(endpoints.size());
    for (std::size_t i = 0; i < endpoints.size(); ++i) {
        out[i] = -1.0 + 2.0 * (endpoints[i] - lo) / (hi - lo);
    }
    out.front() = -1.0;
    out.back() = 1.0;
    return {out, true};
}

Branch::Branch(std::vector<double> roots) : roots_(std::move(roots))
{
    if (roots_.empty() || roots_.size() % 2 != 0) {
        invalid("branch requires an even, nonzero number of branch points");
    }
    if (std::adjacent_find(roots_.begin(), roots_.end(), std::greater_equal<>()) != roots_.end()) {
        invalid("branch points must be strictly increasing");
    }
}

std::optional<int> Branch::slit_of(double xi) const
{
    for (int m = 0; m < slit_count(); ++m) {
        if (xi > slit_lo(m) && xi < slit_hi(m)) {
            return m;
        }
    }
    return std::nullopt;
}

// Each factor sqrt(zeta - k_j) uses the principal branch (cut along
// (-inf, k_j]). Cuts of consecutive factors cancel pairwise on the gaps
// between slits, so the product is single-valued off the slits and
// behaves like zeta^n at infinity.
cplx Branch::operator()(cplx zeta) const
{
    if (zeta.imag() == 0.0) {
        if (auto m = slit_of(zeta.real())) {
            fail(ErrorCode::on_cut, "branch evaluated strictly inside slit " + std::to_string(*m));
        }
        zeta = cplx(zeta.real(), 0.0);
    }
    cplx out(1.0, 0.0);
    for (double kj : roots_) {
        out *= std::sqrt(zeta - kj);
    }
    return out;
}

cplx Branch::side_value(double xi, Side side) const
{
    if (!slit_of(xi)) {
        fail(ErrorCode::not_on_cut, "side value requested off the slits");
    }
    double mag = 1.0;
    int above = 0;
    for (double kj : roots_) {
        mag *= std::sqrt(std::abs(xi - kj));
        if (kj > xi) {
            ++above;
        }
    }
    // (+-i)^above with above odd.
    const int s = (above % 4 == 1) ? 1 : -1;
    return cplx(0.0, static_cast<int>(side) * s * mag);
}

cplx Branch::side_value(double xi, CutSide cs) const
{
    if (cs.slit < 0 || cs.slit >= slit_count() || !(xi > slit_lo(cs.slit) && xi < slit_hi(cs.slit))) {
        fail(ErrorCode::not_on_cut, "point is not interior to slit " + std::to_string(cs.slit));
    }
    return side_value(xi, cs.side);
}

cplx Branch::side_value_offset(int m, double d_lo, double d_hi, Side side) const
{
    if (m < 0 || m >= slit_count() || !(d_lo > 0.0) || !(d_hi > 0.0)) {
        fail(ErrorCode::not_on_cut, "offset point is not interior to slit " + std::to_string(m));
    }
    const double xi = d_lo < d_hi ? slit_lo(m) + d_lo : slit_hi(m) - d_hi;
    double mag = std::sqrt(d_lo) * std::sqrt(d_hi);
    for (std::size_t j = 0; j < roots_.size(); ++j) {
        if (static_cast<int>(j) != 2 * m && static_cast<int>(j) != 2 * m + 1) {
            mag *= std::sqrt(std::abs(xi - roots_[j]));
        }
    }
    return cplx(0.0, static_cast<int>(side) * upper_sign(m) * mag);
}

int Branch::upper_sign(int m) const
{
    const int above = static_cast<int>(roots_.size()) - 2 * m - 1;
    return (above % 4 == 1) ? 1 : -1;
}

cplx Branch::log_derivative(cplx zeta) const
{
    cplx s(0.0, 0.0);
    for (double kj : roots_) {
        s += 1.0 / (zeta - kj);
    }
    return 0.5 * s;
}

double Branch::log_derivative_offset(int m, double d_lo, double d_hi) const
{
    const double xi = d_lo < d_hi ? slit_lo(m) + d_lo : slit_hi(m) - d_hi;
    double s = 1.0 / d_lo - 1.0 / d_hi;
    for (std::size_t j = 0; j < roots_.size(); ++j) {
        if (static_cast<int>(j) != 2 * m && static_cast<int>(j) != 2 * m + 1) {
            s += 1.0 / (xi - roots_[j]);
        }
    }
    return 0.5 * s;
}

cplx Branch::poly(cplx zeta) const
{
    cplx out(1.0, 0.0);
    for (double kj : roots_) {
        out *= zeta - kj;
    }
    return out;
}

double Branch::abs_value(double xi) const
{
    double mag = 1.0;
    for (double kj : roots_) {
        mag *= std::sqrt(std::abs(xi - kj));
    }
    return mag;
}

} // namespace esc
