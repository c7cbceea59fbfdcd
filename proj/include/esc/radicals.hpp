#ifndef ESC_RADICALS_HPP
#define ESC_RADICALS_HPP

#include <complex>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace esc
{

using cplx = std::complex<double>;

enum class CaseFamily { n1, n2_finite, n2_sym_finite, n2_sym_inf, n3_finite, n_line };

std::string_view family_name(CaseFamily family) noexcept;
std::optional<CaseFamily> parse_family(std::string_view name) noexcept;

// Approach direction onto a real cut: upper = from Im > 0, lower = from Im < 0.
enum class Side : int { upper = 1, lower = -1 };

struct CutSide {
    int slit = 0;
    Side side = Side::upper;
};

// Geometry of the parametric slit plane. All slits lie on the real axis.
struct SlitConfig {
    CaseFamily family = CaseFamily::n1;
    // Outer slits are [-1/k, -1] and [1, 1/k] for the n2 and n3-finite variants.
    double k = 0.0;
    // Middle slit [k1, k2] of n3-finite.
    double k1 = 0.0;
    double k2 = 0.0;
    // k_0 .. k_{2n-1} for n-line, k_0 = -1 and k_{2n-1} = 1.
    std::vector<double> endpoints;
    // Preimage of z = infinity; empty means zeta = infinity.
    std::optional<cplx> zeta_inf;

    static SlitConfig n1();
    static SlitConfig n2_finite(double k, double zeta_inf);
    static SlitConfig n2_sym_finite(double k);
    static SlitConfig n2_sym_inf(double k);
    static SlitConfig n3_finite(double k, double k1, double k2, cplx zeta_inf);
    static SlitConfig n_line(std::vector<double> endpoints);

    // Sorted branch points; slit m is [roots[2m], roots[2m+1]].
    std::vector<double> roots() const;
    int slit_count() const;
    // Throws Error(invalid_argument) when a precondition of the variant fails.
    void validate() const;
};

// Affinely maps an increasing endpoint list onto [-1, 1]. Returns the mapped
// list and whether anything changed.
std::pair<std::vector<double>, bool> normalize_endpoints(const std::vector<double> &endpoints);

// The branch f of sqrt(prod (zeta - k_j)) single-valued off the slits with
// f(zeta) ~ zeta^n at infinity.
class Branch
{
public:
    explicit Branch(std::vector<double> roots);
    explicit Branch(const SlitConfig &config) : Branch(config.roots()) {}

    // Throws Error(on_cut) when zeta lies strictly inside a slit.
    cplx operator()(cplx zeta) const;
    // One-sided limit f(xi +- i0) on the slit containing xi; pure imaginary.
    // Throws Error(not_on_cut) when xi is not interior to any slit.
    cplx side_value(double xi, Side side) const;
    // As above but requires xi to be interior to slit cs.slit.
    cplx side_value(double xi, CutSide cs) const;
    // Side value at lo_m + d_lo = hi_m - d_hi. The endpoint factors use the
    // given distances, which keeps full relative precision next to a branch
    // point far from the origin.
    cplx side_value_offset(int m, double d_lo, double d_hi, Side side) const;

    // f'/f = sum 1/(2 (zeta - k_j)); valid on and off the cuts.
    cplx log_derivative(cplx zeta) const;
    // f'/f at lo_m + d_lo = hi_m - d_hi, with the same end handling.
    double log_derivative_offset(int m, double d_lo, double d_hi) const;
    cplx derivative(cplx zeta) const
    {
        return (*this)(zeta)*log_derivative(zeta);
    }
    cplx poly(cplx zeta) const;
    // sqrt|p(xi)| for real xi.
    double abs_value(double xi) const;

    int degree() const
    {
        return static_cast<int>(roots_.size()) / 2;
    }
    int slit_count() const
    {
        return degree();
    }
    double slit_lo(int m) const
    {
        return roots_[2 * m];
    }
    double slit_hi(int m) const
    {
        return roots_[2 * m + 1];
    }
    const std::vector<double> &roots() const
    {
        return roots_;
    }
    // Index of the slit whose open interior contains xi.
    std::optional<int> slit_of(double xi) const;
    // s such that f(xi + i0) = i s |f(xi)| on slit m.
    int upper_sign(int m) const;

private:
    std::vector<double> roots_;
};

} // namespace esc

#endif
