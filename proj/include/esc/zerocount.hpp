#ifndef ESC_ZEROCOUNT_HPP
#define ESC_ZEROCOUNT_HPP

#include <esc/conformal_map.hpp>

#include <array>
#include <optional>
#include <string_view>
#include <vector>

namespace esc
{

enum class CountMethod { argument_principle, closed_form, oracle };
enum class Verdict { exists, nonexistent, degenerate, degenerate_adjacent };

std::string_view method_name(CountMethod method) noexcept;
std::string_view verdict_name(Verdict verdict) noexcept;

struct LocatedZero {
    cplx z;
    int multiplicity = 1;
};

// Zeros of eta in the slit domain, i.e. inadmissible poles of psi.
struct ZeroReport {
    CountMethod method = CountMethod::argument_principle;
    std::optional<int> Z;
    // Z minus the removable zeros of eta at which omega' itself is nonzero.
    std::optional<int> omega_prime_zeros;
    // Value before rounding (argument principle, closed forms).
    double raw = 0.0;
    std::vector<LocatedZero> zeros;
    double gamma = 0.0;
    Verdict verdict = Verdict::degenerate;
};

// degenerate at gamma = 1, degenerate_adjacent for gamma in (0.98, 1.02),
// otherwise exists iff count == 0.
Verdict classify(const LoadingParams &load, std::optional<int> count) noexcept;

// Background degree of eta plus the one-sided slit integrals of eta'/eta.
// Throws Error(on_contour_zero) when |eta| on a slit bank falls below
// 1e-10 of its maximum there, Error(non_integer_count) when the value is
// more than 0.05 from an integer.
ZeroReport count_argument_principle(const ConformalMap &map);

struct N2InfClosedForm {
    ZeroReport report;
    // When alpha1^2 = alpha0^2 the roots are the limits {d+, infinity, d-, 0}.
    std::array<cplx, 4> w{};
    int inside = 0;
    // Residue form with the inverted sign (2 - a* sum) and with the sign that matches the
    // argument principle (2 + a* sum).
    std::optional<double> residue_inverted;
    std::optional<double> residue_corrected;
    // Integral form: I and 2 -+ alpha0 alpha1 I / pi.
    double integral = 0.0;
    double integral_inverted = 0.0;
    double integral_corrected = 0.0;
    // Residue and integral forms round to the same count.
    bool forms_agree = true;
};

// Closed-form count for the symmetric two-slit case with zeta_inf = infinity.
// rho = I2 / I0 of the map. Z comes from the corrected residue form.
// Throws Error(degenerate_loading) at gamma = 1 and Error(root_selection)
// unless exactly two w_j lie strictly inside the unit disc.
N2InfClosedForm count_closed_form_n2inf(const LoadingParams &load, double k, double rho, double tol);

// n = 1: Z = 0 for gamma < 1 and 2 for gamma > 1, with the explicit zeros.
ZeroReport count_closed_form_n1(const LoadingParams &load);

struct OracleOptions {
    // <= 0: start at 10/k (families with outer slits) or 10 and grow by 1.9
    // until eta winds eta_degree() times around the circle of that radius.
    double search_radius = 0.0;
    double min_box = 1e-8;
    int initial_samples = 64;
    double max_arg_step = 0.3;
    int retries = 3;
};

// Box subdivision of [-R, R]^2 split along the real axis, winding of eta
// along each box boundary, refinement of boxes with nonzero winding.
// Throws Error(boundary_sample_failure) when sampling stays ambiguous after
// the perturbation retries.
ZeroReport locate_zeros_oracle(const ConformalMap &map, const OracleOptions &options = {});

} // namespace esc

#endif
