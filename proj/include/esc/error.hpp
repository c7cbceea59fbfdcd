#ifndef ESC_ERROR_HPP
#define ESC_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace esc
{

// Failure categories. The numeric values are part of the C API (esc_status).
enum class ErrorCode : int {
    invalid_argument = 1,
    null_loading = 2,
    degenerate_loading = 3,
    degenerate_geometry = 4,
    singular_periods = 5,
    non_convergence = 6,
    on_cut = 7,
    not_on_cut = 8,
    pole_hit = 9,
    on_contour_zero = 10,
    non_integer_count = 11,
    root_selection = 12,
    boundary_sample_failure = 13,
    pole_proximity = 14,
};

std::string_view error_name(ErrorCode code) noexcept;

class Error : public std::runtime_error
{
public:
    Error(ErrorCode code, const std::string &what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept
    {
        return code_;
    }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string &what)
{
    throw Error(code, what);
}

} // namespace esc

#endif
