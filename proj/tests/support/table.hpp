#ifndef ESC_TEST_TABLE_HPP
#define ESC_TEST_TABLE_HPP

#include "generators.hpp"

#include <esc/maps.hpp>
#include <esc/verify.hpp>
#include <esc/zerocount.hpp>

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace esc_test
{

// Expected pole count below and above the unit ratio.
inline std::pair<int, int> expected_counts(esc::CaseFamily f)
{
    switch (f) {
        case esc::CaseFamily::n1:
            return {0, 2};
        case esc::CaseFamily::n3_finite:
            return {2, 8};
        case esc::CaseFamily::n_line:
            return {0, 6};
        default:
            return {0, 4};
    }
}

inline const std::vector<esc::CaseFamily> &all_families()
{
    static const std::vector<esc::CaseFamily> v{esc::CaseFamily::n1,           esc::CaseFamily::n2_finite,
                                                esc::CaseFamily::n2_sym_finite, esc::CaseFamily::n2_sym_inf,
                                                esc::CaseFamily::n3_finite,     esc::CaseFamily::n_line};
    return v;
}

struct CaseOutcome {
    std::string label;
    std::optional<int> ap, closed, oracle;
    int expected = 0;
    double max_loop = 0.0;
    double max_other = 0.0; // redundant and defining equations
    double boundary = 0.0;
    std::optional<int> inside; // n2 symmetric closed form
    std::string error;

    bool counts_ok() const
    {
        return error.empty() && ap == expected && oracle == expected && (!closed || closed == expected) &&
               (!inside || *inside == 2);
    }
    bool identities_ok() const
    {
        return error.empty() && max_loop < 1e-10 && max_other < 1e-9 && boundary < 1e-9;
    }
    std::string describe() const
    {
        std::ostringstream o;
        o << label << " expected=" << expected << " ap=" << (ap ? std::to_string(*ap) : "-")
          << " closed=" << (closed ? std::to_string(*closed) : "-") << " oracle=" << (oracle ? std::to_string(*oracle) : "-")
          << " loop=" << max_loop << " other=" << max_other << " boundary=" << boundary;
        if (!error.empty()) {
            o << " error=" << error;
        }
        return o.str();
    }
};

inline CaseOutcome run_case(const Case &c)
{
    CaseOutcome out;
    out.label = c.label;
    const auto [lo, hi] = expected_counts(c.config.family);
    out.expected = c.gamma > 1.0 ? hi : lo;
    try {
        const auto map = build(c);
        for (const auto &r : map->residuals()) {
            if (r.name.rfind("loop_", 0) == 0) {
                out.max_loop = std::max(out.max_loop, r.value);
            } else {
                out.max_other = std::max(out.max_other, r.value);
            }
        }
        out.boundary = esc::boundary_residual(*map).max;
        out.ap = esc::count_argument_principle(*map).Z;
        out.oracle = esc::locate_zeros_oracle(*map).Z;
        if (c.config.family == esc::CaseFamily::n1) {
            out.closed = esc::count_closed_form_n1(c.load).Z;
        } else if (c.config.family == esc::CaseFamily::n2_sym_inf) {
            const auto &m = dynamic_cast<const esc::N2SymInfMap &>(*map);
            const auto cf = esc::count_closed_form_n2inf(c.load, m.k(), m.rho(), map->tolerance());
            out.closed = cf.report.Z;
            out.inside = cf.inside;
        }
    } catch (const std::exception &e) {
        out.error = e.what();
    }
    return out;
}

} // namespace esc_test

#endif
