#include <esc/error.hpp>
#include <esc/maps.hpp>

namespace esc
{

std::unique_ptr<ConformalMap> make_map(const SlitConfig &config, const LoadingParams &load, cplx c, cplx B,
                                       double tol)
{
    config.validate();
    switch (config.family) {
        case CaseFamily::n1:
            if (c.imag() != 0.0) {
                fail(ErrorCode::invalid_argument, "n1 requires a real scale (c'' = 0)");
            }
            return std::make_unique<N1Map>(load, c.real(), B, tol);
        case CaseFamily::n2_finite:
        case CaseFamily::n2_sym_finite:
            return std::make_unique<N2FiniteMap>(config, load, c, B, tol);
        case CaseFamily::n2_sym_inf:
            return std::make_unique<N2SymInfMap>(config, load, c, B, tol);
        case CaseFamily::n3_finite:
            return std::make_unique<N3FiniteMap>(config, load, c, B, tol);
        case CaseFamily::n_line:
            return std::make_unique<NLineMap>(config, load, c, B, tol);
    }
    fail(ErrorCode::invalid_argument, "unknown case family");
}

} // namespace esc
