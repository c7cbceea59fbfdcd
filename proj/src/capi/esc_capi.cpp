#include <esc/error.hpp>
#include <esc/esc.h>
#include <esc/maps.hpp>
#include <esc/quadrature.hpp>
#include <esc/verify.hpp>
#include <esc/zerocount.hpp>

#include <json.hpp>

#include <cstring>
#include <memory>
#include <new>
#include <string>

struct esc_map {
    std::unique_ptr<esc::ConformalMap> map;
    bool endpoints_rescaled = false;
};

struct esc_contours {
    std::vector<esc::Contour> contours;
};

struct esc_stress {
    esc::StressProfile profile;
};

namespace
{

using esc::cplx;
using json = nlohmann::ordered_json;

thread_local std::string last_error;

esc_status record(esc_status status, const std::string &message)
{
    last_error = message;
    return status;
}

template <class F> esc_status guarded(F &&body)
{
    try {
        last_error.clear();
        return body();
    } catch (const esc::Error &e) {
        return record(static_cast<esc_status>(e.code()), e.what());
    } catch (const std::bad_alloc &) {
        return record(ESC_E_INTERNAL, "out of memory");
    } catch (const std::exception &e) {
        return record(ESC_E_INTERNAL, e.what());
    } catch (...) {
        return record(ESC_E_INTERNAL, "unknown failure");
    }
}

#define ESC_REQUIRE(cond, what)                                                                                        \
    do {                                                                                                               \
        if (!(cond)) {                                                                                                 \
            return record(ESC_E_INVALID_ARGUMENT, what);                                                               \
        }                                                                                                              \
    } while (0)

esc_status copy_string(const std::string &s, char *buf, size_t cap, size_t *needed)
{
    if (needed) {
        *needed = s.size() + 1;
    }
    if (buf == nullptr || cap < s.size() + 1) {
        if (buf != nullptr && cap > 0) {
            buf[0] = '\0';
        }
        return buf == nullptr && cap == 0 ? ESC_OK : record(ESC_E_BUFFER_TOO_SMALL, "buffer too small");
    }
    std::memcpy(buf, s.c_str(), s.size() + 1);
    return ESC_OK;
}

esc::LoadingParams derive(const esc_loading &l)
{
    return esc::derive_loading(l.sigma1_inf, l.sigma2_inf, l.tau_inf, l.p, l.tau);
}

json complex_json(cplx z)
{
    return json::array({z.real(), z.imag()});
}

json loading_json(const esc::LoadingParams &L)
{
    return json{{"sigma1_inf", L.sigma1_inf}, {"sigma2_inf", L.sigma2_inf}, {"tau_inf", L.tau_inf},
                {"p", L.p},                   {"tau", L.tau},               {"sigma", L.sigma},
                {"a", complex_json(L.a)},     {"b", complex_json(L.b)},     {"alpha_plus", L.alpha_plus},
                {"alpha_minus", L.alpha_minus}, {"beta_plus", L.beta_plus}, {"beta_minus", L.beta_minus},
                {"gamma", L.gamma},           {"gamma_is_unit", esc::is_gamma_unit(L)}};
}

esc_verdict to_c(esc::Verdict v)
{
    return static_cast<esc_verdict>(v);
}

} // namespace

extern "C" {

const char *esc_version(void)
{
    return "1.0.0";
}

const char *esc_status_name(esc_status status)
{
    switch (status) {
        case ESC_OK:
            return "OK";
        case ESC_E_BUFFER_TOO_SMALL:
            return "BufferTooSmall";
        case ESC_E_INTERNAL:
            return "InternalError";
        default:
            break;
    }
    if (status >= ESC_E_INVALID_ARGUMENT && status <= ESC_E_POLE_PROXIMITY) {
        // error_name returns views into string literals.
        return esc::error_name(static_cast<esc::ErrorCode>(status)).data();
    }
    return "UnknownStatus";
}

const char *esc_last_error(void)
{
    return last_error.c_str();
}

double esc_default_tolerance(void)
{
    return esc::tolerance_from_env();
}

const char *esc_family_name(esc_family family)
{
    if (family < ESC_N1 || family > ESC_N_LINE) {
        return "unknown";
    }
    return esc::family_name(static_cast<esc::CaseFamily>(family)).data();
}

esc_status esc_parse_family(const char *name, esc_family *out)
{
    ESC_REQUIRE(name && out, "null argument");
    const auto f = esc::parse_family(name);
    if (!f) {
        return record(ESC_E_INVALID_ARGUMENT, std::string("unknown case family '") + name + "'");
    }
    *out = static_cast<esc_family>(*f);
    return ESC_OK;
}

const char *esc_verdict_name(esc_verdict verdict)
{
    return esc::verdict_name(static_cast<esc::Verdict>(verdict)).data();
}

const char *esc_method_name(esc_zero_method method)
{
    return esc::method_name(static_cast<esc::CountMethod>(method)).data();
}

esc_status esc_loading_derive(const esc_loading *load, esc_loading_info *out)
{
    ESC_REQUIRE(load && out, "null argument");
    return guarded([&] {
        const auto L = derive(*load);
        *out = {L.sigma,       L.a.real(),     L.a.imag(),     L.b.real(), L.b.imag(),
                L.alpha_plus,  L.alpha_minus,  L.beta_plus,    L.beta_minus, L.gamma,
                esc::is_gamma_unit(L) ? 1 : 0};
        return ESC_OK;
    });
}

esc_status esc_map_create(const esc_geometry *geometry, const esc_loading *load, const esc_scale *scale,
                          esc_map **out)
{
    ESC_REQUIRE(geometry && load && scale && out, "null argument");
    *out = nullptr;
    return guarded([&] {
        const auto L = derive(*load);
        esc::SlitConfig cfg;
        bool rescaled = false;
        const cplx zinf(geometry->zeta_inf_re, geometry->zeta_inf_im);
        switch (geometry->family) {
            case ESC_N1:
                cfg = esc::SlitConfig::n1();
                break;
            case ESC_N2_FINITE:
                cfg = esc::SlitConfig::n2_finite(geometry->k, geometry->zeta_inf_re);
                if (geometry->zeta_inf_im != 0.0) {
                    return record(ESC_E_INVALID_ARGUMENT, "n2-finite requires a real zeta_inf");
                }
                break;
            case ESC_N2_SYM_FINITE:
                cfg = esc::SlitConfig::n2_sym_finite(geometry->k);
                break;
            case ESC_N2_SYM_INF:
                cfg = esc::SlitConfig::n2_sym_inf(geometry->k);
                break;
            case ESC_N3_FINITE:
                cfg = esc::SlitConfig::n3_finite(geometry->k, geometry->k1, geometry->k2, zinf);
                break;
            case ESC_N_LINE: {
                if (geometry->endpoints == nullptr && geometry->endpoint_count > 0) {
                    return record(ESC_E_INVALID_ARGUMENT, "null endpoint list");
                }
                std::vector<double> ends(geometry->endpoints, geometry->endpoints + geometry->endpoint_count);
                auto [norm, changed] = esc::normalize_endpoints(ends);
                rescaled = changed;
                cfg = esc::SlitConfig::n_line(std::move(norm));
                break;
            }
            default:
                return record(ESC_E_INVALID_ARGUMENT, "unknown case family");
        }
        const double tol = scale->tol > 0.0 ? scale->tol : esc::tolerance_from_env();
        auto handle = std::make_unique<esc_map>();
        handle->map = esc::make_map(cfg, L, cplx(scale->c_re, scale->c_im), cplx(scale->B_re, scale->B_im), tol);
        handle->endpoints_rescaled = rescaled;
        *out = handle.release();
        return ESC_OK;
    });
}

void esc_map_destroy(esc_map *map)
{
    delete map;
}

esc_status esc_map_info_json(const esc_map *map, char *buf, size_t cap, size_t *needed)
{
    ESC_REQUIRE(map, "null map");
    return guarded([&] {
        const esc::ConformalMap &m = *map->map;
        json j;
        j["family"] = std::string(esc::family_name(m.family()));
        j["roots"] = m.branch().roots();
        if (m.zeta_inf()) {
            j["zeta_inf"] = complex_json(*m.zeta_inf());
        } else {
            j["zeta_inf"] = "infinity";
        }
        j["endpoints_rescaled"] = map->endpoints_rescaled;
        j["loading"] = loading_json(m.loading());
        j["c"] = complex_json(m.scale());
        j["B"] = complex_json(m.offset());
        j["tolerance"] = m.tolerance();
        json coeffs = json::object();
        for (const auto &c : m.coefficients()) {
            coeffs[c.name] = complex_json(c.value);
        }
        j["coefficients"] = coeffs;
        json res = json::object();
        for (const auto &r : m.residuals()) {
            res[r.name] = r.value;
        }
        j["residuals"] = res;
        json bases = json::array();
        for (int s = 0; s < m.branch().slit_count(); ++s) {
            bases.push_back(complex_json(m.slit_base(s)));
        }
        j["slit_bases"] = bases;
        return copy_string(j.dump(2), buf, cap, needed);
    });
}

esc_status esc_map_omega_prime(const esc_map *map, double re, double im, double *out_re, double *out_im)
{
    ESC_REQUIRE(map && out_re && out_im, "null argument");
    return guarded([&] {
        const cplx w = map->map->omega_prime(cplx(re, im));
        *out_re = w.real();
        *out_im = w.imag();
        return ESC_OK;
    });
}

esc_status esc_map_psi(const esc_map *map, double re, double im, double *out_re, double *out_im)
{
    ESC_REQUIRE(map && out_re && out_im, "null argument");
    return guarded([&] {
        const cplx w = map->map->psi(cplx(re, im));
        *out_re = w.real();
        *out_im = w.imag();
        return ESC_OK;
    });
}

esc_status esc_map_max_residual(const esc_map *map, double *out)
{
    ESC_REQUIRE(map && out, "null argument");
    double worst = 0.0;
    for (const auto &r : map->map->residuals()) {
        worst = std::max(worst, r.value);
    }
    *out = worst;
    return ESC_OK;
}

esc_status esc_map_trace(const esc_map *map, int points_per_side, esc_contours **out)
{
    ESC_REQUIRE(map && out, "null argument");
    *out = nullptr;
    return guarded([&] {
        auto set = std::make_unique<esc_contours>();
        set->contours = esc::trace(*map->map, points_per_side > 0 ? points_per_side : esc::default_points_per_side);
        *out = set.release();
        return ESC_OK;
    });
}

void esc_contours_destroy(esc_contours *set)
{
    delete set;
}

size_t esc_contours_count(const esc_contours *set)
{
    return set ? set->contours.size() : 0;
}

esc_status esc_contour_metrics_get(const esc_contours *set, size_t i, esc_contour_metrics *out)
{
    ESC_REQUIRE(set && out, "null argument");
    ESC_REQUIRE(i < set->contours.size(), "contour index out of range");
    const esc::Contour &c = set->contours[i];
    *out = {c.points.size(), c.closure_gap, c.diameter(), c.signed_area(), c.length(), c.closed ? 1 : 0};
    return ESC_OK;
}

esc_status esc_contour_points(const esc_contours *set, size_t i, esc_contour_point *buf, size_t cap, size_t *n)
{
    ESC_REQUIRE(set && n, "null argument");
    ESC_REQUIRE(i < set->contours.size(), "contour index out of range");
    const esc::Contour &c = set->contours[i];
    *n = c.points.size();
    if (buf == nullptr) {
        return ESC_OK;
    }
    if (cap < c.points.size()) {
        return record(ESC_E_BUFFER_TOO_SMALL, "buffer too small");
    }
    for (size_t k = 0; k < c.points.size(); ++k) {
        buf[k] = {c.cavity, c.side[k], c.xi[k], c.s[k], c.points[k].real(), c.points[k].imag()};
    }
    return ESC_OK;
}

esc_status esc_contours_intersect(const esc_contours *set, int *intersect, double *witness_xy, size_t cap, size_t *n)
{
    ESC_REQUIRE(set && intersect, "null argument");
    return guarded([&] {
        const auto x = esc::contours_intersect(set->contours);
        *intersect = x.intersect ? 1 : 0;
        if (n) {
            *n = x.witnesses.size();
        }
        if (witness_xy) {
            for (size_t k = 0; k < x.witnesses.size() && k < cap; ++k) {
                witness_xy[2 * k] = x.witnesses[k].real();
                witness_xy[2 * k + 1] = x.witnesses[k].imag();
            }
        }
        return ESC_OK;
    });
}

esc_status esc_map_zeros(const esc_map *map, esc_zero_method method, const esc_oracle_options *options,
                         esc_zero_report *report, esc_located_zero *zeros, size_t cap)
{
    ESC_REQUIRE(map && report, "null argument");
    return guarded([&] {
        const esc::ConformalMap &m = *map->map;
        esc::ZeroReport r;
        switch (method) {
            case ESC_METHOD_ARGUMENT_PRINCIPLE:
                r = esc::count_argument_principle(m);
                break;
            case ESC_METHOD_CLOSED_FORM:
                if (m.family() == esc::CaseFamily::n1) {
                    r = esc::count_closed_form_n1(m.loading());
                } else if (m.family() == esc::CaseFamily::n2_sym_inf) {
                    const auto &s = dynamic_cast<const esc::N2SymInfMap &>(m);
                    r = esc::count_closed_form_n2inf(m.loading(), s.k(), s.rho(), m.tolerance()).report;
                } else {
                    return record(ESC_E_INVALID_ARGUMENT, "no closed-form count for this case family");
                }
                break;
            case ESC_METHOD_ORACLE: {
                esc::OracleOptions opt;
                if (options) {
                    opt.search_radius = options->search_radius;
                    if (options->min_box > 0.0) {
                        opt.min_box = options->min_box;
                    }
                }
                r = esc::locate_zeros_oracle(m, opt);
                break;
            }
            default:
                return record(ESC_E_INVALID_ARGUMENT, "unknown counting method");
        }
        report->method = method;
        report->has_count = r.Z ? 1 : 0;
        report->Z = r.Z.value_or(-1);
        report->omega_prime_zeros = r.omega_prime_zeros.value_or(-1);
        report->raw = r.raw;
        report->gamma = r.gamma;
        report->verdict = to_c(r.verdict);
        report->zero_count = r.zeros.size();
        if (zeros) {
            for (size_t k = 0; k < r.zeros.size() && k < cap; ++k) {
                zeros[k] = {r.zeros[k].z.real(), r.zeros[k].z.imag(), r.zeros[k].multiplicity};
            }
        }
        return ESC_OK;
    });
}

esc_status esc_map_closed_form_json(const esc_map *map, char *buf, size_t cap, size_t *needed)
{
    ESC_REQUIRE(map, "null map");
    return guarded([&] {
        const esc::ConformalMap &m = *map->map;
        if (m.family() != esc::CaseFamily::n2_sym_inf) {
            return record(ESC_E_INVALID_ARGUMENT, "closed-form details exist only for n2-sym-inf");
        }
        const auto &s = dynamic_cast<const esc::N2SymInfMap &>(m);
        const auto cf = esc::count_closed_form_n2inf(m.loading(), s.k(), s.rho(), m.tolerance());
        json j;
        j["Z"] = *cf.report.Z;
        j["rho"] = s.rho();
        json w = json::array();
        for (cplx z : cf.w) {
            w.push_back(complex_json(z));
        }
        j["w"] = w;
        j["inside_unit_disc"] = cf.inside;
        j["residue_inverted"] = cf.residue_inverted ? json(*cf.residue_inverted) : json(nullptr);
        j["residue_corrected"] = cf.residue_corrected ? json(*cf.residue_corrected) : json(nullptr);
        j["integral"] = cf.integral;
        j["integral_inverted"] = cf.integral_inverted;
        j["integral_corrected"] = cf.integral_corrected;
        j["forms_agree"] = cf.forms_agree;
        return copy_string(j.dump(2), buf, cap, needed);
    });
}

esc_status esc_map_boundary_residual(const esc_map *map, int samples_per_side, esc_boundary_residual *out)
{
    ESC_REQUIRE(map && out, "null argument");
    return guarded([&] {
        const auto r = esc::boundary_residual(*map->map, samples_per_side > 0 ? samples_per_side : 256);
        *out = {r.max, r.worst_xi, r.worst_slit, r.near_zero_samples, r.samples};
        return ESC_OK;
    });
}

esc_status esc_map_far_field(const esc_map *map, esc_far_field *out)
{
    ESC_REQUIRE(map && out, "null argument");
    return guarded([&] {
        const auto f = esc::far_field(*map->map);
        *out = {f.psi_limit.real(),      f.psi_limit.imag(),      f.psi_error,
                f.scale_recovered.real(), f.scale_recovered.imag(), f.scale_error};
        return ESC_OK;
    });
}

esc_status esc_verdict_for(const esc_map *map, int has_count, int Z, int intersect, esc_verdict *out)
{
    ESC_REQUIRE(map && out, "null argument");
    const std::optional<int> count = has_count ? std::optional<int>(Z) : std::nullopt;
    *out = to_c(esc::overall_verdict(map->map->loading(), count, intersect != 0));
    return ESC_OK;
}

esc_status esc_map_stress(const esc_map *map, int cavity, const esc_stress_options *options, esc_stress **out)
{
    ESC_REQUIRE(map && out, "null argument");
    *out = nullptr;
    return guarded([&] {
        esc::StressOptions opt;
        if (options) {
            if (options->points_per_side > 0) {
                opt.points_per_side = options->points_per_side;
            }
            if (options->max_points_per_side > 0) {
                opt.max_points_per_side = options->max_points_per_side;
            }
            opt.allow_inadmissible = options->allow_inadmissible != 0;
        }
        if (opt.allow_inadmissible && map->map->loading().gamma > 1.0) {
            opt.zeros = esc::locate_zeros_oracle(*map->map).zeros;
        }
        auto p = std::make_unique<esc_stress>();
        p->profile = esc::stress_profile(*map->map, cavity, opt);
        *out = p.release();
        return ESC_OK;
    });
}

void esc_stress_destroy(esc_stress *profile)
{
    delete profile;
}

size_t esc_stress_count(const esc_stress *profile)
{
    return profile ? profile->profile.samples.size() : 0;
}

int esc_stress_converged(const esc_stress *profile)
{
    return profile && profile->profile.arclength_converged ? 1 : 0;
}

esc_status esc_stress_samples(const esc_stress *profile, esc_stress_sample *buf, size_t cap, size_t *n)
{
    ESC_REQUIRE(profile && n, "null argument");
    const auto &s = profile->profile.samples;
    *n = s.size();
    if (buf == nullptr) {
        return ESC_OK;
    }
    if (cap < s.size()) {
        return record(ESC_E_BUFFER_TOO_SMALL, "buffer too small");
    }
    for (size_t k = 0; k < s.size(); ++k) {
        buf[k] = {s[k].s, s[k].sigma1, s[k].sigma2, s[k].tau12, s[k].sigma_t, s[k].sigma_n, s[k].tau_nt, s[k].xi,
                  s[k].side};
    }
    return ESC_OK;
}

} // extern "C"
