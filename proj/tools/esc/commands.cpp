#include "commands.hpp"

#include "handles.hpp"
#include "output.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <thread>

namespace esc_tool
{

namespace
{

json complex_json(double re, double im)
{
    return json::array({re, im});
}

json base_manifest(const std::string &command, const RunConfig &cfg)
{
    json m;
    m["tool"] = "esc";
    m["version"] = esc_version();
    m["command"] = command;
    m["config"] = cfg.to_json();
    m["derived"] = json::object();
    m["status"] = "ok";
    return m;
}

// Runs `body`, filling manifest["derived"]; library failures end up in the
// manifest and select the exit code.
int guarded_run(const std::string &command, const RunConfig &cfg, const fs::path &out,
                const std::function<int(json &derived)> &body)
{
    fs::create_directories(out);
    json manifest = base_manifest(command, cfg);
    int code = exit_ok;
    try {
        code = body(manifest["derived"]);
    } catch (const LibraryError &e) {
        manifest["status"] = "error";
        manifest["error"] = e.name();
        manifest["message"] = e.what();
        code = e.is_config() ? exit_config : exit_numerical;
    }
    if (code != exit_ok && manifest["status"] == "ok") {
        manifest["status"] = "error";
    }
    write_json(out / "manifest.json", manifest);
    return code;
}

bool is_finite_zeta(const RunConfig &cfg)
{
    return cfg.zeta_inf.has_value();
}

bool has_closed_form(esc_family f)
{
    return f == ESC_N1 || f == ESC_N2_SYM_INF;
}

struct TracedSet {
    Contours set;
    std::vector<std::vector<esc_contour_point>> points;
    json metrics = json::array();
    IntersectResult crossing;
};

TracedSet trace_all(const esc_map *m, int points_per_side)
{
    TracedSet t;
    t.set = trace(m, points_per_side);
    const size_t n = esc_contours_count(t.set.get());
    for (size_t i = 0; i < n; ++i) {
        t.points.push_back(contour_points(t.set.get(), i));
        const esc_contour_metrics mt = contour_metrics(t.set.get(), i);
        const double d2 = mt.diameter * mt.diameter;
        t.metrics.push_back({{"cavity", i},
                             {"points", mt.points},
                             {"closure_gap", mt.closure_gap},
                             {"closed", mt.closed != 0},
                             {"diameter", mt.diameter},
                             {"signed_area", mt.signed_area},
                             {"length", mt.length},
                             {"segment", std::abs(mt.signed_area) < 1e-8 * d2}});
    }
    t.crossing = intersect(t.set.get());
    return t;
}

json intersection_json(const IntersectResult &r)
{
    json w = json::array();
    for (const auto &[x, y] : r.witnesses) {
        w.push_back(complex_json(x, y));
    }
    return {{"intersect", r.intersect}, {"witnesses", w}};
}

json zeros_json(const Zeros &z)
{
    json j;
    j["method"] = esc_method_name(z.report.method);
    j["Z"] = z.report.has_count ? json(z.report.Z) : json(nullptr);
    if (z.report.omega_prime_zeros >= 0) {
        j["omega_prime_zeros"] = z.report.omega_prime_zeros;
    }
    j["raw"] = z.report.raw;
    json list = json::array();
    for (const auto &p : z.zeros) {
        list.push_back({{"z", complex_json(p.re, p.im)}, {"multiplicity", p.multiplicity}});
    }
    j["zeros"] = list;
    return j;
}

std::string verdict_of(const esc_map *m, bool has_count, int Z, bool crossing)
{
    esc_verdict v{};
    check(esc_verdict_for(m, has_count ? 1 : 0, Z, crossing ? 1 : 0, &v));
    return esc_verdict_name(v);
}

bool gamma_unit(const json &info)
{
    return info["loading"]["gamma_is_unit"].get<bool>();
}

} // namespace

int cmd_map(const RunConfig &cfg, const fs::path &out)
{
    return guarded_run("map", cfg, out, [&](json &derived) {
        Map m = make_map(cfg);
        const json info = map_info(m.get());
        TracedSet t = trace_all(m.get(), cfg.points_per_side);
        for (size_t i = 0; i < t.points.size(); ++i) {
            write_file(out / ("contour_" + std::to_string(i) + ".csv"), contour_csv(t.points[i]));
        }
        if (cfg.svg) {
            write_file(out / "contours.svg", contours_svg(t.points));
        }
        derived = info;
        derived["contours"] = t.metrics;
        derived["intersection"] = intersection_json(t.crossing);
        bool has_count = false;
        int Z = -1;
        try {
            const Zeros z = count_zeros(m.get(), ESC_METHOD_ARGUMENT_PRINCIPLE);
            has_count = z.report.has_count != 0;
            Z = z.report.Z;
            derived["Z"] = Z;
        } catch (const LibraryError &e) {
            if (!gamma_unit(info)) {
                throw;
            }
            derived["Z"] = nullptr;
            derived["count_error"] = e.name();
        }
        derived["verdict"] = verdict_of(m.get(), has_count, Z, t.crossing.intersect);
        return int(exit_ok);
    });
}

int cmd_zeros(const RunConfig &cfg, const fs::path &out)
{
    return guarded_run("zeros", cfg, out, [&](json &derived) {
        Map m = make_map(cfg);
        const json info = map_info(m.get());
        std::vector<esc_zero_method> methods{ESC_METHOD_ARGUMENT_PRINCIPLE};
        if (has_closed_form(cfg.family_id())) {
            methods.push_back(ESC_METHOD_CLOSED_FORM);
        }
        if (cfg.oracle) {
            methods.push_back(ESC_METHOD_ORACLE);
        }
        json reports = json::array();
        std::optional<int> Z;
        std::optional<LibraryError> first_error;
        bool agree = true;
        for (esc_zero_method method : methods) {
            try {
                const Zeros z = count_zeros(m.get(), method);
                reports.push_back(zeros_json(z));
                if (z.report.has_count) {
                    if (Z && *Z != z.report.Z) {
                        agree = false;
                    }
                    Z = Z.value_or(z.report.Z);
                }
            } catch (const LibraryError &e) {
                reports.push_back({{"method", esc_method_name(method)}, {"error", e.name()}, {"message", e.what()}});
                if (!first_error) {
                    first_error = e;
                }
            }
        }
        if (!Z && !gamma_unit(info)) {
            throw *first_error;
        }
        TracedSet t = trace_all(m.get(), cfg.points_per_side);

        json report;
        report["gamma"] = info["loading"]["gamma"];
        report["methods"] = reports;
        report["agreement"] = agree && Z.has_value();
        if (cfg.family_id() == ESC_N2_SYM_INF) {
            try {
                report["closed_form"] = json::parse(two_call_string(
                    [&](char *b, size_t c, size_t *n) { return esc_map_closed_form_json(m.get(), b, c, n); }));
            } catch (const LibraryError &e) {
                report["closed_form"] = {{"error", e.name()}};
            }
        }
        report["Z"] = Z ? json(*Z) : json(nullptr);
        report["intersection"] = intersection_json(t.crossing);
        report["verdict"] = verdict_of(m.get(), Z.has_value(), Z.value_or(-1), t.crossing.intersect);
        write_json(out / "zeros.json", report);

        derived = info;
        derived["zeros"] = report;
        if (!agree) {
            derived["error"] = "method-disagreement";
            return int(exit_numerical);
        }
        return int(exit_ok);
    });
}

int cmd_stress(const RunConfig &cfg, const fs::path &out)
{
    return guarded_run("stress", cfg, out, [&](json &derived) {
        Map m = make_map(cfg);
        const json info = map_info(m.get());
        const int slits = static_cast<int>(info["slit_bases"].size());
        std::vector<int> cavities = cfg.stress_cavities;
        if (cavities.empty()) {
            for (int i = 0; i < slits; ++i) {
                cavities.push_back(i);
            }
        }
        for (int c : cavities) {
            if (c >= slits) {
                throw ConfigError("output.stress_cavities lists cavity " + std::to_string(c) + " but the case has " +
                                  std::to_string(slits));
            }
        }
        const int side_filter = cfg.stress_side == "upper" ? 1 : cfg.stress_side == "lower" ? -1 : 0;
        const auto &L = info["loading"];
        const double S = L["sigma"].get<double>() + L["p"].get<double>();

        esc_stress_options opt{cfg.stress_points, cfg.stress_max_points, 0};
        json profiles = json::array();
        for (int c : cavities) {
            esc_stress *raw = nullptr;
            check(esc_map_stress(m.get(), c, &opt, &raw));
            Stress prof(raw);
            size_t n = 0;
            check(esc_stress_samples(prof.get(), nullptr, 0, &n));
            std::vector<esc_stress_sample> all(n);
            check(esc_stress_samples(prof.get(), all.data(), all.size(), &n));
            std::vector<esc_stress_sample> kept;
            double sum_dev = 0.0, st_dev = 0.0, sn_dev = 0.0, tnt_dev = 0.0;
            for (const auto &s : all) {
                if (side_filter != 0 && s.side != side_filter) {
                    continue;
                }
                kept.push_back(s);
                sum_dev = std::max(sum_dev, std::abs(s.sigma1 + s.sigma2 - S));
                st_dev = std::max(st_dev, std::abs(s.sigma_t - L["sigma"].get<double>()));
                sn_dev = std::max(sn_dev, std::abs(s.sigma_n - L["p"].get<double>()));
                tnt_dev = std::max(tnt_dev, std::abs(s.tau_nt - L["tau"].get<double>()));
            }
            write_file(out / ("stress_" + std::to_string(c) + ".csv"), stress_csv(kept));
            profiles.push_back({{"cavity", c},
                                {"side", cfg.stress_side},
                                {"samples", kept.size()},
                                {"arclength_converged", esc_stress_converged(prof.get()) != 0},
                                {"max_sum_deviation", sum_dev},
                                {"max_sigma_t_deviation", st_dev},
                                {"max_sigma_n_deviation", sn_dev},
                                {"max_tau_nt_deviation", tnt_dev}});
        }
        derived = info;
        derived["stress"] = profiles;
        return int(exit_ok);
    });
}

int cmd_verify(const RunConfig &cfg, const fs::path &out)
{
    return guarded_run("verify", cfg, out, [&](json &derived) {
        Map m = make_map(cfg);
        const json info = map_info(m.get());

        double loop_max = 0.0;
        for (const auto &[name, v] : info["residuals"].items()) {
            loop_max = std::max(loop_max, v.get<double>());
        }
        esc_boundary_residual br{};
        check(esc_map_boundary_residual(m.get(), cfg.boundary_samples, &br));
        esc_far_field ff{};
        check(esc_map_far_field(m.get(), &ff));
        const double scale_tol = is_finite_zeta(cfg) ? 1e-7 : 1e-8;

        json v;
        v["gamma"] = info["loading"]["gamma"];
        v["residuals"] = info["residuals"];
        v["max_loop_residual"] = loop_max;
        v["boundary_residual"] = {{"max", br.max},
                                  {"worst_xi", br.worst_xi},
                                  {"worst_slit", br.worst_slit},
                                  {"near_zero_samples", br.near_zero_samples},
                                  {"samples", br.samples}};
        v["far_field"] = {{"psi", complex_json(ff.psi_re, ff.psi_im)},
                          {"psi_error", ff.psi_error},
                          {"scale", complex_json(ff.scale_re, ff.scale_im)},
                          {"scale_error", ff.scale_error}};
        json checks;
        checks["loop_residuals"] = loop_max < 1e-10;
        checks["boundary_residual"] = br.max < 1e-9;
        checks["far_field_psi"] = ff.psi_error < 1e-8;
        checks["far_field_scale"] = ff.scale_error < scale_tol;
        bool pass = true;
        for (const auto &[name, ok] : checks.items()) {
            pass = pass && ok.get<bool>();
        }
        v["checks"] = checks;
        v["pass"] = pass;
        try {
            const Zeros z = count_zeros(m.get(), ESC_METHOD_ARGUMENT_PRINCIPLE);
            v["Z"] = z.report.Z;
        } catch (const LibraryError &e) {
            v["Z"] = nullptr;
            v["count_error"] = e.name();
        }
        write_json(out / "verify.json", v);
        derived = info;
        derived["verify"] = v;
        return pass ? int(exit_ok) : int(exit_numerical);
    });
}

// ---------------------------------------------------------------------------

namespace
{

struct Cell {
    std::optional<double> value;
    double gamma_target = 0.0;
    double gamma = 0.0;
    std::optional<int> Z;
    std::optional<int> Z_oracle;
    bool intersect = false;
    std::string verdict;
    std::string status = "ok";
};

RunConfig cell_config(const RunConfig &base, const SweepSpec &sw, std::optional<double> value, double gamma)
{
    json j = base.to_json();
    j.erase("sweep");
    std::vector<std::string> overrides;
    if (value) {
        overrides.push_back(sw.parameter + "=" + num(*value));
    }
    RunConfig c = parse_config(j, overrides);
    esc_loading_info li{};
    check(esc_loading_derive(&c.loading, &li));
    const double a = std::hypot(li.a_re, li.a_im);
    if (!(a > 0.0)) {
        throw ConfigError("sweep needs |a| > 0");
    }
    const double mean = 0.5 * (c.loading.sigma1_inf + c.loading.sigma2_inf);
    if (sw.via == "deviator") {
        const double sign = c.loading.sigma2_inf >= c.loading.sigma1_inf ? 1.0 : -1.0;
        c.loading.sigma1_inf = mean - sign * gamma * a;
        c.loading.sigma2_inf = mean + sign * gamma * a;
        c.loading.tau_inf = 0.0;
    } else {
        c.loading.sigma1_inf = mean;
        c.loading.sigma2_inf = mean;
        c.loading.tau_inf = gamma * a;
    }
    return c;
}

Cell run_cell(const RunConfig &c, bool oracle)
{
    Cell cell;
    try {
        Map m = make_map(c);
        esc_loading_info li{};
        check(esc_loading_derive(&c.loading, &li));
        cell.gamma = li.gamma;
        try {
            const Zeros z = count_zeros(m.get(), ESC_METHOD_ARGUMENT_PRINCIPLE);
            if (z.report.has_count) {
                cell.Z = z.report.Z;
            }
        } catch (const LibraryError &e) {
            cell.status = e.name();
        }
        if (oracle) {
            try {
                const Zeros z = count_zeros(m.get(), ESC_METHOD_ORACLE);
                cell.Z_oracle = z.report.Z;
            } catch (const LibraryError &e) {
                cell.status = e.name();
            }
        }
        Contours t = trace(m.get(), c.points_per_side);
        cell.intersect = intersect(t.get()).intersect;
        cell.verdict = verdict_of(m.get(), cell.Z.has_value(), cell.Z.value_or(-1), cell.intersect);
    } catch (const LibraryError &e) {
        cell.status = e.name();
        cell.verdict = "error";
    }
    return cell;
}

std::string opt_str(const std::optional<int> &v)
{
    return v ? std::to_string(*v) : std::string();
}

json side_summary(const std::vector<const Cell *> &cells)
{
    std::set<int> zs;
    std::set<std::string> verdicts;
    int failures = 0;
    for (const Cell *c : cells) {
        if (c->Z) {
            zs.insert(*c->Z);
        } else {
            ++failures;
        }
        verdicts.insert(c->verdict);
    }
    return {{"cells", cells.size()}, {"Z", zs}, {"verdicts", verdicts}, {"uncounted", failures}};
}

} // namespace

int cmd_sweep(const RunConfig &cfg, const fs::path &out)
{
    if (!cfg.sweep) {
        throw ConfigError("sweep command needs a 'sweep' block");
    }
    const SweepSpec &sw = *cfg.sweep;
    const esc_family fam = cfg.family_id();
    if (sw.via == "tau_inf" && (fam == ESC_N2_SYM_FINITE || fam == ESC_N2_SYM_INF)) {
        throw ConfigError("symmetric cases need tau_inf = 0; sweep via deviator");
    }
    std::vector<double> gammas;
    for (int i = 0; i < sw.gamma_count; ++i) {
        gammas.push_back(sw.gamma_count == 1 ? sw.gamma_from
                                             : sw.gamma_from + (sw.gamma_to - sw.gamma_from) * i / (sw.gamma_count - 1));
    }
    std::vector<std::optional<double>> values;
    if (sw.parameter.empty()) {
        values.emplace_back();
    } else {
        values.assign(sw.values.begin(), sw.values.end());
    }

    std::vector<RunConfig> configs;
    std::vector<Cell> cells;
    for (const auto &v : values) {
        for (double g : gammas) {
            configs.push_back(cell_config(cfg, sw, v, g));
            Cell c;
            c.value = v;
            c.gamma_target = g;
            cells.push_back(c);
        }
    }

    return guarded_run("sweep", cfg, out, [&](json &derived) {
        unsigned threads = sw.threads > 0 ? unsigned(sw.threads) : std::max(1u, std::thread::hardware_concurrency());
        threads = std::min<unsigned>(threads, static_cast<unsigned>(cells.size()));
        std::atomic<size_t> next{0};
        auto worker = [&] {
            for (size_t i = next++; i < cells.size(); i = next++) {
                Cell r = run_cell(configs[i], sw.oracle);
                r.value = cells[i].value;
                r.gamma_target = cells[i].gamma_target;
                cells[i] = std::move(r);
            }
        };
        std::vector<std::jthread> pool;
        for (unsigned t = 1; t < threads; ++t) {
            pool.emplace_back(worker);
        }
        worker();
        pool.clear();

        std::string csv = "value,gamma,Z,Z_oracle,intersect,verdict,status\n";
        for (const Cell &c : cells) {
            csv += (c.value ? num(*c.value) : std::string()) + ',' + num(c.gamma) + ',' + opt_str(c.Z) + ',' +
                   opt_str(c.Z_oracle) + ',' + (c.intersect ? "true" : "false") + ',' + c.verdict + ',' + c.status +
                   '\n';
        }
        write_file(out / "sweep.csv", csv);

        json columns = json::array();
        bool all_transition = true;
        for (const auto &v : values) {
            std::vector<const Cell *> below, above;
            int oracle_mismatch = 0;
            for (const Cell &c : cells) {
                if (c.value != v) {
                    continue;
                }
                if (c.Z && c.Z_oracle && *c.Z != *c.Z_oracle) {
                    ++oracle_mismatch;
                }
                if (c.gamma <= 0.98) {
                    below.push_back(&c);
                } else if (c.gamma >= 1.02) {
                    above.push_back(&c);
                }
            }
            json col;
            col["value"] = v ? json(*v) : json(nullptr);
            col["below"] = side_summary(below);
            col["above"] = side_summary(above);
            const auto &zb = col["below"]["Z"];
            const auto &za = col["above"]["Z"];
            // A transition at gamma = 1: one Z value on each side, and they differ.
            const bool transition = !below.empty() && !above.empty() && zb.size() == 1 && za.size() == 1 && zb != za;
            col["transition_at_gamma_1"] = transition;
            col["oracle_mismatches"] = oracle_mismatch;
            all_transition = all_transition && transition;
            columns.push_back(col);
        }
        json summary;
        summary["parameter"] = sw.parameter.empty() ? json(nullptr) : json(sw.parameter);
        summary["via"] = sw.via;
        summary["columns"] = columns;
        summary["transition_at_gamma_1"] = all_transition;
        write_json(out / "sweep_summary.json", summary);
        derived["sweep"] = summary;
        return int(exit_ok);
    });
}

int run_command(const std::string &name, const RunConfig &cfg, const fs::path &out)
{
    static const std::map<std::string, int (*)(const RunConfig &, const fs::path &)> table{
        {"map", cmd_map}, {"zeros", cmd_zeros}, {"stress", cmd_stress}, {"sweep", cmd_sweep}, {"verify", cmd_verify}};
    const auto it = table.find(name);
    if (it == table.end()) {
        throw ConfigError("unknown command '" + name + "'");
    }
    return it->second(cfg, out);
}

} // namespace esc_tool
