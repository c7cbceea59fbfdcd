#include "config.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace esc_tool
{

namespace
{

void reject_unknown(const json &obj, const std::string &block, const std::set<std::string> &allowed)
{
    for (const auto &[key, _] : obj.items()) {
        if (!allowed.contains(key)) {
            throw ConfigError("unknown key '" + key + "' in " + block);
        }
    }
}

const json &object_at(const json &doc, const std::string &key)
{
    const json &v = doc.at(key);
    if (!v.is_object()) {
        throw ConfigError("'" + key + "' must be an object");
    }
    return v;
}

double number(const json &obj, const std::string &block, const std::string &key, double fallback, bool required)
{
    if (!obj.contains(key)) {
        if (required) {
            throw ConfigError(block + "." + key + " is required");
        }
        return fallback;
    }
    const json &v = obj.at(key);
    if (!v.is_number()) {
        throw ConfigError(block + "." + key + " must be a number");
    }
    return v.get<double>();
}

int integer(const json &obj, const std::string &block, const std::string &key, int fallback, int min)
{
    if (!obj.contains(key)) {
        return fallback;
    }
    const json &v = obj.at(key);
    if (!v.is_number_integer() || v.get<long long>() < min || v.get<long long>() > 1 << 24) {
        throw ConfigError(block + "." + key + " must be an integer >= " + std::to_string(min));
    }
    return v.get<int>();
}

bool boolean(const json &obj, const std::string &block, const std::string &key, bool fallback)
{
    if (!obj.contains(key)) {
        return fallback;
    }
    if (!obj.at(key).is_boolean()) {
        throw ConfigError(block + "." + key + " must be true or false");
    }
    return obj.at(key).get<bool>();
}

std::pair<double, double> complex_value(const json &v, const std::string &what)
{
    if (v.is_number()) {
        return {v.get<double>(), 0.0};
    }
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
        return {v[0].get<double>(), v[1].get<double>()};
    }
    throw ConfigError(what + " must be a number or [re, im]");
}

void apply_override(json &doc, const std::string &assignment)
{
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw ConfigError("--set expects key=value, got '" + assignment + "'");
    }
    const std::string path = assignment.substr(0, eq);
    const std::string text = assignment.substr(eq + 1);
    json value = json::parse(text, nullptr, false);
    if (value.is_discarded()) {
        value = text;
    }
    json *node = &doc;
    std::size_t start = 0;
    while (true) {
        const auto dot = path.find('.', start);
        const std::string key = path.substr(start, dot - start);
        if (key.empty()) {
            throw ConfigError("malformed --set key '" + path + "'");
        }
        if (!node->is_object()) {
            throw ConfigError("--set path '" + path + "' crosses a non-object");
        }
        if (dot == std::string::npos) {
            (*node)[key] = value;
            return;
        }
        node = &(*node)[key];
        if (node->is_null()) {
            *node = json::object();
        }
        start = dot + 1;
    }
}

const std::set<std::string> &geometry_keys(esc_family f)
{
    static const std::set<std::string> none;
    static const std::set<std::string> k_only{"k"};
    static const std::set<std::string> n2f{"k", "zeta_inf"};
    static const std::set<std::string> n3{"k", "k1", "k2", "zeta_inf"};
    static const std::set<std::string> line{"endpoints"};
    switch (f) {
        case ESC_N1:
            return none;
        case ESC_N2_FINITE:
            return n2f;
        case ESC_N2_SYM_FINITE:
        case ESC_N2_SYM_INF:
            return k_only;
        case ESC_N3_FINITE:
            return n3;
        case ESC_N_LINE:
            return line;
    }
    return none;
}

SweepSpec parse_sweep(const json &s)
{
    reject_unknown(s, "sweep", {"gamma", "via", "parameter", "values", "threads", "oracle"});
    SweepSpec out;
    if (s.contains("gamma")) {
        const json &g = object_at(s, "gamma");
        reject_unknown(g, "sweep.gamma", {"from", "to", "count"});
        out.gamma_from = number(g, "sweep.gamma", "from", out.gamma_from, false);
        out.gamma_to = number(g, "sweep.gamma", "to", out.gamma_to, false);
        out.gamma_count = integer(g, "sweep.gamma", "count", out.gamma_count, 1);
        if (!(out.gamma_from >= 0.0) || !(out.gamma_to >= out.gamma_from)) {
            throw ConfigError("sweep.gamma needs 0 <= from <= to");
        }
    }
    if (s.contains("via")) {
        if (!s["via"].is_string()) {
            throw ConfigError("sweep.via must be a string");
        }
        out.via = s["via"].get<std::string>();
        if (out.via != "deviator" && out.via != "tau_inf") {
            throw ConfigError("sweep.via must be 'deviator' or 'tau_inf'");
        }
    }
    if (s.contains("parameter")) {
        if (!s["parameter"].is_string()) {
            throw ConfigError("sweep.parameter must be a string");
        }
        out.parameter = s["parameter"].get<std::string>();
        if (!out.parameter.starts_with("geometry.") && !out.parameter.starts_with("loading.") &&
            !out.parameter.starts_with("scale.")) {
            throw ConfigError("sweep.parameter must name a geometry, loading or scale key");
        }
        if (!s.contains("values") || !s["values"].is_array() || s["values"].empty()) {
            throw ConfigError("sweep.parameter needs a non-empty sweep.values array");
        }
        for (const json &v : s["values"]) {
            if (!v.is_number()) {
                throw ConfigError("sweep.values must be numbers");
            }
            out.values.push_back(v.get<double>());
        }
    } else if (s.contains("values")) {
        throw ConfigError("sweep.values given without sweep.parameter");
    }
    out.threads = integer(s, "sweep", "threads", 0, 0);
    out.oracle = boolean(s, "sweep", "oracle", false);
    return out;
}

json sweep_to_json(const SweepSpec &s)
{
    json j;
    j["gamma"] = {{"from", s.gamma_from}, {"to", s.gamma_to}, {"count", s.gamma_count}};
    j["via"] = s.via;
    if (!s.parameter.empty()) {
        j["parameter"] = s.parameter;
        j["values"] = s.values;
    }
    j["oracle"] = s.oracle;
    // threads is not recorded.
    return j;
}

} // namespace

esc_family RunConfig::family_id() const
{
    esc_family f{};
    if (esc_parse_family(family.c_str(), &f) != ESC_OK) {
        throw ConfigError("unknown case '" + family + "'");
    }
    return f;
}

esc_geometry RunConfig::geometry() const
{
    esc_geometry g{};
    g.family = family_id();
    g.k = k;
    g.k1 = k1;
    g.k2 = k2;
    g.endpoints = endpoints.empty() ? nullptr : endpoints.data();
    g.endpoint_count = endpoints.size();
    if (zeta_inf) {
        g.zeta_inf_re = zeta_inf->first;
        g.zeta_inf_im = zeta_inf->second;
    }
    return g;
}

esc_scale RunConfig::scale() const
{
    return esc_scale{c_prime, c_dblprime, B.first, B.second, tolerance};
}

json RunConfig::to_json() const
{
    json j;
    j["case"] = family;
    j["loading"] = {{"sigma1_inf", loading.sigma1_inf},
                    {"sigma2_inf", loading.sigma2_inf},
                    {"tau_inf", loading.tau_inf},
                    {"p", loading.p},
                    {"tau", loading.tau}};
    json g = json::object();
    const esc_family f = family_id();
    if (f != ESC_N1 && f != ESC_N_LINE) {
        g["k"] = k;
    }
    if (f == ESC_N3_FINITE) {
        g["k1"] = k1;
        g["k2"] = k2;
        g["zeta_inf"] = {zeta_inf->first, zeta_inf->second};
    }
    if (f == ESC_N2_FINITE) {
        g["zeta_inf"] = zeta_inf->first;
    }
    if (f == ESC_N_LINE) {
        g["endpoints"] = endpoints;
    }
    j["geometry"] = g;
    j["scale"] = {{"c_prime", c_prime}, {"c_dblprime", c_dblprime}, {"B", {B.first, B.second}}};
    json o;
    o["points_per_side"] = points_per_side;
    o["boundary_samples"] = boundary_samples;
    o["tolerance"] = tolerance;
    o["svg"] = svg;
    o["oracle"] = oracle;
    o["stress_cavities"] = stress_cavities;
    o["stress_side"] = stress_side;
    o["stress_points"] = stress_points;
    o["stress_max_points"] = stress_max_points;
    j["output"] = o;
    if (sweep) {
        j["sweep"] = sweep_to_json(*sweep);
    }
    return j;
}

RunConfig parse_config(const json &input, const std::vector<std::string> &overrides)
{
    if (!input.is_object()) {
        throw ConfigError("configuration must be a JSON object");
    }
    json doc = input;
    if (doc.contains("config") && doc.contains("derived")) {
        doc = json(input.at("config"));
    }
    for (const std::string &o : overrides) {
        apply_override(doc, o);
    }
    reject_unknown(doc, "configuration", {"case", "loading", "geometry", "scale", "output", "sweep"});

    RunConfig c;
    if (!doc.contains("case") || !doc["case"].is_string()) {
        throw ConfigError("'case' is required and must be a string");
    }
    c.family = doc["case"].get<std::string>();
    const esc_family f = c.family_id();

    if (!doc.contains("loading")) {
        throw ConfigError("'loading' block is required");
    }
    const json &L = object_at(doc, "loading");
    reject_unknown(L, "loading", {"sigma1_inf", "sigma2_inf", "tau_inf", "p", "tau"});
    c.loading.sigma1_inf = number(L, "loading", "sigma1_inf", 0.0, true);
    c.loading.sigma2_inf = number(L, "loading", "sigma2_inf", 0.0, true);
    c.loading.tau_inf = number(L, "loading", "tau_inf", 0.0, false);
    c.loading.p = number(L, "loading", "p", 0.0, false);
    c.loading.tau = number(L, "loading", "tau", 0.0, false);

    const json G = doc.contains("geometry") ? object_at(doc, "geometry") : json::object();
    reject_unknown(G, "geometry for case " + c.family, geometry_keys(f));
    switch (f) {
        case ESC_N1:
            break;
        case ESC_N2_FINITE:
            c.k = number(G, "geometry", "k", 0.0, true);
            if (!G.contains("zeta_inf")) {
                throw ConfigError("geometry.zeta_inf is required");
            }
            c.zeta_inf = complex_value(G["zeta_inf"], "geometry.zeta_inf");
            if (c.zeta_inf->second != 0.0) {
                throw ConfigError("n2-finite requires a real geometry.zeta_inf");
            }
            break;
        case ESC_N2_SYM_FINITE:
        case ESC_N2_SYM_INF:
            c.k = number(G, "geometry", "k", 0.0, true);
            break;
        case ESC_N3_FINITE:
            c.k = number(G, "geometry", "k", 0.0, true);
            c.k1 = number(G, "geometry", "k1", 0.0, true);
            c.k2 = number(G, "geometry", "k2", 0.0, true);
            if (!G.contains("zeta_inf")) {
                throw ConfigError("geometry.zeta_inf is required");
            }
            c.zeta_inf = complex_value(G["zeta_inf"], "geometry.zeta_inf");
            break;
        case ESC_N_LINE:
            if (!G.contains("endpoints") || !G["endpoints"].is_array()) {
                throw ConfigError("geometry.endpoints must be an array");
            }
            for (const json &v : G["endpoints"]) {
                if (!v.is_number()) {
                    throw ConfigError("geometry.endpoints must be numbers");
                }
                c.endpoints.push_back(v.get<double>());
            }
            if (c.endpoints.size() < 2 || c.endpoints.size() % 2 != 0) {
                throw ConfigError("geometry.endpoints needs an even count of at least 2");
            }
            break;
    }

    if (doc.contains("scale")) {
        const json &S = object_at(doc, "scale");
        reject_unknown(S, "scale", {"c_prime", "c_dblprime", "B"});
        c.c_prime = number(S, "scale", "c_prime", 1.0, false);
        c.c_dblprime = number(S, "scale", "c_dblprime", 0.0, false);
        if (S.contains("B")) {
            c.B = complex_value(S["B"], "scale.B");
        }
    }

    if (doc.contains("output")) {
        const json &O = object_at(doc, "output");
        reject_unknown(O, "output",
                       {"points_per_side", "boundary_samples", "tolerance", "svg", "oracle", "stress_cavities",
                        "stress_side", "stress_points", "stress_max_points"});
        c.points_per_side = integer(O, "output", "points_per_side", c.points_per_side, 16);
        c.boundary_samples = integer(O, "output", "boundary_samples", c.boundary_samples, 64);
        c.tolerance = number(O, "output", "tolerance", 0.0, false);
        if (!(c.tolerance >= 0.0)) {
            throw ConfigError("output.tolerance must be non-negative");
        }
        c.svg = boolean(O, "output", "svg", c.svg);
        c.oracle = boolean(O, "output", "oracle", c.oracle);
        if (O.contains("stress_cavities")) {
            if (!O["stress_cavities"].is_array()) {
                throw ConfigError("output.stress_cavities must be an array");
            }
            for (const json &v : O["stress_cavities"]) {
                if (!v.is_number_integer() || v.get<int>() < 0) {
                    throw ConfigError("output.stress_cavities must be non-negative integers");
                }
                c.stress_cavities.push_back(v.get<int>());
            }
        }
        if (O.contains("stress_side")) {
            if (!O["stress_side"].is_string()) {
                throw ConfigError("output.stress_side must be a string");
            }
            c.stress_side = O["stress_side"].get<std::string>();
            if (c.stress_side != "both" && c.stress_side != "upper" && c.stress_side != "lower") {
                throw ConfigError("output.stress_side must be both, upper or lower");
            }
        }
        c.stress_points = integer(O, "output", "stress_points", c.stress_points, 16);
        c.stress_max_points = integer(O, "output", "stress_max_points", c.stress_max_points, 16);
    }
    if (c.tolerance == 0.0) {
        c.tolerance = esc_default_tolerance();
    }

    if (doc.contains("sweep")) {
        c.sweep = parse_sweep(object_at(doc, "sweep"));
    }
    return c;
}

RunConfig load_config(const std::string &path, const std::vector<std::string> &overrides)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open configuration '" + path + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    const json doc = json::parse(ss.str(), nullptr, false);
    if (doc.is_discarded()) {
        throw ConfigError("'" + path + "' is not valid JSON");
    }
    return parse_config(doc, overrides);
}

} // namespace esc_tool
