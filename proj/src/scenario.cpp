#include "lorenzn/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "lorenzn/dynamics.hpp"

namespace lorenzn {

using json = nlohmann::json;

namespace {

[[noreturn]] void syntax_error(const std::string& text, const json::parse_error& e) {
    // nlohmann reports a byte offset; convert to line/column.
    std::size_t line = 1, col = 1;
    const std::size_t limit = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < limit; ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    throw ConfigError("scenario: syntax error at line " + std::to_string(line) +
                      ", column " + std::to_string(col) + ": " + e.what());
}

void check_keys(const json& obj, const std::string& where,
                const std::set<std::string>& allowed) {
    for (const auto& [key, _] : obj.items())
        if (!allowed.count(key))
            throw ConfigError("scenario: unknown key '" + key + "' in " + where);
}

double get_number(const json& obj, const std::string& key, double fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number())
        throw ConfigError("scenario: key '" + key + "' must be a number");
    return obj[key].get<double>();
}

SystemSpec parse_system(const json& sys) {
    if (!sys.is_object()) throw ConfigError("scenario: 'system' must be an object");
    check_keys(sys, "system", {"family", "n", "params"});
    if (!sys.contains("family"))
        throw ConfigError("scenario: 'system.family' is required");

    SystemSpec spec;
    const std::string fam = sys["family"].get<std::string>();
    if (fam == "standard")
        spec.family = Family::Standard;
    else if (fam == "l2")
        spec.family = Family::L2;
    else if (fam == "l1")
        spec.family = Family::L1;
    else if (fam == "ln")
        spec.family = Family::Ln;
    else
        throw ConfigError("scenario: 'system.family' must be one of "
                          "standard|l2|l1|ln, got '" + fam + "'");

    if (sys.contains("n")) {
        if (!sys["n"].is_number_integer())
            throw ConfigError("scenario: 'system.n' must be an integer");
        spec.n = sys["n"].get<int>();
        if (spec.n < 1) throw ConfigError("scenario: 'system.n' must be >= 1");
        if (spec.family != Family::Ln)
            throw ConfigError("scenario: 'system.n' is only valid for family ln");
    } else if (spec.family == Family::Ln) {
        throw ConfigError("scenario: family ln requires 'system.n'");
    }

    const bool wants_standard = (spec.family == Family::Standard);
    if (!sys.contains("params")) {
        if (wants_standard)
            spec.params = StandardParams::canonical();
        else
            spec.params = params_normalize(StandardParams::canonical());
        return spec;
    }

    const json& pj = sys["params"];
    if (!pj.is_object()) throw ConfigError("scenario: 'system.params' must be an object");
    const bool std_style = pj.contains("sigma") || pj.contains("rayleigh") || pj.contains("b");
    const bool norm_style = pj.contains("mu") || pj.contains("beta") || pj.contains("gamma");
    if (std_style && norm_style)
        throw ConfigError("scenario: 'system.params' mixes standard and normalized keys");
    if (std_style) {
        check_keys(pj, "system.params", {"sigma", "rayleigh", "b"});
        StandardParams p = StandardParams::canonical();
        p.sigma = get_number(pj, "sigma", p.sigma);
        p.rayleigh = get_number(pj, "rayleigh", p.rayleigh);
        p.b = get_number(pj, "b", p.b);
        p.validate();
        if (wants_standard) {
            spec.params = p;
        } else {
            if (!(p.rayleigh > 1.0))
                throw ConfigError("scenario: normalizing 'system.params' requires "
                                  "rayleigh > 1 (got rayleigh=" +
                                  std::to_string(p.rayleigh) + ")");
            spec.params = params_normalize(p);
        }
    } else if (norm_style) {
        if (wants_standard)
            throw ConfigError("scenario: family standard requires sigma/rayleigh/b params");
        check_keys(pj, "system.params", {"mu", "beta", "gamma"});
        const NormalizedParams defaults = params_normalize(StandardParams::canonical());
        NormalizedParams p;
        p.mu = get_number(pj, "mu", defaults.mu);
        p.beta = get_number(pj, "beta", defaults.beta);
        p.gamma = get_number(pj, "gamma", defaults.gamma);
        p.validate();
        spec.params = p;
    } else if (!pj.empty()) {
        throw ConfigError("scenario: unknown key '" + pj.items().begin().key() +
                          "' in system.params");
    } else {
        spec.params = wants_standard
                          ? std::variant<StandardParams, NormalizedParams>(
                                StandardParams::canonical())
                          : std::variant<StandardParams, NormalizedParams>(
                                params_normalize(StandardParams::canonical()));
    }
    return spec;
}

void parse_time(const json& tj, Scenario& sc) {
    if (!tj.is_object()) throw ConfigError("scenario: 'time' must be an object");
    check_keys(tj, "time",
               {"t0", "t1", "mode", "step", "rel_tol", "abs_tol", "max_step", "min_step",
                "sample_interval"});
    sc.t0 = get_number(tj, "t0", sc.t0);
    sc.t1 = get_number(tj, "t1", sc.t1);
    if (tj.contains("mode")) {
        const std::string m = tj["mode"].get<std::string>();
        if (m == "fixed")
            sc.integrator.mode = StepMode::Fixed;
        else if (m == "adaptive")
            sc.integrator.mode = StepMode::Adaptive;
        else
            throw ConfigError("scenario: 'time.mode' must be fixed|adaptive, got '" + m +
                              "'");
    }
    sc.integrator.step = get_number(tj, "step", sc.integrator.step);
    sc.integrator.rel_tol = get_number(tj, "rel_tol", sc.integrator.rel_tol);
    sc.integrator.abs_tol = get_number(tj, "abs_tol", sc.integrator.abs_tol);
    sc.integrator.max_step = get_number(tj, "max_step", sc.integrator.max_step);
    sc.integrator.min_step = get_number(tj, "min_step", sc.integrator.min_step);
    sc.integrator.sample_interval =
        get_number(tj, "sample_interval", sc.integrator.sample_interval);
}

OutputSpec parse_output(const json& oj, std::size_t idx) {
    const std::string where = "outputs[" + std::to_string(idx) + "]";
    if (!oj.is_object()) throw ConfigError("scenario: " + where + " must be an object");
    check_keys(oj, where, {"kind", "path", "projection", "color_by"});
    OutputSpec out;
    if (!oj.contains("kind"))
        throw ConfigError("scenario: " + where + " requires 'kind'");
    const std::string kind = oj["kind"].get<std::string>();
    if (kind == "csv")
        out.kind = OutputSpec::Kind::Csv;
    else if (kind == "svg")
        out.kind = OutputSpec::Kind::Svg;
    else
        throw ConfigError("scenario: " + where + ".kind must be csv|svg, got '" + kind +
                          "'");
    if (!oj.contains("path"))
        throw ConfigError("scenario: " + where + " requires 'path'");
    out.path = oj["path"].get<std::string>();
    if (oj.contains("projection")) out.projection = oj["projection"].get<std::string>();
    if (oj.contains("color_by")) {
        out.color_by = oj["color_by"].get<std::string>();
        if (out.color_by != "none" && out.color_by != "branch")
            throw ConfigError("scenario: " + where + ".color_by must be none|branch");
    }
    return out;
}

}  // namespace

void Scenario::validate() const {
    system.validate();
    if (!(t1 > t0)) throw ConfigError("scenario: requires t1 > t0");
    integrator.validate();
    if (outputs.empty()) throw ConfigError("scenario: at least one output is required");
}

Scenario parse_scenario(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        syntax_error(text, e);
    }
    if (!doc.is_object()) throw ConfigError("scenario: top level must be an object");
    check_keys(doc, "document",
               {"schema_version", "system", "initial_state", "time", "outputs"});

    if (!doc.contains("schema_version"))
        throw ConfigError("scenario: 'schema_version' is required");
    if (!doc["schema_version"].is_number_integer() || doc["schema_version"].get<int>() != 1)
        throw ConfigError("scenario: unsupported schema_version (expected 1)");

    Scenario sc;
    if (!doc.contains("system")) throw ConfigError("scenario: 'system' is required");
    sc.system = parse_system(doc["system"]);

    if (doc.contains("initial_state")) {
        const json& st = doc["initial_state"];
        if (!st.is_array() || st.size() != 3 || !st[0].is_number() || !st[1].is_number() ||
            !st[2].is_number())
            throw ConfigError("scenario: 'initial_state' must be an array of 3 numbers");
        sc.initial_state = {st[0].get<double>(), st[1].get<double>(), st[2].get<double>()};
        sc.initial_state_set = true;
    }

    if (doc.contains("time")) parse_time(doc["time"], sc);

    if (!doc.contains("outputs")) throw ConfigError("scenario: 'outputs' is required");
    const json& outs = doc["outputs"];
    if (!outs.is_array() || outs.empty())
        throw ConfigError("scenario: 'outputs' must be a non-empty array");
    for (std::size_t i = 0; i < outs.size(); ++i)
        sc.outputs.push_back(parse_output(outs[i], i));

    sc.validate();
    return sc;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError("scenario: cannot open '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_scenario(ss.str());
}

}  // namespace lorenzn
