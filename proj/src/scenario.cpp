#include "csf/scenario.hpp"

#include "csf/errors.hpp"
#include "csf/expr.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace csf {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(const std::string& value, const std::string& path) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size())
            throw ConfigError(path + ": trailing characters in number '" + value + "'");
        return v;
    } catch (const std::invalid_argument&) {
        throw ConfigError(path + ": expected a number, got '" + value + "'");
    } catch (const std::out_of_range&) {
        throw ConfigError(path + ": number out of range '" + value + "'");
    }
}

int parse_int(const std::string& value, const std::string& path) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(value, &used);
        if (used != value.size())
            throw ConfigError(path + ": trailing characters in integer '" + value + "'");
        return v;
    } catch (const std::invalid_argument&) {
        throw ConfigError(path + ": expected an integer, got '" + value + "'");
    } catch (const std::out_of_range&) {
        throw ConfigError(path + ": integer out of range '" + value + "'");
    }
}

bool parse_bool(const std::string& value, const std::string& path) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw ConfigError(path + ": expected true or false, got '" + value + "'");
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

void check_expr(const std::string& value, const std::string& path) {
    try {
        parse_expr(value);
    } catch (const SyntaxError& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

void apply_key(ScenarioConfig& sc, const std::string& section,
               const std::string& key, const std::string& value) {
    const std::string path = section.empty() ? key : section + "." + key;
    if (section.empty()) {
        if (key == "model") {
            if (value == "a1") sc.model = Model::A1;
            else if (value == "a2") sc.model = Model::A2;
            else if (value == "both") sc.model.reset();
            else throw ConfigError(path + ": expected a1, a2 or both");
        } else if (key == "name") {
            sc.name = value;
        } else if (key == "preset") {
            const ScenarioConfig base = load_scenario(value);
            sc.initial = base.initial;
        } else {
            throw ConfigError(path + ": unknown key");
        }
    } else if (section == "constants") {
        PhysConstants& c = sc.constants;
        if (key == "rho") c.rho = parse_double(value, path);
        else if (key == "delta") c.delta = parse_double(value, path);
        else if (key == "kappa") c.kappa = parse_double(value, path);
        else if (key == "k_tilde") c.k_tilde = parse_double(value, path);
        else if (key == "r_foramen") c.r_foramen = parse_double(value, path);
        else if (key == "mu") c.mu = parse_double(value, path);
        else if (key == "h_tilde") c.h_tilde = parse_double(value, path);
        else if (key == "Q_p") c.Q_p = parse_double(value, path);
        else if (key == "R_abs") c.R_abs = parse_double(value, path);
        else if (key == "alpha_bar") c.alpha_bar = parse_double(value, path);
        else if (key == "omega") c.omega = parse_double(value, path);
        else if (key == "K_comp") c.K_comp = parse_double(value, path);
        else if (key == "P_tilde") c.P_tilde = parse_double(value, path);
        else if (key == "L") c.L = parse_double(value, path);
        else if (key == "baseline_pressure") c.baseline_pressure = parse_double(value, path);
        else if (key == "denominator_floor") c.denominator_floor = parse_double(value, path);
        else if (key == "C_hat1") sc.C_hat1 = parse_double(value, path);
        else throw ConfigError(path + ": unknown key");
    } else if (section == "grid") {
        if (key == "nz") sc.nz = parse_int(value, path);
        else throw ConfigError(path + ": unknown key");
    } else if (section == "stepper") {
        StepperConfig& st = sc.stepper;
        if (key == "scheme") {
            if (value == "rk4") st.scheme = Scheme::FixedRK4;
            else if (value == "rk45") st.scheme = Scheme::AdaptiveRK45;
            else throw ConfigError(path + ": expected rk4 or rk45");
        } else if (key == "dt") st.dt = parse_double(value, path);
        else if (key == "t_final") st.t_final = parse_double(value, path);
        else if (key == "atol") st.atol = parse_double(value, path);
        else if (key == "rtol") st.rtol = parse_double(value, path);
        else if (key == "dt_init") st.dt_init = parse_double(value, path);
        else if (key == "dt_min") st.dt_min = parse_double(value, path);
        else if (key == "blowup_threshold") st.blowup_threshold = parse_double(value, path);
        else if (key == "sample_every") st.sample_every = parse_int(value, path);
        else if (key == "upwind") st.upwind_advection = parse_bool(value, path);
        else if (key == "a2_h_sign") {
            if (value == "continuity") st.a2_h_sign = A2HSign::Continuity;
            else if (value == "printed") st.a2_h_sign = A2HSign::Printed;
            else throw ConfigError(path + ": expected continuity or printed");
        } else throw ConfigError(path + ": unknown key");
    } else if (section == "initial") {
        if (key == "preset") {
            const ScenarioConfig base = load_scenario(value);
            sc.initial = base.initial;
            return;
        }
        check_expr(value, path);
        if (key == "u0") sc.initial.u0 = value;
        else if (key == "eta0") sc.initial.eta0 = value;
        else if (key == "zeta0") sc.initial.zeta0 = value;
        else if (key == "P0") sc.initial.P0 = value;
        else if (key == "A0") sc.initial.A0 = value;
        else throw ConfigError(path + ": unknown key");
    } else if (section == "outputs") {
        if (key == "dir") sc.out_dir = value;
        else throw ConfigError(path + ": unknown key");
    } else {
        throw ConfigError("unknown section [" + section + "]");
    }
}

} // namespace

std::vector<std::pair<std::string, std::string>>
ScenarioConfig::resolved_entries() const {
    std::vector<std::pair<std::string, std::string>> e;
    e.emplace_back("name", name);
    e.emplace_back("model", model ? to_string(*model) : "both");
    const PhysConstants& c = constants;
    e.emplace_back("constants.rho", fmt(c.rho));
    e.emplace_back("constants.delta", fmt(c.delta));
    e.emplace_back("constants.alpha_hat", fmt(c.alpha_hat));
    e.emplace_back("constants.kappa", fmt(c.kappa));
    e.emplace_back("constants.k_tilde", fmt(c.k_tilde));
    e.emplace_back("constants.r_foramen", fmt(c.r_foramen));
    e.emplace_back("constants.mu", fmt(c.mu));
    e.emplace_back("constants.beta", fmt(c.beta));
    e.emplace_back("constants.h_tilde", fmt(c.h_tilde));
    e.emplace_back("constants.Q_p", fmt(c.Q_p));
    e.emplace_back("constants.R_abs", fmt(c.R_abs));
    e.emplace_back("constants.alpha_bar", fmt(c.alpha_bar));
    e.emplace_back("constants.omega", fmt(c.omega));
    e.emplace_back("constants.K_comp", fmt(c.K_comp));
    e.emplace_back("constants.P_tilde", fmt(c.P_tilde));
    e.emplace_back("constants.L", fmt(c.L));
    e.emplace_back("constants.baseline_pressure", fmt(c.baseline_pressure));
    e.emplace_back("constants.denominator_floor", fmt(c.denominator_floor));
    e.emplace_back("constants.C_hat1", fmt(C_hat1));
    e.emplace_back("grid.nz", std::to_string(nz));
    const StepperConfig& st = stepper;
    e.emplace_back("stepper.scheme",
                   st.scheme == Scheme::FixedRK4 ? "rk4" : "rk45");
    e.emplace_back("stepper.dt", fmt(st.dt));
    e.emplace_back("stepper.t_final", fmt(st.t_final));
    e.emplace_back("stepper.atol", fmt(st.atol));
    e.emplace_back("stepper.rtol", fmt(st.rtol));
    e.emplace_back("stepper.dt_init", fmt(st.dt_init));
    e.emplace_back("stepper.dt_min", fmt(st.dt_min));
    e.emplace_back("stepper.blowup_threshold", fmt(st.blowup_threshold));
    e.emplace_back("stepper.sample_every", std::to_string(st.sample_every));
    e.emplace_back("stepper.upwind", st.upwind_advection ? "true" : "false");
    e.emplace_back("stepper.a2_h_sign",
                   st.a2_h_sign == A2HSign::Continuity ? "continuity" : "printed");
    e.emplace_back("initial.u0", initial.u0);
    e.emplace_back("initial.eta0", initial.eta0);
    e.emplace_back("initial.zeta0", initial.zeta0);
    e.emplace_back("initial.P0", initial.P0);
    e.emplace_back("initial.A0", initial.A0);
    e.emplace_back("outputs.dir", out_dir);
    return e;
}

ScenarioConfig preset_case_a() {
    ScenarioConfig sc;
    sc.name = "caseA";
    sc.initial.u0 = "4*sin(pi*z)+1";
    sc.initial.eta0 = "z/5";
    sc.initial.zeta0 = "z/2+1";
    sc.initial.P0 = "cos(pi*z)/6";
    sc.initial.A0 = "2*cos(pi*z)";
    return sc;
}

ScenarioConfig preset_case_b() {
    ScenarioConfig sc = preset_case_a();
    sc.name = "caseB";
    sc.initial.u0 = "-(exp(z)+1)";
    sc.initial.P0 = "exp(z)";
    return sc;
}

ScenarioConfig parse_scenario_text(const std::string& text,
                                   const std::string& origin) {
    ScenarioConfig sc;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError(origin + ":" + std::to_string(lineno) +
                                  ": unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(lineno) +
                              ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError(origin + ":" + std::to_string(lineno) +
                              ": empty key");
        apply_key(sc, section, key, value);
    }
    sc.constants.refresh_derived();
    return sc;
}

ScenarioConfig load_scenario(const std::string& name_or_path) {
    if (name_or_path == "caseA") return preset_case_a();
    if (name_or_path == "caseB") return preset_case_b();
    std::ifstream in(name_or_path);
    if (!in)
        throw ConfigError("cannot open scenario '" + name_or_path +
                          "' (not a preset name or readable file)");
    std::ostringstream buf;
    buf << in.rdbuf();
    ScenarioConfig sc = parse_scenario_text(buf.str(), name_or_path);
    if (sc.name == "custom") sc.name = name_or_path;
    return sc;
}

Grid make_grid(const ScenarioConfig& sc) { return Grid(sc.nz, sc.constants.L); }

State build_initial_state(const ScenarioConfig& sc, const Grid& grid) {
    State s;
    s.t = 0.0;
    auto sample = [&](const std::string& src) {
        const ExprPtr e = parse_expr(src);
        return grid.sample([&](double z) { return eval(*e, z); });
    };
    s.u = sample(sc.initial.u0);
    s.eta = sample(sc.initial.eta0);
    s.zeta = sample(sc.initial.zeta0);
    s.P = sample(sc.initial.P0);
    s.A = sample(sc.initial.A0);
    return s;
}

} // namespace csf
