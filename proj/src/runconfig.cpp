#include "helscat/runconfig.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "helscat/errors.hpp"
#include "helscat/io.hpp"

namespace helscat {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    const char* begin = value.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || end != begin + value.size())
        throw config_error(key + ": not a number: '" + value + "'");
    return v;
}

int parse_int(const std::string& key, const std::string& value) {
    const char* begin = value.c_str();
    char* end = nullptr;
    const long v = std::strtol(begin, &end, 10);
    if (end == begin || end != begin + value.size())
        throw config_error(key + ": not an integer: '" + value + "'");
    return static_cast<int>(v);
}

std::vector<double> parse_lambda_in(const std::string& value) {
    const std::string v = trim(value);
    std::vector<double> out;
    if (v.rfind("range(", 0) == 0) {
        if (v.back() != ')')
            throw config_error("lambda_in: malformed range, expected range(min,max,count)");
        std::istringstream inner(v.substr(6, v.size() - 7));
        std::string a, b, c;
        if (!(std::getline(inner, a, ',') && std::getline(inner, b, ',') &&
              std::getline(inner, c)))
            throw config_error("lambda_in: malformed range, expected range(min,max,count)");
        const double lo = parse_double("lambda_in", trim(a));
        const double hi = parse_double("lambda_in", trim(b));
        const int n = parse_int("lambda_in", trim(c));
        if (n < 2 || !(hi > lo))
            throw config_error("lambda_in: range needs max > min and count >= 2");
        out.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            out.push_back(lo + (hi - lo) * i / (n - 1));
        return out;
    }
    std::istringstream list(v);
    std::string tok;
    while (std::getline(list, tok, ','))
        out.push_back(parse_double("lambda_in", trim(tok)));
    if (out.empty())
        throw config_error("lambda_in: empty value");
    return out;
}

} // namespace

void apply_key(RunConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "radius_nm") cfg.radius_nm = parse_double(key, value);
    else if (key == "material_path") cfg.material_path = value;
    else if (key == "waist_mm") cfg.waist_mm = parse_double(key, value);
    else if (key == "q") cfg.q = parse_int(key, value);
    else if (key == "s") cfg.s = parse_int(key, value);
    else if (key == "na") cfg.na = parse_double(key, value);
    else if (key == "focal_mm") cfg.focal_mm = parse_double(key, value);
    else if (key == "lambda_min_nm") cfg.lambda_min_nm = parse_double(key, value);
    else if (key == "lambda_max_nm") cfg.lambda_max_nm = parse_double(key, value);
    else if (key == "n_lambda") cfg.n_lambda = parse_int(key, value);
    else if (key == "sigma_thz") cfg.sigma_thz = parse_double(key, value);
    else if (key == "lambda_in") cfg.lambda_in_nm = parse_lambda_in(value);
    else if (key == "input_state") cfg.input_state = value;
    else if (key == "quad_theta") cfg.quad_theta = parse_int(key, value);
    else if (key == "quad_radial") cfg.quad_radial = parse_int(key, value);
    else if (key == "quad_azimuthal") cfg.quad_azimuthal = parse_int(key, value);
    else if (key == "freq_grid_points") cfg.freq_grid_points = parse_int(key, value);
    else if (key == "freq_window_sigmas") cfg.freq_window_sigmas = parse_double(key, value);
    else throw config_error("unknown configuration key: '" + key + "'");
    cfg.explicit_keys.insert(key);
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw config_error("config file not readable: " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw config_error(path + ":" + std::to_string(lineno) +
                               ": expected 'key = value'");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty() || value.empty())
            throw config_error(path + ":" + std::to_string(lineno) +
                               ": expected 'key = value'");
        try {
            apply_key(cfg, key, value);
        } catch (const config_error& e) {
            throw config_error(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
}

void validate(const RunConfig& cfg) {
    if (!(cfg.radius_nm > 0.0)) throw config_error("radius_nm must be positive");
    if (!(cfg.waist_mm > 0.0)) throw config_error("waist_mm must be positive");
    if (cfg.q < 0) throw config_error("q must be non-negative");
    if (cfg.s != 1 && cfg.s != -1) throw config_error("s must be +1 or -1");
    if (!(cfg.na > 0.0) || !(cfg.na < 1.0))
        throw config_error("na must lie strictly inside (0, 1), got " + format_double(cfg.na));
    if (!(cfg.focal_mm > 0.0)) throw config_error("focal_mm must be positive");
    if (!(cfg.lambda_min_nm > 0.0)) throw config_error("lambda_min_nm must be positive");
    if (!(cfg.lambda_max_nm > cfg.lambda_min_nm))
        throw config_error("lambda_max_nm must exceed lambda_min_nm");
    if (cfg.n_lambda < 2) throw config_error("n_lambda must be at least 2");
    if (!(cfg.sigma_thz > 0.0)) throw config_error("sigma_thz must be positive");
    for (const double lam : cfg.lambda_in_nm)
        if (!(lam > 0.0)) throw config_error("lambda_in wavelengths must be positive");
    bool known_state = false;
    for (const char* name : basis_label_names)
        if (cfg.input_state == name) known_state = true;
    if (!known_state)
        throw config_error("input_state must be one of psi_plus, psi_minus, chi_plus, "
                           "chi_minus; got '" + cfg.input_state + "'");
    if (cfg.quad_theta < 1) throw config_error("quad_theta must be at least 1");
    if (cfg.quad_radial < 1) throw config_error("quad_radial must be at least 1");
    if (cfg.quad_azimuthal < 1) throw config_error("quad_azimuthal must be at least 1");
    if (cfg.freq_grid_points < 1) throw config_error("freq_grid_points must be at least 1");
    if (!(cfg.freq_window_sigmas > 0.0))
        throw config_error("freq_window_sigmas must be positive");
}

BasisLabel input_state(const RunConfig& cfg) {
    for (std::size_t i = 0; i < basis_label_names.size(); ++i)
        if (cfg.input_state == basis_label_names[i]) return static_cast<BasisLabel>(i);
    throw config_error("input_state must be one of psi_plus, psi_minus, chi_plus, "
                       "chi_minus; got '" + cfg.input_state + "'");
}

std::vector<double> sweep_grid(const RunConfig& cfg) {
    std::vector<double> grid(static_cast<std::size_t>(cfg.n_lambda));
    for (int i = 0; i < cfg.n_lambda; ++i)
        grid[static_cast<std::size_t>(i)] =
            cfg.lambda_min_nm + (cfg.lambda_max_nm - cfg.lambda_min_nm) * i / (cfg.n_lambda - 1);
    return grid;
}

std::vector<double> lambda_in_grid(const RunConfig& cfg) {
    return cfg.lambda_in_nm.empty() ? sweep_grid(cfg) : cfg.lambda_in_nm;
}

namespace {

std::vector<std::string> classical_fields(const RunConfig& cfg, const Material& mat) {
    return {
        "radius_nm", format_double(cfg.radius_nm),
        "waist_mm", format_double(cfg.waist_mm),
        "q", std::to_string(cfg.q),
        "s", std::to_string(cfg.s),
        "na", format_double(cfg.na),
        "focal_mm", format_double(cfg.focal_mm),
        "lambda_min_nm", format_double(cfg.lambda_min_nm),
        "lambda_max_nm", format_double(cfg.lambda_max_nm),
        "n_lambda", std::to_string(cfg.n_lambda),
        "quad_theta", std::to_string(cfg.quad_theta),
        "quad_radial", std::to_string(cfg.quad_radial),
        "quad_azimuthal", std::to_string(cfg.quad_azimuthal),
        "material", fnv1a_hex(mat.content()),
    };
}

} // namespace

std::string classical_fingerprint(const RunConfig& cfg, const Material& mat) {
    return fnv1a_hex(classical_fields(cfg, mat));
}

std::string full_fingerprint(const RunConfig& cfg, const Material& mat) {
    std::vector<std::string> fields = classical_fields(cfg, mat);
    fields.emplace_back("sigma_thz");
    fields.push_back(format_double(cfg.sigma_thz));
    fields.emplace_back("lambda_in");
    std::string lams;
    for (const double lam : cfg.lambda_in_nm) {
        lams += format_double(lam);
        lams += ';';
    }
    fields.push_back(lams);
    fields.emplace_back("input_state");
    fields.push_back(cfg.input_state);
    fields.emplace_back("freq_grid_points");
    fields.push_back(std::to_string(cfg.freq_grid_points));
    fields.emplace_back("freq_window_sigmas");
    fields.push_back(format_double(cfg.freq_window_sigmas));
    return fnv1a_hex(fields);
}

} // namespace helscat
