#include "dw/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace dw {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::string strip_comment(const std::string& line) {
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') quoted = !quoted;
        if (line[i] == '#' && !quoted) return line.substr(0, i);
    }
    return line;
}

struct RawValue {
    bool is_array = false;
    std::vector<std::string> items;
};

RawValue split_value(const std::string& text, const std::string& key) {
    RawValue v;
    std::string t = trim(text);
    if (t.empty()) throw std::runtime_error("config: key \"" + key + "\" has no value");
    if (t.front() == '[') {
        if (t.back() != ']')
            throw std::runtime_error("config: unterminated array for key \"" + key + "\"");
        v.is_array = true;
        t = t.substr(1, t.size() - 2);
        std::string item;
        bool quoted = false;
        for (char c : t) {
            if (c == '"') quoted = !quoted;
            if (c == ',' && !quoted) {
                v.items.push_back(trim(item));
                item.clear();
            } else {
                item += c;
            }
        }
        if (!trim(item).empty()) v.items.push_back(trim(item));
        return v;
    }
    v.items.push_back(t);
    return v;
}

std::string as_string(const std::string& item, const std::string& key) {
    if (item.size() >= 2 && item.front() == '"' && item.back() == '"')
        return item.substr(1, item.size() - 2);
    if (!item.empty() && item.front() == '"')
        throw std::runtime_error("config: unterminated string for key \"" + key + "\"");
    return item;
}

double as_double(const std::string& item, const std::string& key) {
    try {
        size_t pos = 0;
        const double x = std::stod(item, &pos);
        if (pos != item.size()) throw std::invalid_argument("");
        return x;
    } catch (const std::exception&) {
        throw std::runtime_error("config: key \"" + key + "\" expects a number, got \"" + item +
                                 "\"");
    }
}

int as_int(const std::string& item, const std::string& key) {
    const double x = as_double(item, key);
    const double r = std::round(x);
    if (std::abs(x - r) > 0.0 || std::abs(r) > 2e9)
        throw std::runtime_error("config: key \"" + key + "\" expects an integer, got \"" + item +
                                 "\"");
    return static_cast<int>(r);
}

bool as_bool(const std::string& item, const std::string& key) {
    if (item == "true") return true;
    if (item == "false") return false;
    throw std::runtime_error("config: key \"" + key + "\" expects true or false, got \"" + item +
                             "\"");
}

std::string single(const RawValue& v, const std::string& key) {
    if (v.is_array || v.items.size() != 1)
        throw std::runtime_error("config: key \"" + key + "\" expects a single value");
    return v.items[0];
}

std::string format_number(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig cfg;
    std::istringstream in(text);
    std::string line, section;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(strip_comment(line));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw std::runtime_error("config: malformed section header at line " +
                                         std::to_string(line_no));
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config: expected key = value at line " +
                                     std::to_string(line_no));
        const std::string key_local = trim(line.substr(0, eq));
        const std::string key = section.empty() ? key_local : section + "." + key_local;
        const RawValue val = split_value(line.substr(eq + 1), key);

        if (key == "s" || key == "potential.s") {
            cfg.s = as_double(single(val, key), key);
        } else if (key == "L" || key == "scan.L") {
            cfg.L.clear();
            for (const auto& it : val.items) cfg.L.push_back(as_double(it, key));
        } else if (key == "N" || key == "scan.N") {
            cfg.N.clear();
            for (const auto& it : val.items) cfg.N.push_back(as_int(it, key));
        } else if (key == "lambda" || key == "interaction.lambda") {
            cfg.lambda = as_double(single(val, key), key);
        } else if (key == "kernel.family") {
            cfg.kernel_family = as_string(single(val, key), key);
        } else if (key == "kernel.amplitude") {
            cfg.kernel_amplitude = as_double(single(val, key), key);
        } else if (key == "kernel.range") {
            cfg.kernel_range = as_double(single(val, key), key);
        } else if (key == "grid.n") {
            cfg.grid_n = as_int(single(val, key), key);
        } else if (key == "grid.x_max") {
            cfg.grid_x_max = as_double(single(val, key), key);
        } else if (key == "n_modes" || key == "spectrum.n_modes") {
            cfg.n_modes = as_int(single(val, key), key);
        } else if (key == "bogoliubov.M") {
            cfg.bog_M.clear();
            for (const auto& it : val.items) cfg.bog_M.push_back(as_int(it, key));
        } else if (key == "trial.sigma_rule") {
            cfg.sigma_rule = as_string(single(val, key), key);
        } else if (key == "trial.sigma_sq") {
            cfg.sigma_sq = as_double(single(val, key), key);
        } else if (key == "hartree.tol") {
            cfg.hartree_tol = as_double(single(val, key), key);
        } else if (key == "hartree.max_iter") {
            cfg.hartree_max_iter = as_int(single(val, key), key);
        } else if (key == "oracle.enabled") {
            cfg.oracle_enabled = as_bool(single(val, key), key);
        } else if (key == "oracle.modes") {
            cfg.oracle_modes = as_int(single(val, key), key);
        } else if (key == "output.csv") {
            cfg.out_csv = as_string(single(val, key), key);
        } else if (key == "output.svg") {
            cfg.out_svg = as_string(single(val, key), key);
        } else if (key == "workers" || key == "run.workers") {
            cfg.workers = as_int(single(val, key), key);
        } else if (key == "seed" || key == "run.seed") {
            const double x = as_double(single(val, key), key);
            if (x < 0 || x != std::floor(x))
                throw std::runtime_error("config: key \"" + key +
                                         "\" expects a nonnegative integer");
            cfg.seed = static_cast<std::uint64_t>(x);
        } else {
            throw std::runtime_error("config: unknown config key \"" + key + "\"");
        }
    }
    validate_config(cfg);
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open \"" + path + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

void validate_config(const ExperimentConfig& cfg) {
    if (!(cfg.s >= 2.0)) throw std::runtime_error("config: s must be >= 2");
    if (cfg.L.empty()) throw std::runtime_error("config: scan requires at least one L value");
    for (double l : cfg.L)
        if (!(l >= 0.0)) throw std::runtime_error("config: L must be >= 0");
    if (cfg.N.empty()) throw std::runtime_error("config: scan requires at least one N value");
    for (int n : cfg.N)
        if (n < 2) throw std::runtime_error("config: N must be >= 2");
    if (!(cfg.lambda >= 0.0)) throw std::runtime_error("config: lambda must be >= 0");
    if (!(cfg.kernel_amplitude > 0.0))
        throw std::runtime_error("config: kernel amplitude must be > 0");
    if (!(cfg.kernel_range > 0.0)) throw std::runtime_error("config: kernel range must be > 0");
    if (cfg.grid_n < 3 || cfg.grid_n % 2 == 0)
        throw std::runtime_error("config: grid n must be an odd integer >= 3");
    if (cfg.grid_x_max < 0.0) throw std::runtime_error("config: grid x_max must be >= 0");
    if (cfg.n_modes < 0 || cfg.n_modes % 2 != 0)
        throw std::runtime_error("config: n_modes must be an even integer (0 for automatic)");
    if (cfg.bog_M.empty())
        throw std::runtime_error("config: bogoliubov.M requires at least one value");
    for (int m : cfg.bog_M)
        if (m < 0) throw std::runtime_error("config: bogoliubov.M values must be >= 0");
    if (cfg.sigma_rule != "sqrt_gap_N" && cfg.sigma_rule != "sqrt_N" &&
        cfg.sigma_rule != "fixed")
        throw std::runtime_error("config: unknown sigma rule \"" + cfg.sigma_rule + "\"");
    if (cfg.sigma_rule == "fixed" && !(cfg.sigma_sq >= 1.0))
        throw std::runtime_error("config: sigma_sq must be >= 1 for the fixed rule");
    if (!(cfg.hartree_tol > 0.0)) throw std::runtime_error("config: hartree tol must be > 0");
    if (cfg.hartree_max_iter < 1)
        throw std::runtime_error("config: hartree max_iter must be >= 1");
    if (cfg.oracle_modes < 2) throw std::runtime_error("config: oracle modes must be >= 2");
    if (cfg.workers < 1) throw std::runtime_error("config: workers must be >= 1");
}

std::string serialize_config(const ExperimentConfig& cfg) {
    std::ostringstream out;
    out << "[potential]\n";
    out << "s = " << format_number(cfg.s) << "\n\n";
    out << "[scan]\n";
    out << "L = [";
    for (size_t i = 0; i < cfg.L.size(); ++i)
        out << (i ? ", " : "") << format_number(cfg.L[i]);
    out << "]\n";
    out << "N = [";
    for (size_t i = 0; i < cfg.N.size(); ++i) out << (i ? ", " : "") << cfg.N[i];
    out << "]\n\n";
    out << "[interaction]\n";
    out << "lambda = " << format_number(cfg.lambda) << "\n\n";
    out << "[kernel]\n";
    out << "family = \"" << cfg.kernel_family << "\"\n";
    out << "amplitude = " << format_number(cfg.kernel_amplitude) << "\n";
    out << "range = " << format_number(cfg.kernel_range) << "\n\n";
    out << "[grid]\n";
    out << "n = " << cfg.grid_n << "\n";
    out << "x_max = " << format_number(cfg.grid_x_max) << "\n\n";
    out << "[spectrum]\n";
    out << "n_modes = " << cfg.n_modes << "\n\n";
    out << "[bogoliubov]\n";
    out << "M = [";
    for (size_t i = 0; i < cfg.bog_M.size(); ++i) out << (i ? ", " : "") << cfg.bog_M[i];
    out << "]\n\n";
    out << "[trial]\n";
    out << "sigma_rule = \"" << cfg.sigma_rule << "\"\n";
    out << "sigma_sq = " << format_number(cfg.sigma_sq) << "\n\n";
    out << "[hartree]\n";
    out << "tol = " << format_number(cfg.hartree_tol) << "\n";
    out << "max_iter = " << cfg.hartree_max_iter << "\n\n";
    out << "[oracle]\n";
    out << "enabled = " << (cfg.oracle_enabled ? "true" : "false") << "\n";
    out << "modes = " << cfg.oracle_modes << "\n\n";
    out << "[output]\n";
    out << "csv = \"" << cfg.out_csv << "\"\n";
    out << "svg = \"" << cfg.out_svg << "\"\n\n";
    out << "[run]\n";
    out << "workers = " << cfg.workers << "\n";
    out << "seed = " << cfg.seed << "\n";
    return out.str();
}

}  // namespace dw
