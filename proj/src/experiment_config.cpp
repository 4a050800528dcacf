// Copyright 2026 The kicktomo Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "kicktomo/experiments.hpp"

namespace kicktomo {

namespace {

constexpr std::pair<ExperimentKind, std::string_view> kKinds[] = {
    {ExperimentKind::fidelity_sweep, "fidelity_sweep"}, {ExperimentKind::loschmidt, "loschmidt"},
    {ExperimentKind::rel_entropy, "rel_entropy"},       {ExperimentKind::otoc, "otoc"},
    {ExperimentKind::bloch_perturb, "bloch_perturb"},   {ExperimentKind::perturb_sweep, "perturb_sweep"},
};

std::string_view trim(std::string_view s) {
    const auto is_space = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
    while (!s.empty() && is_space(s.front()))
        s.remove_prefix(1);
    while (!s.empty() && is_space(s.back()))
        s.remove_suffix(1);
    return s;
}

double parse_double(std::string_view key, std::string_view text) {
    text = trim(text);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
        throw ConfigError(std::string(key), "expected a number, got '" + std::string(text) + "'");
    return v;
}

long long parse_integer(std::string_view key, std::string_view text) {
    text = trim(text);
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
        throw ConfigError(std::string(key), "expected an integer, got '" + std::string(text) + "'");
    return v;
}

std::uint64_t parse_unsigned(std::string_view key, std::string_view text) {
    text = trim(text);
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
        throw ConfigError(std::string(key), "expected a non-negative integer, got '" + std::string(text) + "'");
    return v;
}

bool parse_bool(std::string_view key, std::string_view text) {
    std::string t(trim(text));
    std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
    if (t == "true" || t == "1" || t == "yes" || t == "on")
        return true;
    if (t == "false" || t == "0" || t == "no" || t == "off")
        return false;
    throw ConfigError(std::string(key), "expected a boolean, got '" + t + "'");
}

std::vector<double> parse_list(std::string_view key, std::string_view text) {
    text = trim(text);
    if (!text.empty() && text.front() == '[') {
        if (text.back() != ']')
            throw ConfigError(std::string(key), "unterminated list");
        text = text.substr(1, text.size() - 2);
    }
    std::vector<double> out;
    std::string token;
    const auto flush = [&] {
        if (!token.empty()) {
            out.push_back(parse_double(key, token));
            token.clear();
        }
    };
    for (char c : text) {
        if (c == ',' || std::isspace(static_cast<unsigned char>(c)))
            flush();
        else
            token.push_back(c);
    }
    flush();
    return out;
}

int to_int(std::string_view key, long long v) {
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
        throw ConfigError(std::string(key), "value out of range");
    return static_cast<int>(v);
}

std::string join(const std::vector<double> &v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            out += ", ";
        out += format_exact(v[i]);
    }
    return out + "]";
}

void require_finite_list(std::string_view key, const std::vector<double> &v) {
    if (v.empty())
        throw ConfigError(std::string(key), "list must not be empty");
    for (double x : v)
        if (!std::isfinite(x))
            throw ConfigError(std::string(key), "values must be finite");
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace

std::string_view experiment_name(ExperimentKind k) {
    for (const auto &[kind, name] : kKinds)
        if (kind == k)
            return name;
    return "unknown";
}

ExperimentKind parse_experiment_kind(std::string_view name) {
    name = trim(name);
    for (const auto &[kind, n] : kKinds)
        if (n == name)
            return kind;
    throw ConfigError("experiment", "unknown experiment '" + std::string(name) + "'");
}

const std::vector<std::string> &config_keys() {
    static const std::vector<std::string> keys = {
        "experiment", "j",         "alpha",    "lambda_list",       "delta_lambda",
        "delta_lambda_list",       "n_steps",  "n_states",          "noise_sigma",
        "eta_list",   "seed",      "output_dir", "rcond",           "psd_tol",
        "kl_floor",   "shared_observable",     "swap_dynamics"};
    return keys;
}

void apply_config_value(ExperimentConfig &cfg, std::string_view key, std::string_view value) {
    key = trim(key);
    if (key == "experiment")
        cfg.experiment = parse_experiment_kind(value);
    else if (key == "j")
        cfg.j = parse_double(key, value);
    else if (key == "alpha")
        cfg.alpha = parse_double(key, value);
    else if (key == "lambda_list")
        cfg.lambda_list = parse_list(key, value);
    else if (key == "delta_lambda")
        cfg.delta_lambda = parse_double(key, value);
    else if (key == "delta_lambda_list")
        cfg.delta_lambda_list = parse_list(key, value);
    else if (key == "n_steps")
        cfg.n_steps = to_int(key, parse_integer(key, value));
    else if (key == "n_states")
        cfg.n_states = to_int(key, parse_integer(key, value));
    else if (key == "noise_sigma")
        cfg.noise_sigma = parse_double(key, value);
    else if (key == "eta_list")
        cfg.eta_list = parse_list(key, value);
    else if (key == "seed")
        cfg.seed = parse_unsigned(key, value);
    else if (key == "output_dir")
        cfg.output_dir = std::string(trim(value));
    else if (key == "rcond")
        cfg.rcond = parse_double(key, value);
    else if (key == "psd_tol")
        cfg.psd_tol = parse_double(key, value);
    else if (key == "kl_floor")
        cfg.kl_floor = parse_double(key, value);
    else if (key == "shared_observable")
        cfg.shared_observable = parse_bool(key, value);
    else if (key == "swap_dynamics")
        cfg.swap_dynamics = parse_bool(key, value);
    else
        throw ConfigError(std::string(key), "unknown config key");
}

ExperimentConfig parse_config_text(std::string_view text) {
    ExperimentConfig cfg;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("", "line " + std::to_string(line_no) + ": expected 'key = value'");
        apply_config_value(cfg, line.substr(0, eq), line.substr(eq + 1));
    }
    return cfg;
}

ExperimentConfig parse_config_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("config", "cannot open " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

void validate_config(const ExperimentConfig &cfg) {
    if (!std::isfinite(cfg.j) || cfg.j <= 0.0)
        throw ConfigError("j", "must be positive");
    if (std::abs(2.0 * cfg.j - std::round(2.0 * cfg.j)) > 1e-12)
        throw ConfigError("j", "2j must be an integer, got j = " + format_shortest(cfg.j));
    if (!std::isfinite(cfg.alpha))
        throw ConfigError("alpha", "must be finite");
    require_finite_list("lambda_list", cfg.lambda_list);
    if (!std::isfinite(cfg.delta_lambda))
        throw ConfigError("delta_lambda", "must be finite");
    if (cfg.experiment == ExperimentKind::perturb_sweep)
        require_finite_list("delta_lambda_list", cfg.delta_lambda_list);
    if (cfg.n_steps < 1)
        throw ConfigError("n_steps", "must be >= 1");
    if (cfg.n_states < 1)
        throw ConfigError("n_states", "must be >= 1");
    const double sigma = cfg.resolved_noise_sigma();
    if (!std::isfinite(sigma) || sigma < 0.0)
        throw ConfigError("noise_sigma", "must be finite and >= 0");
    if (cfg.experiment == ExperimentKind::bloch_perturb) {
        require_finite_list("eta_list", cfg.eta_list);
        for (double eta : cfg.eta_list)
            if (eta < 0.0 || eta > 1.0)
                throw ConfigError("eta_list", "values must lie in [0, 1]");
    }
    if (!(cfg.rcond > 0.0) || !std::isfinite(cfg.rcond))
        throw ConfigError("rcond", "must be positive");
    if (!(cfg.psd_tol > 0.0) || !std::isfinite(cfg.psd_tol))
        throw ConfigError("psd_tol", "must be positive");
    if (!(cfg.kl_floor > 0.0 && cfg.kl_floor < 1.0))
        throw ConfigError("kl_floor", "must lie in (0, 1)");
    if (cfg.output_dir.empty())
        throw ConfigError("output_dir", "must not be empty");
}

std::string canonical_config_text(const ExperimentConfig &cfg) {
    std::ostringstream os;
    os << "experiment = " << experiment_name(cfg.experiment) << '\n'
       << "j = " << format_exact(cfg.j) << '\n'
       << "alpha = " << format_exact(cfg.alpha) << '\n'
       << "lambda_list = " << join(cfg.lambda_list) << '\n'
       << "delta_lambda = " << format_exact(cfg.delta_lambda) << '\n'
       << "delta_lambda_list = " << join(cfg.delta_lambda_list) << '\n'
       << "n_steps = " << cfg.n_steps << '\n'
       << "n_states = " << cfg.n_states << '\n'
       << "noise_sigma = " << format_exact(cfg.resolved_noise_sigma()) << '\n'
       << "eta_list = " << join(cfg.eta_list) << '\n'
       << "seed = " << cfg.seed << '\n'
       << "rcond = " << format_exact(cfg.rcond) << '\n'
       << "psd_tol = " << format_exact(cfg.psd_tol) << '\n'
       << "kl_floor = " << format_exact(cfg.kl_floor) << '\n'
       << "shared_observable = " << (cfg.shared_observable ? "true" : "false") << '\n'
       << "swap_dynamics = " << (cfg.swap_dynamics ? "true" : "false") << '\n';
    return os.str();
}

std::string config_hash(const ExperimentConfig &cfg) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a(canonical_config_text(cfg))));
    return buf;
}

Seed derive_seed(Seed master, std::string_view stream, std::uint64_t index) {
    return splitmix64(splitmix64(master) ^ splitmix64(fnv1a(stream) + splitmix64(index)));
}

std::string format_shortest(double v) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ec == std::errc() ? ptr : buf);
}

std::string format_exact(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace kicktomo
