#include "config.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <numbers>
#include <vector>

namespace catmew::cli {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;
constexpr double deg_to_rad = std::numbers::pi / 180.0;

struct Entry {
    std::string value;
    long line = 0;
    bool degrees = false;
};

using EntryMap = std::map<std::string, Entry, std::less<>>;

constexpr std::array known_keys = {
    "mode",          "kappa",           "mass_kg",
    "omega_m",       "omega_c",         "cavity_length_m",
    "output_path",   "theta_start",     "theta_end",
    "points",        "chi",             "chi_profile",
    "theta",         "grid_step",       "branch_hint",
    "n_max",         "oracle_dim",      "oracle_propagator",
    "steps_per_period", "tolerance",
};

constexpr std::array angle_keys = {"chi", "theta", "theta_start", "theta_end"};

constexpr std::array physical_keys = {"mass_kg", "omega_m", "omega_c",
                                      "cavity_length_m"};

bool contains(const auto& list, std::string_view key) {
    return std::find(list.begin(), list.end(), key) != list.end();
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

double parse_real(const std::string& value, std::string_view key, long line) {
    std::string_view body = value;
    if (!body.empty() && body.front() == '+') {
        body.remove_prefix(1);
    }
    double parsed = 0.0;
    const auto [end, ec] =
        std::from_chars(body.data(), body.data() + body.size(), parsed);
    if (ec != std::errc{} || end != body.data() + body.size()) {
        throw ParseError("key '" + std::string(key) +
                             "' needs a real number, got '" + value + "'",
                         line);
    }
    if (!std::isfinite(parsed)) {
        throw ParseError("key '" + std::string(key) + "' must be finite",
                         line);
    }
    return parsed;
}

long parse_integer(const std::string& value, std::string_view key, long line) {
    std::string_view body = value;
    if (!body.empty() && body.front() == '+') {
        body.remove_prefix(1);
    }
    long parsed = 0;
    const auto [end, ec] =
        std::from_chars(body.data(), body.data() + body.size(), parsed);
    if (ec != std::errc{} || end != body.data() + body.size()) {
        throw ParseError("key '" + std::string(key) +
                             "' needs an integer, got '" + value + "'",
                         line);
    }
    return parsed;
}

double angle_value(const Entry& e, std::string_view key) {
    const double raw = parse_real(e.value, key, e.line);
    return e.degrees ? raw * deg_to_rad : raw;
}

EntryMap lex(std::string_view text) {
    EntryMap entries;
    long line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(
            pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        if (const std::size_t hash = line.find('#');
            hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }

        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ParseError("expected key=value", line_no);
        }
        std::string key{trim(line.substr(0, eq))};
        const std::string value{trim(line.substr(eq + 1))};
        if (key.empty()) {
            throw ParseError("missing key before '='", line_no);
        }
        if (value.empty()) {
            throw ParseError("key '" + key + "' has an empty value", line_no);
        }
        if (key == "seed") {
            throw ParseError(
                "'seed' is not accepted: runs are fully deterministic",
                line_no);
        }

        bool degrees = false;
        if (key.size() > 4 && key.ends_with("_deg") &&
            contains(angle_keys, std::string_view(key).substr(0, key.size() - 4))) {
            key.resize(key.size() - 4);
            degrees = true;
        }
        if (!contains(known_keys, key)) {
            throw ParseError("unknown key '" + key + "'", line_no);
        }
        if (const auto it = entries.find(key); it != entries.end()) {
            throw ParseError("duplicate key '" + key + "' (first at line " +
                                 std::to_string(it->second.line) + ")",
                             line_no);
        }
        entries.emplace(std::move(key), Entry{value, line_no, degrees});
    }
    return entries;
}

RunMode parse_mode(const EntryMap& entries) {
    const auto it = entries.find("mode");
    if (it == entries.end()) {
        throw ParseError("key 'mode' is required", 0);
    }
    const std::string& value = it->second.value;
    if (value == "simulate") return RunMode::simulate;
    if (value == "scan-chi") return RunMode::scan_chi;
    if (value == "revival") return RunMode::revival;
    if (value == "estimate-kappa") return RunMode::estimate_kappa;
    if (value == "oracle-compare") return RunMode::oracle_compare;
    throw ParseError(
        "mode must be one of simulate, scan-chi, revival, estimate-kappa, "
        "oracle-compare; got '" +
            value + "'",
        it->second.line);
}

std::vector<std::string_view> allowed_keys(RunMode mode) {
    std::vector<std::string_view> keys = {
        "mode",    "kappa",   "mass_kg",        "omega_m",
        "omega_c", "cavity_length_m", "output_path",
    };
    switch (mode) {
    case RunMode::simulate:
        keys.insert(keys.end(),
                    {"theta_start", "theta_end", "points", "chi",
                     "chi_profile"});
        break;
    case RunMode::oracle_compare:
        keys.insert(keys.end(),
                    {"theta_start", "theta_end", "points", "chi", "oracle_dim",
                     "oracle_propagator", "steps_per_period", "tolerance"});
        break;
    case RunMode::scan_chi:
        keys.insert(keys.end(), {"theta", "grid_step"});
        break;
    case RunMode::estimate_kappa:
        keys.insert(keys.end(), {"theta", "grid_step", "branch_hint"});
        break;
    case RunMode::revival:
        keys.insert(keys.end(), {"n_max"});
        break;
    }
    return keys;
}

const Entry* find(const EntryMap& entries, std::string_view key) {
    const auto it = entries.find(key);
    return it == entries.end() ? nullptr : &it->second;
}

void resolve_kappa(const EntryMap& entries, RunConfig& cfg) {
    const Entry* kappa = find(entries, "kappa");
    std::vector<std::string_view> physical_present;
    for (std::string_view key : physical_keys) {
        if (find(entries, key) != nullptr) {
            physical_present.push_back(key);
        }
    }

    if (kappa != nullptr && !physical_present.empty()) {
        throw ParseError(
            "exactly one of kappa or the physical-parameter block (mass_kg, "
            "omega_m, omega_c, cavity_length_m) may be given",
            kappa->line);
    }
    if (kappa != nullptr) {
        cfg.kappa = parse_real(kappa->value, "kappa", kappa->line);
        if (cfg.kappa < 0.0) {
            throw ParseError("kappa must be >= 0", kappa->line);
        }
        return;
    }
    if (physical_present.empty()) {
        throw ParseError(
            "one of kappa or the physical-parameter block (mass_kg, omega_m, "
            "omega_c, cavity_length_m) is required",
            0);
    }
    for (std::string_view key : physical_keys) {
        if (find(entries, key) == nullptr) {
            throw ParseError("physical-parameter block is incomplete: key '" +
                                 std::string(key) + "' is missing",
                             0);
        }
    }

    PhysicalParams params{};
    const auto field = [&](std::string_view key) {
        const Entry* e = find(entries, key);
        const double value = parse_real(e->value, key, e->line);
        if (!(value > 0.0)) {
            throw ParseError("key '" + std::string(key) +
                                 "' must be positive",
                             e->line);
        }
        return value;
    };
    params.mass_kg = field("mass_kg");
    params.omega_m = field("omega_m");
    params.omega_c = field("omega_c");
    params.cavity_length_m = field("cavity_length_m");
    cfg.physical = params;
    cfg.kappa = coupling_constant(params);
}

void resolve_grid(const EntryMap& entries, RunConfig& cfg) {
    const Entry* start = find(entries, "theta_start");
    const Entry* end = find(entries, "theta_end");
    const Entry* points = find(entries, "points");
    if (start != nullptr) {
        cfg.theta_start = angle_value(*start, "theta_start");
    }
    if (end != nullptr) {
        cfg.theta_end = angle_value(*end, "theta_end");
    }
    if (points != nullptr) {
        cfg.points = parse_integer(points->value, "points", points->line);
        if (cfg.points < 1) {
            throw ParseError("points must be >= 1", points->line);
        }
    }
    if (start != nullptr && end != nullptr) {
        if (cfg.theta_end < cfg.theta_start) {
            throw ParseError("theta_end must be >= theta_start", end->line);
        }
        if (points != nullptr && cfg.points > 1 &&
            cfg.theta_end == cfg.theta_start) {
            throw ParseError(
                "theta_end must exceed theta_start when points > 1",
                end->line);
        }
    }
}

void resolve_chi(const EntryMap& entries, RunMode mode, RunConfig& cfg) {
    const Entry* chi = find(entries, "chi");
    const Entry* profile = find(entries, "chi_profile");
    if (chi != nullptr && profile != nullptr) {
        throw ParseError("give either chi or chi_profile, not both",
                         profile->line);
    }
    if (chi != nullptr) {
        cfg.chi_value = angle_value(*chi, "chi");
        cfg.chi = PhaseProfile::constant(cfg.chi_value);
        return;
    }
    if (profile != nullptr) {
        std::vector<ProfileNode> nodes;
        std::string_view body = profile->value;
        while (!body.empty()) {
            const std::size_t comma = body.find(',');
            const std::string_view pair =
                trim(body.substr(0, comma));
            body = comma == std::string_view::npos
                       ? std::string_view{}
                       : body.substr(comma + 1);
            const std::size_t colon = pair.find(':');
            if (colon == std::string_view::npos) {
                throw ParseError(
                    "chi_profile entries must look like theta:chi",
                    profile->line);
            }
            nodes.push_back(ProfileNode{
                parse_real(std::string(trim(pair.substr(0, colon))),
                           "chi_profile", profile->line),
                parse_real(std::string(trim(pair.substr(colon + 1))),
                           "chi_profile", profile->line)});
        }
        try {
            cfg.chi = PhaseProfile::sampled(std::move(nodes));
        } catch (const std::invalid_argument& e) {
            throw ParseError(std::string("chi_profile: ") + e.what(),
                             profile->line);
        }
        return;
    }
    (void)mode;
}

void resolve_oracle(const EntryMap& entries, RunConfig& cfg) {
    cfg.oracle = OracleConfig::for_kappa(cfg.kappa);
    if (const Entry* dim = find(entries, "oracle_dim")) {
        const long value = parse_integer(dim->value, "oracle_dim", dim->line);
        if (value < 2 || value > 100000) {
            throw ParseError("oracle_dim must lie in [2, 100000]", dim->line);
        }
        cfg.oracle.dim = static_cast<int>(value);
    }
    if (const Entry* prop = find(entries, "oracle_propagator")) {
        if (prop->value == "eigendecomposition") {
            cfg.oracle.propagator = Propagator::eigendecomposition;
        } else if (prop->value == "fixed-step-4th-order") {
            cfg.oracle.propagator = Propagator::fixed_step_fourth_order;
        } else {
            throw ParseError(
                "oracle_propagator must be eigendecomposition or "
                "fixed-step-4th-order; got '" +
                    prop->value + "'",
                prop->line);
        }
    }
    if (const Entry* steps = find(entries, "steps_per_period")) {
        const long value =
            parse_integer(steps->value, "steps_per_period", steps->line);
        if (value < 100 || value > 100000000) {
            throw ParseError("steps_per_period must lie in [100, 1e8]",
                             steps->line);
        }
        cfg.oracle.steps_per_period = static_cast<int>(value);
    }
    if (const Entry* tol = find(entries, "tolerance")) {
        cfg.tolerance = parse_real(tol->value, "tolerance", tol->line);
        if (!(cfg.tolerance > 0.0)) {
            throw ParseError("tolerance must be > 0", tol->line);
        }
    }
}

void resolve_scan(const EntryMap& entries, RunMode mode, RunConfig& cfg) {
    const Entry* theta = find(entries, "theta");
    if (theta != nullptr) {
        cfg.theta = angle_value(*theta, "theta");
    }
    if (const Entry* step = find(entries, "grid_step")) {
        cfg.grid_step = parse_real(step->value, "grid_step", step->line);
        if (!(cfg.grid_step > 0.0) || cfg.grid_step > 0.1) {
            throw ParseError("grid_step must lie in (0, 0.1]", step->line);
        }
    }
    if (const Entry* hint = find(entries, "branch_hint")) {
        const long value =
            parse_integer(hint->value, "branch_hint", hint->line);
        if (value < 0 || value > 1000000) {
            throw ParseError("branch_hint must lie in [0, 1e6]", hint->line);
        }
        cfg.branch_hint = static_cast<int>(value);
    }
    if (mode == RunMode::estimate_kappa && theta != nullptr) {
        const long n = std::lround(cfg.theta / two_pi);
        const bool revival =
            n >= 1 &&
            std::abs(cfg.theta - static_cast<double>(n) * two_pi) <= 1e-6;
        if (!revival) {
            throw ParseError(
                "theta must be within 1e-6 of a positive revival time 2*pi*n "
                "to estimate kappa",
                theta->line);
        }
    }
}

} // namespace

std::string_view mode_name(RunMode mode) {
    switch (mode) {
    case RunMode::simulate: return "simulate";
    case RunMode::scan_chi: return "scan-chi";
    case RunMode::revival: return "revival";
    case RunMode::estimate_kappa: return "estimate-kappa";
    case RunMode::oracle_compare: return "oracle-compare";
    }
    return "unknown";
}

RunConfig parse_config(std::string_view text) {
    const EntryMap entries = lex(text);

    RunConfig cfg;
    resolve_kappa(entries, cfg);

    cfg.mode = parse_mode(entries);
    const std::vector<std::string_view> allowed = allowed_keys(cfg.mode);
    for (const auto& [key, entry] : entries) {
        if (!contains(allowed, std::string_view(key))) {
            throw ParseError("key '" + key + "' is not used by mode '" +
                                 std::string(mode_name(cfg.mode)) + "'",
                             entry.line);
        }
    }

    resolve_grid(entries, cfg);

    switch (cfg.mode) {
    case RunMode::simulate:
        resolve_chi(entries, cfg.mode, cfg);
        break;
    case RunMode::oracle_compare:
        resolve_chi(entries, cfg.mode, cfg);
        resolve_oracle(entries, cfg);
        break;
    case RunMode::scan_chi:
    case RunMode::estimate_kappa:
        resolve_scan(entries, cfg.mode, cfg);
        break;
    case RunMode::revival:
        if (const Entry* n_max = find(entries, "n_max")) {
            const long value =
                parse_integer(n_max->value, "n_max", n_max->line);
            if (value < 1 || value > 1000) {
                throw ParseError("n_max must lie in [1, 1000]", n_max->line);
            }
            cfg.n_max = static_cast<int>(value);
        }
        break;
    }

    const auto require = [&](std::string_view key) {
        if (find(entries, key) == nullptr) {
            throw ParseError("mode '" + std::string(mode_name(cfg.mode)) +
                                 "' requires key '" + std::string(key) + "'",
                             0);
        }
    };
    switch (cfg.mode) {
    case RunMode::simulate:
    case RunMode::oracle_compare:
        require("theta_start");
        require("theta_end");
        require("points");
        break;
    case RunMode::scan_chi:
    case RunMode::estimate_kappa:
        require("theta");
        break;
    case RunMode::revival:
        break;
    }

    if (const Entry* output = find(entries, "output_path")) {
        cfg.output_path = output->value;
    }
    return cfg;
}

} // namespace catmew::cli
