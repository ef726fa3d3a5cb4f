#include "optomech/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

#include "optomech/error.hpp"
#include "optomech/output.hpp"

namespace optomech {

namespace {

constexpr std::array<std::string_view, 13> kNames = {"kappa", "gamma_m", "omega_m", "delta_s", "E",
                                                     "g0",    "F",       "F_im",    "omega_d", "n_m",
                                                     "delta", "Omega_M", "G0"};

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

double parse_number(std::string_view key, std::string_view text) {
    // from_chars does not accept a leading '+'
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw Error(ErrorCode::InvalidArgument, "cannot parse value '" + std::string(text) + "' for " + std::string(key));
    }
    return value;
}

}  // namespace

std::span<const std::string_view> parameter_names() { return kNames; }

bool is_parameter(std::string_view name) { return std::find(kNames.begin(), kNames.end(), name) != kNames.end(); }

void set_parameter(Scenario& s, std::string_view name, double value) {
    SystemParams& p = s.system;
    if (name == "kappa") p.kappa = value;
    else if (name == "gamma_m") p.gamma_m = value;
    else if (name == "omega_m") p.omega_m = value;
    else if (name == "delta_s") p.delta_s = value;
    else if (name == "E") p.E = value;
    else if (name == "g0") p.g0 = value;
    else if (name == "F") p.F.real(value);
    else if (name == "F_im") p.F.imag(value);
    else if (name == "omega_d") p.omega_d = value;
    else if (name == "n_m") p.n_m = value;
    else if (name == "delta") s.overrides.delta = value;
    else if (name == "Omega_M") s.overrides.Omega_M = value;
    else if (name == "G0") s.overrides.G0 = value;
    else throw Error(ErrorCode::UnknownParameter, "unknown parameter '" + std::string(name) + "'");
}

double get_parameter(const Scenario& s, std::string_view name) {
    const SystemParams& p = s.system;
    if (name == "kappa") return p.kappa;
    if (name == "gamma_m") return p.gamma_m;
    if (name == "omega_m") return p.omega_m;
    if (name == "delta_s") return p.delta_s;
    if (name == "E") return p.E;
    if (name == "g0") return p.g0;
    if (name == "F") return p.F.real();
    if (name == "F_im") return p.F.imag();
    if (name == "omega_d") return p.omega_d;
    if (name == "n_m") return p.n_m;
    if (name == "delta" || name == "Omega_M" || name == "G0") {
        const FrameOverrides& o = s.overrides;
        if (name == "delta" && o.delta) return *o.delta;
        if (name == "Omega_M" && o.Omega_M) return *o.Omega_M;
        if (name == "G0" && o.G0) return *o.G0;
        const SqueezedFrame frame = squeeze_frame(p);
        if (name == "delta") return frame.delta;
        if (name == "Omega_M") return frame.Omega_M;
        return frame.G0;
    }
    throw Error(ErrorCode::UnknownParameter, "unknown parameter '" + std::string(name) + "'");
}

void apply_setting(Scenario& s, std::string_view key, std::string_view value) {
    key = trim(key);
    value = trim(value);
    if (!is_parameter(key)) throw Error(ErrorCode::UnknownParameter, "unknown parameter '" + std::string(key) + "'");
    if (value == "auto") {
        if (key == "delta") s.overrides.delta.reset();
        else if (key == "Omega_M") s.overrides.Omega_M.reset();
        else if (key == "G0") s.overrides.G0.reset();
        else throw Error(ErrorCode::InvalidArgument, "'auto' only applies to delta, Omega_M and G0");
        return;
    }
    set_parameter(s, key, parse_number(key, value));
}

void apply_assignment(Scenario& s, std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos) {
        throw Error(ErrorCode::InvalidArgument, "expected key=value, got '" + std::string(assignment) + "'");
    }
    apply_setting(s, assignment.substr(0, eq), assignment.substr(eq + 1));
}

Scenario parse_config(std::string_view text, Scenario base) {
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.find('=') == std::string_view::npos) {
            throw Error(ErrorCode::InvalidArgument, "config line " + std::to_string(line_no) + ": expected key = value");
        }
        apply_assignment(base, line);
    }
    return base;
}

Scenario load_config(const std::filesystem::path& path, Scenario base) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open config file " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str(), std::move(base));
}

std::string format_config(const Scenario& s) {
    std::string out;
    for (std::string_view name : kNames) {
        out += name;
        out += " = ";
        const bool unset = (name == "delta" && !s.overrides.delta) || (name == "Omega_M" && !s.overrides.Omega_M) ||
                           (name == "G0" && !s.overrides.G0);
        out += unset ? std::string("auto") : format_double(get_parameter(s, name));
        out += '\n';
    }
    return out;
}

}  // namespace optomech
