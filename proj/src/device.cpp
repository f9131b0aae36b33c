// mtlsim: device.cpp

#include "mtl/device.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace mtl {

void DeviceParams::validate() const {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0)) throw ConfigError(std::string(name) + " must be positive");
    };
    positive(delta_v, "delta_v");
    positive(r_p, "r_p");
    positive(i_c, "i_c");
    positive(t_sw, "t_sw");
    positive(t_clk, "t_clk");
    positive(vdd, "vdd");
    positive(r_wire, "r_wire");
    positive(r_on, "r_on");
    positive(r_off, "r_off");
    positive(max_wire_len, "max_wire_len");
    if (p_div < 0.0) throw ConfigError("p_div must be non-negative");
    if (c_wire < 0.0) throw ConfigError("c_wire must be non-negative");
    if (pitch < 0.0) throw ConfigError("pitch must be non-negative");
    if (!(tmr > 0.0)) throw ConfigError("tmr must be positive");
    if (!(r_on < r_off)) throw ConfigError("r_on must be below r_off");
    if (rho < 0.0 || rho > 1.0) throw ConfigError("rho must lie in [0, 1]");
    if (activity < 0.0 || activity > 1.0) throw ConfigError("activity must lie in [0, 1]");
    if (sigma_r < 0.0) throw ConfigError("sigma_r must be non-negative");
}

double parse_si_value(const std::string& token) {
    std::size_t pos = 0;
    double base;
    try {
        base = std::stod(token, &pos);
    } catch (const std::exception&) {
        throw ConfigError("not a number: '" + token + "'");
    }
    std::string suffix = token.substr(pos);
    while (!suffix.empty() && std::isspace(static_cast<unsigned char>(suffix.front())))
        suffix.erase(suffix.begin());
    if (suffix.empty()) return base;

    auto is_unit = [](const std::string& s) {
        static const char* units[] = {"V", "A", "s", "S", "F", "W", "J", "Hz",
                                      "Ohm", "ohm", "m"};
        for (const char* u : units)
            if (s == u) return true;
        return false;
    };

    double mult = 1.0;
    std::string rest = suffix;
    if (!is_unit(suffix)) {  // lone unit letter ("m" = meter), else multiplier first
        switch (suffix.front()) {
            case 'a': mult = 1e-18; break;
            case 'f': mult = 1e-15; break;
            case 'p': mult = 1e-12; break;
            case 'n': mult = 1e-9; break;
            case 'u': mult = 1e-6; break;
            case 'm': mult = 1e-3; break;
            case 'k': mult = 1e3; break;
            case 'M': mult = 1e6; break;
            case 'G': mult = 1e9; break;
            default:
                throw ConfigError("unknown unit suffix '" + suffix + "'");
        }
        rest = suffix.substr(1);
        if (rest.rfind("\xc2\xb5", 0) == 0) rest = rest.substr(2);  // tolerate µ spelled out
    }
    if (!rest.empty() && !is_unit(rest))
        throw ConfigError("unknown unit suffix '" + suffix + "'");
    return base * mult;
}

DeviceParams parse_device_config(const std::string& text) {
    DeviceParams p;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (auto pos = line.find('#'); pos != std::string::npos) line.resize(pos);
        auto strip = [](std::string s) {
            std::size_t a = s.find_first_not_of(" \t\r");
            if (a == std::string::npos) return std::string();
            std::size_t b = s.find_last_not_of(" \t\r");
            return s.substr(a, b - a + 1);
        };
        line = strip(line);
        if (line.empty()) continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected 'name = value'");
        std::string key = strip(line.substr(0, eq));
        std::string value = strip(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": expected 'name = value'");

        double v;
        try {
            v = parse_si_value(value);
        } catch (const ConfigError& e) {
            throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
        }

        if (key == "delta_v") p.delta_v = v;
        else if (key == "r_p") p.r_p = v;
        else if (key == "tmr") p.tmr = v;
        else if (key == "i_c") p.i_c = v;
        else if (key == "t_sw") p.t_sw = v;
        else if (key == "t_clk") p.t_clk = v;
        else if (key == "vdd") p.vdd = v;
        else if (key == "p_div") p.p_div = v;
        else if (key == "c_wire") p.c_wire = v;
        else if (key == "r_wire") p.r_wire = v;
        else if (key == "r_on") p.r_on = v;
        else if (key == "r_off") p.r_off = v;
        else if (key == "max_wire_len") p.max_wire_len = v;
        else if (key == "pitch") p.pitch = v;
        else if (key == "sigma_r") p.sigma_r = v;
        else if (key == "rho") p.rho = v;
        else if (key == "activity") p.activity = v;
        else
            throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    p.validate();
    return p;
}

DeviceParams load_device_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_device_config(ss.str());
}

ConductancePair weight_to_conductance(int w, const DeviceParams& params) {
    const double gp = params.g_p();
    const double gap = params.g_ap();
    const double u = params.unit_g();
    if (w == 2) return {gp, gap, PairKind::one_bit_pair};
    if (w == -2) return {gap, gp, PairKind::one_bit_pair};
    // 4-level ladder of the 2-bit bias device: Gap + k*u, k = 0..3.
    auto ladder = [&](int k) { return gap + k * u; };
    switch (w) {
        case +3: return {ladder(3), ladder(0), PairKind::two_bit_bias};
        case +1: return {ladder(2), ladder(1), PairKind::two_bit_bias};
        case -1: return {ladder(1), ladder(2), PairKind::two_bit_bias};
        case -3: return {ladder(0), ladder(3), PairKind::two_bit_bias};
        default:
            throw std::invalid_argument("weight " + std::to_string(w) +
                                        " outside the device alphabet {+-2} / {+-1,+-3}");
    }
}

double sum_current(std::span<const ConductancePair> input_pairs,
                   std::span<const std::uint8_t> activations,
                   const ConductancePair& bias_pair, const DeviceParams& params) {
    if (input_pairs.size() != activations.size())
        throw std::invalid_argument("sum_current: one activation bit per input pair");
    double g = bias_pair.difference();
    for (std::size_t i = 0; i < input_pairs.size(); ++i)
        if (activations[i]) g += input_pairs[i].difference();
    return params.delta_v * g;
}

DwsResult dws_apply(DwsState state, double i_sum, const DeviceParams& params) {
    DwsResult r;
    if (std::abs(i_sum) >= params.i_c && i_sum != 0.0) {
        const int pol = i_sum > 0.0 ? 1 : -1;
        r.switched = pol != state.polarity;
        state.polarity = pol;
    } else {
        r.under_threshold = true;
    }
    r.state = state;
    return r;
}

double read_divider(DwsState state, const DeviceParams& params) {
    const double r_dws = state.read_resistance(params);
    const double r_ref = 2.0 * params.r_p;
    return params.vdd * r_dws / (r_dws + r_ref);
}

double NormalSampler::uniform() {
    // splitmix64 step
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    z ^= z >> 31;
    const double u = static_cast<double>(z >> 11) * 0x1.0p-53;
    return u > 0.0 ? u : 0x1.0p-53;
}

double NormalSampler::next() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
}

VariationSample mc_sample(std::span<const std::size_t> devices_per_gate,
                          const DeviceParams& params, std::uint64_t seed) {
    if (params.sigma_r < 0.0) throw ConfigError("sigma_r must be non-negative");
    VariationSample sample;
    sample.gate_factors.reserve(devices_per_gate.size());
    NormalSampler rng(seed);
    const double s_gate = std::sqrt(params.rho);
    const double s_dev = std::sqrt(1.0 - params.rho);
    for (std::size_t n : devices_per_gate) {
        std::vector<double> factors(n, 1.0);
        if (params.sigma_r > 0.0) {
            const double z_gate = rng.next();
            for (double& f : factors) {
                double z = s_gate * z_gate + s_dev * rng.next();
                z = std::clamp(z, -4.0, 4.0);
                // resistance scale; floored so large sigma cannot drive
                // a resistance to zero or below
                f = std::max(1.0 + params.sigma_r * z, 0.05);
            }
        }
        sample.gate_factors.push_back(std::move(factors));
    }
    return sample;
}

}  // namespace mtl
