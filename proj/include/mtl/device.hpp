// mtlsim: device.hpp
// Electrical model of one MTL gate: MTJ conductance pairs for the signed
// weights, current-mode summation into the thresholding domain-wall
// switch, and the MTJ voltage-divider readout.

#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mtl {

class ConfigError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DeviceParams {
    double delta_v = 50e-3;   // input signaling level [V]
    double r_p = 12e3;        // parallel MTJ resistance of weight devices [ohm]
    double tmr = 3.0;         // (Rap - Rp) / Rp
    double i_c = 1.4e-6;      // DWS switching threshold current [A]
    double t_sw = 1e-9;       // DWS switching time at threshold [s]
    double t_clk = 2e-9;      // pipeline clock period [s]
    double vdd = 1.0;         // readout supply [V]
    double p_div = 0.3e-6;    // average divider power during read [W]
    double c_wire = 10e-15;   // capacitance of a max-length net [F]
    double r_wire = 100.0;    // resistance of a max-length net [ohm]
    double r_on = 200.0;      // programmed crosspoint resistance [ohm]
    double r_off = 1e6;       // off-state crosspoint resistance [ohm]
    double max_wire_len = 50e-6;  // interconnect length cap [m]
    double pitch = 0.0;       // crossbar pitch [m]; 0 = derive per boundary
    double sigma_r = 0.0;     // relative MTJ resistance variation (std/mean)
    double rho = 0.9;         // same-gate conductance variation correlation
    double activity = 0.8;    // per-net transition probability per cycle

    double g_p() const { return 1.0 / r_p; }
    double g_ap() const { return 1.0 / (r_p * (1.0 + tmr)); }
    // Unit conductance: one integer weight step equals 2 units, one bias
    // step equals 1 unit.
    double unit_g() const { return 0.5 * (g_p() - g_ap()); }
    double r_ap() const { return r_p * (1.0 + tmr); }

    void validate() const;  // throws ConfigError
};

// Flat `name = value` config with SI suffixes (50mV, 12k, 1MOhm, 10fF,
// 2ns, 50um). Absent keys keep their defaults; unknown keys are rejected.
DeviceParams parse_device_config(const std::string& text);
DeviceParams load_device_config(const std::string& path);

// Parses "50mV" -> 0.05 etc. Exposed for the config reader and tests.
double parse_si_value(const std::string& token);

enum class PairKind : std::uint8_t { one_bit_pair, two_bit_bias };

// (G+, G-) conductance pair realizing one signed weight. Input weights
// use two 1-bit devices; biases use two 4-level (2-bit) devices.
struct ConductancePair {
    double g_plus = 0.0;
    double g_minus = 0.0;
    PairKind kind = PairKind::one_bit_pair;

    double difference() const { return g_plus - g_minus; }
    double sum() const { return g_plus + g_minus; }
};

// w in {+2,-2} maps to a 1-bit pair; w in {-3,-1,+1,+3} maps to a
// 2-bit bias pair from the 4-level ladder {Gap + k*unit_g : k = 0..3}.
// The pair difference is always w * unit_g.
ConductancePair weight_to_conductance(int w, const DeviceParams& params);

// Net current into the gate input node:
//   I = dV * (sum_i in_i*(Gi+ - Gi-) + (Gb+ - Gb-))
double sum_current(std::span<const ConductancePair> input_pairs,
                   std::span<const std::uint8_t> activations,
                   const ConductancePair& bias_pair, const DeviceParams& params);

// Thresholding domain-wall switch. Polarity +1 reads as the anti-parallel
// (high) MTJ state and decodes as logic 1 after the divider.
struct DwsState {
    int polarity = -1;

    double read_resistance(const DeviceParams& p) const {
        return polarity > 0 ? p.r_ap() : p.r_p;
    }
    std::uint8_t logic_value() const { return polarity > 0 ? 1 : 0; }
};

struct DwsResult {
    DwsState state;
    bool switched = false;
    bool under_threshold = false;
};

// |i| >= i_c writes polarity sign(i); below threshold the non-volatile
// state is retained and the event is flagged for the caller's log.
DwsResult dws_apply(DwsState state, double i_sum, const DeviceParams& params);

// Readout divider against a fixed reference of 2*Rp: levels vdd/3 and
// 2*vdd/3 at TMR = 300%, a swing of exactly vdd/3.
double read_divider(DwsState state, const DeviceParams& params);

// Per-gate, per-device multiplicative resistance factors: normal with
// mean 1 and std sigma_r (clamped at 4 sigma), sharing a common per-gate
// component so same-gate devices correlate with coefficient rho.
struct VariationSample {
    std::vector<std::vector<double>> gate_factors;
};

VariationSample mc_sample(std::span<const std::size_t> devices_per_gate,
                          const DeviceParams& params, std::uint64_t seed);

// Deterministic standard-normal generator (Box-Muller over splitmix64),
// independent of the standard library's distribution implementation.
class NormalSampler {
public:
    explicit NormalSampler(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}
    double next();

private:
    double uniform();  // in (0, 1)
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace mtl
