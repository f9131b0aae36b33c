// mtlsim: sim.hpp
// Cycle-accurate pipelined simulation of a threshold network on the
// device model, equivalence checking against the netlist evaluator, and
// Monte Carlo variation analysis.

#pragma once

#include "mtl/device.hpp"
#include "mtl/netlist.hpp"
#include "mtl/tlg.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace mtl {

struct UnderThresholdEvent {
    std::size_t gate = 0;
    std::size_t cycle = 0;
    double magnitude = 0.0;  // |I_sum| that failed to switch
};

struct SimState {
    std::vector<DwsState> dws;          // per gate
    std::vector<std::uint8_t> latch;    // per gate latched output bit
    std::size_t cycle = 0;
    std::size_t under_threshold_count = 0;
    std::vector<UnderThresholdEvent> events;  // first kMaxLoggedEvents only
    std::vector<double> min_abs_current;      // per gate, over all cycles

    static constexpr std::size_t kMaxLoggedEvents = 1024;
};

struct SimResult {
    std::vector<std::vector<std::uint8_t>> outputs;  // one per input vector
    SimState state;
};

// Per-gate electrical realization; device order within a gate is
// [in0+, in0-, in1+, in1-, ..., bias+, bias-] for variation factors.
struct GateCircuit {
    std::vector<ConductancePair> inputs;
    ConductancePair bias;
};

std::vector<std::size_t> devices_per_gate(const TlgNetwork& net);

std::vector<GateCircuit> build_circuits(const TlgNetwork& net, const DeviceParams& params,
                                        const VariationSample* variation = nullptr);

// Pipelined run: the vector applied at cycle t produces its output at
// cycle t + S (S = stage count); an n-vector stream completes in n + S
// cycles. Each cycle every stage evaluates its summation from the
// previous cycle's latches, applies the thresholding switch, and latches
// the divider readout compared against vdd/2. Under-threshold summations
// retain the previous non-volatile state.
SimResult simulate(const TlgNetwork& net,
                   std::span<const std::vector<std::uint8_t>> stream,
                   const DeviceParams& params,
                   const VariationSample* variation = nullptr);

struct EquivalenceReport {
    std::size_t vectors_tested = 0;
    std::size_t mismatches = 0;
    std::vector<std::size_t> mismatched_vectors;  // capped
    SimState sim_state;

    bool ok() const { return mismatches == 0; }
};

// Runs `vectors` through the analog simulator and compares every output
// against the reference netlist evaluator.
EquivalenceReport check_vectors(const Netlist& netlist, const TlgNetwork& net,
                                std::span<const std::vector<std::uint8_t>> vectors,
                                const DeviceParams& params,
                                const VariationSample* variation = nullptr);

// All 2^k input vectors; rejected for k > 24.
EquivalenceReport equivalence_exhaustive(const Netlist& netlist, const TlgNetwork& net,
                                         const DeviceParams& params);

// n seeded uniform vectors.
EquivalenceReport equivalence_random(const Netlist& netlist, const TlgNetwork& net,
                                     const DeviceParams& params, std::size_t n,
                                     std::uint64_t seed);

std::vector<std::vector<std::uint8_t>> random_vectors(std::size_t width, std::size_t n,
                                                      std::uint64_t seed);
std::vector<std::vector<std::uint8_t>> exhaustive_vectors(std::size_t width);

struct MarginReport {
    std::size_t trials = 0;
    std::size_t failed_trials = 0;       // trials with at least one mismatch
    std::size_t mismatch_count = 0;      // total mismatched vectors
    std::size_t under_threshold_events = 0;
    double yield = 1.0;                  // fraction of clean trials
    double min_margin_ratio = std::numeric_limits<double>::infinity();  // min|I|/i_c
    std::vector<double> per_gate_min_abs_current;
};

// Per trial: draws a fresh variation sample and a fresh vector set from
// seed + trial index, reruns the equivalence check, and accumulates
// margins and failures. Deterministic for a fixed seed and independent
// of `jobs`.
MarginReport monte_carlo(const Netlist& netlist, const TlgNetwork& net,
                         const DeviceParams& params, std::size_t trials,
                         std::size_t vectors_per_trial, std::uint64_t seed,
                         unsigned jobs = 1);

// Static margin study, enumerating each gate's local input combinations.
struct MarginProfile {
    double min_abs_current = 0.0;    // over all gates and input combos
    double max_input_current = 0.0;  // input-only summation, bias excluded
    std::vector<double> per_gate_min;

    // The comparator resolution the alphabet demands: 1/4 for 2-input
    // MTL gates at nominal parameters.
    double resolution() const { return min_abs_current / max_input_current; }
};

MarginProfile margin_profile(const TlgNetwork& net, const DeviceParams& params);

}  // namespace mtl
