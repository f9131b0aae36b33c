// mtlsim: tlg.hpp
// Threshold-logic network: gates computing sign(sum(W_i * x_i) + b),
// organized into strict pipeline stages.

#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mtl {

enum class TlgRole : std::uint8_t { logic, buffer };

// Fanin reference: a primary input or another gate.
struct TlgRef {
    bool is_input = false;
    std::size_t index = 0;

    friend bool operator==(const TlgRef&, const TlgRef&) = default;
};

struct TlgGate {
    std::string id;
    std::vector<TlgRef> fanins;
    std::vector<int> weights;  // one per fanin
    int bias = 0;
    TlgRole role = TlgRole::logic;
    int stage = -1;  // assigned by pipeline()
};

// Staged threshold network. Stage k gates read only stage k-1 outputs;
// primary inputs count as stage -1 and feed stage 0 only. A zero-gate
// network (pure pass-through) has no stages and input-valued output refs.
struct TlgNetwork {
    std::string name;
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
    std::vector<TlgGate> gates;                     // topological (stage) order
    std::vector<TlgRef> output_refs;                // one per output
    std::vector<std::vector<std::size_t>> stages;   // gate indices per stage
    std::vector<std::vector<std::size_t>> fanouts;  // per gate: consumer gates
    bool mappable = true;  // fan-in <= 2 with the {+-2}/odd-bias alphabet

    std::size_t stage_count() const { return stages.size(); }
    std::size_t logic_count() const;
    std::size_t buffer_count() const;
    // Total (producer -> consumer-gate) edges, counting primary inputs.
    std::size_t fanout_edge_count() const;

    // Structural invariants: stage discipline, weight/bias alphabet when
    // mappable, outputs at the final stage. Throws std::logic_error.
    void validate() const;
};

// One threshold evaluation: 1 if sum(W_i*x_i) + b > 0 else 0. In mappable
// networks the sum is odd by construction; a zero sum signals corrupt
// weights and throws std::logic_error.
std::uint8_t tlg_eval(const TlgGate& gate, std::span<const std::uint8_t> inputs,
                      bool mappable = true);

// Stage-synchronous logical evaluation of a whole network (no device
// model); reference path for equivalence checking and energy statistics.
std::vector<std::uint8_t> tlg_eval_network(const TlgNetwork& net,
                                           std::span<const std::uint8_t> input_vector);

std::string tlg_to_json(const TlgNetwork& net);
TlgNetwork tlg_from_json(const std::string& text);
void tlg_save(const TlgNetwork& net, const std::string& path);
TlgNetwork tlg_load(const std::string& path);

}  // namespace mtl
