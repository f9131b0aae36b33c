// mtlsim: energy.hpp
// Energy, latency and throughput accounting for a mapped network, and
// comparison against the CMOS-LUT baseline table.

#pragma once

#include "mtl/crossbar.hpp"
#include "mtl/device.hpp"
#include "mtl/netlist.hpp"
#include "mtl/tlg.hpp"

#include <span>
#include <string>
#include <vector>

namespace mtl {

// Per-gate energy split: current summation through the weight devices
// during the write phase, plus the readout divider burning p_div for a
// clock period.
struct GateEnergy {
    std::vector<double> per_gate_summation_j;  // averaged over vectors
    double avg_summation_j = 0.0;
    double divider_j = 0.0;  // p_div * t_clk, same for every gate
    double avg_total_j = 0.0;
};

GateEnergy gate_energy(const TlgNetwork& net, const DeviceParams& params,
                       std::span<const std::vector<std::uint8_t>> vectors);

struct EnergyReport {
    std::string benchmark;
    std::size_t source_gates = 0;  // netlist gates before synthesis
    std::size_t logic_gates = 0;
    std::size_t buffer_gates = 0;
    std::size_t stage_count = 0;
    std::size_t fanouts = 0;

    double per_gate_summation_j = 0.0;
    double per_gate_divider_j = 0.0;
    double per_gate_total_j = 0.0;

    double gate_energy_j = 0.0;          // all gates, one computation
    double interconnect_energy_j = 0.0;  // all fanouts, one cycle
    double total_energy_j = 0.0;
    double off_state_leakage_w = 0.0;    // informational, outside the total

    double latency_s = 0.0;            // stage_count * t_clk
    double throughput_period_s = 0.0;  // t_clk
    double edp_js = 0.0;               // total * throughput period
};

EnergyReport network_report(const Netlist& netlist, const TlgNetwork& net,
                            const Routing& routing, const DeviceParams& params,
                            std::span<const std::vector<std::uint8_t>> vectors);

struct BaselineEntry {
    std::string benchmark;
    int inputs = 0;
    int outputs = 0;
    double lut_delay_ns = 0.0;
    double mtl_delay_ns = 0.0;
    double lut_energy_fj = 0.0;
    double mtl_energy_fj = 0.0;
    double reported_energy_reduction_pct = 0.0;
    double reported_edp_reduction_pct = 0.0;
};

struct BaselineComparison {
    double energy_reduction_pct = 0.0;
    double edp_reduction_pct = 0.0;
};

// 100*(1 - E_mtl/E_lut) and 100*(1 - E_mtl*d_mtl / (E_lut*d_lut)).
BaselineComparison compare_baseline(double mtl_energy_fj, double mtl_delay_ns,
                                    const BaselineEntry& baseline);
// Same arithmetic on the table's own MTL columns.
BaselineComparison compare_baseline(const BaselineEntry& baseline);

std::vector<BaselineEntry> load_baseline(const std::string& path);
const BaselineEntry* find_baseline(std::span<const BaselineEntry> entries,
                                   const std::string& benchmark);

std::string energy_report_to_json(const EnergyReport& rep,
                                  const BaselineEntry* baseline = nullptr);
// Aligned plain-text table mirroring the baseline table's columns.
std::string energy_report_table(const EnergyReport& rep,
                                const BaselineEntry* baseline = nullptr);

}  // namespace mtl
