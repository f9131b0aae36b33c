// mtlsim: energy.cpp

#include "mtl/energy.hpp"

#include "mtl/sim.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace mtl {

using nlohmann::json;

GateEnergy gate_energy(const TlgNetwork& net, const DeviceParams& params,
                       std::span<const std::vector<std::uint8_t>> vectors) {
    if (vectors.empty()) throw std::invalid_argument("gate_energy needs at least one vector");
    const auto circuits = build_circuits(net, params);

    GateEnergy ge;
    ge.per_gate_summation_j.assign(net.gates.size(), 0.0);
    ge.divider_j = params.p_div * params.t_clk;

    // Stage-synchronous logical evaluation; every active input branch
    // dissipates dV^2*(G+ + G-) for the switching window, the bias pair
    // always conducts.
    std::vector<std::uint8_t> value(net.gates.size(), 0);
    std::vector<std::uint8_t> bits;
    for (const auto& v : vectors) {
        if (v.size() != net.inputs.size())
            throw std::invalid_argument("input vector width mismatch");
        for (const auto& stage : net.stages) {
            for (std::size_t gi : stage) {
                const TlgGate& g = net.gates[gi];
                bits.clear();
                for (const TlgRef& r : g.fanins)
                    bits.push_back(r.is_input ? v[r.index] : value[r.index]);
                double cond = circuits[gi].bias.sum();
                for (std::size_t i = 0; i < bits.size(); ++i)
                    if (bits[i]) cond += circuits[gi].inputs[i].sum();
                ge.per_gate_summation_j[gi] +=
                    params.delta_v * params.delta_v * cond * params.t_sw;
                value[gi] = tlg_eval(g, bits, net.mappable);
            }
        }
    }

    const double inv_n = 1.0 / static_cast<double>(vectors.size());
    for (double& e : ge.per_gate_summation_j) e *= inv_n;
    if (!net.gates.empty()) {
        double total = 0.0;
        for (double e : ge.per_gate_summation_j) total += e;
        ge.avg_summation_j = total / static_cast<double>(net.gates.size());
    }
    ge.avg_total_j = ge.avg_summation_j + ge.divider_j;
    return ge;
}

EnergyReport network_report(const Netlist& netlist, const TlgNetwork& net,
                            const Routing& routing, const DeviceParams& params,
                            std::span<const std::vector<std::uint8_t>> vectors) {
    EnergyReport rep;
    rep.benchmark = net.name.empty() ? netlist.name : net.name;
    rep.source_gates = netlist.gates.size();
    rep.logic_gates = net.logic_count();
    rep.buffer_gates = net.buffer_count();
    rep.stage_count = net.stage_count();
    rep.fanouts = net.fanout_edge_count();

    const GateEnergy ge = gate_energy(net, params, vectors);
    rep.per_gate_summation_j = ge.avg_summation_j;
    rep.per_gate_divider_j = ge.divider_j;
    rep.per_gate_total_j = ge.avg_total_j;

    rep.gate_energy_j = ge.avg_total_j * static_cast<double>(net.gates.size());
    rep.interconnect_energy_j = interconnect_energy(routing.nets, params, 1);
    rep.total_energy_j = rep.gate_energy_j + rep.interconnect_energy_j;
    rep.off_state_leakage_w = off_state_leakage_power(routing.plan, params);

    rep.latency_s = static_cast<double>(net.stage_count()) * params.t_clk;
    rep.throughput_period_s = params.t_clk;
    rep.edp_js = rep.total_energy_j * rep.throughput_period_s;
    return rep;
}

BaselineComparison compare_baseline(double mtl_energy_fj, double mtl_delay_ns,
                                    const BaselineEntry& baseline) {
    if (baseline.lut_energy_fj <= 0.0 || baseline.lut_delay_ns <= 0.0)
        throw std::invalid_argument("baseline energy and delay must be positive");
    if (mtl_energy_fj <= 0.0 || mtl_delay_ns <= 0.0)
        throw std::invalid_argument("design energy and delay must be positive");
    BaselineComparison c;
    c.energy_reduction_pct = 100.0 * (1.0 - mtl_energy_fj / baseline.lut_energy_fj);
    c.edp_reduction_pct = 100.0 * (1.0 - (mtl_energy_fj * mtl_delay_ns) /
                                             (baseline.lut_energy_fj * baseline.lut_delay_ns));
    return c;
}

BaselineComparison compare_baseline(const BaselineEntry& baseline) {
    return compare_baseline(baseline.mtl_energy_fj, baseline.mtl_delay_ns, baseline);
}

std::vector<BaselineEntry> load_baseline(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open '" + path + "'");
    json j = json::parse(f);
    std::vector<BaselineEntry> entries;
    for (const json& e : j) {
        BaselineEntry b;
        b.benchmark = e.at("benchmark").get<std::string>();
        b.inputs = e.at("inputs").get<int>();
        b.outputs = e.at("outputs").get<int>();
        b.lut_delay_ns = e.at("lut_delay_ns").get<double>();
        b.mtl_delay_ns = e.at("mtl_delay_ns").get<double>();
        b.lut_energy_fj = e.at("lut_energy_fj").get<double>();
        b.mtl_energy_fj = e.at("mtl_energy_fj").get<double>();
        b.reported_energy_reduction_pct = e.at("reported_energy_reduction_pct").get<double>();
        b.reported_edp_reduction_pct = e.at("reported_edp_reduction_pct").get<double>();
        entries.push_back(std::move(b));
    }
    return entries;
}

const BaselineEntry* find_baseline(std::span<const BaselineEntry> entries,
                                   const std::string& benchmark) {
    for (const BaselineEntry& e : entries)
        if (e.benchmark == benchmark) return &e;
    return nullptr;
}

std::string energy_report_to_json(const EnergyReport& rep, const BaselineEntry* baseline) {
    json j;
    j["benchmark"] = rep.benchmark;
    j["source_gates"] = rep.source_gates;
    j["logic_gates"] = rep.logic_gates;
    j["buffer_gates"] = rep.buffer_gates;
    j["total_gates"] = rep.logic_gates + rep.buffer_gates;
    j["stage_count"] = rep.stage_count;
    j["fanouts"] = rep.fanouts;
    j["per_gate_summation_fj"] = rep.per_gate_summation_j * 1e15;
    j["per_gate_divider_fj"] = rep.per_gate_divider_j * 1e15;
    j["per_gate_total_fj"] = rep.per_gate_total_j * 1e15;
    j["gate_energy_fj"] = rep.gate_energy_j * 1e15;
    j["interconnect_energy_fj"] = rep.interconnect_energy_j * 1e15;
    j["total_energy_fj"] = rep.total_energy_j * 1e15;
    j["off_state_leakage_nw"] = rep.off_state_leakage_w * 1e9;
    j["latency_ns"] = rep.latency_s * 1e9;
    j["throughput_period_ns"] = rep.throughput_period_s * 1e9;
    j["edp_fj_ns"] = rep.edp_js * 1e24;
    if (baseline) {
        const BaselineComparison ours =
            compare_baseline(rep.total_energy_j * 1e15, rep.throughput_period_s * 1e9, *baseline);
        const BaselineComparison table = compare_baseline(*baseline);
        j["baseline"] = json{{"lut_delay_ns", baseline->lut_delay_ns},
                             {"lut_energy_fj", baseline->lut_energy_fj},
                             {"table_mtl_delay_ns", baseline->mtl_delay_ns},
                             {"table_mtl_energy_fj", baseline->mtl_energy_fj},
                             {"energy_reduction_pct", ours.energy_reduction_pct},
                             {"edp_reduction_pct", ours.edp_reduction_pct},
                             {"table_energy_reduction_pct", table.energy_reduction_pct},
                             {"table_edp_reduction_pct", table.edp_reduction_pct}};
    }
    return j.dump(2) + "\n";
}

std::string energy_report_table(const EnergyReport& rep, const BaselineEntry* baseline) {
    std::ostringstream os;
    char buf[256];
    if (baseline) {
        // mirrors the published comparison columns, with our energy in
        // the MTL position
        os << "benchmark  #in  #out  delay/throughput (ns)   energy (fJ)          "
              "% reduction\n";
        os << "                      LUT      MTL            LUT        MTL       "
              "energy  energy-delay\n";
        const BaselineComparison ours = compare_baseline(
            rep.total_energy_j * 1e15, rep.throughput_period_s * 1e9, *baseline);
        std::snprintf(buf, sizeof buf,
                      "%-9s %4d %5d  %7.2f  %-7.2f  %12.2f %10.2f   %6.2f  %6.2f\n",
                      rep.benchmark.c_str(), baseline->inputs, baseline->outputs,
                      baseline->lut_delay_ns, rep.throughput_period_s * 1e9,
                      baseline->lut_energy_fj, rep.total_energy_j * 1e15,
                      ours.energy_reduction_pct, ours.edp_reduction_pct);
        os << buf;
    } else {
        os << "benchmark    gates(logic+buf)  stages  delay/throughput(ns)  energy(fJ)"
              "   EDP(fJ*ns)\n";
        std::snprintf(buf, sizeof buf,
                      "%-12s %5zu (%zu+%zu) %9zu  %9.2f / %-8.2f %10.2f %12.2f\n",
                      rep.benchmark.c_str(), rep.logic_gates + rep.buffer_gates,
                      rep.logic_gates, rep.buffer_gates, rep.stage_count,
                      rep.latency_s * 1e9, rep.throughput_period_s * 1e9,
                      rep.total_energy_j * 1e15, rep.edp_js * 1e24);
        os << buf;
    }
    std::snprintf(buf, sizeof buf,
                  "  %zu TLGs (%zu logic + %zu buffer), %zu stages, latency %.1f ns\n",
                  rep.logic_gates + rep.buffer_gates, rep.logic_gates, rep.buffer_gates,
                  rep.stage_count, rep.latency_s * 1e9);
    os << buf;
    std::snprintf(buf, sizeof buf,
                  "  per-gate: summation %.4f fJ + divider %.4f fJ = %.4f fJ; "
                  "interconnect %.4f fJ (%.2f%% of total)\n",
                  rep.per_gate_summation_j * 1e15, rep.per_gate_divider_j * 1e15,
                  rep.per_gate_total_j * 1e15, rep.interconnect_energy_j * 1e15,
                  100.0 * rep.interconnect_energy_j / std::max(rep.total_energy_j, 1e-300));
    os << buf;
    return os.str();
}

}  // namespace mtl
