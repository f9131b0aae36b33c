// mtlsim: crossbar.cpp

#include "mtl/crossbar.hpp"

#include <algorithm>

#include <json.hpp>

namespace mtl {

using nlohmann::json;

std::size_t CrossbarPlan::programmed_total() const {
    std::size_t n = 0;
    for (const auto& b : boundaries) n += b.programmed_crosspoints;
    return n;
}

std::size_t CrossbarPlan::off_total() const {
    std::size_t n = 0;
    for (const auto& b : boundaries) n += b.off_crosspoints;
    return n;
}

Routing route(const TlgNetwork& net, const DeviceParams& params) {
    net.validate();
    if (!net.mappable)
        throw std::invalid_argument("network '" + net.name +
                                    "' is logical-only and cannot be routed");

    Routing out;
    std::vector<RoutedNet> too_long;

    for (std::size_t s = 0; s < net.stage_count(); ++s) {
        // Producers in declaration order: primary inputs for stage 0,
        // otherwise the previous stage's gates.
        std::vector<TlgRef> producers;
        if (s == 0) {
            for (std::size_t i = 0; i < net.inputs.size(); ++i)
                producers.push_back(TlgRef{true, i});
        } else {
            for (std::size_t g : net.stages[s - 1]) producers.push_back(TlgRef{false, g});
        }
        std::vector<std::size_t> row_of_gate(net.gates.size(), 0);
        std::vector<std::size_t> row_of_input(net.inputs.size(), 0);
        for (std::size_t r = 0; r < producers.size(); ++r) {
            if (producers[r].is_input) row_of_input[producers[r].index] = r;
            else row_of_gate[producers[r].index] = r;
        }

        std::size_t cols = 0;
        for (std::size_t g : net.stages[s]) cols += net.gates[g].fanins.size();

        CrossbarBoundary b;
        b.stage = s;
        b.rows = producers.size();
        b.cols = cols;
        b.pitch = params.pitch > 0.0
                      ? params.pitch
                      : params.max_wire_len / static_cast<double>(b.rows + b.cols);

        std::size_t col = 0;
        for (std::size_t g : net.stages[s]) {
            const TlgGate& gate = net.gates[g];
            for (std::size_t slot = 0; slot < gate.fanins.size(); ++slot, ++col) {
                const TlgRef& p = gate.fanins[slot];
                const std::size_t row =
                    p.is_input ? row_of_input[p.index] : row_of_gate[p.index];
                const double length =
                    static_cast<double>(row + col + 2) * b.pitch;
                for (char rail : {'+', '-'}) {
                    RoutedNet rn;
                    rn.boundary = s;
                    rn.producer = p;
                    rn.consumer_gate = g;
                    rn.input_slot = slot;
                    rn.rail = rail;
                    rn.row = row;
                    rn.col = col;
                    rn.length = length;
                    rn.crosspoints = 1;
                    rn.resistance = params.r_wire * (length / params.max_wire_len) +
                                    params.r_on * static_cast<double>(rn.crosspoints);
                    rn.capacitance = params.c_wire * (length / params.max_wire_len);
                    if (length > params.max_wire_len * (1.0 + 1e-12)) {
                        if (too_long.size() < 64) too_long.push_back(rn);
                    }
                    out.nets.push_back(rn);
                }
                b.programmed_crosspoints += 2;
            }
        }
        // each (row, col) crossing exists once per rail plane
        b.off_crosspoints = 2 * b.rows * b.cols - b.programmed_crosspoints;
        out.plan.boundaries.push_back(b);
    }

    if (!too_long.empty()) {
        throw RouteError("placement exceeds the maximum interconnect length on " +
                             std::to_string(too_long.size()) + "+ nets",
                         std::move(too_long));
    }
    return out;
}

ConstraintReport check_constraints(std::span<const RoutedNet> nets,
                                   const DeviceParams& params) {
    ConstraintReport rep;
    rep.bound = 0.1 * params.r_p;
    rep.nets_checked = nets.size();
    for (const RoutedNet& n : nets) {
        if (n.resistance > rep.worst_resistance) rep.worst_resistance = n.resistance;
        if (n.resistance > rep.bound) {
            ++rep.violations;
            if (rep.violating_nets.size() < 64)
                rep.violating_nets.push_back({n, n.resistance, rep.bound});
        }
    }
    rep.slack = rep.bound - rep.worst_resistance;
    rep.worst_droop_fraction = rep.worst_resistance / params.r_p;
    return rep;
}

double interconnect_energy(std::span<const RoutedNet> nets, const DeviceParams& params,
                           std::size_t cycles) {
    double per_cycle = 0.0;
    for (const RoutedNet& n : nets)
        if (n.rail == '+')  // one entry per rail pair
            per_cycle += params.activity * n.capacitance * params.delta_v * params.delta_v;
    return per_cycle * static_cast<double>(cycles);
}

double off_state_leakage_power(const CrossbarPlan& plan, const DeviceParams& params) {
    const double v = 2.0 * params.delta_v;  // worst case rail-to-rail
    return static_cast<double>(plan.off_total()) * v * v / params.r_off;
}

namespace {

json net_json(const RoutedNet& n, const TlgNetwork& net) {
    return json{{"boundary", n.boundary},
                {"producer", n.producer.is_input ? net.inputs[n.producer.index]
                                                 : net.gates[n.producer.index].id},
                {"consumer", net.gates[n.consumer_gate].id},
                {"input_slot", n.input_slot},
                {"rail", std::string(1, n.rail)},
                {"row", n.row},
                {"col", n.col},
                {"length_m", n.length},
                {"resistance_ohm", n.resistance},
                {"capacitance_f", n.capacitance},
                {"crosspoints", n.crosspoints}};
}

}  // namespace

std::string routing_to_json(const Routing& routing, const TlgNetwork& net) {
    json j;
    json bounds = json::array();
    for (const auto& b : routing.plan.boundaries) {
        bounds.push_back(json{{"stage", b.stage},
                              {"rows", b.rows},
                              {"cols", b.cols},
                              {"pitch_m", b.pitch},
                              {"programmed_crosspoints", b.programmed_crosspoints},
                              {"off_crosspoints", b.off_crosspoints}});
    }
    j["boundaries"] = bounds;
    json nets = json::array();
    for (const RoutedNet& n : routing.nets) nets.push_back(net_json(n, net));
    j["nets"] = nets;
    return j.dump(2) + "\n";
}

std::string constraint_report_to_json(const ConstraintReport& rep, const TlgNetwork& net) {
    json j;
    j["nets_checked"] = rep.nets_checked;
    j["violations"] = rep.violations;
    j["resistance_bound_ohm"] = rep.bound;
    j["worst_resistance_ohm"] = rep.worst_resistance;
    j["slack_ohm"] = rep.slack;
    j["worst_droop_fraction"] = rep.worst_droop_fraction;
    json v = json::array();
    for (const ConstraintEntry& e : rep.violating_nets) v.push_back(net_json(e.net, net));
    j["violating_nets"] = v;
    return j.dump(2) + "\n";
}

}  // namespace mtl
