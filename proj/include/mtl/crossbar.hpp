// mtlsim: crossbar.hpp
// Programmable resistive-crossbar interconnect between pipeline stages:
// placement, per-net electrical path, constraint checks, energy.

#pragma once

#include "mtl/device.hpp"
#include "mtl/tlg.hpp"

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mtl {

// One rail of a logical fanout: the +dV rail feeds the consumer's G+
// device, the -dV rail its G- device. Both rails of a fanout share the
// same geometry.
struct RoutedNet {
    std::size_t boundary = 0;  // consumer stage index
    TlgRef producer;
    std::size_t consumer_gate = 0;
    std::size_t input_slot = 0;
    char rail = '+';
    std::size_t row = 0;
    std::size_t col = 0;
    double length = 0.0;       // [m]
    double resistance = 0.0;   // wire share + r_on per programmed crosspoint
    double capacitance = 0.0;  // proportional to length
    std::size_t crosspoints = 1;
};

struct CrossbarBoundary {
    std::size_t stage = 0;  // boundary feeding this stage
    std::size_t rows = 0;   // producers (stage-1 gates, or primary inputs)
    std::size_t cols = 0;   // consumer input slots
    double pitch = 0.0;
    std::size_t programmed_crosspoints = 0;
    std::size_t off_crosspoints = 0;
};

struct CrossbarPlan {
    std::vector<CrossbarBoundary> boundaries;

    std::size_t programmed_total() const;
    std::size_t off_total() const;
};

class RouteError : public std::runtime_error {
public:
    RouteError(std::string msg, std::vector<RoutedNet> offending)
        : std::runtime_error(std::move(msg)), offending_nets(std::move(offending)) {}
    std::vector<RoutedNet> offending_nets;
};

struct Routing {
    CrossbarPlan plan;
    std::vector<RoutedNet> nets;
};

// Declaration-order grid placement per stage boundary. Row/column pitch
// defaults to max_wire_len / (rows + cols), which caps every in-grid
// path at max_wire_len; an explicit params.pitch can exceed the cap, in
// which case the offending nets are reported via RouteError.
Routing route(const TlgNetwork& net, const DeviceParams& params);

struct ConstraintEntry {
    RoutedNet net;
    double resistance = 0.0;
    double bound = 0.0;
};

struct ConstraintReport {
    std::size_t nets_checked = 0;
    std::size_t violations = 0;
    double bound = 0.0;             // 0.1 * r_p
    double worst_resistance = 0.0;
    double slack = 0.0;             // bound - worst
    double worst_droop_fraction = 0.0;  // R_path / r_p
    std::vector<ConstraintEntry> violating_nets;  // capped at 64

    bool ok() const { return violations == 0; }
};

// Path resistance must stay below 10% of the weight-MTJ resistance so
// input levels remain close to +-dV. Violations are report entries, not
// errors.
ConstraintReport check_constraints(std::span<const RoutedNet> nets,
                                   const DeviceParams& params);

// Dynamic switching energy: activity * C_net * dV^2 per logical fanout
// per cycle (the rail pair shares one net capacitance).
double interconnect_energy(std::span<const RoutedNet> nets, const DeviceParams& params,
                           std::size_t cycles);

// Off-state sneak estimate through unprogrammed crosspoints; reported
// separately and excluded from the headline energy.
double off_state_leakage_power(const CrossbarPlan& plan, const DeviceParams& params);

std::string routing_to_json(const Routing& routing, const TlgNetwork& net);
std::string constraint_report_to_json(const ConstraintReport& rep, const TlgNetwork& net);

}  // namespace mtl
