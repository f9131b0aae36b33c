// Crossbar routing, constraint checking and interconnect energy.

#include <doctest.h>

#include "mtl/crossbar.hpp"
#include "mtl/netlist.hpp"
#include "mtl/sim.hpp"
#include "mtl/synth.hpp"

#include <map>
#include <string>

using namespace mtl;
using doctest::Approx;

namespace {

const std::string kBenchDir = std::string(MTL_DATA_DIR) + "/benches";

}  // namespace

TEST_CASE("one producer, one consumer: a full-length rail pair") {
    Netlist nl = parse_bench("INPUT(a)\nOUTPUT(y)\ny = BUF(a)");
    TlgNetwork net = synthesize(nl, 2);
    DeviceParams p;
    Routing r = route(net, p);
    REQUIRE(r.nets.size() == 2);  // + and - rails of one fanout
    for (const RoutedNet& n : r.nets) {
        CHECK(n.crosspoints == 1);
        CHECK(n.length == Approx(50e-6).epsilon(1e-12));
        CHECK(n.resistance == Approx(300.0).epsilon(1e-12));  // 100 wire + 200 on
        CHECK(n.capacitance == Approx(10e-15).epsilon(1e-12));
    }
    CHECK(r.plan.boundaries.size() == 1);
    CHECK(r.plan.boundaries[0].rows == 1);
    CHECK(r.plan.boundaries[0].cols == 1);
    CHECK(r.plan.programmed_total() == 2);
    CHECK(r.plan.off_total() == 0);
}

TEST_CASE("every fanout appears as exactly one rail pair") {
    Netlist nl = load_bench_file(kBenchDir + "/c17.bench");
    TlgNetwork net = synthesize(nl, 2);
    DeviceParams p;
    Routing r = route(net, p);
    CHECK(r.nets.size() == 2 * net.fanout_edge_count());
    std::map<std::tuple<std::size_t, std::size_t, char>, int> seen;
    for (const RoutedNet& n : r.nets) ++seen[{n.consumer_gate, n.input_slot, n.rail}];
    for (const auto& [key, count] : seen) CHECK(count == 1);
    CHECK(r.plan.programmed_total() == r.nets.size());
}

TEST_CASE("full-length fanout energies match the budget") {
    Netlist nl = parse_bench("INPUT(a)\nOUTPUT(y)\ny = BUF(a)");
    TlgNetwork net = synthesize(nl, 2);
    DeviceParams p;
    Routing r = route(net, p);
    CHECK(interconnect_energy(r.nets, p, 1) == Approx(20e-18).epsilon(1e-12));
    DeviceParams worst = p;
    worst.activity = 1.0;
    CHECK(interconnect_energy(r.nets, worst, 1) == Approx(25e-18).epsilon(1e-12));
}

TEST_CASE("interconnect energy scaling") {
    Netlist nl = parse_bench("INPUT(a)\nOUTPUT(y)\ny = BUF(a)");
    TlgNetwork net = synthesize(nl, 2);
    DeviceParams p;
    Routing r = route(net, p);
    const double e1 = interconnect_energy(r.nets, p, 1);
    CHECK(interconnect_energy(r.nets, p, 7) == Approx(7.0 * e1).epsilon(1e-12));
    DeviceParams dv2 = p;
    dv2.delta_v *= 2.0;
    CHECK(interconnect_energy(r.nets, dv2, 1) == Approx(4.0 * e1).epsilon(1e-12));
    DeviceParams act = p;
    act.activity = 0.4;
    CHECK(interconnect_energy(r.nets, act, 1) == Approx(0.5 * e1).epsilon(1e-12));

    RoutedNet zero;  // zero-length net carries no charge
    zero.rail = '+';
    zero.capacitance = 0.0;
    std::vector<RoutedNet> nets{zero};
    CHECK(interconnect_energy(nets, p, 10) == 0.0);
}

TEST_CASE("constraint check: pass, droop and violation entries") {
    DeviceParams p;
    RoutedNet good;
    good.rail = '+';
    good.resistance = 300.0;
    RoutedNet bad = good;
    bad.resistance = 1300.0;

    ConstraintReport ok = check_constraints(std::vector<RoutedNet>{good}, p);
    CHECK(ok.ok());
    CHECK(ok.bound == Approx(1200.0));
    CHECK(ok.worst_droop_fraction == Approx(0.025));  // 300 / 12k
    CHECK(ok.slack == Approx(900.0));

    ConstraintReport viol = check_constraints(std::vector<RoutedNet>{good, bad}, p);
    CHECK(!viol.ok());
    CHECK(viol.violations == 1);
    REQUIRE(viol.violating_nets.size() == 1);
    CHECK(viol.violating_nets[0].resistance == Approx(1300.0));

    ConstraintReport empty = check_constraints(std::vector<RoutedNet>{}, p);
    CHECK(empty.ok());
    CHECK(empty.nets_checked == 0);
}

TEST_CASE("benchmark routing passes the resistance budget at defaults") {
    for (const char* name : {"/c17.bench", "/c432.bench"}) {
        Netlist nl = load_bench_file(kBenchDir + name);
        TlgNetwork net = synthesize(nl, 2);
        DeviceParams p;
        Routing r = route(net, p);
        ConstraintReport rep = check_constraints(r.nets, p);
        CHECK(rep.ok());
        CHECK(rep.worst_resistance <= 300.0 + 1e-9);  // auto pitch caps at max length
    }
}

TEST_CASE("an oversized explicit pitch is reported as a route error") {
    Netlist nl = load_bench_file(kBenchDir + "/c17.bench");
    TlgNetwork net = synthesize(nl, 2);
    DeviceParams p;
    p.pitch = 20e-6;  // 20 um pitch across several rows+cols blows the 50 um cap
    CHECK_THROWS_AS(route(net, p), RouteError);
    try {
        route(net, p);
    } catch (const RouteError& e) {
        CHECK(!e.offending_nets.empty());
    }
}

TEST_CASE("logical-only networks cannot be routed") {
    Netlist nl = load_bench_file(kBenchDir + "/c17.bench");
    TlgNetwork net = synthesize(nl, 3);
    DeviceParams p;
    CHECK_THROWS_AS(route(net, p), std::invalid_argument);
}

TEST_CASE("off-state leakage estimate scales with unprogrammed crosspoints") {
    Netlist nl = load_bench_file(kBenchDir + "/c17.bench");
    TlgNetwork net = synthesize(nl, 2);
    DeviceParams p;
    Routing r = route(net, p);
    const double w = off_state_leakage_power(r.plan, p);
    const double expect =
        static_cast<double>(r.plan.off_total()) * 0.1 * 0.1 / p.r_off;
    CHECK(w == Approx(expect).epsilon(1e-12));
}
