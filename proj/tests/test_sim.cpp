// Pipelined device-level simulation, equivalence checking, Monte Carlo.

#include <doctest.h>

#include "mtl/netlist.hpp"
#include "mtl/sim.hpp"
#include "mtl/synth.hpp"

#include <string>
#include <vector>

using namespace mtl;
using doctest::Approx;

namespace {

const std::string kBenchDir = std::string(MTL_DATA_DIR) + "/benches";
using Vec = std::vector<std::uint8_t>;
using Stream = std::vector<Vec>;

}  // namespace

TEST_CASE("single buffer delays the stream by one cycle") {
    Netlist nl = parse_bench("INPUT(a)\nOUTPUT(y)\ny = BUF(a)");
    TlgNetwork net = synthesize(nl, 2);
    REQUIRE(net.stage_count() == 1);
    Stream stream{{1}, {0}, {1}};
    SimResult res = simulate(net, stream, DeviceParams{});
    CHECK(res.outputs == Stream{{1}, {0}, {1}});
    CHECK(res.state.cycle == 4);  // n + S
    CHECK(res.state.under_threshold_count == 0);
}

TEST_CASE("held vector settles to the reference value") {
    Netlist nl = load_bench_file(kBenchDir + "/c17.bench");
    TlgNetwork net = synthesize(nl, 2);
    const Vec v{1, 0, 1, 1, 0};
    Stream stream(net.stage_count(), v);
    SimResult res = simulate(net, stream, DeviceParams{});
    CHECK(res.outputs.back() == nl.eval(v));
}

TEST_CASE("pipeline contract across depths") {
    std::string text = "INPUT(a)\n";
    std::string prev = "a";
    for (int s = 1; s <= 12; ++s) {
        text += "b" + std::to_string(s) + " = BUF(" + prev + ")\n";
        prev = "b" + std::to_string(s);
    }
    text += "OUTPUT(" + prev + ")\n";
    Netlist nl = parse_bench(text);
    TlgNetwork net = synthesize(nl, 2);
    REQUIRE(net.stage_count() == 12);

    Stream stream;
    for (int i = 0; i < 30; ++i) stream.push_back(Vec{static_cast<std::uint8_t>((i / 3) & 1)});
    SimResult res = simulate(net, stream, DeviceParams{});
    REQUIRE(res.outputs.size() == stream.size());
    for (std::size_t t = 0; t < stream.size(); ++t) CHECK(res.outputs[t] == stream[t]);
    CHECK(res.state.cycle == stream.size() + net.stage_count());
}

TEST_CASE("zero-gate pass-through") {
    Netlist nl = parse_bench("INPUT(a)\nINPUT(b)\nOUTPUT(b)\nOUTPUT(a)");
    TlgNetwork net = synthesize(nl, 2);
    CHECK(net.stage_count() == 0);
    Stream stream{{1, 0}, {0, 1}};
    SimResult res = simulate(net, stream, DeviceParams{});
    CHECK(res.outputs == Stream{{0, 1}, {1, 0}});
    EquivalenceReport rep = equivalence_exhaustive(nl, net, DeviceParams{});
    CHECK(rep.mismatches == 0);
    CHECK(rep.vectors_tested == 4);
}

TEST_CASE("c17 exhaustive equivalence on the device model") {
    Netlist nl = load_bench_file(kBenchDir + "/c17.bench");
    TlgNetwork net = synthesize(nl, 2);
    EquivalenceReport rep = equivalence_exhaustive(nl, net, DeviceParams{});
    CHECK(rep.vectors_tested == 32);
    CHECK(rep.mismatches == 0);
    CHECK(rep.sim_state.under_threshold_count == 0);
}

TEST_CASE("a corrupted bias is caught by the equivalence check") {
    Netlist nl = load_bench_file(kBenchDir + "/c17.bench");
    TlgNetwork net = synthesize(nl, 2);
    for (TlgGate& g : net.gates) {
        if (g.role == TlgRole::logic && g.bias == 3) {  // NAND -> NOR
            g.bias = 1;
            break;
        }
    }
    EquivalenceReport rep = equivalence_exhaustive(nl, net, DeviceParams{});
    CHECK(rep.mismatches > 0);
}

TEST_CASE("interface mismatch is rejected") {
    Netlist nl = parse_bench("INPUT(a)\nINPUT(b)\nOUTPUT(y)\ny = AND(a, b)");
    Netlist other = parse_bench("INPUT(a)\nOUTPUT(y)\ny = NOT(a)");
    TlgNetwork net = synthesize(other, 2);
    CHECK_THROWS_AS(equivalence_exhaustive(nl, net, DeviceParams{}), std::invalid_argument);
}

TEST_CASE("exhaustive enumeration bounds") {
    CHECK_THROWS_AS(exhaustive_vectors(25), std::invalid_argument);
    CHECK(exhaustive_vectors(3).size() == 8);
}

TEST_CASE("logical-only networks are rejected by the device layer") {
    Netlist nl = load_bench_file(kBenchDir + "/c17.bench");
    TlgNetwork net = synthesize(nl, 3);
    Stream stream{Vec(5, 0)};
    CHECK_THROWS_AS(simulate(net, stream, DeviceParams{}), std::invalid_argument);
}

TEST_CASE("weak input pair under-threshold: output holds its state") {
    Netlist nl = parse_bench("INPUT(a)\nINPUT(b)\nOUTPUT(y)\ny = AND(a, b)");
    TlgNetwork net = synthesize(nl, 2);
    REQUIRE(net.gates.size() == 1);

    // Scale the first input's R+ by 1.05: the (1,1) summation drops to
    // (1.873 + 2 - 3) units = 1.364 uA, just below the 1.4 uA threshold.
    VariationSample var;
    var.gate_factors = {{1.05, 1.0, 1.0, 1.0, 1.0, 1.0}};

    Stream stream{{1, 1}, {1, 1}};
    SimResult res = simulate(net, stream, DeviceParams{}, &var);
    CHECK(res.state.under_threshold_count >= 2);
    REQUIRE(!res.state.events.empty());
    CHECK(res.state.events[0].magnitude == Approx(1.3639e-6).epsilon(1e-3));
    // initial polarity is -1, so the stale latched 0 propagates
    CHECK(res.outputs[0] == Vec{0});
    CHECK(res.outputs[1] == Vec{0});

    // (0,1) keeps one unit of margin and still works
    Stream ok{{0, 1}};
    SimResult res2 = simulate(net, ok, DeviceParams{}, &var);
    CHECK(res2.outputs[0] == Vec{0});
    CHECK(res2.state.under_threshold_count == 0);
}

TEST_CASE("monte carlo: nominal parameters give unit margins and full yield") {
    Netlist nl = load_bench_file(kBenchDir + "/c17.bench");
    TlgNetwork net = synthesize(nl, 2);
    DeviceParams p;  // sigma_r = 0
    MarginReport rep = monte_carlo(nl, net, p, 5, 64, 0);
    CHECK(rep.yield == 1.0);
    CHECK(rep.mismatch_count == 0);
    CHECK(rep.under_threshold_events == 0);
    CHECK(rep.min_margin_ratio == Approx(1.5625 / 1.4).epsilon(1e-9));
}

TEST_CASE("monte carlo: single nominal trial equals a plain equivalence check") {
    Netlist nl = load_bench_file(kBenchDir + "/c17.bench");
    TlgNetwork net = synthesize(nl, 2);
    DeviceParams p;
    MarginReport rep = monte_carlo(nl, net, p, 1, 32, 9);
    EquivalenceReport eq =
        equivalence_random(nl, net, p, 32, 9 ^ 0x5bf0361ad65a55d5ull);
    CHECK(rep.mismatch_count == eq.mismatches);
    CHECK(rep.yield == 1.0);
}

TEST_CASE("monte carlo: yield degrades monotonically with variation") {
    Netlist nl = load_bench_file(kBenchDir + "/c17.bench");
    TlgNetwork net = synthesize(nl, 2);
    double last = 1.0;
    for (double sigma : {0.02, 0.05, 0.10}) {
        DeviceParams p;
        p.sigma_r = sigma;
        MarginReport rep = monte_carlo(nl, net, p, 60, 64, 1234);
        CHECK(rep.yield <= last + 1e-12);
        last = rep.yield;
    }
}

TEST_CASE("monte carlo: heavy variation breaks the unit margin") {
    Netlist nl = load_bench_file(kBenchDir + "/c17.bench");
    TlgNetwork net = synthesize(nl, 2);
    DeviceParams p;
    p.sigma_r = 0.30;
    MarginReport rep = monte_carlo(nl, net, p, 200, 32, 7);
    CHECK(rep.yield < 1.0);
    CHECK(rep.under_threshold_events > 0);
}

TEST_CASE("monte carlo: result independent of worker count") {
    Netlist nl = load_bench_file(kBenchDir + "/c17.bench");
    TlgNetwork net = synthesize(nl, 2);
    DeviceParams p;
    p.sigma_r = 0.08;
    MarginReport a = monte_carlo(nl, net, p, 24, 32, 5, 1);
    MarginReport b = monte_carlo(nl, net, p, 24, 32, 5, 4);
    CHECK(a.yield == b.yield);
    CHECK(a.mismatch_count == b.mismatch_count);
    CHECK(a.under_threshold_events == b.under_threshold_events);
    CHECK(a.per_gate_min_abs_current == b.per_gate_min_abs_current);
}

TEST_CASE("analog sign agrees with the logical threshold everywhere") {
    Netlist nl = load_bench_file(kBenchDir + "/c432.bench");
    TlgNetwork net = synthesize(nl, 2);
    DeviceParams p;
    auto circuits = build_circuits(net, p);
    for (std::size_t gi = 0; gi < net.gates.size(); ++gi) {
        const TlgGate& g = net.gates[gi];
        const std::size_t k = g.fanins.size();
        for (std::size_t combo = 0; combo < (std::size_t{1} << k); ++combo) {
            Vec bits(k);
            for (std::size_t i = 0; i < k; ++i) bits[i] = (combo >> i) & 1;
            const double i_sum = sum_current(circuits[gi].inputs, bits, circuits[gi].bias, p);
            const int logical = 2 * static_cast<int>(tlg_eval(g, bits)) - 1;
            REQUIRE((i_sum > 0 ? 1 : -1) == logical);
        }
    }
}

TEST_CASE("margin profile: unit current and 25% resolution") {
    Netlist nl = load_bench_file(kBenchDir + "/c17.bench");
    TlgNetwork net = synthesize(nl, 2);
    DeviceParams p;
    MarginProfile prof = margin_profile(net, p);
    CHECK(prof.min_abs_current == Approx(1.5625e-6).epsilon(1e-12));
    CHECK(prof.max_input_current == Approx(6.25e-6).epsilon(1e-12));
    CHECK(prof.resolution() == Approx(0.25).epsilon(1e-12));
}
