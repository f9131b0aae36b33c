// Fan-in decomposition, the gate-to-weight mapping and pipeline staging.

#include <doctest.h>

#include "mtl/netlist.hpp"
#include "mtl/synth.hpp"
#include "mtl/tlg.hpp"

#include <string>
#include <vector>

using namespace mtl;

namespace {

const std::string kBenchDir = std::string(MTL_DATA_DIR) + "/benches";

// Exhaustive logical equivalence of a netlist against a TLG network.
bool equivalent(const Netlist& nl, const TlgNetwork& net) {
    const std::size_t k = nl.inputs.size();
    REQUIRE(k <= 16);
    for (std::size_t v = 0; v < (std::size_t{1} << k); ++v) {
        std::vector<std::uint8_t> bits(k);
        for (std::size_t i = 0; i < k; ++i) bits[i] = (v >> i) & 1;
        if (nl.eval(bits) != tlg_eval_network(net, bits)) return false;
    }
    return true;
}

// Exhaustive logical equivalence of two netlists.
bool equivalent(const Netlist& a, const Netlist& b) {
    const std::size_t k = a.inputs.size();
    REQUIRE(k <= 16);
    for (std::size_t v = 0; v < (std::size_t{1} << k); ++v) {
        std::vector<std::uint8_t> bits(k);
        for (std::size_t i = 0; i < k; ++i) bits[i] = (v >> i) & 1;
        if (a.eval(bits) != b.eval(bits)) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("decompose: 4-input AND becomes a 3-gate tree") {
    Netlist nl = parse_bench(
        "INPUT(a)\nINPUT(b)\nINPUT(c)\nINPUT(d)\nOUTPUT(y)\ny = AND(a, b, c, d)");
    Netlist d = decompose(nl, 2);
    CHECK(d.gates.size() == 3);
    CHECK(d.max_fanin() == 2);
    CHECK(equivalent(nl, d));
}

TEST_CASE("decompose: 2-input NAND is untouched") {
    Netlist nl = parse_bench("INPUT(a)\nINPUT(b)\nOUTPUT(y)\ny = NAND(a, b)");
    Netlist d = decompose(nl, 2);
    REQUIRE(d.gates.size() == 1);
    CHECK(d.gates[0].func == GateFunc::NAND);
    CHECK(d.gates[0].fanins == nl.gates[0].fanins);
}

TEST_CASE("decompose: 3-input NOR keeps inversion at the root") {
    Netlist nl =
        parse_bench("INPUT(a)\nINPUT(b)\nINPUT(c)\nOUTPUT(y)\ny = NOR(a, b, c)");
    Netlist d = decompose(nl, 2);
    CHECK(d.gates.size() == 2);
    int ors = 0, nors = 0;
    for (const Gate& g : d.gates) {
        ors += g.func == GateFunc::OR;
        nors += g.func == GateFunc::NOR;
    }
    CHECK(ors == 1);
    CHECK(nors == 1);
    CHECK(equivalent(nl, d));
}

TEST_CASE("decompose: parity gates reduce to 2-input trees at any bound") {
    Netlist nl = parse_bench(
        "INPUT(a)\nINPUT(b)\nINPUT(c)\nINPUT(d)\nOUTPUT(y)\ny = XOR(a, b, c, d)");
    for (std::size_t k : {2u, 3u, 4u}) {
        Netlist d = decompose(nl, k);
        CHECK(d.max_fanin() == 2);
        CHECK(equivalent(nl, d));
    }
    Netlist x = parse_bench(
        "INPUT(a)\nINPUT(b)\nINPUT(c)\nOUTPUT(y)\ny = XNOR(a, b, c)");
    CHECK(equivalent(x, decompose(x, 2)));
}

TEST_CASE("decompose: single-input symmetric gates normalize") {
    Netlist nl = parse_bench("INPUT(a)\nOUTPUT(y)\nOUTPUT(z)\ny = AND(a)\nz = NOR(a)");
    Netlist d = decompose(nl, 2);
    CHECK(d.gates[0].func == GateFunc::BUF);
    CHECK(d.gates[1].func == GateFunc::NOT);
    CHECK(equivalent(nl, d));
}

TEST_CASE("decompose preserves equivalence on wide mixed gates") {
    Netlist nl = parse_bench(
        "INPUT(a)\nINPUT(b)\nINPUT(c)\nINPUT(d)\nINPUT(e)\nINPUT(f)\nINPUT(g)\n"
        "OUTPUT(y)\nOUTPUT(z)\n"
        "t = NAND(a, b, c, d, e, f, g)\n"
        "u = OR(a, c, e, g)\n"
        "y = XOR(t, u)\n"
        "z = NOR(b, d, f, t)\n");
    for (std::size_t k : {2u, 3u, 4u}) {
        Netlist d = decompose(nl, k);
        CHECK(d.max_fanin() <= k);
        CHECK(equivalent(nl, d));
    }
}

TEST_CASE("map_tlg: weight table") {
    // measured triple for the conjunction; the rest follow the same alphabet
    Netlist nl = parse_bench("INPUT(a)\nINPUT(b)\nOUTPUT(y)\ny = AND(a, b)");
    TlgNetwork net = map_tlg(nl);
    REQUIRE(net.gates.size() == 1);
    CHECK(net.gates[0].weights == std::vector<int>{2, 2});
    CHECK(net.gates[0].bias == -3);

    auto weights_of = [](const char* func) {
        Netlist n = parse_bench("INPUT(a)\nINPUT(b)\nOUTPUT(y)\ny = " +
                                std::string(func) + "(a, b)");
        TlgNetwork t = map_tlg(n);
        REQUIRE(t.gates.size() == 1);
        return std::pair{t.gates[0].weights, t.gates[0].bias};
    };
    CHECK(weights_of("OR") == std::pair{std::vector<int>{2, 2}, -1});
    CHECK(weights_of("NAND") == std::pair{std::vector<int>{-2, -2}, 3});
    CHECK(weights_of("NOR") == std::pair{std::vector<int>{-2, -2}, 1});

    Netlist n1 = parse_bench("INPUT(a)\nOUTPUT(y)\ny = NOT(a)");
    TlgNetwork t1 = map_tlg(n1);
    CHECK(t1.gates[0].weights == std::vector<int>{-2});
    CHECK(t1.gates[0].bias == 1);
    Netlist n2 = parse_bench("INPUT(a)\nOUTPUT(y)\ny = BUF(a)");
    TlgNetwork t2 = map_tlg(n2);
    CHECK(t2.gates[0].weights == std::vector<int>{2});
    CHECK(t2.gates[0].bias == -1);
}

TEST_CASE("tlg_eval spot values") {
    TlgGate org{"or", {{true, 0}, {true, 1}}, {2, 2}, -1, TlgRole::logic, -1};
    CHECK(tlg_eval(org, std::vector<std::uint8_t>{0, 1}) == 1);
    TlgGate nog{"nor", {{true, 0}, {true, 1}}, {-2, -2}, 1, TlgRole::logic, -1};
    CHECK(tlg_eval(nog, std::vector<std::uint8_t>{0, 0}) == 1);
    TlgGate ag{"and", {{true, 0}, {true, 1}}, {2, 2}, -3, TlgRole::logic, -1};
    CHECK(tlg_eval(ag, std::vector<std::uint8_t>{1, 0}) == 0);  // sum = -1
    CHECK(tlg_eval(ag, std::vector<std::uint8_t>{1, 1}) == 1);  // sum = +1
}

TEST_CASE("tlg_eval rejects a zero sum in mappable mode") {
    TlgGate bad{"bad", {{true, 0}, {true, 1}}, {2, -2}, 0, TlgRole::logic, -1};
    CHECK_THROWS_AS(tlg_eval(bad, std::vector<std::uint8_t>{1, 1}), std::logic_error);
    CHECK_NOTHROW(tlg_eval(bad, std::vector<std::uint8_t>{1, 1}, false));
}

TEST_CASE("XOR and XNOR expand into equivalent composites") {
    Netlist x = parse_bench("INPUT(a)\nINPUT(b)\nOUTPUT(y)\ny = XOR(a, b)");
    TlgNetwork nx = synthesize(x, 2);
    CHECK(nx.logic_count() == 3);
    CHECK(equivalent(x, nx));
    Netlist xn = parse_bench("INPUT(a)\nINPUT(b)\nOUTPUT(y)\ny = XNOR(a, b)");
    TlgNetwork nxn = synthesize(xn, 2);
    CHECK(nxn.logic_count() == 4);
    CHECK(equivalent(xn, nxn));
}

TEST_CASE("pipeline: diamond inserts one shared buffer") {
    Netlist nl = parse_bench(
        "INPUT(a)\nINPUT(b)\nOUTPUT(y)\ng1 = AND(a, b)\ny = OR(g1, a)");
    TlgNetwork net = synthesize(nl, 2);
    CHECK(net.stage_count() == 2);
    CHECK(net.buffer_count() == 1);
    CHECK(equivalent(nl, net));
    net.validate();
}

TEST_CASE("pipeline: aligned chain needs no buffers") {
    Netlist nl = parse_bench(
        "INPUT(a)\nINPUT(b)\nOUTPUT(y)\ng1 = AND(a, b)\ny = NOT(g1)");
    TlgNetwork net = synthesize(nl, 2);
    CHECK(net.buffer_count() == 0);
    CHECK(net.stage_count() == 2);
}

TEST_CASE("pipeline: XOR composite with a raw-input consumer") {
    Netlist nl = parse_bench(
        "INPUT(a)\nINPUT(b)\nINPUT(c)\nOUTPUT(y)\nx = XOR(a, b)\ny = AND(x, c)");
    TlgNetwork net = synthesize(nl, 2);
    // x lands at stage 1, so c needs re-timing through stages 0 and 1
    CHECK(net.stage_count() == 3);
    CHECK(net.buffer_count() == 2);
    CHECK(equivalent(nl, net));
}

TEST_CASE("pipeline: primary-input outputs are carried to the final stage") {
    Netlist nl = parse_bench(
        "INPUT(a)\nINPUT(b)\nOUTPUT(a)\nOUTPUT(y)\ny = AND(a, b)");
    TlgNetwork net = synthesize(nl, 2);
    CHECK(net.stage_count() == 1);
    CHECK(net.buffer_count() == 1);  // carries a
    CHECK(equivalent(nl, net));
}

TEST_CASE("synthesize: single AND is one logic TLG, one stage") {
    Netlist nl = parse_bench("INPUT(a)\nINPUT(b)\nOUTPUT(y)\ny = AND(a, b)");
    TlgNetwork net = synthesize(nl, 2);
    CHECK(net.logic_count() == 1);
    CHECK(net.buffer_count() == 0);
    CHECK(net.stage_count() == 1);
}

TEST_CASE("synthesize: c17 is equivalent on all 32 vectors") {
    Netlist nl = load_bench_file(kBenchDir + "/c17.bench");
    TlgNetwork net = synthesize(nl, 2);
    CHECK(net.mappable);
    CHECK(equivalent(nl, net));
    net.validate();
}

TEST_CASE("synthesize rejects unsupported bounds") {
    Netlist nl = parse_bench("INPUT(a)\nINPUT(b)\nOUTPUT(y)\ny = AND(a, b)");
    CHECK_THROWS_AS(synthesize(nl, 5), std::invalid_argument);
    CHECK_THROWS_AS(synthesize(nl, 1), std::invalid_argument);
}

TEST_CASE("fan-in 3/4 networks are logical-only but equivalent") {
    Netlist nl = load_bench_file(kBenchDir + "/c17.bench");
    for (std::size_t k : {3u, 4u}) {
        TlgNetwork net = synthesize(nl, k);
        CHECK(!net.mappable);
        CHECK(equivalent(nl, net));
    }
}

TEST_CASE("gate count is non-increasing in the fan-in bound") {
    for (const char* name : {"/c17.bench", "/c432.bench"}) {
        Netlist nl = load_bench_file(kBenchDir + name);
        const std::size_t n2 = synthesize(nl, 2).logic_count();
        const std::size_t n3 = synthesize(nl, 3).logic_count();
        const std::size_t n4 = synthesize(nl, 4).logic_count();
        CHECK(n2 >= n3);
        CHECK(n3 >= n4);
    }
}

TEST_CASE("odd-sum invariant: even weights, odd bias everywhere") {
    Netlist nl = load_bench_file(kBenchDir + "/c432.bench");
    TlgNetwork net = synthesize(nl, 2);
    for (const TlgGate& g : net.gates) {
        for (int w : g.weights) CHECK(w % 2 == 0);
        CHECK(g.bias % 2 != 0);
    }
}

TEST_CASE("resolution: 2-input gates detect 1 part in 4") {
    Netlist nl = load_bench_file(kBenchDir + "/c17.bench");
    TlgNetwork net = synthesize(nl, 2);
    for (const TlgGate& g : net.gates) {
        if (g.fanins.size() != 2) continue;
        int min_total = 1 << 20, max_inputs = 0;
        for (int combo = 0; combo < 4; ++combo) {
            int s = 0;
            for (int i = 0; i < 2; ++i)
                if (combo >> i & 1) s += g.weights[i];
            max_inputs = std::max(max_inputs, std::abs(s));
            min_total = std::min(min_total, std::abs(s + g.bias));
        }
        CHECK(min_total * 4 == max_inputs);  // exactly 25%
    }
}

TEST_CASE("network JSON round-trip") {
    Netlist nl = load_bench_file(kBenchDir + "/c17.bench");
    TlgNetwork net = synthesize(nl, 2);
    TlgNetwork back = tlg_from_json(tlg_to_json(net));
    CHECK(back.gates.size() == net.gates.size());
    CHECK(back.stages == net.stages);
    CHECK(back.fanouts == net.fanouts);
    CHECK(tlg_to_json(back) == tlg_to_json(net));
    CHECK(equivalent(nl, back));
}

TEST_CASE("map_tlg refuses fan-in above 2") {
    Netlist nl =
        parse_bench("INPUT(a)\nINPUT(b)\nINPUT(c)\nOUTPUT(y)\ny = AND(a, b, c)");
    CHECK_THROWS_AS(map_tlg(nl), std::invalid_argument);
}
