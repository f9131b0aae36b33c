// mtlsim: sim.cpp

#include "mtl/sim.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

namespace mtl {

std::vector<std::size_t> devices_per_gate(const TlgNetwork& net) {
    std::vector<std::size_t> counts;
    counts.reserve(net.gates.size());
    for (const TlgGate& g : net.gates) counts.push_back(2 * g.fanins.size() + 2);
    return counts;
}

std::vector<GateCircuit> build_circuits(const TlgNetwork& net, const DeviceParams& params,
                                        const VariationSample* variation) {
    if (!net.mappable)
        throw std::invalid_argument("network '" + net.name +
                                    "' is logical-only and cannot be device-mapped");
    if (variation && variation->gate_factors.size() != net.gates.size())
        throw std::invalid_argument("variation sample does not match network size");

    std::vector<GateCircuit> circuits;
    circuits.reserve(net.gates.size());
    for (std::size_t gi = 0; gi < net.gates.size(); ++gi) {
        const TlgGate& g = net.gates[gi];
        GateCircuit c;
        c.inputs.reserve(g.fanins.size());
        for (int w : g.weights) c.inputs.push_back(weight_to_conductance(w, params));
        c.bias = weight_to_conductance(g.bias, params);
        if (variation) {
            const auto& f = variation->gate_factors[gi];
            if (f.size() != 2 * g.fanins.size() + 2)
                throw std::invalid_argument("variation factor count mismatch in gate '" +
                                            g.id + "'");
            for (std::size_t i = 0; i < c.inputs.size(); ++i) {
                c.inputs[i].g_plus /= f[2 * i];
                c.inputs[i].g_minus /= f[2 * i + 1];
            }
            c.bias.g_plus /= f[2 * c.inputs.size()];
            c.bias.g_minus /= f[2 * c.inputs.size() + 1];
        }
        circuits.push_back(std::move(c));
    }
    return circuits;
}

SimResult simulate(const TlgNetwork& net,
                   std::span<const std::vector<std::uint8_t>> stream,
                   const DeviceParams& params, const VariationSample* variation) {
    if (stream.empty()) throw std::invalid_argument("empty input stream");
    for (const auto& v : stream)
        if (v.size() != net.inputs.size())
            throw std::invalid_argument("input vector width mismatch");

    SimResult res;
    const std::size_t n = stream.size();
    const std::size_t S = net.stage_count();
    res.outputs.reserve(n);

    if (S == 0) {  // pure pass-through: no devices, no latency
        for (const auto& v : stream) {
            std::vector<std::uint8_t> out;
            out.reserve(net.output_refs.size());
            for (const TlgRef& r : net.output_refs) out.push_back(v[r.index]);
            res.outputs.push_back(std::move(out));
        }
        res.state.cycle = n;
        return res;
    }

    const std::vector<GateCircuit> circuits = build_circuits(net, params, variation);
    SimState& st = res.state;
    st.dws.assign(net.gates.size(), DwsState{});
    st.latch.assign(net.gates.size(), 0);
    st.min_abs_current.assign(net.gates.size(), std::numeric_limits<double>::infinity());

    const double v_thresh = params.vdd / 2.0;
    std::vector<std::uint8_t> next_latch(net.gates.size(), 0);
    std::vector<std::uint8_t> bits;

    for (std::size_t c = 0; c < n + S; ++c) {
        if (c >= S) {  // output of vector c-S, latched at the end of cycle c-1
            std::vector<std::uint8_t> out;
            out.reserve(net.output_refs.size());
            for (const TlgRef& r : net.output_refs) out.push_back(st.latch[r.index]);
            res.outputs.push_back(std::move(out));
        }
        st.cycle = c + 1;
        if (c + 1 == n + S) break;  // final slot only drains the last output

        const std::vector<std::uint8_t>& v = stream[std::min(c, n - 1)];
        next_latch = st.latch;
        for (const auto& stage : net.stages) {
            for (std::size_t gi : stage) {
                const TlgGate& g = net.gates[gi];
                bits.clear();
                for (const TlgRef& r : g.fanins)
                    bits.push_back(r.is_input ? v[r.index] : st.latch[r.index]);
                const double i =
                    sum_current(circuits[gi].inputs, bits, circuits[gi].bias, params);
                st.min_abs_current[gi] = std::min(st.min_abs_current[gi], std::abs(i));
                const DwsResult dr = dws_apply(st.dws[gi], i, params);
                st.dws[gi] = dr.state;
                if (dr.under_threshold) {
                    ++st.under_threshold_count;
                    if (st.events.size() < SimState::kMaxLoggedEvents)
                        st.events.push_back({gi, c, std::abs(i)});
                }
                next_latch[gi] = read_divider(dr.state, params) > v_thresh ? 1 : 0;
            }
        }
        st.latch.swap(next_latch);
    }
    return res;
}

std::vector<std::vector<std::uint8_t>> exhaustive_vectors(std::size_t width) {
    if (width > 24)
        throw std::invalid_argument("exhaustive mode limited to 24 inputs, got " +
                                    std::to_string(width));
    std::vector<std::vector<std::uint8_t>> vs;
    const std::size_t count = std::size_t{1} << width;
    vs.reserve(count);
    for (std::size_t v = 0; v < count; ++v) {
        std::vector<std::uint8_t> bits(width);
        for (std::size_t i = 0; i < width; ++i) bits[i] = (v >> i) & 1u;
        vs.push_back(std::move(bits));
    }
    return vs;
}

std::vector<std::vector<std::uint8_t>> random_vectors(std::size_t width, std::size_t n,
                                                      std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::vector<std::uint8_t>> vs;
    vs.reserve(n);
    std::uint64_t pool = 0;
    int remaining = 0;
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<std::uint8_t> bits(width);
        for (std::size_t i = 0; i < width; ++i) {
            if (remaining == 0) {
                pool = rng();
                remaining = 64;
            }
            bits[i] = pool & 1u;
            pool >>= 1;
            --remaining;
        }
        vs.push_back(std::move(bits));
    }
    return vs;
}

EquivalenceReport check_vectors(const Netlist& netlist, const TlgNetwork& net,
                                std::span<const std::vector<std::uint8_t>> vectors,
                                const DeviceParams& params,
                                const VariationSample* variation) {
    if (netlist.inputs != net.inputs || netlist.outputs != net.outputs)
        throw std::invalid_argument("netlist and network interfaces differ");

    EquivalenceReport rep;
    SimResult sim = simulate(net, vectors, params, variation);
    rep.vectors_tested = vectors.size();
    for (std::size_t t = 0; t < vectors.size(); ++t) {
        if (sim.outputs[t] != netlist.eval(vectors[t])) {
            ++rep.mismatches;
            if (rep.mismatched_vectors.size() < 64) rep.mismatched_vectors.push_back(t);
        }
    }
    rep.sim_state = std::move(sim.state);
    return rep;
}

EquivalenceReport equivalence_exhaustive(const Netlist& netlist, const TlgNetwork& net,
                                         const DeviceParams& params) {
    auto vs = exhaustive_vectors(netlist.inputs.size());
    return check_vectors(netlist, net, vs, params);
}

EquivalenceReport equivalence_random(const Netlist& netlist, const TlgNetwork& net,
                                     const DeviceParams& params, std::size_t n,
                                     std::uint64_t seed) {
    auto vs = random_vectors(netlist.inputs.size(), n, seed);
    return check_vectors(netlist, net, vs, params);
}

MarginReport monte_carlo(const Netlist& netlist, const TlgNetwork& net,
                         const DeviceParams& params, std::size_t trials,
                         std::size_t vectors_per_trial, std::uint64_t seed,
                         unsigned jobs) {
    if (trials == 0) throw std::invalid_argument("trials must be >= 1");
    if (vectors_per_trial == 0) throw std::invalid_argument("vectors_per_trial must be >= 1");

    const auto counts = devices_per_gate(net);

    struct TrialOutcome {
        std::size_t mismatches = 0;
        std::size_t under_threshold = 0;
        std::vector<double> gate_min;
    };
    std::vector<TrialOutcome> outcomes(trials);

    auto run_trial = [&](std::size_t t) {
        const std::uint64_t trial_seed = seed + t;
        VariationSample var = mc_sample(counts, params, trial_seed);
        auto vectors = random_vectors(net.inputs.size(), vectors_per_trial,
                                      trial_seed ^ 0x5bf0361ad65a55d5ull);
        EquivalenceReport rep = check_vectors(netlist, net, vectors, params, &var);
        outcomes[t] = TrialOutcome{rep.mismatches, rep.sim_state.under_threshold_count,
                                   std::move(rep.sim_state.min_abs_current)};
    };

    const unsigned workers = std::max(1u, std::min<unsigned>(jobs, trials));
    if (workers == 1) {
        for (std::size_t t = 0; t < trials; ++t) run_trial(t);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t t = w; t < trials; t += workers) run_trial(t);
            });
        }
        for (auto& th : pool) th.join();
    }

    MarginReport rep;
    rep.trials = trials;
    rep.per_gate_min_abs_current.assign(net.gates.size(),
                                        std::numeric_limits<double>::infinity());
    for (const TrialOutcome& o : outcomes) {
        rep.mismatch_count += o.mismatches;
        rep.under_threshold_events += o.under_threshold;
        rep.failed_trials += o.mismatches > 0;
        for (std::size_t g = 0; g < o.gate_min.size(); ++g)
            rep.per_gate_min_abs_current[g] =
                std::min(rep.per_gate_min_abs_current[g], o.gate_min[g]);
    }
    rep.yield = 1.0 - static_cast<double>(rep.failed_trials) / static_cast<double>(trials);
    for (double m : rep.per_gate_min_abs_current)
        rep.min_margin_ratio = std::min(rep.min_margin_ratio, m / params.i_c);
    return rep;
}

MarginProfile margin_profile(const TlgNetwork& net, const DeviceParams& params) {
    const auto circuits = build_circuits(net, params);
    MarginProfile prof;
    prof.min_abs_current = std::numeric_limits<double>::infinity();
    prof.per_gate_min.reserve(net.gates.size());
    std::vector<std::uint8_t> bits;
    for (std::size_t gi = 0; gi < net.gates.size(); ++gi) {
        const std::size_t k = net.gates[gi].fanins.size();
        double gate_min = std::numeric_limits<double>::infinity();
        for (std::size_t combo = 0; combo < (std::size_t{1} << k); ++combo) {
            bits.assign(k, 0);
            for (std::size_t i = 0; i < k; ++i) bits[i] = (combo >> i) & 1u;
            const double i_total =
                sum_current(circuits[gi].inputs, bits, circuits[gi].bias, params);
            gate_min = std::min(gate_min, std::abs(i_total));
            // input-only summation: bias contribution removed
            const double i_inputs = i_total - params.delta_v * circuits[gi].bias.difference();
            prof.max_input_current = std::max(prof.max_input_current, std::abs(i_inputs));
        }
        prof.per_gate_min.push_back(gate_min);
        prof.min_abs_current = std::min(prof.min_abs_current, gate_min);
    }
    return prof;
}

}  // namespace mtl
