// mtlsim: synth.cpp

#include "mtl/synth.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

namespace mtl {

namespace {

// Gate-to-weight mapping for the fan-in-2 MTL alphabet. Weights are
// even and biases odd, so every summation is odd and never zero.
struct WeightRow {
    int w = 0;
    int bias = 0;
};

WeightRow mtl_row(GateFunc f) {
    switch (f) {
        case GateFunc::AND: return {+2, -3};
        case GateFunc::OR: return {+2, -1};
        case GateFunc::NAND: return {-2, +3};
        case GateFunc::NOR: return {-2, +1};
        case GateFunc::NOT: return {-2, +1};
        case GateFunc::BUF: return {+2, -1};
        default: throw std::logic_error("no direct threshold realization");
    }
}

// Unit-weight realization for the logical-only fan-in 3/4 study.
WeightRow unit_row(GateFunc f, int fanin) {
    switch (f) {
        case GateFunc::AND: return {+1, -(fanin - 1)};
        case GateFunc::OR: return {+1, 0};
        case GateFunc::NAND: return {-1, fanin};
        case GateFunc::NOR: return {-1, +1};
        case GateFunc::NOT: return {-1, +1};
        case GateFunc::BUF: return {+1, 0};
        default: throw std::logic_error("no direct threshold realization");
    }
}

class NameMaker {
public:
    explicit NameMaker(const Netlist& nl) {
        for (const auto& s : nl.inputs) used_.insert(s);
        for (const auto& g : nl.gates) used_.insert(g.id);
    }
    std::string fresh(const std::string& base) {
        std::string cand = base;
        while (!used_.insert(cand).second) cand = base + "_" + std::to_string(++salt_);
        return cand;
    }

private:
    std::unordered_set<std::string> used_;
    unsigned salt_ = 0;
};

}  // namespace

Netlist decompose(const Netlist& netlist, std::size_t max_fanin) {
    if (max_fanin < 2) throw std::invalid_argument("fan-in bound must be >= 2");
    Netlist out;
    out.name = netlist.name;
    out.inputs = netlist.inputs;
    out.outputs = netlist.outputs;
    NameMaker names(netlist);

    auto emit = [&](std::string id, GateFunc f, std::vector<std::string> fi) {
        out.gates.push_back(Gate{std::move(id), f, std::move(fi), 0});
        return out.gates.back().id;
    };

    // Collapses one tree level: groups of `arity` signals combined by `f`.
    auto reduce = [&](std::vector<std::string> level, GateFunc f, std::size_t arity,
                      const std::string& base) {
        while (level.size() > arity) {
            std::vector<std::string> next;
            for (std::size_t i = 0; i < level.size(); i += arity) {
                std::size_t n = std::min(arity, level.size() - i);
                if (n == 1) {
                    next.push_back(level[i]);
                } else {
                    std::vector<std::string> chunk(level.begin() + i, level.begin() + i + n);
                    next.push_back(emit(names.fresh(base + "$t"), f, std::move(chunk)));
                }
            }
            level = std::move(next);
        }
        return level;
    };

    for (const Gate& g : netlist.gates) {
        const std::size_t n = g.fanins.size();

        if (n == 1) {
            // Degenerate arity: AND/OR/XOR of one signal are the signal.
            GateFunc f = (g.func == GateFunc::NAND || g.func == GateFunc::NOR ||
                          g.func == GateFunc::XNOR || g.func == GateFunc::NOT)
                             ? GateFunc::NOT
                             : GateFunc::BUF;
            emit(g.id, f, g.fanins);
            continue;
        }

        switch (g.func) {
            case GateFunc::XOR:
            case GateFunc::XNOR: {
                // Parity trees are always reduced to 2-input gates; they
                // expand into threshold composites during mapping anyway.
                auto level = reduce(g.fanins, GateFunc::XOR, 2, g.id);
                emit(g.id, g.func, std::move(level));
                break;
            }
            case GateFunc::AND:
            case GateFunc::NAND: {
                if (n <= max_fanin) {
                    emit(g.id, g.func, g.fanins);
                } else {
                    auto level = reduce(g.fanins, GateFunc::AND, max_fanin, g.id);
                    emit(g.id, g.func, std::move(level));
                }
                break;
            }
            case GateFunc::OR:
            case GateFunc::NOR: {
                if (n <= max_fanin) {
                    emit(g.id, g.func, g.fanins);
                } else {
                    auto level = reduce(g.fanins, GateFunc::OR, max_fanin, g.id);
                    emit(g.id, g.func, std::move(level));
                }
                break;
            }
            case GateFunc::NOT:
            case GateFunc::BUF:
                emit(g.id, g.func, g.fanins);
                break;
        }
    }

    out.finalize();
    return out;
}

namespace {

TlgNetwork map_common(const Netlist& netlist, bool mtl_alphabet, std::size_t max_fanin) {
    if (netlist.max_fanin() > max_fanin)
        throw std::invalid_argument("netlist exceeds fan-in bound of " +
                                    std::to_string(max_fanin) + "; run decompose first");

    TlgNetwork net;
    net.name = netlist.name;
    net.inputs = netlist.inputs;
    net.outputs = netlist.outputs;
    net.mappable = mtl_alphabet;
    NameMaker names(netlist);

    // signal name -> reference to the TLG producing it
    std::unordered_map<std::string, TlgRef> ref_of;
    for (std::size_t i = 0; i < netlist.inputs.size(); ++i)
        ref_of[netlist.inputs[i]] = TlgRef{true, i};

    auto emit = [&](std::string id, std::vector<TlgRef> fanins, WeightRow row) {
        TlgGate g;
        g.id = std::move(id);
        g.weights.assign(fanins.size(), row.w);
        g.fanins = std::move(fanins);
        g.bias = row.bias;
        net.gates.push_back(std::move(g));
        return TlgRef{false, net.gates.size() - 1};
    };

    auto row_for = [&](GateFunc f, int fanin) {
        return mtl_alphabet ? mtl_row(f) : unit_row(f, fanin);
    };

    for (std::size_t gi : netlist.topo_order()) {
        const Gate& g = netlist.gates[gi];
        std::vector<TlgRef> fi;
        fi.reserve(g.fanins.size());
        for (const std::string& s : g.fanins) fi.push_back(ref_of.at(s));
        const int n = static_cast<int>(fi.size());

        switch (g.func) {
            case GateFunc::XOR:
            case GateFunc::XNOR: {
                if (n != 2) throw std::logic_error("parity gates must be 2-input here");
                // (a OR b) AND (a NAND b); XNOR inverts the result.
                TlgRef r_or = emit(names.fresh(g.id + "$or"), fi, row_for(GateFunc::OR, 2));
                TlgRef r_nand = emit(names.fresh(g.id + "$nand"), fi, row_for(GateFunc::NAND, 2));
                if (g.func == GateFunc::XOR) {
                    ref_of[g.id] = emit(g.id, {r_or, r_nand}, row_for(GateFunc::AND, 2));
                } else {
                    TlgRef r_and =
                        emit(names.fresh(g.id + "$xor"), {r_or, r_nand}, row_for(GateFunc::AND, 2));
                    ref_of[g.id] = emit(g.id, {r_and}, row_for(GateFunc::NOT, 1));
                }
                break;
            }
            default: {
                GateFunc f = g.func;
                // Single-input symmetric gates degrade to BUF/NOT rows.
                if (n == 1 && (f == GateFunc::AND || f == GateFunc::OR)) f = GateFunc::BUF;
                if (n == 1 && (f == GateFunc::NAND || f == GateFunc::NOR)) f = GateFunc::NOT;
                ref_of[g.id] = emit(g.id, std::move(fi), row_for(f, n));
                break;
            }
        }
    }

    net.output_refs.reserve(netlist.outputs.size());
    for (const std::string& o : netlist.outputs) net.output_refs.push_back(ref_of.at(o));
    return net;
}

}  // namespace

TlgNetwork map_tlg(const Netlist& netlist) { return map_common(netlist, true, 2); }

TlgNetwork map_tlg_unit(const Netlist& netlist, std::size_t max_fanin) {
    return map_common(netlist, false, max_fanin);
}

TlgNetwork pipeline(TlgNetwork net) {
    const std::size_t n_orig = net.gates.size();

    // Longest-path level; gates arrive in topological order.
    std::vector<int> level(n_orig, 0);
    int depth = 0;
    for (std::size_t g = 0; g < n_orig; ++g) {
        int lvl = 0;
        for (const TlgRef& r : net.gates[g].fanins) {
            const int p = r.is_input ? -1 : level[r.index];
            lvl = std::max(lvl, p + 1);
        }
        level[g] = lvl;
        depth = std::max(depth, lvl + 1);
    }

    if (n_orig == 0) {
        net.stages.clear();
        net.fanouts.clear();
        for (const TlgRef& r : net.output_refs)
            if (!r.is_input) throw std::logic_error("gate output ref in an empty network");
        net.validate();
        return net;
    }

    std::unordered_set<std::string> used;
    for (const TlgGate& g : net.gates) used.insert(g.id);
    for (const std::string& s : net.inputs) used.insert(s);

    const int buf_w = net.mappable ? +2 : +1;
    const int buf_b = net.mappable ? -1 : 0;

    // Per producer, one shared chain of buffers: chain[k] re-produces the
    // producer's value at stage prod_stage + 1 + k.
    std::map<std::pair<bool, std::size_t>, std::vector<std::size_t>> chains;
    std::vector<int> gate_level = level;  // grows as buffers are added

    auto producer_level = [&](const TlgRef& r) {
        return r.is_input ? -1 : gate_level[r.index];
    };
    auto producer_id = [&](const TlgRef& r) {
        return r.is_input ? net.inputs[r.index] : net.gates[r.index].id;
    };

    // Returns a ref carrying `r`'s value produced at stage `at_stage`.
    auto buffered = [&](const TlgRef& r, int at_stage) -> TlgRef {
        const int base = producer_level(r);
        if (at_stage == base) return r;
        auto& chain = chains[{r.is_input, r.index}];
        while (static_cast<int>(chain.size()) < at_stage - base) {
            const int stage = base + 1 + static_cast<int>(chain.size());
            TlgRef prev = chain.empty() ? r : TlgRef{false, chain.back()};
            TlgGate buf;
            std::string cand = producer_id(r) + "$s" + std::to_string(stage);
            while (!used.insert(cand).second) cand += "_";
            buf.id = std::move(cand);
            buf.fanins = {prev};
            buf.weights = {buf_w};
            buf.bias = buf_b;
            buf.role = TlgRole::buffer;
            net.gates.push_back(std::move(buf));
            gate_level.push_back(stage);
            chain.push_back(net.gates.size() - 1);
        }
        return TlgRef{false, chain[static_cast<std::size_t>(at_stage - base) - 1]};
    };

    // indexed access: buffered() appends to net.gates and may reallocate
    for (std::size_t g = 0; g < n_orig; ++g) {
        const int target = level[g] - 1;
        for (std::size_t s = 0; s < net.gates[g].fanins.size(); ++s) {
            const TlgRef r = net.gates[g].fanins[s];
            net.gates[g].fanins[s] = buffered(r, target);
        }
    }
    for (std::size_t o = 0; o < net.output_refs.size(); ++o) {
        const TlgRef r = net.output_refs[o];
        net.output_refs[o] = buffered(r, depth - 1);
    }

    net.stages.assign(static_cast<std::size_t>(depth), {});
    for (std::size_t g = 0; g < net.gates.size(); ++g) {
        net.gates[g].stage = gate_level[g];
        net.stages[static_cast<std::size_t>(gate_level[g])].push_back(g);
    }
    net.fanouts.assign(net.gates.size(), {});
    for (std::size_t g = 0; g < net.gates.size(); ++g)
        for (const TlgRef& r : net.gates[g].fanins)
            if (!r.is_input) net.fanouts[r.index].push_back(g);

    net.validate();
    return net;
}

TlgNetwork synthesize(const Netlist& netlist, std::size_t max_fanin) {
    if (max_fanin == 2) return pipeline(map_tlg(decompose(netlist, 2)));
    if (max_fanin == 3 || max_fanin == 4)
        return pipeline(map_tlg_unit(decompose(netlist, max_fanin), max_fanin));
    throw std::invalid_argument("unsupported fan-in bound " + std::to_string(max_fanin) +
                                " (expected 2, 3 or 4)");
}

SynthStats synth_stats(const TlgNetwork& net) {
    return SynthStats{net.logic_count(), net.buffer_count(), net.stage_count()};
}

}  // namespace mtl
