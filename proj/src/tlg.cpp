// mtlsim: tlg.cpp

#include "mtl/tlg.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace mtl {

using nlohmann::json;

std::size_t TlgNetwork::logic_count() const {
    std::size_t n = 0;
    for (const TlgGate& g : gates) n += g.role == TlgRole::logic;
    return n;
}

std::size_t TlgNetwork::buffer_count() const { return gates.size() - logic_count(); }

std::size_t TlgNetwork::fanout_edge_count() const {
    std::size_t n = 0;
    for (const TlgGate& g : gates) n += g.fanins.size();
    return n;
}

std::uint8_t tlg_eval(const TlgGate& gate, std::span<const std::uint8_t> inputs,
                      bool mappable) {
    if (inputs.size() != gate.fanins.size())
        throw std::invalid_argument("tlg_eval: input count mismatch for '" + gate.id + "'");
    int sum = gate.bias;
    for (std::size_t i = 0; i < inputs.size(); ++i)
        if (inputs[i]) sum += gate.weights[i];
    if (mappable && sum == 0)
        throw std::logic_error("tlg_eval: zero sum in gate '" + gate.id +
                               "' (corrupt weight assignment)");
    return sum > 0 ? 1 : 0;
}

std::vector<std::uint8_t> tlg_eval_network(const TlgNetwork& net,
                                           std::span<const std::uint8_t> input_vector) {
    if (input_vector.size() != net.inputs.size())
        throw std::invalid_argument("input vector width mismatch");
    std::vector<std::uint8_t> value(net.gates.size(), 0);
    std::vector<std::uint8_t> bits;
    for (const auto& stage : net.stages) {
        for (std::size_t g : stage) {
            const TlgGate& gate = net.gates[g];
            bits.clear();
            for (const TlgRef& r : gate.fanins)
                bits.push_back(r.is_input ? input_vector[r.index] : value[r.index]);
            value[g] = tlg_eval(gate, bits, net.mappable);
        }
    }
    std::vector<std::uint8_t> out;
    out.reserve(net.output_refs.size());
    for (const TlgRef& r : net.output_refs)
        out.push_back(r.is_input ? input_vector[r.index] : value[r.index]);
    return out;
}

void TlgNetwork::validate() const {
    if (output_refs.size() != outputs.size())
        throw std::logic_error("output reference count mismatch");

    std::vector<int> stage_of(gates.size(), -2);
    std::size_t staged = 0;
    for (std::size_t s = 0; s < stages.size(); ++s) {
        for (std::size_t g : stages[s]) {
            if (g >= gates.size()) throw std::logic_error("stage references unknown gate");
            if (gates[g].stage != static_cast<int>(s))
                throw std::logic_error("gate '" + gates[g].id + "' stage tag mismatch");
            stage_of[g] = static_cast<int>(s);
            ++staged;
        }
    }
    if (staged != gates.size()) throw std::logic_error("unstaged gates present");

    for (const TlgGate& g : gates) {
        if (g.weights.size() != g.fanins.size())
            throw std::logic_error("weight/fanin arity mismatch in '" + g.id + "'");
        for (const TlgRef& r : g.fanins) {
            const int prod = r.is_input ? -1 : stage_of[r.index];
            if (prod != g.stage - 1)
                throw std::logic_error("stage discipline violated at gate '" + g.id + "'");
        }
        if (mappable) {
            if (g.fanins.size() > 2)
                throw std::logic_error("mappable gate '" + g.id + "' has fan-in > 2");
            for (int w : g.weights)
                if (w != 2 && w != -2)
                    throw std::logic_error("weight outside {+2,-2} in '" + g.id + "'");
            if (g.bias < -3 || g.bias > 3 || g.bias % 2 == 0)
                throw std::logic_error("bias outside {-3,-1,+1,+3} in '" + g.id + "'");
        }
    }
    const int last = static_cast<int>(stages.size()) - 1;
    for (const TlgRef& r : output_refs) {
        if (r.is_input) {
            if (!stages.empty())
                throw std::logic_error("primary-input output ref in a staged network");
        } else if (stage_of[r.index] != last) {
            throw std::logic_error("output not produced at the final stage");
        }
    }

    if (!fanouts.empty()) {
        if (fanouts.size() != gates.size())
            throw std::logic_error("fanout table size mismatch");
        std::vector<std::vector<std::size_t>> expect(gates.size());
        for (std::size_t g = 0; g < gates.size(); ++g)
            for (const TlgRef& r : gates[g].fanins)
                if (!r.is_input) expect[r.index].push_back(g);
        if (expect != fanouts) throw std::logic_error("fanout table inconsistent");
    }
}

std::string tlg_to_json(const TlgNetwork& net) {
    auto ref_json = [](const TlgRef& r) {
        return json{{"kind", r.is_input ? "input" : "gate"}, {"index", r.index}};
    };
    json j;
    j["name"] = net.name;
    j["mappable"] = net.mappable;
    j["inputs"] = net.inputs;
    j["outputs"] = net.outputs;
    json refs = json::array();
    for (const TlgRef& r : net.output_refs) refs.push_back(ref_json(r));
    j["output_refs"] = refs;
    j["stages"] = net.stages;
    json gates = json::array();
    for (const TlgGate& g : net.gates) {
        json fanins = json::array();
        for (const TlgRef& r : g.fanins) fanins.push_back(ref_json(r));
        gates.push_back(json{{"id", g.id},
                             {"role", g.role == TlgRole::buffer ? "buffer" : "logic"},
                             {"stage", g.stage},
                             {"fanins", fanins},
                             {"weights", g.weights},
                             {"bias", g.bias}});
    }
    j["gates"] = gates;
    j["fanouts"] = net.fanouts;
    return j.dump(2) + "\n";
}

TlgNetwork tlg_from_json(const std::string& text) {
    auto parse_ref = [](const json& j) {
        TlgRef r;
        r.is_input = j.at("kind").get<std::string>() == "input";
        r.index = j.at("index").get<std::size_t>();
        return r;
    };
    json j = json::parse(text);
    TlgNetwork net;
    net.name = j.at("name").get<std::string>();
    net.mappable = j.at("mappable").get<bool>();
    net.inputs = j.at("inputs").get<std::vector<std::string>>();
    net.outputs = j.at("outputs").get<std::vector<std::string>>();
    for (const json& r : j.at("output_refs")) net.output_refs.push_back(parse_ref(r));
    net.stages = j.at("stages").get<std::vector<std::vector<std::size_t>>>();
    for (const json& gj : j.at("gates")) {
        TlgGate g;
        g.id = gj.at("id").get<std::string>();
        g.role = gj.at("role").get<std::string>() == "buffer" ? TlgRole::buffer
                                                              : TlgRole::logic;
        g.stage = gj.at("stage").get<int>();
        for (const json& r : gj.at("fanins")) g.fanins.push_back(parse_ref(r));
        g.weights = gj.at("weights").get<std::vector<int>>();
        g.bias = gj.at("bias").get<int>();
        net.gates.push_back(std::move(g));
    }
    net.fanouts = j.at("fanouts").get<std::vector<std::vector<std::size_t>>>();
    net.validate();
    return net;
}

void tlg_save(const TlgNetwork& net, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write '" + path + "'");
    f << tlg_to_json(net);
}

TlgNetwork tlg_load(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return tlg_from_json(ss.str());
}

}  // namespace mtl
