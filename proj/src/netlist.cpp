// mtlsim: netlist.cpp

#include "mtl/netlist.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <queue>
#include <sstream>

namespace mtl {

namespace {

constexpr std::size_t kMaxArity = 16;

std::string upper(std::string s) {
    for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return s;
}

bool parse_func(const std::string& word, GateFunc& out) {
    const std::string u = upper(word);
    if (u == "AND") out = GateFunc::AND;
    else if (u == "NAND") out = GateFunc::NAND;
    else if (u == "OR") out = GateFunc::OR;
    else if (u == "NOR") out = GateFunc::NOR;
    else if (u == "XOR") out = GateFunc::XOR;
    else if (u == "XNOR") out = GateFunc::XNOR;
    else if (u == "NOT") out = GateFunc::NOT;
    else if (u == "BUF" || u == "BUFF") out = GateFunc::BUF;
    else return false;
    return true;
}

std::string strip(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

}  // namespace

const char* to_string(GateFunc f) {
    switch (f) {
        case GateFunc::AND: return "AND";
        case GateFunc::NAND: return "NAND";
        case GateFunc::OR: return "OR";
        case GateFunc::NOR: return "NOR";
        case GateFunc::XOR: return "XOR";
        case GateFunc::XNOR: return "XNOR";
        case GateFunc::NOT: return "NOT";
        case GateFunc::BUF: return "BUF";
    }
    return "?";
}

std::uint8_t eval_gate_func(GateFunc f, std::span<const std::uint8_t> bits) {
    switch (f) {
        case GateFunc::AND:
        case GateFunc::NAND: {
            std::uint8_t v = 1;
            for (std::uint8_t b : bits) v &= b;
            return f == GateFunc::AND ? v : static_cast<std::uint8_t>(v ^ 1u);
        }
        case GateFunc::OR:
        case GateFunc::NOR: {
            std::uint8_t v = 0;
            for (std::uint8_t b : bits) v |= b;
            return f == GateFunc::OR ? v : static_cast<std::uint8_t>(v ^ 1u);
        }
        case GateFunc::XOR:
        case GateFunc::XNOR: {
            std::uint8_t v = 0;
            for (std::uint8_t b : bits) v ^= b;
            return f == GateFunc::XOR ? v : static_cast<std::uint8_t>(v ^ 1u);
        }
        case GateFunc::NOT: return bits[0] ^ 1u;
        case GateFunc::BUF: return bits[0];
    }
    return 0;
}

SignalRef Netlist::resolve(const std::string& signal) const {
    auto it = index_.find(signal);
    if (it == index_.end()) throw ParseError("undefined signal '" + signal + "'");
    return it->second;
}

void Netlist::finalize() {
    index_.clear();
    topo_.clear();

    for (std::size_t i = 0; i < inputs.size(); ++i) {
        if (!index_.emplace(inputs[i], SignalRef{true, i}).second)
            throw ParseError("duplicate definition of '" + inputs[i] + "'");
    }
    for (std::size_t g = 0; g < gates.size(); ++g) {
        if (!index_.emplace(gates[g].id, SignalRef{false, g}).second)
            throw ParseError("duplicate definition of '" + gates[g].id + "'", gates[g].line);
    }

    for (const Gate& g : gates) {
        const bool unary = g.func == GateFunc::NOT || g.func == GateFunc::BUF;
        if (g.fanins.empty())
            throw ParseError("gate '" + g.id + "' has no fanins", g.line);
        if (unary && g.fanins.size() != 1)
            throw ParseError("gate '" + g.id + "' of type " + to_string(g.func) +
                                 " must have exactly one fanin",
                             g.line);
        if (g.fanins.size() > kMaxArity)
            throw ParseError("gate '" + g.id + "' exceeds fan-in bound of " +
                                 std::to_string(kMaxArity),
                             g.line);
        for (const std::string& f : g.fanins) {
            if (index_.count(f) == 0)
                throw ParseError("undefined signal '" + f + "' in gate '" + g.id + "'",
                                 g.line);
            if (f == g.id) throw ParseError("gate '" + g.id + "' feeds itself", g.line);
        }
    }
    for (const std::string& o : outputs) {
        if (index_.count(o) == 0)
            throw ParseError("declared output '" + o + "' is not driven");
    }

    // Kahn with a min-heap over declaration index: the unique
    // lexicographically-first topological order, or a cycle report.
    std::vector<std::size_t> pending(gates.size(), 0);
    std::vector<std::vector<std::size_t>> consumers(gates.size());
    for (std::size_t g = 0; g < gates.size(); ++g) {
        for (const std::string& f : gates[g].fanins) {
            SignalRef r = index_.at(f);
            if (!r.is_input) {
                ++pending[g];
                consumers[r.index].push_back(g);
            }
        }
    }
    std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
    for (std::size_t g = 0; g < gates.size(); ++g)
        if (pending[g] == 0) ready.push(g);
    while (!ready.empty()) {
        std::size_t g = ready.top();
        ready.pop();
        topo_.push_back(g);
        for (std::size_t c : consumers[g])
            if (--pending[c] == 0) ready.push(c);
    }
    if (topo_.size() != gates.size()) {
        for (std::size_t g = 0; g < gates.size(); ++g)
            if (pending[g] != 0)
                throw ParseError("combinational cycle through gate '" + gates[g].id + "'",
                                 gates[g].line);
    }
}

std::vector<std::uint8_t> Netlist::eval(std::span<const std::uint8_t> input_vector) const {
    if (input_vector.size() != inputs.size())
        throw std::invalid_argument("input vector has " + std::to_string(input_vector.size()) +
                                    " bits, netlist declares " + std::to_string(inputs.size()));
    std::vector<std::uint8_t> value(gates.size(), 0);
    std::vector<std::uint8_t> bits;
    for (std::size_t g : topo_) {
        const Gate& gate = gates[g];
        bits.clear();
        for (const std::string& f : gate.fanins) {
            SignalRef r = index_.at(f);
            bits.push_back(r.is_input ? input_vector[r.index] : value[r.index]);
        }
        value[g] = eval_gate_func(gate.func, bits);
    }
    std::vector<std::uint8_t> out;
    out.reserve(outputs.size());
    for (const std::string& o : outputs) {
        SignalRef r = index_.at(o);
        out.push_back(r.is_input ? input_vector[r.index] : value[r.index]);
    }
    return out;
}

std::string Netlist::to_bench() const {
    std::ostringstream os;
    os << "# " << (name.empty() ? "netlist" : name) << "\n";
    for (const std::string& s : inputs) os << "INPUT(" << s << ")\n";
    for (const std::string& s : outputs) os << "OUTPUT(" << s << ")\n";
    for (const Gate& g : gates) {
        os << g.id << " = " << to_string(g.func) << "(";
        for (std::size_t i = 0; i < g.fanins.size(); ++i) {
            if (i) os << ", ";
            os << g.fanins[i];
        }
        os << ")\n";
    }
    return os.str();
}

std::size_t Netlist::max_fanin() const {
    std::size_t m = 0;
    for (const Gate& g : gates) m = std::max(m, g.fanins.size());
    return m;
}

Netlist parse_bench(const std::string& text, const std::string& name) {
    Netlist nl;
    nl.name = name;

    std::istringstream is(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(is, raw)) {
        ++lineno;
        std::string line = raw;
        if (auto pos = line.find('#'); pos != std::string::npos) line.resize(pos);
        line = strip(line);
        if (line.empty()) continue;

        auto paren_arg = [&](std::size_t open) -> std::string {
            std::size_t close = line.rfind(')');
            if (close == std::string::npos || close < open)
                throw ParseError("missing ')'", lineno);
            if (!strip(line.substr(close + 1)).empty())
                throw ParseError("trailing text after ')'", lineno);
            std::string arg = strip(line.substr(open + 1, close - open - 1));
            if (arg.empty()) throw ParseError("empty signal name", lineno);
            return arg;
        };

        const std::size_t eq_pos = line.find('=');
        const std::size_t open_pos = line.find('(');
        const bool is_directive =
            eq_pos == std::string::npos ||
            (open_pos != std::string::npos && open_pos < eq_pos);
        if (is_directive) {
            if (open_pos == std::string::npos) throw ParseError("missing '('", lineno);
            const std::string head = upper(strip(line.substr(0, open_pos)));
            const bool is_input = head == "INPUT";
            if (!is_input && head != "OUTPUT")
                throw ParseError("unrecognized directive '" + head + "'", lineno);
            std::string arg = paren_arg(open_pos);
            if (arg.find_first_of(" \t,()=") != std::string::npos)
                throw ParseError("invalid signal name '" + arg + "'", lineno);
            if (is_input) {
                nl.inputs.push_back(arg);
            } else {
                if (std::find(nl.outputs.begin(), nl.outputs.end(), arg) != nl.outputs.end())
                    throw ParseError("duplicate output declaration '" + arg + "'", lineno);
                nl.outputs.push_back(arg);
            }
            continue;
        }

        const std::size_t eq = eq_pos;
        Gate g;
        g.line = lineno;
        g.id = strip(line.substr(0, eq));
        if (g.id.empty() || g.id.find_first_of(" \t,()") != std::string::npos)
            throw ParseError("invalid gate name '" + g.id + "'", lineno);

        std::size_t open = line.find('(', eq);
        if (open == std::string::npos) throw ParseError("missing '(' in gate definition", lineno);
        std::string func = strip(line.substr(eq + 1, open - eq - 1));
        if (!parse_func(func, g.func))
            throw ParseError("unknown gate function '" + func + "'", lineno);

        std::string args = paren_arg(open);
        std::size_t start = 0;
        while (true) {
            std::size_t comma = args.find(',', start);
            std::string tok = strip(comma == std::string::npos ? args.substr(start)
                                                               : args.substr(start, comma - start));
            if (tok.empty() || tok.find_first_of(" \t") != std::string::npos)
                throw ParseError("malformed fanin list", lineno);
            g.fanins.push_back(tok);
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        nl.gates.push_back(std::move(g));
    }

    nl.finalize();
    return nl;
}

Netlist load_bench_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    std::string stem = path;
    if (auto p = stem.find_last_of("/\\"); p != std::string::npos) stem.erase(0, p + 1);
    if (auto p = stem.rfind('.'); p != std::string::npos) stem.resize(p);
    return parse_bench(ss.str(), stem);
}

}  // namespace mtl
