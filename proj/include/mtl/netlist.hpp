// mtlsim: netlist.hpp
// Gate-level combinational netlist: .bench ingestion, validation,
// topological ordering and a reference logic evaluator.

#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace mtl {

enum class GateFunc : std::uint8_t { AND, NAND, OR, NOR, XOR, XNOR, NOT, BUF };

const char* to_string(GateFunc f);

// Thrown on malformed .bench input or a netlist that fails validation.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string msg, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg
                                      : std::move(msg)),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

struct Gate {
    std::string id;                   // output signal name
    GateFunc func = GateFunc::AND;
    std::vector<std::string> fanins;  // declared order
    int line = 0;                     // source line, for diagnostics
};

// Reference to a signal: either a primary input or a gate output.
struct SignalRef {
    bool is_input = false;
    std::size_t index = 0;  // input position or gate index

    friend bool operator==(const SignalRef&, const SignalRef&) = default;
};

class Netlist {
public:
    std::string name;
    std::vector<std::string> inputs;   // declaration order
    std::vector<std::string> outputs;  // declaration order
    std::vector<Gate> gates;           // declaration order

    // Validates structure (unique names, defined fanins, arity bounds,
    // acyclicity, driven outputs) and builds the signal index and a
    // topological gate order. Throws ParseError on violation.
    void finalize();

    SignalRef resolve(const std::string& signal) const;
    bool has_signal(const std::string& signal) const { return index_.count(signal) != 0; }

    // Gate indices such that every gate appears after all its gate fanins;
    // ties broken by declaration order.
    const std::vector<std::size_t>& topo_order() const { return topo_; }

    // Evaluates the netlist on one input vector (positionally bound to
    // `inputs`). Returns output bits in declared output order.
    std::vector<std::uint8_t> eval(std::span<const std::uint8_t> input_vector) const;

    // Normalized .bench form (INPUT/OUTPUT lines, gates in declaration
    // order, canonical spelling and spacing).
    std::string to_bench() const;

    std::size_t max_fanin() const;

private:
    std::unordered_map<std::string, SignalRef> index_;
    std::vector<std::size_t> topo_;
};

// Parses the ISCAS-85 .bench dialect: '#' comments, INPUT(x), OUTPUT(y),
// y = FUNC(a, b, ...). Function names are case-insensitive; BUFF is
// accepted for BUF. The result is validated (see Netlist::finalize).
Netlist parse_bench(const std::string& text, const std::string& name = "");

Netlist load_bench_file(const std::string& path);

// Boolean semantics shared with everything downstream: multi-input
// XOR is parity, XNOR its complement.
std::uint8_t eval_gate_func(GateFunc f, std::span<const std::uint8_t> bits);

}  // namespace mtl
