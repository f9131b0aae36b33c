// mtlsim: synth.hpp
// Netlist -> threshold-logic network synthesis: fan-in decomposition,
// gate-to-weight mapping, pipeline staging with buffer insertion.

#pragma once

#include "mtl/netlist.hpp"
#include "mtl/tlg.hpp"

namespace mtl {

// Expands every gate with more fanins than `max_fanin` into a balanced
// tree (NAND/NOR as AND/OR trees with the inversion at the root).
// XOR/XNOR are always reduced to 2-input gates since they expand into
// composites during mapping. Logical function is preserved.
Netlist decompose(const Netlist& netlist, std::size_t max_fanin);

// Maps a fan-in <= 2 netlist onto threshold gates with the two-level
// weight alphabet: weights in {+2,-2}, biases in {-3,-1,+1,+3}. XOR
// becomes OR + NAND + AND; XNOR additionally inverts the result.
// The returned network is unstaged (call pipeline()).
TlgNetwork map_tlg(const Netlist& netlist);

// Same structure with unit weights for fan-in bounds 3/4; the result is
// logical-only (mappable = false) and rejected by the device layer.
TlgNetwork map_tlg_unit(const Netlist& netlist, std::size_t max_fanin);

// Assigns stages and inserts buffer gates so that every fanin of a
// stage-k gate is produced at stage k-1 and every primary output is
// produced at the final stage. Consumers of one producer share buffer
// chains. Gates must be listed dependencies-first (map_tlg emits that
// order). Returns the staged network.
TlgNetwork pipeline(TlgNetwork graph);

struct SynthStats {
    std::size_t logic_gates = 0;
    std::size_t buffer_gates = 0;
    std::size_t stage_count = 0;
};

// decompose -> map -> pipeline. Fan-in bound 2 yields an MTL-mappable
// network; bounds 3 and 4 yield logical-only networks used for gate
// count comparison. Other bounds are rejected.
TlgNetwork synthesize(const Netlist& netlist, std::size_t max_fanin = 2);

SynthStats synth_stats(const TlgNetwork& net);

}  // namespace mtl
