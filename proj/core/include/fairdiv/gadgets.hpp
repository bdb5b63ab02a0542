#pragma once

#include "fairdiv/efx_multigraph.hpp"
#include "fairdiv/model.hpp"

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace fairdiv {

enum class GateKind { input, true_const, not_gate, or_gate };

struct Gate {
    std::string id;
    GateKind kind = GateKind::input;
    std::vector<std::string> inputs;
};

// Gates are listed so that every gate only refers to earlier ones.
struct Circuit {
    std::vector<Gate> gates;
    std::string output;
};

std::vector<std::string> validate_circuit(const Circuit& c);

// One statement per line: `id = INPUT`, `id = TRUE`, `id = NOT a`, `id = OR a b`, and a
// final `OUTPUT id`. Blank lines and `#` comments are ignored. AND is rejected with a
// hint to rewrite it as NOT(OR(NOT a, NOT b)). Throws InputError.
Circuit parse_circuit(std::string_view text);
std::string format_circuit(const Circuit& c);

// Value of every gate under an assignment to the INPUT gates (in order of appearance).
std::map<std::string, bool> evaluate_circuit(const Circuit& c, const std::vector<bool>& inputs);
int circuit_input_count(const Circuit& c);

struct CircuitGadget {
    BiValuedGraph bg;
    // Two-colouring; a wire edge means true when it points at its black endpoint.
    std::vector<bool> black;
    // Heavy edge carrying each gate's value (before any duplication).
    std::map<std::string, int> wire;
    int output_edge = -1;
};

// Assembles the reduction multigraph: a heavy edge per INPUT, a TRUE gadget per TRUE
// gate, NOT and OR gadgets per gate, duplication gadgets chained for every wire read more
// than once, and a TRUE gadget sharing its forced edge with the output wire. Throws
// PreconditionError unless q >= 2 and alpha > q * beta >= 0.
CircuitGadget build_circuit_gadget(const Circuit& c, int q, const Rational& alpha, const Rational& beta);

// Two vertices joined by one heavy edge with q light self-loops at each end.
BiValuedGraph ntom_pair_graph(int q, const Rational& alpha, const Rational& beta);

enum class PartitionCriterion { ef1, efx0 };

// Vertices a = 0 and b = 1, an edge of weight -s_i per element, and a self-loop at each
// vertex of weight -(max s_i + 1) for EF1 or 0 for EFX0.
Multigraph build_partition_selfloop_gadget(const std::vector<long>& s, PartitionCriterion criterion);

// Vertices a = 0, b = 1, c = 2, an a-b edge of weight -s_i per element and two edges of
// weight -sum(s) between c and each of a, b.
Multigraph build_partition_triangle_gadget(const std::vector<long>& s);

}  // namespace fairdiv
