#pragma once

#include "fairdiv/model.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fairdiv {

// Symmetric multigraph of goods whose edge weights take two values alpha > beta >= 0.
struct BiValuedGraph {
    Multigraph g;
    Rational alpha;
    Rational beta;

    bool heavy(const Edge& e) const { return e.wa == alpha; }
};

std::vector<std::string> validate_bivalued(const BiValuedGraph& bg);

// Reads alpha and beta off the weights. With a single distinct weight w every edge is
// light (beta = w, alpha = w + 1). Throws InputError for asymmetric edges, more than two
// distinct weights or negative weights.
BiValuedGraph infer_bivalued(const Multigraph& g);

// trivial: a single vertex. type1: heavy edges form a multitree with some even
// multiplicity. type2: a heavy self-loop or a cycle in the heavy skeleton. ntom: a
// multitree whose multiplicities are all odd.
enum class ComponentKind { trivial, type1, type2, ntom };
std::string to_string(ComponentKind k);

struct HeavyComponent {
    std::vector<int> vertices;
    ComponentKind kind = ComponentKind::trivial;
    bool ntom = false;
    // type1: smallest pair (v, w) with an even number >= 2 of heavy edges between them.
    std::optional<std::pair<int, int>> pair;
    // type2: a heavy self-loop, or a heavy edge outside the BFS spanning tree.
    std::optional<int> witness_edge;
};

// Components of the heavy non-loop edges, ordered by smallest vertex.
std::vector<HeavyComponent> classify_components(const BiValuedGraph& bg);

struct Type1Orientation {
    Receivers partial;
    int v = 0;
    int w = 0;
};

// Splits the edges between the witness pair evenly (one light edge may stay unoriented)
// and orients a heavy spanning tree away from the pair.
Type1Orientation orient_type1(const BiValuedGraph& bg, const HeavyComponent& k);

// Orients a heavy spanning tree away from the witness vertex and gives that vertex the
// witness edge, so every vertex of the component receives exactly one heavy edge.
Receivers orient_type2(const BiValuedGraph& bg, const HeavyComponent& k);

struct TwoWaySplit {
    std::vector<int> first;
    std::vector<int> second;
};

// Indices of `weights` split so that neither side envies the other after dropping any
// single item from it. Items go in non-increasing order to the lighter side.
TwoWaySplit two_agent_efx_split(const std::vector<Rational>& weights);

struct MatchingPartial {
    Receivers partial;
    // Unoriented edges; pairwise vertex-disjoint and all light.
    std::vector<int> matching;
};

// Requires every connected component to contain a non-trivial heavy component, and no
// heavy component to be an NTOM.
MatchingPartial orient_all_but_matching(const BiValuedGraph& bg);

// Orients each matching edge away from an endpoint that already holds an edge from
// outside the pair (the smaller endpoint when both or neither do).
Receivers finalize_matching(const BiValuedGraph& bg, const Receivers& partial, const std::vector<int>& matching);

// Requires every heavy component to be trivial. beta = 0: edges go to their smaller
// endpoint. Otherwise in-degrees are balanced by reversing directed paths.
Receivers orient_trivial_case(const BiValuedGraph& bg);

enum class BivaluedVerdict { oriented, ntom_blocked };
std::string to_string(BivaluedVerdict v);

struct BivaluedResult {
    BivaluedVerdict verdict = BivaluedVerdict::oriented;
    std::optional<Orientation> orientation;
    std::vector<HeavyComponent> components;
    // Set when a construction failed its EFX0 check and a search produced the orientation.
    bool fallback = false;
};

// ntom_blocked when some heavy component is an NTOM; otherwise an EFX0 orientation,
// built per connected component.
BivaluedResult efx_orient_bivalued(const BiValuedGraph& bg);

}  // namespace fairdiv
