#pragma once

#include "fairdiv/model.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fairdiv {

// Chores graphs here have every weight <= 0 and at most one edge per vertex pair;
// self-loops are allowed. Edge weights may differ between the two endpoints.

// Throws InputError on a positive weight and PreconditionError on parallel edges.
void require_chores_graph(const Multigraph& g);

// Each vertex receives at most one edge that is negative to it.
bool chores_graph_ef1(const Multigraph& g, const Receivers& recv);

// Edges that are zero to an endpoint go to that endpoint (the smaller one if both). The
// remaining edges must form components with no more edges than vertices; each unique
// cycle is oriented cyclically and everything else away from it (or away from the
// smallest vertex of a tree). nullopt when some component has too many edges.
std::optional<Orientation> ef1_orient_graph(const Multigraph& g);

// Vertex cover of `edges` with at most one vertex from each set in `p` and none from `d`.
struct PdCoverInstance {
    int vertices = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::vector<int>> p;
    std::vector<int> d;
};

std::vector<std::string> validate_pd(const PdCoverInstance& pd);
bool is_pd_cover(const PdCoverInstance& pd, const std::vector<int>& cover);

// Solved through 2SAT; the returned (sorted) cover is re-checked before it is returned.
std::optional<std::vector<int>> find_pd_vertex_cover(const PdCoverInstance& pd);

enum class EdgeTag { dummy, negative };

// Every edge is zero to both endpoints (dummy) or negative to both (negative).
struct ObjectiveChoresGraph {
    Multigraph g;
    std::vector<EdgeTag> tags;
};

// Throws PreconditionError when some edge is zero to one endpoint only.
ObjectiveChoresGraph make_objective(const Multigraph& g);

// EFX0 for objective graphs: every vertex receives a single edge or only dummy edges.
bool objective_efx0(const ObjectiveChoresGraph& og, const Receivers& recv);

struct NegativeComponent {
    std::vector<int> vertices;
    std::vector<int> negative_edges;
};

// Components of the negative edges (isolated vertices included), ordered by smallest vertex.
std::vector<NegativeComponent> negative_components(const ObjectiveChoresGraph& og);

std::optional<Orientation> efx_orient_objective(const ObjectiveChoresGraph& og);

// Every edge that is zero to exactly one endpoint i and negative to the other j is
// replaced by a dummy edge i-k and a negative edge k-j through a new vertex k; the edge
// goes to i when i-k goes to i, and to j otherwise.
std::optional<Orientation> efx_orient_chores(const Multigraph& g);

}  // namespace fairdiv
