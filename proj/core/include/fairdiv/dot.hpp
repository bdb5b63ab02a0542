#pragma once

#include "fairdiv/model.hpp"

#include <optional>
#include <string>

namespace fairdiv {

struct DotOptions {
    // Solid edges for heavy (goods) or negative (chores) edges, dashed for light or dummy
    // ones, with heavier pen for the solid class.
    bool weight_classes = false;
};

// Deterministic Graphviz text. Without an orientation the output is an undirected `graph`;
// with one it is a `digraph` whose edges point at their receivers (edges left open by a
// partial orientation are drawn with dir=none). Throws InputError when the orientation
// names an unknown edge or a vertex that is not an endpoint.
std::string export_dot(const Multigraph& g, const std::optional<Orientation>& pi = std::nullopt,
                       const DotOptions& options = {});

}  // namespace fairdiv
