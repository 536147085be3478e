#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "srlab/complex.hpp"
#include "srlab/graph.hpp"

namespace srlab {

/// Names of the bundled fixtures. SIMPLEX_k is generated for any k in 0..64.
std::vector<std::string> fixture_names();
/// Text of a bundled fixture in the facet-list (or, for *.graph, edge-list) format.
std::optional<std::string> fixture_text(std::string_view name);

/// Throws std::invalid_argument for unknown names.
Complex fixture_complex(std::string_view name);
Graph fixture_graph(std::string_view name);

} // namespace srlab
