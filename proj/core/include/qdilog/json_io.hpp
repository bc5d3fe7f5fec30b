#pragma once

#include <string>
#include <string_view>

#include "qdilog/charge.hpp"
#include "qdilog/diagram.hpp"
#include "qdilog/rmatrix.hpp"
#include "qdilog/statesum.hpp"
#include "qdilog/tetra.hpp"

namespace qdilog {

// JSON text for the public data types. Schemas: docs/json-schemas.md.
// Every *_from_json throws ParseError on malformed input.

/// {N, k, entries: row-major [[re, im], ...]}
std::string to_json(const RTensor& r, int indent = -1);
RTensor rtensor_from_json(std::string_view text);

/// {crossings, edges, faces}
std::string to_json(const LinkDiagram& d, int indent = -1);
/// Rebuilds a diagram from the crossings and loops of diagram JSON.
LinkDiagram diagram_from_json(std::string_view text);

/// {N, digest, charges: [{crossing, sector, value}, ...]}
std::string to_json(const ChargeAssignment& a, int indent = -1);
ChargeAssignment charges_from_json(std::string_view text);

/// {N, k, value_re, value_im, invariant_re, invariant_im, abs, engine,
///  charge_digest, cut_edge[, magnitude]}
std::string to_json(const InvariantResult& r, int indent = -1);
InvariantResult invariant_from_json(std::string_view text);

std::string to_json(const OctahedronReport& r, int indent = -1);
OctahedronReport octahedron_from_json(std::string_view text);

}  // namespace qdilog
