#pragma once

#include <string>

#include "json.hpp"
#include "skewrank/census.hpp"

namespace skewrank {

// All file formats are JSON with a fixed key order (insertion-ordered), so
// equal values serialize byte-identically.
using Json = nlohmann::ordered_json;

// Base field:   {"type":"prime","p":3}
//               {"type":"ext","p":2,"k":2,"modulus":[1,1,1]}   (little-endian, monic)
//               {"type":"rationals"}
Json field_to_json(const FieldSpecPtr& f);
FieldSpecPtr field_from_json(const Json& j);

// Ring:         {"type":"gf","p":2,"k":1}
//               {"type":"quaternion_q"}
//               {"type":"structure_constants","base":<field>,"d":4,
//                "table":[[[...]]],"unit":0}
// where table[i][j][k] is the F-element string c_{ijk}.
Json ring_to_json(const RingPtr& r);
RingPtr ring_from_json(const Json& j);

// Matrix: row-major flat array of scalars, each scalar a length-d array of
// F-element strings (decimal enumeration index for finite F, "n" or "n/d"
// for rationals). The shape and ring come from the surrounding context.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const RingPtr& ring, int n, int p, const Json& j);

// Space file:   {"ring":<ring>,"n":2,"p":2,"offset":<matrix>,"basis":[<matrix>...]}
// Loading re-canonicalizes, so a round trip lands on the same space.
Json space_to_json(const AffineMatrixSpace& s);
AffineMatrixSpace space_from_json(const Json& j);

// Classification: {"tag":"a|b|c|not_maximal|not_bounded","P":...,"Q":...,
//                  "witness":...} with null for fields the tag does not carry.
Json classification_to_json(const ClassificationResult& res);
ClassificationResult classification_from_json(const RingPtr& ring, int n, int p, const Json& j);

// Census report: fixed key set for every kind (unused counters stay zero),
// big counts as decimal strings, seed null unless randomized. Wall time is
// deliberately absent so identical runs serialize byte-identically.
Json census_report_to_json(const CensusReport& rep);
// The same report as a two-line CSV (header + one row).
std::string census_report_to_csv(const CensusReport& rep);

// Compact ring notation used in reports and logs: "gf:2", "gf:2:2",
// "quaternion_q", or "custom:d=4".
std::string ring_brief(const RingPtr& r);

// Canonical text form: 2-space indent plus trailing newline.
std::string dump_json(const Json& j);
// Parse wrappers that convert library/IO failures into ParseError with a
// byte position (syntax) or key path (validation).
Json parse_json_text(const std::string& text);
Json load_json_file(const std::string& path);
void save_text_file(const std::string& path, const std::string& text);

}  // namespace skewrank
