#pragma once

// JSON reading and writing for algebras, morphisms and elements.
//
//   curved Lie algebra: { "kind": "curved_lie", "basis": [{"name": "x", "degree": -1}, ...],
//                         "brackets": [{"left": "x", "right": "y", "value": [["c", "1"]]}, ...],
//                         "differential": [{"on": "x", "value": [["y", "1"]]}, ...],
//                         "curvature": [["w", "1"]], "weights": [1, 2, ...] (optional) }
//   cdga:               { "kind": "cdga", "basis": [{"name": "1", "degree": 0}, {"name": "u", "degree": 2}],
//                         "unit": "1", "products": [{"left": .., "right": .., "value": ..}], "differential": [...] }
//
// Degrees in cdga files are cohomological and are negated on ingest. Each unordered pair appears at most once;
// the partner entry follows from (anti)symmetry. Products with the unit are implicit. Scalars are strings "p/q"
// (integers may also be given as JSON numbers).

#include "curvedlie/cdga.hpp"
#include "curvedlie/curved_lie.hpp"
#include "curvedlie/free_lie.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace curvedlie {

using Json = nlohmann::ordered_json;

/// Malformed input: JSON syntax (with line and column) or a bad field (with its path).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses JSON text; `origin` names the source in diagnostics.
Json parse_json(const std::string& text, const std::string& origin = "input");
Json read_json_file(const std::string& path);
/// Two-space indented, trailing newline.
std::string dump_json(const Json& j);

Json scalar_json(const Scalar& s);
Json element_json(const GradedSpace& space, const Element& x);
Element element_from_json(const GradedSpace& space, const Json& j, const std::string& where = "element");
/// "x:1,y:-1/2"; a bare name means coefficient 1; the empty string is zero.
Element parse_compact_element(const GradedSpace& space, const std::string& text);

Json algebra_json(const CurvedLieAlgebra& g);
CurvedLieAlgebra algebra_from_json(const Json& j);

Json cdga_json(const Cdga& a);
Cdga cdga_from_json(const Json& j);

/// { "kind": "curved_morphism", "map": [{"on": .., "value": ..}], "alpha": [...] }; zero columns omitted.
Json morphism_json(const CurvedMorphism& m);
CurvedMorphism morphism_from_json(const Json& j, const AlgebraPtr& source, const AlgebraPtr& target);

/// { "kind": "cdga_morphism", "map": [...] }.
Json cdga_morphism_json(const CdgaMorphism& f);
CdgaMorphism cdga_morphism_from_json(const Json& j, const CdgaPtr& source, const CdgaPtr& target);

/// Generators, weight cap and basis words as nested arrays, e.g. ["[,]", "v", ["[,]", "v", "v"]].
Json free_lie_json(const FreeLieTruncation& L);

Json validation_json(const ValidationReport& r);

}  // namespace curvedlie
