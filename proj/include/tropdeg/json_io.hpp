#pragma once
// JSON encodings of the library types. Rationals are written as strings
// "p/q" (or "p") so they round-trip exactly; readers also accept integers.
#include "tropdeg/amoeba.hpp"
#include "tropdeg/polyhedral.hpp"
#include "tropdeg/realma.hpp"
#include "tropdeg/sncmodel.hpp"
#include "tropdeg/toriclimit.hpp"
#include "tropdeg/tropical.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace tropdeg {

using Json = nlohmann::ordered_json;

/// Raised for well-formed JSON that does not match the expected schema.
class SchemaError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

Json to_json(const Rational& q);
Json to_json(const RationalVector& v);
Json to_json(const RealVector& v);
Json to_json(const Complex& z);
Json to_json(const HPolyhedron& h);
Json to_json(const PolyhedralComplex& c);
Json to_json(const TropicalPolynomial& f);
Json to_json(const WeightedSimplexMeasure& m);
Json to_json(const SncCombinatorics& m);
Json to_json(const KappaResult& k);
Json to_json(const EssentialComplex& e, const SncCombinatorics& m);
Json to_json(const PointCloud& cloud, bool with_points);
Json to_json(const ConvergenceReport& r);
Json to_json(const OmtCheck& r);
Json to_json(const MassAsymptotics& r);
Json to_json(const PushforwardReport& r);
Json to_json(const ConvexPLFunction& f);
Json to_json(const AtomicMeasure& m);
Json to_json(const BoundaryData& b);
Json to_json(const RmaSolution& s);
Json to_json(const MalogReport& r);

Rational rational_from_json(const Json& j);
RationalVector rational_vector_from_json(const Json& j);
HPolyhedron polyhedron_from_json(const Json& j, std::size_t dim);

/// {"components": [{"label": "E0", "b": 1, "a": "0"}, ...],
///  "strata": [["E0", "E1"], ...], "masses": {"E0,E1": 1.0}}
SncCombinatorics snc_from_json(const Json& j);

/// {"pieces": [{"gradient": [...], "offset": "..."}, ...] or [[gradient, offset], ...],
///  "domain": {"box": {"lo": [...], "hi": [...]}} or {"inequalities": [{"a": [...], "b": "..."}]}}
ConvexPLFunction convex_pl_from_json(const Json& j);

/// {"atoms": [{"point": [...], "mass": "..."}]}
AtomicMeasure atomic_measure_from_json(const Json& j);

/// {"points": [[...], ...], "values": [...]}
BoundaryData boundary_from_json(const Json& j);

} // namespace tropdeg
