#include "tropdeg/json_io.hpp"

#include <cmath>

namespace tropdeg {

namespace {

Json real_or_null(double x)
{
    return std::isfinite(x) ? Json(x) : Json(nullptr);
}

const Json& field(const Json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) {
        throw SchemaError(std::string("missing field \"") + key + "\"");
    }
    return j.at(key);
}

const Json& array_field(const Json& j, const char* key)
{
    const Json& v = field(j, key);
    if (!v.is_array()) {
        throw SchemaError(std::string("field \"") + key + "\" must be an array");
    }
    return v;
}

Json generators_json(const Generators<Rational>& g)
{
    Json out;
    out["vertices"] = Json::array();
    for (const auto& v : g.vertices) {
        out["vertices"].push_back(to_json(v));
    }
    out["rays"] = Json::array();
    for (const auto& r : g.rays) {
        out["rays"].push_back(to_json(r));
    }
    out["lineality"] = Json::array();
    for (const auto& l : g.lineality) {
        out["lineality"].push_back(to_json(l));
    }
    return out;
}

} // namespace

Json to_json(const Rational& q)
{
    return to_string(q);
}

Json to_json(const RationalVector& v)
{
    Json out = Json::array();
    for (const auto& q : v) {
        out.push_back(to_json(q));
    }
    return out;
}

Json to_json(const RealVector& v)
{
    Json out = Json::array();
    for (double x : v) {
        out.push_back(real_or_null(x));
    }
    return out;
}

Json to_json(const Complex& z)
{
    return Json::array({z.real(), z.imag()});
}

Json to_json(const HPolyhedron& h)
{
    Json out;
    out["dim"] = h.dim;
    out["equations"] = Json::array();
    for (std::size_t r = 0; r < h.eq_a.size(); ++r) {
        out["equations"].push_back({{"a", to_json(h.eq_a[r])}, {"b", to_json(h.eq_b[r])}});
    }
    out["inequalities"] = Json::array();
    for (std::size_t r = 0; r < h.ineq_a.size(); ++r) {
        out["inequalities"].push_back({{"a", to_json(h.ineq_a[r])}, {"b", to_json(h.ineq_b[r])}});
    }
    return out;
}

Json to_json(const PolyhedralComplex& c)
{
    Json out;
    out["ambient_dim"] = c.ambient_dim;
    out["f_vector"] = c.f_vector();
    out["cells"] = Json::array();
    for (const auto& cell : c.cells) {
        Json j;
        j["dimension"] = cell.dimension;
        j["generators"] = generators_json(cell.generators);
        if (!cell.dual_face.empty()) {
            j["dual_face"] = cell.dual_face;
        }
        if (!cell.stratum.empty()) {
            j["stratum"] = cell.stratum;
        }
        out["cells"].push_back(std::move(j));
    }
    out["incidences"] = Json::array();
    for (const auto& [face, cell] : c.incidences) {
        out["incidences"].push_back({face, cell});
    }
    out["warnings"] = c.warnings;
    return out;
}

Json to_json(const TropicalPolynomial& f)
{
    Json out;
    out["dim"] = f.dim();
    out["text"] = to_string(f);
    out["terms"] = Json::array();
    for (const auto& [alpha, c] : f.terms()) {
        out["terms"].push_back({{"exponent", alpha}, {"weight", to_json(c)}});
    }
    return out;
}

Json to_json(const WeightedSimplexMeasure& m)
{
    Json out;
    out["indices"] = m.simplex.indices();
    out["b"] = m.simplex.multiplicities();
    out["mass"] = m.mass;
    out["sigma_h_volume"] = to_json(sigma_h_volume(m.simplex));
    out["density"] = m.density();
    return out;
}

Json to_json(const SncCombinatorics& m)
{
    Json out;
    out["components"] = Json::array();
    for (const auto& c : m.components()) {
        out["components"].push_back({{"label", c.label}, {"b", c.b}, {"a", to_json(c.a)}});
    }
    out["strata"] = Json::array();
    for (const auto& s : m.strata()) {
        Json labels = Json::array();
        for (auto i : s) {
            labels.push_back(m.components()[i].label);
        }
        out["strata"].push_back(std::move(labels));
    }
    Json masses = Json::object();
    for (const auto& [j, mass] : m.masses()) {
        masses[m.label_of(j)] = mass;
    }
    out["masses"] = std::move(masses);
    return out;
}

Json to_json(const KappaResult& k)
{
    Json per = Json::array();
    for (const auto& q : k.per_component) {
        per.push_back(to_json(q));
    }
    return {{"kappa", to_json(k.kappa)}, {"per_component", per}};
}

Json to_json(const EssentialComplex& e, const SncCombinatorics& m)
{
    auto labels = [&](const std::vector<Stratum>& faces) {
        Json out = Json::array();
        for (const auto& f : faces) {
            out.push_back(m.label_of(f));
        }
        return out;
    };
    return {{"dimension", e.dimension},
            {"faces", labels(e.faces)},
            {"maximal_faces", labels(e.maximal_faces)},
            {"top_faces", labels(e.top_faces)}};
}

Json to_json(const PointCloud& cloud, bool with_points)
{
    Json out;
    out["generator"] = cloud.generator;
    out["t"] = to_json(cloud.t);
    out["window"] = {{"lo", to_json(cloud.window.lo)}, {"hi", to_json(cloud.window.hi)}};
    out["seed"] = cloud.seed;
    out["samples"] = cloud.samples;
    out["points_found"] = cloud.points.size();
    out["skipped_degenerate"] = cloud.skipped_degenerate;
    out["skipped_nonconvergent"] = cloud.skipped_nonconvergent;
    out["rejected_residual"] = cloud.rejected_residual;
    out["fallback_used"] = cloud.fallback_used;
    if (with_points) {
        out["points"] = Json::array();
        for (const auto& p : cloud.points) {
            out["points"].push_back(to_json(p));
        }
    }
    return out;
}

Json to_json(const ConvergenceReport& r)
{
    Json out;
    out["samples"] = r.samples;
    out["seed"] = r.seed;
    out["rows"] = Json::array();
    for (const auto& row : r.rows) {
        Json j;
        j["abs_t"] = row.abs_t;
        j["eps"] = row.eps;
        j["distance"] = row.distance ? real_or_null(*row.distance) : Json(nullptr);
        if (!row.error.empty()) {
            j["error"] = row.error;
        }
        j["points"] = row.points;
        j["points_in_window"] = row.points_in_window;
        j["skipped_degenerate"] = row.skipped_degenerate;
        j["skipped_nonconvergent"] = row.skipped_nonconvergent;
        j["rejected_residual"] = row.rejected_residual;
        out["rows"].push_back(std::move(j));
    }
    return out;
}

Json to_json(const OmtCheck& r)
{
    return {{"max_deviation", r.max_deviation}, {"trials", r.trials}};
}

Json to_json(const MassAsymptotics& r)
{
    Json out;
    out["kappa_hat"] = to_json(r.kappa_hat);
    out["d_hat"] = r.d_hat;
    out["c_hat"] = real_or_null(r.c_hat);
    out["residual_slope"] = real_or_null(r.residual_slope);
    out["kappa_predicted"] = to_json(r.kappa_predicted);
    out["d_predicted"] = r.d_predicted;
    out["kappa_agrees"] = r.kappa_agrees;
    out["d_agrees"] = r.d_agrees;
    out["monte_carlo"] = r.monte_carlo;
    out["rows"] = Json::array();
    for (const auto& row : r.rows) {
        out["rows"].push_back({{"abs_t", row.abs_t},
                               {"eps", row.eps},
                               {"log_mass", real_or_null(row.log_mass)},
                               {"scaled_mass", real_or_null(row.scaled_mass)},
                               {"standard_error", real_or_null(row.standard_error)}});
    }
    return out;
}

Json to_json(const PushforwardReport& r)
{
    Json out;
    out["samples"] = r.samples;
    out["eps"] = r.eps;
    out["essential_face"] = r.essential_face;
    out["total_mass"] = real_or_null(r.total_mass);
    out["total_mass_se"] = real_or_null(r.total_mass_se);
    out["coordinates"] = Json::array();
    for (const auto& c : r.coordinates) {
        out["coordinates"].push_back({{"mean", c.mean},
                                      {"mean_se", c.mean_se},
                                      {"expected_mean", c.expected_mean},
                                      {"second", c.second},
                                      {"second_se", c.second_se},
                                      {"expected_second", c.expected_second}});
    }
    return out;
}

Json to_json(const ConvexPLFunction& f)
{
    Json out;
    out["pieces"] = Json::array();
    for (const auto& p : f.pieces()) {
        out["pieces"].push_back({{"gradient", to_json(p.gradient)}, {"offset", to_json(p.offset)}});
    }
    out["domain"] = to_json(f.domain());
    return out;
}

Json to_json(const AtomicMeasure& m)
{
    Json out;
    out["total_mass"] = to_json(m.total_mass());
    out["atoms"] = Json::array();
    for (const auto& a : m.atoms()) {
        out["atoms"].push_back({{"point", to_json(a.point)}, {"mass", to_json(a.mass)}});
    }
    return out;
}

Json to_json(const BoundaryData& b)
{
    Json out;
    out["points"] = Json::array();
    for (const auto& p : b.points) {
        out["points"].push_back(to_json(p));
    }
    out["values"] = to_json(b.values);
    return out;
}

Json to_json(const RmaSolution& s)
{
    Json out;
    out["sweeps"] = s.sweeps;
    out["residual"] = s.residual;
    out["nodes"] = Json::array();
    for (std::size_t j = 0; j < s.nodes.size(); ++j) {
        out["nodes"].push_back({{"point", to_json(s.nodes[j])}, {"height", s.heights[j]}});
    }
    out["function"] = to_json(s.function);
    return out;
}

Json to_json(const MalogReport& r)
{
    Json out;
    out["eps"] = r.eps;
    out["sheet_factor"] = r.sheet_factor;
    out["rows"] = Json::array();
    for (const auto& row : r.rows) {
        out["rows"].push_back({{"lo", row.lo},
                               {"hi", row.hi},
                               {"complex_mass", row.complex_mass},
                               {"real_mass", row.real_mass},
                               {"relative_error", row.relative_error}});
    }
    return out;
}

Rational rational_from_json(const Json& j)
{
    if (j.is_number_integer()) {
        return Rational(j.get<long>());
    }
    if (j.is_string()) {
        try {
            return parse_rational(j.get<std::string>());
        } catch (const std::exception& e) {
            throw SchemaError("bad rational \"" + j.get<std::string>() + "\": " + e.what());
        }
    }
    throw SchemaError("expected a rational as a string \"p/q\" or an integer, got " + j.dump());
}

RationalVector rational_vector_from_json(const Json& j)
{
    if (!j.is_array()) {
        throw SchemaError("expected an array of rationals, got " + j.dump());
    }
    RationalVector out;
    for (const auto& x : j) {
        out.push_back(rational_from_json(x));
    }
    return out;
}

HPolyhedron polyhedron_from_json(const Json& j, std::size_t dim)
{
    if (j.is_object() && j.contains("box")) {
        const Json& box = j.at("box");
        auto lo = rational_vector_from_json(field(box, "lo"));
        auto hi = rational_vector_from_json(field(box, "hi"));
        if (lo.size() != dim || hi.size() != dim) {
            throw SchemaError("box corners must have dimension " + std::to_string(dim));
        }
        return ConvexPLFunction::box(lo, hi);
    }
    HPolyhedron h;
    h.dim = dim;
    auto read_rows = [&](const char* key, bool equation) {
        if (!j.contains(key)) {
            return;
        }
        for (const auto& row : j.at(key)) {
            auto a = rational_vector_from_json(field(row, "a"));
            if (a.size() != dim) {
                throw SchemaError(std::string("row in \"") + key + "\" has the wrong dimension");
            }
            Rational b = rational_from_json(field(row, "b"));
            if (equation) {
                h.add_equation(std::move(a), std::move(b));
            } else {
                h.add_inequality(std::move(a), std::move(b));
            }
        }
    };
    if (!j.is_object() || (!j.contains("inequalities") && !j.contains("equations"))) {
        throw SchemaError("domain needs \"box\" or \"inequalities\"");
    }
    read_rows("equations", true);
    read_rows("inequalities", false);
    return h;
}

SncCombinatorics snc_from_json(const Json& j)
{
    std::vector<SncComponent> components;
    for (const auto& c : array_field(j, "components")) {
        SncComponent comp;
        comp.label = field(c, "label").get<std::string>();
        comp.b = field(c, "b").get<int>();
        comp.a = c.contains("a") ? rational_from_json(c.at("a")) : Rational(0);
        components.push_back(std::move(comp));
    }
    auto index = [&](const std::string& label) {
        for (std::size_t i = 0; i < components.size(); ++i) {
            if (components[i].label == label) {
                return i;
            }
        }
        throw SchemaError("unknown component label \"" + label + "\"");
    };
    auto stratum_of = [&](const std::vector<std::string>& labels) {
        Stratum s;
        for (const auto& l : labels) {
            s.push_back(index(l));
        }
        std::sort(s.begin(), s.end());
        return s;
    };
    std::vector<Stratum> strata;
    if (j.contains("strata")) {
        for (const auto& s : j.at("strata")) {
            strata.push_back(stratum_of(s.get<std::vector<std::string>>()));
        }
    }
    std::map<Stratum, double> masses;
    if (j.contains("masses")) {
        for (const auto& [key, value] : j.at("masses").items()) {
            std::vector<std::string> labels;
            std::size_t start = 0;
            while (true) {
                const auto comma = key.find(',', start);
                labels.push_back(key.substr(start, comma - start));
                if (comma == std::string::npos) {
                    break;
                }
                start = comma + 1;
            }
            masses[stratum_of(labels)] = value.get<double>();
        }
    }
    return SncCombinatorics(std::move(components), std::move(strata), std::move(masses));
}

ConvexPLFunction convex_pl_from_json(const Json& j)
{
    std::vector<AffinePiece> pieces;
    for (const auto& p : array_field(j, "pieces")) {
        if (p.is_array()) {
            if (p.size() != 2) {
                throw SchemaError("a piece given as a pair must be [gradient, offset]");
            }
            pieces.push_back({rational_vector_from_json(p[0]), rational_from_json(p[1])});
        } else {
            pieces.push_back({rational_vector_from_json(field(p, "gradient")), rational_from_json(field(p, "offset"))});
        }
    }
    if (pieces.empty()) {
        throw SchemaError("\"pieces\" is empty");
    }
    const std::size_t dim = pieces.front().gradient.size();
    return ConvexPLFunction(std::move(pieces), polyhedron_from_json(field(j, "domain"), dim));
}

AtomicMeasure atomic_measure_from_json(const Json& j)
{
    std::vector<Atom> atoms;
    for (const auto& a : array_field(j, "atoms")) {
        atoms.push_back({rational_vector_from_json(field(a, "point")), rational_from_json(field(a, "mass"))});
    }
    return AtomicMeasure(std::move(atoms));
}

BoundaryData boundary_from_json(const Json& j)
{
    BoundaryData out;
    for (const auto& p : array_field(j, "points")) {
        out.points.push_back(rational_vector_from_json(p));
    }
    out.values = rational_vector_from_json(array_field(j, "values"));
    if (out.values.size() != out.points.size()) {
        throw SchemaError("\"points\" and \"values\" must have the same length");
    }
    return out;
}

} // namespace tropdeg
