#include "tropdeg/sncmodel.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace tropdeg {

namespace {

bool stratum_order(const Stratum& a, const Stratum& b)
{
    if (a.size() != b.size()) {
        return a.size() < b.size();
    }
    return a < b;
}

} // namespace

SncCombinatorics::SncCombinatorics(std::vector<SncComponent> components, std::vector<Stratum> strata,
                                   std::map<Stratum, double> masses)
    : components_(std::move(components)), masses_(std::move(masses))
{
    if (components_.empty()) {
        throw SncValidationError("model has no components");
    }
    std::set<std::string> labels;
    for (auto& c : components_) {
        c.a.canonicalize();
        if (c.b < 1) {
            throw SncValidationError("component " + c.label + ": multiplicity must be a positive integer");
        }
        if (!labels.insert(c.label).second) {
            throw SncValidationError("duplicate component label " + c.label);
        }
    }
    std::set<Stratum> all;
    for (auto j : strata) {
        std::sort(j.begin(), j.end());
        if (j.empty()) {
            throw SncValidationError("empty stratum");
        }
        if (std::adjacent_find(j.begin(), j.end()) != j.end()) {
            throw SncValidationError("stratum lists a component twice");
        }
        if (j.back() >= components_.size()) {
            throw SncValidationError("stratum refers to an unknown component");
        }
        all.insert(std::move(j));
    }
    for (std::size_t i = 0; i < components_.size(); ++i) {
        all.insert(Stratum{i});
    }
    strata_.assign(all.begin(), all.end());
    std::sort(strata_.begin(), strata_.end(), stratum_order);
    for (const auto& j : strata_) {
        const std::size_t k = j.size();
        for (std::size_t mask = 1; mask + 1 < (std::size_t{1} << k); ++mask) {
            Stratum sub;
            for (std::size_t r = 0; r < k; ++r) {
                if (mask & (std::size_t{1} << r)) {
                    sub.push_back(j[r]);
                }
            }
            if (!all.count(sub)) {
                throw SncValidationError("strata are not closed under subsets: {" + label_of(sub) +
                                         "} is missing (face of {" + label_of(j) + "})");
            }
        }
    }
    std::map<Stratum, double> sorted_masses;
    for (const auto& [key, mass] : masses_) {
        Stratum j = key;
        std::sort(j.begin(), j.end());
        if (!all.count(j)) {
            throw SncValidationError("mass given for {" + label_of(j) + "}, which is not a stratum");
        }
        if (!(mass > 0.0) || !std::isfinite(mass)) {
            throw SncValidationError("mass for {" + label_of(j) + "} must be positive and finite");
        }
        sorted_masses[j] = mass;
    }
    masses_ = std::move(sorted_masses);
    if (!masses_.empty()) {
        const auto top = essential_complex(*this).top_faces;
        for (const auto& [j, mass] : masses_) {
            if (std::find(top.begin(), top.end(), j) == top.end()) {
                throw SncValidationError("mass given for {" + label_of(j) +
                                         "}, which is not a top-dimensional essential face");
            }
        }
    }
}

bool SncCombinatorics::is_stratum(const Stratum& j) const
{
    return std::binary_search(strata_.begin(), strata_.end(), j, stratum_order);
}

std::size_t SncCombinatorics::index_of(const std::string& label) const
{
    for (std::size_t i = 0; i < components_.size(); ++i) {
        if (components_[i].label == label) {
            return i;
        }
    }
    throw SncValidationError("unknown component label " + label);
}

std::string SncCombinatorics::label_of(const Stratum& j) const
{
    std::string out;
    for (auto i : j) {
        if (!out.empty()) {
            out += ',';
        }
        out += i < components_.size() ? components_[i].label : std::to_string(i);
    }
    return out;
}

std::vector<int> SncCombinatorics::multiplicities() const
{
    std::vector<int> b;
    for (const auto& c : components_) {
        b.push_back(c.b);
    }
    return b;
}

WeightedSimplex SncCombinatorics::simplex(const Stratum& j) const
{
    std::vector<int> b;
    for (auto i : j) {
        b.push_back(components_.at(i).b);
    }
    return WeightedSimplex(j, std::move(b));
}

PolyhedralComplex dual_complex(const SncCombinatorics& m)
{
    PolyhedralComplex complex;
    complex.ambient_dim = m.size();
    for (const auto& j : m.strata()) {
        WeightedSimplex s = m.simplex(j);
        PolyhedralCell cell;
        cell.polyhedron = s.polyhedron(m.size());
        for (std::size_t k = 0; k < s.size(); ++k) {
            cell.generators.vertices.push_back(s.embed(s.vertex(k), m.size()));
        }
        cell.dimension = static_cast<int>(s.dimension());
        cell.stratum = j;
        complex.cells.push_back(std::move(cell));
    }
    for (std::size_t f = 0; f < complex.cells.size(); ++f) {
        for (std::size_t c = 0; c < complex.cells.size(); ++c) {
            const auto& small = complex.cells[f].stratum;
            const auto& big = complex.cells[c].stratum;
            if (small.size() < big.size() && std::includes(big.begin(), big.end(), small.begin(), small.end())) {
                complex.incidences.emplace_back(f, c);
            }
        }
    }
    return complex;
}

namespace {

template <class T>
Stratum support_of(const SncCombinatorics& m, const std::vector<T>& w, double tol)
{
    if (w.size() != m.size()) {
        throw std::invalid_argument("point has dimension " + std::to_string(w.size()) + ", expected " +
                                    std::to_string(m.size()));
    }
    Stratum j;
    T total = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (detail::leq(w[i], T(0), tol) && detail::leq(T(-w[i]), T(0), tol)) {
            continue;
        }
        if (w[i] < T(0)) {
            throw std::invalid_argument("point has a negative coordinate; it is outside the dual complex");
        }
        j.push_back(i);
        total += w[i] * T(m.components()[i].b);
    }
    if (!detail::leq(total, T(1), tol) || !detail::leq(T(1), total, tol)) {
        throw std::invalid_argument("point does not satisfy sum b_i w_i = 1");
    }
    if (j.empty() || !m.is_stratum(j)) {
        throw std::invalid_argument("point lies on no face of the dual complex");
    }
    return j;
}

} // namespace

RationalVector log_of_monomial(const SncCombinatorics& m, const RationalVector& w)
{
    support_of(m, w, 0.0);
    return w;
}

RealVector log_of_monomial(const SncCombinatorics& m, const RealVector& w, double tol)
{
    support_of(m, w, tol);
    return w;
}

KappaResult kappa(const SncCombinatorics& m)
{
    KappaResult out;
    for (const auto& c : m.components()) {
        Rational k = c.a / c.b;
        k.canonicalize();
        if (out.per_component.empty() || k < out.kappa) {
            out.kappa = k;
        }
        out.per_component.push_back(k);
    }
    return out;
}

SncCombinatorics normalize_kappa(const SncCombinatorics& m)
{
    const Rational k = kappa(m).kappa;
    auto components = m.components();
    for (auto& c : components) {
        c.a -= k * c.b;
        c.a.canonicalize();
    }
    std::vector<Stratum> strata(m.strata().begin(), m.strata().end());
    return SncCombinatorics(std::move(components), std::move(strata), m.masses());
}

EssentialComplex essential_complex(const SncCombinatorics& m)
{
    const auto k = kappa(m);
    EssentialComplex out;
    for (const auto& j : m.strata()) {
        const bool essential =
            std::all_of(j.begin(), j.end(), [&](std::size_t i) { return k.per_component[i] == k.kappa; });
        if (essential) {
            out.faces.push_back(j);
            out.dimension = std::max(out.dimension, static_cast<int>(j.size()) - 1);
        }
    }
    for (const auto& j : out.faces) {
        bool maximal = true;
        for (const auto& other : out.faces) {
            if (other.size() > j.size() && std::includes(other.begin(), other.end(), j.begin(), j.end())) {
                maximal = false;
                break;
            }
        }
        if (maximal) {
            out.maximal_faces.push_back(j);
            if (static_cast<int>(j.size()) - 1 == out.dimension) {
                out.top_faces.push_back(j);
            }
        }
    }
    return out;
}

std::vector<WeightedSimplexMeasure> limit_measure(const SncCombinatorics& m, bool default_masses)
{
    const auto top = essential_complex(m).top_faces;
    std::vector<double> masses;
    std::string missing;
    for (const auto& j : top) {
        auto it = m.masses().find(j);
        if (it != m.masses().end()) {
            masses.push_back(it->second);
        } else if (default_masses) {
            masses.push_back(1.0);
        } else {
            missing += (missing.empty() ? "{" : ", {") + m.label_of(j) + "}";
        }
    }
    if (!missing.empty()) {
        throw MissingMassError("no mass given for essential face(s) " + missing);
    }
    double total = 0.0;
    for (double x : masses) {
        total += x;
    }
    std::vector<WeightedSimplexMeasure> out;
    for (std::size_t k = 0; k < top.size(); ++k) {
        out.push_back({m.simplex(top[k]), masses[k] / total});
    }
    return out;
}

} // namespace tropdeg
