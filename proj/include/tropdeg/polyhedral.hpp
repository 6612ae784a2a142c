#pragma once

// Weighted simplices Δ_{J,b} = {w >= 0 : sum_i b_i w_i = 1}, their hyperplane
// Lebesgue measure σ_H, uniform sampling, and the polyhedral complexes that the
// tropical and dual-complex code produce.

#include "tropdeg/polyhedron.hpp"
#include "tropdeg/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tropdeg {

class WeightedSimplex {
public:
    /// `indices` are coordinate labels in the ambient R^I (sorted, distinct);
    /// `b[k]` is the multiplicity of indices[k] and must be >= 1.
    WeightedSimplex(std::vector<std::size_t> indices, std::vector<int> b);

    const std::vector<std::size_t>& indices() const { return indices_; }
    const std::vector<int>& multiplicities() const { return b_; }
    std::size_t size() const { return indices_.size(); }
    std::size_t dimension() const { return indices_.size() - 1; }
    int multiplicity_of(std::size_t index) const;
    bool contains_index(std::size_t index) const;

    /// Vertex e_i / b_i, in local coordinates (one entry per index of J).
    RationalVector vertex(std::size_t k) const;
    /// Barycenter of the vertices, local coordinates.
    RationalVector barycenter() const;

    /// The simplex inside R^ambient: w_i = 0 for labels outside J.
    HPolyhedron polyhedron(std::size_t ambient) const;
    /// Embeds a local point into R^ambient.
    RationalVector embed(std::span<const Rational> local, std::size_t ambient) const;

    friend bool operator==(const WeightedSimplex&, const WeightedSimplex&) = default;

private:
    std::vector<std::size_t> indices_;
    std::vector<int> b_;
};

/// σ_H-volume of Δ_{J,b}: eliminate w_{i0} (the k-th index, default first) and
/// take (1/b_{i0}) times Lebesgue measure of the projected simplex.
Rational sigma_h_volume(const WeightedSimplex& s, std::optional<std::size_t> eliminate = std::nullopt);

/// i.i.d. points of the normalized Lebesgue measure σ_J, local coordinates.
/// Exponential spacings give a uniform point u of the standard simplex, and
/// w_i = u_i / b_i. Deterministic in (seed, count) for any thread count.
std::vector<RealVector> sample_uniform(const WeightedSimplex& s, std::uint64_t seed, std::size_t count,
                                       unsigned threads = 1);

/// Sub-simplex {w_i = 0 for i not in subset}; `subset` lists labels of J.
WeightedSimplex face(const WeightedSimplex& s, const std::vector<std::size_t>& subset);

struct WeightedSimplexMeasure {
    WeightedSimplex simplex;
    double mass = 0.0;
    /// Density with respect to σ_H.
    double density() const { return mass / sigma_h_volume(simplex).get_d(); }
};

struct PolyhedralCell {
    HPolyhedron polyhedron;
    Generators<Rational> generators;
    int dimension = -1;
    /// Tropical cells: the exponents attaining the minimum (the dual face of
    /// the regular subdivision of the Newton polytope).
    std::vector<std::vector<int>> dual_face;
    /// Dual-complex cells: the stratum J.
    std::vector<std::size_t> stratum;
};

struct PolyhedralComplex {
    std::size_t ambient_dim = 0;
    std::vector<PolyhedralCell> cells;
    /// (face, cell) pairs: cells[face] is a proper face of cells[cell].
    std::vector<std::pair<std::size_t, std::size_t>> incidences;
    std::vector<std::string> warnings;

    /// Number of cells of each dimension 0..max.
    std::vector<std::size_t> f_vector() const;
    bool empty() const { return cells.empty(); }
};

/// Fills `incidences` by testing generator containment between cells.
void compute_incidences(PolyhedralComplex& complex);

} // namespace tropdeg
