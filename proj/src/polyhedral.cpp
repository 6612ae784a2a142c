#include "tropdeg/polyhedral.hpp"

#include "tropdeg/parallel.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace tropdeg {

WeightedSimplex::WeightedSimplex(std::vector<std::size_t> indices, std::vector<int> b)
    : indices_(std::move(indices)), b_(std::move(b))
{
    if (indices_.empty()) {
        throw std::invalid_argument("WeightedSimplex: empty index set");
    }
    if (indices_.size() != b_.size()) {
        throw std::invalid_argument("WeightedSimplex: one multiplicity per index required");
    }
    for (std::size_t k = 0; k < indices_.size(); ++k) {
        if (b_[k] < 1) {
            throw std::invalid_argument("WeightedSimplex: multiplicities must be >= 1");
        }
        if (k > 0 && indices_[k] <= indices_[k - 1]) {
            throw std::invalid_argument("WeightedSimplex: indices must be strictly increasing");
        }
    }
}

int WeightedSimplex::multiplicity_of(std::size_t index) const
{
    auto it = std::lower_bound(indices_.begin(), indices_.end(), index);
    if (it == indices_.end() || *it != index) {
        throw std::out_of_range("WeightedSimplex: index not in J");
    }
    return b_[static_cast<std::size_t>(it - indices_.begin())];
}

bool WeightedSimplex::contains_index(std::size_t index) const
{
    return std::binary_search(indices_.begin(), indices_.end(), index);
}

RationalVector WeightedSimplex::vertex(std::size_t k) const
{
    RationalVector v(size(), Rational(0));
    v.at(k) = Rational(1, b_[k]);
    v[k].canonicalize();
    return v;
}

RationalVector WeightedSimplex::barycenter() const
{
    RationalVector v(size());
    const auto n = static_cast<long>(size());
    for (std::size_t k = 0; k < size(); ++k) {
        v[k] = Rational(1) / (Rational(b_[k]) * n);
    }
    return v;
}

HPolyhedron WeightedSimplex::polyhedron(std::size_t ambient) const
{
    HPolyhedron h;
    h.dim = ambient;
    RationalVector hyper(ambient, Rational(0));
    for (std::size_t k = 0; k < size(); ++k) {
        if (indices_[k] >= ambient) {
            throw std::out_of_range("WeightedSimplex: index exceeds ambient dimension");
        }
        hyper[indices_[k]] = b_[k];
    }
    h.add_equation(hyper, Rational(1));
    for (std::size_t i = 0; i < ambient; ++i) {
        RationalVector row(ambient, Rational(0));
        if (contains_index(i)) {
            row[i] = -1;
            h.add_inequality(row, Rational(0));
        } else {
            row[i] = 1;
            h.add_equation(row, Rational(0));
        }
    }
    return h;
}

RationalVector WeightedSimplex::embed(std::span<const Rational> local, std::size_t ambient) const
{
    if (local.size() != size()) {
        throw std::invalid_argument("embed: local point has wrong dimension");
    }
    RationalVector out(ambient, Rational(0));
    for (std::size_t k = 0; k < size(); ++k) {
        out.at(indices_[k]) = local[k];
    }
    return out;
}

Rational sigma_h_volume(const WeightedSimplex& s, std::optional<std::size_t> eliminate)
{
    const std::size_t i0 = eliminate.value_or(0);
    if (i0 >= s.size()) {
        throw std::out_of_range("sigma_h_volume: eliminated coordinate out of range");
    }
    const std::size_t p = s.dimension();
    // projected simplex in the remaining p coordinates: 0 and e_j / b_j
    std::vector<RationalVector> pts;
    pts.emplace_back(p, Rational(0));
    for (std::size_t k = 0, j = 0; k < s.size(); ++k) {
        if (k == i0) {
            continue;
        }
        RationalVector v(p, Rational(0));
        v[j] = Rational(1, s.multiplicities()[k]);
        v[j].canonicalize();
        pts.push_back(std::move(v));
        ++j;
    }
    Rational lebesgue = hull_volume(pts, p);
    return lebesgue / s.multiplicities()[i0];
}

std::vector<RealVector> sample_uniform(const WeightedSimplex& s, std::uint64_t seed, std::size_t count,
                                       unsigned threads)
{
    if (count < 1) {
        throw std::invalid_argument("sample_uniform: count must be >= 1");
    }
    std::vector<RealVector> out(count, RealVector(s.size()));
    parallel_chunks(count, kDefaultChunkSize, threads, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
        auto rng = stream_engine(seed, chunk);
        std::exponential_distribution<double> exp1(1.0);
        for (std::size_t i = begin; i < end; ++i) {
            double total = 0.0;
            for (auto& x : out[i]) {
                x = exp1(rng);
                total += x;
            }
            for (std::size_t k = 0; k < s.size(); ++k) {
                out[i][k] = out[i][k] / total / s.multiplicities()[k];
            }
        }
    });
    return out;
}

WeightedSimplex face(const WeightedSimplex& s, const std::vector<std::size_t>& subset)
{
    if (subset.empty()) {
        throw std::invalid_argument("face: empty subset");
    }
    std::vector<std::size_t> idx = subset;
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    std::vector<int> b;
    for (auto i : idx) {
        if (!s.contains_index(i)) {
            throw std::invalid_argument("face: subset is not contained in J");
        }
        b.push_back(s.multiplicity_of(i));
    }
    return WeightedSimplex(std::move(idx), std::move(b));
}

std::vector<std::size_t> PolyhedralComplex::f_vector() const
{
    int top = -1;
    for (const auto& c : cells) {
        top = std::max(top, c.dimension);
    }
    std::vector<std::size_t> f(static_cast<std::size_t>(top + 1), 0);
    for (const auto& c : cells) {
        if (c.dimension >= 0) {
            ++f[static_cast<std::size_t>(c.dimension)];
        }
    }
    return f;
}

void compute_incidences(PolyhedralComplex& complex)
{
    complex.incidences.clear();
    const auto& cells = complex.cells;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        for (std::size_t j = 0; j < cells.size(); ++j) {
            if (i == j || cells[i].dimension >= cells[j].dimension) {
                continue;
            }
            const auto& g = cells[i].generators;
            bool inside = true;
            for (const auto& v : g.vertices) {
                if (!contains<Rational>(cells[j].polyhedron, v)) {
                    inside = false;
                    break;
                }
            }
            if (!inside) {
                continue;
            }
            // faces of a cell are closed under recession: every ray of the
            // candidate face must be a recession direction of the cell
            for (const auto& r : g.rays) {
                RationalVector shifted = g.vertices.front();
                for (std::size_t k = 0; k < r.size(); ++k) {
                    shifted[k] += r[k];
                }
                if (!contains<Rational>(cells[j].polyhedron, shifted)) {
                    inside = false;
                    break;
                }
            }
            if (inside) {
                complex.incidences.emplace_back(i, j);
            }
        }
    }
}

} // namespace tropdeg
