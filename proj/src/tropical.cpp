#include "tropdeg/tropical.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <stdexcept>

namespace tropdeg {

TropicalPolynomial::TropicalPolynomial(std::size_t n, std::map<Exponent, Rational> terms)
    : n_(n), terms_(std::move(terms))
{
    if (terms_.empty()) {
        throw std::invalid_argument("tropical polynomial needs at least one term");
    }
    for (auto& [alpha, c] : terms_) {
        if (alpha.size() != n_) {
            throw std::invalid_argument("tropical polynomial: exponent length differs from dimension");
        }
        c.canonicalize();
    }
}

TropicalPolynomial TropicalPolynomial::from_laurent(const LaurentPolynomial& f)
{
    if (f.is_zero()) {
        throw std::invalid_argument("cannot tropicalize the zero polynomial");
    }
    std::map<Exponent, Rational> terms;
    for (const auto& [alpha, a] : f.terms()) {
        if (a.is_zero()) {
            continue;
        }
        terms.emplace(alpha, Rational(a.valuation().value()));
    }
    if (terms.empty()) {
        throw std::invalid_argument("cannot tropicalize the zero polynomial");
    }
    return TropicalPolynomial(f.num_vars(), std::move(terms));
}

namespace {

Rational term_value(const Exponent& alpha, const Rational& c, const MonomialValuationPoint& w)
{
    Rational s = c;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        if (alpha[i] != 0) {
            s += alpha[i] * w[i];
        }
    }
    return s;
}

void check_dim(const TropicalPolynomial& f, const MonomialValuationPoint& w)
{
    if (w.size() != f.dim()) {
        throw std::invalid_argument("valuation point has dimension " + std::to_string(w.size()) + ", expected " +
                                    std::to_string(f.dim()));
    }
}

RationalVector to_row(const Exponent& alpha)
{
    RationalVector r(alpha.size());
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        r[i] = alpha[i];
    }
    return r;
}

struct Term {
    RationalVector alpha;
    Rational c;
    Exponent exponent;
};

// {w : f_s equal for s in S, f_s <= f_j otherwise}
HPolyhedron tight_region(const std::vector<Term>& terms, const std::vector<std::size_t>& tight, std::size_t n)
{
    HPolyhedron h;
    h.dim = n;
    const Term& base = terms[tight.front()];
    std::vector<bool> in(terms.size(), false);
    for (auto s : tight) {
        in[s] = true;
    }
    for (std::size_t k = 1; k < tight.size(); ++k) {
        const Term& other = terms[tight[k]];
        RationalVector row(n);
        for (std::size_t i = 0; i < n; ++i) {
            row[i] = base.alpha[i] - other.alpha[i];
        }
        h.add_equation(std::move(row), other.c - base.c);
    }
    for (std::size_t j = 0; j < terms.size(); ++j) {
        if (in[j]) {
            continue;
        }
        RationalVector row(n);
        for (std::size_t i = 0; i < n; ++i) {
            row[i] = base.alpha[i] - terms[j].alpha[i];
        }
        h.add_inequality(std::move(row), terms[j].c - base.c);
    }
    return h;
}

} // namespace

TropicalValue trop_eval(const TropicalPolynomial& f, const MonomialValuationPoint& w)
{
    check_dim(f, w);
    TropicalValue out;
    bool first = true;
    for (const auto& [alpha, c] : f.terms()) {
        Rational v = term_value(alpha, c, w);
        if (first || v < out.value) {
            out.value = v;
            out.argmin.assign(1, alpha);
            first = false;
        } else if (v == out.value) {
            out.argmin.push_back(alpha);
        }
    }
    return out;
}

bool in_tropical_hypersurface(const TropicalPolynomial& f, const MonomialValuationPoint& w)
{
    return trop_eval(f, w).argmin.size() >= 2;
}

PolyhedralComplex tropical_hypersurface(const TropicalPolynomial& f)
{
    const std::size_t n = f.dim();
    PolyhedralComplex complex;
    complex.ambient_dim = n;
    if (f.terms().size() < 2) {
        complex.warnings.push_back("single-term polynomial: the tropical hypersurface is empty");
        return complex;
    }
    std::vector<Term> terms;
    for (const auto& [alpha, c] : f.terms()) {
        terms.push_back({to_row(alpha), c, alpha});
    }

    // Breadth-first search over tight sets. A candidate set S gives the region
    // where the terms of S tie and are minimal; its relative interior has a
    // well-defined argmin S' (>= S), which names the cell. Faces of a cell are
    // reached by making one more term tight.
    std::set<std::vector<std::size_t>> visited;
    std::map<std::vector<std::size_t>, PolyhedralCell> found;
    std::deque<std::vector<std::size_t>> queue;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        for (std::size_t j = i + 1; j < terms.size(); ++j) {
            queue.push_back({i, j});
        }
    }
    while (!queue.empty()) {
        auto tight = std::move(queue.front());
        queue.pop_front();
        if (!visited.insert(tight).second) {
            continue;
        }
        HPolyhedron h = tight_region(terms, tight, n);
        auto gens = enumerate_generators(h);
        if (gens.empty()) {
            continue;
        }
        auto inner = relative_interior_point(gens, n);
        auto value = trop_eval(f, inner);
        std::vector<std::size_t> argmin;
        for (std::size_t k = 0; k < terms.size(); ++k) {
            if (std::find(value.argmin.begin(), value.argmin.end(), terms[k].exponent) != value.argmin.end()) {
                argmin.push_back(k);
            }
        }
        if (argmin != tight) {
            // same region, named by its full argmin
            queue.push_back(argmin);
            continue;
        }
        PolyhedralCell cell;
        cell.dimension = affine_dimension(gens, n);
        cell.polyhedron = std::move(h);
        cell.generators = std::move(gens);
        for (auto k : tight) {
            cell.dual_face.push_back(terms[k].exponent);
        }
        found.emplace(tight, std::move(cell));
        for (std::size_t j = 0; j < terms.size(); ++j) {
            if (!std::binary_search(tight.begin(), tight.end(), j)) {
                auto next = tight;
                next.insert(std::upper_bound(next.begin(), next.end(), j), j);
                queue.push_back(std::move(next));
            }
        }
    }
    for (auto& [key, cell] : found) {
        complex.cells.push_back(std::move(cell));
    }
    std::stable_sort(complex.cells.begin(), complex.cells.end(), [](const PolyhedralCell& a, const PolyhedralCell& b) {
        if (a.dimension != b.dimension) {
            return a.dimension < b.dimension;
        }
        return a.dual_face < b.dual_face;
    });
    compute_incidences(complex);
    return complex;
}

TropicalPrevariety::TropicalPrevariety(std::vector<TropicalPolynomial> generators) : generators_(std::move(generators))
{
    if (generators_.empty()) {
        throw std::invalid_argument("tropical prevariety needs at least one generator");
    }
    for (const auto& g : generators_) {
        if (g.dim() != generators_.front().dim()) {
            throw std::invalid_argument("tropical prevariety: generators live in different dimensions");
        }
    }
}

bool TropicalPrevariety::contains(const MonomialValuationPoint& w) const
{
    return std::all_of(generators_.begin(), generators_.end(),
                       [&](const TropicalPolynomial& g) { return in_tropical_hypersurface(g, w); });
}

std::vector<PolyhedralCell> TropicalPrevariety::cells() const
{
    const std::size_t n = dim();
    std::vector<PolyhedralCell> current = tropical_hypersurface(generators_.front()).cells;
    for (std::size_t g = 1; g < generators_.size(); ++g) {
        auto other = tropical_hypersurface(generators_[g]).cells;
        std::vector<PolyhedralCell> next;
        for (const auto& a : current) {
            for (const auto& b : other) {
                PolyhedralCell c;
                c.polyhedron = a.polyhedron;
                for (std::size_t r = 0; r < b.polyhedron.eq_a.size(); ++r) {
                    c.polyhedron.add_equation(b.polyhedron.eq_a[r], b.polyhedron.eq_b[r]);
                }
                for (std::size_t r = 0; r < b.polyhedron.ineq_a.size(); ++r) {
                    c.polyhedron.add_inequality(b.polyhedron.ineq_a[r], b.polyhedron.ineq_b[r]);
                }
                c.generators = enumerate_generators(c.polyhedron);
                if (c.generators.empty()) {
                    continue;
                }
                c.dimension = affine_dimension(c.generators, n);
                bool duplicate = false;
                for (const auto& d : next) {
                    if (d.generators.vertices == c.generators.vertices && d.generators.rays == c.generators.rays &&
                        d.dimension == c.dimension) {
                        duplicate = true;
                        break;
                    }
                }
                if (!duplicate) {
                    next.push_back(std::move(c));
                }
            }
        }
        current = std::move(next);
    }
    return current;
}

std::string to_string(const TropicalPolynomial& f)
{
    std::ostringstream os;
    os << "min(";
    bool first = true;
    for (const auto& [alpha, c] : f.terms()) {
        if (!first) {
            os << ", ";
        }
        first = false;
        os << to_string(c);
        for (std::size_t i = 0; i < alpha.size(); ++i) {
            if (alpha[i] != 0) {
                os << " + " << alpha[i] << "*w" << (i + 1);
            }
        }
    }
    os << ")";
    return os.str();
}

} // namespace tropdeg
