#pragma once

// Combinatorial data of an snc model X_0 = sum b_i E_i: multiplicities,
// canonical-divisor coefficients a_i, the stratum complex, and optional
// stratum masses. Everything here is exact except the user masses.

#include "tropdeg/polyhedral.hpp"
#include "tropdeg/rational.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tropdeg {

using Stratum = std::vector<std::size_t>; // sorted component indices

struct SncComponent {
    std::string label;
    int b = 1;
    Rational a = 0;
};

class SncValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class SncCombinatorics {
public:
    /// `strata` lists the subsets J with E_J nonempty. Singletons are added
    /// automatically; any other missing nonempty subset of a listed stratum is
    /// an error naming that subset. Mass keys must be strata with positive mass.
    SncCombinatorics(std::vector<SncComponent> components, std::vector<Stratum> strata,
                     std::map<Stratum, double> masses = {});

    const std::vector<SncComponent>& components() const { return components_; }
    std::size_t size() const { return components_.size(); }
    /// All strata, ordered by size then lexicographically.
    const std::vector<Stratum>& strata() const { return strata_; }
    const std::map<Stratum, double>& masses() const { return masses_; }
    bool is_stratum(const Stratum& j) const;

    std::size_t index_of(const std::string& label) const;
    std::string label_of(const Stratum& j) const; // "E0,E1"
    std::vector<int> multiplicities() const;
    WeightedSimplex simplex(const Stratum& j) const;

private:
    std::vector<SncComponent> components_;
    std::vector<Stratum> strata_;
    std::map<Stratum, double> masses_;
};

/// One simplex Δ_J per stratum inside H = {sum b_i w_i = 1} in R^I; cells are
/// ordered like strata() and incidences follow the face relation.
PolyhedralComplex dual_complex(const SncCombinatorics& m);

/// Log_X(val_X(w)) for a monomial point w on the realized complex: the section
/// property makes this the identity. Points outside every face are rejected.
RationalVector log_of_monomial(const SncCombinatorics& m, const RationalVector& w);
RealVector log_of_monomial(const SncCombinatorics& m, const RealVector& w, double tol = 1e-12);

struct KappaResult {
    Rational kappa;
    std::vector<Rational> per_component; // a_i / b_i
};
KappaResult kappa(const SncCombinatorics& m);

/// a_i <- a_i - kappa * b_i, so that the new kappa is 0.
SncCombinatorics normalize_kappa(const SncCombinatorics& m);

struct EssentialComplex {
    std::vector<Stratum> faces;         // strata with kappa_i = kappa on all of J
    int dimension = -1;                 // essential dimension d
    std::vector<Stratum> maximal_faces; // = minimal essential strata
    std::vector<Stratum> top_faces;     // maximal faces of dimension d
};
EssentialComplex essential_complex(const SncCombinatorics& m);

class MissingMassError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// One normalized Lebesgue measure per top-dimensional essential face, with
/// masses m_J / sum m_J. Faces without a user mass get 1 when
/// `default_masses` is set; otherwise they are named in a MissingMassError.
std::vector<WeightedSimplexMeasure> limit_measure(const SncCombinatorics& m, bool default_masses = false);

} // namespace tropdeg
