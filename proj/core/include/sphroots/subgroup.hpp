#ifndef SPHROOTS_SUBGROUP_HPP
#define SPHROOTS_SUBGROUP_HPP

#include "sphroots/lattice.hpp"
#include "sphroots/levi.hpp"
#include "sphroots/sphdata.hpp"

#include <string>
#include <vector>

namespace sphroots {

/// The combinatorial encoding (Pi_L, Xi_K, Psi) of a spherical subgroup H up
/// to conjugation by the connected center: a standard Levi datum, a saturated
/// sublattice of X(C) cutting out the torus part of K, and the set of active
/// C-roots.
class SphericalDatum {
public:
    SphericalDatum(LeviDatum ld, Sublattice xi, std::vector<CWeight> psi);

    const LeviDatum& levi() const { return ld_; }
    const RootSystem& rs() const { return ld_.rs(); }
    const Sublattice& xi() const { return xi_; }
    const std::vector<CWeight>& psi() const { return psi_; }

    bool psi_contains(const CWeight& w) const;

    /// Canonical fingerprint for memoization and trace records.
    std::string fingerprint() const;

private:
    LeviDatum ld_;
    Sublattice xi_; // X(C)-model coordinates, saturated
    std::vector<CWeight> psi_;
};

struct ClassPartition {
    std::vector<std::vector<CWeight>> classes; // Omega-blocks, each sorted
    std::vector<CWeight> psi0;                 // union of blocks of size >= 2
    std::vector<CWeight> psi0max;

    int class_of(const CWeight& w) const;
    bool in_psi0max(const CWeight& w) const;
};

struct ValidationReport {
    std::vector<std::string> violations; // structural invariant failures
    bool not_spherical = false;          // structurally fine but the module fails
    std::string not_spherical_reason;
    bool unknown_module = false;
    std::string unknown_reason;

    bool ok() const { return violations.empty() && !not_spherical && !unknown_module; }
    std::string str() const;
};

/// Check every datum invariant: psi inside Phi^+, the closure property, xi
/// saturation, class structure, and sphericity of the induced module.  Never
/// throws; registry gaps are reported as unknown_module.
ValidationReport validate(const SphericalDatum& d);

/// Equivalence classes of active C-roots: lambda ~ mu iff the highest weights
/// pair equally against every Levi coroot and lambda - mu lies in xi.
ClassPartition classes(const SphericalDatum& d);

/// Datum of N_G(H)^0: xi is replaced by the saturation of the lattice spanned
/// by same-class differences inside psi0max.
SphericalDatum normalize(const SphericalDatum& d);

/// The weight lattice Lambda_G(G/H) as a sublattice of X(T), in simple-root
/// coordinates.  Throws UnknownModuleError when the registry has no data.
Sublattice weight_lattice(const SphericalDatum& d);

/// Descriptor of the K-module attached to the datum (one summand per class).
SphericalModuleDescriptor module_descriptor(const SphericalDatum& d, const ClassPartition& part);

/// Finest partition of psi such that each simple Levi factor acts inside a
/// single block; requires xi = 0.
std::vector<std::vector<CWeight>> sm_decomposition(const SphericalDatum& d);

/// Upsilon_i = { mu in psi \ block : Supp(hat mu) inside Supp(block) }.
std::vector<CWeight> upsilon(const SphericalDatum& d, const std::vector<CWeight>& block);

/// Elements nu of theta with mu - nu never in Phi^+ for mu in theta.
std::vector<CWeight> upper_elements(const SphericalDatum& d, const std::vector<CWeight>& theta);

/// Deterministic pivot choice: the upper element with the lexicographically
/// greatest highest weight.
CWeight pick_upper(const SphericalDatum& d, const std::vector<CWeight>& theta);

} // namespace sphroots

#endif
