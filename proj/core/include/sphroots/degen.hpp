#ifndef SPHROOTS_DEGEN_HPP
#define SPHROOTS_DEGEN_HPP

#include "sphroots/subgroup.hpp"

#include <map>
#include <optional>
#include <vector>

namespace sphroots {

/// A chain of C-root increments carrying a class of Psi~0 into Psi~0^max.
struct ThetaChain {
    int omega_class = -1;
    std::vector<CWeight> increments;
    int target_class = -1;
    CWeight theta; // sum of increments
};

/// Shortest chain (BFS, lexicographic tie-break) realizing Omega + theta
/// inside a maximal class; empty when omega already is maximal.  Throws
/// NoChainError on failure, which contradicts the structure theory and so
/// certifies an invalid datum.
ThetaChain theta_chain(const SphericalDatum& d, const ClassPartition& part, int omega);

struct MultDegenResult {
    SphericalDatum datum;
    std::vector<IVec> dropped;        // highest weights of the removed elements
    std::vector<ThetaChain> chains;   // the fixed chain choice per class
};

/// Multiplicative degeneration by lambda in psi0max of a normalized datum:
/// type-2 classes lose the element lambda - theta; xi becomes the saturated
/// span of same-class differences avoiding lambda.  The result is the datum
/// of N_G(H_infty)^0 and is already normalized.
MultDegenResult mult_degeneration_full(const SphericalDatum& d, const CWeight& lambda);
SphericalDatum mult_degeneration(const SphericalDatum& d, const CWeight& lambda);

/// Occupancy pattern of an sl2-string: positions are counted from the top,
/// position j carrying weight p - 2j.
struct StringOccupancy {
    IVec top;
    int p = 0;
    std::vector<int> occupied; // strictly increasing, within [0, p]
};

/// Press the occupied positions to the bottom of the string; the i-th lowest
/// occupied position moves to the i-th lowest position overall.
StringOccupancy press_left(const StringOccupancy& s);

struct AddDegenResult {
    SphericalDatum datum;
    IVec delta;
    /// Image of each positive u-line under the degeneration: root -> root,
    /// with the zero vector standing for the toral line.
    std::map<IVec, IVec> line_image;
};

/// Additive degeneration by lambda in psi of a normalized datum with
/// psi0 = 0 and K = L, via the delta-string press-left rule.  The result is
/// the datum of N_G(H_infty)^0 = M x (H_infty)_u.
AddDegenResult add_degeneration_full(const SphericalDatum& d, const CWeight& lambda);
SphericalDatum add_degeneration(const SphericalDatum& d, const CWeight& lambda);

} // namespace sphroots

#endif
