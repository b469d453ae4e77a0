#ifndef SPHROOTS_TEST_HELPERS_HPP
#define SPHROOTS_TEST_HELPERS_HPP

#include "sphroots/subgroup.hpp"

#include <string>
#include <vector>

namespace sphtest {

using namespace sphroots;

// Assemble a datum from human-level pieces: type string, 1-based Levi nodes,
// psi fiber representatives as coefficient vectors, xi generators given as
// pairs (i, j) meaning psi_i - psi_j (1-based) plus raw X(T) vectors.
inline SphericalDatum make_datum(const std::string& type, std::vector<int> levi1,
                                 std::vector<IVec> psi_reps,
                                 std::vector<std::pair<int, int>> xi_diffs = {},
                                 std::vector<QVec> xi_vecs = {},
                                 LatticeModel model = LatticeModel::SimplyConnected) {
    RootSystemPtr rs = RootSystem::build(DynkinType::parse(type), model);
    std::vector<int> levi;
    for (int i : levi1) levi.push_back(i - 1);
    LeviDatum ld(rs, levi);
    std::vector<CWeight> psi;
    for (const IVec& v : psi_reps) psi.push_back(ld.restrict(v));
    std::vector<QVec> gens;
    for (auto [i, j] : xi_diffs)
        gens.push_back(ld.xc_coords(psi[i - 1] - psi[j - 1]));
    for (const QVec& v : xi_vecs) gens.push_back(ld.xc_coords(ld.restrict(v)));
    Sublattice xi = Sublattice::from_generators(ld.xc_rank(), gens).saturate();
    return SphericalDatum(std::move(ld), std::move(xi), std::move(psi));
}

// Worked example 1: SL4, Levi {a2}, hats a1+a2 and a2+a3, xi = <l1 - l2>;
// a single equivalence class, so both degenerations are multiplicative.
inline SphericalDatum example1() {
    return make_datum("A3", {2}, {{1, 1, 0}, {0, 1, 1}}, {{1, 2}});
}

// Worked example 2: SL4, Levi {a1}, hats a1+a2 and a1+a2+a3, K = L.
inline SphericalDatum example2() {
    return make_datum("A3", {1}, {{1, 1, 0}, {1, 1, 1}});
}

// Worked example 3: SL7, Levi {a1, a4}, four active C-roots, K = L.
inline SphericalDatum example3() {
    return make_datum("A6", {1, 4},
                      {{1, 1, 0, 0, 0, 0}, {1, 1, 1, 1, 1, 1},
                       {0, 0, 0, 1, 1, 1}, {0, 0, 0, 0, 0, 1}});
}

inline IVec ray(std::initializer_list<long long> v) { return IVec(v); }

} // namespace sphtest

#endif
