#include "sphroots/degen.hpp"

#include "test_helpers.hpp"

#include <doctest.h>

#include <set>

using namespace sphroots;
using sphtest::make_datum;

namespace {

std::set<IVec> hat_set(const SphericalDatum& d) {
    std::set<IVec> s;
    for (const CWeight& w : d.psi()) s.insert(d.levi().hat(w));
    return s;
}

} // namespace

TEST_CASE("press-left on the labelled seven-box string") {
    // p = 6, occupied weights {-6, -2, 4} = positions {6, 4, 1}
    StringOccupancy s;
    s.p = 6;
    s.occupied = {1, 4, 6};
    StringOccupancy out = press_left(s);
    CHECK(out.occupied == std::vector<int>{4, 5, 6}); // weights {-2, -4, -6}
    // fully occupied string is fixed
    s.occupied = {0, 1, 2, 3, 4, 5, 6};
    CHECK(press_left(s).occupied == s.occupied);
    // already packed
    s.occupied = {5, 6};
    CHECK(press_left(s).occupied == s.occupied);
    // never moves rightward in weight terms: -p + 2i <= n_i
    s.occupied = {0, 3};
    out = press_left(s);
    for (size_t i = 0; i < s.occupied.size(); ++i) CHECK(out.occupied[i] >= s.occupied[i]);
}

TEST_CASE("theta chain: maximal classes get the empty chain") {
    SphericalDatum d = sphtest::example1();
    ClassPartition part = classes(d);
    ThetaChain chain = theta_chain(d, part, 0);
    CHECK(chain.increments.empty());
    CHECK(chain.target_class == 0);
    CHECK(chain.theta.is_zero());
}

TEST_CASE("theta chain in the SO7 example") {
    SphericalDatum d = make_datum("B3", {2}, {{0, 1, 1}, {1, 1, 0}, {0, 1, 2}, {1, 1, 1}},
                                  {{1, 2}, {3, 4}});
    ClassPartition part = classes(d);
    REQUIRE(part.classes.size() == 2);
    int low = part.in_psi0max(part.classes[0].front()) ? 1 : 0;
    int high = 1 - low;
    ThetaChain chain = theta_chain(d, part, low);
    CHECK(chain.target_class == high);
    REQUIRE(chain.increments.size() == 1);
    // the increment is mu1 (hat a2 + a3), an active root inside the class
    CHECK(d.levi().hat(chain.increments[0]) == IVec{0, 1, 1});
    CHECK((int)chain.increments.size() <= (int)part.classes.size());
}

TEST_CASE("multiplicative degeneration of example 1") {
    SphericalDatum d = sphtest::example1();
    ClassPartition part = classes(d);
    CWeight l1 = d.levi().restrict(IVec{1, 1, 0});
    CWeight l2 = d.levi().restrict(IVec{0, 1, 1});

    SphericalDatum n1 = mult_degeneration(d, l1);
    CHECK(hat_set(n1) == std::set<IVec>{{0, 1, 1}});
    CHECK(n1.xi().rank() == 0); // K grows to the full Levi
    CHECK(validate(n1).ok());

    SphericalDatum n2 = mult_degeneration(d, l2);
    CHECK(hat_set(n2) == std::set<IVec>{{1, 1, 0}});

    // rank drops by exactly one
    CHECK(weight_lattice(n1).rank() == weight_lattice(d).rank() - 1);
    CHECK(weight_lattice(n2).rank() == weight_lattice(d).rank() - 1);

    // type-1 classes are untouched, and the pivot must be maximal
    CHECK_THROWS_AS(mult_degeneration(n1, n1.psi().front()), PreconditionError);
}

TEST_CASE("multiplicative degeneration in the SO7 example") {
    SphericalDatum d = make_datum("B3", {2}, {{0, 1, 1}, {1, 1, 0}, {0, 1, 2}, {1, 1, 1}},
                                  {{1, 2}, {3, 4}});
    // degenerate by 2mu1 (hat a2+2a3): the non-maximal class loses mu1 too
    CWeight pivot = d.levi().restrict(IVec{0, 1, 2});
    SphericalDatum n = mult_degeneration(d, pivot);
    CHECK(hat_set(n) == std::set<IVec>{{1, 1, 0}, {1, 1, 1}});
    CHECK(validate(n).ok());
    CHECK(weight_lattice(n).rank() == weight_lattice(d).rank() - 1);
}

TEST_CASE("additive degeneration of example 2") {
    SphericalDatum d = sphtest::example2();
    CWeight l1 = d.levi().restrict(IVec{1, 1, 0});
    CWeight l2 = d.levi().restrict(IVec{1, 1, 1});

    AddDegenResult r1 = add_degeneration_full(d, l1);
    CHECK(r1.delta == IVec{1, 1, 0});
    CHECK(r1.datum.levi().pi_L().empty()); // strongly solvable result
    CHECK(hat_set(r1.datum) == std::set<IVec>{{0, 1, 1}, {0, 0, 1}});
    CHECK(validate(r1.datum).ok());

    AddDegenResult r2 = add_degeneration_full(d, l2);
    CHECK(hat_set(r2.datum) == std::set<IVec>{{1, 1, 0}, {0, 1, 0}});
    CHECK(validate(r2.datum).ok());

    // lattice split: Lambda(d) = Lambda(d') + Z delta as a direct sum
    for (const AddDegenResult* r : {&r1, &r2}) {
        Sublattice before = weight_lattice(d);
        Sublattice after = weight_lattice(r->datum);
        Sublattice zdelta = Sublattice::from_generators(3, {to_q(r->delta)});
        CHECK(before == after.sum(zdelta));
        CHECK(before.rank() == after.rank() + 1);
    }
    // the two degenerations have different weight lattices
    CHECK_FALSE(weight_lattice(r1.datum) == weight_lattice(r2.datum));
}

TEST_CASE("additive degeneration preconditions") {
    SphericalDatum d1 = sphtest::example1();
    CHECK_THROWS_AS(add_degeneration(d1, d1.psi().front()), PreconditionError);
    SphericalDatum d2 = sphtest::example2();
    CWeight absent = d2.levi().restrict(IVec{0, 0, 1});
    CHECK_THROWS_AS(add_degeneration(d2, absent), PreconditionError);
}

TEST_CASE("additive degeneration with a one-dimensional loner") {
    // A2, Levi empty, psi = {a1+a2, a2}: degenerating by a2 keeps a1+a2 - a2
    SphericalDatum d = make_datum("A2", {}, {{1, 1}, {0, 1}});
    CWeight top = d.levi().restrict(IVec{1, 1});
    CWeight low = d.levi().restrict(IVec{0, 1});
    AddDegenResult r = add_degeneration_full(d, top);
    CHECK(hat_set(r.datum) == std::set<IVec>{{0, 1}});
    AddDegenResult r2 = add_degeneration_full(d, low);
    CHECK(hat_set(r2.datum) == std::set<IVec>{{1, 0}});
    // lattice splits again
    Sublattice before = weight_lattice(d);
    CHECK(before == weight_lattice(r.datum).sum(Sublattice::from_generators(2, {to_q(r.delta)})));
}

TEST_CASE("additive results of example 2 recurse to singletons") {
    SphericalDatum d = sphtest::example2();
    SphericalDatum n1 = add_degeneration(d, d.levi().restrict(IVec{1, 1, 0}));
    // two further additive degenerations land on primitive data
    for (const CWeight& w : n1.psi()) {
        SphericalDatum m = add_degeneration(n1, w);
        CHECK(m.psi().size() == 1);
        CHECK(validate(m).ok());
    }
}
