#include "sphroots/subgroup.hpp"

#include "test_helpers.hpp"

#include <doctest.h>

#include <set>

using namespace sphroots;
using sphtest::make_datum;

namespace {

std::set<IVec> hat_set(const SphericalDatum& d, const std::vector<CWeight>& ws) {
    std::set<IVec> s;
    for (const CWeight& w : ws) s.insert(d.levi().hat(w));
    return s;
}

Sublattice pi_lattice(int n, std::vector<QVec> gens) {
    return Sublattice::from_generators(n, gens);
}

} // namespace

TEST_CASE("example 1 validates with one class") {
    SphericalDatum d = sphtest::example1();
    CHECK(validate(d).ok());
    ClassPartition part = classes(d);
    REQUIRE(part.classes.size() == 1);
    CHECK(part.classes[0].size() == 2);
    CHECK(part.psi0.size() == 2);
    CHECK(part.psi0max.size() == 2);
}

TEST_CASE("closure violation is caught") {
    // only the long-root class active: both decompositions have no active part
    SphericalDatum d = make_datum("A3", {2}, {{1, 1, 1}});
    ValidationReport rep = validate(d);
    CHECK_FALSE(rep.ok());
    bool found = false;
    for (const auto& v : rep.violations) found = found || v.find("closure") != std::string::npos;
    CHECK(found);
}

TEST_CASE("empty psi validates") {
    SphericalDatum d = make_datum("A3", {2}, {});
    CHECK(validate(d).ok());
    CHECK(classes(d).classes.empty());
}

TEST_CASE("example 2 has two singleton classes") {
    SphericalDatum d = sphtest::example2();
    CHECK(validate(d).ok());
    ClassPartition part = classes(d);
    CHECK(part.classes.size() == 2);
    CHECK(part.psi0.empty());
    CHECK(part.psi0max.empty());
}

TEST_CASE("singleton psi gives one singleton class") {
    SphericalDatum d = make_datum("A3", {2}, {{1, 0, 0}, {1, 1, 1}});
    // psi = {l1, l3} with l3 = l1 + l2 decomposable; closure: l1 active, fine
    CHECK(validate(d).ok());
    ClassPartition part = classes(d);
    CHECK(part.classes.size() == 2);
    CHECK(part.psi0.empty());
}

TEST_CASE("normalize: example 1 is already self-normalized") {
    SphericalDatum d = sphtest::example1();
    SphericalDatum n = normalize(d);
    CHECK(n.xi() == d.xi());
    CHECK(n.psi() == d.psi());
}

TEST_CASE("normalize: psi0 empty collapses xi to zero") {
    // start from example 2's datum but with a spurious xi
    SphericalDatum d = make_datum("A3", {1}, {{1, 1, 0}, {1, 1, 1}}, {{1, 2}});
    SphericalDatum n = normalize(d);
    CHECK(n.xi().rank() == 0);
}

TEST_CASE("normalize is idempotent on assorted data") {
    for (const SphericalDatum& d :
         {sphtest::example1(), sphtest::example2(), sphtest::example3(),
          make_datum("B3", {2}, {{0, 1, 1}, {1, 1, 0}, {0, 1, 2}, {1, 1, 1}},
                     {{1, 2}, {3, 4}})}) {
        SphericalDatum n = normalize(d);
        SphericalDatum nn = normalize(n);
        CHECK(nn.xi() == n.xi());
        CHECK(nn.psi() == n.psi());
        // classes are stable under normalization
        ClassPartition before = classes(d);
        ClassPartition after = classes(n);
        CHECK(before.classes.size() == after.classes.size());
        for (const auto& cls : before.classes) CHECK(after.class_of(cls.front()) >= 0);
        for (const auto& cls : before.classes) {
            int j = after.class_of(cls.front());
            CHECK(after.classes[j] == cls);
        }
    }
}

TEST_CASE("SO7: two linked classes with an exceptional chain") {
    // B3, Levi {alpha2}: psi = {mu1, mu2, 2mu1, mu1+mu2} with hats
    // a2+a3, a1+a2, a2+2a3, a1+a2+a3 and xi spanned by mu1 - mu2
    SphericalDatum d = make_datum("B3", {2}, {{0, 1, 1}, {1, 1, 0}, {0, 1, 2}, {1, 1, 1}},
                                  {{1, 2}, {3, 4}});
    CHECK(validate(d).ok());
    ClassPartition part = classes(d);
    REQUIRE(part.classes.size() == 2);
    CHECK(part.classes[0].size() == 2);
    CHECK(part.classes[1].size() == 2);
    CHECK(part.psi0.size() == 4);
    // only the top class {2mu1, mu1+mu2} is maximal
    CHECK(hat_set(d, part.psi0max) == std::set<IVec>{{0, 1, 2}, {1, 1, 1}});
    // within classes the angles are non-acute
    for (const auto& cls : part.classes)
        for (size_t i = 0; i < cls.size(); ++i)
            for (size_t j = i + 1; j < cls.size(); ++j)
                CHECK(d.levi().c_form(cls[i], cls[j]) <= Rat(0));
}

TEST_CASE("weight lattice of example 1") {
    SphericalDatum d = sphtest::example1();
    Sublattice lam = weight_lattice(d);
    Sublattice expect = pi_lattice(3, {to_q(IVec{1, 1, 0}),
                                       QVec{Rat(1, 2), Rat(0), Rat(-1, 2)}});
    CHECK(lam == expect);
    CHECK(lam.rank() == 2);
}

TEST_CASE("weight lattice of example 2") {
    SphericalDatum d = sphtest::example2();
    Sublattice lam = weight_lattice(d);
    CHECK(lam == Sublattice::full(3));
    CHECK(lam.rank() == 3);
}

TEST_CASE("weight lattice ranks on trivial cases") {
    // psi empty, full Levi: H = G, rank 0
    SphericalDatum d = make_datum("A2", {1, 2}, {});
    CHECK(weight_lattice(d).rank() == 0);
}

TEST_CASE("SM-decomposition of example 3") {
    SphericalDatum d = sphtest::example3();
    CHECK(validate(d).ok());
    auto blocks = sm_decomposition(d);
    REQUIRE(blocks.size() == 3);
    std::set<std::set<IVec>> got;
    for (const auto& b : blocks) {
        std::set<IVec> s;
        for (const CWeight& w : b) s.insert(d.levi().hat(w));
        got.insert(s);
    }
    std::set<std::set<IVec>> want{
        {{1, 1, 0, 0, 0, 0}, {1, 1, 1, 1, 1, 1}},
        {{0, 0, 0, 1, 1, 1}},
        {{0, 0, 0, 0, 0, 1}}};
    CHECK(got == want);
}

TEST_CASE("SM-decomposition of strongly solvable data is all singletons") {
    SphericalDatum d = make_datum("A2", {}, {{1, 1}, {0, 1}});
    auto blocks = sm_decomposition(d);
    CHECK(blocks.size() == 2);
    for (const auto& b : blocks) CHECK(b.size() == 1);
    // requires K = L
    SphericalDatum bad = sphtest::example1();
    CHECK_THROWS_AS(sm_decomposition(bad), PreconditionError);
}

TEST_CASE("upsilon of example 3") {
    SphericalDatum d = sphtest::example3();
    auto blocks = sm_decomposition(d);
    // find the {l1, l2} block
    for (const auto& b : blocks) {
        auto ups = upsilon(d, b);
        if (b.size() == 2) {
            CHECK(hat_set(d, ups) ==
                  std::set<IVec>{{0, 0, 0, 1, 1, 1}, {0, 0, 0, 0, 0, 1}});
        } else if (hat_set(d, b) == std::set<IVec>{{0, 0, 0, 1, 1, 1}}) {
            CHECK(hat_set(d, ups) == std::set<IVec>{{0, 0, 0, 0, 0, 1}});
        } else {
            CHECK(ups.empty());
        }
    }
}

TEST_CASE("upsilon on strongly solvable A2") {
    SphericalDatum d = make_datum("A2", {}, {{1, 1}, {0, 1}});
    auto blocks = sm_decomposition(d);
    for (const auto& b : blocks) {
        auto ups = upsilon(d, b);
        if (hat_set(d, b) == std::set<IVec>{{1, 1}}) {
            CHECK(hat_set(d, ups) == std::set<IVec>{{0, 1}});
        } else {
            CHECK(ups.empty());
        }
    }
}

TEST_CASE("upper elements") {
    SphericalDatum d = make_datum("A2", {}, {{1, 1}, {0, 1}});
    auto ups = upper_elements(d, d.psi());
    CHECK(hat_set(d, ups) == std::set<IVec>{{1, 1}});
    // singleton theta is its own upper set
    std::vector<CWeight> single{d.psi().front()};
    CHECK(upper_elements(d, single) == single);
    // pairwise non-comparable sets are all upper
    SphericalDatum e = make_datum("A3", {}, {{1, 1, 0}, {0, 1, 1}});
    CHECK(upper_elements(e, e.psi()).size() == 2);
}

TEST_CASE("validate reports instead of throwing on bad psi entries") {
    RootSystemPtr rs = RootSystem::build(DynkinType::parse("A3"));
    LeviDatum ld(rs, {1});
    // a negative C-root and a non-C-root sneak in through direct construction
    IVec neg{0, 0, -1};
    std::vector<CWeight> psi{ld.restrict(neg), ld.restrict(IVec{1, 1, 0})};
    SphericalDatum d(ld, Sublattice::zero(ld.xc_rank()), psi);
    ValidationReport rep = validate(d);
    CHECK_FALSE(rep.ok());
    CHECK_FALSE(rep.violations.empty());
    // zero weight is not a C-root either
    std::vector<CWeight> psi2{ld.restrict(IVec{0, 1, 0})};
    SphericalDatum d2(ld, Sublattice::zero(ld.xc_rank()), psi2);
    CHECK_FALSE(validate(d2).ok());
}
