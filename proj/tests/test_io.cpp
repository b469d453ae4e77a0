#include "sphroots/io.hpp"

#include "sphroots/errors.hpp"
#include "test_helpers.hpp"

#include <doctest.h>

using namespace sphroots;

namespace {

const char* kExample1 =
    "# worked example 1\n"
    "group A 3\n"
    "lattice sc\n"
    "levi 2\n"
    "psi 1 1 0\n"
    "psi 0 1 1\n"
    "xi diff 1 2\n";

} // namespace

TEST_CASE("datum file parse and round trip") {
    DatumFile f = parse_datum_file(kExample1);
    CHECK(f.group == DynkinType::parse("A3"));
    CHECK(f.levi == std::vector<int>{1});
    CHECK(f.psi.size() == 2);
    REQUIRE(f.xi.size() == 1);
    CHECK(f.xi[0].is_diff);
    // serialize(parse(f)) is idempotent on canonical files
    std::string once = serialize_datum(f);
    std::string twice = serialize_datum(parse_datum_file(once));
    CHECK(once == twice);
}

TEST_CASE("parse errors carry line numbers") {
    CHECK_THROWS_AS(parse_datum_file("grp A 3\n"), ParseError);
    CHECK_THROWS_AS(parse_datum_file("group Z 3\n"), ParseError);
    CHECK_THROWS_AS(parse_datum_file("group A 3\npsi 1 1\n"), ParseError);     // wrong length
    CHECK_THROWS_AS(parse_datum_file("group A 3\nxi diff 1 2\n"), ParseError); // missing psi
    CHECK_THROWS_AS(parse_datum_file("group A 0\n"), ParseError);
    CHECK_THROWS_AS(parse_datum_file("psi 1 1 0\n"), ParseError);              // no group
    try {
        parse_datum_file("group A 3\nlattice torus\n");
        FAIL("expected throw");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
    }
}

TEST_CASE("build_datum checks psi entries") {
    DatumFile f = parse_datum_file("group A 3\nlevi 2\npsi 1 0 1\n");
    CHECK_THROWS_AS(build_datum(f), ParseError); // not a root
    f = parse_datum_file("group A 3\nlevi 2\npsi 0 1 0\n");
    CHECK_THROWS_AS(build_datum(f), ParseError); // inside the Levi
    f = parse_datum_file("group A 3\nlevi 2\npsi 1 1 0\nxi 1/3 0 0\n");
    CHECK_THROWS_AS(build_datum(f), ParseError); // xi outside X(T)
    // a good one matches the helper-built datum
    SphericalDatum d = build_datum(parse_datum_file(kExample1));
    SphericalDatum e = sphtest::example1();
    CHECK(d.fingerprint() == e.fingerprint());
}

TEST_CASE("adjoint model restricts the lattice") {
    // In the adjoint model xi = (a1 - a3)/2 is not a character
    DatumFile f = parse_datum_file(
        "group A 3\nlattice adjoint\nlevi 2\npsi 1 1 0\npsi 0 1 1\nxi 1/2 0 -1/2\n");
    CHECK_THROWS_AS(build_datum(f), ParseError);
    DatumFile g = parse_datum_file(
        "group A 3\nlattice sc\nlevi 2\npsi 1 1 0\npsi 0 1 1\nxi 1/2 0 -1/2\n");
    CHECK(validate(build_datum(g)).ok());
}

TEST_CASE("result serialization has stable key order") {
    ResultFile r;
    r.group = DynkinType::parse("A3");
    r.rank = 2;
    r.algorithm = "both";
    r.spherical_roots = {to_q(IVec{1, 1, 0}), to_q(IVec{0, 1, 1})};
    r.lattice_basis = {to_q(IVec{1, 1, 0}), QVec{Rat(1, 2), Rat(0), Rat(-1, 2)}};
    std::string text = serialize_result(r);
    CHECK(text ==
          "status ok\n"
          "group A 3\n"
          "lattice sc\n"
          "algorithm both\n"
          "rank 2\n"
          "spherical_root 1 1 0\n"
          "spherical_root 0 1 1\n"
          "lattice_basis 1 1 0\n"
          "lattice_basis 1/2 0 -1/2\n"
          "degenerations_base 0\n"
          "degenerations_optimized 0\n"
          "timing_ms 0\n");
}
