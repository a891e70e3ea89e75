#include <catch2/catch_amalgamated.hpp>

#include "sl2kit/ring.hpp"

using namespace sl2;

TEST_CASE("ring spec grammar", "[ring]") {
    CHECK(parse_ring("Z").family() == RingFamily::Integers);
    CHECK(parse_ring("Z/12").desc().n == 12);
    CHECK(parse_ring("Z[1/10]").desc().m == 10);

    // quad(-19) selects the half basis since -19 = 1 mod 4
    Ring q = parse_ring("quad(-19)");
    CHECK(q.desc().d == -19);
    CHECK(q.desc().half_basis);
    CHECK_FALSE(parse_ring("quad(-2)").desc().half_basis);

    CHECK_THROWS_AS(parse_ring("Q"), Error);
    CHECK_THROWS_AS(parse_ring("Z/x"), Error);
    CHECK_THROWS_AS(parse_ring("Z/1"), Error);
    CHECK_THROWS_AS(parse_ring("Z[1/1]"), Error);
    CHECK_THROWS_AS(parse_ring("quad(12)"), Error);  // not squarefree, and d > 0
    CHECK_THROWS_AS(parse_ring("quad(5)"), Error);   // real quadratic rejected
    CHECK_THROWS_AS(parse_ring("quad(0)"), Error);
    CHECK_THROWS_AS(parse_ring("quad(-12)"), Error); // 4 | 12

    CHECK(parse_ring("Z[1/10]").desc().primes == std::vector<Int>{2, 5});
}

TEST_CASE("arithmetic canonical forms", "[ring]") {
    Ring z5 = Ring::mod_n(5);
    CHECK(z5.from_int(3) + z5.from_int(4) == z5.from_int(2));

    Ring l10 = Ring::localized(10);
    CHECK(l10.fraction(3, 2) * l10.fraction(1, 5) == l10.fraction(3, 10));
    CHECK_THROWS_AS(l10.fraction(1, 3), Error); // 3 does not divide 10

    // theta^2 = theta - 5 in Z[(1+sqrt(-19))/2]
    Ring q = Ring::quadratic(-19);
    RingElem theta = q.quad(0, 1);
    CHECK(theta * theta == q.quad(-5, 1));

    // mismatched rings refuse to combine
    CHECK_THROWS_AS(z5.one() + l10.one(), Error);
}

TEST_CASE("units and inverses", "[ring]") {
    Ring z = Ring::integers();
    Ring z12 = Ring::mod_n(12);
    Ring l10 = Ring::localized(10);
    Ring q19 = Ring::quadratic(-19);

    CHECK(is_unit(z12.from_int(5)));
    CHECK_FALSE(is_unit(z12.from_int(4)));
    CHECK(is_unit(l10.fraction(-4, 5))); // support {2,5}
    CHECK_FALSE(is_unit(l10.from_int(3)));
    CHECK_FALSE(is_unit(q19.quad(0, 1))); // norm(theta) = 5
    CHECK(is_unit(q19.from_int(-1)));

    CHECK(unit_inverse(z12.from_int(5)) == z12.from_int(5));
    CHECK(unit_inverse(l10.from_int(2)) == l10.fraction(1, 2));
    CHECK(unit_inverse(z.from_int(-1)) == z.from_int(-1));
    CHECK_THROWS_AS(unit_inverse(z.from_int(2)), Error);

    // norm form x^2 + xy + 5y^2 at (0,1)
    CHECK(quad_norm(q19.quad(0, 1)) == 5);
}

TEST_CASE("unit group closure on finite rings", "[ring]") {
    for (int n : {4, 5, 6, 7, 8, 9, 12}) {
        Ring r = Ring::mod_n(n);
        auto units = enumerate_units(r, HeightBound{});
        for (const RingElem& u : units) {
            CHECK(unit_inverse(u) * u == r.one());
            for (const RingElem& v : units) {
                CHECK(is_unit(u * v));
                CHECK(unit_inverse(u * v) == unit_inverse(v) * unit_inverse(u));
            }
        }
        // enumerate_units = exactly the elements passing is_unit
        size_t count = 0;
        for (const RingElem& e : enumerate_elements(r, HeightBound{}))
            if (is_unit(e)) ++count;
        CHECK(count == units.size());
    }
}

TEST_CASE("element enumeration order", "[ring]") {
    Ring z4 = Ring::mod_n(4);
    auto e4 = enumerate_elements(z4, HeightBound{});
    REQUIRE(e4.size() == 4);
    CHECK(e4[0] == z4.from_int(0));
    CHECK(e4[3] == z4.from_int(3));

    Ring z = Ring::integers();
    auto ez = enumerate_elements(z, HeightBound{2, 1});
    std::vector<RingElem> expect{z.from_int(-2), z.from_int(-1), z.from_int(0),
                                 z.from_int(1), z.from_int(2)};
    CHECK(ez == expect);

    Ring l2 = Ring::localized(2);
    auto el = enumerate_elements(l2, HeightBound{1, 1});
    std::vector<RingElem> want{l2.from_int(-1), l2.fraction(-1, 2), l2.from_int(0),
                               l2.fraction(1, 2), l2.from_int(1)};
    CHECK(el == want);
}

TEST_CASE("unit enumeration", "[ring]") {
    Ring z = Ring::integers();
    auto uz = enumerate_units(z, HeightBound{});
    REQUIRE(uz.size() == 2);
    CHECK(uz[0] == z.one());
    CHECK(uz[1] == z.from_int(-1));

    Ring z5 = Ring::mod_n(5);
    auto u5 = enumerate_units(z5, HeightBound{});
    REQUIRE(u5.size() == 4);
    for (int k = 1; k <= 4; ++k) CHECK(u5[k - 1] == z5.from_int(k));

    // Z[1/6] at exponent 1: +-2^i 3^j with |i|,|j| <= 1, 18 units
    Ring l6 = Ring::localized(6);
    auto u6 = enumerate_units(l6, HeightBound{1, 1});
    CHECK(u6.size() == 18);
    for (const RingElem& u : u6) CHECK(is_unit(u));
    CHECK(std::count(u6.begin(), u6.end(), l6.fraction(3, 2)) == 1);
    CHECK(std::count(u6.begin(), u6.end(), l6.fraction(-1, 6)) == 1);

    // Gaussian and Eisenstein unit groups come out complete
    CHECK(enumerate_units(Ring::quadratic(-1), HeightBound{}).size() == 4);
    CHECK(enumerate_units(Ring::quadratic(-3), HeightBound{}).size() == 6);
    CHECK(enumerate_units(Ring::quadratic(-19), HeightBound{}).size() == 2);
}

TEST_CASE("element literals round-trip", "[ring]") {
    Ring l10 = Ring::localized(10);
    CHECK(parse_elem(l10, "-3/10") == l10.fraction(-3, 10));
    CHECK(parse_elem(l10, "7") == l10.from_int(7));

    Ring q = Ring::quadratic(-19);
    CHECK(parse_elem(q, "t") == q.quad(0, 1));
    CHECK(parse_elem(q, "-t") == q.quad(0, -1));
    CHECK(parse_elem(q, "3-2*t") == q.quad(3, -2));
    CHECK(parse_elem(q, "1+t") == q.quad(1, 1));
    CHECK(parse_elem(q, "5") == q.quad(5, 0));
    CHECK(parse_elem(q, q.quad(3, -2).str()) == q.quad(3, -2));

    CHECK_THROWS_AS(parse_elem(Ring::integers(), "x"), Error);
}

TEST_CASE("commutativity and distributivity sampled", "[ring]") {
    Ring rings[] = {Ring::integers(), Ring::mod_n(9), Ring::localized(6),
                    Ring::quadratic(-19)};
    for (const Ring& r : rings) {
        auto elems = enumerate_elements(r, HeightBound{2, 1});
        for (size_t i = 0; i < elems.size(); i += 3) {
            for (size_t j = 0; j < elems.size(); j += 4) {
                const RingElem &a = elems[i], &b = elems[j];
                CHECK(a + b == b + a);
                CHECK(a * b == b * a);
                const RingElem& c = elems[(i + j) % elems.size()];
                CHECK(a * (b + c) == a * b + a * c);
            }
        }
    }
}
