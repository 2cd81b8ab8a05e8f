#include <catch2/catch_amalgamated.hpp>

#include "ocrp/composition.hpp"
#include "ocrp/matrix.hpp"
#include "ocrp/scalar.hpp"

using namespace ocrp;

TEST_CASE("rational parsing and printing") {
    CHECK(parse_rational("1/2") == Rational(1, 2));
    CHECK(parse_rational("-3/9") == Rational(-1, 3));
    CHECK(parse_rational("7") == Rational(7));
    CHECK(to_string(Rational(2, 4)) == "1/2");
    CHECK(to_string(Rational(-6, 4)) == "-3/2");
    CHECK(to_string(Rational(5)) == "5");
    CHECK(to_string(Rational(0)) == "0");
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
}

TEST_CASE("rational normalization invariants") {
    Rational r = Rational(6) / Rational(-8);
    CHECK(numerator(r) == -3);
    CHECK(denominator(r) == 4);
    CHECK(parse_rational("6/-8") == r);
    CHECK(Rational(0.5) == Rational(1, 2));  // dyadic doubles convert exactly
    CHECK(to_double(Rational(1, 4)) == 0.25);
}

TEST_CASE("factorials and binomials") {
    CHECK(factorial(0) == 1);
    CHECK(factorial(5) == 120);
    CHECK(binomial(10, 3) == 120);
    CHECK(binomial(4, 5) == 0);
    CHECK(binomial(200, 100) > BigInt(1));
    CHECK(rising_factorial(Rational(1, 2), 3) == Rational(1, 2) * Rational(3, 2) * Rational(5, 2));
    CHECK(rising_factorial(Rational(7), 0) == 1);
    CHECK(falling_factorial(Rational(5), 2) == 20);
}

TEST_CASE("composition basics") {
    Composition c{2, 1};
    CHECK(c.size() == 3);
    CHECK(c.length() == 2);
    CHECK(c.str() == "2,1");
    CHECK(Composition::parse("2,1") == c);
    CHECK(Composition::parse("") == Composition());
    CHECK(Composition().size() == 0);
    CHECK_THROWS_AS(Composition({0, 1}), std::invalid_argument);
}

TEST_CASE("prepend and leftmost fraction") {
    CHECK(prepend(3, Composition{1, 1}) == Composition{3, 1, 1});
    CHECK(prepend(1, Composition()) == Composition{1});
    CHECK_THROWS_AS(prepend(0, Composition{1}), std::invalid_argument);
    CHECK(leftmost_fraction<Rational>(Composition{2, 1}) == Rational(2, 3));
    CHECK(leftmost_fraction<double>(Composition{1, 3}) == 0.25);
    CHECK_THROWS_AS(leftmost_fraction<Rational>(Composition()), std::invalid_argument);
}

TEST_CASE("breakpoints are normalized cumulative sums") {
    std::vector<Rational> b = to_breakpoints<Rational>(Composition{2, 1, 1});
    REQUIRE(b.size() == 3);
    CHECK(b[0] == Rational(1, 2));
    CHECK(b[1] == Rational(3, 4));
    CHECK(b[2] == 1);
}

TEST_CASE("composition enumeration") {
    std::vector<Composition> all3 = enumerate_compositions(3);
    REQUIRE(all3.size() == 4);
    CHECK(all3[0] == Composition{3});
    CHECK(all3[1] == Composition{1, 2});
    CHECK(all3[2] == Composition{2, 1});
    CHECK(all3[3] == Composition{1, 1, 1});
    CHECK(enumerate_compositions(0).size() == 1);
    CHECK(enumerate_compositions(1).size() == 1);
    CHECK(enumerate_compositions(6).size() == 32);
    CHECK_THROWS_AS(enumerate_compositions(21), std::domain_error);
}

TEST_CASE("rank and unrank are inverse for n <= 12") {
    for (std::int64_t n = 0; n <= 12; ++n) {
        CompositionSpace space(n);
        for (std::size_t k = 0; k < space.size(); ++k) {
            Composition c = space.unrank(k);
            CHECK(c.size() == n);
            CHECK(space.rank(c) == k);
        }
    }
}

TEST_CASE("matrix multiply and row sums") {
    Matrix<Rational> a(2, 2), b(2, 2);
    a(0, 0) = Rational(1, 2);
    a(0, 1) = Rational(1, 2);
    a(1, 1) = 1;
    b(0, 0) = Rational(1, 3);
    b(0, 1) = Rational(2, 3);
    b(1, 0) = 1;
    Matrix<Rational> p = multiply(a, b);
    CHECK(p(0, 0) == Rational(1, 6) + Rational(1, 2));
    CHECK(p(0, 1) == Rational(1, 3));
    CHECK(p(1, 0) == 1);
    std::vector<Rational> sums = p.row_sums();
    CHECK(sums[0] == 1);
    CHECK(sums[1] == 1);
}

TEST_CASE("exact inverse") {
    Matrix<Rational> m(2, 2);
    m(0, 0) = 1;
    m(0, 1) = 2;
    m(1, 0) = 3;
    m(1, 1) = 4;
    Matrix<Rational> inv = invert(m);
    CHECK(multiply(m, inv) == Matrix<Rational>::identity(2));
    Matrix<Rational> singular(2, 2);
    singular(0, 0) = 1;
    singular(1, 0) = 1;
    CHECK_THROWS_AS(invert(singular), std::domain_error);
}

TEST_CASE("state set labels") {
    StateSet cs = composition_states(3);
    CHECK(cs.size() == 4);
    CHECK(cs.label(0) == "3");
    CHECK(cs.label(3) == "1,1,1");
    StateSet is = integer_states(4);
    CHECK(is.size() == 4);
    CHECK(is.label(0) == "1");
    CHECK(is.label(3) == "4");
}

TEST_CASE("fixed space dimension of the identity") {
    CHECK(fixed_space_dimension(Matrix<Rational>::identity(3)) == 3);
    Matrix<Rational> swap2(2, 2);
    swap2(0, 1) = 1;
    swap2(1, 0) = 1;
    CHECK(fixed_space_dimension(swap2) == 1);
}
