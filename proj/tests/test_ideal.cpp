#include "tg/ideal.hpp"

#include <random>
#include <vector>

#include "doctest.h"
#include "tg/ring.hpp"

using namespace tg;

namespace {

LaurentPoly A(int e) { return LaurentPoly::var("A", e); }

LaurentPoly randomAPoly(std::mt19937& rng) {
    std::uniform_int_distribution<int> coeff(-4, 4), deg(0, 6);
    LaurentPoly p;
    int d = deg(rng);
    for (int i = 0; i <= d; ++i) p += LaurentPoly(Int(coeff(rng))) * A(i);
    return p;
}

}  // namespace

TEST_CASE("ideal construction oracles") {
    IdealZA nine({parsePoly("A^4 + 1"),
                  parsePoly("A^12 + A^4 - 1") * parsePoly("A^12 - A^8 - 1")});
    CHECK(nine.str() == "( 9 ; A^4 + 1 )");

    IdealZA seventeen({LaurentPoly(Int(17)), parsePoly("A^4 - 5")});
    CHECK(seventeen.str() == "( 17 ; A^4 - 5 )");

    CHECK(IdealZA(std::vector<LaurentPoly>{}).isZero());
    CHECK(IdealZA({LaurentPoly()}).isZero());
    CHECK(IdealZA(std::vector<LaurentPoly>{}).str() == "( 0 )");
    CHECK(IdealZA({LaurentPoly(Int(1))}).isUnitIdeal());
    CHECK(IdealZA({LaurentPoly(Int(-1))}).str() == "( 1 )");
    // Laurent units are stripped before the basis is computed
    CHECK(IdealZA({A(-7) - A(-3)}).str() == "( A^4 - 1 )");

    CHECK(IdealZA({LaurentPoly(Int(6)), LaurentPoly(Int(10))}).str() == "( 2 )");
    CHECK(IdealZA({parsePoly("2*A - 2"), parsePoly("3*A - 3")}).str() == "( A - 1 )");
}

TEST_CASE("ideal membership oracles") {
    IdealZA seventeen({LaurentPoly(Int(17)), parsePoly("A^4 - 5")});
    CHECK(seventeen.contains(LaurentPoly(Int(17))));
    CHECK(seventeen.contains(parsePoly("A^4 - 5")));
    CHECK(seventeen.contains(LaurentPoly()));
    CHECK(seventeen.contains(parsePoly("A^8 - 25")));
    CHECK_FALSE(seventeen.contains(LaurentPoly(Int(1))));
    CHECK_FALSE(seventeen.contains(parsePoly("-A^10 + A^6 - A^2 - A^-6")));
    LaurentPoly hopfPower(Int(1));
    for (int n = 1; n <= 6; ++n) {
        hopfPower = hopfPower * parsePoly("A^2 + A^-2");
        CAPTURE(n);
        CHECK_FALSE(seventeen.contains(hopfPower));
    }
    CHECK_FALSE(IdealZA(std::vector<LaurentPoly>{}).contains(LaurentPoly(Int(2))));
    CHECK(IdealZA(std::vector<LaurentPoly>{}).contains(LaurentPoly()));
}

TEST_CASE("ideal printing parses back") {
    IdealZA seventeen({LaurentPoly(Int(17)), parsePoly("A^4 - 5")});
    CHECK(parseIdeal(seventeen.str()) == seventeen);
    CHECK(parseIdeal("( 17 ; A^4 - 5 )") == seventeen);
    CHECK(parseIdeal("( 0 )").isZero());
    CHECK(parseIdeal("( 1 )").isUnitIdeal());
}

TEST_CASE("ideal generator order and unit invariance") {
    std::mt19937 rng(4242);
    int cases = 0;
    while (cases < 100) {
        std::vector<LaurentPoly> gens;
        int k = 1 + static_cast<int>(rng() % 3);
        for (int i = 0; i < k; ++i) gens.push_back(randomAPoly(rng));
        IdealZA base(gens);
        // permute
        std::shuffle(gens.begin(), gens.end(), rng);
        CHECK(IdealZA(gens) == base);
        // multiply each generator by a random Laurent unit
        std::vector<LaurentPoly> scaled;
        for (auto& g : gens) {
            int e = static_cast<int>(rng() % 7) - 3;
            LaurentPoly u = A(e);
            if (rng() % 2) u = -u;
            scaled.push_back(g * u);
        }
        CHECK(IdealZA(scaled) == base);
        // every generator is contained
        for (auto& g : gens) CHECK(base.contains(g));
        // random combinations are contained
        LaurentPoly combo;
        for (auto& g : gens) combo += g * randomAPoly(rng);
        CHECK(base.contains(combo));
        ++cases;
    }
}

TEST_CASE("ideal equality is mutual containment") {
    std::mt19937 rng(777);
    for (int rep = 0; rep < 100; ++rep) {
        IdealZA a({randomAPoly(rng), randomAPoly(rng)});
        IdealZA b({randomAPoly(rng), randomAPoly(rng)});
        bool mutual = true;
        for (auto& g : a.basis())
            if (!b.contains(g)) mutual = false;
        for (auto& g : b.basis())
            if (!a.contains(g)) mutual = false;
        CHECK((a == b) == mutual);
    }
}

TEST_CASE("evaluation at the eighth root of unity") {
    IdealZA nine({parsePoly("A^4 + 1"), LaurentPoly(Int(9))});
    CyclotomicIdeal cNine = evalIdealAtZeta(nine);
    CHECK_FALSE(cNine.isZero());
    CHECK_FALSE(cNine.isFullRing());
    REQUIRE(cNine.rows().size() == 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            CHECK(cNine.rows()[i][j] == (i == j ? 9 : 0));
    CHECK(cNine.contains(Cyclotomic(Int(9))));
    CHECK(cNine.contains(Cyclotomic(Int(9)) * Cyclotomic::zeta(3)));
    CHECK_FALSE(cNine.contains(Cyclotomic(Int(3))));

    IdealZA seventeen({LaurentPoly(Int(17)), parsePoly("A^4 - 5")});
    CyclotomicIdeal cSeventeen = evalIdealAtZeta(seventeen);
    // zeta^4 = -1, so A^4 - 5 evaluates to -6 and gcd(17, 6) = 1
    CHECK(cSeventeen.isFullRing());
    CHECK(cSeventeen.contains(Cyclotomic(Int(1))));

    CHECK(evalIdealAtZeta(IdealZA(std::vector<LaurentPoly>{})).isZero());
}

TEST_CASE("cyclotomic ideal membership") {
    CyclotomicIdeal zero(std::vector<Cyclotomic>{});
    CHECK(zero.isZero());
    CHECK(zero.contains(Cyclotomic()));
    CHECK_FALSE(zero.contains(Cyclotomic(Int(1))));

    // principal ideal generated by 1 + zeta
    Cyclotomic g = Cyclotomic(Int(1)) + Cyclotomic::zeta(1);
    CyclotomicIdeal I({g});
    CHECK(I.contains(g));
    CHECK(I.contains(g * Cyclotomic::zeta(2)));
    CHECK(I.contains(g * Cyclotomic(Int(-3))));
    // the field norm of 1 + zeta is 2, so 2 is in the ideal but 1 is not
    CHECK(I.contains(Cyclotomic(Int(2))));
    CHECK_FALSE(I.contains(Cyclotomic(Int(1))));

    std::mt19937 rng(31337);
    for (int rep = 0; rep < 100; ++rep) {
        auto rnd = [&]() {
            Cyclotomic v;
            for (auto& c : v.c) c = static_cast<int>(rng() % 9) - 4;
            return v;
        };
        Cyclotomic a = rnd(), b = rnd();
        CyclotomicIdeal J({a, b});
        CHECK(J.contains(a));
        CHECK(J.contains(b));
        CHECK(J.contains(a * rnd() + b * rnd()));
        CHECK(J == CyclotomicIdeal({b, a * Cyclotomic::zeta(1), a + b}));
    }
}

TEST_CASE("ideal rejects generators outside the bracket variable") {
    CHECK_THROWS_AS(IdealZA({parsePoly("x + 1")}), std::invalid_argument);
}
