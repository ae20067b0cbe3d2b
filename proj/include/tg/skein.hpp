#ifndef TG_SKEIN_HPP
#define TG_SKEIN_HPP

#include <map>
#include <stdexcept>
#include <vector>

#include "tg/diagram.hpp"
#include "tg/ideal.hpp"
#include "tg/ring.hpp"

namespace tg {

// Thrown when a state sum or skein recursion would exceed the crossing cap.
struct CapExceeded : std::runtime_error {
    explicit CapExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

inline constexpr int kDefaultCrossingCap = 24;

// Kauffman bracket of a closed diagram, a Laurent polynomial in A, normalized
// so the unknot has bracket 1. Virtual crossings are traversed flat when
// counting state loops.
LaurentPoly bracket(const TangleDiagram& d, int cap = kDefaultCrossingCap);

// Element of the Kauffman bracket skein module of the 2n-disk: a linear
// combination of noncrossing matchings (Catalan tangles).
struct TLElement {
    struct MatchingLess {
        bool operator()(const Matching& a, const Matching& b) const {
            return a.pairs < b.pairs;
        }
    };
    std::map<Matching, LaurentPoly, MatchingLess> coeff;
};

TLElement tlDecompose(const TangleDiagram& t, int cap = kDefaultCrossingCap);

// Number of circles formed by overlaying two perfect matchings of 2n points.
int matchingCircles(const Matching& a, const Matching& b, int n);

// Ideal of Z[A^+-1] generated by brackets of all Catalan closures
// (bracketIdeal) or of all closures including crossing ones
// (virtualBracketIdeal).
IdealZA bracketIdeal(const TangleDiagram& t, int cap = kDefaultCrossingCap);
IdealZA virtualBracketIdeal(const TangleDiagram& t, int cap = kDefaultCrossingCap);

// Jones polynomial of a classical oriented closed diagram, in the variable
// t4 = t^{1/4}: (-A)^{-3w} * bracket with A -> t4^{-1}.
LaurentPoly jones(const TangleDiagram& d, int cap = kDefaultCrossingCap);

// Bracket evaluated at A = zeta, a primitive eighth root of unity.
Cyclotomic bracketAtZeta(const TangleDiagram& d, int cap = kDefaultCrossingCap);

// Homflypt polynomial in v, z via the skein relation
// v^-1 P(L+) - v P(L-) = z P(L0), computed by switching crossings toward a
// descending diagram; trivial n-component links take ((v^-1 - v)/z)^(n-1).
LaurentPoly homflypt(const TangleDiagram& d, int cap = kDefaultCrossingCap);

// Alexander-Conway polynomial: homflypt at v = 1.
LaurentPoly conway(const TangleDiagram& d, int cap = kDefaultCrossingCap);

}  // namespace tg

#endif
