#ifndef TG_RING_HPP
#define TG_RING_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace tg {

using Int = boost::multiprecision::cpp_int;

// Multiplicative monomial x1^e1...xd^ed with signed exponents.
// Invariant: no zero exponent is stored.
struct Monomial {
    std::map<std::string, int> exps;

    Monomial() = default;
    explicit Monomial(std::map<std::string, int> e);

    int exponent(const std::string& var) const;
    bool isOne() const { return exps.empty(); }
    int totalDegree() const;

    Monomial operator*(const Monomial& o) const;
    Monomial inverse() const;

    bool operator==(const Monomial& o) const { return exps == o.exps; }
    bool operator<(const Monomial& o) const { return exps < o.exps; }
};

// Graded-lexicographic order on monomials, variables compared by name.
bool grlexLess(const Monomial& a, const Monomial& b);

// Sparse integer Laurent polynomial. Zero polynomial = empty term map.
// Invariant: no zero coefficient is stored.
class LaurentPoly {
  public:
    std::map<Monomial, Int> terms;

    LaurentPoly() = default;
    explicit LaurentPoly(Int c);
    explicit LaurentPoly(long c) : LaurentPoly(Int(c)) {}

    static LaurentPoly var(const std::string& name, int exp = 1);
    static LaurentPoly monomial(Int coeff, const Monomial& m);

    bool isZero() const { return terms.empty(); }
    bool isConstant() const;
    // True iff the polynomial is +-(single monomial), i.e. a unit of the
    // Laurent ring up to integer sign; unit test proper requires coeff +-1.
    bool isMonomialTerm() const { return terms.size() == 1; }
    bool isUnit() const;
    bool isOne() const;

    std::set<std::string> variables() const;
    Int constantValue() const;  // requires isConstant()

    // Leading term under grlex.
    std::pair<Monomial, Int> leadingTerm() const;  // requires !isZero()

    LaurentPoly operator+(const LaurentPoly& o) const;
    LaurentPoly operator-(const LaurentPoly& o) const;
    LaurentPoly operator*(const LaurentPoly& o) const;
    LaurentPoly operator-() const;
    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);

    bool operator==(const LaurentPoly& o) const { return terms == o.terms; }
    bool operator!=(const LaurentPoly& o) const { return !(*this == o); }
    bool operator<(const LaurentPoly& o) const { return terms < o.terms; }

    LaurentPoly pow(int n) const;  // n >= 0, or unit base for n < 0

    void addTerm(const Monomial& m, const Int& c);
};

// Canonical associate: shift every variable's minimum exponent to 0, then fix
// the sign so the grlex-greatest term has positive coefficient.
LaurentPoly lpNormalize(const LaurentPoly& p);

// gcd in the UFD Z[x1^+-,...]; result in canonical form, gcd(0,0)=0.
LaurentPoly lpGcd(const LaurentPoly& p, const LaurentPoly& q);

// Exact division: returns q with p = d*q, or nullopt if d does not divide p.
std::optional<LaurentPoly> lpDivideExact(const LaurentPoly& p, const LaurentPoly& d);

// Divisibility in the Laurent ring (i.e. up to units). 0 divides only 0.
bool lpDivides(const LaurentPoly& d, const LaurentPoly& p);

// Substitute a Laurent polynomial for a variable. If the variable occurs with
// negative exponents the value must be a unit (+-monomial).
LaurentPoly lpSubstitute(const LaurentPoly& p, const std::string& var, const LaurentPoly& value);

// Element of Z[zeta]/(zeta^4+1), zeta a primitive eighth root of unity.
struct Cyclotomic {
    Int c[4];  // c0 + c1 z + c2 z^2 + c3 z^3

    Cyclotomic() : c{0, 0, 0, 0} {}
    explicit Cyclotomic(Int a) : c{std::move(a), 0, 0, 0} {}
    static Cyclotomic zeta(int power = 1);

    bool isZero() const;
    bool isRationalInteger() const;

    Cyclotomic operator+(const Cyclotomic& o) const;
    Cyclotomic operator-(const Cyclotomic& o) const;
    Cyclotomic operator*(const Cyclotomic& o) const;
    Cyclotomic operator-() const;
    bool operator==(const Cyclotomic& o) const;

    Cyclotomic pow(long n) const;  // negative n requires a unit
    // Inverse when the element is a unit; nullopt otherwise.
    std::optional<Cyclotomic> inverseIfUnit() const;

    Int fieldNorm() const;  // product of the four conjugates, a rational integer
    std::string str() const;
};

struct CycAbsNorm {
    bool rational = false;  // true when the value is integer * unit
    Int value = 0;          // |integer|, or integral 4th root of the norm
    bool determined = true; // false => "non-rational" tagged result
};
CycAbsNorm cycAbsNorm(const Cyclotomic& v);

using EvalValue = std::variant<Int, Cyclotomic>;

// Ring homomorphism image of p under the assignment. Assignments must cover
// all variables of p; values raised to negative powers must be invertible.
EvalValue lpEval(const LaurentPoly& p, const std::map<std::string, EvalValue>& assignment);

// Convenience: evaluate with every variable set to the same integer.
Int lpEvalAllInt(const LaurentPoly& p, const Int& x);

// Textual syntax: terms like `-2*x^-3*y^2 + 1`, `^` for exponents, `*` optional.
LaurentPoly parsePoly(const std::string& text);
std::string printPoly(const LaurentPoly& p);

struct ParseError : std::runtime_error {
    size_t pos;
    ParseError(const std::string& msg, size_t p) : std::runtime_error(msg), pos(p) {}
};

Int intGcd(Int a, Int b);

}  // namespace tg

#endif
