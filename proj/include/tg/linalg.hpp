#ifndef TG_LINALG_HPP
#define TG_LINALG_HPP

#include "tg/ring.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <functional>
#include <vector>

namespace tg {

// Dense matrix over the integer Laurent ring.
struct RingMatrix {
    int rows = 0, cols = 0;
    std::vector<LaurentPoly> a;

    RingMatrix() = default;
    RingMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

    LaurentPoly& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const LaurentPoly& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    static RingMatrix identity(int n);
    std::string str() const;
};

// Exact determinant by fraction-free (Bareiss) elimination.
LaurentPoly matDeterminant(const RingMatrix& m);  // requires rows == cols

// Rank over the field of fractions, fraction-free elimination.
int rankOverFractions(const RingMatrix& m);

struct MinorCapExceeded : std::runtime_error {
    MinorCapExceeded() : std::runtime_error("minor enumeration cap exceeded") {}
};

// k-th elementary divisor of the module presented by m with q generators
// (columns): gcd of all (q-k)x(q-k) minors, canonical form. 0 for k<0, 1 for
// k>=q. minorCap bounds the number of minors evaluated.
LaurentPoly elementaryDivisor(const RingMatrix& m, int q, int k, long minorCap = 2000000);

// Rational multiple of an integer Laurent polynomial: num/den, den > 0.
struct QPolyEntry {
    LaurentPoly num;
    Int den = 1;

    QPolyEntry() = default;
    QPolyEntry(LaurentPoly n, Int d = 1);
    QPolyEntry operator+(const QPolyEntry& o) const;
    QPolyEntry operator*(const QPolyEntry& o) const;
    bool operator==(const QPolyEntry& o) const;
    bool isZero() const { return num.isZero(); }
};

struct QMatrix {
    int rows = 0, cols = 0;
    std::vector<QPolyEntry> a;

    QMatrix() = default;
    QMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
    QPolyEntry& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const QPolyEntry& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    static QMatrix identity(int n);
    static QMatrix fromRing(const RingMatrix& m);
    QMatrix operator*(const QMatrix& o) const;
    bool operator==(const QMatrix& o) const;
};

enum class SnfDomain { Integers, UnivariateRationalLaurent };

struct SnfResult {
    QMatrix U, S, V;                    // S = U * M * V over the domain
    std::vector<LaurentPoly> diagonal;  // canonical integer-primitive entries of S
};

// Smith normal form. Integer domain requires constant entries; the Laurent
// domain requires entries in a single variable.
SnfResult smithNormalForm(const RingMatrix& m, SnfDomain domain);

}  // namespace tg

#endif
