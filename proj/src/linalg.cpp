#include "tg/linalg.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cassert>
#include <numeric>
#include <sstream>

namespace tg {

using Rat = boost::multiprecision::cpp_rational;

RingMatrix RingMatrix::identity(int n) {
    RingMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = LaurentPoly(Int(1));
    return m;
}

std::string RingMatrix::str() const {
    std::ostringstream os;
    for (int i = 0; i < rows; ++i) {
        os << "[ ";
        for (int j = 0; j < cols; ++j) {
            if (j) os << " ; ";
            os << printPoly(at(i, j));
        }
        os << " ]\n";
    }
    return os.str();
}

// ---------------------------------------------------- fraction-free methods

LaurentPoly matDeterminant(const RingMatrix& m) {
    assert(m.rows == m.cols);
    int n = m.rows;
    if (n == 0) return LaurentPoly(Int(1));
    RingMatrix w = m;
    LaurentPoly prev(Int(1));
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (w.at(k, k).isZero()) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (!w.at(i, k).isZero()) {
                    p = i;
                    break;
                }
            if (p < 0) return LaurentPoly();
            for (int j = 0; j < n; ++j) std::swap(w.at(k, j), w.at(p, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                LaurentPoly t = w.at(i, j) * w.at(k, k) - w.at(i, k) * w.at(k, j);
                auto d = lpDivideExact(t, prev);
                assert(d && "Bareiss division must be exact");
                w.at(i, j) = *d;
            }
            w.at(i, k) = LaurentPoly();
        }
        prev = w.at(k, k);
    }
    LaurentPoly det = w.at(n - 1, n - 1);
    return sign < 0 ? -det : det;
}

int rankOverFractions(const RingMatrix& m) {
    RingMatrix w = m;
    LaurentPoly prev(Int(1));
    int rank = 0;
    int row = 0;
    for (int col = 0; col < w.cols && row < w.rows; ++col) {
        int p = -1;
        for (int i = row; i < w.rows; ++i)
            if (!w.at(i, col).isZero()) {
                p = i;
                break;
            }
        if (p < 0) continue;
        if (p != row)
            for (int j = 0; j < w.cols; ++j) std::swap(w.at(row, j), w.at(p, j));
        for (int i = row + 1; i < w.rows; ++i) {
            for (int j = col + 1; j < w.cols; ++j) {
                LaurentPoly t = w.at(i, j) * w.at(row, col) - w.at(i, col) * w.at(row, j);
                auto d = lpDivideExact(t, prev);
                assert(d && "Bareiss division must be exact");
                w.at(i, j) = *d;
            }
            w.at(i, col) = LaurentPoly();
        }
        prev = w.at(row, col);
        ++row;
        ++rank;
    }
    return rank;
}

// ------------------------------------------------------ elementary divisors

namespace {

// Enumerates k-subsets of 0..n-1 in lexicographic order.
bool nextCombination(std::vector<int>& idx, int n) {
    int k = static_cast<int>(idx.size());
    for (int i = k - 1; i >= 0; --i) {
        if (idx[i] < n - (k - i)) {
            ++idx[i];
            for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

long long binomialCapped(int n, int k, long long cap) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > cap) return cap + 1;
    }
    return r;
}

}  // namespace

LaurentPoly elementaryDivisor(const RingMatrix& m, int q, int k, long minorCap) {
    assert(m.cols == q);
    if (k < 0) return LaurentPoly();
    if (k >= q) return LaurentPoly(Int(1));
    int s = q - k;
    if (s > m.rows || s > m.cols) return LaurentPoly();  // zero-padded rows give zero minors
    long long count = binomialCapped(m.rows, s, minorCap) * binomialCapped(m.cols, s, minorCap);
    if (count > minorCap) throw MinorCapExceeded();

    LaurentPoly g;
    std::vector<int> ri(s), ci0(s);
    std::iota(ri.begin(), ri.end(), 0);
    do {
        std::vector<int> ci = ci0;
        std::iota(ci.begin(), ci.end(), 0);
        do {
            RingMatrix sub(s, s);
            for (int i = 0; i < s; ++i)
                for (int j = 0; j < s; ++j) sub.at(i, j) = m.at(ri[i], ci[j]);
            g = lpGcd(g, matDeterminant(sub));
            if (g.isOne()) return g;
        } while (nextCombination(ci, m.cols));
    } while (nextCombination(ri, m.rows));
    return lpNormalize(g);
}

// ----------------------------------------------------------------- QMatrix

QPolyEntry::QPolyEntry(LaurentPoly n, Int d) : num(std::move(n)), den(std::move(d)) {
    assert(den != 0);
    if (den < 0) {
        den = -den;
        num = -num;
    }
    if (num.isZero()) {
        den = 1;
        return;
    }
    Int g = den;
    for (auto& [mo, c] : num.terms) g = intGcd(g, c);
    if (g > 1) {
        LaurentPoly reduced;
        for (auto& [mo, c] : num.terms) reduced.terms.emplace(mo, c / g);
        num = reduced;
        den /= g;
    }
}

QPolyEntry QPolyEntry::operator+(const QPolyEntry& o) const {
    return QPolyEntry(num * LaurentPoly(o.den) + o.num * LaurentPoly(den), den * o.den);
}

QPolyEntry QPolyEntry::operator*(const QPolyEntry& o) const {
    return QPolyEntry(num * o.num, den * o.den);
}

bool QPolyEntry::operator==(const QPolyEntry& o) const { return num == o.num && den == o.den; }

QMatrix QMatrix::identity(int n) {
    QMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = QPolyEntry(LaurentPoly(Int(1)));
    return m;
}

QMatrix QMatrix::fromRing(const RingMatrix& m) {
    QMatrix r(m.rows, m.cols);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) r.at(i, j) = QPolyEntry(m.at(i, j));
    return r;
}

QMatrix QMatrix::operator*(const QMatrix& o) const {
    assert(cols == o.rows);
    QMatrix r(rows, o.cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < o.cols; ++j) {
            QPolyEntry s;
            for (int k = 0; k < cols; ++k) s = s + at(i, k) * o.at(k, j);
            r.at(i, j) = s;
        }
    return r;
}

bool QMatrix::operator==(const QMatrix& o) const {
    return rows == o.rows && cols == o.cols && a == o.a;
}

// -------------------------------------------------------------------- SNF

namespace {

// Dense univariate polynomial over Q; coefficient of x^i at c[i], c empty for 0.
struct UPoly {
    std::vector<Rat> c;

    bool isZero() const { return c.empty(); }
    int deg() const { return static_cast<int>(c.size()) - 1; }
    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }

    static UPoly constant(const Rat& r) {
        UPoly p;
        if (r != 0) p.c.push_back(r);
        return p;
    }

    UPoly operator+(const UPoly& o) const {
        UPoly r;
        r.c.resize(std::max(c.size(), o.c.size()));
        for (size_t i = 0; i < c.size(); ++i) r.c[i] = c[i];
        for (size_t i = 0; i < o.c.size(); ++i) r.c[i] += o.c[i];
        r.trim();
        return r;
    }
    UPoly operator-(const UPoly& o) const {
        UPoly r;
        r.c.resize(std::max(c.size(), o.c.size()));
        for (size_t i = 0; i < c.size(); ++i) r.c[i] = c[i];
        for (size_t i = 0; i < o.c.size(); ++i) r.c[i] -= o.c[i];
        r.trim();
        return r;
    }
    UPoly operator*(const UPoly& o) const {
        if (isZero() || o.isZero()) return {};
        UPoly r;
        r.c.assign(c.size() + o.c.size() - 1, Rat(0));
        for (size_t i = 0; i < c.size(); ++i)
            for (size_t j = 0; j < o.c.size(); ++j) r.c[i + j] += c[i] * o.c[j];
        r.trim();
        return r;
    }
    UPoly operator-() const {
        UPoly r = *this;
        for (auto& x : r.c) x = -x;
        return r;
    }
};

void updivmod(const UPoly& a, const UPoly& b, UPoly& quo, UPoly& rem) {
    assert(!b.isZero());
    rem = a;
    quo = {};
    if (a.isZero() || a.deg() < b.deg()) return;
    quo.c.assign(a.deg() - b.deg() + 1, Rat(0));
    while (!rem.isZero() && rem.deg() >= b.deg()) {
        int d = rem.deg() - b.deg();
        Rat f = rem.c.back() / b.c.back();
        quo.c[d] += f;
        for (int i = 0; i <= b.deg(); ++i) rem.c[i + d] -= f * b.c[i];
        rem.trim();
    }
}

// Generic Smith normal form over a Euclidean domain.
template <class E>
struct EuclideanOps {
    std::function<bool(const E&)> isZero;
    std::function<E(const E&, const E&)> add, sub, mul;
    std::function<void(const E&, const E&, E&, E&)> divmod;
    std::function<long(const E&)> size;  // Euclidean size for pivot choice
    E zero, one;
};

template <class E>
struct GenericSnf {
    std::vector<std::vector<E>> S, U, V;
    const EuclideanOps<E>& ops;
    int rows, cols;

    GenericSnf(std::vector<std::vector<E>> m, const EuclideanOps<E>& o)
        : S(std::move(m)), ops(o) {
        rows = static_cast<int>(S.size());
        cols = rows ? static_cast<int>(S[0].size()) : 0;
        U.assign(rows, std::vector<E>(rows, ops.zero));
        V.assign(cols, std::vector<E>(cols, ops.zero));
        for (int i = 0; i < rows; ++i) U[i][i] = ops.one;
        for (int j = 0; j < cols; ++j) V[j][j] = ops.one;
    }

    void swapRows(int i, int j) {
        std::swap(S[i], S[j]);
        std::swap(U[i], U[j]);
    }
    void swapCols(int i, int j) {
        for (auto& r : S) std::swap(r[i], r[j]);
        for (auto& r : V) std::swap(r[i], r[j]);
    }
    // row i -= f * row j
    void addRow(int i, int j, const E& f) {
        for (int k = 0; k < cols; ++k) S[i][k] = ops.sub(S[i][k], ops.mul(f, S[j][k]));
        for (int k = 0; k < rows; ++k) U[i][k] = ops.sub(U[i][k], ops.mul(f, U[j][k]));
    }
    // col i -= f * col j
    void addCol(int i, int j, const E& f) {
        for (int k = 0; k < rows; ++k) S[k][i] = ops.sub(S[k][i], ops.mul(f, S[k][j]));
        for (int k = 0; k < cols; ++k) V[k][i] = ops.sub(V[k][i], ops.mul(f, V[k][j]));
    }

    void run() {
        int t = 0;
        int n = std::min(rows, cols);
        while (t < n) {
            // find pivot of minimal size
            int pi = -1, pj = -1;
            long best = 0;
            for (int i = t; i < rows; ++i)
                for (int j = t; j < cols; ++j)
                    if (!ops.isZero(S[i][j])) {
                        long sz = ops.size(S[i][j]);
                        if (pi < 0 || sz < best) {
                            pi = i;
                            pj = j;
                            best = sz;
                        }
                    }
            if (pi < 0) break;
            if (pi != t) swapRows(pi, t);
            if (pj != t) swapCols(pj, t);
            bool reduced = true;
            for (int i = t + 1; i < rows; ++i) {
                if (ops.isZero(S[i][t])) continue;
                E q, r;
                ops.divmod(S[i][t], S[t][t], q, r);
                addRow(i, t, q);
                if (!ops.isZero(r)) reduced = false;
            }
            for (int j = t + 1; j < cols; ++j) {
                if (ops.isZero(S[t][j])) continue;
                E q, r;
                ops.divmod(S[t][j], S[t][t], q, r);
                addCol(j, t, q);
                if (!ops.isZero(r)) reduced = false;
            }
            if (!reduced) continue;  // smaller remainders remain; pick a new pivot
            ++t;
        }
        // enforce divisibility chain
        bool changed = true;
        while (changed) {
            changed = false;
            for (int i = 0; i + 1 < n; ++i) {
                if (ops.isZero(S[i + 1][i + 1])) continue;
                E q, r;
                if (ops.isZero(S[i][i])) {
                    // move the nonzero entry up
                    swapRows(i, i + 1);
                    swapCols(i, i + 1);
                    changed = true;
                    continue;
                }
                ops.divmod(S[i + 1][i + 1], S[i][i], q, r);
                if (ops.isZero(r)) continue;
                // standard trick: fold entry (i+1,i+1) into column i and re-clear
                addCol(i, i + 1, ops.sub(ops.zero, ops.one));
                clearPair(i);
                changed = true;
            }
        }
    }

    // re-diagonalize the 2x2 block at (i,i) after a fold
    void clearPair(int i) {
        while (true) {
            bool dirty = false;
            for (int r = i; r <= i + 1; ++r)
                for (int c = i; c <= i + 1; ++c)
                    if (r != c && !ops.isZero(S[r][c])) dirty = true;
            if (!dirty && !ops.isZero(S[i][i])) {
                E q, rm;
                ops.divmod(S[i + 1][i + 1], S[i][i], q, rm);
                if (ops.isZero(rm)) return;
            }
            if (!dirty && ops.isZero(S[i][i])) {
                swapRows(i, i + 1);
                swapCols(i, i + 1);
                continue;
            }
            if (!dirty) {
                // d_i nonzero but does not divide d_{i+1}: fold again
                addCol(i, i + 1, ops.sub(ops.zero, ops.one));
                continue;
            }
            // pick smallest nonzero in the 2x2 block, clear around it
            int pi = -1, pj = -1;
            long best = 0;
            for (int r = i; r <= i + 1; ++r)
                for (int c = i; c <= i + 1; ++c)
                    if (!ops.isZero(S[r][c])) {
                        long sz = ops.size(S[r][c]);
                        if (pi < 0 || sz < best) {
                            pi = r;
                            pj = c;
                            best = sz;
                        }
                    }
            if (pi < 0) return;
            if (pi != i) swapRows(i, pi);
            if (pj != i) swapCols(i, pj);
            for (int r = i + 1; r <= i + 1; ++r)
                if (!ops.isZero(S[r][i])) {
                    E q, rm;
                    ops.divmod(S[r][i], S[i][i], q, rm);
                    addRow(r, i, q);
                }
            for (int c = i + 1; c <= i + 1; ++c)
                if (!ops.isZero(S[i][c])) {
                    E q, rm;
                    ops.divmod(S[i][c], S[i][i], q, rm);
                    addCol(c, i, q);
                }
        }
    }
};

EuclideanOps<Int> intOps() {
    EuclideanOps<Int> ops;
    ops.isZero = [](const Int& x) { return x == 0; };
    ops.add = [](const Int& a, const Int& b) { return a + b; };
    ops.sub = [](const Int& a, const Int& b) { return a - b; };
    ops.mul = [](const Int& a, const Int& b) { return a * b; };
    ops.divmod = [](const Int& a, const Int& b, Int& q, Int& r) {
        q = a / b;
        r = a - q * b;
        // round toward smaller remainder
        Int babs = b < 0 ? Int(-b) : b;
        if (r * 2 > babs) {
            q += b > 0 ? 1 : -1;
            r -= babs;
        } else if (r * 2 < -babs) {
            q -= b > 0 ? 1 : -1;
            r += babs;
        }
    };
    ops.size = [](const Int& x) {
        Int v = x < 0 ? Int(-x) : x;
        long bits = 0;
        while (v > 0) {
            v >>= 1;
            ++bits;
        }
        return bits;
    };
    ops.zero = 0;
    ops.one = 1;
    return ops;
}

EuclideanOps<UPoly> upolyOps() {
    EuclideanOps<UPoly> ops;
    ops.isZero = [](const UPoly& x) { return x.isZero(); };
    ops.add = [](const UPoly& a, const UPoly& b) { return a + b; };
    ops.sub = [](const UPoly& a, const UPoly& b) { return a - b; };
    ops.mul = [](const UPoly& a, const UPoly& b) { return a * b; };
    ops.divmod = [](const UPoly& a, const UPoly& b, UPoly& q, UPoly& r) { updivmod(a, b, q, r); };
    ops.size = [](const UPoly& x) { return static_cast<long>(x.deg()); };
    ops.zero = {};
    ops.one = UPoly::constant(1);
    return ops;
}

LaurentPoly upolyToLaurent(const UPoly& p, const std::string& var, Int& denOut) {
    // common denominator
    Int den = 1;
    for (auto& r : p.c) den = den / intGcd(den, Int(denominator(r))) * Int(denominator(r));
    LaurentPoly out;
    for (size_t i = 0; i < p.c.size(); ++i) {
        if (p.c[i] == 0) continue;
        Int n = Int(numerator(p.c[i])) * (den / Int(denominator(p.c[i])));
        Monomial m;
        if (i) m.exps[var] = static_cast<int>(i);
        out.addTerm(m, n);
    }
    denOut = den;
    return out;
}

QPolyEntry upolyToEntry(const UPoly& p, const std::string& var) {
    Int den;
    LaurentPoly num = upolyToLaurent(p, var, den);
    return QPolyEntry(num, den);
}

}  // namespace

SnfResult smithNormalForm(const RingMatrix& m, SnfDomain domain) {
    SnfResult result;
    if (domain == SnfDomain::Integers) {
        std::vector<std::vector<Int>> w(m.rows, std::vector<Int>(m.cols));
        for (int i = 0; i < m.rows; ++i)
            for (int j = 0; j < m.cols; ++j) {
                if (!m.at(i, j).isConstant())
                    throw std::runtime_error("integer SNF requires constant entries");
                w[i][j] = m.at(i, j).constantValue();
            }
        auto ops = intOps();
        GenericSnf<Int> snf(std::move(w), ops);
        snf.run();
        result.U = QMatrix(m.rows, m.rows);
        result.V = QMatrix(m.cols, m.cols);
        result.S = QMatrix(m.rows, m.cols);
        for (int i = 0; i < m.rows; ++i)
            for (int j = 0; j < m.rows; ++j) result.U.at(i, j) = QPolyEntry(LaurentPoly(snf.U[i][j]));
        for (int i = 0; i < m.cols; ++i)
            for (int j = 0; j < m.cols; ++j) result.V.at(i, j) = QPolyEntry(LaurentPoly(snf.V[i][j]));
        for (int i = 0; i < m.rows; ++i)
            for (int j = 0; j < m.cols; ++j) result.S.at(i, j) = QPolyEntry(LaurentPoly(snf.S[i][j]));
        for (int i = 0; i < std::min(m.rows, m.cols); ++i)
            result.diagonal.push_back(lpNormalize(LaurentPoly(snf.S[i][i])));
        return result;
    }

    // univariate rational Laurent branch
    std::set<std::string> vars;
    for (auto& e : m.a)
        for (auto& v : e.variables()) vars.insert(v);
    if (vars.size() > 1)
        throw std::runtime_error("Laurent SNF requires a single variable");
    std::string var = vars.empty() ? "x" : *vars.begin();

    // clear negative exponents row-wise (unit row operations, absorbed into U)
    std::vector<int> rowShift(m.rows, 0);
    for (int i = 0; i < m.rows; ++i) {
        int mn = 0;
        for (int j = 0; j < m.cols; ++j)
            for (auto& [mo, c] : m.at(i, j).terms) mn = std::min(mn, mo.exponent(var));
        rowShift[i] = -mn;
    }
    std::vector<std::vector<UPoly>> w(m.rows, std::vector<UPoly>(m.cols));
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) {
            UPoly p;
            for (auto& [mo, c] : m.at(i, j).terms) {
                int e = mo.exponent(var) + rowShift[i];
                if (static_cast<size_t>(e) >= p.c.size()) p.c.resize(e + 1, Rat(0));
                p.c[e] += Rat(c);
            }
            p.trim();
            w[i][j] = p;
        }
    auto ops = upolyOps();
    GenericSnf<UPoly> snf(std::move(w), ops);
    snf.run();
    result.U = QMatrix(m.rows, m.rows);
    result.V = QMatrix(m.cols, m.cols);
    result.S = QMatrix(m.rows, m.cols);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.rows; ++j) {
            QPolyEntry e = upolyToEntry(snf.U[i][j], var);
            // undo the row shift of M inside U: S = U' M V with U' = U * shift
            e.num = e.num * LaurentPoly::var(var, rowShift[j]);
            result.U.at(i, j) = QPolyEntry(e.num, e.den);
        }
    for (int i = 0; i < m.cols; ++i)
        for (int j = 0; j < m.cols; ++j) result.V.at(i, j) = upolyToEntry(snf.V[i][j], var);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) result.S.at(i, j) = upolyToEntry(snf.S[i][j], var);
    for (int i = 0; i < std::min(m.rows, m.cols); ++i) {
        // rational constants are units here, so strip integer content as well
        LaurentPoly num = upolyToEntry(snf.S[i][i], var).num;
        if (!num.isZero()) {
            Int content = 0;
            for (auto& [mo, c] : num.terms) content = intGcd(content, c);
            if (content > 1) {
                LaurentPoly reduced;
                for (auto& [mo, c] : num.terms) reduced.terms.emplace(mo, c / content);
                num = reduced;
            }
        }
        result.diagonal.push_back(lpNormalize(num));
    }
    return result;
}

}  // namespace tg
