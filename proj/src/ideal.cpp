#include "tg/ideal.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <stdexcept>

namespace tg {

namespace {

// Dense univariate integer polynomial, coefficient of A^i at index i.
using Poly = std::vector<Int>;

void trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

int degOf(const Poly& p) { return static_cast<int>(p.size()) - 1; }

const Int& lcOf(const Poly& p) { return p.back(); }

// p + c * A^k * q
void addScaledShifted(Poly& p, const Int& c, int k, const Poly& q) {
    if (p.size() < q.size() + k) p.resize(q.size() + k);
    for (size_t i = 0; i < q.size(); ++i) p[i + k] += c * q[i];
    trim(p);
}

// divide out the largest power of A (Laurent units)
void stripA(Poly& p) {
    size_t v = 0;
    while (v < p.size() && p[v] == 0) ++v;
    if (v > 0 && v < p.size()) p.erase(p.begin(), p.begin() + v);
    trim(p);
}

void fixSign(Poly& p) {
    if (!p.empty() && p.back() < 0)
        for (auto& c : p) c = -c;
}

Poly fromLaurent(const LaurentPoly& f) {
    Poly p;
    int minExp = 0;
    for (auto& [m, c] : f.terms) {
        if (m.exps.size() > 1 || (m.exps.size() == 1 && !m.exps.count("A")))
            throw std::invalid_argument("ideal generators must be polynomials in A");
        minExp = std::min(minExp, m.exponent("A"));
    }
    for (auto& [m, c] : f.terms) {
        int e = m.exponent("A") - minExp;
        if (static_cast<int>(p.size()) <= e) p.resize(e + 1);
        p[e] = c;
    }
    trim(p);
    stripA(p);
    return p;
}

LaurentPoly toLaurent(const Poly& p) {
    LaurentPoly out;
    for (size_t i = 0; i < p.size(); ++i)
        if (p[i] != 0) out += LaurentPoly(p[i]) * LaurentPoly::var("A", static_cast<int>(i));
    return out;
}

// Reduce h by the basis using only exact leading-coefficient division.
// With a strong Groebner basis this decides membership.
Poly reduceExact(Poly h, const std::vector<Poly>& basis) {
    bool progress = true;
    while (!h.empty() && progress) {
        progress = false;
        for (const Poly& g : basis) {
            if (g.empty() || degOf(g) > degOf(h)) continue;
            if (lcOf(h) % lcOf(g) != 0) continue;
            addScaledShifted(h, -(lcOf(h) / lcOf(g)), degOf(h) - degOf(g), g);
            progress = true;
            break;
        }
    }
    return h;
}

// Tail-reduce every coefficient of h into the balanced range (-lc/2, lc/2]
// for the applicable g. Used only for the canonical form of basis elements.
Poly reduceFull(Poly h, const std::vector<Poly>& basis, const Poly* skip) {
    for (int d = degOf(h); d >= 0; --d) {
        if (d > degOf(h)) d = degOf(h);
        if (d < 0) break;
        if (h[d] == 0) continue;
        // among applicable reducers pick the smallest positive leading coeff
        const Poly* best = nullptr;
        for (const Poly& g : basis) {
            if (&g == skip || g.empty() || degOf(g) > d) continue;
            if (!best || lcOf(g) < lcOf(*best)) best = &g;
        }
        if (!best) continue;
        const Int& m = lcOf(*best);
        Int q = h[d] / m;
        if (h[d] % m < 0) q -= 1;  // floor first, then shift to balanced
        Int r = h[d] - q * m;
        if (2 * r > m) q += 1;
        if (q != 0) addScaledShifted(h, -q, d - degOf(*best), *best);
    }
    return h;
}

Int extGcd(const Int& a, const Int& b, Int& u, Int& v) {
    Int r0 = a, r1 = b, u0 = 1, u1 = 0, v0 = 0, v1 = 1;
    while (r1 != 0) {
        Int q = r0 / r1;
        r0 -= q * r1;
        std::swap(r0, r1);
        u0 -= q * u1;
        std::swap(u0, u1);
        v0 -= q * v1;
        std::swap(v0, v1);
    }
    if (r0 < 0) {
        r0 = -r0;
        u0 = -u0;
        v0 = -v0;
    }
    u = u0;
    v = v0;
    return r0;
}

// Strong Groebner basis over Z[A]. In one variable the S- and gcd-polynomial
// completion collapses to keeping, per degree, the ideal element with the
// smallest positive leading coefficient: colliding elements of equal degree
// are replaced by their Bezout gcd-combination (the gcd-polynomial) and the
// two exact reductions it induces (the S-polynomials), and every slot is
// closed under multiplication by A up to the largest generator degree.
std::vector<Poly> strongBasis(std::vector<Poly> gens) {
    std::deque<Poly> work;
    int dmax = -1;
    for (auto& g : gens) {
        trim(g);
        if (g.empty()) continue;
        fixSign(g);
        dmax = std::max(dmax, degOf(g));
        work.push_back(std::move(g));
    }
    std::map<int, Poly> slot;
    while (!work.empty()) {
        Poly h = std::move(work.front());
        work.pop_front();
        trim(h);
        if (h.empty()) continue;
        fixSign(h);
        int d = degOf(h);
        auto it = slot.find(d);
        if (it == slot.end()) {
            if (d < dmax) {
                Poly shifted;
                addScaledShifted(shifted, 1, 1, h);
                work.push_back(std::move(shifted));
            }
            slot.emplace(d, std::move(h));
            continue;
        }
        Poly& s = it->second;
        if (lcOf(h) % lcOf(s) == 0) {
            // plain S-reduction drops the degree
            addScaledShifted(h, -(lcOf(h) / lcOf(s)), 0, s);
            work.push_back(std::move(h));
            continue;
        }
        Int u, v;
        extGcd(lcOf(s), lcOf(h), u, v);
        Poly comb;
        addScaledShifted(comb, u, 0, s);
        addScaledShifted(comb, v, 0, h);
        trim(comb);
        fixSign(comb);
        // reduce the displaced elements by the new slot representative
        addScaledShifted(s, -(lcOf(s) / lcOf(comb)), 0, comb);
        addScaledShifted(h, -(lcOf(h) / lcOf(comb)), 0, comb);
        work.push_back(std::move(s));
        work.push_back(std::move(h));
        if (d < dmax) {
            Poly shifted;
            addScaledShifted(shifted, 1, 1, comb);
            work.push_back(std::move(shifted));
        }
        it->second = std::move(comb);
    }
    // drop slots already covered by a lower-degree element (its A-shift is an
    // exact reducer), keeping only the leading-coefficient jumps
    std::vector<Poly> basis;
    for (auto& [d, p] : slot) {
        bool covered = false;
        for (auto& b : basis)
            if (lcOf(p) % lcOf(b) == 0) covered = true;
        if (!covered) basis.push_back(p);
    }
    // certify: all S- and gcd-polynomials of the result reduce to zero
    for (size_t i = 0; i < basis.size(); ++i)
        for (size_t j = i + 1; j < basis.size(); ++j) {
            const Poly &gi = basis[i], &gj = basis[j];
            int D = std::max(degOf(gi), degOf(gj));
            Int u, v;
            Int g = extGcd(lcOf(gi), lcOf(gj), u, v);
            Poly s;
            addScaledShifted(s, lcOf(gj) / g, D - degOf(gi), gi);
            addScaledShifted(s, -(lcOf(gi) / g), D - degOf(gj), gj);
            Poly t;
            addScaledShifted(t, u, D - degOf(gi), gi);
            addScaledShifted(t, v, D - degOf(gj), gj);
            if (!reduceExact(std::move(s), basis).empty() ||
                !reduceExact(std::move(t), basis).empty())
                throw std::logic_error("strong basis completion failed certification");
        }
    return basis;
}

// Row Hermite normal form of an integer matrix (pivot columns increasing,
// pivots positive, entries above a pivot reduced into [0, pivot)).
void rowHnf(std::vector<std::vector<Int>>& rows, int cols) {
    size_t top = 0;
    for (int c = 0; c < cols && top < rows.size(); ++c) {
        for (;;) {
            size_t best = rows.size();
            for (size_t r = top; r < rows.size(); ++r) {
                if (rows[r][c] == 0) continue;
                if (best == rows.size() ||
                    abs(rows[r][c]) < abs(rows[best][c]))
                    best = r;
            }
            if (best == rows.size()) break;
            std::swap(rows[top], rows[best]);
            bool cleared = true;
            for (size_t r = top + 1; r < rows.size(); ++r) {
                if (rows[r][c] == 0) continue;
                Int q = rows[r][c] / rows[top][c];
                for (int j = 0; j < cols; ++j) rows[r][j] -= q * rows[top][j];
                if (rows[r][c] != 0) cleared = false;
            }
            if (cleared) break;
        }
        if (top < rows.size() && rows[top][c] != 0) {
            if (rows[top][c] < 0)
                for (int j = 0; j < cols; ++j) rows[top][j] = -rows[top][j];
            for (size_t r = 0; r < top; ++r) {
                Int q = rows[r][c] / rows[top][c];
                if (rows[r][c] % rows[top][c] < 0) q -= 1;
                if (q != 0)
                    for (int j = 0; j < cols; ++j) rows[r][j] -= q * rows[top][j];
            }
            ++top;
        }
    }
    rows.erase(std::remove_if(rows.begin(), rows.end(),
                              [&](const std::vector<Int>& r) {
                                  return std::all_of(r.begin(), r.end(),
                                                     [](const Int& x) { return x == 0; });
                              }),
               rows.end());
}

// Generators of the colon ideal (I : A) = { f : A*f in I } up to the maximal
// basis degree. The degree-N truncation of I is the lattice spanned by all
// shifts A^j*g with j + deg g <= N; intersecting it with the hyperplane of
// zero constant term and dividing by A yields every colon element of degree
// < N, which together with I generates (I : A).
std::vector<Poly> colonByA(const std::vector<Poly>& basis) {
    int dmax = 0;
    for (auto& g : basis) dmax = std::max(dmax, degOf(g));
    int n = dmax + 2;  // coefficients of A^0 .. A^(dmax+1)
    std::vector<std::vector<Int>> rows;
    for (auto& g : basis)
        for (int j = 0; j + degOf(g) < n; ++j) {
            std::vector<Int> row(n, Int(0));
            for (size_t i = 0; i < g.size(); ++i) row[i + j] = g[i];
            rows.push_back(std::move(row));
        }
    rowHnf(rows, n);
    std::vector<Poly> out;
    for (auto& row : rows) {
        if (row[0] != 0) continue;
        Poly p(row.begin() + 1, row.end());
        trim(p);
        if (!p.empty()) out.push_back(std::move(p));
    }
    return out;
}

std::vector<Poly> canonicalize(std::vector<Poly> basis) {
    // drop elements whose leading term another element reduces
    std::vector<Poly> keep;
    for (size_t i = 0; i < basis.size(); ++i) {
        bool redundant = false;
        for (size_t j = 0; j < basis.size() && !redundant; ++j) {
            if (i == j || basis[j].empty()) continue;
            if (degOf(basis[j]) < degOf(basis[i]) ||
                (degOf(basis[j]) == degOf(basis[i]) && j < i)) {
                if (degOf(basis[j]) <= degOf(basis[i]) &&
                    lcOf(basis[i]) % lcOf(basis[j]) == 0)
                    redundant = true;
            }
        }
        if (!redundant) keep.push_back(basis[i]);
    }
    for (auto& h : keep) {
        h = reduceFull(h, keep, &h);
        fixSign(h);
    }
    keep.erase(std::remove_if(keep.begin(), keep.end(),
                              [](const Poly& p) { return p.empty(); }),
               keep.end());
    std::sort(keep.begin(), keep.end(), [](const Poly& a, const Poly& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    });
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
    return keep;
}

}  // namespace

IdealZA::IdealZA(const std::vector<LaurentPoly>& generators) {
    std::vector<Poly> gens;
    for (auto& f : generators) {
        Poly p = fromLaurent(f);
        if (!p.empty()) gens.push_back(std::move(p));
    }
    if (gens.empty()) return;
    // saturate at A (Laurent units): iterate the colon ideal (I : A) to a
    // fixpoint, stripping A-divisible basis elements along the way
    std::vector<Poly> basis = std::move(gens);
    for (;;) {
        basis = strongBasis(std::move(basis));
        bool changed = false;
        for (auto& p : basis) {
            size_t before = p.size();
            stripA(p);
            if (p.size() != before) changed = true;
        }
        if (changed) continue;
        for (auto& f : colonByA(basis))
            if (!reduceExact(f, basis).empty()) {
                basis.push_back(std::move(f));
                changed = true;
            }
        if (!changed) break;
    }
    basis_ = canonicalize(std::move(basis));
    for (auto& f : generators)
        if (!contains(f))
            throw std::logic_error("ideal basis fails to contain a generator");
}

bool IdealZA::isUnitIdeal() const {
    return basis_.size() == 1 && basis_[0].size() == 1 && basis_[0][0] == 1;
}

bool IdealZA::contains(const LaurentPoly& f) const {
    Poly p = fromLaurent(f);
    if (p.empty()) return true;
    if (basis_.empty()) return false;
    return reduceExact(p, basis_).empty();
}

std::vector<LaurentPoly> IdealZA::basis() const {
    std::vector<LaurentPoly> out;
    for (auto& p : basis_) out.push_back(toLaurent(p));
    return out;
}

std::string IdealZA::str() const {
    std::ostringstream ss;
    ss << "(";
    if (basis_.empty()) ss << " 0";
    for (size_t i = 0; i < basis_.size(); ++i)
        ss << (i ? " ; " : " ") << printPoly(toLaurent(basis_[i]));
    ss << " )";
    return ss.str();
}

IdealZA parseIdeal(const std::string& text) {
    std::string body = text;
    auto l = body.find('(');
    auto r = body.rfind(')');
    if (l != std::string::npos && r != std::string::npos && l < r)
        body = body.substr(l + 1, r - l - 1);
    std::vector<LaurentPoly> gens;
    size_t start = 0;
    while (start <= body.size()) {
        size_t semi = body.find(';', start);
        std::string piece = body.substr(start, semi == std::string::npos
                                                   ? std::string::npos
                                                   : semi - start);
        // skip all-whitespace pieces
        if (piece.find_first_not_of(" \t\n") != std::string::npos)
            gens.push_back(parsePoly(piece));
        if (semi == std::string::npos) break;
        start = semi + 1;
    }
    return IdealZA(gens);
}

// ------------------------------------------------------------- cyclotomic

namespace {

using Row = std::array<Int, 4>;

// Row-style Hermite normal form: pivot columns strictly increasing, pivots
// positive, entries above each pivot reduced to [0, pivot).
std::vector<Row> hnf(std::vector<Row> rows) {
    std::vector<Row> out;
    for (int col = 0; col < 4; ++col) {
        // gcd-combine every row with a nonzero entry in this column
        size_t pivotRow = out.size();
        bool found = false;
        for (auto& r : rows) {
            if (r[col] == 0) continue;
            if (!found) {
                out.push_back(r);
                r = {};
                found = true;
                continue;
            }
            Row& p = out[pivotRow];
            while (r[col] != 0) {
                Int q = p[col] / r[col];
                for (int k = 0; k < 4; ++k) p[k] -= q * r[k];
                std::swap(p, r);
            }
        }
        if (!found) continue;
        Row& p = out[pivotRow];
        if (p[col] < 0)
            for (auto& v : p) v = -v;
        // earlier rows must be eliminated below this pivot later; nothing to
        // do for columns before col because their entries here are zero
        for (size_t i = 0; i < pivotRow; ++i) {
            Int q = out[i][col] / p[col];
            if (out[i][col] % p[col] < 0) q -= 1;
            if (q != 0)
                for (int k = 0; k < 4; ++k) out[i][k] -= q * p[k];
        }
    }
    return out;
}

Row toRow(const Cyclotomic& v) { return {v.c[0], v.c[1], v.c[2], v.c[3]}; }

}  // namespace

CyclotomicIdeal::CyclotomicIdeal(const std::vector<Cyclotomic>& generators) {
    std::vector<Row> rows;
    for (auto& g : generators)
        for (int j = 0; j < 4; ++j) rows.push_back(toRow(g * Cyclotomic::zeta(j)));
    rows_ = hnf(std::move(rows));
}

bool CyclotomicIdeal::isZero() const { return rows_.empty(); }

bool CyclotomicIdeal::isFullRing() const {
    if (rows_.size() != 4) return false;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (rows_[i][j] != (i == j ? 1 : 0)) return false;
    return true;
}

bool CyclotomicIdeal::contains(const Cyclotomic& v) const {
    Row r = toRow(v);
    for (auto& row : rows_) {
        int col = 0;
        while (col < 4 && row[col] == 0) ++col;
        if (col == 4) continue;
        if (r[col] == 0) continue;
        if (r[col] % row[col] != 0) return false;
        Int q = r[col] / row[col];
        for (int k = 0; k < 4; ++k) r[k] -= q * row[k];
    }
    for (auto& v2 : r)
        if (v2 != 0) return false;
    return true;
}

CyclotomicIdeal evalIdealAtZeta(const IdealZA& ideal) {
    std::vector<Cyclotomic> gens;
    for (auto& g : ideal.basis()) {
        Cyclotomic v(Int(0));
        for (auto& [m, c] : g.terms)
            v = v + Cyclotomic(c) * Cyclotomic::zeta(m.exponent("A"));
        gens.push_back(v);
    }
    return CyclotomicIdeal(gens);
}

}  // namespace tg
