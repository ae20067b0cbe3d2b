#include "tg/ring.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <sstream>

namespace tg {

Int intGcd(Int a, Int b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        Int r = a % b;
        a = b;
        b = r;
    }
    return a;
}

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(std::map<std::string, int> e) : exps(std::move(e)) {
    for (auto it = exps.begin(); it != exps.end();) {
        if (it->second == 0)
            it = exps.erase(it);
        else
            ++it;
    }
}

int Monomial::exponent(const std::string& var) const {
    auto it = exps.find(var);
    return it == exps.end() ? 0 : it->second;
}

int Monomial::totalDegree() const {
    int d = 0;
    for (auto& [v, e] : exps) d += e;
    return d;
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial r = *this;
    for (auto& [v, e] : o.exps) {
        int n = r.exponent(v) + e;
        if (n == 0)
            r.exps.erase(v);
        else
            r.exps[v] = n;
    }
    return r;
}

Monomial Monomial::inverse() const {
    Monomial r;
    for (auto& [v, e] : exps) r.exps[v] = -e;
    return r;
}

bool grlexLess(const Monomial& a, const Monomial& b) {
    int da = a.totalDegree(), db = b.totalDegree();
    if (da != db) return da < db;
    // lex on the union of variable names
    auto ia = a.exps.begin(), ib = b.exps.begin();
    while (ia != a.exps.end() || ib != b.exps.end()) {
        std::string va = ia != a.exps.end() ? ia->first : std::string();
        std::string vb = ib != b.exps.end() ? ib->first : std::string();
        std::string v;
        if (ia == a.exps.end())
            v = vb;
        else if (ib == b.exps.end())
            v = va;
        else
            v = std::min(va, vb);
        int ea = (ia != a.exps.end() && ia->first == v) ? ia->second : 0;
        int eb = (ib != b.exps.end() && ib->first == v) ? ib->second : 0;
        if (ea != eb) return ea < eb;
        if (ia != a.exps.end() && ia->first == v) ++ia;
        if (ib != b.exps.end() && ib->first == v) ++ib;
    }
    return false;
}

// -------------------------------------------------------------- LaurentPoly

LaurentPoly::LaurentPoly(Int c) {
    if (c != 0) terms.emplace(Monomial{}, std::move(c));
}

LaurentPoly LaurentPoly::var(const std::string& name, int exp) {
    LaurentPoly p;
    Monomial m;
    if (exp != 0) m.exps[name] = exp;
    p.terms.emplace(m, 1);
    return p;
}

LaurentPoly LaurentPoly::monomial(Int coeff, const Monomial& m) {
    LaurentPoly p;
    if (coeff != 0) p.terms.emplace(m, std::move(coeff));
    return p;
}

bool LaurentPoly::isConstant() const {
    return terms.empty() || (terms.size() == 1 && terms.begin()->first.isOne());
}

bool LaurentPoly::isUnit() const {
    if (terms.size() != 1) return false;
    const Int& c = terms.begin()->second;
    return c == 1 || c == -1;
}

bool LaurentPoly::isOne() const {
    return terms.size() == 1 && terms.begin()->first.isOne() && terms.begin()->second == 1;
}

std::set<std::string> LaurentPoly::variables() const {
    std::set<std::string> vs;
    for (auto& [m, c] : terms)
        for (auto& [v, e] : m.exps) vs.insert(v);
    return vs;
}

Int LaurentPoly::constantValue() const {
    if (terms.empty()) return 0;
    assert(isConstant());
    return terms.begin()->second;
}

std::pair<Monomial, Int> LaurentPoly::leadingTerm() const {
    assert(!terms.empty());
    auto best = terms.begin();
    for (auto it = std::next(terms.begin()); it != terms.end(); ++it)
        if (grlexLess(best->first, it->first)) best = it;
    return {best->first, best->second};
}

void LaurentPoly::addTerm(const Monomial& m, const Int& c) {
    if (c == 0) return;
    auto it = terms.find(m);
    if (it == terms.end()) {
        terms.emplace(m, c);
    } else {
        it->second += c;
        if (it->second == 0) terms.erase(it);
    }
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
    LaurentPoly r = *this;
    r += o;
    return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    for (auto& [m, c] : o.terms) addTerm(m, c);
    return *this;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const {
    LaurentPoly r = *this;
    r -= o;
    return r;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
    for (auto& [m, c] : o.terms) addTerm(m, -c);
    return *this;
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly r;
    for (auto& [m, c] : terms) r.terms.emplace(m, -c);
    return r;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
    LaurentPoly r;
    for (auto& [m1, c1] : terms)
        for (auto& [m2, c2] : o.terms) r.addTerm(m1 * m2, c1 * c2);
    return r;
}

LaurentPoly LaurentPoly::pow(int n) const {
    if (n < 0) {
        if (!isMonomialTerm() || (terms.begin()->second != 1 && terms.begin()->second != -1))
            throw std::runtime_error("negative power of a non-unit polynomial");
        const auto& [m, c] = *terms.begin();
        LaurentPoly inv = monomial(c, m.inverse());  // c = +-1
        return inv.pow(-n);
    }
    LaurentPoly r(Int(1));
    LaurentPoly base = *this;
    while (n > 0) {
        if (n & 1) r = r * base;
        base = base * base;
        n >>= 1;
    }
    return r;
}

// ------------------------------------------------------------ normalization

LaurentPoly lpNormalize(const LaurentPoly& p) {
    if (p.isZero()) return p;
    std::map<std::string, int> minExp;
    auto vars = p.variables();
    for (auto& v : vars) minExp[v] = std::numeric_limits<int>::max();
    for (auto& [m, c] : p.terms)
        for (auto& v : vars) minExp[v] = std::min(minExp[v], m.exponent(v));
    Monomial shift;
    for (auto& [v, e] : minExp)
        if (e != 0) shift.exps[v] = -e;
    LaurentPoly r;
    for (auto& [m, c] : p.terms) r.terms.emplace(m * shift, c);
    if (r.leadingTerm().second < 0) r = -r;
    return r;
}

// ---------------------------------------------------------------------- gcd

namespace {

// Univariate view of p in variable v: coefficient polynomials by degree.
std::map<int, LaurentPoly> byDegree(const LaurentPoly& p, const std::string& v) {
    std::map<int, LaurentPoly> r;
    for (auto& [m, c] : p.terms) {
        int e = m.exponent(v);
        Monomial rest = m;
        rest.exps.erase(v);
        r[e].addTerm(rest, c);
    }
    for (auto it = r.begin(); it != r.end();)
        it = it->second.isZero() ? r.erase(it) : std::next(it);
    return r;
}

int degreeIn(const LaurentPoly& p, const std::string& v) {
    int d = std::numeric_limits<int>::min();
    for (auto& [m, c] : p.terms) d = std::max(d, m.exponent(v));
    return d;
}

LaurentPoly leadingCoeffIn(const LaurentPoly& p, const std::string& v) {
    auto degs = byDegree(p, v);
    return degs.rbegin()->second;
}

LaurentPoly timesVarPow(const LaurentPoly& p, const std::string& v, int e) {
    return p * LaurentPoly::var(v, e);
}

LaurentPoly gcdRec(LaurentPoly p, LaurentPoly q);

// content of p as a univariate polynomial in v
LaurentPoly contentIn(const LaurentPoly& p, const std::string& v) {
    LaurentPoly g;
    for (auto& [e, cp] : byDegree(p, v)) {
        g = gcdRec(g, cp);
        if (g.isOne()) break;
    }
    return g;
}

// pseudo-remainder of p by q in variable v (both with positive v-degree order)
LaurentPoly pseudoRem(LaurentPoly p, const LaurentPoly& q, const std::string& v) {
    int dq = degreeIn(q, v);
    LaurentPoly lq = leadingCoeffIn(q, v);
    while (!p.isZero()) {
        int dp = degreeIn(p, v);
        if (dp < dq) break;
        LaurentPoly lp = leadingCoeffIn(p, v);
        p = p * lq - timesVarPow(q, v, dp - dq) * lp;
    }
    return p;
}

LaurentPoly gcdRec(LaurentPoly p, LaurentPoly q) {
    if (p.isZero()) return lpNormalize(q);
    if (q.isZero()) return lpNormalize(p);
    p = lpNormalize(p);
    q = lpNormalize(q);
    auto vars = p.variables();
    for (auto& v : q.variables()) vars.insert(v);
    if (vars.empty()) return LaurentPoly(intGcd(p.constantValue(), q.constantValue()));
    std::string v = *vars.begin();
    LaurentPoly cp = contentIn(p, v), cq = contentIn(q, v);
    LaurentPoly pp = *lpDivideExact(p, cp), qq = *lpDivideExact(q, cq);
    // primitive-part Euclid with content stripping each round
    while (!qq.isZero()) {
        LaurentPoly r = pseudoRem(pp, qq, v);
        pp = qq;
        if (r.isZero()) {
            qq = LaurentPoly();
        } else {
            qq = *lpDivideExact(r, contentIn(r, v));
        }
    }
    LaurentPoly prim = *lpDivideExact(pp, contentIn(pp, v));
    return lpNormalize(gcdRec(cp, cq) * prim);
}

}  // namespace

LaurentPoly lpGcd(const LaurentPoly& p, const LaurentPoly& q) { return gcdRec(p, q); }

std::optional<LaurentPoly> lpDivideExact(const LaurentPoly& p, const LaurentPoly& d) {
    if (d.isZero()) return std::nullopt;
    if (p.isZero()) return LaurentPoly();
    // Per-variable exponent box any quotient term must live in; bounds the loop.
    auto vars = p.variables();
    for (auto& v : d.variables()) vars.insert(v);
    std::map<std::string, std::pair<int, int>> box;
    for (auto& v : vars) {
        int pmin = std::numeric_limits<int>::max(), pmax = std::numeric_limits<int>::min();
        int dmin = pmin, dmax = pmax;
        for (auto& [m, c] : p.terms) {
            pmin = std::min(pmin, m.exponent(v));
            pmax = std::max(pmax, m.exponent(v));
        }
        for (auto& [m, c] : d.terms) {
            dmin = std::min(dmin, m.exponent(v));
            dmax = std::max(dmax, m.exponent(v));
        }
        box[v] = {pmin - dmax, pmax - dmin};
    }
    auto [dm, dc] = d.leadingTerm();
    LaurentPoly r = p, q;
    while (!r.isZero()) {
        auto [rm, rc] = r.leadingTerm();
        if (rc % dc != 0) return std::nullopt;
        Monomial tm = rm * dm.inverse();
        for (auto& [v, bounds] : box) {
            int e = tm.exponent(v);
            if (e < bounds.first || e > bounds.second) return std::nullopt;
        }
        LaurentPoly t = LaurentPoly::monomial(rc / dc, tm);
        q += t;
        r -= t * d;
    }
    return q;
}

bool lpDivides(const LaurentPoly& d, const LaurentPoly& p) {
    if (p.isZero()) return !d.isZero();
    if (d.isZero()) return false;
    return lpDivideExact(p, d).has_value();
}

LaurentPoly lpSubstitute(const LaurentPoly& p, const std::string& var, const LaurentPoly& value) {
    LaurentPoly r;
    for (auto& [e, coeff] : byDegree(p, var)) r += coeff * value.pow(e);
    return r;
}

// --------------------------------------------------------------- Cyclotomic

Cyclotomic Cyclotomic::zeta(int power) {
    Cyclotomic z;
    int k = ((power % 8) + 8) % 8;
    if (k < 4)
        z.c[k] = 1;
    else
        z.c[k - 4] = -1;
    return z;
}

bool Cyclotomic::isZero() const { return c[0] == 0 && c[1] == 0 && c[2] == 0 && c[3] == 0; }

bool Cyclotomic::isRationalInteger() const { return c[1] == 0 && c[2] == 0 && c[3] == 0; }

Cyclotomic Cyclotomic::operator+(const Cyclotomic& o) const {
    Cyclotomic r;
    for (int i = 0; i < 4; ++i) r.c[i] = c[i] + o.c[i];
    return r;
}

Cyclotomic Cyclotomic::operator-(const Cyclotomic& o) const {
    Cyclotomic r;
    for (int i = 0; i < 4; ++i) r.c[i] = c[i] - o.c[i];
    return r;
}

Cyclotomic Cyclotomic::operator-() const {
    Cyclotomic r;
    for (int i = 0; i < 4; ++i) r.c[i] = -c[i];
    return r;
}

Cyclotomic Cyclotomic::operator*(const Cyclotomic& o) const {
    Int raw[7] = {0, 0, 0, 0, 0, 0, 0};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) raw[i + j] += c[i] * o.c[j];
    Cyclotomic r;
    for (int i = 0; i < 4; ++i) r.c[i] = raw[i];
    for (int i = 4; i < 7; ++i) r.c[i - 4] -= raw[i];  // zeta^4 = -1
    return r;
}

bool Cyclotomic::operator==(const Cyclotomic& o) const {
    return c[0] == o.c[0] && c[1] == o.c[1] && c[2] == o.c[2] && c[3] == o.c[3];
}

namespace {
// Conjugate zeta -> zeta^k, k odd.
Cyclotomic conjugate(const Cyclotomic& v, int k) {
    Cyclotomic r;
    for (int i = 0; i < 4; ++i) {
        if (v.c[i] == 0) continue;
        r = r + Cyclotomic::zeta(i * k) * Cyclotomic(v.c[i]);
    }
    return r;
}
}  // namespace

Int Cyclotomic::fieldNorm() const {
    Cyclotomic n = conjugate(*this, 1) * conjugate(*this, 3) * conjugate(*this, 5) * conjugate(*this, 7);
    assert(n.isRationalInteger());
    return n.c[0];
}

std::optional<Cyclotomic> Cyclotomic::inverseIfUnit() const {
    Int n = fieldNorm();
    if (n != 1 && n != -1) return std::nullopt;
    Cyclotomic rest = conjugate(*this, 3) * conjugate(*this, 5) * conjugate(*this, 7);
    if (n == -1) rest = -rest;
    return rest;
}

Cyclotomic Cyclotomic::pow(long n) const {
    if (n < 0) {
        auto inv = inverseIfUnit();
        if (!inv) throw std::runtime_error("negative power of non-unit cyclotomic");
        return inv->pow(-n);
    }
    Cyclotomic r(Int(1));
    Cyclotomic base = *this;
    while (n > 0) {
        if (n & 1) r = r * base;
        base = base * base;
        n >>= 1;
    }
    return r;
}

std::string Cyclotomic::str() const {
    std::ostringstream os;
    bool any = false;
    static const char* names[4] = {"", "z", "z^2", "z^3"};
    for (int i = 0; i < 4; ++i) {
        if (c[i] == 0) continue;
        Int a = c[i];
        if (any) os << (a > 0 ? " + " : " - ");
        else if (a < 0) os << "-";
        Int mag = a < 0 ? Int(-a) : a;
        if (mag != 1 || i == 0) os << mag.str();
        if (i > 0 && mag != 1) os << "*";
        if (i > 0) os << names[i];
        any = true;
    }
    if (!any) os << "0";
    return os.str();
}

CycAbsNorm cycAbsNorm(const Cyclotomic& v) {
    if (v.isZero()) return {true, 0, true};
    // integer-times-unit detection over a small unit set zeta^a (1+sqrt2)^b
    Cyclotomic sqrt2p1 = Cyclotomic(Int(1)) + Cyclotomic::zeta(1) - Cyclotomic::zeta(3);
    for (int a = 0; a < 8; ++a) {
        for (int b = -4; b <= 4; ++b) {
            Cyclotomic u = Cyclotomic::zeta(a) * sqrt2p1.pow(b);
            Cyclotomic w = v * *u.inverseIfUnit();
            if (w.isRationalInteger()) {
                Int m = w.c[0];
                if (m < 0) m = -m;
                return {true, m, true};
            }
        }
    }
    Int n = v.fieldNorm();
    if (n >= 0) {
        // integral fourth root?
        Int r = 0;
        while (r * r * r * r < n) ++r;
        if (r * r * r * r == n) return {false, r, true};
    }
    return {false, 0, false};
}

// --------------------------------------------------------------- evaluation

EvalValue lpEval(const LaurentPoly& p, const std::map<std::string, EvalValue>& assignment) {
    bool cyc = false;
    for (auto& [v, val] : assignment)
        if (std::holds_alternative<Cyclotomic>(val)) cyc = true;
    for (auto& v : p.variables())
        if (!assignment.count(v)) throw std::runtime_error("missing assignment for variable " + v);
    if (!cyc) {
        Int sum = 0;
        for (auto& [m, c] : p.terms) {
            Int t = c;
            for (auto& [v, e] : m.exps) {
                Int x = std::get<Int>(assignment.at(v));
                if (e < 0) {
                    if (x != 1 && x != -1)
                        throw std::runtime_error("non-invertible value for variable " + v +
                                                 " raised to a negative power");
                    t *= (x == -1 && (e % 2 != 0)) ? -1 : 1;
                } else {
                    for (int i = 0; i < e; ++i) t *= x;
                }
            }
            sum += t;
        }
        return sum;
    }
    Cyclotomic sum;
    for (auto& [m, c] : p.terms) {
        Cyclotomic t{c};
        for (auto& [v, e] : m.exps) {
            const EvalValue& val = assignment.at(v);
            Cyclotomic x = std::holds_alternative<Cyclotomic>(val)
                               ? std::get<Cyclotomic>(val)
                               : Cyclotomic(std::get<Int>(val));
            t = t * x.pow(e);
        }
        sum = sum + t;
    }
    return sum;
}

Int lpEvalAllInt(const LaurentPoly& p, const Int& x) {
    std::map<std::string, EvalValue> a;
    for (auto& v : p.variables()) a[v] = x;
    return std::get<Int>(lpEval(p, a));
}

// ------------------------------------------------------------ parse / print

namespace {

struct Scanner {
    const std::string& s;
    size_t pos = 0;

    explicit Scanner(const std::string& t) : s(t) {}
    void skipWs() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eof() {
        skipWs();
        return pos >= s.size();
    }
    char peek() {
        skipWs();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool accept(char c) {
        skipWs();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    Int integer() {
        skipWs();
        size_t start = pos;
        bool neg = accept('-');
        if (!neg) accept('+');
        skipWs();
        if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
            throw ParseError("expected integer", start);
        Int v = 0;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            v = v * 10 + (s[pos] - '0');
            ++pos;
        }
        return neg ? Int(-v) : v;
    }
    std::string name() {
        skipWs();
        size_t start = pos;
        if (pos >= s.size() || !std::isalpha(static_cast<unsigned char>(s[pos])))
            throw ParseError("expected variable name", start);
        std::string n;
        while (pos < s.size() && std::isalnum(static_cast<unsigned char>(s[pos]))) n += s[pos++];
        return n;
    }
};

}  // namespace

LaurentPoly parsePoly(const std::string& text) {
    Scanner sc(text);
    LaurentPoly result;
    bool first = true;
    while (!sc.eof()) {
        int sign = 1;
        if (sc.accept('+')) {
        } else if (sc.accept('-')) {
            sign = -1;
        } else if (!first) {
            throw ParseError("expected '+' or '-' between terms", sc.pos);
        }
        first = false;
        Int coeff = 1;
        Monomial mono;
        bool sawFactor = false;
        char c = sc.peek();
        if (std::isdigit(static_cast<unsigned char>(c))) {
            coeff = sc.integer();
            sawFactor = true;
            sc.accept('*');
        }
        while (std::isalpha(static_cast<unsigned char>(sc.peek()))) {
            std::string v = sc.name();
            int e = 1;
            if (sc.accept('^')) {
                Int ei = sc.integer();
                e = static_cast<int>(ei.convert_to<long>());
            }
            int ne = mono.exponent(v) + e;
            if (ne == 0)
                mono.exps.erase(v);
            else
                mono.exps[v] = ne;
            sawFactor = true;
            sc.accept('*');
        }
        if (!sawFactor) throw ParseError("expected term", sc.pos);
        result.addTerm(mono, sign * coeff);
    }
    return result;
}

std::string printPoly(const LaurentPoly& p) {
    if (p.isZero()) return "0";
    std::vector<std::pair<Monomial, Int>> ts(p.terms.begin(), p.terms.end());
    std::sort(ts.begin(), ts.end(),
              [](const auto& a, const auto& b) { return grlexLess(b.first, a.first); });
    std::ostringstream os;
    bool firstTerm = true;
    for (auto& [m, c] : ts) {
        Int mag = c < 0 ? Int(-c) : c;
        if (firstTerm) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        bool needCoeff = (mag != 1) || m.isOne();
        if (needCoeff) os << mag.str();
        bool firstVar = !needCoeff;
        for (auto& [v, e] : m.exps) {
            if (!firstVar || needCoeff) os << "*";
            os << v;
            if (e != 1) os << "^" << e;
            firstVar = false;
        }
        firstTerm = false;
    }
    return os.str();
}

}  // namespace tg
