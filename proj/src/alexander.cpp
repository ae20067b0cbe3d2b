#include "tg/alexander.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>
#include <sstream>

namespace tg {

namespace {

struct EdgeUf {
    std::map<int, int> parent;
    int find(int x) {
        auto it = parent.find(x);
        if (it == parent.end()) {
            parent[x] = x;
            return x;
        }
        if (it->second == x) return x;
        return it->second = find(it->second);
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

LaurentPoly lpUnitInverse(const LaurentPoly& u) {
    assert(u.isUnit());
    auto [m, c] = *u.terms.begin();
    return LaurentPoly::monomial(c, m.inverse());
}

}  // namespace

// ------------------------------------------------------------ arc structure

ArcDecomposition arcDecomposition(const TangleDiagram& d) {
    auto ends = edgeEndpoints(d);
    EdgeUf uf;
    for (auto& [e, ee] : ends) uf.find(e);
    for (auto& c : d.crossings) {
        uf.unite(c.e[1], c.e[3]);  // the over strand runs through uncut
        if (!c.isClassical()) uf.unite(c.e[0], c.e[2]);
    }
    std::map<int, int> arcIndex;  // representative -> arc id, by min edge order
    for (auto& [e, ee] : ends) {
        int r = uf.find(e);
        if (!arcIndex.count(r)) arcIndex[r] = 0;
    }
    // deterministic numbering: order classes by their smallest edge id
    std::map<int, int> minEdge;
    for (auto& [e, ee] : ends) {
        int r = uf.find(e);
        auto it = minEdge.find(r);
        if (it == minEdge.end() || e < it->second) minEdge[r] = e;
    }
    std::vector<std::pair<int, int>> order;  // (min edge, rep)
    for (auto& [r, me] : minEdge) order.push_back({me, r});
    std::sort(order.begin(), order.end());
    for (size_t i = 0; i < order.size(); ++i) arcIndex[order[i].second] = static_cast<int>(i);

    ArcDecomposition out;
    out.count = static_cast<int>(order.size());
    for (auto& [e, ee] : ends) out.arcOfEdge[e] = arcIndex[uf.find(e)];

    auto traced = traceComponents(d);
    std::map<int, int> compOfEdge;
    for (size_t i = 0; i < traced.size(); ++i)
        for (int e : traced[i]) compOfEdge[e] = static_cast<int>(i);

    out.componentOfArc.assign(out.count, 0);
    out.touchesBoundary.assign(out.count, false);
    for (auto& [e, ee] : ends) {
        int a = out.arcOfEdge[e];
        out.componentOfArc[a] = compOfEdge[e];
        if (ee.ends[0].isBoundary() || ee.ends[1].isBoundary()) out.touchesBoundary[a] = true;
    }
    // crossingless closed loops: one generator each, no relations
    int loopComp = static_cast<int>(traced.size());
    for (auto& comp : d.components)
        if (comp.edges.empty()) {
            out.componentOfArc.push_back(loopComp++);
            out.touchesBoundary.push_back(false);
            ++out.count;
        }
    return out;
}

// -------------------------------------------------------- Fox presentations

namespace {

// Declared component owning each traced component, or nullptr.
std::vector<const Component*> declaredOfTraced(const TangleDiagram& d,
                                               const std::vector<std::vector<int>>& traced) {
    std::vector<const Component*> out(traced.size(), nullptr);
    for (size_t i = 0; i < traced.size(); ++i) {
        if (traced[i].empty()) continue;
        int e0 = traced[i].front();
        for (auto& c : d.components)
            if (std::find(c.edges.begin(), c.edges.end(), e0) != c.edges.end()) {
                out[i] = &c;
                break;
            }
    }
    return out;
}

}  // namespace

ModulePresentation foxPresentation(const TangleDiagram& d, LabelingMode mode) {
    auto errs = validate(d);
    if (!errs.empty()) throw std::invalid_argument("invalid diagram: " + errs.front());

    auto arcs = arcDecomposition(d);
    auto traced = traceComponents(d);
    auto declared = declaredOfTraced(d, traced);
    std::vector<const Component*> loops;
    for (auto& c : d.components)
        if (c.edges.empty()) loops.push_back(&c);

    // Verify mode prerequisites and assign a variable group to each component
    // (traced components first, then crossingless loops).
    int compTotal = static_cast<int>(traced.size() + loops.size());
    std::vector<int> groupOfComp(compTotal, 0);
    std::vector<std::string> varOfGroup;
    if (mode == LabelingMode::Unoriented) {
        varOfGroup.push_back("");  // integers only
    } else {
        auto compAt = [&](int i) -> const Component* {
            return i < static_cast<int>(traced.size()) ? declared[i]
                                                       : loops[i - traced.size()];
        };
        for (int i = 0; i < compTotal; ++i) {
            const Component* c = compAt(i);
            if (!c || c->orient == 0)
                throw ModeError("mode requires an orientation on every component");
            if (mode == LabelingMode::ColoredOriented && !c->color)
                throw ModeError("colored mode requires a color on every component");
        }
        if (mode == LabelingMode::Oriented) {
            varOfGroup.push_back("x");
        } else {
            std::set<int> colors;
            for (int i = 0; i < compTotal; ++i) colors.insert(*compAt(i)->color);
            std::map<int, int> groupOfColor;
            for (int c : colors) {
                groupOfColor[c] = static_cast<int>(varOfGroup.size());
                varOfGroup.push_back("x" + std::to_string(varOfGroup.size() + 1));
            }
            for (int i = 0; i < compTotal; ++i) groupOfComp[i] = groupOfColor[*compAt(i)->color];
        }
    }

    ModulePresentation pres;
    pres.componentCount = static_cast<int>(varOfGroup.size());
    for (int a = 0; a < arcs.count; ++a) {
        pres.generators.push_back("a" + std::to_string(a + 1));
        pres.componentOfGenerator.push_back(groupOfComp[arcs.componentOfArc[a]]);
        if (arcs.touchesBoundary[a]) pres.boundaryGenerators.push_back(a);
    }

    int classicalCount = 0;
    for (auto& c : d.crossings)
        if (c.isClassical()) ++classicalCount;
    pres.relations = RingMatrix(classicalCount, arcs.count);

    std::map<int, std::pair<EdgeEnd, EdgeEnd>> dir;
    if (mode != LabelingMode::Unoriented) dir = orientEdges(d);

    int row = 0;
    for (size_t ci = 0; ci < d.crossings.size(); ++ci) {
        const Crossing& c = d.crossings[ci];
        if (!c.isClassical()) continue;
        int aOver = arcs.arcOfEdge.at(c.e[1]);
        if (mode == LabelingMode::Unoriented) {
            // out = -in + 2*over, symmetric in the two under arcs
            pres.relations.at(row, arcs.arcOfEdge.at(c.e[0])) += LaurentPoly(Int(1));
            pres.relations.at(row, arcs.arcOfEdge.at(c.e[2])) += LaurentPoly(Int(1));
            pres.relations.at(row, aOver) -= LaurentPoly(Int(2));
        } else {
            int inSlot = -1;
            for (int s : {0, 2}) {
                EdgeEnd here{static_cast<int>(ci), s};
                if (dir.at(c.e[s]).second == here) inSlot = s;
            }
            assert(inSlot >= 0 && "under strand must flow through the crossing");
            int aIn = arcs.arcOfEdge.at(c.e[inSlot]);
            int aOut = arcs.arcOfEdge.at(c.e[(inSlot + 2) % 4]);
            LaurentPoly xU = LaurentPoly::var(
                varOfGroup[pres.componentOfGenerator[aIn]]);
            LaurentPoly xO = LaurentPoly::var(
                varOfGroup[pres.componentOfGenerator[aOver]]);
            int sign = crossingSign(d, static_cast<int>(ci));
            // positive: out = xU*in + (1 - xO)*over; negative swaps in and out
            int lead = sign > 0 ? aOut : aIn;
            int trail = sign > 0 ? aIn : aOut;
            pres.relations.at(row, lead) += LaurentPoly(Int(1));
            pres.relations.at(row, trail) -= xU;
            pres.relations.at(row, aOver) -= LaurentPoly(Int(1)) - xO;
        }
        ++row;
    }
    return pres;
}

// ------------------------------------------------------- presentation files

namespace {

std::vector<std::string> splitWs(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    std::string w;
    while (is >> w) out.push_back(w);
    return out;
}

// Splits a relation side into signed terms at depth-0 +/- signs.
std::vector<std::pair<int, std::string>> signedTerms(const std::string& side) {
    std::vector<std::pair<int, std::string>> out;
    int depth = 0, sign = 1;
    std::string cur;
    auto flush = [&]() {
        std::string t = cur;
        size_t b = t.find_first_not_of(" \t");
        size_t e = t.find_last_not_of(" \t");
        if (b == std::string::npos) return;
        out.push_back({sign, t.substr(b, e - b + 1)});
        cur.clear();
    };
    for (size_t i = 0; i < side.size(); ++i) {
        char ch = side[i];
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (depth == 0 && (ch == '+' || ch == '-') && !cur.empty() &&
            cur.find_first_not_of(" \t") != std::string::npos) {
            flush();
            sign = ch == '+' ? 1 : -1;
            continue;
        }
        if (depth == 0 && ch == '-' && cur.find_first_not_of(" \t") == std::string::npos) {
            sign = -sign;
            continue;
        }
        cur += ch;
    }
    flush();
    return out;
}

}  // namespace

ModulePresentation parsePresentation(const std::string& text) {
    ModulePresentation pres;
    std::map<std::string, int> genIndex;
    std::vector<std::vector<LaurentPoly>> rows;
    std::map<std::string, int> compOf;

    std::istringstream is(text);
    std::string line;
    int lineNo = 0;
    while (std::getline(is, line)) {
        ++lineNo;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto words = splitWs(line);
        if (words.empty()) continue;
        const std::string& kw = words[0];
        if (kw == "gens") {
            for (size_t i = 1; i < words.size(); ++i) {
                if (genIndex.count(words[i]))
                    throw std::invalid_argument("duplicate generator " + words[i]);
                genIndex[words[i]] = static_cast<int>(pres.generators.size());
                pres.generators.push_back(words[i]);
            }
        } else if (kw == "rel") {
            if (pres.generators.empty())
                throw std::invalid_argument("rel before gens at line " + std::to_string(lineNo));
            std::string body = line.substr(line.find("rel") + 3);
            auto eq = body.find('=');
            std::string lhs = eq == std::string::npos ? body : body.substr(0, eq);
            std::string rhs = eq == std::string::npos ? "" : body.substr(eq + 1);
            std::vector<LaurentPoly> row(pres.generators.size());
            for (int side = 0; side < 2; ++side) {
                int sideSign = side == 0 ? 1 : -1;
                for (auto& [sgn, term] : signedTerms(side == 0 ? lhs : rhs)) {
                    // last depth-0 '*' separates the coefficient from the generator
                    int depth = 0;
                    size_t split = std::string::npos;
                    for (size_t i = 0; i < term.size(); ++i) {
                        if (term[i] == '(') ++depth;
                        if (term[i] == ')') --depth;
                        if (depth == 0 && term[i] == '*') split = i;
                    }
                    std::string coefText = split == std::string::npos ? "1" : term.substr(0, split);
                    std::string gen = split == std::string::npos ? term : term.substr(split + 1);
                    auto strip = [](std::string s) {
                        size_t b = s.find_first_not_of(" \t");
                        size_t e = s.find_last_not_of(" \t");
                        s = b == std::string::npos ? "" : s.substr(b, e - b + 1);
                        while (s.size() >= 2 && s.front() == '(' && s.back() == ')') {
                            int d = 0;
                            bool outer = true;
                            for (size_t i = 0; i + 1 < s.size(); ++i) {
                                if (s[i] == '(') ++d;
                                if (s[i] == ')') --d;
                                if (d == 0) outer = false;
                            }
                            if (!outer) break;
                            s = s.substr(1, s.size() - 2);
                        }
                        return s;
                    };
                    gen = strip(gen);
                    auto it = genIndex.find(gen);
                    if (it == genIndex.end())
                        throw std::invalid_argument("unknown generator '" + gen + "' at line " +
                                                    std::to_string(lineNo));
                    LaurentPoly coef = parsePoly(strip(coefText));
                    if (sgn * sideSign < 0) coef = -coef;
                    row[it->second] += coef;
                }
            }
            rows.push_back(std::move(row));
        } else if (kw == "boundary") {
            for (size_t i = 1; i < words.size(); ++i) {
                auto it = genIndex.find(words[i]);
                if (it == genIndex.end())
                    throw std::invalid_argument("unknown boundary generator " + words[i]);
                pres.boundaryGenerators.push_back(it->second);
            }
        } else if (kw == "components") {
            for (size_t i = 1; i < words.size(); ++i) {
                auto colon = words[i].find(':');
                if (colon == std::string::npos)
                    throw std::invalid_argument("components entries look like gen:index");
                compOf[words[i].substr(0, colon)] = std::stoi(words[i].substr(colon + 1));
            }
        } else {
            throw std::invalid_argument("unknown keyword '" + kw + "' at line " +
                                        std::to_string(lineNo));
        }
    }
    pres.relations = RingMatrix(static_cast<int>(rows.size()),
                                static_cast<int>(pres.generators.size()));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows[i].size(); ++j) pres.relations.at(static_cast<int>(i),
                                                                      static_cast<int>(j)) = rows[i][j];
    pres.componentOfGenerator.assign(pres.generators.size(), 0);
    for (auto& [g, c] : compOf) pres.componentOfGenerator[genIndex.at(g)] = c;
    // compress the declared group indices to 0..k-1
    std::set<int> comps(pres.componentOfGenerator.begin(), pres.componentOfGenerator.end());
    std::map<int, int> dense;
    for (int c : comps) dense.emplace(c, static_cast<int>(dense.size()));
    for (auto& c : pres.componentOfGenerator) c = dense.at(c);
    pres.componentCount = static_cast<int>(comps.size());
    std::sort(pres.boundaryGenerators.begin(), pres.boundaryGenerators.end());
    pres.boundaryGenerators.erase(
        std::unique(pres.boundaryGenerators.begin(), pres.boundaryGenerators.end()),
        pres.boundaryGenerators.end());
    return pres;
}

// --------------------------------------------------------------- invariants

namespace {

// Specialize a presentation's coefficients for the requested mode.
ModulePresentation inMode(const ModulePresentation& p, LabelingMode mode) {
    if (mode == LabelingMode::ColoredOriented) return p;
    ModulePresentation out = p;
    for (auto& e : out.relations.a) {
        if (mode == LabelingMode::Unoriented) {
            e = LaurentPoly(lpEvalAllInt(e, Int(-1)));
        } else {
            for (auto& v : e.variables())
                if (v != "x") e = lpSubstitute(e, v, LaurentPoly::var("x"));
        }
    }
    if (mode != LabelingMode::ColoredOriented) {
        // one variable group
        out.componentOfGenerator.assign(p.componentOfGenerator.size(), 0);
        out.componentCount = 1;
    }
    return out;
}

// Number of variable groups with no boundary generator.
int missingBoundaryGroups(const ModulePresentation& p) {
    std::set<int> all(p.componentOfGenerator.begin(), p.componentOfGenerator.end());
    std::set<int> bnd;
    for (int b : p.boundaryGenerators) bnd.insert(p.componentOfGenerator[b]);
    int missing = 0;
    for (int g : all)
        if (!bnd.count(g)) ++missing;
    return missing;
}

LaurentPoly stripIntegerContent(const LaurentPoly& p) {
    if (p.isZero()) return p;
    Int content = 0;
    for (auto& [m, c] : p.terms) content = intGcd(content, c);
    if (content <= 1) return p;
    LaurentPoly out;
    for (auto& [m, c] : p.terms) out.terms.emplace(m, c / content);
    return out;
}

// Boundary invariant via Smith normal form: project the boundary generators
// onto the free part of the module and take an elementary divisor of the span.
LaurentPoly betaViaSnf(const ModulePresentation& m, LabelingMode mode, int divisorIndex) {
    SnfDomain domain = mode == LabelingMode::Unoriented ? SnfDomain::Integers
                                                        : SnfDomain::UnivariateRationalLaurent;
    SnfResult snf = smithNormalForm(m.relations, domain);
    int q = m.relations.cols;
    std::vector<int> freeCols;
    for (int i = 0; i < q; ++i)
        if (i >= static_cast<int>(snf.diagonal.size()) || snf.diagonal[i].isZero())
            freeCols.push_back(i);

    // generator g maps to row g of V in the new basis (g = V h)
    int b = static_cast<int>(m.boundaryGenerators.size());
    int f = static_cast<int>(freeCols.size());
    RingMatrix w(b, f);
    for (int r = 0; r < b; ++r) {
        int g = m.boundaryGenerators[r];
        Int lcm = 1;
        for (int c = 0; c < f; ++c) {
            const Int& den = snf.V.at(g, freeCols[c]).den;
            lcm = lcm / intGcd(lcm, den) * den;
        }
        for (int c = 0; c < f; ++c) {
            const QPolyEntry& e = snf.V.at(g, freeCols[c]);
            w.at(r, c) = e.num * LaurentPoly(lcm / e.den);
        }
    }
    LaurentPoly result = elementaryDivisor(w, f, divisorIndex);
    if (mode != LabelingMode::Unoriented)
        result = stripIntegerContent(result);  // rational constants are units here
    return lpNormalize(result);
}

// Multivariate heuristic: eliminate unit pivots, then split off a diagonal
// torsion block by unimodular changes of basis. Returns nullopt when the
// remaining relations cannot be diagonalized this way.
std::optional<LaurentPoly> betaColored(const ModulePresentation& m, int divisorIndex) {
    int q = m.relations.cols;
    int r = m.relations.rows;
    std::vector<std::vector<LaurentPoly>> rel(r, std::vector<LaurentPoly>(q));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < q; ++j) rel[i][j] = m.relations.at(i, j);
    // expressions of the original generators in the current basis
    std::vector<std::vector<LaurentPoly>> expr(q, std::vector<LaurentPoly>(q));
    for (int i = 0; i < q; ++i) expr[i][i] = LaurentPoly(Int(1));
    std::vector<bool> rowAlive(r, true), colAlive(q, true);

    // phase 1: eliminate generators with unit coefficients
    for (bool again = true; again;) {
        again = false;
        for (int i = 0; i < r && !again; ++i) {
            if (!rowAlive[i]) continue;
            for (int j = 0; j < q && !again; ++j) {
                if (!colAlive[j] || !rel[i][j].isUnit()) continue;
                LaurentPoly uinv = lpUnitInverse(rel[i][j]);
                for (int k = 0; k < r; ++k) {
                    if (k == i || !rowAlive[k] || rel[k][j].isZero()) continue;
                    LaurentPoly f = rel[k][j] * uinv;
                    for (int c = 0; c < q; ++c)
                        if (colAlive[c]) rel[k][c] -= f * rel[i][c];
                }
                for (int p = 0; p < q; ++p) {
                    if (expr[p][j].isZero()) continue;
                    LaurentPoly f = expr[p][j] * uinv;
                    for (int c = 0; c < q; ++c)
                        if (colAlive[c] && c != j) expr[p][c] -= f * rel[i][c];
                    expr[p][j] = LaurentPoly();
                }
                rowAlive[i] = false;
                colAlive[j] = false;
                again = true;
            }
        }
    }

    // phase 2: each remaining relation must become content * (basis vector)
    std::set<int> pivots;
    for (int i = 0; i < r; ++i) {
        if (!rowAlive[i]) continue;
        LaurentPoly content;
        for (int c = 0; c < q; ++c)
            if (colAlive[c]) content = lpGcd(content, rel[i][c]);
        if (content.isZero()) {
            rowAlive[i] = false;
            continue;
        }
        std::vector<LaurentPoly> prim(q);
        for (int c = 0; c < q; ++c)
            if (colAlive[c] && !rel[i][c].isZero()) {
                auto d = lpDivideExact(rel[i][c], content);
                assert(d);
                prim[c] = *d;
            }
        int pivot = -1;
        for (int c = 0; c < q; ++c)
            if (colAlive[c] && !pivots.count(c) && prim[c].isUnit()) {
                pivot = c;
                break;
            }
        if (pivot < 0) return std::nullopt;
        LaurentPoly uinv = lpUnitInverse(prim[pivot]);
        auto changeBasis = [&](std::vector<LaurentPoly>& vec) {
            LaurentPoly coef = vec[pivot] * uinv;
            for (int c = 0; c < q; ++c)
                if (colAlive[c] && c != pivot && !prim[c].isZero()) vec[c] -= coef * prim[c];
            vec[pivot] = coef;
        };
        for (int k = 0; k < r; ++k)
            if (rowAlive[k]) changeBasis(rel[k]);
        for (int p = 0; p < q; ++p) changeBasis(expr[p]);
        if (rel[i][pivot].isUnit()) {
            colAlive[pivot] = false;  // the relation kills the new generator outright
            rowAlive[i] = false;
        } else {
            pivots.insert(pivot);
        }
    }

    std::vector<int> freeCols;
    for (int c = 0; c < q; ++c)
        if (colAlive[c] && !pivots.count(c)) freeCols.push_back(c);
    int f = static_cast<int>(freeCols.size());
    int b = static_cast<int>(m.boundaryGenerators.size());
    RingMatrix w(b, f);
    for (int i = 0; i < b; ++i)
        for (int c = 0; c < f; ++c) w.at(i, c) = expr[m.boundaryGenerators[i]][freeCols[c]];
    return lpNormalize(elementaryDivisor(w, f, divisorIndex));
}

}  // namespace

LaurentPoly tauOf(const ModulePresentation& p, LabelingMode mode) {
    ModulePresentation m = inMode(p, mode);
    int q = m.relations.cols;
    for (int k = 0; k <= q; ++k) {
        LaurentPoly d = elementaryDivisor(m.relations, q, k);
        if (!d.isZero()) return lpNormalize(d);
    }
    return LaurentPoly(Int(1));  // q = 0: the zero module
}

LaurentPoly tauOf(const TangleDiagram& t, LabelingMode mode) {
    return tauOf(foxPresentation(t, mode), mode);
}

std::optional<LaurentPoly> betaOf(const ModulePresentation& p, LabelingMode mode) {
    ModulePresentation m = inMode(p, mode);
    int missing = missingBoundaryGroups(m);
    if (missing >= 2) return std::nullopt;  // outside the rank-1 case
    int divisorIndex = missing == 0 ? 0 : 1;
    if (mode == LabelingMode::ColoredOriented) return betaColored(m, divisorIndex);
    return betaViaSnf(m, mode, divisorIndex);
}

std::optional<LaurentPoly> betaOf(const TangleDiagram& t, LabelingMode mode) {
    return betaOf(foxPresentation(t, mode), mode);
}

LaurentPoly alexanderPolynomial(const TangleDiagram& d, LabelingMode mode) {
    if (!d.isLink()) throw std::invalid_argument("alexander polynomial needs a closed diagram");
    ModulePresentation p = inMode(foxPresentation(d, mode), mode);
    int q = p.relations.cols;
    if (q == 0) throw std::invalid_argument("empty diagram");
    LaurentPoly delta = lpNormalize(elementaryDivisor(p.relations, q, 1));
#ifndef NDEBUG
    // single-variable classical diagrams: every codimension-1 minor is an
    // associate of the gcd
    if (mode == LabelingMode::Oriented && d.isClassical() && p.relations.rows == q && q <= 8) {
        for (int i = 0; i < q; ++i)
            for (int j = 0; j < q; ++j) {
                RingMatrix sub(q - 1, q - 1);
                for (int a = 0, ar = 0; a < q; ++a) {
                    if (a == i) continue;
                    for (int bcol = 0, bc = 0; bcol < q; ++bcol) {
                        if (bcol == j) continue;
                        sub.at(ar, bc++) = p.relations.at(a, bcol);
                    }
                    ++ar;
                }
                assert(lpNormalize(matDeterminant(sub)) == delta);
            }
    }
#endif
    return delta;
}

Int linkDeterminant(const TangleDiagram& d) {
    if (!d.isLink()) throw std::invalid_argument("determinant needs a closed diagram");
    ModulePresentation p = foxPresentation(d, LabelingMode::Unoriented);
    int q = p.relations.cols;
    if (q == 0) return 1;
    // kill the lexicographically first arc generator
    int kill = 0;
    for (int i = 1; i < q; ++i)
        if (p.generators[i] < p.generators[kill]) kill = i;
    RingMatrix killed(p.relations.rows, q - 1);
    for (int i = 0; i < p.relations.rows; ++i)
        for (int j = 0, c = 0; j < q; ++j)
            if (j != kill) killed.at(i, c++) = p.relations.at(i, j);
    LaurentPoly g = elementaryDivisor(killed, q - 1, 0);
    Int v = g.isZero() ? Int(0) : g.constantValue();
    return v < 0 ? Int(-v) : v;
}

Int krebesGcd(const TangleDiagram& t) {
    if (t.n != 2) throw std::invalid_argument("krebes gcd requires a 4-tangle");
    Int dn = linkDeterminant(closeTangle(t, numeratorMatching(2)));
    Int dd = linkDeterminant(closeTangle(t, denominatorMatching(2)));
    return intGcd(dn, dd);  // gcd(0, m) = m
}

Int squarefreePart(const Int& n) {
    Int v = n < 0 ? Int(-n) : n;
    if (v == 0) return 0;
    Int out = 1;
    for (Int p = 2; p * p <= v; ++p)
        if (v % p == 0) {
            out *= p;
            while (v % p == 0) v /= p;
        }
    return out * v;
}

bool dividesUpToUnits(const LaurentPoly& divisor, const LaurentPoly& dividend) {
    if (dividend.isZero()) return !divisor.isZero();
    if (divisor.isZero()) return false;
    return lpDivideExact(lpNormalize(dividend), lpNormalize(divisor)).has_value();
}

bool ObstructionReport::obstructed() const {
    for (auto& t : tests)
        if (t.obstructed) return true;
    return false;
}

namespace {

bool intDivides(const Int& g, const Int& d) { return g == 0 ? d == 0 : d % g == 0; }

std::string intStr(const Int& v) { return v.str(); }

}  // namespace

ObstructionReport checkEmbeddingObstruction(const TangleDiagram& t,
                                            const TangleDiagram& link,
                                            LabelingMode mode) {
    if (!link.isLink()) throw std::invalid_argument("second argument must be a closed diagram");
    ObstructionReport rep;
    if (mode == LabelingMode::Unoriented) {
        Int detL = linkDeterminant(link);
        Int g;
        if (t.n == 2) {
            g = krebesGcd(t);
        } else {
            LaurentPoly tau = tauOf(t, mode);
            auto beta = betaOf(t, mode);
            g = lpEvalAllInt(tau, Int(-1)) * lpEvalAllInt(*beta, Int(-1));
            if (g < 0) g = -g;
        }
        bool virt = !t.isClassical() || !link.isClassical();
        if (!virt) {
            ObstructionTest test;
            test.name = "classical determinant";
            test.detail = intStr(g) + " | " + intStr(detL);
            test.obstructed = !intDivides(g, detL);
            rep.tests.push_back(test);
        } else {
            Int sf = squarefreePart(g);
            ObstructionTest test;
            test.name = "virtual determinant (square-free part)";
            test.detail = intStr(sf) + " | " + intStr(detL);
            test.obstructed = !intDivides(sf, detL);
            rep.tests.push_back(test);
            if (!intDivides(g, detL))
                rep.notices.push_back("full gcd " + intStr(g) +
                                      " does not divide the determinant; only its "
                                      "square-free part obstructs virtual embeddings");
        }
        return rep;
    }

    LaurentPoly tau = tauOf(t, mode);
    auto beta = betaOf(t, mode);
    LaurentPoly delta = alexanderPolynomial(link, mode);
    ObstructionTest test;
    test.name = mode == LabelingMode::Oriented ? "oriented torsion*boundary"
                                               : "colored torsion*boundary";
    if (beta) {
        LaurentPoly prod = lpNormalize(tau * *beta);
        test.detail = printPoly(prod) + " | " + printPoly(delta);
        test.obstructed = !dividesUpToUnits(prod, delta);
    } else {
        rep.notices.push_back("boundary invariant indeterminate; testing torsion only");
        test.name += " (torsion only)";
        test.detail = printPoly(lpNormalize(tau)) + " | " + printPoly(delta);
        test.obstructed = !dividesUpToUnits(tau, delta);
    }
    rep.tests.push_back(test);
    return rep;
}

}  // namespace tg
