#include "tg/skein.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <sstream>

namespace tg {

namespace {

LaurentPoly deltaPoly() {
    return -(LaurentPoly::var("A", 2)) - LaurentPoly::var("A", -2);
}

// Map-based union-find keyed by edge id.
struct EdgeUf {
    std::map<int, int> parent;
    int find(int x) {
        auto it = parent.find(x);
        if (it == parent.end()) {
            parent[x] = x;
            return x;
        }
        int r = x;
        while (parent[r] != r) r = parent[r];
        while (parent[x] != r) {
            int nx = parent[x];
            parent[x] = r;
            x = nx;
        }
        return r;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

std::vector<int> classicalCrossings(const TangleDiagram& d, int cap,
                                    const char* what) {
    std::vector<int> idx;
    for (size_t i = 0; i < d.crossings.size(); ++i)
        if (d.crossings[i].isClassical()) idx.push_back(static_cast<int>(i));
    if (static_cast<int>(idx.size()) > cap)
        throw CapExceeded(std::string(what) + ": " + std::to_string(idx.size()) +
                          " classical crossings exceed the cap of " +
                          std::to_string(cap));
    return idx;
}

int freeLoopCount(const TangleDiagram& d) {
    int n = 0;
    for (auto& c : d.components)
        if (c.edges.empty()) ++n;
    return n;
}

// Shared state-sum walk: for each smoothing state, report the A-exponent and
// the union-find of edges after smoothing classical crossings and passing
// flat through virtual ones.
template <class Fn>
void forEachState(const TangleDiagram& d, const std::vector<int>& classical, Fn fn) {
    unsigned long long states = 1ull << classical.size();
    for (unsigned long long s = 0; s < states; ++s) {
        EdgeUf uf;
        int exp = 0;
        for (auto& c : d.crossings) {
            if (c.isClassical()) continue;
            uf.unite(c.e[0], c.e[2]);
            uf.unite(c.e[1], c.e[3]);
        }
        for (size_t k = 0; k < classical.size(); ++k) {
            const Crossing& c = d.crossings[classical[k]];
            if (s >> k & 1) {
                // A-smoothing: sweep the under strand counterclockwise
                uf.unite(c.e[0], c.e[1]);
                uf.unite(c.e[2], c.e[3]);
                ++exp;
            } else {
                uf.unite(c.e[0], c.e[3]);
                uf.unite(c.e[1], c.e[2]);
                --exp;
            }
        }
        fn(exp, uf);
    }
}

}  // namespace

LaurentPoly bracket(const TangleDiagram& d, int cap) {
    if (!d.isLink())
        throw std::invalid_argument("bracket needs a closed diagram");
    auto classical = classicalCrossings(d, cap, "bracket");
    int freeLoops = freeLoopCount(d);
    std::set<int> edges;
    for (auto& c : d.crossings)
        for (int e : c.e) edges.insert(e);
    LaurentPoly delta = deltaPoly();
    LaurentPoly sum;
    forEachState(d, classical, [&](int exp, EdgeUf& uf) {
        std::set<int> roots;
        for (int e : edges) roots.insert(uf.find(e));
        int loops = static_cast<int>(roots.size()) + freeLoops;
        if (loops == 0) loops = 1;  // empty diagram: normalize to 1
        sum += LaurentPoly::var("A", exp) * delta.pow(loops - 1);
    });
    if (classical.empty() && edges.empty() && freeLoops == 0) return LaurentPoly(Int(1));
    return sum;
}

TLElement tlDecompose(const TangleDiagram& t, int cap) {
    auto classical = classicalCrossings(t, cap, "tl decomposition");
    int freeLoops = freeLoopCount(t);
    std::set<int> edges;
    for (auto& c : t.crossings)
        for (int e : c.e) edges.insert(e);
    for (int e : t.boundary) edges.insert(e);
    LaurentPoly delta = deltaPoly();
    TLElement out;
    forEachState(t, classical, [&](int exp, EdgeUf& uf) {
        // boundary positions sharing an edge class get matched
        std::map<int, std::vector<int>> classPositions;
        for (size_t p = 0; p < t.boundary.size(); ++p)
            classPositions[uf.find(t.boundary[p])].push_back(static_cast<int>(p) + 1);
        Matching m;
        for (auto& [root, ps] : classPositions) {
            assert(ps.size() == 2 && "each arc joins exactly two boundary points");
            m.pairs.push_back({ps[0], ps[1]});
        }
        m.canonicalize();
        std::set<int> roots;
        for (int e : edges) roots.insert(uf.find(e));
        int loops = static_cast<int>(roots.size()) -
                    static_cast<int>(classPositions.size()) + freeLoops;
        out.coeff[m] += LaurentPoly::var("A", exp) * delta.pow(loops);
    });
    for (auto it = out.coeff.begin(); it != out.coeff.end();)
        it = it->second.isZero() ? out.coeff.erase(it) : std::next(it);
    return out;
}

int matchingCircles(const Matching& a, const Matching& b, int n) {
    std::vector<int> na(2 * n + 1), nb(2 * n + 1);
    for (auto& [p, q] : a.pairs) na[p] = q, na[q] = p;
    for (auto& [p, q] : b.pairs) nb[p] = q, nb[q] = p;
    std::vector<bool> seen(2 * n + 1, false);
    int circles = 0;
    for (int s = 1; s <= 2 * n; ++s) {
        if (seen[s]) continue;
        ++circles;
        int p = s;
        bool useA = true;
        while (!seen[p]) {
            seen[p] = true;
            p = useA ? na[p] : nb[p];
            useA = !useA;
            seen[p] = true;
            p = useA ? na[p] : nb[p];
            useA = !useA;
        }
    }
    return circles;
}

IdealZA bracketIdeal(const TangleDiagram& t, int cap) {
    std::vector<LaurentPoly> gens;
    for (auto& m : catalanMatchings(t.n)) gens.push_back(bracket(closeTangle(t, m), cap));
    return IdealZA(gens);
}

IdealZA virtualBracketIdeal(const TangleDiagram& t, int cap) {
    std::vector<LaurentPoly> gens;
    for (auto& m : allMatchings(t.n)) gens.push_back(bracket(closeTangle(t, m), cap));
    return IdealZA(gens);
}

LaurentPoly jones(const TangleDiagram& d, int cap) {
    if (!d.isClassical())
        throw std::invalid_argument("jones needs a classical diagram");
    int w = writhe(d);
    LaurentPoly b = bracket(d, cap);
    b = lpSubstitute(b, "A", LaurentPoly::var("t4", -1));
    LaurentPoly unit = LaurentPoly::var("t4", 3 * w);
    if (w % 2 != 0) unit = -unit;  // (-A)^{-3w} = (-1)^w A^{-3w}
    return unit * b;
}

Cyclotomic bracketAtZeta(const TangleDiagram& d, int cap) {
    LaurentPoly b = bracket(d, cap);
    EvalValue v = lpEval(b, {{"A", EvalValue(Cyclotomic::zeta(1))}});
    if (std::holds_alternative<Int>(v)) return Cyclotomic(std::get<Int>(v));
    return std::get<Cyclotomic>(v);
}

// ----------------------------------------------------------------- homflypt

namespace {

// Oriented link as crossing-pass sequences (a signed Gauss code): per
// component the cyclic list of (crossing, over?) passes, plus crossing signs.
struct PassLink {
    std::vector<std::vector<std::pair<int, bool>>> comps;  // (crossing, over)
    std::map<int, int> sign;
    int freeLoops = 0;

    std::string key() const {
        // normalize crossing labels by first appearance
        std::map<int, int> relabel;
        std::ostringstream ss;
        for (auto& comp : comps) {
            ss << "|";
            for (auto& [c, over] : comp) {
                auto [it, fresh] = relabel.emplace(c, relabel.size());
                ss << (over ? "o" : "u") << it->second << ","
                   << (sign.at(c) > 0 ? "+" : "-");
            }
        }
        ss << "#" << freeLoops;
        return ss.str();
    }
};

PassLink passLink(const TangleDiagram& d) {
    if (!d.isLink())
        throw std::invalid_argument("skein recursion needs a closed diagram");
    if (!d.isClassical())
        throw std::invalid_argument("skein recursion needs a classical diagram");
    auto dirs = orientEdges(d);
    PassLink link;
    link.freeLoops = freeLoopCount(d);
    for (size_t ci = 0; ci < d.crossings.size(); ++ci)
        link.sign[static_cast<int>(ci)] = crossingSign(d, static_cast<int>(ci));
    for (auto& comp : d.components) {
        if (comp.edges.empty()) continue;
        std::vector<int> order = comp.edges;
        if (comp.orient == 0)
            throw std::invalid_argument("skein recursion needs orientations");
        if (comp.orient < 0) std::reverse(order.begin(), order.end());
        std::vector<std::pair<int, bool>> passes;
        for (int e : order) {
            EdgeEnd head = dirs.at(e).second;
            if (head.isBoundary()) continue;
            passes.push_back({head.crossing, head.slot == 1 || head.slot == 3});
        }
        link.comps.push_back(std::move(passes));
    }
    return link;
}

LaurentPoly unlinkHomflypt(int n) {
    // ((v^-1 - v)/z)^(n-1)
    LaurentPoly u = (LaurentPoly::var("v", -1) - LaurentPoly::var("v")) *
                    LaurentPoly::var("z", -1);
    return u.pow(n - 1);
}

struct HomflyEngine {
    std::map<std::string, LaurentPoly> memo;

    LaurentPoly eval(const PassLink& link) {
        std::string k = link.key();
        auto it = memo.find(k);
        if (it != memo.end()) return it->second;
        LaurentPoly result = compute(link);
        memo.emplace(std::move(k), result);
        return result;
    }

    LaurentPoly compute(const PassLink& link) {
        // first crossing whose first pass is under must be switched
        std::set<int> seen;
        int badComp = -1, badPos = -1, badCrossing = -1;
        for (size_t i = 0; i < link.comps.size() && badCrossing < 0; ++i)
            for (size_t p = 0; p < link.comps[i].size(); ++p) {
                auto [c, over] = link.comps[i][p];
                if (!seen.insert(c).second) continue;
                if (!over) {
                    badComp = static_cast<int>(i);
                    badPos = static_cast<int>(p);
                    badCrossing = c;
                    break;
                }
            }
        if (badCrossing < 0) {
            int n = static_cast<int>(link.comps.size()) + link.freeLoops;
            return unlinkHomflypt(n);
        }

        PassLink flipped = link;
        for (auto& comp : flipped.comps)
            for (auto& [c, over] : comp)
                if (c == badCrossing) over = !over;
        flipped.sign[badCrossing] = -flipped.sign[badCrossing];

        PassLink smoothed = smooth(link, badCrossing);

        LaurentPoly z = LaurentPoly::var("z");
        if (link.sign.at(badCrossing) > 0) {
            // P(L+) = v^2 P(L-) + v z P(L0)
            return LaurentPoly::var("v", 2) * eval(flipped) +
                   LaurentPoly::var("v") * z * eval(smoothed);
        }
        // P(L-) = v^-2 P(L+) - v^-1 z P(L0)
        (void)badComp;
        (void)badPos;
        return LaurentPoly::var("v", -2) * eval(flipped) -
               LaurentPoly::var("v", -1) * z * eval(smoothed);
    }

    // Oriented smoothing: delete the crossing, splicing the two strands.
    static PassLink smooth(const PassLink& link, int crossing) {
        PassLink out;
        out.freeLoops = link.freeLoops;
        for (auto& [c, s] : link.sign)
            if (c != crossing) out.sign.emplace(c, s);

        std::pair<int, int> where[2];
        int found = 0;
        for (size_t i = 0; i < link.comps.size(); ++i)
            for (size_t p = 0; p < link.comps[i].size(); ++p)
                if (link.comps[i][p].first == crossing)
                    where[found++] = {static_cast<int>(i), static_cast<int>(p)};
        assert(found == 2);

        auto [i1, p1] = where[0];
        auto [i2, p2] = where[1];
        if (i1 == i2) {
            // self-crossing: the component splits into two
            const auto& comp = link.comps[i1];
            int len = static_cast<int>(comp.size());
            std::vector<std::pair<int, bool>> a, b;
            for (int q = (p1 + 1) % len; q != p2; q = (q + 1) % len)
                a.push_back(comp[q]);
            for (int q = (p2 + 1) % len; q != p1; q = (q + 1) % len)
                b.push_back(comp[q]);
            for (size_t i = 0; i < link.comps.size(); ++i)
                if (static_cast<int>(i) != i1) out.comps.push_back(link.comps[i]);
            for (auto* part : {&a, &b}) {
                if (part->empty())
                    ++out.freeLoops;
                else
                    out.comps.push_back(std::move(*part));
            }
        } else {
            // crossing between two components: they merge
            const auto& c1 = link.comps[i1];
            const auto& c2 = link.comps[i2];
            std::vector<std::pair<int, bool>> merged;
            int l1 = static_cast<int>(c1.size()), l2 = static_cast<int>(c2.size());
            for (int q = (p1 + 1) % l1; q != p1; q = (q + 1) % l1) merged.push_back(c1[q]);
            for (int q = (p2 + 1) % l2; q != p2; q = (q + 1) % l2) merged.push_back(c2[q]);
            if (merged.empty())
                ++out.freeLoops;
            else
                out.comps.push_back(std::move(merged));
            for (size_t i = 0; i < link.comps.size(); ++i)
                if (static_cast<int>(i) != i1 && static_cast<int>(i) != i2)
                    out.comps.push_back(link.comps[i]);
        }
        return out;
    }
};

}  // namespace

LaurentPoly homflypt(const TangleDiagram& d, int cap) {
    classicalCrossings(d, cap, "homflypt");
    HomflyEngine engine;
    return engine.eval(passLink(d));
}

LaurentPoly conway(const TangleDiagram& d, int cap) {
    return lpSubstitute(homflypt(d, cap), "v", LaurentPoly(Int(1)));
}

}  // namespace tg
