#ifndef TESTS_SUPPORT_HPP
#define TESTS_SUPPORT_HPP

#include "tg/diagram.hpp"

#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace tgtest {

// Closure of a braid on `strands` strands; letters are +/-i for the i-th
// generator (1-based), positive = the strand entering top-right passes over.
// All crossings carry their declared sign.
inline tg::TangleDiagram braidClosure(int strands, const std::vector<int>& word) {
    tg::TangleDiagram d;
    d.n = 0;
    int next = 1;
    std::vector<int> top(strands), cur(strands);
    for (int i = 0; i < strands; ++i) top[i] = cur[i] = next++;
    int cn = 0;
    for (int w : word) {
        int i = std::abs(w) - 1;
        if (i < 0 || i + 1 >= strands) throw std::runtime_error("bad braid letter");
        int a = cur[i], b = cur[i + 1];
        int c = next++, e = next++;  // c continues b (to bottom-left), e continues a
        tg::Crossing x;
        x.id = "b" + std::to_string(++cn);
        x.kind = w > 0 ? tg::CrossingKind::Positive : tg::CrossingKind::Negative;
        if (w > 0)
            x.e = {a, c, e, b};  // under pair {a, e}
        else
            x.e = {b, a, c, e};  // under pair {b, c}
        d.crossings.push_back(x);
        cur[i] = c;
        cur[i + 1] = e;
    }
    // plat the bottom back to the top
    for (int i = 0; i < strands; ++i) {
        if (cur[i] == top[i]) {
            tg::Component loop;
            loop.name = "u" + std::to_string(i + 1);
            d.components.push_back(loop);
            continue;
        }
        for (auto& x : d.crossings)
            for (int& e : x.e)
                if (e == cur[i]) e = top[i];
    }
    // name the traced components
    auto comps = tg::traceComponents(d);
    int k = 0;
    for (auto& edges : comps) {
        tg::Component comp;
        comp.name = "c" + std::to_string(++k);
        comp.edges = edges;
        d.components.push_back(comp);
    }
    return d;
}

// A standard trefoil diagram (all crossings negative under our conventions).
inline tg::TangleDiagram trefoil(bool withComponent = true) {
    std::string text =
        "link\n"
        "x c1 kind=u e=1,4,2,5\n"
        "x c2 kind=u e=3,6,4,1\n"
        "x c3 kind=u e=5,2,6,3\n";
    if (withComponent) text += "component k edges=1,2,3,4,5,6 orient=+\n";
    return tg::parseDiagram(text);
}

// Crossingless 0-tangle: arcs joining boundary positions 1-2 and 3-4.
inline tg::TangleDiagram zeroTangle() {
    return tg::parseDiagram(
        "tangle n=2\n"
        "boundary 1 1 2 2\n"
        "component a edges=1\n"
        "component b edges=2\n");
}

// Crossingless identity tangle: arcs joining positions 1-4 and 2-3.
inline tg::TangleDiagram identityTangle() {
    return tg::parseDiagram(
        "tangle n=2\n"
        "boundary 1 2 2 1\n"
        "component a edges=1\n"
        "component b edges=2\n");
}

// Single-crossing 4-tangle: strands run along the diagonals, joining boundary
// positions 1-3 and 2-4. over = true puts the 1-3 strand on top.
inline tg::TangleDiagram oneCrossingTangle(bool over) {
    std::string e = over ? "2,3,4,1" : "1,2,3,4";
    return tg::parseDiagram(
        "tangle n=2\n"
        "x c kind=u e=" + e + "\n" +
        "boundary 1 2 3 4\n");
}

// Orient every unoriented component along its traversal order, then rotate
// crossing slots by two where needed so slot 0 is the incoming under-strand.
inline void orientAll(tg::TangleDiagram& d) {
    for (auto& c : d.components)
        if (c.orient == 0) c.orient = 1;
    auto dir = tg::orientEdges(d);
    for (size_t ci = 0; ci < d.crossings.size(); ++ci) {
        auto& x = d.crossings[ci];
        if (!x.isClassical()) continue;
        tg::EdgeEnd s0{static_cast<int>(ci), 0};
        auto it = dir.find(x.e[0]);
        if (it != dir.end() && !(it->second.second == s0))
            x.e = {x.e[2], x.e[3], x.e[0], x.e[1]};
    }
}

// Distinct colors in declaration order for components lacking one.
inline void colorAll(tg::TangleDiagram& d) {
    int next = 1;
    for (auto& c : d.components) {
        if (!c.color) c.color = next;
        next = std::max(next, *c.color + 1);
    }
}

inline void stripMeta(tg::TangleDiagram& d) {
    for (auto& c : d.components) {
        c.orient = 0;
        c.color.reset();
    }
}

// Reverse the orientation of one named component, rotating crossings where it
// passes under so slot 0 stays the incoming under-strand and flipping the
// declared sign of crossings it shares with other components.
inline tg::TangleDiagram reverseComponent(tg::TangleDiagram d, const std::string& name) {
    tg::Component* comp = nullptr;
    for (auto& c : d.components)
        if (c.name == name) comp = &c;
    if (!comp) throw std::runtime_error("no component " + name);
    std::set<int> edges(comp->edges.begin(), comp->edges.end());
    for (auto& x : d.crossings) {
        if (!x.isClassical()) continue;
        bool under = edges.count(x.e[0]) || edges.count(x.e[2]);
        bool over = edges.count(x.e[1]) || edges.count(x.e[3]);
        if (under) x.e = {x.e[2], x.e[3], x.e[0], x.e[1]};
        if (under != over) {
            if (x.kind == tg::CrossingKind::Positive)
                x.kind = tg::CrossingKind::Negative;
            else if (x.kind == tg::CrossingKind::Negative)
                x.kind = tg::CrossingKind::Positive;
        }
    }
    comp->orient = -comp->orient;
    return d;
}

// Rotate the disk one boundary position counterclockwise.
inline tg::TangleDiagram rotateTangle(tg::TangleDiagram d) {
    if (d.boundary.empty()) return d;
    std::vector<int> b;
    b.push_back(d.boundary.back());
    for (size_t i = 0; i + 1 < d.boundary.size(); ++i) b.push_back(d.boundary[i]);
    d.boundary = b;
    return d;
}

// Random classical 4-tangle built from products of rotated one-crossing and
// crossingless tangles; components are retraced without metadata.
template <class Rng>
tg::TangleDiagram randomTangle(Rng& rng, int crossings) {
    auto piece = [&]() {
        switch (rng() % 4) {
            case 0: return oneCrossingTangle(true);
            case 1: return oneCrossingTangle(false);
            case 2: return zeroTangle();
            default: return identityTangle();
        }
    };
    tg::TangleDiagram t = piece();
    auto count = [](const tg::TangleDiagram& d) { return static_cast<int>(d.crossings.size()); };
    while (count(t) < crossings) {
        for (int r = rng() % 4; r > 0; --r) t = rotateTangle(t);
        tg::TangleDiagram p = piece();
        t = rng() % 2 ? tg::tangleProduct(t, p) : tg::tangleProduct(p, t);
    }
    // Keep crossingless closed loops (empty edge lists), retrace the rest.
    std::vector<tg::Component> loops;
    for (auto& c : t.components)
        if (c.edges.empty()) loops.push_back(c);
    t.components = loops;
    stripMeta(t);
    auto comps = tg::traceComponents(t);
    int k = 0;
    for (auto& edges : comps) {
        tg::Component comp;
        comp.name = "s" + std::to_string(++k);
        comp.edges = edges;
        t.components.push_back(comp);
    }
    return t;
}

inline std::string crossingsAndBoundaryKey(const tg::TangleDiagram& d) {
    tg::TangleDiagram copy = d;
    copy.components.clear();
    return tg::canonicalKey(copy);
}

}  // namespace tgtest

#endif
