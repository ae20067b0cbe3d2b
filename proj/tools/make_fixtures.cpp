// Regenerates the diagram fixtures in fixtures/ from deterministic
// constructions (braid closures, twist regions, continued-fraction tangles).
// Usage: make-fixtures <fixtures-dir>
#include "tg/alexander.hpp"
#include "tg/diagram.hpp"
#include "tg/ideal.hpp"
#include "tg/ring.hpp"
#include "tg/skein.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

using namespace tg;

namespace {

TangleDiagram retrace(TangleDiagram t) {
    std::vector<Component> loops;
    for (auto& c : t.components)
        if (c.edges.empty()) loops.push_back(c);
    t.components = loops;
    auto comps = traceComponents(t);
    int k = 0;
    for (auto& edges : comps) {
        Component c;
        c.name = "s" + std::to_string(++k);
        c.edges = edges;
        t.components.push_back(c);
    }
    return t;
}

TangleDiagram braidClosure(int strands, const std::vector<int>& word) {
    TangleDiagram d;
    d.n = 0;
    int next = 1, cn = 0;
    std::vector<int> top(strands), cur(strands);
    for (int i = 0; i < strands; ++i) top[i] = cur[i] = next++;
    for (int w : word) {
        int i = std::abs(w) - 1;
        int a = cur[i], b = cur[i + 1];
        int c = next++, e = next++;
        Crossing x;
        x.id = "b" + std::to_string(++cn);
        x.kind = w > 0 ? CrossingKind::Positive : CrossingKind::Negative;
        x.e = w > 0 ? std::array<int, 4>{a, c, e, b} : std::array<int, 4>{b, a, c, e};
        d.crossings.push_back(x);
        cur[i] = c;
        cur[i + 1] = e;
    }
    for (int i = 0; i < strands; ++i) {
        if (cur[i] == top[i]) {
            Component loop;
            loop.name = "u" + std::to_string(i + 1);
            d.components.push_back(loop);
            continue;
        }
        for (auto& x : d.crossings)
            for (int& e : x.e)
                if (e == cur[i]) e = top[i];
    }
    return retrace(d);
}

TangleDiagram rotateTangle(TangleDiagram d) {
    std::vector<int> b;
    b.push_back(d.boundary.back());
    for (size_t i = 0; i + 1 < d.boundary.size(); ++i) b.push_back(d.boundary[i]);
    d.boundary = b;
    return d;
}

TangleDiagram oneCrossing(bool over) {
    return parseDiagram("tangle n=2\nx c kind=u e=" +
                        std::string(over ? "2,3,4,1" : "1,2,3,4") +
                        "\nboundary 1 2 3 4\n");
}

// horizontal twist region of k like-handed crossings
TangleDiagram htwists(int k, bool over) {
    TangleDiagram t = oneCrossing(over);
    for (int i = 1; i < k; ++i) t = tangleProduct(t, oneCrossing(over));
    return t;
}

TangleDiagram vstrip(int k, bool over) { return retrace(rotateTangle(htwists(k, over))); }

// 2-bridge knot from a continued fraction, twist handedness alternating per
// stage so the result is the reduced alternating diagram
TangleDiagram twoBridge(const std::vector<int>& a, bool over0) {
    bool over = over0;
    TangleDiagram t = htwists(a[0], over);
    for (size_t i = 1; i < a.size(); ++i) {
        over = !over;
        t = tangleProduct(rotateTangle(t), htwists(a[i], over));
    }
    return retrace(closeTangle(retrace(t), numeratorMatching(2)));
}

// pretzel link: vertical twist strips side by side, closed top and bottom
TangleDiagram pretzel(const std::vector<int>& strips, bool over) {
    TangleDiagram t = vstrip(strips[0], over);
    for (size_t i = 1; i < strips.size(); ++i)
        t = tangleProduct(t, vstrip(strips[i], over));
    return retrace(closeTangle(retrace(t), numeratorMatching(2)));
}

// orient every component along its traversal order, rotating crossing slots
// so slot 0 stays the incoming under-strand
void orientAll(TangleDiagram& d) {
    for (auto& c : d.components)
        if (c.orient == 0) c.orient = 1;
    auto dir = orientEdges(d);
    for (size_t ci = 0; ci < d.crossings.size(); ++ci) {
        auto& x = d.crossings[ci];
        if (!x.isClassical()) continue;
        EdgeEnd s0{static_cast<int>(ci), 0};
        auto it = dir.find(x.e[0]);
        if (it != dir.end() && !(it->second.second == s0))
            x.e = {x.e[2], x.e[3], x.e[0], x.e[1]};
    }
}

void write(const std::string& dir, const std::string& name, const std::string& comment,
           const TangleDiagram& d) {
    auto bad = validate(d);
    if (!bad.empty()) throw std::runtime_error(name + ": " + bad.front());
    std::ostringstream out;
    out << "# " << comment << "\n" << serializeDiagram(d);
    std::string text = out.str();
    if (!(parseDiagram(text) == d)) throw std::runtime_error(name + ": round trip failed");
    std::ofstream f(dir + "/" + name);
    f << text;
    std::cout << "wrote " << name << "\n";
}

void expect(bool ok, const std::string& what) {
    if (!ok) throw std::runtime_error("fixture self-check failed: " + what);
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: make-fixtures <fixtures-dir>\n";
        return 1;
    }
    std::string dir = argv[1];

    TangleDiagram unknot;
    unknot.n = 0;
    Component loop;
    loop.name = "k";
    unknot.components.push_back(loop);
    write(dir, "unknot.tg", "crossingless unknot; bracket 1, determinant 1", unknot);

    auto trefoil = braidClosure(2, {1, 1, 1});
    orientAll(trefoil);
    expect(printPoly(bracket(trefoil)) == "-A^5 - A^-3 + A^-7", "trefoil bracket");
    write(dir, "trefoil.tg",
          "trefoil as the closed 2-braid s1^3; determinant 3, Conway z^2 + 1", trefoil);

    auto fig8 = braidClosure(3, {1, -2, 1, -2});
    orientAll(fig8);
    expect(linkDeterminant(fig8) == 5, "figure-eight determinant");
    write(dir, "figure-eight.tg",
          "figure-eight knot as the closed 3-braid (s1 s2^-1)^2; determinant 5", fig8);

    auto hopf = braidClosure(2, {1, 1});
    orientAll(hopf);
    expect(printPoly(bracket(hopf)) == "-A^4 - A^-4", "hopf bracket");
    write(dir, "hopf.tg", "positive Hopf link as the closed 2-braid s1^2; determinant 2",
          hopf);

    auto t421 = braidClosure(2, {-1, -1, -1, -1});
    expect(printPoly(bracket(t421)) == "-A^10 + A^6 - A^2 - A^-6", "4^2_1 bracket");
    write(dir, "torus-4-2.tg",
          "(2,4)-torus link as the closed 2-braid s1^-4; bracket -A^10 + A^6 - A^2 - A^-6",
          t421);

    auto t421m = braidClosure(2, {1, 1, 1, 1});
    expect(printPoly(bracket(t421m)) == "-A^6 - A^-2 + A^-6 - A^-10", "4^2_1 mirror bracket");
    write(dir, "torus-4-2-mirror.tg",
          "mirror (2,4)-torus link as the closed 2-braid s1^4; bracket -A^-10 + A^-6 - A^-2 - A^6",
          t421m);

    auto k85 = pretzel({3, 3, 2}, true);
    orientAll(k85);
    expect(linkDeterminant(k85) == 21, "8_5 determinant");
    expect(printPoly(bracket(k85)) ==
               "A^12 - A^8 + 3*A^4 - 3 + 3*A^-4 - 4*A^-8 + 3*A^-12 - 2*A^-16 + A^-20",
           "8_5 bracket");
    write(dir, "8-5.tg", "(3,3,2)-pretzel knot; determinant 21", k85);

    auto k88m = twoBridge({2, 3, 1, 2}, false);
    orientAll(k88m);
    expect(linkDeterminant(k88m) == 25, "8_8 mirror determinant");
    write(dir, "8-8-mirror.tg",
          "two-bridge knot of fraction 25/9, mirrored; determinant 25; its bracket joins the "
          "(3,3,2)-pretzel bracket in generating the ideal (17, A^4 - 5)",
          k88m);

    auto k62 = twoBridge({3, 1, 2}, false);
    orientAll(k62);
    expect(linkDeterminant(k62) == 11, "6_2 determinant");
    write(dir, "6-2.tg",
          "two-bridge knot of fraction 11/4; determinant 11; bracket lies in (17, A^4 - 5)",
          k62);

    auto k81m = twoBridge({6, 2}, false);
    orientAll(k81m);
    expect(linkDeterminant(k81m) == 13, "8_1 mirror determinant");
    write(dir, "8-1-mirror.tg",
          "two-bridge knot of fraction 13/6, mirrored; determinant 13; bracket lies in "
          "(17, A^4 - 5)",
          k81m);

    auto k814 = twoBridge({2, 2, 1, 1, 2}, false);
    orientAll(k814);
    expect(linkDeterminant(k814) == 31, "8_14 determinant");
    write(dir, "8-14.tg", "two-bridge knot of fraction 31/12; determinant 31", k814);

    auto k814m = twoBridge({2, 2, 1, 1, 2}, true);
    orientAll(k814m);
    expect(linkDeterminant(k814m) == 31, "8_14 mirror determinant");
    write(dir, "8-14-mirror.tg",
          "two-bridge knot of fraction 31/12, mirrored; determinant 31; bracket lies in "
          "(17, A^4 - 5)",
          k814m);

    // square tangle closures (the square tangle fixture itself is hand-made)
    std::ifstream sq(dir + "/square.tg");
    std::stringstream sqText;
    sqText << sq.rdbuf();
    TangleDiagram square = parseDiagram(sqText.str());
    std::vector<std::string> warn;
    auto squareNum = closeTangle(square, numeratorMatching(2), &warn);
    expect(linkDeterminant(squareNum) == 0, "square numerator determinant");
    write(dir, "square-num.tg", "numerator closure of the square tangle; determinant 0",
          squareNum);
    auto squareDen = closeTangle(square, denominatorMatching(2), &warn);
    expect(linkDeterminant(squareDen) == 9, "square denominator determinant");
    write(dir, "square-den.tg", "denominator closure of the square tangle; determinant 9",
          squareDen);
    Matching crossed;
    crossed.pairs = {{1, 3}, {2, 4}};
    auto squareVirtual = closeTangle(square, crossed, &warn);
    expect(linkDeterminant(squareVirtual) == 3, "virtual closure determinant");
    write(dir, "fig7-virtual.tg",
          "crossed closure of the square tangle through one virtual crossing; determinant 3",
          squareVirtual);

    // tangle whose closures realize the (3,3,2)-pretzel and the mirrored 25/9
    // two-bridge knot: cut the pretzel diagram open along two arcs
    TangleDiagram krebes = parseDiagram(
        "tangle n=2\n"
        "x c1 kind=u e=2,3,34,1\n"
        "x c2 kind=u e=3,8,9,4\n"
        "x c3 kind=u e=8,13,14,9\n"
        "x c4 kind=u e=17,18,19,2\n"
        "x c5 kind=u e=18,23,24,19\n"
        "x c6 kind=u e=23,28,13,24\n"
        "x c7 kind=u e=1,35,33,17\n"
        "x c8 kind=u e=32,14,28,33\n"
        "boundary 4 34 35 32\n"
        "component s1 edges=4,8,14,33,1,3,9,13,23,19,17,35\n"
        "component s2 edges=34,2,18,24,28,32\n");
    IdealZA krebesIdeal = bracketIdeal(krebes);
    expect(krebesIdeal.str() == "( 17 ; A^4 - 5 )", "krebes bracket ideal");
    write(dir, "krebes.tg",
          "4-tangle whose Catalan closure brackets generate the ideal (17, A^4 - 5)", krebes);
    auto krebesNum = retrace(closeTangle(krebes, numeratorMatching(2)));
    expect(lpNormalize(bracket(krebesNum)) == lpNormalize(bracket(k88m)), "krebes numerator");
    write(dir, "krebes-num.tg",
          "numerator closure of krebes.tg; bracket matches 8-8-mirror.tg", krebesNum);
    auto krebesDen = retrace(closeTangle(krebes, denominatorMatching(2)));
    expect(lpNormalize(bracket(krebesDen)) == lpNormalize(bracket(k85)), "krebes denominator");
    write(dir, "krebes-den.tg", "denominator closure of krebes.tg; bracket matches 8-5.tg",
          krebesDen);

    std::cout << "all fixture self-checks passed\n";
    return 0;
}
