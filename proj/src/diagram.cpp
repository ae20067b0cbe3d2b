#include "tg/diagram.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <functional>
#include <sstream>

namespace tg {

namespace {

const char* kindChar(CrossingKind k) {
    switch (k) {
        case CrossingKind::Positive: return "+";
        case CrossingKind::Negative: return "-";
        case CrossingKind::Unsigned: return "u";
        case CrossingKind::Virtual: return "v";
    }
    return "?";
}

std::vector<std::string> splitWs(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string t;
    while (is >> t) out.push_back(t);
    return out;
}

std::vector<int> parseIntList(const std::string& s, int line) {
    std::vector<int> out;
    if (s.empty()) return out;
    size_t pos = 0;
    while (pos < s.size()) {
        size_t comma = s.find(',', pos);
        std::string tok = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        try {
            size_t used;
            out.push_back(std::stoi(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw DiagramParseError("bad integer '" + tok + "'", line);
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

// key=value split
bool kv(const std::string& tok, const std::string& key, std::string& value) {
    if (tok.size() > key.size() + 1 && tok.compare(0, key.size(), key) == 0 &&
        tok[key.size()] == '=') {
        value = tok.substr(key.size() + 1);
        return true;
    }
    // allow empty value (edges=)
    if (tok == key + "=") {
        value.clear();
        return true;
    }
    return false;
}

}  // namespace

bool TangleDiagram::isClassical() const {
    for (auto& c : crossings)
        if (!c.isClassical()) return false;
    return true;
}

int TangleDiagram::maxEdgeId() const {
    int m = 0;
    for (auto& c : crossings)
        for (int e : c.e) m = std::max(m, e);
    for (int e : boundary) m = std::max(m, e);
    for (auto& comp : components)
        for (int e : comp.edges) m = std::max(m, e);
    return m;
}

const Crossing* TangleDiagram::crossingById(const std::string& id) const {
    for (auto& c : crossings)
        if (c.id == id) return &c;
    return nullptr;
}

// ------------------------------------------------------------ parse / print

TangleDiagram parseDiagram(const std::string& text) {
    TangleDiagram d;
    bool sawHeader = false;
    std::istringstream is(text);
    std::string raw;
    int ln = 0;
    while (std::getline(is, raw)) {
        ++ln;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        auto toks = splitWs(raw);
        if (toks.empty()) continue;
        const std::string& head = toks[0];
        if (head == "tangle" || head == "link") {
            if (sawHeader) throw DiagramParseError("duplicate header", ln);
            sawHeader = true;
            if (head == "link") {
                if (toks.size() != 1) throw DiagramParseError("unexpected tokens after 'link'", ln);
                d.n = 0;
            } else {
                std::string v;
                if (toks.size() != 2 || !kv(toks[1], "n", v))
                    throw DiagramParseError("expected 'tangle n=<int>'", ln);
                d.n = std::stoi(v);
                if (d.n < 1) throw DiagramParseError("tangle needs n >= 1", ln);
            }
        } else if (head == "x") {
            if (!sawHeader) throw DiagramParseError("missing header line", ln);
            if (toks.size() != 4) throw DiagramParseError("expected 'x <id> kind=... e=...'", ln);
            Crossing c;
            c.id = toks[1];
            std::string v;
            if (!kv(toks[2], "kind", v) || v.size() != 1 || !strchr("+-uv", v[0]))
                throw DiagramParseError("bad kind", ln);
            c.kind = v == "+"   ? CrossingKind::Positive
                     : v == "-" ? CrossingKind::Negative
                     : v == "u" ? CrossingKind::Unsigned
                                : CrossingKind::Virtual;
            if (!kv(toks[3], "e", v)) throw DiagramParseError("missing e=", ln);
            auto es = parseIntList(v, ln);
            if (es.size() != 4) throw DiagramParseError("crossing needs 4 half-edges", ln);
            std::copy(es.begin(), es.end(), c.e.begin());
            d.crossings.push_back(std::move(c));
        } else if (head == "boundary") {
            if (!sawHeader) throw DiagramParseError("missing header line", ln);
            for (size_t i = 1; i < toks.size(); ++i) {
                try {
                    d.boundary.push_back(std::stoi(toks[i]));
                } catch (const std::exception&) {
                    throw DiagramParseError("bad boundary id '" + toks[i] + "'", ln);
                }
            }
        } else if (head == "component") {
            if (!sawHeader) throw DiagramParseError("missing header line", ln);
            if (toks.size() < 3) throw DiagramParseError("component needs a name and edges=", ln);
            Component comp;
            comp.name = toks[1];
            std::string v;
            if (!kv(toks[2], "edges", v)) throw DiagramParseError("missing edges=", ln);
            comp.edges = parseIntList(v, ln);
            for (size_t i = 3; i < toks.size(); ++i) {
                if (kv(toks[i], "orient", v)) {
                    if (v == "+")
                        comp.orient = 1;
                    else if (v == "-")
                        comp.orient = -1;
                    else
                        throw DiagramParseError("orient must be + or -", ln);
                } else if (kv(toks[i], "color", v)) {
                    comp.color = std::stoi(v);
                } else {
                    throw DiagramParseError("unknown component attribute '" + toks[i] + "'", ln);
                }
            }
            d.components.push_back(std::move(comp));
        } else {
            throw DiagramParseError("unknown directive '" + head + "'", ln);
        }
    }
    if (!sawHeader) throw DiagramParseError("empty diagram text", 0);
    return d;
}

std::string serializeDiagram(const TangleDiagram& d) {
    std::ostringstream os;
    if (d.n > 0)
        os << "tangle n=" << d.n << "\n";
    else
        os << "link\n";
    for (auto& c : d.crossings)
        os << "x " << c.id << " kind=" << kindChar(c.kind) << " e=" << c.e[0] << "," << c.e[1]
           << "," << c.e[2] << "," << c.e[3] << "\n";
    if (!d.boundary.empty()) {
        os << "boundary";
        for (int e : d.boundary) os << " " << e;
        os << "\n";
    }
    for (auto& comp : d.components) {
        os << "component " << comp.name << " edges=";
        for (size_t i = 0; i < comp.edges.size(); ++i) os << (i ? "," : "") << comp.edges[i];
        if (comp.orient) os << " orient=" << (comp.orient > 0 ? "+" : "-");
        if (comp.color) os << " color=" << *comp.color;
        os << "\n";
    }
    return os.str();
}

// ----------------------------------------------------------- edge structure

std::map<int, EdgeEnds> edgeEndpoints(const TangleDiagram& d) {
    std::map<int, std::vector<EdgeEnd>> occ;
    for (size_t ci = 0; ci < d.crossings.size(); ++ci)
        for (int s = 0; s < 4; ++s)
            occ[d.crossings[ci].e[s]].push_back({static_cast<int>(ci), s});
    for (size_t p = 0; p < d.boundary.size(); ++p)
        occ[d.boundary[p]].push_back({-1, static_cast<int>(p + 1)});
    std::map<int, EdgeEnds> out;
    for (auto& [e, ends] : occ) {
        if (ends.size() != 2)
            throw std::runtime_error("edge " + std::to_string(e) + " has " +
                                     std::to_string(ends.size()) + " endpoints");
        out[e] = EdgeEnds{{ends[0], ends[1]}};
    }
    return out;
}

namespace {

EdgeEnd otherEnd(const EdgeEnds& ee, const EdgeEnd& one) {
    return ee.ends[0] == one ? ee.ends[1] : ee.ends[0];
}

// Walk one strand starting from the given edge at the given end; returns the
// edges in traversal order together with each edge's (tail, head).
struct WalkStep {
    int edge;
    EdgeEnd tail, head;
};

std::vector<WalkStep> walkStrand(const TangleDiagram& d, const std::map<int, EdgeEnds>& ends,
                                 int startEdge, EdgeEnd startTail) {
    std::vector<WalkStep> out;
    int e = startEdge;
    EdgeEnd tail = startTail;
    while (true) {
        EdgeEnd head = otherEnd(ends.at(e), tail);
        // an edge with equal-looking ends cannot occur; slots/positions differ
        out.push_back({e, tail, head});
        if (head.isBoundary()) break;
        int c = head.crossing, s = head.slot;
        EdgeEnd nextTail{c, (s + 2) % 4};
        int nextEdge = d.crossings[c].e[nextTail.slot];
        if (nextEdge == startEdge && nextTail == startTail) break;  // closed loop
        e = nextEdge;
        tail = nextTail;
        if (out.size() > 8 * (d.crossings.size() + d.boundary.size() + 2))
            throw std::runtime_error("strand walk does not terminate");
    }
    return out;
}

}  // namespace

std::vector<std::vector<int>> traceComponents(const TangleDiagram& d) {
    auto ends = edgeEndpoints(d);
    std::set<int> seen;
    std::vector<std::vector<int>> comps;
    // open strands first, from the smaller boundary position
    std::vector<std::pair<int, int>> starts;  // (boundary pos, edge)
    for (size_t p = 0; p < d.boundary.size(); ++p)
        starts.push_back({static_cast<int>(p + 1), d.boundary[p]});
    for (auto& [pos, e] : starts) {
        if (seen.count(e)) continue;
        auto walk = walkStrand(d, ends, e, EdgeEnd{-1, pos});
        std::vector<int> comp;
        for (auto& st : walk) {
            comp.push_back(st.edge);
            seen.insert(st.edge);
        }
        comps.push_back(std::move(comp));
    }
    // closed strands
    for (auto& [e, ee] : ends) {
        if (seen.count(e)) continue;
        auto walk = walkStrand(d, ends, e, ee.ends[0]);
        std::vector<int> comp;
        for (auto& st : walk) {
            comp.push_back(st.edge);
            seen.insert(st.edge);
        }
        comps.push_back(std::move(comp));
    }
    return comps;
}

namespace {

// Walk a declared component's edges, resolving each edge's direction.
// Returns empty on inconsistency.
std::vector<WalkStep> walkDeclared(const TangleDiagram& d, const std::map<int, EdgeEnds>& ends,
                                   std::vector<int> order) {
    if (order.empty()) return {};
    const auto& e0 = ends.at(order[0]);
    std::vector<EdgeEnd> tails;
    if (order.size() == 1) {
        // single edge: open from the smaller boundary position, or a closed
        // kink-free loop is impossible (needs a crossing), so both boundary
        if (e0.ends[0].isBoundary() && e0.ends[1].isBoundary())
            tails.push_back(e0.ends[0].slot < e0.ends[1].slot ? e0.ends[0] : e0.ends[1]);
        else
            return {};
    } else {
        tails.push_back(e0.ends[0]);
        tails.push_back(e0.ends[1]);
    }
    // A cyclically symmetric component can match in both directions; prefer
    // the direction that keeps incoming under-strands at slot 0.
    std::vector<std::vector<WalkStep>> matches;
    for (EdgeEnd tail : tails) {
        auto walk = walkStrand(d, ends, order[0], tail);
        if (walk.size() != order.size()) continue;
        bool match = true;
        for (size_t i = 0; i < walk.size(); ++i)
            if (walk[i].edge != order[i]) {
                match = false;
                break;
            }
        if (match) matches.push_back(std::move(walk));
    }
    if (matches.empty()) return {};
    if (matches.size() == 1) return matches.front();
    auto score = [&](const std::vector<WalkStep>& walk) {
        int s = 0;
        for (auto& st : walk) {
            if (st.head.isBoundary()) continue;
            const Crossing& c = d.crossings[st.head.crossing];
            if (c.isClassical() && st.head.slot == 0 && c.e[0] == st.edge) ++s;
        }
        return s;
    };
    return score(matches[0]) >= score(matches[1]) ? matches[0] : matches[1];
}

}  // namespace

std::map<int, std::pair<EdgeEnd, EdgeEnd>> orientEdges(const TangleDiagram& d) {
    auto ends = edgeEndpoints(d);
    std::map<int, std::pair<EdgeEnd, EdgeEnd>> out;
    for (auto& comp : d.components) {
        if (comp.orient == 0 || comp.edges.empty()) continue;
        std::vector<int> order = comp.edges;
        if (comp.orient < 0) std::reverse(order.begin(), order.end());
        auto walk = walkDeclared(d, ends, order);
        if (walk.empty())
            throw std::runtime_error("component " + comp.name +
                                     " edge list is not a strand traversal");
        for (auto& st : walk) out[st.edge] = {st.tail, st.head};
    }
    return out;
}

// ---------------------------------------------------------------- validate

std::vector<std::string> validate(const TangleDiagram& d) {
    std::vector<std::string> bad;
    if (d.n < 0) bad.push_back("negative n");
    if (static_cast<int>(d.boundary.size()) != 2 * d.n)
        bad.push_back("boundary must list exactly 2n half-edges");
    {
        // an edge may span two boundary positions (crossingless arc) but not more
        std::map<int, int> uses;
        for (int e : d.boundary)
            if (++uses[e] > 2)
                bad.push_back("boundary lists edge " + std::to_string(e) + " more than twice");
    }
    {
        std::set<std::string> ids;
        for (auto& c : d.crossings) {
            if (c.id.empty()) bad.push_back("crossing with empty id");
            if (!ids.insert(c.id).second) bad.push_back("duplicate crossing id " + c.id);
        }
    }
    std::map<int, int> count;
    for (auto& c : d.crossings)
        for (int e : c.e) ++count[e];
    for (int e : d.boundary) ++count[e];
    for (auto& [e, n] : count)
        if (n != 2) bad.push_back("edge " + std::to_string(e) + " used " + std::to_string(n) +
                                  " times");
    if (!bad.empty()) return bad;  // structural failures block tracing

    std::vector<std::vector<int>> traced;
    try {
        traced = traceComponents(d);
    } catch (const std::exception& ex) {
        bad.push_back(ex.what());
        return bad;
    }
    if (!d.components.empty()) {
        std::set<std::set<int>> tracedSets;
        for (auto& c : traced) tracedSets.insert(std::set<int>(c.begin(), c.end()));
        std::set<std::set<int>> declaredSets;
        std::set<int> declaredEdges;
        for (auto& c : d.components) {
            if (c.edges.empty()) continue;  // crossingless loop component
            declaredSets.insert(std::set<int>(c.edges.begin(), c.edges.end()));
            for (int e : c.edges) declaredEdges.insert(e);
        }
        if (declaredSets != tracedSets)
            bad.push_back("declared components do not match strand tracing");
        auto ends = edgeEndpoints(d);
        for (auto& c : d.components) {
            if (c.orient == 0 || c.edges.empty()) continue;
            std::vector<int> order = c.edges;
            if (c.orient < 0) std::reverse(order.begin(), order.end());
            if (walkDeclared(d, ends, order).empty())
                bad.push_back("component " + c.name + " edges are not in traversal order");
        }
    }
    // oriented classical crossings start at the incoming under-strand
    bool fullyOriented = !d.components.empty();
    for (auto& c : d.components)
        if (c.orient == 0 && !c.edges.empty()) fullyOriented = false;
    if (fullyOriented && bad.empty()) {
        try {
            auto dirs = orientEdges(d);
            for (size_t ci = 0; ci < d.crossings.size(); ++ci) {
                const Crossing& c = d.crossings[ci];
                if (!c.isClassical()) continue;
                EdgeEnd s0{static_cast<int>(ci), 0};
                auto it = dirs.find(c.e[0]);
                if (it != dirs.end() && !(it->second.second == s0))
                    bad.push_back("crossing " + c.id +
                                  " slot 1 is not the incoming under-strand");
            }
        } catch (const std::exception& ex) {
            bad.push_back(ex.what());
        }
    }
    return bad;
}

// -------------------------------------------------------------------- signs

namespace {

bool fullyOriented(const TangleDiagram& d) {
    if (d.components.empty()) return false;
    for (auto& c : d.components)
        if (c.orient == 0 && !c.edges.empty()) return false;
    return true;
}

}  // namespace

int crossingSign(const TangleDiagram& d, int crossingIndex) {
    const Crossing& c = d.crossings.at(crossingIndex);
    if (!c.isClassical()) throw std::runtime_error("virtual crossings have no sign");
    if (fullyOriented(d)) {
        auto dirs = orientEdges(d);
        int underIn = -1, overIn = -1;
        for (int s : {0, 2}) {
            EdgeEnd here{crossingIndex, s};
            if (dirs.at(c.e[s]).second == here) underIn = s;
        }
        for (int s : {1, 3}) {
            EdgeEnd here{crossingIndex, s};
            if (dirs.at(c.e[s]).second == here) overIn = s;
        }
        if (underIn < 0 || overIn < 0)
            throw std::runtime_error("inconsistent orientation at crossing " + c.id);
        return (overIn - underIn + 4) % 4 == 3 ? 1 : -1;
    }
    if (c.kind == CrossingKind::Positive) return 1;
    if (c.kind == CrossingKind::Negative) return -1;
    throw std::runtime_error("crossing " + c.id + " sign undetermined (no orientation)");
}

int writhe(const TangleDiagram& d) {
    int w = 0;
    std::map<int, std::pair<EdgeEnd, EdgeEnd>> dirs;
    bool oriented = fullyOriented(d);
    if (oriented) dirs = orientEdges(d);
    for (size_t ci = 0; ci < d.crossings.size(); ++ci) {
        const Crossing& c = d.crossings[ci];
        if (!c.isClassical()) continue;
        if (oriented) {
            int underIn = -1, overIn = -1;
            for (int s : {0, 2})
                if (dirs.at(c.e[s]).second == EdgeEnd{static_cast<int>(ci), s}) underIn = s;
            for (int s : {1, 3})
                if (dirs.at(c.e[s]).second == EdgeEnd{static_cast<int>(ci), s}) overIn = s;
            if (underIn < 0 || overIn < 0)
                throw std::runtime_error("inconsistent orientation at crossing " + c.id);
            w += (overIn - underIn + 4) % 4 == 3 ? 1 : -1;
        } else {
            w += crossingSign(d, static_cast<int>(ci));
        }
    }
    return w;
}

// ---------------------------------------------------------------- matchings

bool Matching::noncrossing() const {
    for (size_t i = 0; i < pairs.size(); ++i)
        for (size_t j = i + 1; j < pairs.size(); ++j) {
            auto [a, b] = pairs[i];
            auto [c, e] = pairs[j];
            if ((a < c && c < b && b < e) || (c < a && a < e && e < b)) return false;
        }
    return true;
}

void Matching::canonicalize() {
    for (auto& [a, b] : pairs)
        if (a > b) std::swap(a, b);
    std::sort(pairs.begin(), pairs.end());
}

std::string Matching::str() const {
    std::ostringstream os;
    os << "m ";
    for (auto& [a, b] : pairs) os << "(" << a << " " << b << ")";
    return os.str();
}

Matching Matching::parse(const std::string& text) {
    Matching m;
    size_t i = 0;
    auto skipWs = [&] { while (i < text.size() && isspace((unsigned char)text[i])) ++i; };
    skipWs();
    if (text.compare(i, 1, "m") == 0 &&
        (i + 1 == text.size() || isspace((unsigned char)text[i + 1]) || text[i + 1] == '('))
        ++i;
    skipWs();
    while (i < text.size()) {
        if (text[i] != '(') throw std::runtime_error("matching: expected '('");
        ++i;
        int vals[2];
        for (int k = 0; k < 2; ++k) {
            skipWs();
            size_t used = 0;
            vals[k] = std::stoi(text.substr(i), &used);
            i += used;
        }
        skipWs();
        if (i >= text.size() || text[i] != ')') throw std::runtime_error("matching: expected ')'");
        ++i;
        m.pairs.push_back({vals[0], vals[1]});
        skipWs();
    }
    m.canonicalize();
    return m;
}

namespace {

void genMatchings(std::vector<int>& free, Matching& cur, std::vector<Matching>& out) {
    if (free.empty()) {
        Matching m = cur;
        m.canonicalize();
        out.push_back(std::move(m));
        return;
    }
    int a = free[0];
    for (size_t i = 1; i < free.size(); ++i) {
        int b = free[i];
        std::vector<int> rest;
        for (size_t j = 1; j < free.size(); ++j)
            if (j != i) rest.push_back(free[j]);
        cur.pairs.push_back({a, b});
        genMatchings(rest, cur, out);
        cur.pairs.pop_back();
    }
}

}  // namespace

std::vector<Matching> allMatchings(int n) {
    std::vector<int> free;
    for (int i = 1; i <= 2 * n; ++i) free.push_back(i);
    Matching cur;
    std::vector<Matching> out;
    genMatchings(free, cur, out);
    std::sort(out.begin(), out.end(),
              [](const Matching& a, const Matching& b) { return a.pairs < b.pairs; });
    return out;
}

std::vector<Matching> catalanMatchings(int n) {
    std::vector<Matching> out;
    for (auto& m : allMatchings(n))
        if (m.noncrossing()) out.push_back(m);
    return out;
}

Matching numeratorMatching(int n) {
    Matching m;
    for (int k = 1; k <= n; ++k) m.pairs.push_back({k, 2 * n + 1 - k});
    m.canonicalize();
    return m;
}

Matching denominatorMatching(int n) {
    Matching m;
    for (int k = 1; k <= n; ++k) m.pairs.push_back({2 * k - 1, 2 * k});
    m.canonicalize();
    return m;
}

// --------------------------------------------------------- glue and rebuild

namespace {

struct UnionFind {
    std::map<int, int> parent;
    int find(int x) {
        if (!parent.count(x)) parent[x] = x;
        return parent[x] == x ? x : parent[x] = find(parent[x]);
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (a > b) std::swap(a, b);
        parent[b] = a;  // keep the smaller id as representative
    }
};

// Stable textual key of an edge end, using crossing ids (survives reindexing).
std::string endKey(const std::vector<Crossing>& crossings, const EdgeEnd& e) {
    if (e.isBoundary()) return "b:" + std::to_string(e.slot);
    return "c:" + crossings[e.crossing].id + ":" + std::to_string(e.slot);
}

// Per-edge metadata carried through gluing.
struct EdgeMeta {
    std::string comp;                                     // originating component name
    std::optional<int> color;                             // originating color
    bool hasDir = false;
    std::string tailKey, headKey;                         // stable end keys
};

struct GlueJoint {
    int edgeA, edgeB;
    std::string endKeyA, endKeyB;  // the endpoints being identified
};

// Assemble a diagram from raw parts: identify edges along joints, rewrite the
// crossings and boundary, recompute the component partition, and propagate
// names / colors / orientations where they stay consistent.
TangleDiagram finishGlue(std::vector<Crossing> crossings, int n, std::vector<int> boundary,
                         const std::vector<GlueJoint>& joints,
                         std::map<int, EdgeMeta> meta,  // by pre-merge edge id
                         int extraFreeLoops, const std::vector<std::string>& loopComps,
                         std::vector<std::string>* warnings) {
    auto warn = [&](const std::string& w) {
        if (warnings) warnings->push_back(w);
    };
    UnionFind uf;
    for (auto& c : crossings)
        for (int e : c.e) uf.find(e);
    for (int e : boundary) uf.find(e);
    for (auto& j : joints) uf.unite(j.edgeA, j.edgeB);

    // orientation compatibility across every joint
    bool keepDirs = true;
    for (auto& [e, m] : meta)
        if (!m.hasDir && !m.comp.empty()) keepDirs = false;
    for (auto& j : joints) {
        if (!keepDirs) break;
        auto a = meta.find(j.edgeA);
        auto b = meta.find(j.edgeB);
        if (a == meta.end() || b == meta.end() || !a->second.hasDir || !b->second.hasDir) {
            keepDirs = false;
            break;
        }
        bool aArrives = a->second.headKey == j.endKeyA;
        bool bArrives = b->second.headKey == j.endKeyB;
        bool aLeaves = a->second.tailKey == j.endKeyA;
        bool bLeaves = b->second.tailKey == j.endKeyB;
        if (!((aArrives && bLeaves) || (aLeaves && bArrives))) {
            keepDirs = false;
            warn("orientations incompatible with the gluing; orientation data dropped");
        }
    }

    // rewrite ids
    for (auto& c : crossings)
        for (int& e : c.e) e = uf.find(e);
    for (int& e : boundary) e = uf.find(e);

    // group class members
    std::map<int, std::vector<int>> members;
    for (auto& [e, p] : uf.parent) members[uf.find(e)].push_back(e);

    TangleDiagram r;
    r.n = n;
    r.crossings = std::move(crossings);
    r.boundary = std::move(boundary);

    std::set<int> usedReps;
    for (auto& c : r.crossings)
        for (int e : c.e) usedReps.insert(e);
    for (int e : r.boundary) usedReps.insert(e);

    // classes absent from the final structure are crossingless loops
    std::vector<std::set<std::string>> freeLoopNames;
    for (auto& [rep, mem] : members) {
        if (usedReps.count(rep)) continue;
        std::set<std::string> names;
        for (int e : mem) {
            auto it = meta.find(e);
            if (it != meta.end() && !it->second.comp.empty()) names.insert(it->second.comp);
        }
        freeLoopNames.push_back(std::move(names));
    }

    // ends consumed by joints, per class
    std::set<std::pair<int, std::string>> consumed;
    for (auto& j : joints) {
        consumed.insert({j.edgeA, j.endKeyA});
        consumed.insert({j.edgeB, j.endKeyB});
    }

    bool anyMeta = !meta.empty();
    auto ends = edgeEndpoints(r);
    std::vector<std::vector<WalkStep>> walks;
    {
        std::set<int> seen;
        for (size_t p = 0; p < r.boundary.size(); ++p) {
            int e = r.boundary[p];
            if (seen.count(e)) continue;
            auto w = walkStrand(r, ends, e, EdgeEnd{-1, static_cast<int>(p + 1)});
            for (auto& st : w) seen.insert(st.edge);
            walks.push_back(std::move(w));
        }
        for (auto& [e, ee] : ends) {
            if (seen.count(e)) continue;
            auto w = walkStrand(r, ends, e, ee.ends[0]);
            for (auto& st : w) seen.insert(st.edge);
            walks.push_back(std::move(w));
        }
    }

    int anon = 0;
    for (auto& w : walks) {
        Component comp;
        for (auto& st : w) comp.edges.push_back(st.edge);
        std::set<std::string> names;
        std::set<int> colors;
        bool colorEverywhere = anyMeta;
        for (auto& st : w)
            for (int m : members[st.edge]) {
                auto it = meta.find(m);
                if (it == meta.end() || it->second.comp.empty()) continue;
                names.insert(it->second.comp);
                if (it->second.color)
                    colors.insert(*it->second.color);
                else
                    colorEverywhere = false;
            }
        if (names.empty()) {
            comp.name = "k" + std::to_string(++anon);
        } else {
            std::ostringstream nm;
            for (auto& s : names) nm << (nm.tellp() > 0 ? "+" : "") << s;
            comp.name = nm.str();
        }
        if (colorEverywhere && colors.size() == 1)
            comp.color = *colors.begin();
        else if (colors.size() > 1)
            warn("merged components with different colors; color dropped for " + comp.name);

        if (keepDirs && anyMeta) {
            // find the walk direction of some edge with a surviving directed end
            int flag = 0;
            for (auto& st : w) {
                std::string tailK = endKey(r.crossings, st.tail);
                std::string headK = endKey(r.crossings, st.head);
                for (int m : members[st.edge]) {
                    auto it = meta.find(m);
                    if (it == meta.end() || !it->second.hasDir) continue;
                    const auto& md = it->second;
                    if (!consumed.count({m, md.headKey})) {
                        if (md.headKey == headK) flag = 1;
                        if (md.headKey == tailK) flag = -1;
                    }
                    if (!flag && !consumed.count({m, md.tailKey})) {
                        if (md.tailKey == tailK) flag = 1;
                        if (md.tailKey == headK) flag = -1;
                    }
                    if (flag) break;
                }
                if (flag) break;
            }
            comp.orient = flag;
            if (!flag) warn("could not transport orientation to component " + comp.name);
        }
        r.components.push_back(std::move(comp));
    }

    for (auto& names : freeLoopNames) {
        Component comp;
        if (names.empty()) {
            comp.name = "k" + std::to_string(++anon);
        } else {
            std::ostringstream nm;
            for (auto& s : names) nm << (nm.tellp() > 0 ? "+" : "") << s;
            comp.name = nm.str();
        }
        r.components.push_back(std::move(comp));
    }
    for (int i = 0; i < extraFreeLoops; ++i) {
        Component comp;
        comp.name = i < static_cast<int>(loopComps.size()) ? loopComps[i]
                                                           : "k" + std::to_string(++anon);
        r.components.push_back(std::move(comp));
    }

    // normalize classical crossings so slot 0 is the incoming under-strand
    if (keepDirs && anyMeta && fullyOriented(r)) {
        auto dirs = orientEdges(r);
        for (size_t ci = 0; ci < r.crossings.size(); ++ci) {
            Crossing& c = r.crossings[ci];
            if (!c.isClassical()) continue;
            EdgeEnd s0{static_cast<int>(ci), 0};
            if (dirs.at(c.e[0]).second == s0) continue;
            std::rotate(c.e.begin(), c.e.begin() + 2, c.e.end());
        }
    }
    return r;
}

// Build edge metadata (component name, color, direction keys) for a diagram.
std::map<int, EdgeMeta> collectMeta(const TangleDiagram& d, int edgeOffset,
                                    const std::string& namePrefix) {
    std::map<int, EdgeMeta> meta;
    std::map<int, std::pair<EdgeEnd, EdgeEnd>> dirs;
    bool oriented = fullyOriented(d);
    if (oriented) dirs = orientEdges(d);
    for (auto& comp : d.components) {
        for (int e : comp.edges) {
            EdgeMeta m;
            m.comp = namePrefix + comp.name;
            m.color = comp.color;
            if (oriented) {
                auto it = dirs.find(e);
                if (it != dirs.end()) {
                    m.hasDir = true;
                    // boundary keys stay position-based; shift handled by caller
                    m.tailKey = endKey(d.crossings, it->second.first);
                    m.headKey = endKey(d.crossings, it->second.second);
                }
            }
            meta[e + edgeOffset] = std::move(m);
        }
    }
    return meta;
}

}  // namespace

// ------------------------------------------------------------------- close

TangleDiagram closeTangle(const TangleDiagram& t, const Matching& m,
                          std::vector<std::string>* warnings) {
    if (static_cast<int>(m.pairs.size()) != t.n)
        throw std::runtime_error("matching size does not fit the tangle");
    {
        std::set<int> covered;
        for (auto& [a, b] : m.pairs) {
            covered.insert(a);
            covered.insert(b);
        }
        for (int p = 1; p <= 2 * t.n; ++p)
            if (!covered.count(p)) throw std::runtime_error("matching misses position " +
                                                            std::to_string(p));
    }

    std::vector<Crossing> crossings = t.crossings;
    auto meta = collectMeta(t, 0, "");
    std::vector<GlueJoint> joints;
    int nextEdge = t.maxEdgeId() + 1;
    int nextVirt = 0;
    auto freshVirtId = [&] {
        std::string id;
        do {
            id = "g" + std::to_string(++nextVirt);
        } while (t.crossingById(id));
        return id;
    };

    int nPts = 2 * t.n;
    auto pointOf = [&](int p) {
        double th = 2 * M_PI * (p - 1) / nPts + (p - 1) * (p - 1) * 1e-4;
        return std::pair<double, double>{std::cos(th), std::sin(th)};
    };
    auto boundaryEdge = [&](int p) { return t.boundary[p - 1]; };
    auto boundaryKey = [&](int p) { return "b:" + std::to_string(p); };

    struct Hit {
        double s;     // parameter along this chord
        int other;    // index of the other chord
        double x, y;  // intersection point
    };
    int nc = static_cast<int>(m.pairs.size());
    std::vector<std::vector<Hit>> hits(nc);
    for (int i = 0; i < nc; ++i)
        for (int j = i + 1; j < nc; ++j) {
            auto [a, b] = m.pairs[i];
            auto [c, e] = m.pairs[j];
            bool inter = (a < c && c < b && b < e) || (c < a && a < e && e < b);
            if (!inter) continue;
            auto p1 = pointOf(a), p2 = pointOf(b), p3 = pointOf(c), p4 = pointOf(e);
            double d1x = p2.first - p1.first, d1y = p2.second - p1.second;
            double d2x = p4.first - p3.first, d2y = p4.second - p3.second;
            double den = d1x * d2y - d1y * d2x;
            double s = ((p3.first - p1.first) * d2y - (p3.second - p1.second) * d2x) / den;
            double u = ((p3.first - p1.first) * d1y - (p3.second - p1.second) * d1x) / den;
            double ix = p1.first + s * d1x, iy = p1.second + s * d1y;
            hits[i].push_back({s, j, ix, iy});
            hits[j].push_back({u, i, ix, iy});
        }

    // segment edge ids per chord: seg[i][k] for k in 0..#hits
    std::vector<std::vector<int>> seg(nc);
    for (int i = 0; i < nc; ++i) {
        std::sort(hits[i].begin(), hits[i].end(),
                  [](const Hit& a, const Hit& b) { return a.s < b.s; });
        if (hits[i].empty()) {
            // direct identification of the two tangle edges
            auto [a, b] = m.pairs[i];
            joints.push_back({boundaryEdge(a), boundaryEdge(b), boundaryKey(a), boundaryKey(b)});
            continue;
        }
        seg[i].resize(hits[i].size() + 1);
        for (auto& s : seg[i]) s = nextEdge++;
        auto [a, b] = m.pairs[i];
        for (int sid : seg[i]) meta[sid] = EdgeMeta{};
        std::string loKey = "j:" + std::to_string(i) + ":lo";
        std::string hiKey = "j:" + std::to_string(i) + ":hi";
        joints.push_back({boundaryEdge(a), seg[i].front(), boundaryKey(a), loKey});
        joints.push_back({seg[i].back(), boundaryEdge(b), hiKey, boundaryKey(b)});
    }

    // one virtual crossing per intersection
    std::map<std::pair<int, int>, std::string> virtId;
    for (int i = 0; i < nc; ++i)
        for (size_t k = 0; k < hits[i].size(); ++k) {
            int j = hits[i][k].other;
            if (j < i) continue;
            virtId[{i, j}] = freshVirtId();
        }
    for (auto& [key, id] : virtId) {
        auto [i, j] = key;
        // locate this intersection along each chord
        auto find = [&](int chord, int other) {
            for (size_t k = 0; k < hits[chord].size(); ++k)
                if (hits[chord][k].other == other) return static_cast<int>(k);
            throw std::logic_error("intersection bookkeeping");
        };
        int ki = find(i, j), kj = find(j, i);
        double ix = hits[i][ki].x, iy = hits[i][ki].y;
        // four incident segments with outgoing directions
        struct Inc {
            double ang;
            int edge;
        };
        std::vector<Inc> inc;
        auto addInc = [&](int chord, int k, bool towardStart) {
            auto [a, b] = m.pairs[chord];
            double tx, ty;
            if (towardStart) {
                auto prev = k == 0 ? pointOf(a)
                                   : std::pair<double, double>{hits[chord][k - 1].x,
                                                               hits[chord][k - 1].y};
                tx = prev.first - ix, ty = prev.second - iy;
            } else {
                auto nxt = k + 1 == static_cast<int>(hits[chord].size())
                               ? pointOf(b)
                               : std::pair<double, double>{hits[chord][k + 1].x,
                                                           hits[chord][k + 1].y};
                tx = nxt.first - ix, ty = nxt.second - iy;
            }
            inc.push_back({std::atan2(ty, tx), seg[chord][towardStart ? k : k + 1]});
        };
        addInc(i, ki, true);
        addInc(i, ki, false);
        addInc(j, kj, true);
        addInc(j, kj, false);
        std::sort(inc.begin(), inc.end(), [](const Inc& a, const Inc& b) { return a.ang < b.ang; });
        Crossing c;
        c.id = id;
        c.kind = CrossingKind::Virtual;
        for (int s = 0; s < 4; ++s) c.e[s] = inc[s].edge;
        crossings.push_back(c);
    }

    // fill direction keys for chord segments now that virtual crossings exist
    for (int i = 0; i < nc; ++i) {
        if (hits[i].empty()) continue;
        auto [a, b] = m.pairs[i];
        auto ita = meta.find(boundaryEdge(a));
        if (ita == meta.end() || !ita->second.hasDir) {
            for (int e : seg[i]) meta[e].hasDir = false;
            continue;
        }
        bool forward = ita->second.headKey == boundaryKey(a);  // flow enters chord at a
        // ends of each segment along the chord: between consecutive crossings
        auto endAt = [&](int k) {  // key of the crossing end between seg k-1 and seg k
            int other = hits[i][k - 1].other;
            std::string id = virtId.count({std::min(i, other), std::max(i, other)})
                                 ? virtId[{std::min(i, other), std::max(i, other)}]
                                 : std::string();
            // find the slot of this segment at that crossing
            for (auto& c : crossings)
                if (c.id == id)
                    for (int s = 0; s < 4; ++s)
                        if (c.e[s] == seg[i][k]) return "c:" + id + ":" + std::to_string(s);
            throw std::logic_error("segment slot lookup");
        };
        auto startAt = [&](int k) {  // key of the crossing end between seg k and seg k+1
            int other = hits[i][k].other;
            std::string id = virtId[{std::min(i, other), std::max(i, other)}];
            for (auto& c : crossings)
                if (c.id == id)
                    for (int s = 0; s < 4; ++s)
                        if (c.e[s] == seg[i][k]) return "c:" + id + ":" + std::to_string(s);
            throw std::logic_error("segment slot lookup");
        };
        int segs = static_cast<int>(seg[i].size());
        for (int k = 0; k < segs; ++k) {
            std::string lo = k == 0 ? "j:" + std::to_string(i) + ":lo" : endAt(k);
            std::string hi = k == segs - 1 ? "j:" + std::to_string(i) + ":hi" : startAt(k);
            EdgeMeta& sm = meta[seg[i][k]];
            sm.hasDir = true;
            if (forward) {
                sm.tailKey = lo;
                sm.headKey = hi;
            } else {
                sm.tailKey = hi;
                sm.headKey = lo;
            }
        }
    }

    return finishGlue(std::move(crossings), 0, {}, joints, std::move(meta), 0, {}, warnings);
}

// ----------------------------------------------------------------- product

TangleDiagram tangleProduct(const TangleDiagram& s, const TangleDiagram& t,
                            std::vector<std::string>* warnings) {
    if (s.n != t.n || s.n == 0) throw std::runtime_error("tangle product needs equal n >= 1");
    int n = s.n;
    int off = s.maxEdgeId() + 1;

    std::vector<Crossing> crossings = s.crossings;
    std::set<std::string> usedIds;
    for (auto& c : crossings) usedIds.insert(c.id);
    std::map<std::string, std::string> tIdMap;
    for (auto& c : t.crossings) {
        Crossing cc = c;
        for (int& e : cc.e) e += off;
        std::string base = cc.id;
        std::string id = base;
        int suffix = 0;
        while (usedIds.count(id)) id = base + "'" + (suffix ? std::to_string(suffix) : ""), ++suffix;
        tIdMap[cc.id] = id;
        cc.id = id;
        usedIds.insert(id);
        crossings.push_back(std::move(cc));
    }

    std::vector<int> boundary;
    for (int p = 1; p <= n; ++p) boundary.push_back(s.boundary[p - 1]);
    for (int p = n + 1; p <= 2 * n; ++p) boundary.push_back(t.boundary[p - 1] + off);

    auto meta = collectMeta(s, 0, "");
    auto metaT = collectMeta(t, off, "");
    // remap t's direction keys: crossing ids may change; t's left boundary
    // points are consumed, its right boundary keys keep their positions
    for (auto& [e, md] : metaT) {
        auto remap = [&](std::string& key) {
            if (key.compare(0, 2, "c:") == 0) {
                size_t colon = key.rfind(':');
                std::string cid = key.substr(2, colon - 2);
                key = "c:" + tIdMap.at(cid) + key.substr(colon);
            }
        };
        if (md.hasDir) {
            remap(md.tailKey);
            remap(md.headKey);
        }
        meta[e] = md;
    }

    std::vector<GlueJoint> joints;
    for (int j = 1; j <= n; ++j) {
        int sp = n + j;          // s's right point
        int tp = n + 1 - j;      // t's left point, mirrored
        joints.push_back({s.boundary[sp - 1], t.boundary[tp - 1] + off,
                          "b:" + std::to_string(sp), "b:" + std::to_string(tp)});
    }

    return finishGlue(std::move(crossings), n, std::move(boundary), joints, std::move(meta), 0, {},
                      warnings);
}

// ------------------------------------------------------------------- faces

namespace {

struct Dart {
    int edge;
    EdgeEnd tail;
    bool operator<(const Dart& o) const {
        if (edge != o.edge) return edge < o.edge;
        if (tail.crossing != o.tail.crossing) return tail.crossing < o.tail.crossing;
        return tail.slot < o.tail.slot;
    }
};

std::vector<std::vector<Dart>> faceDarts(const TangleDiagram& d) {
    auto ends = edgeEndpoints(d);
    std::set<Dart> seen;
    std::vector<std::vector<Dart>> faces;
    std::vector<Dart> all;
    for (auto& [e, ee] : ends) {
        all.push_back({e, ee.ends[0]});
        all.push_back({e, ee.ends[1]});
    }
    int nPts = static_cast<int>(d.boundary.size());
    for (auto& start : all) {
        if (seen.count(start)) continue;
        std::vector<Dart> face;
        Dart cur = start;
        while (true) {
            seen.insert(cur);
            face.push_back(cur);
            EdgeEnd head = otherEnd(ends.at(cur.edge), cur.tail);
            Dart next;
            if (head.isBoundary()) {
                int p = head.slot % nPts + 1;  // predecessor in the outer rotation
                next = {d.boundary[p - 1], EdgeEnd{-1, p}};
            } else {
                int s = (head.slot + 3) % 4;
                next = {d.crossings[head.crossing].e[s], EdgeEnd{head.crossing, s}};
            }
            if (next.edge == start.edge && next.tail == start.tail) break;
            cur = next;
            if (face.size() > 2 * all.size()) throw std::logic_error("face trace runaway");
        }
        faces.push_back(std::move(face));
    }
    return faces;
}

}  // namespace

std::vector<std::vector<std::pair<int, int>>> diagramFaces(const TangleDiagram& d) {
    auto ends = edgeEndpoints(d);
    std::vector<std::vector<std::pair<int, int>>> out;
    for (auto& f : faceDarts(d)) {
        std::vector<std::pair<int, int>> face;
        for (auto& dart : f)
            face.push_back({dart.edge, dart.tail == ends.at(dart.edge).ends[0] ? 0 : 1});
        out.push_back(std::move(face));
    }
    return out;
}

bool isPlanar(const TangleDiagram& d) {
    auto ends = edgeEndpoints(d);
    long V = static_cast<long>(d.crossings.size()) + (d.n > 0 ? 1 : 0);
    long E = static_cast<long>(ends.size());
    long F = static_cast<long>(faceDarts(d).size());
    // connected components of the underlying 4-valent map
    UnionFind uf;
    auto node = [&](const EdgeEnd& e) { return e.isBoundary() ? -1 : e.crossing; };
    std::set<int> nodes;
    for (auto& [e, ee] : ends) {
        int a = node(ee.ends[0]), b = node(ee.ends[1]);
        nodes.insert(a);
        nodes.insert(b);
        uf.unite(a + 2, b + 2);  // shift to keep ids positive-ish
    }
    std::set<int> reps;
    for (int v : nodes) reps.insert(uf.find(v + 2));
    long C = static_cast<long>(reps.size());
    if (E == 0) return true;
    // Each connected component of the map is traced on its own sphere, so
    // face tracing yields one outer face per component: V - E + F = 2C.
    return V - E + F == 2 * C;
}

int closedComponentCount(const TangleDiagram& t, const Matching& m) {
    auto comps = traceComponents(t);
    // arcs are components whose edges touch the boundary
    std::map<int, int> arcOfBoundaryEdge;  // edge -> arc index
    std::vector<int> arcIdx;
    int closed = 0;
    for (size_t i = 0; i < comps.size(); ++i) {
        bool open = false;
        for (int e : comps[i])
            for (int be : t.boundary)
                if (e == be) open = true;
        if (!open) {
            ++closed;
            continue;
        }
        int idx = static_cast<int>(arcIdx.size());
        arcIdx.push_back(static_cast<int>(i));
        for (int e : comps[i]) arcOfBoundaryEdge[e] = idx;
    }
    for (auto& c : t.components)
        if (c.edges.empty()) ++closed;  // declared crossingless loops
    // arcs + chords form disjoint cycles; count them
    UnionFind uf;
    for (auto& [a, b] : m.pairs) {
        int ea = t.boundary[a - 1], eb = t.boundary[b - 1];
        uf.unite(arcOfBoundaryEdge.at(ea), arcOfBoundaryEdge.at(eb));
    }
    std::set<int> cycles;
    for (size_t i = 0; i < arcIdx.size(); ++i) cycles.insert(uf.find(static_cast<int>(i)));
    return closed + static_cast<int>(cycles.size());
}

// ------------------------------------------------------------------- moves

namespace {

std::string freshCrossingId(const TangleDiagram& d, const std::string& base) {
    if (!d.crossingById(base)) return base;
    int i = 1;
    while (d.crossingById(base + std::to_string(i))) ++i;
    return base + std::to_string(i);
}

// Replace the given occurrence (end) of edge `oldE` with `newE`.
void patchEnd(TangleDiagram& d, const EdgeEnd& at, int oldE, int newE) {
    if (at.isBoundary()) {
        if (d.boundary[at.slot - 1] != oldE) throw std::logic_error("patchEnd boundary");
        d.boundary[at.slot - 1] = newE;
    } else {
        if (d.crossings[at.crossing].e[at.slot] != oldE) throw std::logic_error("patchEnd slot");
        d.crossings[at.crossing].e[at.slot] = newE;
    }
}

// Recompute the component list of a surgered diagram, transporting metadata
// from the original by shared edges (plus explicit direction hints for new
// edges, keyed by stable end keys).
TangleDiagram rebuildComponents(const TangleDiagram& before, TangleDiagram after,
                                const std::map<int, std::pair<std::string, std::string>>& hints) {
    // metadata of old edges
    std::map<int, EdgeMeta> meta;
    std::map<int, std::pair<EdgeEnd, EdgeEnd>> dirs;
    bool oriented = fullyOriented(before) && !before.components.empty();
    if (oriented) dirs = orientEdges(before);
    for (auto& comp : before.components)
        for (int e : comp.edges) {
            EdgeMeta m;
            m.comp = comp.name;
            m.color = comp.color;
            if (oriented) {
                auto it = dirs.find(e);
                if (it != dirs.end()) {
                    m.hasDir = true;
                    m.tailKey = endKey(before.crossings, it->second.first);
                    m.headKey = endKey(before.crossings, it->second.second);
                }
            }
            meta[e] = std::move(m);
        }

    auto ends = edgeEndpoints(after);
    std::vector<std::vector<WalkStep>> walks;
    {
        std::set<int> seen;
        for (size_t p = 0; p < after.boundary.size(); ++p) {
            int e = after.boundary[p];
            if (seen.count(e)) continue;
            auto w = walkStrand(after, ends, e, EdgeEnd{-1, static_cast<int>(p + 1)});
            for (auto& st : w) seen.insert(st.edge);
            walks.push_back(std::move(w));
        }
        for (auto& [e, ee] : ends) {
            if (seen.count(e)) continue;
            auto w = walkStrand(after, ends, e, ee.ends[0]);
            for (auto& st : w) seen.insert(st.edge);
            walks.push_back(std::move(w));
        }
    }
    std::vector<Component> oldLoops;
    for (auto& c : before.components)
        if (c.edges.empty()) oldLoops.push_back(c);

    after.components.clear();
    int anon = 0;
    bool keepMeta = !before.components.empty();
    for (auto& w : walks) {
        Component comp;
        for (auto& st : w) comp.edges.push_back(st.edge);
        if (!keepMeta) {
            comp.name = "k" + std::to_string(++anon);
            after.components.push_back(std::move(comp));
            continue;
        }
        std::set<std::string> names;
        std::set<int> colors;
        bool colorEverywhere = true;
        int flag = 0;
        for (auto& st : w) {
            auto it = meta.find(st.edge);
            std::string tailK = endKey(after.crossings, st.tail);
            std::string headK = endKey(after.crossings, st.head);
            if (it != meta.end()) {
                names.insert(it->second.comp);
                if (it->second.color)
                    colors.insert(*it->second.color);
                else
                    colorEverywhere = false;
                if (!flag && it->second.hasDir) {
                    if (it->second.headKey == headK) flag = 1;
                    else if (it->second.headKey == tailK) flag = -1;
                    else if (it->second.tailKey == tailK) flag = 1;
                    else if (it->second.tailKey == headK) flag = -1;
                }
            }
            auto hit = hints.find(st.edge);
            if (!flag && hit != hints.end()) {
                if (hit->second.second == headK) flag = 1;
                else if (hit->second.second == tailK) flag = -1;
            }
        }
        comp.name = names.empty() ? "k" + std::to_string(++anon)
                                  : [&] {
                                        std::ostringstream nm;
                                        for (auto& s : names)
                                            nm << (nm.tellp() > 0 ? "+" : "") << s;
                                        return nm.str();
                                    }();
        if (colorEverywhere && colors.size() == 1) comp.color = *colors.begin();
        if (oriented) comp.orient = flag;
        after.components.push_back(std::move(comp));
    }
    for (auto& c : oldLoops) after.components.push_back(c);

    // keep slot 0 as the incoming under-strand on oriented diagrams
    if (oriented && fullyOriented(after)) {
        auto adirs = orientEdges(after);
        for (size_t ci = 0; ci < after.crossings.size(); ++ci) {
            Crossing& c = after.crossings[ci];
            if (!c.isClassical()) continue;
            EdgeEnd s0{static_cast<int>(ci), 0};
            if (adirs.at(c.e[0]).second == s0) continue;
            std::rotate(c.e.begin(), c.e.begin() + 2, c.e.end());
        }
    }
    return after;
}

TangleDiagram insertKink(const TangleDiagram& d, int edge, bool positive, bool virt) {
    auto ends = edgeEndpoints(d);
    auto it = ends.find(edge);
    if (it == ends.end()) throw IllegalMoveSite("no such edge");
    TangleDiagram r = d;
    int next = d.maxEdgeId() + 1;
    int f = next++;
    int L = next++;
    EdgeEnd splitAt = it->second.ends[1];
    patchEnd(r, splitAt, edge, f);
    Crossing c;
    c.id = freshCrossingId(r, virt ? "v" : "k");
    c.kind = virt ? CrossingKind::Virtual : CrossingKind::Unsigned;
    if (positive && !virt)
        c.e = {L, L, edge, f};  // under pair {L, edge}; sign +1 for either flow
    else
        c.e = {L, f, edge, L};  // under pair {L, edge}; sign -1
    r.crossings.push_back(c);
    // direction hints: strand enters at `edge`, leaves by `f`
    std::map<int, std::pair<std::string, std::string>> hints;
    std::string cid = c.id;
    // hint only needs a head key for one new edge on the strand
    if (positive && !virt)
        hints[f] = {"c:" + cid + ":3", endKey(r.crossings, splitAt)};
    else
        hints[f] = {"c:" + cid + ":1", endKey(r.crossings, splitAt)};
    return rebuildComponents(d, std::move(r), hints);
}

TangleDiagram removeKink(const TangleDiagram& d, const std::string& cid) {
    int ci = -1;
    for (size_t i = 0; i < d.crossings.size(); ++i)
        if (d.crossings[i].id == cid) ci = static_cast<int>(i);
    if (ci < 0) throw IllegalMoveSite("no such crossing");
    const Crossing& c = d.crossings[ci];
    int loopSlot = -1;
    for (int s = 0; s < 4; ++s)
        if (c.e[s] == c.e[(s + 1) % 4]) loopSlot = s;
    if (loopSlot < 0) throw IllegalMoveSite("crossing has no kink loop");
    int L = c.e[loopSlot];
    int a = c.e[(loopSlot + 2) % 4];
    int b = c.e[(loopSlot + 3) % 4];

    TangleDiagram r = d;
    r.crossings.erase(r.crossings.begin() + ci);
    std::map<int, EdgeMeta> meta;
    // reuse the glue machinery: merge a-L-b into one edge
    // build from the surgered crossing list directly
    std::vector<GlueJoint> joints;
    joints.push_back({a, L, "c:" + cid + ":" + std::to_string((loopSlot + 2) % 4),
                      "c:" + cid + ":" + std::to_string(loopSlot)});
    joints.push_back({L, b, "c:" + cid + ":" + std::to_string((loopSlot + 1) % 4),
                      "c:" + cid + ":" + std::to_string((loopSlot + 3) % 4)});
    // metadata from the original
    std::map<int, std::pair<EdgeEnd, EdgeEnd>> dirs;
    bool oriented = fullyOriented(d) && !d.components.empty();
    if (oriented) dirs = orientEdges(d);
    for (auto& comp : d.components)
        for (int e : comp.edges) {
            EdgeMeta m;
            m.comp = comp.name;
            m.color = comp.color;
            if (oriented) {
                auto it2 = dirs.find(e);
                if (it2 != dirs.end()) {
                    m.hasDir = true;
                    m.tailKey = endKey(d.crossings, it2->second.first);
                    m.headKey = endKey(d.crossings, it2->second.second);
                }
            }
            meta[e] = std::move(m);
        }
    std::vector<std::string> loopNames;
    for (auto& comp : d.components)
        if (comp.edges.empty()) loopNames.push_back(comp.name);
    TangleDiagram out = finishGlue(r.crossings, d.n, d.boundary, joints, std::move(meta),
                                   static_cast<int>(loopNames.size()), loopNames, nullptr);
    return out;
}

// R2 / V2 insertion: slide edge e over (or under) edge f across a shared face.
TangleDiagram insertBigon(const TangleDiagram& d, int eId, int fId, bool eUnder, bool virt) {
    if (eId == fId) throw IllegalMoveSite("R2/V2 insert needs two distinct edges");
    auto ends = edgeEndpoints(d);
    if (!ends.count(eId) || !ends.count(fId)) throw IllegalMoveSite("no such edge");
    // locate a face bordered by both edges; the face walk fixes the template:
    // e is traversed B -> A and f is traversed C -> D with the face between
    const Dart* de = nullptr;
    const Dart* df = nullptr;
    auto faces = faceDarts(d);
    for (auto& face : faces) {
        de = df = nullptr;
        for (auto& dart : face) {
            if (dart.edge == eId && !de) de = &dart;
            if (dart.edge == fId && !df) df = &dart;
        }
        if (de && df) break;
    }
    if (!de || !df) throw IllegalMoveSite("edges do not share a face");
    // e keeps its head-of-walk end; B and D get spliced onto the new edges
    EdgeEnd B = de->tail;
    EdgeEnd D = otherEnd(ends.at(fId), df->tail);

    TangleDiagram r = d;
    int next = d.maxEdgeId() + 1;
    int g = next++, h = next++, e2 = next++, f2 = next++;
    patchEnd(r, B, eId, e2);
    patchEnd(r, D, fId, f2);
    Crossing c1, c2;
    c1.id = freshCrossingId(r, virt ? "w" : "r");
    c1.kind = virt ? CrossingKind::Virtual : CrossingKind::Unsigned;
    r.crossings.push_back(c1);  // reserve the id before generating the second
    c2.id = freshCrossingId(r, virt ? "w" : "r");
    c2.kind = c1.kind;
    r.crossings.pop_back();
    if (!eUnder) {
        c1.e = {h, eId, fId, g};    // under pair {h, f}: e passes over
        c2.e = {f2, e2, h, g};
    } else {
        c1.e = {eId, fId, g, h};    // rotated: under pair {e, g}
        c2.e = {e2, h, g, f2};
    }
    r.crossings.push_back(c1);
    r.crossings.push_back(c2);
    return rebuildComponents(d, std::move(r), {});
}

TangleDiagram removeBigon(const TangleDiagram& d, const std::string& id1, const std::string& id2,
                          bool virt) {
    int i1 = -1, i2 = -1;
    for (size_t i = 0; i < d.crossings.size(); ++i) {
        if (d.crossings[i].id == id1) i1 = static_cast<int>(i);
        if (d.crossings[i].id == id2) i2 = static_cast<int>(i);
    }
    if (i1 < 0 || i2 < 0 || i1 == i2) throw IllegalMoveSite("bad crossing pair");
    const Crossing &c1 = d.crossings[i1], &c2 = d.crossings[i2];
    bool v1 = c1.kind == CrossingKind::Virtual, v2 = c2.kind == CrossingKind::Virtual;
    if (v1 != virt || v2 != virt) throw IllegalMoveSite("crossing kinds do not fit the move");

    // find a bigon face [g, h] joining the two crossings
    int gE = -1, hE = -1;
    EdgeEnd g1{}, g2{}, h1{}, h2{};  // ends of g and h at c1 / c2
    for (auto& face : faceDarts(d)) {
        if (face.size() != 2) continue;
        auto ends = edgeEndpoints(d);
        EdgeEnd ta = face[0].tail, ha = otherEnd(ends.at(face[0].edge), ta);
        EdgeEnd tb = face[1].tail, hb = otherEnd(ends.at(face[1].edge), tb);
        if (ta.isBoundary() || ha.isBoundary() || tb.isBoundary() || hb.isBoundary()) continue;
        std::set<int> cs{ta.crossing, ha.crossing};
        if (cs != std::set<int>{i1, i2}) continue;
        gE = face[0].edge;
        hE = face[1].edge;
        g1 = ta.crossing == i1 ? ta : ha;
        g2 = ta.crossing == i1 ? ha : ta;
        h1 = tb.crossing == i1 ? tb : hb;
        h2 = tb.crossing == i1 ? hb : tb;
        break;
    }
    if (gE < 0) throw IllegalMoveSite("no bigon between the crossings");
    if (!virt) {
        // a strand must keep its level through both crossings
        bool gOver1 = g1.slot % 2 == 1, gOver2 = g2.slot % 2 == 1;
        bool hOver1 = h1.slot % 2 == 1, hOver2 = h2.slot % 2 == 1;
        if (gOver1 != gOver2 || hOver1 != hOver2 || gOver1 == hOver1)
            throw IllegalMoveSite("bigon is not a Reidemeister II pair");
    }
    int a = c1.e[(g1.slot + 2) % 4];  // g's strand beyond c1
    int b = c2.e[(g2.slot + 2) % 4];  // g's strand beyond c2
    int p = c1.e[(h1.slot + 2) % 4];
    int q = c2.e[(h2.slot + 2) % 4];

    auto key = [&](const EdgeEnd& e) { return endKey(d.crossings, e); };
    std::vector<GlueJoint> joints = {
        {a, gE, key(EdgeEnd{i1, (g1.slot + 2) % 4}), key(g1)},
        {gE, b, key(g2), key(EdgeEnd{i2, (g2.slot + 2) % 4})},
        {p, hE, key(EdgeEnd{i1, (h1.slot + 2) % 4}), key(h1)},
        {hE, q, key(h2), key(EdgeEnd{i2, (h2.slot + 2) % 4})},
    };

    std::vector<Crossing> crossings;
    for (size_t i = 0; i < d.crossings.size(); ++i)
        if (static_cast<int>(i) != i1 && static_cast<int>(i) != i2)
            crossings.push_back(d.crossings[i]);

    std::map<int, EdgeMeta> meta;
    std::map<int, std::pair<EdgeEnd, EdgeEnd>> dirs;
    bool oriented = fullyOriented(d) && !d.components.empty();
    if (oriented) dirs = orientEdges(d);
    for (auto& comp : d.components)
        for (int e : comp.edges) {
            EdgeMeta m;
            m.comp = comp.name;
            m.color = comp.color;
            if (oriented) {
                auto it = dirs.find(e);
                if (it != dirs.end()) {
                    m.hasDir = true;
                    m.tailKey = endKey(d.crossings, it->second.first);
                    m.headKey = endKey(d.crossings, it->second.second);
                }
            }
            meta[e] = std::move(m);
        }
    std::vector<std::string> loopNames;
    for (auto& comp : d.components)
        if (comp.edges.empty()) loopNames.push_back(comp.name);
    return finishGlue(std::move(crossings), d.n, d.boundary, joints, std::move(meta),
                      static_cast<int>(loopNames.size()), loopNames, nullptr);
}

// R3 family: slide a strand across the crossing of the other two. Also drives
// V3 (all virtual) and V4 (detour strand crosses the others virtually).
TangleDiagram applyMoveTriangle(const TangleDiagram& d, Move mv, const MoveSite& site) {
    if (site.xs.size() != 3) throw IllegalMoveSite("triangle moves need three crossings");
    int idx[3];
    for (int k = 0; k < 3; ++k) {
        idx[k] = -1;
        for (size_t i = 0; i < d.crossings.size(); ++i)
            if (d.crossings[i].id == site.xs[k]) idx[k] = static_cast<int>(i);
        if (idx[k] < 0) throw IllegalMoveSite("no such crossing");
    }
    std::set<int> want{idx[0], idx[1], idx[2]};
    if (want.size() != 3) throw IllegalMoveSite("crossings must be distinct");

    // locate the triangle face
    auto ends = edgeEndpoints(d);
    std::vector<Dart> tri;
    for (auto& face : faceDarts(d)) {
        if (face.size() != 3) continue;
        std::set<int> cs;
        bool ok = true;
        for (auto& dart : face) {
            EdgeEnd h = otherEnd(ends.at(dart.edge), dart.tail);
            if (dart.tail.isBoundary() || h.isBoundary()) ok = false;
            else {
                cs.insert(dart.tail.crossing);
                cs.insert(h.crossing);
            }
        }
        if (ok && cs == want) {
            tri = face;
            break;
        }
    }
    if (tri.empty()) throw IllegalMoveSite("crossings do not bound a triangle face");

    // strand s_k runs through the two crossings other than idx[k]; its
    // triangle edge t_k connects them
    auto pairOf = [&](int edge) {
        EdgeEnd a = ends.at(edge).ends[0], b = ends.at(edge).ends[1];
        return std::set<int>{a.crossing, b.crossing};
    };
    int t[3];  // triangle edge of strand k
    for (int k = 0; k < 3; ++k) {
        t[k] = -1;
        std::set<int> need;
        for (int j = 0; j < 3; ++j)
            if (j != k) need.insert(idx[j]);
        for (auto& dart : tri)
            if (pairOf(dart.edge) == need) t[k] = dart.edge;
        if (t[k] < 0) throw IllegalMoveSite("degenerate triangle");
    }
    // slot of strand k's triangle edge at crossing c (c != idx[k])
    auto slotAt = [&](int k, int c) {
        for (int s = 0; s < 4; ++s)
            if (d.crossings[c].e[s] == t[k]) {
                // the same id can sit in several slots; pick the slot whose
                // end is listed for this edge
                EdgeEnd cand{c, s};
                if (ends.at(t[k]).ends[0] == cand || ends.at(t[k]).ends[1] == cand) return s;
            }
        throw IllegalMoveSite("triangle bookkeeping");
    };

    // kind constraints and the moving strand
    bool classical[3];
    for (int k = 0; k < 3; ++k) classical[k] = d.crossings[idx[k]].isClassical();
    int A;  // moving strand
    if (mv == Move::R3) {
        if (!(classical[0] && classical[1] && classical[2]))
            throw IllegalMoveSite("R3 needs three classical crossings");
        // level order: at crossing idx[k], strand i is over iff its triangle
        // edge sits in the over pair {1,3}
        int beats[3] = {0, 0, 0};  // how many strands this one passes over
        for (int k = 0; k < 3; ++k) {
            int i = (k + 1) % 3, j = (k + 2) % 3;  // strands meeting at idx[k]
            bool iOver = slotAt(i, idx[k]) % 2 == 1;
            ++(iOver ? beats[i] : beats[j]);
        }
        int top = -1, bottom = -1;
        for (int k = 0; k < 3; ++k) {
            if (beats[k] == 2) top = k;
            if (beats[k] == 0) bottom = k;
        }
        if (top < 0 || bottom < 0) throw IllegalMoveSite("cyclic over/under pattern");
        A = site.variant == 0 ? top : bottom;
    } else if (mv == Move::V3) {
        if (classical[0] || classical[1] || classical[2])
            throw IllegalMoveSite("V3 needs three virtual crossings");
        A = 0;
    } else {  // V4
        int cls = -1;
        for (int k = 0; k < 3; ++k)
            if (classical[k]) {
                if (cls >= 0) throw IllegalMoveSite("V4 needs exactly one classical crossing");
                cls = k;
            }
        if (cls < 0) throw IllegalMoveSite("V4 needs exactly one classical crossing");
        // the classical crossing joins the two non-moving strands, so the
        // moving strand is the one away from it
        A = cls;
    }
    int Bs = (A + 1) % 3, Cs = (A + 2) % 3;
    int xAB = idx[Cs], xAC = idx[Bs], xBC = idx[A];

    // chirality: unmirrored template has t_B one slot ccw after t_A at xAB
    auto ccwNext = [&](int sFrom, int sTo) { return (sFrom + 1) % 4 == sTo; };
    bool chi1 = ccwNext(slotAt(A, xAB), slotAt(Bs, xAB));
    bool chi2 = ccwNext(slotAt(Cs, xAC), slotAt(A, xAC));
    bool chi3 = ccwNext(slotAt(Bs, xBC), slotAt(Cs, xBC));
    if (chi1 != chi2 || chi2 != chi3) throw IllegalMoveSite("inconsistent triangle layout");
    bool mirrored = !chi1;

    // outer edges: partner slot of each triangle edge
    auto outer = [&](int k, int c) { return d.crossings[c].e[(slotAt(k, c) + 2) % 4]; };
    int oA_AB = outer(A, xAB), oB_AB = outer(Bs, xAB);
    int oA_AC = outer(A, xAC), oC_AC = outer(Cs, xAC);
    int oB_BC = outer(Bs, xBC), oC_BC = outer(Cs, xBC);

    std::array<int, 4> nAB{t[A], t[Bs], oA_AC, oB_BC};
    std::array<int, 4> nAC{oA_AB, t[Cs], t[A], oC_BC};
    std::array<int, 4> nBC{oB_AB, oC_AC, t[Bs], t[Cs]};
    if (mirrored) {
        std::reverse(nAB.begin(), nAB.end());
        std::reverse(nAC.begin(), nAC.end());
        std::reverse(nBC.begin(), nBC.end());
    }
    // keep the under strand on slots {0,2} for classical crossings; in the
    // tables strand A holds {0,2} at xAB and xAC, strand B at xBC (and {1,3}
    // after mirroring)
    auto fix = [&](std::array<int, 4>& slots, int c, int strandAt02) {
        if (!d.crossings[c].isClassical()) return;
        bool strandOver = slotAt(strandAt02, c) % 2 == 1;  // level before the move
        bool at02 = !mirrored;
        // want the under strand on {0,2}: rotate when the strand on {0,2} is over
        bool rotate = (at02 && strandOver) || (!at02 && !strandOver);
        if (rotate) std::rotate(slots.begin(), slots.begin() + 1, slots.end());
    };
    TangleDiagram r = d;
    fix(nAB, xAB, A);
    fix(nAC, xAC, A);
    fix(nBC, xBC, Bs);
    r.crossings[xAB].e = nAB;
    r.crossings[xAC].e = nAC;
    r.crossings[xBC].e = nBC;
    return rebuildComponents(d, std::move(r), {});
}

}  // namespace

TangleDiagram applyMove(const TangleDiagram& d, Move mv, const MoveSite& site) {
    switch (mv) {
        case Move::R1Pos:
        case Move::R1Neg:
        case Move::V1: {
            bool virt = mv == Move::V1;
            if (site.insert) {
                if (site.edges.size() != 1) throw IllegalMoveSite("R1/V1 insert needs one edge");
                return insertKink(d, site.edges[0], mv == Move::R1Pos, virt);
            }
            if (site.xs.size() != 1) throw IllegalMoveSite("R1/V1 remove needs one crossing");
            const Crossing* c = d.crossingById(site.xs[0]);
            if (!c) throw IllegalMoveSite("no such crossing");
            if (virt != (c->kind == CrossingKind::Virtual))
                throw IllegalMoveSite("crossing kind does not fit the move");
            return removeKink(d, site.xs[0]);
        }
        case Move::R2:
        case Move::V2: {
            bool virt = mv == Move::V2;
            if (site.insert) {
                if (site.edges.size() != 2) throw IllegalMoveSite("R2/V2 insert needs two edges");
                return insertBigon(d, site.edges[0], site.edges[1], site.variant != 0, virt);
            }
            if (site.xs.size() != 2) throw IllegalMoveSite("R2/V2 remove needs two crossings");
            return removeBigon(d, site.xs[0], site.xs[1], virt);
        }
        case Move::R3:
        case Move::V3:
        case Move::V4:
            return applyMoveTriangle(d, mv, site);
    }
    throw IllegalMoveSite("unknown move");
}

// ------------------------------------------------------------ canonical key

std::string canonicalKey(const TangleDiagram& d) {
    // relabel edges by first appearance (boundary, then crossings in order)
    std::map<int, int> relabel;
    int next = 1;
    auto see = [&](int e) {
        if (!relabel.count(e)) relabel[e] = next++;
    };
    for (int e : d.boundary) see(e);
    for (auto& c : d.crossings)
        for (int e : c.e) see(e);
    std::ostringstream os;
    os << d.n << "|";
    for (int e : d.boundary) os << relabel[e] << ",";
    os << "|";
    for (auto& c : d.crossings) {
        os << kindChar(c.kind);
        for (int e : c.e) os << relabel[e] << ",";
        os << ";";
    }
    os << "|";
    // component metadata in a name-free canonical order
    std::vector<std::string> comps;
    for (auto& comp : d.components) {
        std::ostringstream cs;
        for (int e : comp.edges) cs << relabel[e] << ",";
        cs << "/" << comp.orient << "/" << (comp.color ? *comp.color : 0);
        comps.push_back(cs.str());
    }
    std::sort(comps.begin(), comps.end());
    for (auto& s : comps) os << s << ";";
    return os.str();
}

}  // namespace tg
