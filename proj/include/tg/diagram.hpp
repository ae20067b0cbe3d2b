#ifndef TG_DIAGRAM_HPP
#define TG_DIAGRAM_HPP

#include <array>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tg {

// Crossing kinds: '+'/'-' are classical with a declared sign, 'u' is classical
// with the sign left to orientation data, 'v' is virtual.
enum class CrossingKind { Positive, Negative, Unsigned, Virtual };

struct Crossing {
    std::string id;
    CrossingKind kind = CrossingKind::Unsigned;
    // Half-edge ids counterclockwise. For classical crossings slot 0 is the
    // incoming under-strand when oriented; slots {0,2} are the under pair and
    // {1,3} the over pair regardless. For virtual crossings the start slot is
    // arbitrary but opposite slots still belong to the same strand.
    std::array<int, 4> e{};

    bool isClassical() const { return kind != CrossingKind::Virtual; }
    bool operator==(const Crossing& o) const = default;
};

struct Component {
    std::string name;
    // Edge ids in traversal order: consecutive entries meet at a crossing
    // (opposite slots) and, for an open component, the list runs from one
    // boundary end to the other.
    std::vector<int> edges;
    int orient = 0;  // +1 follows the listed order, -1 reverses it, 0 none
    std::optional<int> color;

    bool operator==(const Component& o) const = default;
};

struct TangleDiagram {
    int n = 0;  // half the number of boundary points; 0 for links
    std::vector<Crossing> crossings;
    std::vector<int> boundary;  // 2n half-edge ids, counterclockwise disk order
    std::vector<Component> components;

    bool isLink() const { return n == 0; }
    bool isClassical() const;  // no virtual crossings
    int maxEdgeId() const;
    const Crossing* crossingById(const std::string& id) const;
    bool operator==(const TangleDiagram& o) const = default;
};

struct DiagramParseError : std::runtime_error {
    int line;
    DiagramParseError(std::string msg, int ln)
        : std::runtime_error(std::move(msg)), line(ln) {}
};

TangleDiagram parseDiagram(const std::string& text);
std::string serializeDiagram(const TangleDiagram& d);

// Empty result means the diagram satisfies every structural invariant.
std::vector<std::string> validate(const TangleDiagram& d);

// End of an edge: either a crossing slot or a boundary position (1-based).
struct EdgeEnd {
    int crossing = -1;  // index into crossings, or -1 for boundary
    int slot = 0;       // slot 0..3, or boundary position 1..2n
    bool isBoundary() const { return crossing < 0; }
    bool operator==(const EdgeEnd& o) const = default;
};

// Both ends of an edge, in no particular order (ends[0] is the first found).
struct EdgeEnds {
    std::array<EdgeEnd, 2> ends;
};

// Map from edge id to its two ends. Requires a structurally valid diagram.
std::map<int, EdgeEnds> edgeEndpoints(const TangleDiagram& d);

// Partition of edges into components obtained by tracing strands through
// crossings (opposite slots continue the strand). Each component's edge list
// is in traversal order.
std::vector<std::vector<int>> traceComponents(const TangleDiagram& d);

// Direction of every edge of an oriented diagram, as edge id -> (tail, head).
// Requires every component to carry an orientation flag and a traversal-order
// edge list.
std::map<int, std::pair<EdgeEnd, EdgeEnd>> orientEdges(const TangleDiagram& d);

// Sign of a classical crossing: derived from orientations when available,
// otherwise the declared kind. Throws if neither determines it.
int crossingSign(const TangleDiagram& d, int crossingIndex);
int writhe(const TangleDiagram& d);

// Perfect matching on boundary positions 1..2n.
struct Matching {
    std::vector<std::pair<int, int>> pairs;  // each pair (a,b) with a < b

    bool noncrossing() const;
    std::string str() const;
    static Matching parse(const std::string& text);
    void canonicalize();  // sort pairs, smaller element first
    bool operator==(const Matching& o) const = default;
};

std::vector<Matching> catalanMatchings(int n);
std::vector<Matching> allMatchings(int n);

Matching numeratorMatching(int n);    // nested: (k, 2n+1-k)
Matching denominatorMatching(int n);  // adjacent: (2k-1, 2k)

// Close a 2n-tangle by the matching. Noncrossing matchings add no crossings;
// each chord intersection of a crossing matching becomes one virtual crossing.
// Components whose metadata (orientation, color) becomes inconsistent under
// the gluing lose it, with a note appended to *warnings.
// A component with an empty edge list is a crossingless closed loop; closures
// of crossingless tangles produce these.
TangleDiagram closeTangle(const TangleDiagram& t, const Matching& m,
                          std::vector<std::string>* warnings = nullptr);

// Glue the right boundary points of s to the left boundary points of t
// (mirrored order); both must have the same n.
TangleDiagram tangleProduct(const TangleDiagram& s, const TangleDiagram& t,
                            std::vector<std::string>* warnings = nullptr);

enum class Move { R1Pos, R1Neg, R2, R3, V1, V2, V3, V4 };

struct MoveSite {
    bool insert = true;            // R1/R2/V1/V2 have insert and remove forms
    std::vector<int> edges;        // edge ids locating the site
    std::vector<std::string> xs;   // crossing ids locating the site
    int variant = 0;               // disambiguates strand/handedness choices
};

struct IllegalMoveSite : std::runtime_error {
    explicit IllegalMoveSite(const std::string& msg) : std::runtime_error(msg) {}
};

TangleDiagram applyMove(const TangleDiagram& d, Move mv, const MoveSite& site);

// Faces of the diagram's rotation system with all boundary points collapsed
// to a single outer vertex. Each face is a cyclic list of (edge id, side).
std::vector<std::vector<std::pair<int, int>>> diagramFaces(const TangleDiagram& d);

// Euler-characteristic planarity check; only meaningful for diagrams without
// virtual crossings.
bool isPlanar(const TangleDiagram& d);

// Number of components after closing by m, computed by union-find on the
// component partition (used as an independent cross-check of closeTangle).
int closedComponentCount(const TangleDiagram& t, const Matching& m);

// Deterministic structural key: invariant under crossing reordering and edge
// renaming along a canonical relabeling. Used for memoization downstream.
std::string canonicalKey(const TangleDiagram& d);

}  // namespace tg

#endif
