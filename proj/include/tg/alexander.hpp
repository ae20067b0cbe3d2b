#ifndef TG_ALEXANDER_HPP
#define TG_ALEXANDER_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tg/diagram.hpp"
#include "tg/linalg.hpp"
#include "tg/ring.hpp"

namespace tg {

// Variable assignment used when turning a diagram into a module presentation:
// one variable per color class, a single variable x, or the integer
// specialization x = -1.
enum class LabelingMode { ColoredOriented, Oriented, Unoriented };

// Presentation of the arc module of a diagram (or hand-written input):
// one generator per arc, one relation per classical crossing.
struct ModulePresentation {
    std::vector<std::string> generators;
    RingMatrix relations;  // rows = relations, columns = generators
    std::vector<int> boundaryGenerators;     // indices of arcs meeting the boundary
    std::vector<int> componentOfGenerator;   // variable-group index per generator
    int componentCount = 0;                  // number of variable groups
};

struct ModeError : std::runtime_error {
    explicit ModeError(const std::string& msg) : std::runtime_error(msg) {}
};

// Partition of the diagram's edges into arcs: maximal strand runs broken only
// where the strand passes under a classical crossing. Virtual crossings never
// split arcs. Crossingless closed loops count as arcs with no edges.
struct ArcDecomposition {
    std::map<int, int> arcOfEdge;
    int count = 0;                        // total arcs, including edgeless loops
    std::vector<int> componentOfArc;      // traced-component index per arc
    std::vector<bool> touchesBoundary;    // arc has an edge ending on the boundary
};
ArcDecomposition arcDecomposition(const TangleDiagram& d);

ModulePresentation foxPresentation(const TangleDiagram& d, LabelingMode mode);

// Presentation file input:
//   gens a b c ...
//   rel <poly>*<gen> + ... = <poly>*<gen> + ...
//   boundary a d f h
//   components a:1 b:1 ...
ModulePresentation parsePresentation(const std::string& text);

// gcd of the (q-1)x(q-1) minors of the relation matrix, canonical form.
// For closed classical single-variable diagrams this equals the determinant of
// any single codimension-1 submatrix up to units.
LaurentPoly alexanderPolynomial(const TangleDiagram& d, LabelingMode mode);

// |gcd of codimension-1 minors at -1| after killing one arc generator.
Int linkDeterminant(const TangleDiagram& d);

// First nonzero elementary divisor of the relation matrix, canonical form.
LaurentPoly tauOf(const ModulePresentation& p, LabelingMode mode);
LaurentPoly tauOf(const TangleDiagram& t, LabelingMode mode);

// Boundary invariant: elementary divisor of the module modulo torsion and
// boundary generators. nullopt = indeterminate (only possible in
// ColoredOriented mode, when the elimination heuristic cannot split the
// torsion block from the free part).
std::optional<LaurentPoly> betaOf(const ModulePresentation& p, LabelingMode mode);
std::optional<LaurentPoly> betaOf(const TangleDiagram& t, LabelingMode mode);

// gcd(det numerator closure, det denominator closure), gcd(0,m) = m.
Int krebesGcd(const TangleDiagram& t);

// Product of the prime divisors of |n|.
Int squarefreePart(const Int& n);

// Divisibility of canonical associates; a zero dividend is divisible by
// anything except zero.
bool dividesUpToUnits(const LaurentPoly& divisor, const LaurentPoly& dividend);

struct ObstructionTest {
    std::string name;
    std::string detail;
    bool obstructed = false;
};

struct ObstructionReport {
    std::vector<ObstructionTest> tests;
    std::vector<std::string> notices;
    bool obstructed() const;
};

// Runs every divisibility test applicable to the mode; any failing test means
// the tangle cannot embed in the link.
ObstructionReport checkEmbeddingObstruction(const TangleDiagram& t,
                                            const TangleDiagram& link,
                                            LabelingMode mode);

}  // namespace tg

#endif
