// tangle-gate: compute persistence invariants and embedding obstructions for
// classical and virtual tangle diagrams.
//
// Exit codes: 0 success (or no obstruction found), 1 usage or parse error,
// 2 validation failure, 3 obstructed (check-embed only), 4 resource cap
// exceeded.
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tg/alexander.hpp"
#include "tg/diagram.hpp"
#include "tg/ideal.hpp"
#include "tg/linalg.hpp"
#include "tg/ring.hpp"
#include "tg/skein.hpp"

using json = nlohmann::ordered_json;
using namespace tg;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitObstructed = 3;
constexpr int kExitCap = 4;

struct ValidationFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string readFile(const std::string& path) {
    std::ifstream f(path);
    if (!f.good()) throw DiagramParseError("cannot open file " + path, 0);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

TangleDiagram loadDiagram(const std::string& path) {
    TangleDiagram d = parseDiagram(readFile(path));
    auto errs = validate(d);
    if (!errs.empty()) {
        std::string msg = path + ": ";
        for (size_t i = 0; i < errs.size(); ++i) msg += (i ? "; " : "") + errs[i];
        throw ValidationFailure(msg);
    }
    return d;
}

LabelingMode parseMode(const std::string& mode) {
    if (mode == "colored") return LabelingMode::ColoredOriented;
    if (mode == "oriented") return LabelingMode::Oriented;
    if (mode == "unoriented") return LabelingMode::Unoriented;
    throw CLI::ValidationError("--mode must be colored, oriented or unoriented");
}

// Shared state filled by CLI11.
struct Options {
    std::string file;        // positional diagram file
    std::string tangleFile;  // check-embed
    std::string linkFile;    // check-embed
    std::string presentationFile;
    std::string mode = "oriented";
    int cap = kDefaultCrossingCap;
    bool allMatchings = false;
    bool jsonOut = false;
    int catalanN = 0;
};

json jsonHeader(const std::string& command) {
    json j;
    j["schema"] = 1;
    j["command"] = command;
    return j;
}

void emit(const Options& opt, const json& j, const std::string& text) {
    if (opt.jsonOut)
        std::cout << j.dump(2) << "\n";
    else
        std::cout << text;
}

int runParse(const Options& opt) {
    TangleDiagram d = loadDiagram(opt.file);
    std::string out = serializeDiagram(d);
    if (parseDiagram(out) != d)
        throw std::logic_error("serialization did not round-trip");
    json j = jsonHeader("parse");
    j["n"] = d.n;
    j["crossings"] = d.crossings.size();
    j["components"] = d.components.size();
    j["classical"] = d.isClassical();
    j["serialized"] = out;
    emit(opt, j, out);
    return kExitOk;
}

int runClosures(const Options& opt) {
    TangleDiagram t = loadDiagram(opt.file);
    if (t.isLink()) throw ValidationFailure("closures needs a tangle, not a link");
    auto matchings = opt.allMatchings ? allMatchings(t.n) : catalanMatchings(t.n);
    json j = jsonHeader("closures");
    j["closures"] = json::array();
    std::ostringstream text;
    for (const auto& m : matchings) {
        TangleDiagram ell = closeTangle(t, m);
        int comps = closedComponentCount(t, m);
        text << m.str() << "  components=" << comps
             << " classical=" << (ell.isClassical() ? "yes" : "no") << "\n";
        json e;
        e["matching"] = m.str();
        e["components"] = comps;
        e["classical"] = ell.isClassical();
        j["closures"].push_back(e);
    }
    emit(opt, j, text.str());
    return kExitOk;
}

int runCatalan(const Options& opt) {
    if (opt.catalanN < 1) throw CLI::ValidationError("catalan needs n >= 1");
    auto ms = opt.allMatchings ? allMatchings(opt.catalanN)
                               : catalanMatchings(opt.catalanN);
    json j = jsonHeader("catalan");
    j["n"] = opt.catalanN;
    j["matchings"] = json::array();
    std::ostringstream text;
    for (const auto& m : ms) {
        text << m.str() << "\n";
        j["matchings"].push_back(m.str());
    }
    emit(opt, j, text.str());
    return kExitOk;
}

int runBracket(const Options& opt) {
    TangleDiagram d = loadDiagram(opt.file);
    LaurentPoly b = bracket(d, opt.cap);
    json j = jsonHeader("bracket");
    j["bracket"] = printPoly(b);
    emit(opt, j, "bracket = " + printPoly(b) + "\n");
    return kExitOk;
}

int runIdeal(const Options& opt) {
    TangleDiagram t = loadDiagram(opt.file);
    IdealZA ideal = opt.allMatchings ? virtualBracketIdeal(t, opt.cap)
                                     : bracketIdeal(t, opt.cap);
    json j = jsonHeader("ideal");
    j["virtual"] = opt.allMatchings;
    j["ideal"] = ideal.str();
    emit(opt, j, ideal.str() + "\n");
    return kExitOk;
}

int runPolynomial(const Options& opt, const std::string& name) {
    TangleDiagram d = loadDiagram(opt.file);
    LaurentPoly p;
    if (name == "jones")
        p = jones(d, opt.cap);
    else if (name == "homflypt")
        p = homflypt(d, opt.cap);
    else
        p = conway(d, opt.cap);
    json j = jsonHeader(name);
    j[name] = printPoly(p);
    emit(opt, j, name + " = " + printPoly(p) + "\n");
    return kExitOk;
}

ModulePresentation loadPresentationOrDiagram(const Options& opt, LabelingMode mode) {
    if (!opt.presentationFile.empty())
        return parsePresentation(readFile(opt.presentationFile));
    if (opt.file.empty())
        throw CLI::ValidationError("need a diagram file or --presentation");
    return foxPresentation(loadDiagram(opt.file), mode);
}

int runAlexander(const Options& opt) {
    LabelingMode mode = parseMode(opt.mode);
    LaurentPoly p;
    if (!opt.presentationFile.empty()) {
        // first nonzero elementary divisor of the hand-written module
        p = tauOf(parsePresentation(readFile(opt.presentationFile)), mode);
    } else {
        p = alexanderPolynomial(loadDiagram(opt.file), mode);
    }
    json j = jsonHeader("alexander");
    j["mode"] = opt.mode;
    j["alexander"] = printPoly(p);
    emit(opt, j, "alexander = " + printPoly(p) + "\n");
    return kExitOk;
}

int runDet(const Options& opt) {
    TangleDiagram d = loadDiagram(opt.file);
    Int det = linkDeterminant(d);
    json j = jsonHeader("det");
    j["det"] = det.str();
    emit(opt, j, "det = " + det.str() + "\n");
    return kExitOk;
}

int runTauBeta(const Options& opt) {
    LabelingMode mode = parseMode(opt.mode);
    ModulePresentation p = loadPresentationOrDiagram(opt, mode);
    LaurentPoly tau = tauOf(p, mode);
    std::optional<LaurentPoly> beta = betaOf(p, mode);
    std::string betaText = beta ? printPoly(*beta) : "indeterminate";
    json j = jsonHeader("tau-beta");
    j["mode"] = opt.mode;
    j["tau"] = printPoly(tau);
    j["beta"] = betaText;
    emit(opt, j, "tau = " + printPoly(tau) + "\nbeta = " + betaText + "\n");
    return kExitOk;
}

int runKrebes(const Options& opt) {
    TangleDiagram t = loadDiagram(opt.file);
    if (t.isLink()) throw ValidationFailure("krebes needs a tangle, not a link");
    Int g = krebesGcd(t);
    json j = jsonHeader("krebes");
    j["gcd"] = g.str();
    j["squarefree"] = squarefreePart(g).str();
    emit(opt, j,
         "krebes-gcd = " + g.str() + "\nsquarefree = " + squarefreePart(g).str() +
             "\n");
    return kExitOk;
}

int runSnf(const Options& opt) {
    LabelingMode mode = parseMode(opt.mode);
    ModulePresentation p = loadPresentationOrDiagram(opt, mode);
    // bring the relations into the requested variable regime before the SNF
    LaurentPoly dummy;
    SnfDomain domain = mode == LabelingMode::Unoriented
                           ? SnfDomain::Integers
                           : SnfDomain::UnivariateRationalLaurent;
    RingMatrix m = p.relations;
    for (auto& e : m.a) {
        if (mode == LabelingMode::Unoriented) {
            e = LaurentPoly(lpEvalAllInt(e, Int(-1)));
        } else if (mode == LabelingMode::Oriented) {
            for (auto& v : e.variables())
                if (v != "x") e = lpSubstitute(e, v, LaurentPoly::var("x"));
        }
    }
    if (mode == LabelingMode::ColoredOriented && domain != SnfDomain::Integers) {
        // multivariate matrices have no Euclidean SNF; require one variable
        std::set<std::string> vars;
        for (auto& e : m.a)
            for (auto& v : e.variables()) vars.insert(v);
        if (vars.size() > 1)
            throw ValidationFailure("snf requires a single-variable presentation; "
                                    "use --mode oriented or unoriented");
    }
    SnfResult r = smithNormalForm(m, domain);
    std::ostringstream text;
    text << "diag(";
    json j = jsonHeader("snf");
    j["mode"] = opt.mode;
    j["diagonal"] = json::array();
    for (size_t i = 0; i < r.diagonal.size(); ++i) {
        text << (i ? " ; " : " ") << printPoly(r.diagonal[i]);
        j["diagonal"].push_back(printPoly(r.diagonal[i]));
    }
    text << " )\n";
    emit(opt, j, text.str());
    return kExitOk;
}

int runCheckEmbed(const Options& opt) {
    LabelingMode mode = parseMode(opt.mode);
    TangleDiagram t = loadDiagram(opt.tangleFile);
    TangleDiagram ell = loadDiagram(opt.linkFile);
    ObstructionReport rep = checkEmbeddingObstruction(t, ell, mode);
    std::ostringstream text;
    json j = jsonHeader("check-embed");
    j["mode"] = opt.mode;
    j["tests"] = json::array();
    for (const auto& test : rep.tests) {
        text << test.name << ": " << (test.obstructed ? "OBSTRUCTED" : "ok")
             << " (" << test.detail << ")\n";
        json e;
        e["name"] = test.name;
        e["obstructed"] = test.obstructed;
        e["detail"] = test.detail;
        j["tests"].push_back(e);
    }
    j["notices"] = rep.notices;
    for (const auto& note : rep.notices) text << "note: " << note << "\n";
    bool obstructed = rep.obstructed();
    j["verdict"] = obstructed ? "OBSTRUCTED" : "no obstruction";
    text << (obstructed ? "OBSTRUCTED" : "no obstruction") << "\n";
    emit(opt, j, text.str());
    return obstructed ? kExitObstructed : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"persistent invariants of classical and virtual tangles"};
    app.require_subcommand(1);
    Options opt;

    auto addCommon = [&](CLI::App* cmd) {
        cmd->add_option("--cap", opt.cap, "crossing cap for skein computations");
        cmd->add_flag("--json", opt.jsonOut, "machine-readable report");
    };
    auto addFile = [&](CLI::App* cmd) {
        cmd->add_option("file", opt.file, "diagram file")->required();
    };

    std::map<std::string, std::function<int()>> actions;

    auto* parse = app.add_subcommand("parse", "validate and reserialize a diagram");
    addFile(parse);
    addCommon(parse);
    actions["parse"] = [&] { return runParse(opt); };

    auto* closures = app.add_subcommand("closures", "list closures of a tangle");
    addFile(closures);
    addCommon(closures);
    closures->add_flag("--all-matchings", opt.allMatchings,
                       "include crossing (virtual) matchings");
    actions["closures"] = [&] { return runClosures(opt); };

    auto* catalan = app.add_subcommand("catalan", "list noncrossing matchings of 2n points");
    catalan->add_option("n", opt.catalanN, "half the number of boundary points")
        ->required();
    addCommon(catalan);
    catalan->add_flag("--all-matchings", opt.allMatchings, "include crossing matchings");
    actions["catalan"] = [&] { return runCatalan(opt); };

    auto* bracketCmd = app.add_subcommand("bracket", "Kauffman bracket of a link diagram");
    addFile(bracketCmd);
    addCommon(bracketCmd);
    actions["bracket"] = [&] { return runBracket(opt); };

    auto* ideal = app.add_subcommand("ideal", "closure bracket ideal of a tangle");
    addFile(ideal);
    addCommon(ideal);
    ideal->add_flag("--all-matchings", opt.allMatchings,
                    "use all matchings (virtual closures included)");
    actions["ideal"] = [&] { return runIdeal(opt); };

    for (const char* name : {"jones", "homflypt", "conway"}) {
        auto* cmd = app.add_subcommand(name, std::string(name) + " polynomial");
        addFile(cmd);
        addCommon(cmd);
        actions[name] = [&opt, name] { return runPolynomial(opt, name); };
    }

    auto* alexander = app.add_subcommand("alexander", "Alexander polynomial");
    alexander->add_option("file", opt.file, "diagram file");
    alexander->add_option("--presentation", opt.presentationFile,
                          "module presentation file instead of a diagram");
    alexander->add_option("--mode", opt.mode, "colored|oriented|unoriented");
    addCommon(alexander);
    actions["alexander"] = [&] { return runAlexander(opt); };

    auto* det = app.add_subcommand("det", "link determinant");
    addFile(det);
    addCommon(det);
    actions["det"] = [&] { return runDet(opt); };

    auto* tauBeta = app.add_subcommand("tau-beta", "torsion and boundary invariants");
    tauBeta->add_option("file", opt.file, "diagram file");
    tauBeta->add_option("--presentation", opt.presentationFile,
                        "module presentation file instead of a diagram");
    tauBeta->add_option("--mode", opt.mode, "colored|oriented|unoriented");
    addCommon(tauBeta);
    actions["tau-beta"] = [&] { return runTauBeta(opt); };

    auto* krebes = app.add_subcommand("krebes", "gcd of closure determinants");
    addFile(krebes);
    addCommon(krebes);
    actions["krebes"] = [&] { return runKrebes(opt); };

    auto* snf = app.add_subcommand("snf", "Smith normal form of the arc module");
    snf->add_option("file", opt.file, "diagram file");
    snf->add_option("--presentation", opt.presentationFile,
                    "module presentation file instead of a diagram");
    snf->add_option("--mode", opt.mode, "colored|oriented|unoriented");
    addCommon(snf);
    actions["snf"] = [&] { return runSnf(opt); };

    auto* check = app.add_subcommand("check-embed", "embedding obstruction tests");
    check->add_option("--tangle", opt.tangleFile, "tangle diagram file")->required();
    check->add_option("--link", opt.linkFile, "link diagram file")->required();
    check->add_option("--mode", opt.mode, "colored|oriented|unoriented");
    addCommon(check);
    actions["check-embed"] = [&] { return runCheckEmbed(opt); };

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        return actions.at(app.get_subcommands().front()->get_name())();
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DiagramParseError& e) {
        std::cerr << "parse error: " << e.what()
                  << (e.line > 0 ? " (line " + std::to_string(e.line) + ")" : "")
                  << "\n";
        return kExitUsage;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const CapExceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return kExitCap;
    } catch (const ValidationFailure& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const ModeError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::invalid_argument& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::runtime_error& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    }
}
