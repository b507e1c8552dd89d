#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qcoh/cech.hpp"
#include "qcoh/cpx.hpp"
#include "qcoh/diagram.hpp"

namespace qcoh {

// ---------------------------------------------------------------------------
// The declarative input language: posets, ring diagrams, modules, morphisms,
// bounded complexes, and model-structure triples, in a diffable ASCII format
// with '#' comments. Parsing validates every definition on load; commands
// dispatch to the library modules and emit byte-stable structured reports.
// ---------------------------------------------------------------------------

// Parse/lookup/validation failure with position information.
class QcwError : public std::runtime_error {
public:
    enum class Kind { Syntax, Reference, Validation };

    QcwError(Kind k, std::string file, std::size_t line, const std::string& msg)
        : std::runtime_error(file + ":" + std::to_string(line) + ": " + msg),
          kind(k), file(std::move(file)), line(line) {}

    Kind kind;
    std::string file;
    std::size_t line;
};

struct Provenance {
    std::string file;
    std::size_t line = 0;
};

struct TripleDef {
    enum class Kind { Injective, Projective, ComplexInjective };
    Kind kind = Kind::Injective;
    std::string over;                 // ringrep name (constant field)
    std::vector<std::string> against; // module names spanning the test set
};

// Complexes are kept in source form as well, so serialization can refer to
// the named component modules instead of inlining them.
struct ComplexDef {
    std::string over; // ringrep name (constant field)
    long lo = 0;
    std::vector<std::string> comps;          // module names, degrees lo..hi
    std::vector<std::vector<QMat>> diffs;    // per gap, per vertex
};

struct Workspace {
    std::map<std::string, FinitePoset> posets;
    std::map<std::string, RingRepPtr> ringreps;
    std::map<std::string, DiagModule> modules;
    std::map<std::string, DiagMorphism> morphisms;
    std::map<std::string, Complex> complexes;
    std::map<std::string, TripleDef> triples;
    std::map<std::string, Provenance> where; // names are unique across kinds
    std::vector<std::string> order;          // definition order

    // Source-level cross references, for serialization.
    std::map<std::string, std::string> ringrep_over;  // ringrep -> poset name
    std::map<std::string, std::string> module_over;   // module -> ringrep name
    std::map<std::string, std::pair<std::string, std::string>> morphism_ends;
    std::map<std::string, ComplexDef> complex_defs;

    bool has(const std::string& name) const { return where.count(name) != 0; }
};

// Parse and validate; throws QcwError with file/line on any defect.
Workspace parse_qcw(const std::string& text, const std::string& filename = "<input>");

// Canonical text form; parsing it back yields definition-equal objects.
std::string serialize(const Workspace& w);

// Structured report: nested key-value blocks, insertion-ordered, byte-stable
// for fixed inputs (timing is deliberately not part of the payload).
struct Report {
    struct Node {
        std::string key;
        std::string value;
        std::vector<Node> children;

        Node& add(std::string k, std::string v = "") {
            children.push_back({std::move(k), std::move(v), {}});
            return children.back();
        }
    };

    std::string command;
    std::string status = "ok"; // ok | no | error
    Node result{"result", "", {}};
    std::vector<std::string> warnings;
    int exit_code = 0;

    std::string str() const;
};

struct RunOptions {
    std::optional<ExpWindow> window;       // --window LO..HI (exponents/grades)
    std::size_t budget = 32;               // --budget N
    std::vector<std::string> universe;     // --universe A,B,C
    std::vector<std::string> cover;        // --cover u0,u1
    std::vector<long> twists;              // --twists n1,n2
    std::optional<std::string> pair;       // --pair injective|projective
    std::optional<std::string> triple;     // --triple NAME
    long ext_degree = 1;                   // --n K
};

// Commands: validate qcheck hom ext lift factorize approx pair-check
// triple-verify classify homotopic ho-hom cech cohomology tensor
// pushout-product bundle-check. Exit code 0 = success, 1 = mathematical
// negative, 2 = error; errors are reported, not thrown.
Report run_command(const std::string& command, const std::vector<std::string>& args,
                   const Workspace& ws, const RunOptions& opt = {});

} // namespace qcoh
