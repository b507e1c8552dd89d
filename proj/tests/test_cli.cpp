#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>
#include <sstream>

#include "qcoh/qcwlang.hpp"

using namespace qcoh;

namespace {

std::string example_text() {
    std::ifstream in(QCW_EXAMPLE);
    REQUIRE(in.good());
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Workspace example() { return parse_qcw(example_text(), "p1.qcw"); }

} // namespace

TEST_CASE("parsing the shipped example") {
    Workspace ws = example();
    CHECK(ws.posets.count("P1") == 1);
    CHECK(ws.ringreps.count("OP1") == 1);
    CHECK(ws.modules.size() == 7);
    CHECK(ws.morphisms.size() == 3);
    CHECK(ws.complexes.size() == 4);
    CHECK(ws.triples.size() == 2);
    CHECK(ws.order.size() == 20);
    CHECK(ws.where.at("O1").line > 0);

    const Complex& cone = ws.complexes.at("ConeK");
    CHECK(cone.lo == 0);
    CHECK(cone.comps.size() == 3);
    CHECK(is_acyclic(cone));
    CHECK(ws.complexes.at("SS1m").lo == -1);
}

TEST_CASE("serialization round trip is byte stable") {
    Workspace ws = example();
    std::string once = serialize(ws);
    Workspace back = parse_qcw(once, "round1");
    std::string twice = serialize(back);
    CHECK(once == twice);
    CHECK(back.order == ws.order);
    // Round-tripped objects are definition-equal.
    CHECK(back.modules.at("O2").transition(0, 2) == ws.modules.at("O2").transition(0, 2));
    CHECK(back.complexes.at("ConeK").valid());
}

TEST_CASE("parse errors carry position and kind") {
    CHECK_THROWS_AS(parse_qcw("poset P { elements: a; relations: ; }\n"
                              "poset P { elements: b; relations: ; }",
                              "dup"),
                    QcwError);
    try {
        parse_qcw("poset P { elements: a; relations: ;", "trunc");
        CHECK(false);
    } catch (const QcwError& e) {
        CHECK(e.kind == QcwError::Kind::Syntax);
        CHECK(e.file == "trunc");
    }
    // An inconsistent composite transition is a validation error.
    std::string bad = "poset C { elements: a b c; relations: a <= b b <= c; }\n"
                      "ringrep K over C { a: field; b: field; c: field; }\n"
                      "module M over K {\n"
                      "  vertex a { gens: 1; }\n"
                      "  vertex b { gens: 1; }\n"
                      "  vertex c { gens: 1; }\n"
                      "  edge a b: [[1]];\n"
                      "  edge b c: [[1]];\n"
                      "  edge a c: [[0]];\n"
                      "}";
    try {
        parse_qcw(bad, "badmod");
        CHECK(false);
    } catch (const QcwError& e) {
        CHECK(e.kind == QcwError::Kind::Validation);
    }
    // Unknown references.
    CHECK_THROWS_AS(parse_qcw("ringrep K over Nope { }", "noposet"), QcwError);
    // Empty input is a valid empty workspace.
    CHECK(parse_qcw("", "empty").order.empty());
    CHECK(serialize(parse_qcw("", "empty")).empty());
}

TEST_CASE("reports are byte stable") {
    Workspace ws = example();
    Report r = run_command("qcheck", {"O0"}, ws);
    CHECK(r.str() == "report {\n"
                     "  command: qcheck;\n"
                     "  status: ok;\n"
                     "  exit: 0;\n"
                     "  result {\n"
                     "    quasicoherent: yes;\n"
                     "  }\n"
                     "}\n");
    RunOptions opt;
    opt.window = ExpWindow{-4, 4};
    Report h = run_command("hom", {"Om1", "O0"}, ws, opt);
    CHECK(h.str() == "report {\n"
                     "  command: hom;\n"
                     "  status: ok;\n"
                     "  exit: 0;\n"
                     "  result {\n"
                     "    dim: 2;\n"
                     "  }\n"
                     "}\n");
    CHECK(run_command("qcheck", {"O0"}, ws).str() == r.str());
}

TEST_CASE("validate and qcheck") {
    Workspace ws = example();
    Report r = run_command("validate", {}, ws);
    CHECK(r.exit_code == 0);
    CHECK(r.result.children.size() == ws.order.size());

    // A rank-one module whose chart does not spread to the overlap.
    std::string nq = example_text() +
                     "\nmodule NQ over OP1 {\n"
                     "  vertex u0 { gens: 1; }\n"
                     "  vertex u1 { gens: 1; }\n"
                     "  vertex u01 { gens: 1; }\n"
                     "  edge u0 u01: [[0]];\n"
                     "  edge u1 u01: [[1]];\n"
                     "}\n";
    Workspace ws2 = parse_qcw(nq, "nq");
    Report q = run_command("qcheck", {"NQ"}, ws2);
    CHECK(q.status == "no");
    CHECK(q.exit_code == 1);
}

TEST_CASE("hom, ext, lift") {
    Workspace ws = example();
    RunOptions opt;
    opt.window = ExpWindow{-5, 5};
    CHECK(run_command("hom", {"O0", "O2"}, ws, opt).result.children[0].value == "3");
    CHECK(run_command("hom", {"O2", "O0"}, ws, opt).result.children[0].value == "0");
    // Without a window the infinite-dimensional solve must refuse, not guess.
    Report err = run_command("hom", {"O0", "O2"}, ws);
    CHECK(err.status == "error");
    CHECK(err.exit_code == 2);
    CHECK(err.result.children[0].value == "WindowRequired");

    Report e1 = run_command("ext", {"S0k", "S1k"}, ws);
    CHECK(e1.result.children[1].value == "1");
    CHECK(run_command("ext", {"S1k", "S0k"}, ws).result.children[1].value == "0");
    RunOptions deg2;
    deg2.ext_degree = 2;
    CHECK(run_command("ext", {"S0k", "S1k"}, ws, deg2).result.children[1].value == "0");

    Report lift = run_command("lift", {"incl", "proj", "incl", "proj"}, ws);
    CHECK(lift.exit_code == 0);
    CHECK(lift.result.children[0].value == "yes");
    // Unknown names are reference errors.
    CHECK(run_command("lift", {"incl", "proj", "incl", "nope"}, ws).exit_code == 2);
}

TEST_CASE("factorize, approx, pair-check") {
    Workspace ws = example();
    RunOptions opt;
    opt.universe = {"S0k", "S1k", "P0k"};
    for (std::string kind : {"projective", "injective"}) {
        opt.pair = kind;
        Report f = run_command("factorize", {"proj"}, ws, opt);
        CHECK(f.exit_code == 0);
        for (const auto& c : f.result.children)
            if (c.value == "yes" || c.value == "no") CHECK(c.value == "yes");
        Report a = run_command("approx", {"S0k"}, ws, opt);
        CHECK(a.exit_code == 0);
        Report p = run_command("pair-check", {}, ws, opt);
        CHECK(p.exit_code == 0);
        for (const auto& c : p.result.children) CHECK(c.children[1].value == "pass");
    }
    opt.pair = "sideways";
    CHECK(run_command("pair-check", {}, ws, opt).exit_code == 2);
}

TEST_CASE("triple-verify over both backends") {
    Workspace ws = example();
    RunOptions opt;
    opt.universe = {"S0k", "S1k", "P0k"};
    Report inj = run_command("triple-verify", {"InjT"}, ws, opt);
    CHECK(inj.exit_code == 0);
    for (const auto& c : inj.result.children) CHECK(c.children[1].value == "pass");

    RunOptions copt;
    copt.universe = {"ConeK", "DS0"};
    Report cpx = run_command("triple-verify", {"CpxT"}, ws, copt);
    CHECK(cpx.exit_code == 0);
    for (const auto& c : cpx.result.children) CHECK(c.children[1].value == "pass");
}

TEST_CASE("classify, homotopic, ho-hom") {
    Workspace ws = example();
    RunOptions opt;
    opt.triple = "InjT";
    Report c = run_command("classify", {"incl"}, ws, opt);
    CHECK(c.result.children[0].value == "yes"); // a vertexwise mono is a cofibration
    CHECK(c.result.children[2].value == "no");  // and not a deflation
    Report h = run_command("homotopic", {"incl", "incl"}, ws, opt);
    CHECK(h.result.children[0].value == "both");

    RunOptions copt;
    copt.triple = "CpxT";
    // Ho(S^0 S0, Sigma S^0 S1) has dimension ext1(S0, S1) = 1; against the
    // unshifted degree-zero spheres the homotopy classes vanish.
    CHECK(run_command("ho-hom", {"SphS0", "SS1m"}, ws, copt).result.children[0].value == "1");
    CHECK(run_command("ho-hom", {"S0k", "S1k"}, ws, copt).result.children[0].value == "0");
}

TEST_CASE("cech and cohomology through the CLI") {
    Workspace ws = example();
    RunOptions opt;
    opt.cover = {"u0", "u1"};
    Report c = run_command("cech", {"O2"}, ws, opt);
    CHECK(c.exit_code == 0);
    CHECK(c.result.children[1].value == "yes");

    Report t = run_command("cohomology", {"O2"}, ws, opt);
    CHECK(t.exit_code == 0);
    bool saw_h0 = false, saw_h1 = false;
    for (const auto& ch : t.result.children) {
        if (ch.key == "h0") {
            CHECK(ch.value == "3");
            saw_h0 = true;
        }
        if (ch.key == "h1") {
            CHECK(ch.value == "0");
            saw_h1 = true;
        }
    }
    CHECK(saw_h0);
    CHECK(saw_h1);

    Report m = run_command("cohomology", {"Om1"}, ws, opt);
    for (const auto& ch : m.result.children)
        if (ch.key == "h1") CHECK(ch.value == "0"); // H^1 O(-1) = 0

    opt.cover = {"u0"};
    CHECK(run_command("cech", {"O2"}, ws, opt).exit_code == 2); // not a cover
}

TEST_CASE("tensor, pushout-product, bundle-check") {
    Workspace ws = example();
    Report t = run_command("tensor", {"O1", "Om1"}, ws);
    CHECK(t.exit_code == 0);
    CHECK(t.result.children.back().value == "yes"); // quasicoherent

    Report tc = run_command("tensor", {"ConeK", "SphS0"}, ws);
    CHECK(tc.exit_code == 0);

    Report pp = run_command("pushout-product", {"incl", "incl"}, ws);
    CHECK(pp.exit_code == 0);
    for (const auto& c : pp.result.children) CHECK(c.children[1].value == "pass");

    RunOptions opt;
    opt.twists = {0};
    Report b0 = run_command("bundle-check", {"O0"}, ws, opt);
    CHECK(b0.exit_code == 0);
    Report bm = run_command("bundle-check", {"Om1"}, ws, opt);
    CHECK(bm.exit_code == 1); // O(-1) admits no map from O(0)
    CHECK(bm.result.children[0].value == "yes");
    CHECK(bm.result.children[1].value == "no");
}

TEST_CASE("unknown command and unknown name") {
    Workspace ws = example();
    CHECK(run_command("frobnicate", {}, ws).exit_code == 2);
    Report r = run_command("qcheck", {"missing"}, ws);
    CHECK(r.exit_code == 2);
    CHECK(r.status == "error");
}
