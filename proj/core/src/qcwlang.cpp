#include "qcoh/qcwlang.hpp"

#include <algorithm>
#include <cctype>
#include <memory>
#include <sstream>

#include "qcoh/cpx_model.hpp"
#include "qcoh/model.hpp"
#include "qcoh/rep.hpp"

namespace qcoh {

namespace {

// ---------------------------------------------------------------------------
// Tokenizer
// ---------------------------------------------------------------------------

struct Token {
    enum class Kind { Ident, Int, String, Punct, End };
    Kind kind = Kind::End;
    std::string text;
    std::size_t line = 0;
};

class Lexer {
public:
    Lexer(const std::string& text, std::string file) : file_(std::move(file)) {
        std::size_t line = 1;
        std::size_t i = 0;
        auto push = [&](Token::Kind k, std::string t) { toks_.push_back({k, std::move(t), line}); };
        while (i < text.size()) {
            char c = text[i];
            if (c == '\n') {
                ++line;
                ++i;
                continue;
            }
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++i;
                continue;
            }
            if (c == '#') {
                while (i < text.size() && text[i] != '\n') ++i;
                continue;
            }
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::size_t j = i;
                while (j < text.size() &&
                       (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                    ++j;
                push(Token::Kind::Ident, text.substr(i, j - i));
                i = j;
                continue;
            }
            if (std::isdigit(static_cast<unsigned char>(c))) {
                std::size_t j = i;
                while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
                push(Token::Kind::Int, text.substr(i, j - i));
                i = j;
                continue;
            }
            if (c == '"') {
                std::size_t j = i + 1;
                while (j < text.size() && text[j] != '"' && text[j] != '\n') ++j;
                if (j >= text.size() || text[j] != '"')
                    throw QcwError(QcwError::Kind::Syntax, file_, line, "unterminated string");
                push(Token::Kind::String, text.substr(i + 1, j - i - 1));
                i = j + 1;
                continue;
            }
            if (c == '<') {
                if (i + 1 < text.size() && text[i + 1] == '=') {
                    push(Token::Kind::Punct, "<=");
                    i += 2;
                    continue;
                }
                throw QcwError(QcwError::Kind::Syntax, file_, line, "stray '<'");
            }
            if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
                push(Token::Kind::Punct, "->");
                i += 2;
                continue;
            }
            static const std::string punct = "{}()[]:;,^*/+-";
            if (punct.find(c) != std::string::npos) {
                push(Token::Kind::Punct, std::string(1, c));
                ++i;
                continue;
            }
            throw QcwError(QcwError::Kind::Syntax, file_, line,
                           std::string("unexpected character '") + c + "'");
        }
        toks_.push_back({Token::Kind::End, "", line});
    }

    const Token& peek() const { return toks_[pos_]; }
    Token next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

    bool accept(const std::string& punct) {
        if (peek().kind == Token::Kind::Punct && peek().text == punct) {
            next();
            return true;
        }
        return false;
    }
    bool accept_word(const std::string& w) {
        if (peek().kind == Token::Kind::Ident && peek().text == w) {
            next();
            return true;
        }
        return false;
    }
    void expect(const std::string& punct) {
        if (!accept(punct)) fail("expected '" + punct + "'");
    }
    void expect_word(const std::string& w) {
        if (!accept_word(w)) fail("expected '" + w + "'");
    }
    std::string ident() {
        if (peek().kind != Token::Kind::Ident) fail("expected an identifier");
        return next().text;
    }
    long integer() {
        bool neg = accept("-");
        if (peek().kind != Token::Kind::Int) fail("expected an integer");
        long v = std::stol(next().text);
        return neg ? -v : v;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw QcwError(QcwError::Kind::Syntax, file_, peek().line,
                       msg + (peek().kind == Token::Kind::End ? " (at end of input)"
                                                              : " (near '" + peek().text + "')"));
    }
    const std::string& file() const { return file_; }
    std::size_t line() const { return peek().line; }

private:
    std::string file_;
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Entries and matrices
// ---------------------------------------------------------------------------

Q parse_rational(Lexer& lx) {
    bool neg = lx.accept("-");
    if (lx.peek().kind != Token::Kind::Int) lx.fail("expected a number");
    Z num(lx.next().text);
    Z den(1);
    if (lx.accept("/")) {
        if (lx.peek().kind != Token::Kind::Int) lx.fail("expected a denominator");
        den = Z(lx.next().text);
        if (den == 0) lx.fail("zero denominator");
    }
    Q q(num, den);
    return neg ? Q(-q) : q;
}

// One additive term: RAT [ "*" VAR [ "^" INT ] ] | VAR [ "^" INT ].
RingElement parse_term(Lexer& lx, const RingSpec& ring) {
    Q coef(1);
    bool have_coef = false;
    if (lx.peek().kind == Token::Kind::Int ||
        (lx.peek().kind == Token::Kind::Punct && lx.peek().text == "-")) {
        coef = parse_rational(lx);
        have_coef = true;
        if (!lx.accept("*")) return RingElement(ring, coef);
    }
    if (lx.peek().kind != Token::Kind::Ident)
        lx.fail(have_coef ? "expected the ring variable after '*'" : "expected an entry");
    std::string var = lx.ident();
    if (ring.kind != RingSpec::Kind::Laurent || var != ring.var)
        lx.fail("'" + var + "' is not the variable of the ring " + ring.str());
    long e = 1;
    if (lx.accept("^")) e = lx.integer();
    if (!ring.admits_exponent(e))
        lx.fail("exponent " + std::to_string(e) + " is illegal in " + ring.str());
    return RingElement::monomial(ring, e, coef);
}

RingElement parse_entry(Lexer& lx, const RingSpec& ring) {
    RingElement out = parse_term(lx, ring);
    for (;;) {
        if (lx.accept("+")) {
            out = out + parse_term(lx, ring);
        } else if (lx.peek().kind == Token::Kind::Punct && lx.peek().text == "-") {
            // A '-' opens the next (negated) term; parse_term consumes it.
            out = out + parse_term(lx, ring);
        } else {
            return out;
        }
    }
}

// Matrix with a fixed expected shape; "[]" and empty rows are legal when the
// corresponding dimension is zero.
RingMatrix parse_matrix(Lexer& lx, const RingSpec& ring, std::size_t rows, std::size_t cols) {
    RingMatrix m(ring, rows, cols);
    lx.expect("[");
    std::size_t r = 0;
    if (!lx.accept("]")) {
        do {
            if (r >= rows) lx.fail("matrix has more than " + std::to_string(rows) + " rows");
            lx.expect("[");
            std::size_t c = 0;
            if (!lx.accept("]")) {
                do {
                    if (c >= cols) lx.fail("row has more than " + std::to_string(cols) + " entries");
                    m.at(r, c) = parse_entry(lx, ring);
                    ++c;
                } while (lx.accept(","));
                lx.expect("]");
            }
            if (c != cols)
                lx.fail("row has " + std::to_string(c) + " entries, expected " +
                        std::to_string(cols));
            ++r;
        } while (lx.accept(","));
        lx.expect("]");
    }
    if (r != rows)
        lx.fail("matrix has " + std::to_string(r) + " rows, expected " + std::to_string(rows));
    return m;
}

// Matrix with known row count but free column count (relation matrices).
RingMatrix parse_relation_matrix(Lexer& lx, const RingSpec& ring, std::size_t rows) {
    std::vector<std::vector<RingElement>> data;
    lx.expect("[");
    if (!lx.accept("]")) {
        do {
            lx.expect("[");
            std::vector<RingElement> row;
            if (!lx.accept("]")) {
                do row.push_back(parse_entry(lx, ring));
                while (lx.accept(","));
                lx.expect("]");
            }
            data.push_back(std::move(row));
        } while (lx.accept(","));
        lx.expect("]");
    }
    if (data.size() != rows)
        lx.fail("relation matrix has " + std::to_string(data.size()) + " rows, expected " +
                std::to_string(rows));
    std::size_t cols = data.empty() ? 0 : data[0].size();
    for (const auto& row : data)
        if (row.size() != cols) lx.fail("ragged relation matrix");
    RingMatrix m(ring, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = data[i][j];
    return m;
}

QMat to_qmat(const RingMatrix& m) {
    QMat q(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) q.at(i, j) = m.at(i, j).coeff(0);
    return q;
}

// ---------------------------------------------------------------------------
// Definitions
// ---------------------------------------------------------------------------

class Parser {
public:
    Parser(const std::string& text, const std::string& file) : lx_(text, file) {}

    Workspace run() {
        while (lx_.peek().kind != Token::Kind::End) {
            std::size_t line = lx_.line();
            std::string kw = lx_.ident();
            if (kw == "poset")
                parse_poset(line);
            else if (kw == "ringrep")
                parse_ringrep(line);
            else if (kw == "module")
                parse_module(line);
            else if (kw == "morphism")
                parse_morphism(line);
            else if (kw == "complex")
                parse_complex(line);
            else if (kw == "triple")
                parse_triple(line);
            else
                lx_.fail("unknown definition keyword '" + kw + "'");
        }
        return std::move(ws_);
    }

private:
    Lexer lx_;
    Workspace ws_;

    std::string def_name(std::size_t line) {
        std::string name = lx_.ident();
        if (ws_.has(name))
            throw QcwError(QcwError::Kind::Reference, lx_.file(), line,
                           "'" + name + "' is already defined at line " +
                               std::to_string(ws_.where.at(name).line));
        ws_.where[name] = {lx_.file(), line};
        ws_.order.push_back(name);
        return name;
    }

    [[noreturn]] void invalid(std::size_t line, const std::string& msg) {
        throw QcwError(QcwError::Kind::Validation, lx_.file(), line, msg);
    }
    [[noreturn]] void unknown(std::size_t line, const std::string& what, const std::string& name) {
        throw QcwError(QcwError::Kind::Reference, lx_.file(), line,
                       "unknown " + what + " '" + name + "'");
    }

    const FinitePoset& poset_ref(const std::string& name, std::size_t line) {
        auto it = ws_.posets.find(name);
        if (it == ws_.posets.end()) unknown(line, "poset", name);
        return it->second;
    }
    RingRepPtr ringrep_ref(const std::string& name, std::size_t line) {
        auto it = ws_.ringreps.find(name);
        if (it == ws_.ringreps.end()) unknown(line, "ringrep", name);
        return it->second;
    }
    const DiagModule& module_ref(const std::string& name, std::size_t line) {
        auto it = ws_.modules.find(name);
        if (it == ws_.modules.end()) unknown(line, "module", name);
        return it->second;
    }

    std::size_t vertex_ref(const FinitePoset& p, std::size_t line) {
        std::string label = lx_.ident();
        for (std::size_t i = 0; i < p.size(); ++i)
            if (p.label(i) == label) return i;
        unknown(line, "poset element", label);
    }

    void parse_poset(std::size_t line) {
        std::string name = def_name(line);
        lx_.expect("{");
        lx_.expect_word("elements");
        lx_.expect(":");
        std::vector<std::string> labels;
        while (lx_.peek().kind == Token::Kind::Ident) labels.push_back(lx_.ident());
        lx_.expect(";");
        lx_.expect_word("relations");
        lx_.expect(":");
        std::vector<std::pair<std::string, std::string>> rels;
        while (lx_.peek().kind == Token::Kind::Ident) {
            std::string a = lx_.ident();
            lx_.expect("<=");
            std::string b = lx_.ident();
            rels.emplace_back(std::move(a), std::move(b));
        }
        lx_.expect(";");
        lx_.expect("}");
        try {
            ws_.posets.emplace(name, FinitePoset(std::move(labels), std::move(rels)));
        } catch (const Error& e) {
            invalid(line, std::string("invalid poset: ") + e.what());
        }
    }

    RingSpec parse_ringspec() {
        std::size_t line = lx_.line();
        std::string kw = lx_.ident();
        if (kw == "field") return RingSpec::field();
        if (kw == "poly" || kw == "ipoly" || kw == "laurent") {
            lx_.expect("(");
            std::string var = lx_.ident();
            lx_.expect(")");
            if (kw == "poly") return RingSpec::poly(var);
            if (kw == "ipoly") return RingSpec::ipoly(var);
            return RingSpec::laurent(var);
        }
        if (kw == "opaque") {
            lx_.expect("(");
            if (lx_.peek().kind != Token::Kind::String) lx_.fail("expected a quoted label");
            std::string label = lx_.next().text;
            lx_.expect(")");
            return RingSpec::opaque(label);
        }
        throw QcwError(QcwError::Kind::Syntax, lx_.file(), line, "unknown ring '" + kw + "'");
    }

    void parse_ringrep(std::size_t line) {
        std::string name = def_name(line);
        lx_.expect_word("over");
        std::string pname = lx_.ident();
        const FinitePoset& p = poset_ref(pname, line);
        lx_.expect("{");
        std::vector<RingSpec> rings(p.size());
        std::vector<bool> seen(p.size(), false);
        while (!lx_.accept("}")) {
            std::size_t vline = lx_.line();
            std::size_t v = vertex_ref(p, vline);
            if (seen[v]) invalid(vline, "vertex '" + p.label(v) + "' assigned twice");
            seen[v] = true;
            lx_.expect(":");
            rings[v] = parse_ringspec();
            lx_.expect(";");
        }
        for (std::size_t v = 0; v < p.size(); ++v)
            if (!seen[v]) invalid(line, "vertex '" + p.label(v) + "' has no ring");
        try {
            auto rr = std::make_shared<RingRep>(p, std::move(rings));
            auto issues = rr->validate();
            if (!issues.empty()) invalid(line, "invalid ring diagram: " + issues.front());
            ws_.ringreps.emplace(name, std::move(rr));
            ws_.ringrep_over.emplace(name, pname);
        } catch (const Error& e) {
            invalid(line, std::string("invalid ring diagram: ") + e.what());
        }
    }

    void parse_module(std::size_t line) {
        std::string name = def_name(line);
        lx_.expect_word("over");
        std::string rname = lx_.ident();
        RingRepPtr rr = ringrep_ref(rname, line);
        const FinitePoset& p = rr->poset;
        lx_.expect("{");

        DiagModule m;
        m.rep = rr;
        std::vector<bool> have(p.size(), false);
        m.vertex.resize(p.size());
        std::map<std::pair<std::size_t, std::size_t>, RingMatrix> edges;
        try {
            while (!lx_.accept("}")) {
                std::size_t bline = lx_.line();
                if (lx_.accept_word("vertex")) {
                    std::size_t v = vertex_ref(p, bline);
                    if (have[v]) invalid(bline, "vertex '" + p.label(v) + "' defined twice");
                    have[v] = true;
                    lx_.expect("{");
                    lx_.expect_word("gens");
                    lx_.expect(":");
                    long g = lx_.integer();
                    if (g < 0) lx_.fail("gens must be nonnegative");
                    lx_.expect(";");
                    FPModule fm(rr->ring(v), static_cast<std::size_t>(g));
                    if (lx_.accept_word("grading")) {
                        lx_.expect(":");
                        std::vector<long> gr;
                        for (long k = 0; k < g; ++k) gr.push_back(lx_.integer());
                        lx_.expect(";");
                        fm.grading = std::move(gr);
                    }
                    if (lx_.accept_word("rel")) {
                        lx_.expect(":");
                        fm.rel = parse_relation_matrix(lx_, rr->ring(v),
                                                       static_cast<std::size_t>(g));
                        lx_.expect(";");
                    }
                    lx_.expect("}");
                    m.vertex[v] = std::move(fm);
                } else if (lx_.accept_word("edge")) {
                    std::size_t i = vertex_ref(p, bline);
                    std::size_t j = vertex_ref(p, bline);
                    if (!p.less(i, j))
                        invalid(bline, "'" + p.label(i) + " -> " + p.label(j) +
                                           "' is not a strict poset relation");
                    if (!have[i] || !have[j])
                        invalid(bline, "edges must follow both vertex blocks");
                    lx_.expect(":");
                    edges.insert({{i, j}, parse_matrix(lx_, rr->ring(j), m.vertex[j].gens,
                                                       m.vertex[i].gens)});
                    lx_.expect(";");
                } else {
                    lx_.fail("expected 'vertex' or 'edge'");
                }
            }
            for (std::size_t v = 0; v < p.size(); ++v)
                if (!have[v]) m.vertex[v] = FPModule::zero(rr->ring(v));
            for (auto [i, j] : p.strict_pairs()) {
                auto it = edges.find({i, j});
                m.trans.insert({{i, j}, it != edges.end()
                                            ? it->second
                                            : RingMatrix(rr->ring(j), m.vertex[j].gens,
                                                         m.vertex[i].gens)});
            }
            auto issues = validate(m);
            if (!issues.empty()) invalid(line, "invalid module: " + issues.front());
        } catch (const Error& e) {
            invalid(line, std::string("invalid module: ") + e.what());
        }
        ws_.modules.emplace(name, std::move(m));
        ws_.module_over.emplace(name, rname);
    }

    void parse_morphism(std::size_t line) {
        std::string name = def_name(line);
        lx_.expect(":");
        std::string sname = lx_.ident();
        lx_.expect("->");
        std::string tname = lx_.ident();
        const DiagModule& src = module_ref(sname, line);
        const DiagModule& tgt = module_ref(tname, line);
        if (src.rep != tgt.rep)
            invalid(line, "'" + sname + "' and '" + tname + "' live over different ring diagrams");
        const FinitePoset& p = src.rep->poset;
        lx_.expect("{");
        DiagMorphism f;
        f.src = src;
        f.tgt = tgt;
        try {
            for (std::size_t v = 0; v < p.size(); ++v)
                f.f.push_back(RingMatrix(src.rep->ring(v), tgt.vertex[v].gens, src.vertex[v].gens));
            while (!lx_.accept("}")) {
                std::size_t vline = lx_.line();
                std::size_t v = vertex_ref(p, vline);
                lx_.expect(":");
                f.f[v] = parse_matrix(lx_, src.rep->ring(v), tgt.vertex[v].gens,
                                      src.vertex[v].gens);
                lx_.expect(";");
            }
            std::string why;
            if (!diag_morphism_valid(f, &why)) invalid(line, "invalid morphism: " + why);
        } catch (const Error& e) {
            invalid(line, std::string("invalid morphism: ") + e.what());
        }
        ws_.morphisms.emplace(name, std::move(f));
        ws_.morphism_ends.emplace(name, std::make_pair(sname, tname));
    }

    void parse_complex(std::size_t line) {
        std::string name = def_name(line);
        lx_.expect_word("over");
        std::string rname = lx_.ident();
        RingRepPtr rr = ringrep_ref(rname, line);
        if (!rr->constant_field())
            invalid(line, "complexes require a constant-field ring diagram");
        const FinitePoset& p = rr->poset;
        lx_.expect("{");

        std::map<long, std::string> comps;
        std::map<long, std::vector<QMat>> diffs;
        while (!lx_.accept("}")) {
            std::size_t bline = lx_.line();
            if (lx_.accept_word("degree")) {
                long d = lx_.integer();
                lx_.expect(":");
                std::string mname = lx_.ident();
                lx_.expect(";");
                if (comps.count(d)) invalid(bline, "degree " + std::to_string(d) + " given twice");
                const DiagModule& m = module_ref(mname, bline);
                if (m.rep != rr) invalid(bline, "'" + mname + "' is over a different ring diagram");
                comps.emplace(d, mname);
            } else if (lx_.accept_word("diff")) {
                long d = lx_.integer();
                lx_.expect("{");
                if (!comps.count(d) || !comps.count(d + 1))
                    invalid(bline, "diff " + std::to_string(d) + " needs components in degrees " +
                                       std::to_string(d) + " and " + std::to_string(d + 1));
                Rep from = diag_to_rep(module_ref(comps.at(d), bline));
                Rep to = diag_to_rep(module_ref(comps.at(d + 1), bline));
                std::vector<QMat> mats;
                for (std::size_t v = 0; v < p.size(); ++v) mats.push_back(QMat(to.dims[v], from.dims[v]));
                while (!lx_.accept("}")) {
                    std::size_t vline = lx_.line();
                    std::size_t v = vertex_ref(p, vline);
                    lx_.expect(":");
                    mats[v] = to_qmat(parse_matrix(lx_, RingSpec::field(), to.dims[v], from.dims[v]));
                    lx_.expect(";");
                }
                diffs.emplace(d, std::move(mats));
            } else {
                lx_.fail("expected 'degree' or 'diff'");
            }
        }
        if (comps.empty()) invalid(line, "a complex needs at least one component");
        long lo = comps.begin()->first, hi = comps.rbegin()->first;
        if (static_cast<long>(comps.size()) != hi - lo + 1)
            invalid(line, "component degrees must be contiguous");

        Complex x;
        x.rep = rr;
        x.lo = lo;
        ComplexDef def{rname, lo, {}, {}};
        for (long d = lo; d <= hi; ++d) {
            def.comps.push_back(comps.at(d));
            x.comps.push_back(diag_to_rep(module_ref(comps.at(d), line)));
        }
        for (long d = lo; d < hi; ++d) {
            std::vector<QMat> mats;
            if (auto it = diffs.find(d); it != diffs.end()) {
                mats = it->second;
            } else {
                for (std::size_t v = 0; v < p.size(); ++v)
                    mats.push_back(QMat(x.comps[d + 1 - lo].dims[v], x.comps[d - lo].dims[v]));
            }
            x.diffs.push_back(RepMor{x.comps[d - lo], x.comps[d + 1 - lo], mats});
            def.diffs.push_back(std::move(mats));
        }
        if (!x.valid())
            invalid(line, "invalid complex: differentials do not commute or d^2 != 0");
        ws_.complexes.emplace(name, std::move(x));
        ws_.complex_defs.emplace(name, std::move(def));
    }

    void parse_triple(std::size_t line) {
        std::string name = def_name(line);
        lx_.expect_word("over");
        std::string rname = lx_.ident();
        RingRepPtr rr = ringrep_ref(rname, line);
        if (!rr->constant_field())
            invalid(line, "triples require a constant-field ring diagram");
        lx_.expect("{");
        lx_.expect_word("kind");
        lx_.expect(":");
        std::size_t kline = lx_.line();
        std::string kind = lx_.ident();
        lx_.expect(";");
        TripleDef def;
        def.over = rname;
        if (kind == "injective")
            def.kind = TripleDef::Kind::Injective;
        else if (kind == "projective")
            def.kind = TripleDef::Kind::Projective;
        else if (kind == "complex_injective")
            def.kind = TripleDef::Kind::ComplexInjective;
        else
            invalid(kline, "unknown triple kind '" + kind + "'");
        if (lx_.accept_word("against")) {
            lx_.expect(":");
            while (lx_.peek().kind == Token::Kind::Ident) {
                std::size_t mline = lx_.line();
                std::string mname = lx_.ident();
                const DiagModule& m = module_ref(mname, mline);
                if (m.rep != rr) invalid(mline, "'" + mname + "' is over a different ring diagram");
                def.against.push_back(std::move(mname));
            }
            lx_.expect(";");
        }
        lx_.expect("}");
        if (def.against.empty())
            invalid(line, "a triple needs a nonempty 'against' list of modules");
        ws_.triples.emplace(name, std::move(def));
    }
};

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

std::string q_text(const Q& q) { return q.str(); }

std::string term_text(long e, const Q& c, const std::string& var) {
    if (e == 0) return q_text(c);
    std::string xp = var + (e == 1 ? "" : "^" + std::to_string(e));
    if (c == 1) return xp;
    if (c == -1) return "-" + xp;
    return q_text(c) + "*" + xp;
}

std::string entry_text(const RingElement& x) {
    if (x.is_zero()) return "0";
    std::string out;
    for (const auto& [e, c] : x.coeffs()) {
        if (out.empty())
            out = term_text(e, c, x.ring().var);
        else if (c < 0)
            out += " - " + term_text(e, Q(-c), x.ring().var);
        else
            out += " + " + term_text(e, c, x.ring().var);
    }
    return out;
}

std::string matrix_text(const RingMatrix& m) {
    std::string out = "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        out += i ? ", [" : "[";
        for (std::size_t j = 0; j < m.cols(); ++j)
            out += (j ? ", " : "") + entry_text(m.at(i, j));
        out += "]";
    }
    return out + "]";
}

std::string qmat_text(const QMat& m) {
    std::string out = "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        out += i ? ", [" : "[";
        for (std::size_t j = 0; j < m.cols(); ++j) out += (j ? ", " : "") + q_text(m.at(i, j));
        out += "]";
    }
    return out + "]";
}

std::string ringspec_text(const RingSpec& r) {
    switch (r.kind) {
    case RingSpec::Kind::Field: return "field";
    case RingSpec::Kind::Opaque: return "opaque(\"" + r.label + "\")";
    case RingSpec::Kind::Laurent:
        switch (r.window) {
        case Window::NonNeg: return "poly(" + r.var + ")";
        case Window::NonPos: return "ipoly(" + r.var + ")";
        case Window::Full: return "laurent(" + r.var + ")";
        }
    }
    return "field";
}

void serialize_one(std::ostream& os, const Workspace& w, const std::string& name) {
    if (auto it = w.posets.find(name); it != w.posets.end()) {
        const FinitePoset& p = it->second;
        os << "poset " << name << " {\n  elements:";
        for (std::size_t i = 0; i < p.size(); ++i) os << " " << p.label(i);
        os << ";\n  relations:";
        for (auto [i, j] : p.strict_pairs()) os << " " << p.label(i) << " <= " << p.label(j);
        os << ";\n}\n";
        return;
    }
    if (auto it = w.ringreps.find(name); it != w.ringreps.end()) {
        const RingRep& r = *it->second;
        os << "ringrep " << name << " over " << w.ringrep_over.at(name) << " {\n";
        for (std::size_t v = 0; v < r.poset.size(); ++v)
            os << "  " << r.poset.label(v) << ": " << ringspec_text(r.ring(v)) << ";\n";
        os << "}\n";
        return;
    }
    if (auto it = w.modules.find(name); it != w.modules.end()) {
        const DiagModule& m = it->second;
        const FinitePoset& p = m.rep->poset;
        os << "module " << name << " over " << w.module_over.at(name) << " {\n";
        for (std::size_t v = 0; v < p.size(); ++v) {
            const FPModule& fm = m.vertex[v];
            os << "  vertex " << p.label(v) << " { gens: " << fm.gens << ";";
            if (fm.grading) {
                os << " grading:";
                for (long g : *fm.grading) os << " " << g;
                os << ";";
            }
            if (fm.rel.cols() > 0) os << " rel: " << matrix_text(fm.rel) << ";";
            os << " }\n";
        }
        for (auto [i, j] : p.strict_pairs())
            if (m.vertex[i].gens > 0 && m.vertex[j].gens > 0)
                os << "  edge " << p.label(i) << " " << p.label(j) << ": "
                   << matrix_text(m.transition(i, j)) << ";\n";
        os << "}\n";
        return;
    }
    if (auto it = w.morphisms.find(name); it != w.morphisms.end()) {
        const DiagMorphism& f = it->second;
        const auto& ends = w.morphism_ends.at(name);
        const FinitePoset& p = f.src.rep->poset;
        os << "morphism " << name << " : " << ends.first << " -> " << ends.second << " {\n";
        for (std::size_t v = 0; v < p.size(); ++v)
            if (f.src.vertex[v].gens > 0 && f.tgt.vertex[v].gens > 0)
                os << "  " << p.label(v) << ": " << matrix_text(f.f[v]) << ";\n";
        os << "}\n";
        return;
    }
    if (auto it = w.complex_defs.find(name); it != w.complex_defs.end()) {
        const ComplexDef& d = it->second;
        const FinitePoset& p = w.ringreps.at(d.over)->poset;
        os << "complex " << name << " over " << d.over << " {\n";
        for (std::size_t k = 0; k < d.comps.size(); ++k)
            os << "  degree " << d.lo + static_cast<long>(k) << ": " << d.comps[k] << ";\n";
        for (std::size_t k = 0; k < d.diffs.size(); ++k) {
            bool nonzero = false;
            for (const QMat& m : d.diffs[k]) nonzero = nonzero || !m.is_zero();
            if (!nonzero) continue;
            os << "  diff " << d.lo + static_cast<long>(k) << " {\n";
            for (std::size_t v = 0; v < p.size(); ++v)
                if (d.diffs[k][v].rows() > 0 && d.diffs[k][v].cols() > 0)
                    os << "    " << p.label(v) << ": " << qmat_text(d.diffs[k][v]) << ";\n";
            os << "  }\n";
        }
        os << "}\n";
        return;
    }
    if (auto it = w.triples.find(name); it != w.triples.end()) {
        const TripleDef& t = it->second;
        os << "triple " << name << " over " << t.over << " {\n  kind: ";
        switch (t.kind) {
        case TripleDef::Kind::Injective: os << "injective"; break;
        case TripleDef::Kind::Projective: os << "projective"; break;
        case TripleDef::Kind::ComplexInjective: os << "complex_injective"; break;
        }
        os << ";\n  against:";
        for (const auto& m : t.against) os << " " << m;
        os << ";\n}\n";
        return;
    }
    throw Error(ErrorKind::Internal, "serialize: name '" + name + "' has no definition");
}

} // namespace

Workspace parse_qcw(const std::string& text, const std::string& filename) {
    return Parser(text, filename).run();
}

std::string serialize(const Workspace& w) {
    std::ostringstream os;
    bool first = true;
    for (const auto& name : w.order) {
        if (!first) os << "\n";
        first = false;
        serialize_one(os, w, name);
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

namespace {

void node_text(std::ostream& os, const Report::Node& n, int indent) {
    std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    if (n.children.empty()) {
        os << pad << n.key << ": " << n.value << ";\n";
        return;
    }
    os << pad << n.key << " {\n";
    for (const auto& c : n.children) node_text(os, c, indent + 1);
    os << pad << "}\n";
}

} // namespace

std::string Report::str() const {
    std::ostringstream os;
    os << "report {\n";
    os << "  command: " << command << ";\n";
    os << "  status: " << status << ";\n";
    os << "  exit: " << exit_code << ";\n";
    if (!result.children.empty()) node_text(os, result, 1);
    if (!warnings.empty()) {
        os << "  warnings {\n";
        for (const auto& w : warnings) os << "    warning: " << w << ";\n";
        os << "  }\n";
    }
    os << "}\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// Command dispatch
// ---------------------------------------------------------------------------

namespace {

[[noreturn]] void usage(const std::string& msg) {
    throw QcwError(QcwError::Kind::Syntax, "<args>", 0, msg);
}
[[noreturn]] void missing(const std::string& what, const std::string& name) {
    throw QcwError(QcwError::Kind::Reference, "<args>", 0, "unknown " + what + " '" + name + "'");
}

const DiagModule& need_module(const Workspace& ws, const std::string& name) {
    auto it = ws.modules.find(name);
    if (it == ws.modules.end()) missing("module", name);
    return it->second;
}
const DiagMorphism& need_morphism(const Workspace& ws, const std::string& name) {
    auto it = ws.morphisms.find(name);
    if (it == ws.morphisms.end()) missing("morphism", name);
    return it->second;
}
const Complex& need_complex(const Workspace& ws, const std::string& name) {
    auto it = ws.complexes.find(name);
    if (it == ws.complexes.end()) missing("complex", name);
    return it->second;
}
const TripleDef& need_triple(const Workspace& ws, const std::string& name) {
    auto it = ws.triples.find(name);
    if (it == ws.triples.end()) missing("triple", name);
    return it->second;
}

Rep need_rep(const Workspace& ws, const std::string& name) {
    const DiagModule& m = need_module(ws, name);
    if (!m.rep->constant_field())
        throw Error(ErrorKind::UnsupportedRing,
                    "'" + name + "' is not over a constant-field diagram");
    return diag_to_rep(m);
}
RepMor need_rep_mor(const Workspace& ws, const std::string& name) {
    const DiagMorphism& f = need_morphism(ws, name);
    if (!f.src.rep->constant_field())
        throw Error(ErrorKind::UnsupportedRing,
                    "'" + name + "' is not over a constant-field diagram");
    return diag_to_rep_mor(f);
}

std::vector<Rep> reps_of(const Workspace& ws, const std::vector<std::string>& names) {
    std::vector<Rep> out;
    for (const auto& n : names) out.push_back(need_rep(ws, n));
    return out;
}

std::string yn(bool b) { return b ? "yes" : "no"; }

std::string dims_text(const Rep& x) {
    std::string s = "dims(";
    for (std::size_t i = 0; i < x.dims.size(); ++i)
        s += (i ? "," : "") + std::to_string(x.dims[i]);
    return s + ")";
}

std::string cpx_text(const Complex& x) {
    std::string s = "cpx(lo=" + std::to_string(x.lo) + ";";
    for (const auto& c : x.comps) s += " " + std::to_string(c.qdim());
    return s + ")";
}

// The two module-level Hovey triples the CLI exposes: (Proj, all, all) and
// (all, all, Inj), with class membership decided against a finite test set.
struct ModulePairSet {
    std::shared_ptr<std::vector<Rep>> set;

    bool is_proj(const Rep& u) const {
        for (const auto& s : *set)
            if (ext1<RepCat>(u, s).dim != 0) return false;
        return true;
    }
    bool is_inj(const Rep& u) const {
        for (const auto& s : *set)
            if (ext1<RepCat>(s, u).dim != 0) return false;
        return true;
    }
};

CotorsionPair<RepCat> proj_pair(const ModulePairSet& ps) {
    CotorsionPair<RepCat> p;
    p.left = [ps](const Rep& u) { return ps.is_proj(u); };
    p.right = [](const Rep&) { return true; };
    p.first = [](const Rep& x) {
        return Conflation<RepCat>{rep_id(x), rep_zero_mor(x, rep_zero(x.rep))};
    };
    p.second = [](const Rep& x) {
        auto pres = rep_presentation(x);
        return Conflation<RepCat>{pres.ker_incl, pres.epi};
    };
    return p;
}

CotorsionPair<RepCat> inj_pair(const ModulePairSet& ps, std::size_t budget) {
    return cotorsion_pair_from_set<RepCat>(
        *ps.set, [](const Rep&) { return true; },
        [ps](const Rep& u) { return ps.is_inj(u); }, budget);
}

CotorsionPair<RepCat> pair_for(const std::string& kind, const ModulePairSet& ps,
                               std::size_t budget) {
    if (kind == "projective") return proj_pair(ps);
    if (kind == "injective") return inj_pair(ps, budget);
    usage("--pair must be 'projective' or 'injective'");
}

HoveyTriple<RepCat> module_triple(const TripleDef& def, const ModulePairSet& ps,
                                  std::size_t budget) {
    HoveyTriple<RepCat> t;
    t.weq = [](const Rep&) { return true; };
    if (def.kind == TripleDef::Kind::Projective) {
        t.cof = [ps](const Rep& u) { return ps.is_proj(u); };
        t.fib = [](const Rep&) { return true; };
        t.ctf = t.tcf = proj_pair(ps);
    } else {
        t.cof = [](const Rep&) { return true; };
        t.fib = [ps](const Rep& u) { return ps.is_inj(u); };
        t.ctf = t.tcf = inj_pair(ps, budget);
    }
    return t;
}

ModulePairSet pair_set(const Workspace& ws, const std::vector<std::string>& names) {
    if (names.empty()) usage("this command needs a nonempty --universe list of modules");
    return ModulePairSet{std::make_shared<std::vector<Rep>>(reps_of(ws, names))};
}

// Module morphism as a chain map of spheres in degree zero.
CpxMor sphere_mor(const RepMor& f) {
    return CpxMor{sphere(f.src, 0), sphere(f.tgt, 0), {f}};
}

Complex as_complex(const Workspace& ws, const std::string& name) {
    if (ws.complexes.count(name)) return ws.complexes.at(name);
    return sphere(need_rep(ws, name), 0);
}

void add_items(Report& r, const CheckReport& cr) {
    for (const auto& it : cr.items) {
        auto& n = r.result.add("check");
        n.add("name", it.name);
        n.add("status", it.pass ? "pass" : "fail");
        if (!it.pass && !it.witness.empty()) n.add("witness", it.witness);
    }
    if (!cr.ok()) {
        r.status = "no";
        r.exit_code = 1;
    }
}

std::vector<std::size_t> cover_of(const Workspace& ws, const DiagModule& m,
                                  const std::vector<std::string>& labels) {
    if (labels.empty()) usage("this command needs a --cover list of poset elements");
    std::vector<std::size_t> out;
    for (const auto& l : labels) out.push_back(m.rep->poset.index(l));
    return out;
}

void cmd_validate(Report& r, const std::vector<std::string>& args, const Workspace& ws) {
    std::vector<std::string> names = args.empty() ? ws.order : args;
    for (const auto& name : names) {
        if (!ws.has(name)) missing("definition", name);
        std::string verdict = "ok";
        if (ws.ringreps.count(name)) {
            auto issues = ws.ringreps.at(name)->validate();
            if (!issues.empty()) verdict = issues.front();
        } else if (ws.modules.count(name)) {
            auto issues = validate(ws.modules.at(name));
            if (!issues.empty()) verdict = issues.front();
        } else if (ws.morphisms.count(name)) {
            std::string why;
            if (!diag_morphism_valid(ws.morphisms.at(name), &why)) verdict = why;
        } else if (ws.complexes.count(name)) {
            if (!ws.complexes.at(name).valid()) verdict = "differentials fail d^2 = 0";
        }
        r.result.add(name, verdict);
        if (verdict != "ok") {
            r.status = "no";
            r.exit_code = 1;
        }
    }
}

void cmd_qcheck(Report& r, const std::vector<std::string>& args, const Workspace& ws) {
    if (args.size() != 1) usage("qcheck MODULE");
    const DiagModule& m = need_module(ws, args[0]);
    QcohReport q = is_quasicoherent(m);
    r.result.add("quasicoherent", yn(q.quasicoherent));
    if (!q.quasicoherent) {
        if (q.failing_edge) {
            const auto& p = m.rep->poset;
            r.result.add("failing_edge",
                         p.label(q.failing_edge->first) + " <= " + p.label(q.failing_edge->second));
        }
        r.status = "no";
        r.exit_code = 1;
    }
}

void cmd_hom(Report& r, const std::vector<std::string>& args, const Workspace& ws,
             const RunOptions& opt) {
    if (args.size() != 2) usage("hom A B");
    if (ws.complexes.count(args[0]) || ws.complexes.count(args[1])) {
        r.result.add("dim",
                     std::to_string(cpx_hom(need_complex(ws, args[0]), need_complex(ws, args[1]))
                                        .size()));
        return;
    }
    auto basis = hom_space(need_module(ws, args[0]), need_module(ws, args[1]), opt.window);
    r.result.add("dim", std::to_string(basis.size()));
}

void cmd_ext(Report& r, const std::vector<std::string>& args, const Workspace& ws,
             const RunOptions& opt) {
    if (args.size() != 2) usage("ext A B [--n K]");
    if (opt.ext_degree < 0) usage("--n must be nonnegative");
    auto n = static_cast<std::size_t>(opt.ext_degree);
    std::size_t dim;
    if (ws.complexes.count(args[0]) || ws.complexes.count(args[1])) {
        Complex x = as_complex(ws, args[0]), y = as_complex(ws, args[1]);
        dim = n == 1 ? ext1<CpxCat>(x, y).dim : extn<CpxCat>(x, y, n);
    } else {
        Rep x = need_rep(ws, args[0]), y = need_rep(ws, args[1]);
        dim = n == 1 ? ext1<RepCat>(x, y).dim : extn<RepCat>(x, y, n);
    }
    r.result.add("n", std::to_string(n));
    r.result.add("dim", std::to_string(dim));
}

void cmd_lift(Report& r, const std::vector<std::string>& args, const Workspace& ws) {
    if (args.size() != 4) usage("lift F G U V  (square g.u = v.f, filler sought for f vs g)");
    RepMor f = need_rep_mor(ws, args[0]), g = need_rep_mor(ws, args[1]);
    RepMor u = need_rep_mor(ws, args[2]), v = need_rep_mor(ws, args[3]);
    auto filler = lifting<RepCat>(f, g, u, v);
    r.result.add("filler", yn(filler.has_value()));
    if (!filler) {
        r.status = "no";
        r.exit_code = 1;
    }
}

void cmd_factorize(Report& r, const std::vector<std::string>& args, const Workspace& ws,
                   const RunOptions& opt) {
    if (args.size() != 1 || !opt.pair) usage("factorize H --pair KIND --universe A,B,...");
    RepMor h = need_rep_mor(ws, args[0]);
    ModulePairSet ps = pair_set(ws, opt.universe);
    auto pair = pair_for(*opt.pair, ps, opt.budget);
    auto fac = factorize_by_pair<RepCat>(h, pair);
    bool composite_ok =
        rep_mor_coords(rep_compose(fac.g, fac.f)) == rep_mor_coords(h);
    r.result.add("inflation", yn(fac.f.vertexwise_mono()));
    r.result.add("deflation", yn(fac.g.vertexwise_epi()));
    r.result.add("composite_matches", yn(composite_ok));
    r.result.add("middle", dims_text(fac.f.tgt));
    auto& ck = r.result.add("coker_f", dims_text(fac.coker_f));
    ck.add("in_left_class", yn(pair.left(fac.coker_f)));
    auto& kg = r.result.add("ker_g", dims_text(fac.ker_g));
    kg.add("in_right_class", yn(pair.right(fac.ker_g)));
}

void cmd_approx(Report& r, const std::vector<std::string>& args, const Workspace& ws,
                const RunOptions& opt) {
    if (args.size() != 1 || !opt.pair) usage("approx X --pair KIND --universe A,B,...");
    Rep x = need_rep(ws, args[0]);
    ModulePairSet ps = pair_set(ws, opt.universe);
    auto pair = pair_for(*opt.pair, ps, opt.budget);
    auto fst = pair.first(x);
    auto snd = pair.second(x);
    auto& f = r.result.add("first", "X -> B_X -> A_X");
    f.add("valid", yn(conflation_valid<RepCat>(fst)));
    f.add("B", dims_text(fst.i.tgt));
    f.add("A", dims_text(fst.d.tgt));
    f.add("B_in_right", yn(pair.right(fst.i.tgt)));
    f.add("A_in_left", yn(pair.left(fst.d.tgt)));
    auto& s = r.result.add("second", "B^X -> A^X -> X");
    s.add("valid", yn(conflation_valid<RepCat>(snd)));
    s.add("B", dims_text(snd.i.src));
    s.add("A", dims_text(snd.d.src));
    s.add("B_in_right", yn(pair.right(snd.i.src)));
    s.add("A_in_left", yn(pair.left(snd.d.src)));
}

void cmd_pair_check(Report& r, const std::vector<std::string>&, const Workspace& ws,
                    const RunOptions& opt) {
    if (!opt.pair) usage("pair-check --pair KIND --universe A,B,...");
    ModulePairSet ps = pair_set(ws, opt.universe);
    auto pair = pair_for(*opt.pair, ps, opt.budget);
    CheckReport cr;
    model_detail::check_pair<RepCat>(cr, *opt.pair, pair, *ps.set, dims_text);
    add_items(r, cr);
}

void cmd_triple_verify(Report& r, const std::vector<std::string>& args, const Workspace& ws,
                       const RunOptions& opt) {
    if (args.size() != 1) usage("triple-verify TRIPLE --universe A,B,...");
    const TripleDef& def = need_triple(ws, args[0]);
    if (opt.universe.empty()) usage("triple-verify needs a --universe list");
    if (def.kind == TripleDef::Kind::ComplexInjective) {
        auto t = cpx_injective_triple(reps_of(ws, def.against), opt.budget);
        std::vector<Complex> universe;
        for (const auto& n : opt.universe) universe.push_back(as_complex(ws, n));
        add_items(r, verify_triple<CpxCat>(t, universe, cpx_text));
    } else {
        ModulePairSet ps{std::make_shared<std::vector<Rep>>(reps_of(ws, def.against))};
        auto t = module_triple(def, ps, opt.budget);
        add_items(r, verify_triple<RepCat>(t, reps_of(ws, opt.universe), dims_text));
    }
}

void cmd_classify(Report& r, const std::vector<std::string>& args, const Workspace& ws,
                  const RunOptions& opt) {
    if (args.size() != 1 || !opt.triple) usage("classify H --triple T");
    const TripleDef& def = need_triple(ws, *opt.triple);
    RepMor h = need_rep_mor(ws, args[0]);
    auto emit = [&r](bool cof, bool tcof, bool fib, bool tfib, bool weq) {
        r.result.add("cofibration", yn(cof));
        r.result.add("trivial_cofibration", yn(tcof));
        r.result.add("fibration", yn(fib));
        r.result.add("trivial_fibration", yn(tfib));
        r.result.add("weak_equivalence", yn(weq));
    };
    if (def.kind == TripleDef::Kind::ComplexInjective) {
        auto t = cpx_injective_triple(reps_of(ws, def.against), opt.budget);
        auto c = classify<CpxCat>(sphere_mor(h), t);
        emit(c.cofibration, c.trivial_cofibration, c.fibration, c.trivial_fibration,
             c.weak_equivalence);
    } else {
        ModulePairSet ps{std::make_shared<std::vector<Rep>>(reps_of(ws, def.against))};
        auto t = module_triple(def, ps, opt.budget);
        auto c = classify<RepCat>(h, t);
        emit(c.cofibration, c.trivial_cofibration, c.fibration, c.trivial_fibration,
             c.weak_equivalence);
    }
}

void cmd_homotopic(Report& r, const std::vector<std::string>& args, const Workspace& ws,
                   const RunOptions& opt) {
    if (args.size() != 2 || !opt.triple) usage("homotopic F G --triple T");
    const TripleDef& def = need_triple(ws, *opt.triple);
    HomotopyKind k;
    if (def.kind == TripleDef::Kind::ComplexInjective) {
        auto t = cpx_injective_triple(reps_of(ws, def.against), opt.budget);
        k = homotopic<CpxCat>(sphere_mor(need_rep_mor(ws, args[0])),
                              sphere_mor(need_rep_mor(ws, args[1])), t);
    } else {
        ModulePairSet ps{std::make_shared<std::vector<Rep>>(reps_of(ws, def.against))};
        auto t = module_triple(def, ps, opt.budget);
        k = homotopic<RepCat>(need_rep_mor(ws, args[0]), need_rep_mor(ws, args[1]), t);
    }
    const char* text = k == HomotopyKind::Both     ? "both"
                       : k == HomotopyKind::Left   ? "left"
                       : k == HomotopyKind::Right  ? "right"
                                                   : "neither";
    r.result.add("homotopic", text);
    if (k == HomotopyKind::Neither) {
        r.status = "no";
        r.exit_code = 1;
    }
}

void cmd_ho_hom(Report& r, const std::vector<std::string>& args, const Workspace& ws,
                const RunOptions& opt) {
    if (args.size() != 2 || !opt.triple) usage("ho-hom X Y --triple T");
    const TripleDef& def = need_triple(ws, *opt.triple);
    std::size_t dim;
    if (def.kind == TripleDef::Kind::ComplexInjective) {
        auto t = cpx_injective_triple(reps_of(ws, def.against), opt.budget);
        dim = homotopy_hom<CpxCat>(as_complex(ws, args[0]), as_complex(ws, args[1]), t).dim;
    } else {
        ModulePairSet ps{std::make_shared<std::vector<Rep>>(reps_of(ws, def.against))};
        auto t = module_triple(def, ps, opt.budget);
        dim = homotopy_hom<RepCat>(need_rep(ws, args[0]), need_rep(ws, args[1]), t).dim;
    }
    r.result.add("dim", std::to_string(dim));
}

void cmd_cech(Report& r, const std::vector<std::string>& args, const Workspace& ws,
              const RunOptions& opt) {
    if (args.size() != 1) usage("cech MODULE --cover u0,u1,...");
    const DiagModule& m = need_module(ws, args[0]);
    SemilatticeRep s = make_semilattice(m.rep);
    CechComplex c = cech_resolution(s, m, cover_of(ws, m, opt.cover));
    r.result.add("length", std::to_string(c.length()));
    auto issues = cech_certificate(c);
    r.result.add("certified_exact", yn(issues.empty()));
    for (const auto& v : issues) r.result.add("violation", v);
    if (!issues.empty()) {
        r.status = "no";
        r.exit_code = 1;
    }
}

void cmd_cohomology(Report& r, const std::vector<std::string>& args, const Workspace& ws,
                    const RunOptions& opt) {
    if (args.size() != 1) usage("cohomology MODULE --cover u0,u1,... [--window LO..HI]");
    const DiagModule& m = need_module(ws, args[0]);
    SemilatticeRep s = make_semilattice(m.rep);
    std::optional<std::pair<long, long>> window;
    if (opt.window) window = {opt.window->lo, opt.window->hi};
    CohomologyTable t = cohomology(s, m, cover_of(ws, m, opt.cover), window);
    r.result.add("lo", std::to_string(t.lo));
    r.result.add("hi", std::to_string(t.hi));
    r.result.add("stable", yn(t.stable));
    if (!t.stable) r.warnings.push_back("boundary grades carry cohomology; widen the window");
    for (std::size_t p = 0; p < t.h.size(); ++p) {
        std::string grades;
        for (std::size_t k = 0; k < t.h[p].size(); ++k)
            grades += (k ? " " : "") + std::to_string(t.h[p][k]);
        auto& n = r.result.add("h" + std::to_string(p), std::to_string(t.total(p)));
        n.add("grades", grades);
    }
}

void cmd_tensor(Report& r, const std::vector<std::string>& args, const Workspace& ws) {
    if (args.size() != 2) usage("tensor A B");
    if (ws.complexes.count(args[0]) || ws.complexes.count(args[1])) {
        CpxTensor t =
            tensor_complexes(need_complex(ws, args[0]), need_complex(ws, args[1]));
        r.result.add("lo", std::to_string(t.obj.lo));
        r.result.add("hi", std::to_string(t.obj.hi()));
        std::string dims;
        for (std::size_t k = 0; k < t.obj.comps.size(); ++k)
            dims += (k ? " " : "") + std::to_string(t.obj.comps[k].qdim());
        r.result.add("qdims", dims);
        r.result.add("valid", yn(t.obj.valid()));
        return;
    }
    DiagModule t = diag_tensor(need_module(ws, args[0]), need_module(ws, args[1]));
    const auto& p = t.rep->poset;
    for (std::size_t v = 0; v < p.size(); ++v)
        r.result.add("gens_" + p.label(v), std::to_string(t.vertex[v].gens));
    r.result.add("quasicoherent", yn(is_quasicoherent(t).quasicoherent));
}

void cmd_pushout_product(Report& r, const std::vector<std::string>& args, const Workspace& ws) {
    if (args.size() != 2) usage("pushout-product F G");
    CpxMor f = sphere_mor(need_rep_mor(ws, args[0]));
    CpxMor g = sphere_mor(need_rep_mor(ws, args[1]));
    // Injective model structure: every object is cofibrant.
    add_items(r, quillen_bifunctor_check(f, g, [](const Complex&) { return true; }));
}

void cmd_bundle_check(Report& r, const std::vector<std::string>& args, const Workspace& ws,
                      const RunOptions& opt) {
    if (args.size() != 1) usage("bundle-check MODULE [--twists n1,n2] [--window LO..HI]");
    const DiagModule& m = need_module(ws, args[0]);
    bool lp = locally_projective(m);
    r.result.add("locally_projective", yn(lp));
    bool generated = true;
    if (!opt.twists.empty()) {
        generated = twist_generation_check(m, opt.twists, opt.window);
        r.result.add("generated_by_twists", yn(generated));
    }
    if (!lp || !generated) {
        r.status = "no";
        r.exit_code = 1;
    }
}

} // namespace

Report run_command(const std::string& command, const std::vector<std::string>& args,
                   const Workspace& ws, const RunOptions& opt) {
    Report r;
    r.command = command;
    try {
        if (command == "validate")
            cmd_validate(r, args, ws);
        else if (command == "qcheck")
            cmd_qcheck(r, args, ws);
        else if (command == "hom")
            cmd_hom(r, args, ws, opt);
        else if (command == "ext")
            cmd_ext(r, args, ws, opt);
        else if (command == "lift")
            cmd_lift(r, args, ws);
        else if (command == "factorize")
            cmd_factorize(r, args, ws, opt);
        else if (command == "approx")
            cmd_approx(r, args, ws, opt);
        else if (command == "pair-check")
            cmd_pair_check(r, args, ws, opt);
        else if (command == "triple-verify")
            cmd_triple_verify(r, args, ws, opt);
        else if (command == "classify")
            cmd_classify(r, args, ws, opt);
        else if (command == "homotopic")
            cmd_homotopic(r, args, ws, opt);
        else if (command == "ho-hom")
            cmd_ho_hom(r, args, ws, opt);
        else if (command == "cech")
            cmd_cech(r, args, ws, opt);
        else if (command == "cohomology")
            cmd_cohomology(r, args, ws, opt);
        else if (command == "tensor")
            cmd_tensor(r, args, ws);
        else if (command == "pushout-product")
            cmd_pushout_product(r, args, ws);
        else if (command == "bundle-check")
            cmd_bundle_check(r, args, ws, opt);
        else
            usage("unknown command '" + command + "'");
    } catch (const Error& e) {
        r.status = "error";
        r.exit_code = 2;
        r.result.children.clear();
        r.result.add("error", error_kind_name(e.kind));
        r.result.add("message", e.what());
    } catch (const QcwError& e) {
        r.status = "error";
        r.exit_code = 2;
        r.result.children.clear();
        r.result.add("error", e.kind == QcwError::Kind::Reference ? "Reference" : "Usage");
        r.result.add("message", e.what());
    }
    return r;
}

} // namespace qcoh
