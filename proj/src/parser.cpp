#include "clpslice/parser.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <optional>
#include <unordered_set>

namespace clpslice {

ParseError::ParseError(const std::string& msg, int line, int col)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg),
      msg_(msg),
      line_(line),
      col_(col) {}

namespace {

enum class Tok : std::uint8_t { Var, Atom, Int, Op, Punct, End, Eof };

struct Token {
    Tok kind = Tok::Eof;
    std::string text;
    bool quoted = false;
    std::int64_t value = 0;
    int line = 1;
    int col = 1;
};

constexpr std::array<std::string_view, 26> kOps = {
    ":-", "#\\=", "#=<", "#>=", "=:=", "=\\=", "#=", "#<", "#>", "=<", ">=", "\\=", "/\\",
    "\\/", "->", "||", "..", "=", "<", ">", "+", "-", "*", ":", "/", "|",
};

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> tokenize(std::string_view src) {
    std::vector<Token> out;
    std::size_t i = 0;
    int line = 1, col = 1;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < src.size()) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (c == '%') {
            while (i < src.size() && src[i] != '\n') advance(1);
            continue;
        }
        Token t;
        t.line = line;
        t.col = col;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            t.kind = Tok::Int;
            t.text = std::string(src.substr(i, j - i));
            auto res = std::from_chars(t.text.data(), t.text.data() + t.text.size(), t.value);
            if (res.ec != std::errc()) throw ParseError("integer literal out of range", line, col);
            advance(j - i);
            out.push_back(std::move(t));
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$') {
            std::size_t j = i + 1;
            while (j < src.size() && ident_char(src[j])) ++j;
            bool upper = std::isupper(static_cast<unsigned char>(c)) || c == '_' || c == '$';
            if (upper) {
                while (j < src.size() && src[j] == '\'') ++j;  // primed renamings
            }
            t.kind = upper ? Tok::Var : Tok::Atom;
            t.text = std::string(src.substr(i, j - i));
            advance(j - i);
            out.push_back(std::move(t));
            continue;
        }
        if (c == '\'') {
            std::string s;
            std::size_t j = i + 1;
            for (;; ++j) {
                if (j >= src.size()) throw ParseError("unterminated quoted atom", line, col);
                if (src[j] == '\\' && j + 1 < src.size()) {
                    s += src[++j];
                    continue;
                }
                if (src[j] == '\'') break;
                s += src[j];
            }
            t.kind = Tok::Atom;
            t.quoted = true;
            t.text = std::move(s);
            advance(j + 1 - i);
            out.push_back(std::move(t));
            continue;
        }
        if (c == '.') {
            if (i + 1 < src.size() && src[i + 1] == '.') {
                t.kind = Tok::Op;
                t.text = "..";
                advance(2);
                out.push_back(std::move(t));
                continue;
            }
            if (i + 1 >= src.size() || std::isspace(static_cast<unsigned char>(src[i + 1])) || src[i + 1] == '%') {
                t.kind = Tok::End;
                t.text = ".";
                advance(1);
                out.push_back(std::move(t));
                continue;
            }
            throw ParseError("unexpected '.'", line, col);
        }
        if (c == '(' || c == ')' || c == '[' || c == ']' || c == ',') {
            t.kind = Tok::Punct;
            t.text = std::string(1, c);
            advance(1);
            out.push_back(std::move(t));
            continue;
        }
        bool matched = false;
        for (auto op : kOps) {
            if (src.substr(i, op.size()) == op) {
                t.kind = Tok::Op;
                t.text = std::string(op);
                advance(op.size());
                out.push_back(std::move(t));
                matched = true;
                break;
            }
        }
        if (!matched) throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }
    Token eof;
    eof.kind = Tok::Eof;
    eof.line = line;
    eof.col = col;
    out.push_back(eof);
    return out;
}

struct InfixOp {
    int prec;
    bool yfx;
};

std::optional<InfixOp> infix_of(const Token& t) {
    if (t.kind == Tok::Atom && !t.quoted && (t.text == "is" || t.text == "in")) return InfixOp{700, false};
    if (t.kind != Tok::Op) return std::nullopt;
    static const std::unordered_set<std::string> rel = {
        "=", "\\=", "#=", "#\\=", "#<", "#=<", "#>", "#>=", "<", ">", "=<", ">=", "=:=", "=\\=",
    };
    if (rel.count(t.text)) return InfixOp{700, false};
    if (t.text == "..") return InfixOp{550, false};
    if (t.text == "+" || t.text == "-") return InfixOp{500, true};
    if (t.text == "*") return InfixOp{400, true};
    return std::nullopt;
}

std::optional<RelOp> lin_op(const std::string& f) {
    if (f == "#=" || f == "=:=" || f == "is") return RelOp::Eq;
    if (f == "#\\=" || f == "=\\=") return RelOp::Ne;
    if (f == "#<" || f == "<") return RelOp::Lt;
    if (f == "#=<" || f == "=<") return RelOp::Le;
    if (f == "#>" || f == ">") return RelOp::Gt;
    if (f == "#>=" || f == ">=") return RelOp::Ge;
    return std::nullopt;
}

class Parser {
public:
    Parser(std::string_view text, ParseOptions opts) : toks_(tokenize(text)), opts_(opts) {}

    bool at_eof() const { return peek().kind == Tok::Eof; }

    const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }

    Token next() {
        Token t = peek();
        if (pos_ < toks_.size() - 1) ++pos_;
        return t;
    }

    [[noreturn]] void fail(const std::string& msg, const Token& at) const {
        std::string where = at.kind == Tok::Eof ? "end of input" : "'" + at.text + "'";
        throw ParseError(msg + " (at " + where + ")", at.line, at.col);
    }
    [[noreturn]] void fail(const std::string& msg) const { fail(msg, peek()); }

    bool is_punct(std::string_view p, std::size_t k = 0) const {
        return peek(k).kind == Tok::Punct && peek(k).text == p;
    }
    bool is_op(std::string_view p, std::size_t k = 0) const { return peek(k).kind == Tok::Op && peek(k).text == p; }
    bool is_word(std::string_view w, std::size_t k = 0) const {
        return peek(k).kind == Tok::Atom && !peek(k).quoted && peek(k).text == w;
    }
    void expect_punct(std::string_view p) {
        if (!is_punct(p)) fail("expected '" + std::string(p) + "'");
        next();
    }
    void expect_op(std::string_view p) {
        if (!is_op(p)) fail("expected '" + std::string(p) + "'");
        next();
    }
    void expect_word(std::string_view w) {
        if (!is_word(w)) fail("expected '" + std::string(w) + "'");
        next();
    }
    void expect_end() {
        if (peek().kind != Tok::End) fail("expected '.'");
        next();
    }
    void expect_eof() {
        if (!at_eof()) fail("unexpected trailing input");
    }

    // ---- terms -------------------------------------------------------------

    Term term(int max_prec) {
        Term left = primary();
        int left_prec = 0;
        for (;;) {
            auto op = infix_of(peek());
            if (!op || op->prec > max_prec) break;
            if (op->yfx ? left_prec > op->prec : left_prec >= op->prec) break;
            std::string name = next().text;
            Term right = term(op->prec - 1);
            left = Term::compound(name, {left, right});
            left_prec = op->prec;
        }
        return left;
    }

    Term primary() {
        const Token& t = peek();
        switch (t.kind) {
        case Tok::Int: return Term::integer(next().value);
        case Tok::Var: {
            Token v = next();
            if (v.text == "_") return Term::var("_" + std::to_string(++anon_));
            return Term::var(v.text);
        }
        case Tok::Atom: {
            Token a = next();
            if (is_punct("(")) {
                next();
                std::vector<Term> args;
                for (;;) {
                    args.push_back(term(999));
                    if (is_punct(",")) {
                        next();
                        continue;
                    }
                    expect_punct(")");
                    break;
                }
                return Term::compound(a.text, std::move(args));
            }
            if (opts_.convention == Convention::Ccp) {
                if (!a.quoted) return Term::var(a.text);
                fail("atom constants are not available in CCP syntax; use integers", a);
            }
            return Term::atom(a.text);
        }
        case Tok::Op:
            if (t.text == "-") {
                next();
                if (peek().kind == Tok::Int) {
                    Token n = next();
                    return Term::integer(-n.value);
                }
                return Term::compound("-", {term(200)});
            }
            break;
        case Tok::Punct:
            if (t.text == "(") {
                next();
                Term inner = term(1200);
                expect_punct(")");
                return inner;
            }
            if (t.text == "[") {
                next();
                if (is_punct("]")) {
                    next();
                    return Term::nil();
                }
                std::vector<Term> items;
                Term tail = Term::nil();
                for (;;) {
                    items.push_back(term(999));
                    if (is_punct(",")) {
                        next();
                        continue;
                    }
                    if (is_op("|")) {
                        next();
                        tail = term(999);
                    }
                    expect_punct("]");
                    break;
                }
                return Term::list(items, tail);
            }
            break;
        default: break;
        }
        fail("expected a term");
    }

    Symbol identifier() {
        const Token& t = peek();
        if (t.kind == Tok::Var || (t.kind == Tok::Atom && !t.quoted && opts_.convention == Convention::Ccp)) {
            return Symbol(next().text);
        }
        fail("expected a variable");
    }

    // ---- constraints -------------------------------------------------------

    // Identifier not followed by '(' or an infix operator.
    bool bare_identifier() const {
        const Token& t = peek();
        if (t.kind != Tok::Atom || t.quoted) return false;
        if (is_punct("(", 1)) return false;
        return !infix_of(peek(1)).has_value();
    }

    bool classify(const Term& t, Constraint& out) const {
        if (!t.is_compound()) return false;
        const std::string& f = t.name().name();
        if (t.arity() == 2) {
            const Term& l = t.args()[0];
            const Term& r = t.args()[1];
            if (f == "=") {
                out.add(AtomicConstraint::equal(l, r));
                return true;
            }
            if (auto op = lin_op(f)) {
                out.add(AtomicConstraint::linear(*op, l, r));
                return true;
            }
            if (f == "in") {
                if (!r.is_compound() || r.name().name() != ".." || r.arity() != 2) {
                    throw ParseError("'in' expects a range Lo..Hi", 0, 0);
                }
                const Term& lo = r.args()[0];
                const Term& hi = r.args()[1];
                if (l.is_var() && lo.is_int() && hi.is_int()) {
                    out.add(AtomicConstraint::in_domain(l, lo.value(), hi.value()));
                } else {
                    out.add(GlobalConstraint{GlobalConstraint::Kind::In, {l, lo, hi}});
                }
                return true;
            }
            if (f == "\\=") throw ParseError("Herbrand disequality '\\=' is not supported; use #\\=", 0, 0);
        }
        if ((f == "all_different" || f == "fd_all_different") && t.arity() == 1) {
            out.add(GlobalConstraint{GlobalConstraint::Kind::AllDifferent, {t.args()[0]}});
            return true;
        }
        if (f == "fd_domain" && t.arity() == 3) {
            out.add(GlobalConstraint{GlobalConstraint::Kind::FdDomain, {t.args()[0], t.args()[1], t.args()[2]}});
            return true;
        }
        return false;
    }

    // Term parsing with error positions for classification failures.
    bool classify_at(const Term& t, Constraint& out, const Token& at) const {
        try {
            return classify(t, out);
        } catch (const ParseError& e) {
            throw ParseError(e.message(), at.line, at.col);
        }
    }

    void bare_constraint(const Token& t, Constraint& out) {
        if (t.text == "true") {
            out.add(AtomicConstraint::truth());
        } else if (t.text == "false" || t.text == "fail") {
            out.add(AtomicConstraint::falsity());
        } else {
            out.add(AtomicConstraint::token(t.text));
            tokens_.insert(Symbol(t.text));
        }
    }

    void constraint_item(Constraint& out) {
        if (is_op("*")) {
            if (!opts_.allow_holes) fail("'*' placeholder is only allowed in sliced traces");
            next();
            out.add_hole();
            return;
        }
        if (is_word("exists") && (peek(1).kind == Tok::Var || peek(1).kind == Tok::Atom)) {
            next();
            std::vector<Symbol> vars;
            while (!is_op(":")) vars.push_back(identifier());
            next();
            expect_punct("(");
            Constraint inner = conjunction();
            expect_punct(")");
            inner.set_exists(std::move(vars));
            out.add(std::move(inner));
            return;
        }
        if (is_punct("(")) {
            std::size_t save = pos_;
            try {
                next();
                Constraint inner = conjunction();
                expect_punct(")");
                if (!infix_of(peek())) {
                    out.add(std::move(inner));
                    return;
                }
            } catch (const ParseError&) {
            }
            pos_ = save;
        }
        if (bare_identifier()) {
            bare_constraint(next(), out);
            return;
        }
        Token at = peek();
        Term t = term(999);
        if (!classify_at(t, out, at)) fail("expected a constraint", at);
    }

    Constraint conjunction() {
        Constraint c;
        for (;;) {
            constraint_item(c);
            if (!is_punct(",")) break;
            next();
        }
        // A lone `true` is the empty conjunction, which prints the same way.
        if (c.exists().empty() && c.items().size() == 1 && c.items()[0].kind == Constraint::Item::Kind::Atom &&
            c.items()[0].atom.kind() == AtomicConstraint::Kind::True) {
            return Constraint::truth();
        }
        return c;
    }

    // ---- assertions --------------------------------------------------------

    Assertion implies() {
        Assertion l = disjunction();
        if (is_op("->")) {
            next();
            return Assertion::binary(Assertion::Kind::Implies, std::move(l), implies());
        }
        return l;
    }

    Assertion disjunction() {
        Assertion l = conj_assertion();
        while (is_op("\\/")) {
            next();
            l = Assertion::binary(Assertion::Kind::Or, std::move(l), conj_assertion());
        }
        return l;
    }

    Assertion conj_assertion() {
        Assertion l = unary_assertion();
        while (is_op("/\\")) {
            next();
            l = Assertion::binary(Assertion::Kind::And, std::move(l), unary_assertion());
        }
        return l;
    }

    Assertion unary_assertion() {
        if (is_punct("(")) {
            next();
            Assertion f = implies();
            expect_punct(")");
            return f;
        }
        const Token& t = peek();
        if (t.kind == Tok::Atom && !t.quoted) {
            using K = Assertion::Kind;
            std::optional<K> lit;
            if (t.text == "pos") lit = K::Pos;
            if (t.text == "neg") lit = K::Neg;
            if (t.text == "cons") lit = K::Cons;
            if (t.text == "icons") lit = K::Icons;
            if (lit) {
                next();
                expect_punct("(");
                Constraint c = conjunction();
                expect_punct(")");
                return Assertion::literal(*lit, std::move(c));
            }
            if (t.text == "forall" || t.text == "exists") {
                K k = t.text == "forall" ? K::ForAll : K::Exists;
                next();
                if (peek().kind != Tok::Atom) fail("expected a predicate name");
                Symbol pred(next().text);
                std::vector<Symbol> formals;
                if (is_punct("(")) {
                    next();
                    for (;;) {
                        formals.push_back(identifier());
                        if (is_punct(",")) {
                            next();
                            continue;
                        }
                        expect_punct(")");
                        break;
                    }
                }
                expect_op(":");
                return Assertion::quantified(k, pred, std::move(formals), implies());
            }
        }
        fail("expected an assertion");
    }

    ClassifiedAssertion classified() {
        ClassifiedAssertion a;
        if (is_word("inv")) {
            a.kind = ClassifiedAssertion::Kind::Inv;
        } else if (is_word("post")) {
            a.kind = ClassifiedAssertion::Kind::Post;
        } else {
            fail("expected inv(...) or post(...)");
        }
        next();
        expect_punct("(");
        a.body = implies();
        expect_punct(")");
        return a;
    }

    // ---- processes ---------------------------------------------------------

    Process par() {
        std::vector<Process> parts{sum()};
        while (is_op("||")) {
            next();
            parts.push_back(sum());
        }
        if (parts.size() == 1) return parts[0];
        return Process::par(std::move(parts));
    }

    Process sum() {
        Token start = peek();
        std::vector<Process> alts{prefix()};
        while (is_op("+")) {
            next();
            alts.push_back(prefix());
        }
        if (alts.size() == 1) return alts[0];
        std::vector<Process::Branch> branches;
        for (const auto& p : alts) {
            if (p.kind() == Process::Kind::Hole) {
                branches.push_back(Process::hole_branch());
            } else if (p.kind() == Process::Kind::Sum) {
                for (const auto& b : p.branches()) branches.push_back(b);
            } else {
                fail("only ask branches can be combined with '+'", start);
            }
        }
        return Process::sum(std::move(branches));
    }

    Process prefix() {
        const Token& t = peek();
        if (is_op("*")) {
            if (!opts_.allow_holes) fail("'*' placeholder is only allowed in sliced traces");
            next();
            return Process::hole();
        }
        if (is_punct("(")) {
            next();
            Process p = par();
            expect_punct(")");
            return p;
        }
        if (t.kind != Tok::Atom || t.quoted) fail("expected a process");
        if (t.text == "skip" && !is_punct("(", 1)) {
            next();
            return Process::skip();
        }
        if (t.text == "tell" && is_punct("(", 1)) {
            next();
            next();
            Constraint c = conjunction();
            expect_punct(")");
            return Process::tell(std::move(c));
        }
        if (t.text == "ask") {
            next();
            Constraint guard;
            if (is_punct("(") && is_punct(")", 1)) {
                next();
                next();
            } else {
                guard = conjunction();
            }
            expect_word("then");
            return Process::ask(std::move(guard), prefix());
        }
        if (t.text == "local" && !is_punct("(", 1)) {
            next();
            std::vector<Symbol> vars{identifier()};
            while (is_punct(",")) {
                next();
                vars.push_back(identifier());
            }
            expect_word("in");
            Process body = prefix();
            for (auto it = vars.rbegin(); it != vars.rend(); ++it) body = Process::local(*it, std::move(body));
            return body;
        }
        if ((t.text == "inv" || t.text == "post") && is_punct("(", 1)) return Process::check(classified());
        Token name = next();
        std::vector<Term> args;
        if (is_punct("(")) {
            next();
            for (;;) {
                args.push_back(term(999));
                if (is_punct(",")) {
                    next();
                    continue;
                }
                expect_punct(")");
                break;
            }
        }
        return Process::call(Symbol(name.text), std::move(args));
    }

    ProcDef definition() {
        Token start = next();  // def
        if (peek().kind != Tok::Atom) fail("expected a process name");
        ProcDef d;
        d.name = Symbol(next().text);
        if (is_punct("(")) {
            next();
            for (;;) {
                Token at = peek();
                Symbol v = identifier();
                if (std::find(d.params.begin(), d.params.end(), v) != d.params.end()) {
                    fail("duplicate parameter " + v.name(), at);
                }
                d.params.push_back(v);
                if (is_punct(",")) {
                    next();
                    continue;
                }
                expect_punct(")");
                break;
            }
        }
        expect_op("=");
        tokens_.clear();
        d.body = par();
        expect_end();
        for (Symbol v : d.body.free_vars()) {
            if (std::find(d.params.begin(), d.params.end(), v) != d.params.end()) continue;
            if (tokens_.count(v)) continue;
            throw ParseError("free variable " + v.name() + " in definition of " + pred_key(d.name, d.params.size()),
                             start.line, start.col);
        }
        return d;
    }

    // ---- CLP ---------------------------------------------------------------

    Literal literal() {
        Token at = peek();
        Literal lit;
        if ((is_word("inv") || is_word("post")) && is_punct("(", 1)) {
            lit = Literal::of(classified());
        } else if (is_punct("(")) {
            Constraint c;
            constraint_item(c);
            lit = Literal::of(std::move(c));
        } else if (bare_identifier()) {
            if (is_word("true") || is_word("false") || is_word("fail")) {
                Constraint c;
                bare_constraint(next(), c);
                lit = Literal::of(std::move(c));
            } else {
                lit = Literal::atom(Symbol(next().text), {});
            }
        } else {
            Term t = term(999);
            Constraint c;
            if (classify_at(t, c, at)) {
                lit = Literal::of(std::move(c));
            } else if (t.is_compound() && !t.is_cons() && !t.is_arith()) {
                lit = Literal::atom(t.name(), t.args());
            } else {
                fail("expected a literal", at);
            }
        }
        lit.span = {at.line, at.col};
        return lit;
    }

    std::vector<Literal> literals() {
        std::vector<Literal> out;
        for (;;) {
            out.push_back(literal());
            if (!is_punct(",")) break;
            next();
        }
        return out;
    }

    Rule rule() {
        Token at = peek();
        anon_ = 0;
        Term head = term(999);
        if (!head.is_compound() || head.is_cons() || head.is_arith()) fail("expected a clause head", at);
        Constraint probe;
        if (classify_at(head, probe, at)) fail("a constraint cannot be a clause head", at);
        Rule r;
        r.pred = head.name();
        r.head = head.args();
        r.span = {at.line, at.col};
        if (is_op(":-")) {
            next();
            r.body = literals();
        }
        expect_end();
        for (auto& l : r.body) {
            if (l.kind == Literal::Kind::Assertion) l.assertion.attach = r.key();
        }
        return r;
    }

    std::size_t pos_ = 0;

private:
    std::vector<Token> toks_;
    ParseOptions opts_;
    int anon_ = 0;
    std::unordered_set<Symbol> tokens_;
};

}  // namespace

ClpProgram parse_clp(std::string_view text) {
    Parser p(text, {});
    ClpProgram prog;
    while (!p.at_eof()) prog.rules.push_back(p.rule());
    return prog;
}

std::vector<Literal> parse_goal(std::string_view text) {
    Parser p(text, {});
    std::vector<Literal> goal;
    if (p.at_eof()) return goal;
    goal = p.literals();
    if (p.peek().kind == Tok::End) p.next();
    p.expect_eof();
    return goal;
}

CcpProgram parse_ccp(std::string_view text, ParseOptions opts) {
    Parser p(text, opts);
    CcpProgram prog;
    std::vector<Process> mains;
    while (!p.at_eof()) {
        if (p.is_word("def")) {
            ProcDef d = p.definition();
            if (prog.find(d.name, d.params.size())) {
                throw ParseError("duplicate definition of " + pred_key(d.name, d.params.size()), 0, 0);
            }
            prog.defs.push_back(std::move(d));
        } else {
            mains.push_back(p.par());
            if (!p.at_eof()) p.expect_end();
        }
    }
    if (mains.size() == 1) prog.main = mains[0];
    if (mains.size() > 1) prog.main = Process::par(std::move(mains));
    return prog;
}

Process parse_process(std::string_view text, ParseOptions opts) {
    Parser p(text, opts);
    Process proc = p.par();
    p.expect_eof();
    return proc;
}

Constraint parse_constraint(std::string_view text, ParseOptions opts) {
    Parser p(text, opts);
    Constraint c = p.conjunction();
    p.expect_eof();
    return c;
}

Assertion parse_assertion(std::string_view text, ParseOptions opts) {
    Parser p(text, opts);
    Assertion f = p.implies();
    p.expect_eof();
    return f;
}

ClassifiedAssertion parse_classified(std::string_view text, ParseOptions opts) {
    Parser p(text, opts);
    ClassifiedAssertion a = p.classified();
    if (p.peek().kind == Tok::End) p.next();
    p.expect_eof();
    return a;
}

Term parse_term(std::string_view text, ParseOptions opts) {
    Parser p(text, opts);
    Term t = p.term(1200);
    p.expect_eof();
    return t;
}

std::vector<SidecarEntry> parse_sidecar(std::string_view text, ParseOptions opts) {
    Parser p(text, opts);
    std::vector<SidecarEntry> out;
    while (!p.at_eof()) {
        SidecarEntry e;
        if (p.is_word("global")) {
            p.next();
            e.target = "global";
        } else if (p.is_word("on")) {
            p.next();
            if (p.peek().kind != Tok::Atom) p.fail("expected a predicate name");
            std::string name = p.next().text;
            p.expect_op("/");
            if (p.peek().kind != Tok::Int) p.fail("expected an arity");
            e.target = name + "/" + p.next().text;
        } else {
            p.fail("expected 'on <pred>/<arity>:' or 'global:'");
        }
        p.expect_op(":");
        e.assertion = p.classified();
        e.assertion.attach = e.target;
        if (p.peek().kind == Tok::End) p.next();
        out.push_back(std::move(e));
    }
    return out;
}

}  // namespace clpslice
