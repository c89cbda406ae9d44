#include "diffcert/cli/parse.hpp"

#include "diffcert/series.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <memory>

namespace diffcert::cli {

namespace {

std::string join(const std::vector<std::string>& items, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) out += (i ? sep : "") + items[i];
    return out;
}

std::string format_error(int line, int column, const std::string& what, const std::vector<std::string>& expected) {
    std::string msg = "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what;
    if (!expected.empty()) msg += " (expected " + join(expected, ", ") + ")";
    return msg;
}

}  // namespace

ParseError::ParseError(int line, int column, const std::string& what, std::vector<std::string> expected)
    : Error(format_error(line, column, what, expected)), line_(line), column_(column), expected_(std::move(expected)) {}

namespace {

enum class Tok { number, ident, plus, minus, star, slash, caret, lparen, rparen, prime, equals, semicolon, comma, end };

struct Token {
    Tok kind;
    std::string text;
    int line;
    int column;
};

std::string describe(const Token& t) {
    switch (t.kind) {
        case Tok::number: return "number '" + t.text + "'";
        case Tok::ident: return "identifier '" + t.text + "'";
        case Tok::end: return "end of input";
        default: return "'" + t.text + "'";
    }
}

std::vector<Token> lex(std::string_view s) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (s[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        Token t{Tok::end, std::string(1, c), line, col};
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            t.kind = Tok::number;
            t.text = std::string(s.substr(i, j - i));
            advance(j - i);
            out.push_back(t);
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
            t.kind = Tok::ident;
            t.text = std::string(s.substr(i, j - i));
            advance(j - i);
            out.push_back(t);
            continue;
        }
        switch (c) {
            case '+': t.kind = Tok::plus; break;
            case '-': t.kind = Tok::minus; break;
            case '*': t.kind = Tok::star; break;
            case '/': t.kind = Tok::slash; break;
            case '^': t.kind = Tok::caret; break;
            case '(': t.kind = Tok::lparen; break;
            case ')': t.kind = Tok::rparen; break;
            case '\'': t.kind = Tok::prime; break;
            case '=': t.kind = Tok::equals; break;
            case ';': t.kind = Tok::semicolon; break;
            case ',': t.kind = Tok::comma; break;
            default: throw ParseError(line, col, "unexpected character '" + std::string(1, c) + "'");
        }
        advance(1);
        out.push_back(t);
    }
    out.push_back(Token{Tok::end, "", line, col});
    return out;
}

struct Node {
    enum Kind { number, symbol, neg, add, sub, mul, div, pow, call } kind;
    BigRat value;
    std::string name;
    int primes = 0;
    unsigned exponent = 0;
    int line = 0;
    int column = 0;
    std::vector<std::unique_ptr<Node>> kids;
};
using NodePtr = std::unique_ptr<Node>;

constexpr unsigned max_exponent = 1u << 20;

class Parser {
public:
    explicit Parser(std::string_view text) : toks_(lex(text)) {}

    const Token& peek() const { return toks_[pos_]; }
    const Token& next() { return toks_[pos_++]; }
    bool at(Tok k) const { return peek().kind == k; }

    [[noreturn]] void fail(std::vector<std::string> expected) const {
        const Token& t = peek();
        throw ParseError(t.line, t.column, "unexpected " + describe(t), std::move(expected));
    }

    const Token& expect(Tok k, const std::string& what) {
        if (!at(k)) fail({what});
        return next();
    }

    NodePtr expression() {
        NodePtr lhs = term();
        while (at(Tok::plus) || at(Tok::minus)) {
            const Token& op = next();
            lhs = binary(op.kind == Tok::plus ? Node::add : Node::sub, std::move(lhs), term(), op);
        }
        return lhs;
    }

    void finish(std::vector<std::string> extra = {}) {
        if (at(Tok::end)) return;
        std::vector<std::string> e{"'+'", "'-'", "'*'", "'/'", "'^'"};
        e.insert(e.end(), extra.begin(), extra.end());
        e.push_back("end of input");
        fail(e);
    }

    std::vector<std::string> after_operand() const {
        return {"'+'", "'-'", "'*'", "'/'", "'^'"};
    }

private:
    static NodePtr binary(Node::Kind k, NodePtr a, NodePtr b, const Token& at) {
        auto n = std::make_unique<Node>();
        n->kind = k;
        n->line = at.line;
        n->column = at.column;
        n->kids.push_back(std::move(a));
        n->kids.push_back(std::move(b));
        return n;
    }

    NodePtr term() {
        NodePtr lhs = unary();
        while (at(Tok::star) || at(Tok::slash)) {
            const Token& op = next();
            lhs = binary(op.kind == Tok::star ? Node::mul : Node::div, std::move(lhs), unary(), op);
        }
        return lhs;
    }

    NodePtr unary() {
        if (at(Tok::minus) || at(Tok::plus)) {
            const Token& op = next();
            NodePtr inner = unary();
            if (op.kind == Tok::plus) return inner;
            auto n = std::make_unique<Node>();
            n->kind = Node::neg;
            n->line = op.line;
            n->column = op.column;
            n->kids.push_back(std::move(inner));
            return n;
        }
        return power();
    }

    NodePtr power() {
        NodePtr base = primary();
        if (!at(Tok::caret)) return base;
        const Token& op = next();
        if (at(Tok::minus)) {
            throw ParseError(peek().line, peek().column, "exponent must be a nonnegative integer", {"integer"});
        }
        const Token& e = expect(Tok::number, "integer");
        if (e.text.size() > 7 || std::stoul(e.text) > max_exponent) {
            throw ParseError(e.line, e.column, "exponent overflow: " + e.text);
        }
        auto n = std::make_unique<Node>();
        n->kind = Node::pow;
        n->exponent = static_cast<unsigned>(std::stoul(e.text));
        n->line = op.line;
        n->column = op.column;
        n->kids.push_back(std::move(base));
        return n;
    }

    NodePtr primary() {
        const Token& t = peek();
        auto n = std::make_unique<Node>();
        n->line = t.line;
        n->column = t.column;
        if (at(Tok::number)) {
            next();
            n->kind = Node::number;
            n->value = BigRat(BigInt(t.text));
            return n;
        }
        if (at(Tok::ident)) {
            next();
            n->name = t.text;
            if (at(Tok::lparen)) {
                next();
                n->kind = Node::call;
                n->kids.push_back(expression());
                expect(Tok::rparen, "')'");
                return n;
            }
            n->kind = Node::symbol;
            while (at(Tok::prime)) {
                next();
                ++n->primes;
            }
            return n;
        }
        if (at(Tok::lparen)) {
            next();
            NodePtr inner = expression();
            expect(Tok::rparen, "')'");
            return inner;
        }
        fail({"number", "identifier", "'('", "'-'"});
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

[[noreturn]] void node_error(const Node& n, const std::string& what) { throw ParseError(n.line, n.column, what); }

// Generic evaluation over a ring R with the given leaf and division rules.
template <class R>
struct Evaluator {
    std::function<R(const Node&)> leaf;
    std::function<R(const R&, const R&)> mul;
    std::function<R(const R&, const Node&)> divide_by_constant;  // node is the divisor
    std::function<R(const Node&, const R&)> call;
    std::function<R(const BigRat&)> constant;

    R eval(const Node& n) const {
        switch (n.kind) {
            case Node::number: return constant(n.value);
            case Node::symbol: return leaf(n);
            case Node::neg: return constant(BigRat(0)) - eval(*n.kids[0]);
            case Node::add: return eval(*n.kids[0]) + eval(*n.kids[1]);
            case Node::sub: return eval(*n.kids[0]) - eval(*n.kids[1]);
            case Node::mul: return mul(eval(*n.kids[0]), eval(*n.kids[1]));
            case Node::div: return divide_by_constant(eval(*n.kids[0]), *n.kids[1]);
            case Node::pow: {
                R base = eval(*n.kids[0]);
                R acc = constant(BigRat(1));
                for (unsigned k = n.exponent; k; k >>= 1u) {
                    if (k & 1u) acc = mul(acc, base);
                    if (k > 1) base = mul(base, base);
                }
                return acc;
            }
            case Node::call: {
                if (!call) node_error(n, "unknown function '" + n.name + "'");
                return call(n, eval(*n.kids[0]));
            }
        }
        node_error(n, "bad expression");
    }
};

// A divisor must be a constant expression: numbers combined with + - * / ^.
std::optional<BigRat> constant_value(const Node& n) {
    switch (n.kind) {
        case Node::number: return n.value;
        case Node::symbol:
        case Node::call: return std::nullopt;
        case Node::neg: {
            auto v = constant_value(*n.kids[0]);
            if (!v) return std::nullopt;
            return -*v;
        }
        case Node::pow: {
            auto v = constant_value(*n.kids[0]);
            if (!v) return std::nullopt;
            return v->pow(static_cast<int>(n.exponent));
        }
        default: {
            auto a = constant_value(*n.kids[0]);
            auto b = constant_value(*n.kids[1]);
            if (!a || !b) return std::nullopt;
            if (n.kind == Node::add) return *a + *b;
            if (n.kind == Node::sub) return *a - *b;
            if (n.kind == Node::mul) return *a * *b;
            if (b->is_zero()) node_error(n, "division by zero");
            return *a / *b;
        }
    }
}

BigRat divisor_value(const Node& d) {
    auto v = constant_value(d);
    if (!v) node_error(d, "division is only allowed by constants");
    if (v->is_zero()) node_error(d, "division by zero");
    return *v;
}

// y index of a symbol "y<k>", 0 for "z", -1 otherwise.
int y_index(const std::string& name) {
    if (name == "z") return 0;
    if (name.size() == 2 && name[0] == 'y' && name[1] >= '1' && name[1] <= '9') return name[1] - '0';
    return -1;
}

void scan_y(const Node& n, std::size_t& top) {
    if (n.kind == Node::symbol) {
        int k = y_index(n.name);
        if (k > 0) top = std::max(top, static_cast<std::size_t>(k));
    }
    for (const auto& c : n.kids) scan_y(*c, top);
}

MultiPoly eval_polynomial(const Node& root, std::size_t nvars, const std::string& context) {
    Evaluator<MultiPoly> ev;
    ev.constant = [nvars](const BigRat& c) { return MultiPoly::constant(nvars, c); };
    ev.mul = [](const MultiPoly& a, const MultiPoly& b) { return a * b; };
    ev.divide_by_constant = [](const MultiPoly& a, const Node& d) { return a * divisor_value(d).inverse(); };
    ev.leaf = [nvars, &context](const Node& n) {
        int k = y_index(n.name);
        if (k < 0 || static_cast<std::size_t>(k) > nvars) {
            node_error(n, "unknown variable '" + n.name + "'" + context);
        }
        if (n.primes) node_error(n, "derivative marks are not allowed in a polynomial");
        return k == 0 ? MultiPoly::z(nvars) : MultiPoly::y(nvars, static_cast<std::size_t>(k));
    };
    return ev.eval(root);
}

// Elements of the Weyl algebra Q[z]<D> as coefficient lists of D^i, possibly zero.
struct Weyl {
    std::vector<UniPoly> c;

    static Weyl trimmed(std::vector<UniPoly> v) {
        while (!v.empty() && v.back().is_zero()) v.pop_back();
        return Weyl{std::move(v)};
    }

    friend Weyl operator+(const Weyl& a, const Weyl& b) {
        std::vector<UniPoly> r(std::max(a.c.size(), b.c.size()));
        for (std::size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
        for (std::size_t i = 0; i < b.c.size(); ++i) r[i] += b.c[i];
        return trimmed(std::move(r));
    }

    friend Weyl operator-(const Weyl& a, const Weyl& b) {
        std::vector<UniPoly> r(std::max(a.c.size(), b.c.size()));
        for (std::size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
        for (std::size_t i = 0; i < b.c.size(); ++i) r[i] -= b.c[i];
        return trimmed(std::move(r));
    }
};

Weyl weyl_mul(const Weyl& a, const Weyl& b) {
    if (a.c.empty() || b.c.empty()) return {};
    return Weyl{DiffOperator(a.c).compose(DiffOperator(b.c)).coefficients()};
}

}  // namespace

MultiPoly parse_polynomial(std::string_view text, std::size_t min_nvars) {
    Parser p(text);
    NodePtr root = p.expression();
    p.finish();
    std::size_t nvars = min_nvars;
    scan_y(*root, nvars);
    return eval_polynomial(*root, nvars, "");
}

DiffOperator parse_operator(std::string_view text) {
    Parser p(text);
    NodePtr root = p.expression();
    p.finish();
    Evaluator<Weyl> ev;
    ev.constant = [](const BigRat& c) { return Weyl::trimmed({UniPoly(c)}); };
    ev.mul = weyl_mul;
    ev.divide_by_constant = [](const Weyl& a, const Node& d) {
        Weyl r = a;
        BigRat inv = divisor_value(d).inverse();
        for (auto& c : r.c) c *= inv;
        return r;
    };
    ev.leaf = [](const Node& n) -> Weyl {
        if (n.primes) node_error(n, "derivative marks are not allowed in an operator");
        if (n.name == "z") return Weyl{{UniPoly::z()}};
        if (n.name == "D") return Weyl{{UniPoly(), UniPoly(BigRat(1))}};
        node_error(n, "unknown symbol '" + n.name + "' in operator (use z and D)");
    };
    Weyl w = ev.eval(*root);
    if (w.c.empty()) throw ParseError(1, 1, "operator is zero");
    return DiffOperator(std::move(w.c));
}

PolyVectorField parse_field(std::string_view text) {
    Parser p(text);
    struct Statement {
        int index;
        NodePtr rhs;
        Token lhs;
    };
    std::vector<Statement> stmts;
    while (!p.at(Tok::end)) {
        Token lhs = p.expect(Tok::ident, "component name y1..y9");
        int k = y_index(lhs.text);
        if (k <= 0) throw ParseError(lhs.line, lhs.column, "component name must be y1..y9, got '" + lhs.text + "'");
        p.expect(Tok::prime, "\"'\"");
        p.expect(Tok::equals, "'='");
        NodePtr rhs = p.expression();
        stmts.push_back({k, std::move(rhs), lhs});
        if (p.at(Tok::semicolon)) {
            p.next();
            continue;
        }
        if (!p.at(Tok::end)) {
            auto e = p.after_operand();
            e.push_back("';'");
            e.push_back("end of input");
            p.fail(e);
        }
    }
    if (stmts.empty()) throw ParseError(1, 1, "empty vector field", {"component name y1..y9"});
    const std::size_t n = stmts.size();
    std::vector<std::optional<MultiPoly>> comps(n);
    const std::string ctx = " (field has " + std::to_string(n) + " components)";
    for (auto& s : stmts) {
        if (static_cast<std::size_t>(s.index) > n) {
            throw ParseError(s.lhs.line, s.lhs.column, "component " + s.lhs.text + " out of range" + ctx);
        }
        auto& slot = comps[static_cast<std::size_t>(s.index) - 1];
        if (slot) throw ParseError(s.lhs.line, s.lhs.column, "component " + s.lhs.text + " defined twice");
        slot = eval_polynomial(*s.rhs, n, ctx);
    }
    std::vector<MultiPoly> out;
    for (auto& c : comps) out.push_back(std::move(*c));
    return PolyVectorField(std::move(out));
}

namespace {

int max_primes(const Node& n) {
    int m = n.kind == Node::symbol ? n.primes : 0;
    for (const auto& c : n.kids) m = std::max(m, max_primes(*c));
    return m;
}

TruncSeries exp_series(int order) {
    std::vector<BigRat> c(static_cast<std::size_t>(order) + 1);
    BigRat term(1);
    for (int k = 0; k <= order; ++k) {
        if (k) term /= BigRat(k);
        c[k] = term;
    }
    return TruncSeries(std::move(c), order);
}

}  // namespace

std::vector<TruncSeries> parse_series_list(std::string_view text, int order) {
    if (order < 0) throw Error("series order must be nonnegative");
    Parser p(text);
    std::vector<NodePtr> items;
    items.push_back(p.expression());
    while (p.at(Tok::comma)) {
        p.next();
        items.push_back(p.expression());
    }
    p.finish({"','"});

    int extra = 0;
    for (const auto& it : items) extra = std::max(extra, max_primes(*it));
    const int work = order + extra + 2;
    std::optional<AiryBasis> airy;
    std::optional<TruncSeries> expo;

    Evaluator<TruncSeries> ev;
    ev.constant = [work](const BigRat& c) { return TruncSeries::constant(c, work); };
    ev.mul = [](const TruncSeries& a, const TruncSeries& b) { return multiply(a, b); };
    ev.divide_by_constant = [](const TruncSeries& a, const Node& d) { return divisor_value(d).inverse() * a; };
    ev.leaf = [&](const Node& n) {
        TruncSeries s;
        if (n.name == "z") {
            s = TruncSeries::identity(work);
        } else if (n.name == "u1" || n.name == "u2") {
            if (!airy) airy = airy_basis(std::max(work, 2));
            s = n.name == "u1" ? airy->u1 : airy->u2;
        } else if (n.name == "exp") {
            if (!expo) expo = exp_series(work);
            s = *expo;
        } else {
            node_error(n, "unknown series '" + n.name + "' (expected z, u1, u2 or exp)");
        }
        for (int k = 0; k < n.primes; ++k) s = derivative(s);
        return s;
    };
    ev.call = [](const Node& n, const TruncSeries& arg) {
        if (n.name != "int") node_error(n, "unknown function '" + n.name + "' (expected int)");
        return antiderivative(arg, BigRat(0));
    };
    std::vector<TruncSeries> out;
    for (const auto& it : items) {
        TruncSeries s = ev.eval(*it);
        if (s.order() < order) {
            node_error(*it, "series expression is only known through order " + std::to_string(s.order()));
        }
        out.push_back(s.truncated(order));
    }
    return out;
}

std::optional<PolyVectorField> named_field(std::string_view name) {
    static const std::map<std::string, std::string, std::less<>> table{
        {"airy2", "y1' = y2; y2' = z*y1"},
        {"airy3", "y1' = y2; y2' = z*y1; y3' = y1"},
        {"airy-u2", "y1' = y2; y2' = z*y1; y3' = y1^2"},
        {"airy-double", "y1' = y2; y2' = z*y1; y3' = y4; y4' = z*y3"},
        {"painleve2-u2", "y1' = y2; y2' = z*y1 + 2*y1^3; y3' = y1^2"},
    };
    auto it = table.find(name);
    if (it == table.end()) return std::nullopt;
    return parse_field(it->second);
}

std::vector<std::string> named_field_names() {
    return {"airy2", "airy3", "airy-u2", "airy-double", "painleve2-u2"};
}

PolyVectorField field_argument(std::string_view text) {
    std::string_view trimmed = text;
    while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.front()))) trimmed.remove_prefix(1);
    while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.back()))) trimmed.remove_suffix(1);
    if (auto f = named_field(trimmed)) return *f;
    if (trimmed.find('=') == std::string_view::npos) {
        throw Error("unknown field '" + std::string(trimmed) + "'; named fields are " +
                    join(named_field_names(), ", "));
    }
    return parse_field(text);
}

}  // namespace diffcert::cli
