#include "sphkernel/expr.hpp"

#include <cctype>
#include <optional>
#include <sstream>

#include "json.hpp"

namespace sph {

namespace {

class Lexer {
  public:
    explicit Lexer(const std::string& s) : s_(s) {}

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eof() {
        skip_ws();
        return pos_ >= s_.size();
    }

    char peek() {
        skip_ws();
        if (pos_ >= s_.size()) return '\0';
        return s_[pos_];
    }

    // Character after the current one, whitespace-insensitive on both.
    char peek2() {
        skip_ws();
        size_t p = pos_ + 1;
        while (p < s_.size() && std::isspace(static_cast<unsigned char>(s_[p]))) ++p;
        return p < s_.size() ? s_[p] : '\0';
    }

    bool accept(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    long integer() {
        skip_ws();
        size_t start = pos_;
        bool neg = false;
        if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
            neg = s_[pos_] == '-';
            ++pos_;
        }
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            pos_ = start;
            fail("expected integer");
        }
        long v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            v = v * 10 + (s_[pos_] - '0');
            ++pos_;
        }
        return neg ? -v : v;
    }

    [[noreturn]] void fail(const std::string& why) {
        throw ParseError(why + " at position " + std::to_string(pos_) + " in \"" + s_ + "\"");
    }

    size_t pos() const { return pos_; }

  private:
    const std::string& s_;
    size_t pos_ = 0;
};

struct TermValue {
    Scalar coeff;
    std::optional<TypeVec> basis;
};

Scalar parse_scalar_sum(Lexer& lx);

// INT | q[^k] | s[^k] | ( scalar-sum )
Scalar parse_coeff_atom(Lexer& lx) {
    char c = lx.peek();
    if (c == '(') {
        lx.expect('(');
        Scalar v = parse_scalar_sum(lx);
        lx.expect(')');
        return v;
    }
    if (c == 'q' || c == 's') {
        lx.accept(c);
        long k = 1;
        if (lx.accept('^')) k = lx.integer();
        return c == 'q' ? Scalar::q_pow(k) : Scalar::s_pow(k);
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+') {
        return Scalar::integer(lx.integer());
    }
    lx.fail("expected coefficient");
}

Scalar parse_scalar_product(Lexer& lx) {
    Scalar v = parse_coeff_atom(lx);
    while (lx.peek() == '*') {
        // Only consume '*' when a coefficient follows; the element grammar
        // handles '*[' separately.
        lx.expect('*');
        v *= parse_coeff_atom(lx);
    }
    return v;
}

Scalar parse_scalar_sum(Lexer& lx) {
    bool neg = false;
    if (lx.peek() == '-') {
        lx.expect('-');
        neg = true;
    } else if (lx.peek() == '+') {
        lx.expect('+');
    }
    Scalar v = parse_scalar_product(lx);
    if (neg) v = -v;
    while (true) {
        char c = lx.peek();
        if (c == '+' || c == '-') {
            lx.expect(c);
            Scalar w = parse_scalar_product(lx);
            if (c == '-')
                v -= w;
            else
                v += w;
            continue;
        }
        break;
    }
    return v;
}

TypeVec parse_basis(Lexer& lx) {
    lx.expect('[');
    TypeVec v;
    if (lx.peek() == ']') {
        lx.expect(']');
        return v;
    }
    v.push_back(static_cast<int>(lx.integer()));
    while (lx.accept(',')) v.push_back(static_cast<int>(lx.integer()));
    lx.expect(']');
    return v;
}

// term := factor ('*' factor)*, at most one basis factor; signs are consumed
// by the element-level loop, never here.
TermValue parse_term(Lexer& lx) {
    TermValue t;
    t.coeff = Scalar::integer(1);
    bool any = false;
    while (true) {
        char c = lx.peek();
        if (c == '[') {
            if (t.basis) lx.fail("second basis vector in one term");
            t.basis = parse_basis(lx);
        } else if (c == '(' || c == 'q' || c == 's' ||
                   std::isdigit(static_cast<unsigned char>(c))) {
            t.coeff *= parse_coeff_atom(lx);
        } else {
            break;
        }
        any = true;
        if (!lx.accept('*')) break;
    }
    if (!any) lx.fail("expected term");
    return t;
}

}  // namespace

Element parse_element(const std::string& text) {
    Lexer lx(text);
    std::vector<std::pair<Scalar, std::optional<TypeVec>>> terms;
    bool neg = false;
    if (lx.peek() == '-') {
        lx.expect('-');
        neg = true;
    }
    while (true) {
        TermValue t = parse_term(lx);
        if (neg) t.coeff = -t.coeff;
        terms.emplace_back(std::move(t.coeff), std::move(t.basis));
        char c = lx.peek();
        if (c == '+' || c == '-') {
            lx.expect(c);
            neg = (c == '-');
            continue;
        }
        break;
    }
    if (!lx.eof()) lx.fail("trailing input");

    int rank = -1;
    for (auto& [c, b] : terms) {
        int r = b ? static_cast<int>(b->size()) : 0;
        if (rank == -1)
            rank = r;
        else if (rank != r)
            throw RankMismatchError("mixed ranks in element expression");
    }
    Element e(rank < 0 ? 0 : rank);
    for (auto& [c, b] : terms) e.add_term(b ? *b : TypeVec{}, c);
    return e;
}

Element parse_element(const std::string& text, int expected_rank) {
    Element e = parse_element(text);
    if (e.is_zero()) return Element::zero(expected_rank);
    if (e.rank() != expected_rank)
        throw RankMismatchError("expression rank " + std::to_string(e.rank()) +
                                " does not match requested rank " +
                                std::to_string(expected_rank));
    return e;
}

Scalar parse_scalar(const std::string& text) {
    Lexer lx(text);
    Scalar v = parse_scalar_sum(lx);
    if (!lx.eof()) lx.fail("trailing input");
    return v;
}

namespace {
bool is_single_monomial(const Scalar& s) { return s.terms().size() == 1; }
}  // namespace

std::string render_element(const Element& e) {
    if (e.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (auto& [v, c] : e.support()) {
        std::string cs = c.str();
        bool neg = false;
        if (is_single_monomial(c) && !cs.empty() && cs[0] == '-') {
            neg = true;
            cs = cs.substr(1);
        }
        if (first) {
            if (neg) out << "-";
        } else {
            out << (neg ? " - " : " + ");
        }
        first = false;
        std::ostringstream term;
        if (cs == "1") {
            // bare basis vector
        } else if (is_single_monomial(c)) {
            term << cs << "*";
        } else {
            term << "(" << cs << ")*";
        }
        term << "[";
        for (size_t i = 0; i < v.size(); ++i) {
            if (i) term << ",";
            term << v[i];
        }
        term << "]";
        out << term.str();
    }
    return out.str();
}

std::string element_to_json(const Element& e) {
    nlohmann::json arr = nlohmann::json::array();
    for (auto& [v, c] : e.support()) {
        nlohmann::json row;
        row["type"] = v;
        row["coeff"] = c.str();
        arr.push_back(row);
    }
    return arr.dump();
}

std::vector<std::vector<std::pair<long, long>>> parse_gram(const std::string& text) {
    std::vector<std::vector<std::pair<long, long>>> rows;
    std::vector<std::pair<long, long>> row;
    Lexer lx(text);
    while (!lx.eof()) {
        // entry := a | a+b*t | a-b*t | [-]t | [-]b*t
        long a = 0, b = 0;
        char c = lx.peek();
        if (c == 't') {
            lx.expect('t');
            b = 1;
        } else if ((c == '-' || c == '+') && lx.peek2() == 't') {
            lx.expect(c);
            lx.expect('t');
            b = c == '-' ? -1 : 1;
        } else {
            a = lx.integer();
            if (lx.peek() == '*') {  // it was b*t
                lx.expect('*');
                lx.expect('t');
                b = a;
                a = 0;
            } else if (lx.peek() == '+' || lx.peek() == '-') {
                size_t save = lx.pos();
                char sign = lx.peek();
                lx.expect(sign);
                if (lx.peek() == 't') {
                    lx.expect('t');
                    b = sign == '-' ? -1 : 1;
                } else {
                    long m = lx.integer();
                    if (lx.accept('*')) {
                        lx.expect('t');
                        b = sign == '-' ? -m : m;
                    } else {
                        // not a t-part; this is the next entry's sign, rewind
                        (void)save;
                        lx.fail("expected t-part after sign");
                    }
                }
            }
        }
        row.emplace_back(a, b);
        if (lx.accept(',')) continue;
        if (lx.accept(';')) {
            rows.push_back(std::move(row));
            row.clear();
            continue;
        }
        break;
    }
    if (!lx.eof()) lx.fail("trailing input in matrix");
    if (!row.empty()) rows.push_back(std::move(row));
    for (auto& r : rows)
        if (r.size() != rows.size())
            throw ParseError("gram matrix must be square");
    return rows;
}

TypeVec parse_typevec(const std::string& text) {
    Lexer lx(text);
    TypeVec v;
    if (lx.eof()) return v;
    v.push_back(static_cast<int>(lx.integer()));
    while (lx.accept(',')) v.push_back(static_cast<int>(lx.integer()));
    if (!lx.eof()) lx.fail("trailing input in type vector");
    return v;
}

}  // namespace sph
