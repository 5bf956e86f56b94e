#include "epka/expr.hpp"

#include <cctype>

namespace epka {

namespace {

class Parser {
public:
    explicit Parser(const std::string& text) : text_(text) {}

    ast::Expr parse() {
        ast::Expr expr = parse_expr();
        skip_ws();
        if (pos_ != text_.size()) fail("trailing input");
        if (expr.terms.empty()) fail("empty expression");
        return expr;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw Error(ErrorKind::ParseError,
                    msg + " at position " + std::to_string(pos_));
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool peek_char(char c) {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    bool eat_char(char c) {
        if (!peek_char(c)) return false;
        ++pos_;
        return true;
    }

    void expect_char(char c) {
        if (!eat_char(c)) fail(std::string("expected '") + c + "'");
    }

    bool id_start(char c) const {
        return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
    }
    bool id_char(char c) const {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    }

    std::string parse_ident() {
        skip_ws();
        if (pos_ >= text_.size() || !id_start(text_[pos_])) fail("expected identifier");
        std::size_t start = pos_;
        while (pos_ < text_.size() && id_char(text_[pos_])) ++pos_;
        return text_.substr(start, pos_ - start);
    }

    bool at_digit() {
        skip_ws();
        return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
    }

    std::int64_t parse_uint() {
        skip_ws();
        if (!at_digit()) fail("expected number");
        std::int64_t value = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            value = value * 10 + (text_[pos_] - '0');
            if (value < 0) fail("integer literal too large");
            ++pos_;
        }
        return value;
    }

    std::int64_t parse_int() {
        skip_ws();
        std::int64_t sign = 1;
        if (eat_char('-')) sign = -1;
        else eat_char('+');
        return sign * parse_uint();
    }

    ast::Expr parse_expr() {
        ast::Expr expr;
        int sign = 1;
        if (eat_char('-')) sign = -1;
        expr.terms.emplace_back(sign, parse_term());
        while (true) {
            skip_ws();
            if (eat_char('+')) sign = 1;
            else if (eat_char('-')) sign = -1;
            else break;
            expr.terms.emplace_back(sign, parse_term());
        }
        return expr;
    }

    // "i" alone, "3i", "2", "1+2i", "1-2i"
    bool try_parse_coeff(ast::Term& term) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == 'i' &&
            (pos_ + 1 == text_.size() || !id_char(text_[pos_ + 1]))) {
            ++pos_;
            term.has_coeff = true;
            term.re = 0;
            term.im = 1;
            return true;
        }
        if (!at_digit()) return false;
        std::int64_t first = parse_uint();
        if (pos_ < text_.size() && text_[pos_] == 'i' &&
            (pos_ + 1 == text_.size() || !id_char(text_[pos_ + 1]))) {
            ++pos_;
            term.has_coeff = true;
            term.re = 0;
            term.im = first;
            return true;
        }
        term.has_coeff = true;
        term.re = first;
        term.im = 0;
        // lookahead for the "re +/- im i" form; only consume if it matches
        std::size_t save = pos_;
        skip_ws();
        if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
            std::int64_t imsign = text_[pos_] == '-' ? -1 : 1;
            ++pos_;
            skip_ws();
            if (at_digit()) {
                std::int64_t mag = parse_uint();
                if (pos_ < text_.size() && text_[pos_] == 'i' &&
                    (pos_ + 1 == text_.size() || !id_char(text_[pos_ + 1]))) {
                    ++pos_;
                    term.im = imsign * mag;
                    return true;
                }
            } else if (pos_ < text_.size() && text_[pos_] == 'i' &&
                       (pos_ + 1 == text_.size() || !id_char(text_[pos_ + 1]))) {
                ++pos_;
                term.im = imsign;
                return true;
            }
        }
        pos_ = save;
        return true;
    }

    ast::Term parse_term() {
        ast::Term term;
        try_parse_coeff(term);
        while (true) {
            skip_ws();
            if (pos_ >= text_.size()) break;
            char c = text_[pos_];
            if (c == '(' || (id_start(c) && (starts_atom()))) {
                term.factors.push_back(parse_factor());
            } else {
                break;
            }
        }
        if (!term.has_coeff && term.factors.empty()) fail("expected term");
        return term;
    }

    // atoms begin with "s(" or "u(" or "("
    bool starts_atom() {
        skip_ws();
        if (pos_ >= text_.size()) return false;
        if (text_[pos_] == '(') return true;
        if ((text_[pos_] == 's' || text_[pos_] == 'u') && pos_ + 1 < text_.size()) {
            std::size_t j = pos_ + 1;
            while (j < text_.size() && std::isspace(static_cast<unsigned char>(text_[j]))) ++j;
            return j < text_.size() && text_[j] == '(';
        }
        return false;
    }

    ast::Factor parse_factor() {
        ast::Factor factor;
        factor.atom = parse_atom();
        skip_ws();
        if (pos_ + 1 < text_.size() && text_[pos_] == '^' && text_[pos_ + 1] == '*') {
            pos_ += 2;
            factor.star = true;
        }
        return factor;
    }

    ast::Atom parse_atom() {
        skip_ws();
        if (pos_ >= text_.size()) fail("expected atom");
        ast::Atom atom;
        if (text_[pos_] == '(') {
            ++pos_;
            atom.kind = ast::Atom::Kind::Paren;
            atom.sub = std::make_shared<ast::Expr>(parse_expr());
            expect_char(')');
            return atom;
        }
        char head = text_[pos_];
        if (head == 's') {
            ++pos_;
            expect_char('(');
            atom.kind = ast::Atom::Kind::S;
            atom.path_ids.push_back(parse_ident());
            while (eat_char('.')) atom.path_ids.push_back(parse_ident());
            expect_char(')');
            return atom;
        }
        if (head == 'u') {
            ++pos_;
            expect_char('(');
            atom.kind = ast::Atom::Kind::U;
            atom.vertex = parse_ident();
            expect_char(',');
            skip_ws();
            if (peek_char('[')) {
                expect_char('[');
                atom.gelt_is_vector = true;
                atom.gelt_vec.push_back(parse_int());
                while (eat_char(',')) atom.gelt_vec.push_back(parse_int());
                expect_char(']');
            } else {
                atom.gelt_name = parse_ident();
            }
            expect_char(')');
            return atom;
        }
        fail("expected atom");
    }

    const std::string& text_;
    std::size_t pos_ = 0;
};

}  // namespace

ast::Expr parse_expression(const std::string& text) { return Parser(text).parse(); }

Path resolve_path(const SelfSimilarSystem& sys, const std::vector<std::string>& ids) {
    const auto& graph = sys.graph();
    if (ids.size() == 1) {
        if (auto v = graph.find_vertex(ids.front())) return graph.vertex_path(*v);
    }
    std::vector<EdgeId> word;
    for (const auto& id : ids) {
        auto e = graph.find_edge(id);
        if (!e) {
            auto kind = graph.find_vertex(id) ? ErrorKind::NonComposable : ErrorKind::UnknownEdge;
            throw Error(kind, "'" + id + "' is not an edge");
        }
        word.push_back(*e);
    }
    return graph.path_from_word(word);
}

Path parse_path_text(const SelfSimilarSystem& sys, const std::string& text) {
    std::vector<std::string> ids;
    std::string cur;
    for (char c : text) {
        if (c == '.') {
            ids.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur += c;
        }
    }
    ids.push_back(cur);
    return resolve_path(sys, ids);
}

GroupElement parse_group_element_text(const SelfSimilarSystem& sys, const std::string& text) {
    const auto& group = sys.group();
    std::string trimmed;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) trimmed += c;
    if (!trimmed.empty() && trimmed.front() == '[') {
        if (trimmed.back() != ']')
            throw Error(ErrorKind::ParseError, "unterminated vector '" + text + "'");
        GroupElement g;
        std::string body = trimmed.substr(1, trimmed.size() - 2);
        std::size_t start = 0;
        while (start <= body.size()) {
            std::size_t comma = body.find(',', start);
            std::string piece = body.substr(start, comma == std::string::npos
                                                       ? std::string::npos
                                                       : comma - start);
            if (piece.empty()) throw Error(ErrorKind::ParseError, "empty vector entry");
            g.vec.push_back(std::stoll(piece));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        group.check_element(g);
        return g;
    }
    auto found = group.find(trimmed);
    if (!found)
        throw Error(ErrorKind::UnknownElement, "unknown group element '" + text + "'");
    return *found;
}

Degree parse_degree_text(int k, const std::string& text) {
    std::string body;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')') body += c;
    std::vector<std::int64_t> entries;
    std::size_t start = 0;
    while (start <= body.size() && !body.empty()) {
        std::size_t comma = body.find(',', start);
        std::string piece = body.substr(start, comma == std::string::npos ? std::string::npos
                                                                          : comma - start);
        if (piece.empty()) throw Error(ErrorKind::ParseError, "empty degree entry");
        entries.push_back(std::stoll(piece));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (entries.size() == 1 && k > 1) entries.assign(k, entries.front());
    if (entries.size() != static_cast<std::size_t>(k))
        throw Error(ErrorKind::ParseError, "degree needs " + std::to_string(k) + " entries");
    return Degree(entries);
}

}  // namespace epka
