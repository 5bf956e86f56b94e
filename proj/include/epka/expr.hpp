#pragma once

#include <memory>
#include <string>

#include "epka/algebra.hpp"

namespace epka {

// AST of the element expression language:
//   expr   := term (("+"|"-") term)*
//   term   := coeff? factor* (at least one piece)
//   factor := atom "^*"?
//   atom   := "s(" path ")" | "u(" vertex "," gelt ")" | "(" expr ")"
//   path   := id ("." id)*          (vertex name or composable edge word)
//   coeff  := int | int ("+"|"-") int "i" | int "i" | "i"
//   gelt   := id | "[" int ("," int)* "]"
namespace ast {

struct Expr;

struct Atom {
    enum class Kind { S, U, Paren };
    Kind kind = Kind::S;
    std::vector<std::string> path_ids;          // S
    std::string vertex;                          // U
    bool gelt_is_vector = false;                 // U
    std::string gelt_name;
    std::vector<std::int64_t> gelt_vec;
    std::shared_ptr<Expr> sub;                   // Paren
};

struct Factor {
    Atom atom;
    bool star = false;
};

struct Term {
    bool has_coeff = false;
    std::int64_t re = 1;
    std::int64_t im = 0;
    std::vector<Factor> factors;
};

struct Expr {
    std::vector<std::pair<int, Term>> terms;  // sign is +1 / -1
};

}  // namespace ast

// Throws ParseError with a character position on malformed input.
ast::Expr parse_expression(const std::string& text);

Path resolve_path(const SelfSimilarSystem& sys, const std::vector<std::string>& ids);
Path parse_path_text(const SelfSimilarSystem& sys, const std::string& text);
GroupElement parse_group_element_text(const SelfSimilarSystem& sys, const std::string& text);
Degree parse_degree_text(int k, const std::string& text);

template <CoefficientRing R>
AlgebraElement<R> evaluate_expression(SystemPtr sys, const ast::Expr& expr) {
    const auto& graph = sys->graph();
    const auto& group = sys->group();
    AlgebraElement<R> out(sys);
    for (const auto& [sign, term] : expr.terms) {
        AlgebraElement<R> value = unit_element<R>(sys);
        bool have_factor = false;
        for (const auto& factor : term.factors) {
            AlgebraElement<R> piece(sys);
            switch (factor.atom.kind) {
                case ast::Atom::Kind::S:
                    piece = gen_s<R>(sys, resolve_path(*sys, factor.atom.path_ids));
                    break;
                case ast::Atom::Kind::U: {
                    auto v = graph.find_vertex(factor.atom.vertex);
                    if (!v)
                        throw Error(ErrorKind::UnknownVertex,
                                    "unknown vertex '" + factor.atom.vertex + "'");
                    GroupElement g;
                    if (factor.atom.gelt_is_vector) {
                        g.vec = factor.atom.gelt_vec;
                        group.check_element(g);
                    } else {
                        auto found = group.find(factor.atom.gelt_name);
                        if (!found)
                            throw Error(ErrorKind::UnknownElement,
                                        "unknown group element '" + factor.atom.gelt_name + "'");
                        g = *found;
                    }
                    piece = gen_u<R>(sys, *v, g);
                    break;
                }
                case ast::Atom::Kind::Paren:
                    piece = evaluate_expression<R>(sys, *factor.atom.sub);
                    break;
            }
            if (factor.star) piece = adjoint(piece);
            value = have_factor ? mul(value, piece) : piece;
            have_factor = true;
        }
        if (term.has_coeff) {
            auto coeff = R::from_parts(term.re, term.im);
            if (!coeff)
                throw Error(ErrorKind::ParseError,
                            "coefficient not representable over " + std::string(R::name));
            value = scalar_mul(*coeff, value);
        }
        if (sign < 0) value = scalar_mul(R::neg(R::one()), value);
        out = add(out, value);
    }
    return out;
}

template <CoefficientRing R>
AlgebraElement<R> parse_element(SystemPtr sys, const std::string& text) {
    return evaluate_expression<R>(std::move(sys), parse_expression(text));
}

// Canonical rendering in the same grammar; parse(print(a)) == a termwise.
template <CoefficientRing R>
std::string print_element(const AlgebraElement<R>& a) {
    if (a.empty()) return "0";
    const auto& graph = a.system()->graph();
    const auto& group = a.system()->group();
    std::string out;
    bool first = true;
    for (const auto& [t, c] : a.terms()) {
        std::vector<std::string> parts;
        if (!t.mu.is_vertex()) parts.push_back("s(" + graph.path_name(t.mu) + ")");
        if (!group.is_identity(t.g))
            parts.push_back("u(" + graph.vertex_name(t.mu.source) + "," + group.name(t.g) + ")");
        if (!t.nu.is_vertex()) parts.push_back("s(" + graph.path_name(t.nu) + ")^*");
        if (parts.empty()) parts.push_back("s(" + graph.vertex_name(t.mu.range) + ")");

        bool negative = R::leading_minus(c);
        auto magnitude = negative ? R::neg(c) : c;
        std::string body;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (i) body += " ";
            body += parts[i];
        }
        if (!R::is_one(magnitude)) body = R::to_string(magnitude) + " " + body;
        if (first) {
            out = (negative ? "-" : "") + body;
            first = false;
        } else {
            out += (negative ? " - " : " + ") + body;
        }
    }
    return out;
}

}  // namespace epka
