// Text front end for Exprs: a whitespace-insensitive expression grammar with
// positioned parse errors, a pretty printer that round-trips through the
// parser, and a JSON serialization of the canonical form.
//
// Grammar:
//   expr    := term (("+"|"-") term)*
//   term    := [rational ("/" natural)?] factor
//   factor  := ":" factor factor+ ":" | "d^" natural factor | gen
//            | "(" expr ")" | "1"
//   gen     := ("b"|"c"|"beta"|"gamma") "[" ident "]"
// ":f1 f2 ... fk:" is the right-nested iterated Wick product, "d^k" the k-th
// derivative, "1" the vacuum vector.  Generator idents are resolved against
// the supplied basis labels.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "voaforge/expr.hpp"

namespace voaforge {

struct ParseError : std::runtime_error {
    int line = 1;
    int column = 1;
    ParseError(const std::string& what, int line_, int column_)
        : std::runtime_error("line " + std::to_string(line_) + ", column " +
                             std::to_string(column_) + ": " + what),
          line(line_),
          column(column_) {}
};

// Parses `text` against the grammar; generator idents must be basis labels.
Expr parse_expr(const std::string& text,
                const std::vector<std::string>& labels);

// Grammar-conforming rendering of the canonical form;
// parse_expr(format_expr(e)) == e.
std::string format_expr(const Expr& e, const std::vector<std::string>& labels);

// {"terms":[{"coeff":"p/q","letters":[["b","x",0],...]},...]}
std::string expr_to_json(const Expr& e, const std::vector<std::string>& labels);

}  // namespace voaforge
