#pragma once

#include "jetcov/jet_space.hpp"

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace jetcov::cli {

/// Names an expression may mention, with the roles that decide how an
/// identifier is canonicalized.
struct Scope {
	/// single letters, in declaration order
	std::vector<std::string> independent;
	/// dependent variables, fibers and related unknowns
	std::vector<std::string> dependent;
	std::vector<std::string> parameters;
	/// family fiber -> index of its direction
	std::map<std::string, std::size_t> families;

	bool declared(std::string_view name) const;
};

/**
 * Expression tree in canonical form: numbers are reduced non-negative
 * rationals, identifiers carry their canonical spelling (u_yx becomes u_xy
 * under t x y, v[1] becomes v_x for a family in x). Negation only occurs
 * where the grammar allows a leading minus.
 */
struct Expr {
	enum class Kind { number, identifier, negate, add, subtract, multiply, divide, power };

	Kind kind = Kind::number;
	Rational value;
	std::string name;
	unsigned exponent = 0;
	std::vector<Expr> args;

	static Expr number(Rational q);
	static Expr identifier(std::string name);
	static Expr unary(Kind kind, Expr a);
	static Expr binary(Kind kind, Expr a, Expr b);
	static Expr power(Expr base, unsigned exponent);

	friend bool operator==(const Expr &a, const Expr &b);
};

/**
 * expr   := ['-'] term (('+'|'-') term)*
 * term   := factor (('*'|'/') factor)*
 * factor := base ('^' uint)?
 * base   := number | ident | '(' expr ')'
 * number := int ('/' uint)?
 * ident  := name ('_' letters)? | name '[' uint ']'
 *
 * Throws ParseError with 1-based line and column (column offset by
 * `column`) for syntax errors and undeclared names.
 */
Expr parse_expression(std::string_view text, const Scope &scope,
                      std::size_t line = 1, std::size_t column = 1);

/// Canonical text; parse_expression(to_string(e)) == e.
std::string to_string(const Expr &e);

/// The canonical spelling of an identifier, or a ParseError.
std::string canonical_identifier(std::string_view ident, const Scope &scope,
                                 std::size_t line = 1, std::size_t column = 1);

/// Value over a jet context whose symbols carry the canonical names.
/// Throws TruncationError for a jet beyond the context's order.
RationalExpr evaluate(const Expr &e, const Scope &scope, const JetContext &ctx);

} // namespace jetcov::cli
