#pragma once

#include "jetcov/backlund.hpp"
#include "jetcov/cli/expression.hpp"
#include "jetcov/covering.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace jetcov::cli {

/// jet = rhs, one principal derivative
struct EquationLine {
	std::string principal;
	Expr rhs;
	friend bool operator==(const EquationLine &, const EquationLine &) = default;
};

struct CoverLine {
	/// independent variable letter
	std::string direction;
	Expr rhs;
	friend bool operator==(const CoverLine &, const CoverLine &) = default;
};

struct FiberBlock {
	std::string name;
	/// direction letter of a family fiber
	std::optional<std::string> family;
	std::vector<CoverLine> covers;
	friend bool operator==(const FiberBlock &, const FiberBlock &) = default;
};

/// lhs = rhs solved for `solve_for` (the lhs itself when omitted)
struct RelationLine {
	Expr lhs;
	Expr rhs;
	std::optional<std::string> solve_for;
	friend bool operator==(const RelationLine &, const RelationLine &) = default;
};

struct BacklundBlock {
	std::string name;
	std::string unknown;
	std::vector<RelationLine> relations;
	std::optional<EquationLine> target;
	friend bool operator==(const BacklundBlock &, const BacklundBlock &) = default;
};

/**
 * One problem: a base equation, optional fibers of a covering and
 * optional Baecklund blocks.
 *
 *   # comment
 *   name mkhz
 *   independent t x y
 *   dependent u
 *   parameter q
 *   equation u_yy = u_tx + (1/2*u_x^2 - u_y)*u_xx
 *   fiber v family x
 *   cover t: (1/2*u_x^2 + u_y)*v[1]
 *   cover y: u_x*v[1]
 *   order 3
 *   backlund to-w
 *   unknown w
 *   relation w_x = v
 *   relation w_y - u_x*v = 0 for w_y
 *   target w_yy = w_tx
 *   end
 *
 * Declarations may appear in any order; cover lines attach to the most
 * recent fiber and relations are solved in file order.
 */
struct ProblemFile {
	std::string name;
	std::vector<std::string> independent;
	std::vector<std::string> dependent;
	std::vector<std::string> parameters;
	std::vector<EquationLine> equations;
	std::vector<FiberBlock> fibers;
	std::vector<BacklundBlock> backlund;
	std::optional<unsigned> order;

	/// every variable name, fibers and unknowns included
	Scope scope() const;
	/// the scope of a Baecklund block, which adds its unknown
	Scope scope(const BacklundBlock &b) const;

	friend bool operator==(const ProblemFile &, const ProblemFile &) = default;
};

/// Throws ParseError carrying the line and column of the offence.
ProblemFile parse_problem(std::string_view text);
/// Canonical text: parse_problem(to_string(p)) == p.
std::string to_string(const ProblemFile &p);

/// K from the file, 3 when absent
unsigned flatness_order(const ProblemFile &p);

/// The mathematical objects a problem describes, over one jet context of
/// order K + 4 that holds every variable of the file.
struct ProblemModel {
	std::shared_ptr<const JetContext> context;
	Scope scope;
	std::optional<EquationIdeal> equation;
	std::optional<Covering> covering;
	/// the equations, plus the covering rules when there are fibers
	std::optional<SolvedSystem> system;
	std::vector<BacklundProblem> backlund;
};

ProblemModel build_model(const ProblemFile &p, unsigned order);

} // namespace jetcov::cli
