#pragma once

#include "jetcov/equation.hpp"
#include "jetcov/status.hpp"

#include <optional>
#include <string>
#include <vector>

namespace jetcov {

/// unknown_{x^direction} = rhs
struct BacklundRelation {
	std::size_t direction;
	RationalExpr rhs;
};

/**
 * Relations expressing first derivatives of a related unknown through the
 * jets of a base system. The base is the surviving side: an equation, or an
 * equation together with covering rules. Relation right-hand sides may
 * also contain jets of the related unknown that no relation governs.
 */
struct BacklundProblem {
	std::string name;
	SolvedSystem base;
	Symbol unknown;
	std::vector<BacklundRelation> relations;
	/// equation the related unknown is claimed to satisfy
	std::optional<SolvedRule> target;
};

/**
 * Solves lhs = rhs for the first derivative `principal` of the related
 * unknown, then replaces derivatives already given by `earlier`. Throws
 * UnsupportedError when the relation is not affine in `principal`.
 */
BacklundRelation solve_relation(const std::shared_ptr<const JetContext> &ctx,
                                const RationalExpr &lhs, const RationalExpr &rhs,
                                Symbol principal,
                                const std::vector<BacklundRelation> &earlier);

struct RuleMultiplier {
	Symbol principal;
	RationalExpr multiplier;
};

struct BacklundCondition {
	/// check id fragment, e.g. "D_y(u_x)-D_x(u_y)" or "target"
	std::string label;
	/// condition with the relations substituted, before the base is imposed
	RationalExpr condition;
	RationalExpr residual;
	/// condition = sum multiplier * (principal - rhs) when it has that form
	std::optional<std::vector<RuleMultiplier>> multipliers;
};

struct BacklundReport {
	CheckStatus status = CheckStatus::pass;
	std::vector<BacklundCondition> conditions;
	/// denominators assumed nonzero, sorted by printed form
	std::vector<Polynomial> genericity;
	std::string note;
};

/**
 * For related directions i < j the condition D_j(rhs_i) - D_i(rhs_j) is
 * reduced by the relations and then by the base; PASS needs every residual,
 * and the target residual when a target is given, to vanish.
 */
BacklundReport verify_backlund(const BacklundProblem &p);

} // namespace jetcov
