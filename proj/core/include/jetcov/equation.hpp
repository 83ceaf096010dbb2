#pragma once

#include "jetcov/jet_space.hpp"

#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

namespace jetcov {

/// u^a_K = rhs
struct SolvedRule {
	std::size_t dependent;
	MultiIndex index;
	RationalExpr rhs;
};

/**
 * A set of PDEs in solved form together with all of their prolongations.
 *
 * A jet u^a_I is *principal* when some rule u^a_K = rhs has K contained in
 * I; the first such rule in declaration order governs it. Its value is
 * D_{I-K}(rhs), built one derivative at a time and reduced after each
 * step, and memoized. Everything else is parametric. reduce() replaces
 * every principal jet by its value, so results only ever contain
 * parametric coordinates.
 *
 * One scalar equation is the usual case; coverings and Baecklund
 * relations add rules for further dependent variables.
 */
class SolvedSystem {
public:
	SolvedSystem(std::shared_ptr<const JetContext> ctx,
	             std::vector<SolvedRule> rules);

	const JetContext &context() const noexcept { return *ctx_; }
	const std::shared_ptr<const JetContext> &context_ptr() const noexcept
	{
		return ctx_;
	}
	const std::vector<SolvedRule> &rules() const noexcept { return rules_; }
	Symbol principal(std::size_t rule) const;
	/// principal - rhs for one rule
	RationalExpr defining_expression(std::size_t rule) const;

	std::optional<std::size_t> governing_rule(Symbol s) const;
	bool is_principal(Symbol s) const { return governing_rule(s).has_value(); }

	/// reduced value of a principal jet; throws TruncationError
	RationalExpr value(Symbol jet) const;
	RationalExpr reduce(const RationalExpr &a) const;
	/// reduce o D_i o reduce
	RationalExpr total_derivative(const RationalExpr &a, std::size_t i) const;

	/// Writes a as sum_r m_r * (p_r - rhs_r) over the rules whose principal
	/// occurs in a. Returns nullopt when a is not of that form; an empty
	/// list means a is identically zero.
	std::optional<std::vector<std::pair<std::size_t, RationalExpr>>>
	multipliers(const RationalExpr &a) const;

private:
	struct Cache {
		std::mutex mutex;
		std::unordered_map<Symbol, RationalExpr> values;
	};

	std::shared_ptr<const JetContext> ctx_;
	std::vector<SolvedRule> rules_;
	std::vector<Symbol> principals_;
	std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

/// Solves F = 0 for p when F is affine in p with a nonzero coefficient.
std::optional<RationalExpr> solve_affine(const RationalExpr &f, Symbol p);

/**
 * A scalar PDE  principal = rhs  viewed as the submanifold E^oo of the jet
 * space: the equation together with all its total-derivative
 * prolongations.
 */
class EquationIdeal {
public:
	/// rhs must not mention the principal jet or any of its prolongations
	EquationIdeal(std::shared_ptr<const JetContext> ctx, Symbol principal,
	              RationalExpr rhs);

	/// lhs = rhs re-solved for `principal`; throws UnsupportedError when the
	/// equation is not affine in it
	static EquationIdeal solve_for(std::shared_ptr<const JetContext> ctx,
	                               const RationalExpr &lhs,
	                               const RationalExpr &rhs, Symbol principal);

	Symbol principal() const { return system_.principal(0); }
	std::size_t dependent() const { return system_.rules()[0].dependent; }
	const MultiIndex &principal_index() const
	{
		return system_.rules()[0].index;
	}
	const RationalExpr &rhs() const { return system_.rules()[0].rhs; }
	RationalExpr defining_expression() const
	{
		return system_.defining_expression(0);
	}

	const SolvedSystem &system() const noexcept { return system_; }
	const JetContext &context() const noexcept { return system_.context(); }
	const std::shared_ptr<const JetContext> &context_ptr() const noexcept
	{
		return system_.context_ptr();
	}

	RationalExpr reduce(const RationalExpr &a) const
	{
		return system_.reduce(a);
	}
	/// reduced D_K(principal)
	RationalExpr prolong(const MultiIndex &k) const;
	RationalExpr restricted_total_derivative(const RationalExpr &a,
	                                         std::size_t i) const
	{
		return system_.total_derivative(a, i);
	}

private:
	SolvedSystem system_;
};

} // namespace jetcov
