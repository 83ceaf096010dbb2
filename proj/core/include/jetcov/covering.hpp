#pragma once

#include "jetcov/exterior.hpp"
#include "jetcov/status.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace jetcov {

/**
 * One fiber variable of a covering.
 *
 * A plain fiber w carries T^w_i for every direction. A family fiber v in
 * direction x stands for v_0 = v, v_k = v_{x...x}; D~_x v_k = v_{k+1} is the
 * stacking rule, so `transport` holds T^{v_0}_i for the other directions
 * only and may mention any v_k. Fiber coordinates are the jets of v in the
 * covering's context, so v_1 is the symbol v_x.
 */
struct FiberDeclaration {
	Symbol name;
	std::optional<std::size_t> family_direction;
	std::map<std::size_t, RationalExpr> transport;
};

/**
 * Covering E~ = E x V over an equation. The base context must declare the
 * fiber names as extra dependent variables. Extended total derivatives are
 * the restricted ones plus the transport terms; both are realised by a
 * single SolvedSystem in which v_i = T^v_i are further rules.
 */
class Covering {
public:
	Covering(EquationIdeal base, std::vector<FiberDeclaration> fibers,
	         unsigned family_order = 3);

	const EquationIdeal &base() const noexcept { return base_; }
	const JetContext &context() const noexcept { return base_.context(); }
	const std::vector<FiberDeclaration> &fibers() const noexcept
	{
		return fibers_;
	}
	unsigned family_order() const noexcept { return family_order_; }

	/// equation plus transport rules
	const SolvedSystem &system() const noexcept { return system_; }
	/// transport rules only: the equation itself is not imposed
	const SolvedSystem &fiber_system() const noexcept { return fiber_system_; }

	/// v_0..v_order for family fibers, the plain fibers once each
	std::vector<Symbol> fiber_coordinates(unsigned order) const;
	bool is_fiber_coordinate(Symbol s) const;

	/// T^kappa_i for a fiber coordinate, reduced on E~
	RationalExpr transport(Symbol fiber_coordinate, std::size_t i) const;
	RationalExpr extended_total_derivative(const RationalExpr &a,
	                                       std::size_t i) const;

	/// D~_i D~_j s - D~_j D~_i s computed without imposing the equation
	RationalExpr unreduced_commutator(std::size_t i, std::size_t j,
	                                  Symbol fiber_coordinate) const;

private:
	EquationIdeal base_;
	std::vector<FiberDeclaration> fibers_;
	unsigned family_order_;
	SolvedSystem system_;
	SolvedSystem fiber_system_;
};

struct CommutatorResidual {
	std::size_t i;
	std::size_t j;
	Symbol fiber_coordinate;
	/// reduce(D~_i D~_j v - D~_j D~_i v)
	RationalExpr residual;
	/// m with unreduced commutator = m * (principal - rhs), when it has that form
	std::optional<RationalExpr> multiplier;
};

struct FlatnessReport {
	CheckStatus status = CheckStatus::pass;
	unsigned order = 0;
	std::vector<CommutatorResidual> residuals;
	std::string note;
};

/// [D~_i, D~_j] on every fiber coordinate up to `order` and every pair
/// i < j. A truncation overflow makes the report INCONCLUSIVE.
FlatnessReport flatness_check(const Covering &c, unsigned order);

/// theta~ = dv - T_i dx^i
struct WEForm {
	Symbol fiber_coordinate;
	DifferentialForm form;
};

/// theta~_0 .. theta~_k for each family fiber, one form per plain fiber
std::vector<WEForm> we_forms(const Covering &c, unsigned k);

/// Restricted contact form ds - D~_i(s) dx^i for a coordinate of E~.
DifferentialForm restricted_contact_form(const Covering &c, Symbol s);

struct ClosureReport {
	CheckStatus status = CheckStatus::pass;
	/// d theta~ modulo the ideal, per WE form; zero forms on success
	std::vector<std::pair<Symbol, DifferentialForm>> residuals;
	std::string note;
};

/**
 * d theta~_m == 0 mod (theta~, contact forms) for m <= k. The restricted
 * coordinates s occurring in d theta~_m together with dx^i form a coframe,
 * so wedging with every ds - D~_i(s) dx^i decides membership exactly.
 */
ClosureReport we_closure_check(const Covering &c, unsigned k);

} // namespace jetcov
