#pragma once

#include "jetcov/equation.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace jetcov {

/// Strictly increasing (by symbol id) list of coordinate differentials.
using Basis = std::vector<Symbol>;

/**
 * Differential form with RationalExpr coefficients over coordinate
 * covectors ds. Covectors are exactly the coordinate symbols; there are no
 * abstract frames. The zero form has an empty term map whatever its
 * nominal degree.
 */
class DifferentialForm {
public:
	DifferentialForm() = default;
	/// 0-form
	DifferentialForm(RationalExpr f);

	static DifferentialForm zero(unsigned degree);
	/// ds
	static DifferentialForm differential(Symbol s);
	/// c ds_1 ^ ... ^ ds_k in any order (sign and repeats handled)
	static DifferentialForm term(RationalExpr c, std::vector<Symbol> covectors);

	unsigned degree() const noexcept { return degree_; }
	bool is_zero() const noexcept { return terms_.empty(); }
	const std::map<Basis, RationalExpr> &terms() const noexcept
	{
		return terms_;
	}
	/// coefficient of ds_1 ^ ... ^ ds_k, covectors in any order
	RationalExpr coefficient(std::vector<Symbol> covectors) const;
	/// every symbol s whose ds occurs
	std::vector<Symbol> covectors() const;
	/// every symbol occurring in a coefficient
	std::vector<Symbol> coefficient_variables() const;

	DifferentialForm operator-() const;
	DifferentialForm &operator+=(const DifferentialForm &o);
	DifferentialForm &operator-=(const DifferentialForm &o);
	DifferentialForm &operator*=(const RationalExpr &f);
	friend DifferentialForm operator+(DifferentialForm a,
	                                  const DifferentialForm &b)
	{
		return a += b;
	}
	friend DifferentialForm operator-(DifferentialForm a,
	                                  const DifferentialForm &b)
	{
		return a -= b;
	}
	friend DifferentialForm operator*(const RationalExpr &f,
	                                  DifferentialForm a)
	{
		return a *= f;
	}

	/// coefficient-wise value equality
	friend bool operator==(const DifferentialForm &a,
	                       const DifferentialForm &b);

	DifferentialForm
	map_coefficients(const std::function<RationalExpr(const RationalExpr &)> &f)
	    const;

private:
	void add_term(Basis b, RationalExpr c);
	unsigned degree_ = 0;
	std::map<Basis, RationalExpr> terms_;
};

DifferentialForm wedge(const DifferentialForm &a, const DifferentialForm &b);
DifferentialForm wedge(std::span<const DifferentialForm> forms);
DifferentialForm exterior_derivative(const DifferentialForm &w);
inline DifferentialForm d(const RationalExpr &f)
{
	return exterior_derivative(DifferentialForm(f));
}

struct AnnihilationResult {
	bool annihilated;
	DifferentialForm residual;
};

/**
 * Tests w ^ g_1 ^ ... ^ g_m == 0.
 *
 * For a 1-form w and pointwise independent 1-forms g_k this is exactly
 * membership of w in the ideal they generate. For forms of higher degree it
 * is only the necessary condition implied by such membership.
 */
AnnihilationResult annihilation_check(const DifferentialForm &w,
                                      std::span<const DifferentialForm> gens);

/// Pullback along s -> rules[s]: coefficients are substituted and every ds
/// with s in rules becomes d(rules[s]).
DifferentialForm pullback(const DifferentialForm &w,
                          const SubstitutionMap &rules);

/// Restriction to the equation manifold: every principal jet p is replaced
/// by its reduced value and dp by the differential of that value.
DifferentialForm pullback_on_equation(const DifferentialForm &w,
                                      const SolvedSystem &system);
inline DifferentialForm pullback_on_equation(const DifferentialForm &w,
                                             const EquationIdeal &e)
{
	return pullback_on_equation(w, e.system());
}

/// Terms ordered by covector names; each covector list printed in name
/// order with the sign folded into the coefficient.
std::string to_string(const DifferentialForm &w);

} // namespace jetcov
