#pragma once

#include "jetcov/polynomial.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace jetcov {

/// One factor of a denominator: a non-constant primitive integer
/// polynomial with positive leading coefficient, raised to `mult`.
struct DenominatorFactor {
	Polynomial base;
	unsigned mult = 0;
	friend bool operator==(const DenominatorFactor &,
	                       const DenominatorFactor &) = default;
};

/**
 * Exact rational function over Q.
 *
 * The denominator is kept as a product of distinct factors (sorted, each
 * primitive with positive leading coefficient); all rational content lives
 * in the numerator. Sums use the factor-wise lcm of denominators and every
 * result cancels factors that divide the numerator exactly. That is not a
 * full gcd reduction, so two equal values may be stored differently; use
 * is_zero(a - b) (or operator==) to compare values and identical() to
 * compare representations.
 */
class RationalExpr {
public:
	RationalExpr() = default;
	RationalExpr(const Rational &c) : num_(c) {}
	RationalExpr(long c) : num_(Rational(c)) {}
	RationalExpr(Polynomial p) : num_(std::move(p)) {}

	static RationalExpr symbol(Symbol s) { return Polynomial::variable(s); }
	/// throws DivisionByZero if den is the zero polynomial
	static RationalExpr fraction(Polynomial num, const Polynomial &den);

	const Polynomial &numerator() const noexcept { return num_; }
	const std::vector<DenominatorFactor> &denominator_factors() const noexcept
	{
		return den_;
	}
	/// the expanded product of the denominator factors
	Polynomial denominator() const;

	bool is_zero() const noexcept { return num_.is_zero(); }
	bool is_polynomial() const noexcept { return den_.empty(); }
	std::optional<Rational> constant_value() const;
	bool contains(Symbol s) const;
	/// sorted by id, no repeats
	std::vector<Symbol> variables() const;

	RationalExpr inverse() const;
	RationalExpr pow(int k) const;

	RationalExpr operator-() const;
	RationalExpr &operator+=(const RationalExpr &o);
	RationalExpr &operator-=(const RationalExpr &o);
	RationalExpr &operator*=(const RationalExpr &o);
	RationalExpr &operator/=(const RationalExpr &o);

	friend RationalExpr operator+(RationalExpr a, const RationalExpr &b)
	{
		return a += b;
	}
	friend RationalExpr operator-(RationalExpr a, const RationalExpr &b)
	{
		return a -= b;
	}
	friend RationalExpr operator*(RationalExpr a, const RationalExpr &b)
	{
		return a *= b;
	}
	friend RationalExpr operator/(RationalExpr a, const RationalExpr &b)
	{
		return a /= b;
	}

	/// value equality (decided exactly through the numerator of a - b)
	friend bool operator==(const RationalExpr &a, const RationalExpr &b);
	/// representation equality
	bool identical(const RationalExpr &o) const
	{
		return num_ == o.num_ && den_ == o.den_;
	}

	/// Re-runs canonicalization. Values built through the public API are
	/// already canonical; this exists so idempotence can be tested.
	RationalExpr normalized() const;

private:
	friend RationalExpr apply_derivation(
	    const RationalExpr &a, const std::function<Polynomial(Symbol)> &delta);

	void normalize();
	void multiply_denominator(const Polynomial &p);

	Polynomial num_;
	std::vector<DenominatorFactor> den_;
};

enum class ArithOp { add, sub, mul, div };

/// The four field operations behind one entry point; div throws
/// DivisionByZero naming the operation.
RationalExpr arithmetic(const RationalExpr &a, const RationalExpr &b,
                        ArithOp op);

inline bool is_zero(const RationalExpr &a) { return a.is_zero(); }

RationalExpr partial_derivative(const RationalExpr &a, Symbol s);

/// Applies the derivation determined by its values on symbols: delta(s) is
/// queried once for every symbol occurring in a.
RationalExpr apply_derivation(const RationalExpr &a,
                              const std::function<Polynomial(Symbol)> &delta);

using SubstitutionMap = std::map<Symbol, RationalExpr>;

/// Simultaneous substitution. Throws SubstitutionError if a rule's value
/// mentions a substituted symbol or a denominator becomes zero.
RationalExpr substitute(const RationalExpr &a, const SubstitutionMap &rules);

/// Canonical text in the expression grammar of problem files.
std::string to_string(const RationalExpr &a);

} // namespace jetcov
