#pragma once

#include "jetcov/symbol.hpp"

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace jetcov {

using Rational = mpq_class;

struct VarPower {
	std::uint32_t var; // Symbol id
	std::uint32_t exp; // always > 0 when stored
	friend bool operator==(const VarPower &, const VarPower &) = default;
};

/**
 * Power product of symbols, stored sparsely as (symbol id, exponent) pairs
 * sorted by ascending id.
 *
 * Ordering is graded lexicographic: total degree first, then exponents
 * compared variable by variable, where a smaller symbol id is the more
 * significant variable.
 */
class Monomial {
public:
	Monomial() = default;
	static Monomial variable(Symbol s, std::uint32_t exp = 1);

	std::span<const VarPower> factors() const noexcept { return factors_; }
	std::uint32_t degree() const noexcept { return degree_; }
	std::uint32_t degree(Symbol s) const noexcept;
	bool is_one() const noexcept { return factors_.empty(); }

	/// true iff this monomial divides `other`
	bool divides(const Monomial &other) const noexcept;
	Monomial operator*(const Monomial &other) const;
	/// exact quotient; requires `d.divides(*this)`
	Monomial operator/(const Monomial &d) const;

	static Monomial gcd(const Monomial &a, const Monomial &b);

	friend bool operator==(const Monomial &, const Monomial &) = default;
	friend std::strong_ordering operator<=>(const Monomial &a,
	                                        const Monomial &b) noexcept;

private:
	std::vector<VarPower> factors_;
	std::uint32_t degree_ = 0;
};

struct Term {
	Monomial mono;
	Rational coeff;
	friend bool operator==(const Term &a, const Term &b)
	{
		return a.mono == b.mono && a.coeff == b.coeff;
	}
};

/// Sparse multivariate polynomial over Q. Terms are kept strictly
/// decreasing in graded-lex order with no zero coefficients.
class Polynomial {
public:
	Polynomial() = default;
	Polynomial(const Rational &c);
	Polynomial(long c) : Polynomial(Rational(c)) {}

	static Polynomial variable(Symbol s);
	static Polynomial monomial(Monomial m, Rational c = 1);
	/// Accepts terms in any order, with repeats and zeros.
	static Polynomial from_terms(std::vector<Term> terms);

	bool is_zero() const noexcept { return terms_.empty(); }
	bool is_constant() const noexcept;
	std::optional<Rational> constant_value() const;
	std::size_t size() const noexcept { return terms_.size(); }
	const std::vector<Term> &terms() const noexcept { return terms_; }
	/// requires !is_zero()
	const Term &leading() const { return terms_.front(); }

	std::uint32_t total_degree() const noexcept;
	std::uint32_t degree(Symbol s) const noexcept;
	bool contains(Symbol s) const noexcept;
	/// sorted by id, no repeats
	std::vector<Symbol> variables() const;
	/// coefficient of s^k as a polynomial in the remaining symbols
	Polynomial coefficient(Symbol s, std::uint32_t k) const;

	/// positive rational c with this/c having coprime integer coefficients
	Rational content() const;
	Monomial monomial_content() const;

	Polynomial derivative(Symbol s) const;
	Polynomial pow(unsigned k) const;
	std::optional<Polynomial> divide_exact(const Polynomial &d) const;
	/// requires m to divide every term
	Polynomial divide(const Monomial &m) const;
	Polynomial multiply(const Monomial &m, const Rational &c) const;

	Polynomial operator-() const;
	Polynomial &operator+=(const Polynomial &o);
	Polynomial &operator-=(const Polynomial &o);
	Polynomial &operator*=(const Rational &c);
	friend Polynomial operator+(Polynomial a, const Polynomial &b)
	{
		return a += b;
	}
	friend Polynomial operator-(Polynomial a, const Polynomial &b)
	{
		return a -= b;
	}
	friend Polynomial operator*(const Polynomial &a, const Polynomial &b);
	friend Polynomial operator*(Polynomial a, const Rational &c)
	{
		return a *= c;
	}

	friend bool operator==(const Polynomial &, const Polynomial &) = default;
	/// arbitrary but deterministic total order (used to sort factor lists)
	friend std::strong_ordering compare(const Polynomial &a,
	                                    const Polynomial &b);

private:
	std::vector<Term> terms_;
};

std::string to_string(const Rational &q);
/// Terms sorted by degree, then by display names; independent of
/// symbol registration order.
std::string to_string(const Polynomial &p);
std::string to_string(const Monomial &m);

} // namespace jetcov
