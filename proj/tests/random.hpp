#pragma once

#include "jetcov/exterior.hpp"

#include <random>
#include <string>
#include <vector>

namespace jetcov::testing {

inline RationalExpr sym(const char *name)
{
	return RationalExpr::symbol(Symbol::intern(name));
}

inline RationalExpr q(long n, long d = 1) { return RationalExpr(Rational(n, d)); }

/// random polynomial of bounded degree in the given symbols
inline Polynomial random_polynomial(std::mt19937 &rng,
                                    const std::vector<Symbol> &vars,
                                    unsigned max_terms, unsigned max_degree)
{
	std::uniform_int_distribution<int> coeff(-5, 5);
	std::uniform_int_distribution<unsigned> nterms(1, max_terms);
	std::uniform_int_distribution<unsigned> deg(0, max_degree);
	std::uniform_int_distribution<std::size_t> pick(0, vars.size() - 1);
	Polynomial p;
	unsigned n = nterms(rng);
	for (unsigned t = 0; t < n; ++t)
	{
		Monomial m;
		unsigned d = deg(rng);
		for (unsigned k = 0; k < d; ++k)
			m = m * Monomial::variable(vars[pick(rng)]);
		int c = coeff(rng);
		if (c == 0)
			c = 1;
		p += Polynomial::monomial(m, Rational(c, 1 + static_cast<int>(rng() % 3)));
	}
	return p;
}

/// random rational function; the denominator is a nonzero polynomial
inline RationalExpr random_rational(std::mt19937 &rng,
                                    const std::vector<Symbol> &vars)
{
	Polynomial num = random_polynomial(rng, vars, 3, 2);
	if (rng() % 2)
		return num;
	Polynomial den;
	do
		den = random_polynomial(rng, vars, 2, 2);
	while (den.is_zero());
	return RationalExpr(num) / RationalExpr(den);
}

} // namespace jetcov::testing
