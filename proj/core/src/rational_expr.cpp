#include "jetcov/rational_expr.hpp"

#include "jetcov/error.hpp"

#include <algorithm>
#include <cassert>
#include <unordered_map>

namespace jetcov {

namespace {

bool is_single_variable(const Polynomial &p)
{
	return p.size() == 1 && p.leading().mono.degree() == 1;
}

// p = unit * m * r with r primitive, positive leading coefficient;
// returns unit (a signed rational) and appends factors of m and r.
Rational split_polynomial(const Polynomial &p,
                          std::vector<DenominatorFactor> &out)
{
	Rational c = p.content();
	if (sgn(p.leading().coeff) < 0)
		c = -c;
	Monomial m = p.monomial_content();
	for (const auto &f : m.factors())
		out.push_back({Polynomial::variable(Symbol::from_id(f.var)), f.exp});
	if (p.size() > 1)
	{
		Polynomial r = p.divide(m);
		r *= Rational(1) / c;
		out.push_back({std::move(r), 1});
	}
	return c;
}

void sort_and_merge(std::vector<DenominatorFactor> &f)
{
	std::sort(f.begin(), f.end(), [](const auto &a, const auto &b) {
		return compare(a.base, b.base) < 0;
	});
	std::vector<DenominatorFactor> merged;
	for (auto &x : f)
	{
		if (!merged.empty() && merged.back().base == x.base)
			merged.back().mult += x.mult;
		else if (x.mult > 0)
			merged.push_back(std::move(x));
	}
	f = std::move(merged);
}

// Cancels as many copies of each factor from num as divide it exactly.
void cancel(Polynomial &num, std::vector<DenominatorFactor> &den)
{
	for (auto &f : den)
	{
		if (num.is_zero())
			break;
		if (is_single_variable(f.base))
		{
			Symbol x = Symbol::from_id(f.base.leading().mono.factors()[0].var);
			std::uint32_t k = f.mult;
			for (const auto &t : num.terms())
			{
				k = std::min(k, t.mono.degree(x));
				if (k == 0)
					break;
			}
			if (k > 0)
			{
				num = num.divide(Monomial::variable(x, k));
				f.mult -= k;
			}
			continue;
		}
		while (f.mult > 0)
		{
			auto q = num.divide_exact(f.base);
			if (!q)
				break;
			num = std::move(*q);
			--f.mult;
		}
	}
	if (num.is_zero())
		den.clear();
	std::erase_if(den, [](const auto &f) { return f.mult == 0; });
}

Polynomial product(const std::vector<DenominatorFactor> &den,
                   const std::vector<unsigned> &mult)
{
	Polynomial p(1);
	for (std::size_t i = 0; i < den.size(); ++i)
		if (mult[i] > 0)
			p = p * den[i].base.pow(mult[i]);
	return p;
}

} // namespace

RationalExpr RationalExpr::fraction(Polynomial num, const Polynomial &den)
{
	if (den.is_zero())
		throw DivisionByZero("fraction");
	RationalExpr r(std::move(num));
	r.multiply_denominator(den);
	r.normalize();
	return r;
}

void RationalExpr::multiply_denominator(const Polynomial &p)
{
	assert(!p.is_zero());
	std::vector<DenominatorFactor> fresh;
	Rational unit = split_polynomial(p, fresh);
	num_ *= Rational(1) / unit;
	for (auto &f : fresh)
	{
		// peel off factors that are already known
		if (!is_single_variable(f.base))
			for (auto &known : den_)
			{
				if (is_single_variable(known.base))
					continue;
				while (f.base.size() > 1)
				{
					if (f.base == known.base)
					{
						known.mult += f.mult;
						f.mult = 0;
						break;
					}
					auto q = f.base.divide_exact(known.base);
					if (!q)
						break;
					known.mult += f.mult;
					f.base = std::move(*q);
					if (sgn(f.base.leading().coeff) < 0)
					{
						f.base = -f.base;
						num_ = -num_;
					}
				}
				if (f.mult == 0 || f.base.size() <= 1)
					break;
			}
		if (f.mult == 0)
			continue;
		if (f.base.is_constant())
		{
			num_ *= Rational(1) / f.base.leading().coeff;
			continue;
		}
		if (f.base.size() == 1)
		{
			// a quotient can collapse to a monomial
			std::vector<DenominatorFactor> more;
			num_ *= Rational(1) / split_polynomial(f.base, more);
			for (auto &m : more)
				m.mult *= f.mult;
			den_.insert(den_.end(), more.begin(), more.end());
			continue;
		}
		den_.push_back(std::move(f));
	}
	sort_and_merge(den_);
}

void RationalExpr::normalize()
{
	sort_and_merge(den_);
	cancel(num_, den_);
}

RationalExpr RationalExpr::normalized() const
{
	RationalExpr r = *this;
	r.normalize();
	return r;
}

Polynomial RationalExpr::denominator() const
{
	Polynomial p(1);
	for (const auto &f : den_)
		p = p * f.base.pow(f.mult);
	return p;
}

std::optional<Rational> RationalExpr::constant_value() const
{
	if (!den_.empty())
		return std::nullopt;
	return num_.constant_value();
}

bool RationalExpr::contains(Symbol s) const
{
	if (num_.contains(s))
		return true;
	for (const auto &f : den_)
		if (f.base.contains(s))
			return true;
	return false;
}

std::vector<Symbol> RationalExpr::variables() const
{
	auto v = num_.variables();
	for (const auto &f : den_)
	{
		auto w = f.base.variables();
		v.insert(v.end(), w.begin(), w.end());
	}
	std::sort(v.begin(), v.end());
	v.erase(std::unique(v.begin(), v.end()), v.end());
	return v;
}

RationalExpr RationalExpr::inverse() const
{
	if (num_.is_zero())
		throw DivisionByZero("inverse");
	RationalExpr r(denominator());
	r.multiply_denominator(num_);
	r.normalize();
	return r;
}

RationalExpr RationalExpr::pow(int k) const
{
	if (k < 0)
		return inverse().pow(-k);
	RationalExpr r(num_.pow(static_cast<unsigned>(k)));
	r.den_ = den_;
	for (auto &f : r.den_)
		f.mult *= static_cast<unsigned>(k);
	if (k == 0)
		r.den_.clear();
	return r;
}

RationalExpr RationalExpr::operator-() const
{
	RationalExpr r = *this;
	r.num_ = -r.num_;
	return r;
}

RationalExpr &RationalExpr::operator+=(const RationalExpr &o)
{
	if (o.is_zero())
		return *this;
	if (is_zero())
		return *this = o;
	if (den_ == o.den_)
	{
		num_ += o.num_;
		normalize();
		return *this;
	}
	// factor-wise lcm
	std::vector<DenominatorFactor> lcm = den_;
	lcm.insert(lcm.end(), o.den_.begin(), o.den_.end());
	std::sort(lcm.begin(), lcm.end(), [](const auto &a, const auto &b) {
		return compare(a.base, b.base) < 0;
	});
	std::vector<DenominatorFactor> merged;
	for (auto &f : lcm)
	{
		if (!merged.empty() && merged.back().base == f.base)
			merged.back().mult = std::max(merged.back().mult, f.mult);
		else
			merged.push_back(f);
	}
	auto missing = [&](const std::vector<DenominatorFactor> &have) {
		std::vector<unsigned> m(merged.size());
		for (std::size_t i = 0; i < merged.size(); ++i)
		{
			unsigned h = 0;
			for (const auto &f : have)
				if (f.base == merged[i].base)
					h = f.mult;
			m[i] = merged[i].mult - h;
		}
		return m;
	};
	num_ = num_ * product(merged, missing(den_)) +
	       o.num_ * product(merged, missing(o.den_));
	den_ = std::move(merged);
	normalize();
	return *this;
}

RationalExpr &RationalExpr::operator-=(const RationalExpr &o)
{
	return *this += -o;
}

RationalExpr &RationalExpr::operator*=(const RationalExpr &o)
{
	if (is_zero() || o.is_zero())
		return *this = RationalExpr();
	// both operands are canonical, so only cross cancellation can happen
	Polynomial other_num = o.num_;
	std::vector<DenominatorFactor> mine = den_, theirs = o.den_;
	cancel(other_num, mine);
	cancel(num_, theirs);
	num_ = num_ * other_num;
	den_ = std::move(mine);
	den_.insert(den_.end(), theirs.begin(), theirs.end());
	sort_and_merge(den_);
	return *this;
}

RationalExpr &RationalExpr::operator/=(const RationalExpr &o)
{
	if (o.is_zero())
		throw DivisionByZero("div");
	return *this *= o.inverse();
}

bool operator==(const RationalExpr &a, const RationalExpr &b)
{
	if (a.identical(b))
		return true;
	return (a - b).is_zero();
}

RationalExpr arithmetic(const RationalExpr &a, const RationalExpr &b,
                        ArithOp op)
{
	switch (op)
	{
	case ArithOp::add:
		return a + b;
	case ArithOp::sub:
		return a - b;
	case ArithOp::mul:
		return a * b;
	case ArithOp::div:
		if (b.is_zero())
			throw DivisionByZero("div");
		return a / b;
	}
	throw Error("unknown arithmetic operation");
}

namespace {

Polynomial derive_polynomial(
    const Polynomial &p, std::unordered_map<std::uint32_t, Polynomial> &cache,
    const std::function<Polynomial(Symbol)> &delta)
{
	std::vector<Term> out;
	for (const auto &t : p.terms())
		for (const auto &f : t.mono.factors())
		{
			auto it = cache.find(f.var);
			if (it == cache.end())
				it = cache.emplace(f.var, delta(Symbol::from_id(f.var))).first;
			if (it->second.is_zero())
				continue;
			Monomial rest = t.mono / Monomial::variable(Symbol::from_id(f.var));
			Rational c = t.coeff * f.exp;
			for (const auto &d : it->second.terms())
				out.push_back({rest * d.mono, c * d.coeff});
		}
	return Polynomial::from_terms(std::move(out));
}

} // namespace

RationalExpr apply_derivation(const RationalExpr &a,
                              const std::function<Polynomial(Symbol)> &delta)
{
	std::unordered_map<std::uint32_t, Polynomial> cache;
	Polynomial dnum = derive_polynomial(a.num_, cache, delta);
	if (a.den_.empty())
		return RationalExpr(std::move(dnum));

	// d(N / prod f^e) = (dN * P - N * sum e_k df_k P/f_k) / (D * P)
	// where P is the product of the factors with df_k != 0
	std::vector<std::size_t> moving;
	std::vector<Polynomial> dfs;
	for (std::size_t k = 0; k < a.den_.size(); ++k)
	{
		Polynomial df = derive_polynomial(a.den_[k].base, cache, delta);
		if (!df.is_zero())
		{
			moving.push_back(k);
			dfs.push_back(std::move(df));
		}
	}
	RationalExpr r;
	if (moving.empty())
	{
		r.num_ = std::move(dnum);
		r.den_ = a.den_;
		r.normalize();
		return r;
	}
	Polynomial all(1);
	for (auto k : moving)
		all = all * a.den_[k].base;
	Polynomial sum;
	for (std::size_t m = 0; m < moving.size(); ++m)
	{
		Polynomial others(1);
		for (std::size_t l = 0; l < moving.size(); ++l)
			if (l != m)
				others = others * a.den_[moving[l]].base;
		sum += dfs[m] * others * Rational(a.den_[moving[m]].mult);
	}
	r.num_ = dnum * all - a.num_ * sum;
	r.den_ = a.den_;
	for (auto k : moving)
		r.den_[k].mult += 1;
	r.normalize();
	return r;
}

RationalExpr partial_derivative(const RationalExpr &a, Symbol s)
{
	return apply_derivation(
	    a, [s](Symbol v) { return v == s ? Polynomial(1) : Polynomial(); });
}

namespace {

struct PowerCache {
	const SubstitutionMap &rules;
	std::unordered_map<std::uint32_t, std::vector<RationalExpr>> powers;

	const RationalExpr &power(std::uint32_t var, std::uint32_t e)
	{
		auto &v = powers[var];
		if (v.empty())
		{
			v.push_back(RationalExpr(1));
			v.push_back(rules.at(Symbol::from_id(var)));
		}
		while (v.size() <= e)
			v.push_back(v.back() * v[1]);
		return v[e];
	}
};

RationalExpr substitute_polynomial(const Polynomial &p, PowerCache &cache)
{
	// group terms by their substituted part
	std::map<Monomial, std::vector<Term>> groups;
	for (const auto &t : p.terms())
	{
		Monomial sub, kept;
		for (const auto &f : t.mono.factors())
		{
			auto m = Monomial::variable(Symbol::from_id(f.var), f.exp);
			if (cache.rules.count(Symbol::from_id(f.var)))
				sub = sub * m;
			else
				kept = kept * m;
		}
		groups[sub].push_back({kept, t.coeff});
	}
	RationalExpr result;
	for (auto &[sub, terms] : groups)
	{
		RationalExpr value(Polynomial::from_terms(std::move(terms)));
		for (const auto &f : sub.factors())
			value *= cache.power(f.var, f.exp);
		result += value;
	}
	return result;
}

} // namespace

RationalExpr substitute(const RationalExpr &a, const SubstitutionMap &rules)
{
	if (rules.empty())
		return a;
	for (const auto &[target, value] : rules)
		for (const auto &[other, _] : rules)
			if (value.contains(other))
				throw SubstitutionError("cyclic substitution: the value for " +
				                        target.name() + " mentions " +
				                        other.name());
	bool touched = false;
	for (auto s : a.variables())
		if (rules.count(s))
		{
			touched = true;
			break;
		}
	if (!touched)
		return a;

	PowerCache cache{rules, {}};
	RationalExpr num = substitute_polynomial(a.numerator(), cache);
	RationalExpr den(1);
	for (const auto &f : a.denominator_factors())
	{
		RationalExpr v = substitute_polynomial(f.base, cache);
		if (v.is_zero())
			throw SubstitutionError("substitution makes the denominator factor " +
			                        to_string(f.base) + " vanish");
		den *= v.pow(static_cast<int>(f.mult));
	}
	return num / den;
}

std::string to_string(const RationalExpr &a)
{
	if (a.is_polynomial())
		return to_string(a.numerator());
	std::string n = to_string(a.numerator());
	if (a.numerator().size() > 1)
		n = "(" + n + ")";
	Polynomial d = a.denominator();
	std::string ds = to_string(d);
	bool bare = d.size() == 1 && d.leading().coeff == 1 &&
	            d.leading().mono.factors().size() == 1;
	if (!bare)
		ds = "(" + ds + ")";
	return n + "/" + ds;
}

} // namespace jetcov
