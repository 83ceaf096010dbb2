#include "jetcov/polynomial.hpp"

#include <algorithm>
#include <cassert>
#include <utility>

namespace jetcov {

// ---------------------------------------------------------------- Monomial

Monomial Monomial::variable(Symbol s, std::uint32_t exp)
{
	Monomial m;
	if (exp > 0)
	{
		m.factors_.push_back({s.id(), exp});
		m.degree_ = exp;
	}
	return m;
}

std::uint32_t Monomial::degree(Symbol s) const noexcept
{
	auto it = std::lower_bound(
	    factors_.begin(), factors_.end(), s.id(),
	    [](const VarPower &f, std::uint32_t v) { return f.var < v; });
	return (it != factors_.end() && it->var == s.id()) ? it->exp : 0;
}

bool Monomial::divides(const Monomial &other) const noexcept
{
	if (degree_ > other.degree_)
		return false;
	auto it = other.factors_.begin();
	for (const auto &f : factors_)
	{
		while (it != other.factors_.end() && it->var < f.var)
			++it;
		if (it == other.factors_.end() || it->var != f.var ||
		    it->exp < f.exp)
			return false;
	}
	return true;
}

Monomial Monomial::operator*(const Monomial &other) const
{
	Monomial r;
	r.factors_.reserve(factors_.size() + other.factors_.size());
	auto a = factors_.begin(), b = other.factors_.begin();
	while (a != factors_.end() || b != other.factors_.end())
	{
		if (b == other.factors_.end() ||
		    (a != factors_.end() && a->var < b->var))
			r.factors_.push_back(*a++);
		else if (a == factors_.end() || b->var < a->var)
			r.factors_.push_back(*b++);
		else
		{
			r.factors_.push_back({a->var, a->exp + b->exp});
			++a;
			++b;
		}
	}
	r.degree_ = degree_ + other.degree_;
	return r;
}

Monomial Monomial::operator/(const Monomial &d) const
{
	assert(d.divides(*this));
	Monomial r;
	r.factors_.reserve(factors_.size());
	auto it = d.factors_.begin();
	for (const auto &f : factors_)
	{
		if (it != d.factors_.end() && it->var == f.var)
		{
			if (f.exp > it->exp)
				r.factors_.push_back({f.var, f.exp - it->exp});
			++it;
		}
		else
			r.factors_.push_back(f);
	}
	r.degree_ = degree_ - d.degree_;
	return r;
}

Monomial Monomial::gcd(const Monomial &a, const Monomial &b)
{
	Monomial r;
	auto x = a.factors_.begin(), y = b.factors_.begin();
	while (x != a.factors_.end() && y != b.factors_.end())
	{
		if (x->var < y->var)
			++x;
		else if (y->var < x->var)
			++y;
		else
		{
			auto e = std::min(x->exp, y->exp);
			r.factors_.push_back({x->var, e});
			r.degree_ += e;
			++x;
			++y;
		}
	}
	return r;
}

std::strong_ordering operator<=>(const Monomial &a, const Monomial &b) noexcept
{
	if (a.degree_ != b.degree_)
		return a.degree_ <=> b.degree_;
	std::size_t n = std::min(a.factors_.size(), b.factors_.size());
	for (std::size_t i = 0; i < n; ++i)
	{
		const auto &x = a.factors_[i];
		const auto &y = b.factors_[i];
		if (x.var != y.var)
			return x.var < y.var ? std::strong_ordering::greater
			                     : std::strong_ordering::less;
		if (x.exp != y.exp)
			return x.exp <=> y.exp;
	}
	return a.factors_.size() <=> b.factors_.size();
}

// -------------------------------------------------------------- Polynomial

Polynomial::Polynomial(const Rational &c)
{
	if (sgn(c) != 0)
		terms_.push_back({Monomial(), c});
}

Polynomial Polynomial::variable(Symbol s)
{
	return monomial(Monomial::variable(s), 1);
}

Polynomial Polynomial::monomial(Monomial m, Rational c)
{
	Polynomial p;
	if (sgn(c) != 0)
		p.terms_.push_back({std::move(m), std::move(c)});
	return p;
}

Polynomial Polynomial::from_terms(std::vector<Term> terms)
{
	std::sort(terms.begin(), terms.end(),
	          [](const Term &a, const Term &b) { return a.mono > b.mono; });
	Polynomial p;
	for (auto &t : terms)
	{
		if (!p.terms_.empty() && p.terms_.back().mono == t.mono)
			p.terms_.back().coeff += t.coeff;
		else
		{
			if (!p.terms_.empty() && sgn(p.terms_.back().coeff) == 0)
				p.terms_.pop_back();
			p.terms_.push_back(std::move(t));
		}
	}
	if (!p.terms_.empty() && sgn(p.terms_.back().coeff) == 0)
		p.terms_.pop_back();
	return p;
}

bool Polynomial::is_constant() const noexcept
{
	return terms_.empty() ||
	       (terms_.size() == 1 && terms_.front().mono.is_one());
}

std::optional<Rational> Polynomial::constant_value() const
{
	if (terms_.empty())
		return Rational(0);
	if (is_constant())
		return terms_.front().coeff;
	return std::nullopt;
}

std::uint32_t Polynomial::total_degree() const noexcept
{
	return terms_.empty() ? 0 : terms_.front().mono.degree();
}

std::uint32_t Polynomial::degree(Symbol s) const noexcept
{
	std::uint32_t d = 0;
	for (const auto &t : terms_)
		d = std::max(d, t.mono.degree(s));
	return d;
}

bool Polynomial::contains(Symbol s) const noexcept
{
	for (const auto &t : terms_)
		if (t.mono.degree(s) > 0)
			return true;
	return false;
}

std::vector<Symbol> Polynomial::variables() const
{
	std::vector<std::uint32_t> ids;
	for (const auto &t : terms_)
		for (const auto &f : t.mono.factors())
			ids.push_back(f.var);
	std::sort(ids.begin(), ids.end());
	ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
	std::vector<Symbol> out;
	out.reserve(ids.size());
	for (auto id : ids)
		out.push_back(Symbol::from_id(id));
	return out;
}

Polynomial Polynomial::coefficient(Symbol s, std::uint32_t k) const
{
	std::vector<Term> out;
	auto sk = Monomial::variable(s, k);
	for (const auto &t : terms_)
		if (t.mono.degree(s) == k)
			out.push_back({t.mono / sk, t.coeff});
	return from_terms(std::move(out));
}

Rational Polynomial::content() const
{
	if (terms_.empty())
		return Rational(1);
	mpz_class num = 0, den = 1;
	for (const auto &t : terms_)
	{
		num = gcd(num, t.coeff.get_num());
		den = lcm(den, t.coeff.get_den());
	}
	Rational c(num, den);
	c.canonicalize();
	return c;
}

Monomial Polynomial::monomial_content() const
{
	if (terms_.empty())
		return Monomial();
	Monomial g = terms_.front().mono;
	for (const auto &t : terms_)
	{
		if (g.is_one())
			break;
		g = Monomial::gcd(g, t.mono);
	}
	return g;
}

Polynomial Polynomial::derivative(Symbol s) const
{
	std::vector<Term> out;
	auto single = Monomial::variable(s);
	for (const auto &t : terms_)
	{
		auto e = t.mono.degree(s);
		if (e == 0)
			continue;
		out.push_back({t.mono / single, t.coeff * e});
	}
	// quotients by the same variable keep their relative order
	Polynomial p;
	p.terms_ = std::move(out);
	return p;
}

Polynomial Polynomial::pow(unsigned k) const
{
	Polynomial result(1);
	Polynomial base = *this;
	while (k > 0)
	{
		if (k & 1u)
			result = result * base;
		k >>= 1u;
		if (k > 0)
			base = base * base;
	}
	return result;
}

Polynomial Polynomial::divide(const Monomial &m) const
{
	Polynomial p;
	p.terms_.reserve(terms_.size());
	for (const auto &t : terms_)
		p.terms_.push_back({t.mono / m, t.coeff});
	// m divides every term, so x/m is still strictly decreasing
	return p;
}

Polynomial Polynomial::multiply(const Monomial &m, const Rational &c) const
{
	Polynomial p;
	if (sgn(c) == 0)
		return p;
	p.terms_.reserve(terms_.size());
	for (const auto &t : terms_)
		p.terms_.push_back({t.mono * m, t.coeff * c});
	return p;
}

std::optional<Polynomial> Polynomial::divide_exact(const Polynomial &d) const
{
	assert(!d.is_zero());
	if (is_zero())
		return Polynomial();
	if (d.size() == 1)
	{
		const auto &dl = d.leading();
		for (const auto &t : terms_)
			if (!dl.mono.divides(t.mono))
				return std::nullopt;
		Polynomial q = divide(dl.mono);
		if (dl.coeff != 1)
			q *= Rational(1) / dl.coeff;
		return q;
	}
	// cheap necessary conditions: leading and trailing terms multiply
	if (!d.leading().mono.divides(leading().mono) ||
	    !d.terms_.back().mono.divides(terms_.back().mono))
		return std::nullopt;
	std::vector<Term> q;
	Polynomial r = *this;
	const auto &dl = d.leading();
	while (!r.is_zero())
	{
		const auto &rl = r.leading();
		if (!dl.mono.divides(rl.mono))
			return std::nullopt;
		Term t{rl.mono / dl.mono, rl.coeff / dl.coeff};
		r -= d.multiply(t.mono, t.coeff);
		q.push_back(std::move(t));
	}
	Polynomial out;
	out.terms_ = std::move(q);
	return out;
}

Polynomial Polynomial::operator-() const
{
	Polynomial p = *this;
	for (auto &t : p.terms_)
		t.coeff = -t.coeff;
	return p;
}

namespace {

std::vector<Term> merge_terms(const std::vector<Term> &a,
                              const std::vector<Term> &b, bool subtract)
{
	std::vector<Term> out;
	out.reserve(a.size() + b.size());
	auto x = a.begin(), y = b.begin();
	while (x != a.end() || y != b.end())
	{
		if (y == b.end())
			out.push_back(*x++);
		else if (x == a.end())
		{
			out.push_back(*y++);
			if (subtract)
				out.back().coeff = -out.back().coeff;
		}
		else
		{
			auto c = x->mono <=> y->mono;
			if (c > 0)
				out.push_back(*x++);
			else if (c < 0)
			{
				out.push_back(*y++);
				if (subtract)
					out.back().coeff = -out.back().coeff;
			}
			else
			{
				Rational s = subtract ? Rational(x->coeff - y->coeff)
				                      : Rational(x->coeff + y->coeff);
				if (sgn(s) != 0)
					out.push_back({x->mono, std::move(s)});
				++x;
				++y;
			}
		}
	}
	return out;
}

} // namespace

Polynomial &Polynomial::operator+=(const Polynomial &o)
{
	if (o.is_zero())
		return *this;
	if (is_zero())
		return *this = o;
	terms_ = merge_terms(terms_, o.terms_, false);
	return *this;
}

Polynomial &Polynomial::operator-=(const Polynomial &o)
{
	if (o.is_zero())
		return *this;
	terms_ = merge_terms(terms_, o.terms_, true);
	return *this;
}

Polynomial &Polynomial::operator*=(const Rational &c)
{
	if (sgn(c) == 0)
		terms_.clear();
	else
		for (auto &t : terms_)
			t.coeff *= c;
	return *this;
}

Polynomial operator*(const Polynomial &a, const Polynomial &b)
{
	if (a.is_zero() || b.is_zero())
		return Polynomial();
	if (a.size() == 1)
		return b.multiply(a.leading().mono, a.leading().coeff);
	if (b.size() == 1)
		return a.multiply(b.leading().mono, b.leading().coeff);
	const Polynomial &small = a.size() <= b.size() ? a : b;
	const Polynomial &large = a.size() <= b.size() ? b : a;
	std::vector<Term> prod;
	prod.reserve(small.size() * large.size());
	for (const auto &s : small.terms())
		for (const auto &l : large.terms())
			prod.push_back({s.mono * l.mono, s.coeff * l.coeff});
	return Polynomial::from_terms(std::move(prod));
}

std::strong_ordering compare(const Polynomial &a, const Polynomial &b)
{
	std::size_t n = std::min(a.size(), b.size());
	for (std::size_t i = 0; i < n; ++i)
	{
		const auto &x = a.terms_[i];
		const auto &y = b.terms_[i];
		if (auto c = x.mono <=> y.mono; c != 0)
			return c;
		if (x.coeff != y.coeff)
			return x.coeff < y.coeff ? std::strong_ordering::less
			                         : std::strong_ordering::greater;
	}
	return a.size() <=> b.size();
}

// ---------------------------------------------------------------- printing

namespace {

using DisplayKey = std::vector<std::pair<const std::string *, std::uint32_t>>;

DisplayKey display_key(const Monomial &m)
{
	DisplayKey k;
	for (const auto &f : m.factors())
	{
		Symbol s = Symbol::from_id(f.var);
		k.emplace_back(&s.name(), f.exp);
	}
	std::sort(k.begin(), k.end(),
	          [](const auto &x, const auto &y) { return *x.first < *y.first; });
	return k;
}

// true if x should be printed before y
bool display_before(std::uint32_t dx, const DisplayKey &x, std::uint32_t dy,
                    const DisplayKey &y)
{
	if (dx != dy)
		return dx > dy;
	std::size_t n = std::min(x.size(), y.size());
	for (std::size_t i = 0; i < n; ++i)
	{
		if (*x[i].first != *y[i].first)
			return *x[i].first < *y[i].first;
		if (x[i].second != y[i].second)
			return x[i].second > y[i].second;
	}
	return x.size() > y.size();
}

std::string key_string(const DisplayKey &k)
{
	std::string s;
	for (const auto &[name, exp] : k)
	{
		if (!s.empty())
			s += '*';
		s += *name;
		if (exp != 1)
			s += '^' + std::to_string(exp);
	}
	return s;
}

} // namespace

std::string to_string(const Rational &q) { return q.get_str(); }

std::string to_string(const Monomial &m)
{
	if (m.is_one())
		return "1";
	return key_string(display_key(m));
}

std::string to_string(const Polynomial &p)
{
	if (p.is_zero())
		return "0";
	struct Row {
		const Term *term;
		DisplayKey key;
	};
	std::vector<Row> rows;
	rows.reserve(p.size());
	for (const auto &t : p.terms())
		rows.push_back({&t, display_key(t.mono)});
	std::sort(rows.begin(), rows.end(), [](const Row &a, const Row &b) {
		return display_before(a.term->mono.degree(), a.key,
		                      b.term->mono.degree(), b.key);
	});
	std::string out;
	bool first = true;
	for (const auto &r : rows)
	{
		Rational c = r.term->coeff;
		bool neg = sgn(c) < 0;
		if (neg)
			c = -c;
		if (first)
			out += neg ? "-" : "";
		else
			out += neg ? " - " : " + ";
		first = false;
		if (r.key.empty())
			out += to_string(c);
		else if (c == 1)
			out += key_string(r.key);
		else
			out += to_string(c) + "*" + key_string(r.key);
	}
	return out;
}

} // namespace jetcov
