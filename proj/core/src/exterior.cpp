#include "jetcov/exterior.hpp"

#include "jetcov/error.hpp"

#include <algorithm>

namespace jetcov {

namespace {

// sorts covectors by id; returns the permutation sign, 0 on a repeat
int sort_basis(std::vector<Symbol> &b)
{
	int sign = 1;
	for (std::size_t i = 1; i < b.size(); ++i)
		for (std::size_t j = i; j > 0 && b[j] < b[j - 1]; --j)
		{
			std::swap(b[j], b[j - 1]);
			sign = -sign;
		}
	for (std::size_t i = 1; i < b.size(); ++i)
		if (b[i] == b[i - 1])
			return 0;
	return sign;
}

} // namespace

DifferentialForm::DifferentialForm(RationalExpr f)
{
	if (!f.is_zero())
		terms_.emplace(Basis{}, std::move(f));
}

DifferentialForm DifferentialForm::zero(unsigned degree)
{
	DifferentialForm w;
	w.degree_ = degree;
	return w;
}

DifferentialForm DifferentialForm::differential(Symbol s)
{
	return term(RationalExpr(1), {s});
}

DifferentialForm DifferentialForm::term(RationalExpr c,
                                        std::vector<Symbol> covectors)
{
	DifferentialForm w;
	w.degree_ = static_cast<unsigned>(covectors.size());
	int sign = sort_basis(covectors);
	if (sign == 0 || c.is_zero())
		return w;
	if (sign < 0)
		c = -c;
	w.terms_.emplace(std::move(covectors), std::move(c));
	return w;
}

RationalExpr DifferentialForm::coefficient(std::vector<Symbol> covectors) const
{
	int sign = sort_basis(covectors);
	if (sign == 0)
		return RationalExpr();
	auto it = terms_.find(covectors);
	if (it == terms_.end())
		return RationalExpr();
	return sign > 0 ? it->second : -it->second;
}

std::vector<Symbol> DifferentialForm::covectors() const
{
	std::vector<Symbol> out;
	for (const auto &[b, c] : terms_)
		out.insert(out.end(), b.begin(), b.end());
	std::sort(out.begin(), out.end());
	out.erase(std::unique(out.begin(), out.end()), out.end());
	return out;
}

std::vector<Symbol> DifferentialForm::coefficient_variables() const
{
	std::vector<Symbol> out;
	for (const auto &[b, c] : terms_)
	{
		auto v = c.variables();
		out.insert(out.end(), v.begin(), v.end());
	}
	std::sort(out.begin(), out.end());
	out.erase(std::unique(out.begin(), out.end()), out.end());
	return out;
}

void DifferentialForm::add_term(Basis b, RationalExpr c)
{
	if (c.is_zero())
		return;
	auto [it, inserted] = terms_.try_emplace(std::move(b), c);
	if (!inserted)
	{
		it->second += c;
		if (it->second.is_zero())
			terms_.erase(it);
	}
}

DifferentialForm DifferentialForm::operator-() const
{
	DifferentialForm w = *this;
	for (auto &[b, c] : w.terms_)
		c = -c;
	return w;
}

DifferentialForm &DifferentialForm::operator+=(const DifferentialForm &o)
{
	if (!is_zero() && !o.is_zero() && degree_ != o.degree_)
		throw Error("adding forms of different degree");
	if (is_zero())
		degree_ = o.degree_;
	for (const auto &[b, c] : o.terms_)
		add_term(b, c);
	return *this;
}

DifferentialForm &DifferentialForm::operator-=(const DifferentialForm &o)
{
	return *this += -o;
}

DifferentialForm &DifferentialForm::operator*=(const RationalExpr &f)
{
	if (f.is_zero())
	{
		terms_.clear();
		return *this;
	}
	for (auto &[b, c] : terms_)
		c *= f;
	return *this;
}

bool operator==(const DifferentialForm &a, const DifferentialForm &b)
{
	return (a - b).is_zero();
}

DifferentialForm DifferentialForm::map_coefficients(
    const std::function<RationalExpr(const RationalExpr &)> &f) const
{
	DifferentialForm w = zero(degree_);
	for (const auto &[b, c] : terms_)
		w.add_term(b, f(c));
	return w;
}

DifferentialForm wedge(const DifferentialForm &a, const DifferentialForm &b)
{
	DifferentialForm out = DifferentialForm::zero(a.degree() + b.degree());
	for (const auto &[ba, ca] : a.terms())
		for (const auto &[bb, cb] : b.terms())
		{
			Basis merged;
			merged.reserve(ba.size() + bb.size());
			int inversions = 0;
			bool repeat = false;
			auto x = ba.begin(), y = bb.begin();
			while (x != ba.end() || y != bb.end())
			{
				if (y == bb.end() || (x != ba.end() && *x < *y))
					merged.push_back(*x++);
				else if (x == ba.end() || *y < *x)
				{
					// moving *y past the remaining elements of ba
					inversions += static_cast<int>(ba.end() - x);
					merged.push_back(*y++);
				}
				else
				{
					repeat = true;
					break;
				}
			}
			if (repeat)
				continue;
			RationalExpr c = ca * cb;
			if (inversions % 2)
				c = -c;
			out += DifferentialForm::term(std::move(c), std::move(merged));
		}
	return out;
}

DifferentialForm wedge(std::span<const DifferentialForm> forms)
{
	DifferentialForm w(RationalExpr(1));
	for (const auto &f : forms)
	{
		w = wedge(w, f);
		if (w.is_zero())
			break;
	}
	return w;
}

DifferentialForm exterior_derivative(const DifferentialForm &w)
{
	DifferentialForm out = DifferentialForm::zero(w.degree() + 1);
	for (const auto &[b, c] : w.terms())
		for (auto s : c.variables())
		{
			if (std::binary_search(b.begin(), b.end(), s))
				continue;
			std::vector<Symbol> covs{s};
			covs.insert(covs.end(), b.begin(), b.end());
			out += DifferentialForm::term(partial_derivative(c, s),
			                              std::move(covs));
		}
	return out;
}

AnnihilationResult annihilation_check(const DifferentialForm &w,
                                      std::span<const DifferentialForm> gens)
{
	DifferentialForm r = w;
	for (const auto &g : gens)
	{
		if (r.is_zero())
			break;
		r = wedge(r, g);
	}
	return {r.is_zero(), r};
}

DifferentialForm pullback(const DifferentialForm &w,
                          const SubstitutionMap &rules)
{
	if (rules.empty())
		return w;
	std::map<Symbol, DifferentialForm> images;
	DifferentialForm out = DifferentialForm::zero(w.degree());
	for (const auto &[b, c] : w.terms())
	{
		DifferentialForm t(substitute(c, rules));
		for (auto s : b)
		{
			auto it = rules.find(s);
			if (it == rules.end())
			{
				t = wedge(t, DifferentialForm::differential(s));
				continue;
			}
			auto img = images.find(s);
			if (img == images.end())
				img = images.emplace(s, d(it->second)).first;
			t = wedge(t, img->second);
		}
		out += t;
	}
	return out;
}

DifferentialForm pullback_on_equation(const DifferentialForm &w,
                                      const SolvedSystem &system)
{
	SubstitutionMap rules;
	auto add = [&](Symbol s) {
		if (!rules.count(s) && system.is_principal(s))
			rules.emplace(s, system.value(s));
	};
	for (auto s : w.covectors())
		add(s);
	for (auto s : w.coefficient_variables())
		add(s);
	return pullback(w, rules);
}

std::string to_string(const DifferentialForm &w)
{
	if (w.is_zero())
		return "0";
	struct Row {
		std::vector<std::string> names;
		RationalExpr coeff;
	};
	std::vector<Row> rows;
	for (const auto &[b, c] : w.terms())
	{
		std::vector<Symbol> order = b;
		std::sort(order.begin(), order.end(), [](Symbol x, Symbol y) {
			return x.name() < y.name();
		});
		// sign of the permutation taking b to name order
		std::vector<Symbol> tmp = order;
		int sign = sort_basis(tmp);
		Row row;
		for (auto s : order)
			row.names.push_back(s.name());
		row.coeff = sign > 0 ? c : -c;
		rows.push_back(std::move(row));
	}
	std::sort(rows.begin(), rows.end(),
	          [](const Row &a, const Row &b) { return a.names < b.names; });

	std::string out;
	bool first = true;
	for (auto &row : rows)
	{
		std::string basis;
		for (const auto &n : row.names)
		{
			if (!basis.empty())
				basis += "^";
			basis += "d" + n;
		}
		bool negative = to_string(row.coeff.numerator())[0] == '-';
		RationalExpr c = negative ? -row.coeff : row.coeff;
		if (first)
			out += negative ? "-" : "";
		else
			out += negative ? " - " : " + ";
		first = false;
		std::string cs = to_string(c);
		if (basis.empty())
			out += cs;
		else if (c.constant_value() == Rational(1))
			out += basis;
		else if (c.is_polynomial() && c.numerator().size() == 1)
			out += cs + "*" + basis;
		else
			out += "(" + cs + ")*" + basis;
	}
	return out;
}

} // namespace jetcov
