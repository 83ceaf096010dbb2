#include "jetcov/equation.hpp"

#include "jetcov/error.hpp"

namespace jetcov {

SolvedSystem::SolvedSystem(std::shared_ptr<const JetContext> ctx,
                           std::vector<SolvedRule> rules)
    : ctx_(std::move(ctx)), rules_(std::move(rules))
{
	if (!ctx_)
		throw Error("solved system without a jet context");
	for (const auto &r : rules_)
		principals_.push_back(ctx_->jet(r.dependent, r.index));

	for (std::size_t i = 0; i < rules_.size(); ++i)
		for (std::size_t j = 0; j < rules_.size(); ++j)
			if (i != j && rules_[i].dependent == rules_[j].dependent &&
			    rules_[i].index.contains(rules_[j].index))
				throw Error("principal derivative " + principals_[i].name() +
				            " is a prolongation of " + principals_[j].name());

	for (std::size_t i = 0; i < rules_.size(); ++i)
		for (auto s : rules_[i].rhs.variables())
			if (is_principal(s))
				throw Error("right-hand side for " + principals_[i].name() +
				            " is not in solved form: it contains " + s.name());
}

Symbol SolvedSystem::principal(std::size_t rule) const
{
	return principals_.at(rule);
}

RationalExpr SolvedSystem::defining_expression(std::size_t rule) const
{
	return RationalExpr::symbol(principals_.at(rule)) - rules_.at(rule).rhs;
}

std::optional<std::size_t> SolvedSystem::governing_rule(Symbol s) const
{
	auto jc = ctx_->classify(s);
	if (!jc)
		return std::nullopt;
	for (std::size_t i = 0; i < rules_.size(); ++i)
		if (rules_[i].dependent == jc->dependent &&
		    jc->index.contains(rules_[i].index))
			return i;
	return std::nullopt;
}

RationalExpr SolvedSystem::value(Symbol jet) const
{
	{
		std::lock_guard lock(cache_->mutex);
		if (auto it = cache_->values.find(jet); it != cache_->values.end())
			return it->second;
	}
	auto rule = governing_rule(jet);
	if (!rule)
		throw Error(jet.name() + " is not a principal derivative");
	const auto &r = rules_[*rule];
	auto jc = *ctx_->classify(jet);
	RationalExpr result;
	if (jc.index == r.index)
		result = r.rhs;
	else
	{
		// peel the last extra direction: value(I) = reduce(D_j value(I - j))
		MultiIndex extra = jc.index.minus(r.index);
		auto j = extra.positions().back();
		Symbol parent = ctx_->jet(jc.dependent, jc.index.minus(MultiIndex({j})));
		result = reduce(jetcov::total_derivative(value(parent), j, *ctx_));
	}
	std::lock_guard lock(cache_->mutex);
	return cache_->values.try_emplace(jet, std::move(result)).first->second;
}

RationalExpr SolvedSystem::reduce(const RationalExpr &a) const
{
	SubstitutionMap rules;
	for (auto s : a.variables())
		if (is_principal(s))
			rules.emplace(s, value(s));
	if (rules.empty())
		return a;
	return substitute(a, rules);
}

RationalExpr SolvedSystem::total_derivative(const RationalExpr &a,
                                            std::size_t i) const
{
	return reduce(jetcov::total_derivative(reduce(a), i, *ctx_));
}

std::optional<std::vector<std::pair<std::size_t, RationalExpr>>>
SolvedSystem::multipliers(const RationalExpr &a) const
{
	std::vector<std::pair<std::size_t, RationalExpr>> out;
	if (a.is_zero())
		return out;
	RationalExpr rest = a;
	for (std::size_t r = 0; r < rules_.size(); ++r)
	{
		if (!a.contains(principals_[r]))
			continue;
		RationalExpr m = partial_derivative(a, principals_[r]);
		for (auto p : principals_)
			if (m.contains(p))
				return std::nullopt;
		rest -= m * defining_expression(r);
		out.emplace_back(r, std::move(m));
	}
	if (out.empty() || !rest.is_zero())
		return std::nullopt;
	return out;
}

std::optional<RationalExpr> solve_affine(const RationalExpr &f, Symbol p)
{
	for (const auto &d : f.denominator_factors())
		if (d.base.contains(p))
			return std::nullopt;
	const auto &num = f.numerator();
	if (num.degree(p) != 1)
		return std::nullopt;
	Polynomial a = num.coefficient(p, 1);
	Polynomial b = num.coefficient(p, 0);
	return RationalExpr(-b) / RationalExpr(a);
}

EquationIdeal::EquationIdeal(std::shared_ptr<const JetContext> ctx,
                             Symbol principal, RationalExpr rhs)
    : system_([&] {
	      auto jc = ctx ? ctx->classify(principal) : std::nullopt;
	      if (!jc)
		      throw Error(principal.name() + " is not a jet coordinate");
	      return SolvedSystem(ctx, {SolvedRule{jc->dependent, jc->index,
	                                           std::move(rhs)}});
      }())
{}

EquationIdeal EquationIdeal::solve_for(std::shared_ptr<const JetContext> ctx,
                                       const RationalExpr &lhs,
                                       const RationalExpr &rhs,
                                       Symbol principal)
{
	auto solved = solve_affine(lhs - rhs, principal);
	if (!solved)
		throw UnsupportedError("equation is not affine in " + principal.name() +
		                       "; only affine re-solving is supported");
	return EquationIdeal(std::move(ctx), principal, std::move(*solved));
}

RationalExpr EquationIdeal::prolong(const MultiIndex &k) const
{
	const auto &r = system_.rules()[0];
	std::vector<std::uint8_t> pos(r.index.positions().begin(),
	                              r.index.positions().end());
	pos.insert(pos.end(), k.positions().begin(), k.positions().end());
	return system_.value(context().jet(r.dependent, MultiIndex(std::move(pos))));
}

} // namespace jetcov
