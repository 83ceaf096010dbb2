#include "jetcov/backlund.hpp"

#include "jetcov/error.hpp"

#include <algorithm>

namespace jetcov {

namespace {

std::vector<SolvedRule> relation_rules(const JetContext &ctx, Symbol unknown,
                                       const std::vector<BacklundRelation> &rels)
{
	auto dep = ctx.dependent_index(unknown);
	if (!dep)
		throw Error(unknown.name() + " is not a dependent variable");
	std::vector<SolvedRule> rules;
	for (const auto &r : rels)
		rules.push_back(SolvedRule{
		    *dep, MultiIndex({static_cast<std::uint8_t>(r.direction)}), r.rhs});
	return rules;
}

void collect_denominators(const RationalExpr &a, std::vector<Polynomial> &out)
{
	for (const auto &f : a.denominator_factors())
		if (std::none_of(out.begin(), out.end(),
		                 [&](const Polynomial &p) { return p == f.base; }))
			out.push_back(f.base);
}

std::optional<std::vector<RuleMultiplier>> certificate(const SolvedSystem &base,
                                                       const RationalExpr &c)
{
	auto m = base.multipliers(c);
	if (!m)
		return std::nullopt;
	std::vector<RuleMultiplier> out;
	for (auto &[rule, mult] : *m)
		out.push_back({base.principal(rule), std::move(mult)});
	return out;
}

} // namespace

BacklundRelation solve_relation(const std::shared_ptr<const JetContext> &ctx_ptr,
                                const RationalExpr &lhs, const RationalExpr &rhs,
                                Symbol principal,
                                const std::vector<BacklundRelation> &earlier)
{
	const auto &ctx = *ctx_ptr;
	auto jc = ctx.classify(principal);
	if (!jc || jc->index.order() != 1)
		throw Error(principal.name() + " is not a first derivative");
	auto solved = solve_affine(lhs - rhs, principal);
	if (!solved)
		throw UnsupportedError("relation is not affine in " + principal.name());
	BacklundRelation r{jc->index.positions().front(), std::move(*solved)};
	if (!earlier.empty())
	{
		SolvedSystem prior(ctx_ptr, relation_rules(ctx, ctx.dependents()[jc->dependent],
		                                           earlier));
		r.rhs = prior.reduce(r.rhs);
	}
	return r;
}

BacklundReport verify_backlund(const BacklundProblem &p)
{
	BacklundReport report;
	const auto &ctx = p.base.context();
	try
	{
		auto rel_rules = relation_rules(ctx, p.unknown, p.relations);
		SolvedSystem relations(p.base.context_ptr(), rel_rules);
		std::vector<SolvedRule> all = p.base.rules();
		for (auto r : rel_rules)
		{
			r.rhs = p.base.reduce(r.rhs);
			all.push_back(std::move(r));
		}
		SolvedSystem combined(p.base.context_ptr(), std::move(all));

		for (const auto &r : p.relations)
			collect_denominators(r.rhs, report.genericity);

		auto record = [&](std::string label, RationalExpr c) {
			collect_denominators(c, report.genericity);
			RationalExpr residual = combined.reduce(c);
			if (!residual.is_zero())
				report.status = CheckStatus::fail;
			auto mult = certificate(p.base, c);
			report.conditions.push_back(
			    {std::move(label), std::move(c), std::move(residual),
			     std::move(mult)});
		};

		std::vector<std::size_t> order(p.relations.size());
		for (std::size_t k = 0; k < order.size(); ++k)
			order[k] = k;
		std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) {
			return p.relations[x].direction < p.relations[y].direction;
		});
		for (std::size_t a = 0; a < order.size(); ++a)
			for (std::size_t b = a + 1; b < order.size(); ++b)
			{
				const auto &ri = p.relations[order[a]];
				const auto &rj = p.relations[order[b]];
				RationalExpr c =
				    relations.reduce(total_derivative(ri.rhs, rj.direction, ctx) -
				                     total_derivative(rj.rhs, ri.direction, ctx));
				record("D_" + ctx.independent(rj.direction).name() + "(" +
				           relations.principal(order[a]).name() + ")-D_" +
				           ctx.independent(ri.direction).name() + "(" +
				           relations.principal(order[b]).name() + ")",
				       std::move(c));
			}

		if (p.target)
		{
			Symbol principal = ctx.jet(p.target->dependent, p.target->index);
			RationalExpr t = RationalExpr::symbol(principal) - p.target->rhs;
			record("target", relations.reduce(t));
		}
	}
	catch (const TruncationError &e)
	{
		report.status = CheckStatus::inconclusive;
		report.note = e.what();
	}
	std::sort(report.genericity.begin(), report.genericity.end(),
	          [](const Polynomial &a, const Polynomial &b) {
		          return to_string(a) < to_string(b);
	          });
	return report;
}

} // namespace jetcov
