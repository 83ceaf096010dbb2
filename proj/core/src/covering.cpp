#include "jetcov/covering.hpp"

#include "jetcov/error.hpp"

#include <algorithm>

namespace jetcov {

namespace {

void check_declared(const RationalExpr &a, const JetContext &ctx,
                    const std::string &where)
{
	for (auto s : a.variables())
		if (!ctx.independent_index(s) && !ctx.classify(s))
			throw Error("undeclared symbol " + s.name() + " in " + where);
}

std::vector<SolvedRule> transport_rules(const EquationIdeal &base,
                                        const std::vector<FiberDeclaration> &fibers,
                                        bool reduced)
{
	const auto &ctx = base.context();
	std::vector<SolvedRule> rules;
	for (const auto &f : fibers)
	{
		auto dep = *ctx.dependent_index(f.name);
		for (const auto &[i, t] : f.transport)
		{
			if (f.family_direction && i == *f.family_direction)
				continue;
			rules.push_back(SolvedRule{
			    dep, MultiIndex({static_cast<std::uint8_t>(i)}),
			    reduced ? base.reduce(t) : t});
		}
	}
	return rules;
}

std::vector<SolvedRule> with_equation(const EquationIdeal &base,
                                      std::vector<SolvedRule> rules)
{
	rules.insert(rules.begin(), base.system().rules().begin(),
	             base.system().rules().end());
	return rules;
}

void validate_fibers(const EquationIdeal &base,
                     const std::vector<FiberDeclaration> &fibers)
{
	const auto &ctx = base.context();
	std::size_t n = ctx.dimension();
	for (const auto &f : fibers)
	{
		auto dep = ctx.dependent_index(f.name);
		if (!dep)
			throw Error("fiber " + f.name.name() +
			            " is not declared in the jet context");
		if (*dep == base.dependent())
			throw Error("fiber " + f.name.name() +
			            " coincides with the base unknown");
		if (f.family_direction && *f.family_direction >= n)
			throw Error("family direction out of range for " + f.name.name());
		for (const auto &[i, t] : f.transport)
			if (i >= n)
				throw Error("transport direction out of range");
		for (std::size_t i = 0; i < n; ++i)
		{
			auto it = f.transport.find(i);
			bool stacked = f.family_direction && *f.family_direction == i;
			if (it == f.transport.end())
			{
				if (!stacked)
					throw Error("missing transport for fiber " + f.name.name() +
					            " in direction " + ctx.independent(i).name());
				continue;
			}
			check_declared(it->second, ctx, "transport of " + f.name.name());
			auto next = ctx.jet(*dep, MultiIndex({static_cast<std::uint8_t>(i)}));
			if (stacked && it->second != RationalExpr::symbol(next))
				throw Error("transport of family fiber " + f.name.name() +
				            " in its own direction must be the next member");
		}
	}
}

} // namespace

Covering::Covering(EquationIdeal base, std::vector<FiberDeclaration> fibers,
                   unsigned family_order)
    : base_(std::move(base)), fibers_(std::move(fibers)),
      family_order_(family_order),
      system_(base_.context_ptr(),
              (validate_fibers(base_, fibers_),
               with_equation(base_, transport_rules(base_, fibers_, true)))),
      fiber_system_(base_.context_ptr(), transport_rules(base_, fibers_, false))
{}

std::vector<Symbol> Covering::fiber_coordinates(unsigned order) const
{
	const auto &ctx = context();
	std::vector<Symbol> out;
	for (const auto &f : fibers_)
	{
		auto dep = *ctx.dependent_index(f.name);
		if (!f.family_direction)
		{
			out.push_back(f.name);
			continue;
		}
		for (unsigned k = 0; k <= order; ++k)
			out.push_back(ctx.jet(
			    dep, MultiIndex::repeated(
			             static_cast<std::uint8_t>(*f.family_direction), k)));
	}
	return out;
}

bool Covering::is_fiber_coordinate(Symbol s) const
{
	auto jc = context().classify(s);
	if (!jc)
		return false;
	for (const auto &f : fibers_)
		if (*context().dependent_index(f.name) == jc->dependent)
		{
			if (!f.family_direction)
				return jc->index.order() == 0;
			return jc->index.count(static_cast<std::uint8_t>(
			           *f.family_direction)) == jc->index.order();
		}
	return false;
}

RationalExpr Covering::transport(Symbol fiber_coordinate, std::size_t i) const
{
	auto jc = context().classify(fiber_coordinate);
	if (!jc || !is_fiber_coordinate(fiber_coordinate))
		throw Error(fiber_coordinate.name() + " is not a fiber coordinate");
	Symbol next =
	    context().jet(jc->dependent, jc->index.with(static_cast<std::uint8_t>(i)));
	return system_.reduce(RationalExpr::symbol(next));
}

RationalExpr Covering::extended_total_derivative(const RationalExpr &a,
                                                 std::size_t i) const
{
	return system_.total_derivative(a, i);
}

RationalExpr Covering::unreduced_commutator(std::size_t i, std::size_t j,
                                            Symbol fiber_coordinate) const
{
	RationalExpr s = RationalExpr::symbol(fiber_coordinate);
	return fiber_system_.total_derivative(fiber_system_.total_derivative(s, j),
	                                      i) -
	       fiber_system_.total_derivative(fiber_system_.total_derivative(s, i),
	                                      j);
}

FlatnessReport flatness_check(const Covering &c, unsigned order)
{
	FlatnessReport report;
	report.order = order;
	bool has_family = std::any_of(c.fibers().begin(), c.fibers().end(),
	                              [](const auto &f) {
		                              return f.family_direction.has_value();
	                              });
	if (has_family && order > c.family_order())
	{
		report.status = CheckStatus::inconclusive;
		report.note = "order " + std::to_string(order) +
		              " exceeds the family truncation " +
		              std::to_string(c.family_order());
		return report;
	}
	std::size_t n = c.context().dimension();
	try
	{
		for (auto s : c.fiber_coordinates(order))
		{
			RationalExpr v = RationalExpr::symbol(s);
			for (std::size_t i = 0; i < n; ++i)
				for (std::size_t j = i + 1; j < n; ++j)
				{
					auto r = c.extended_total_derivative(
					             c.extended_total_derivative(v, j), i) -
					         c.extended_total_derivative(
					             c.extended_total_derivative(v, i), j);
					r = c.system().reduce(r);
					CommutatorResidual entry{i, j, s, r, std::nullopt};
					if (!r.is_zero())
						report.status = CheckStatus::fail;
					else
					{
						auto m = c.base().system().multipliers(
						    c.unreduced_commutator(i, j, s));
						if (m && m->size() == 1)
							entry.multiplier = m->front().second;
					}
					report.residuals.push_back(std::move(entry));
				}
		}
	}
	catch (const TruncationError &e)
	{
		report.status = CheckStatus::inconclusive;
		report.note = e.what();
	}
	return report;
}

std::vector<WEForm> we_forms(const Covering &c, unsigned k)
{
	const auto &ctx = c.context();
	for (const auto &f : c.fibers())
		if (f.family_direction && k + 1 > c.family_order())
			throw TruncationError(ctx.jet_name(
			    *ctx.dependent_index(f.name),
			    MultiIndex::repeated(
			        static_cast<std::uint8_t>(*f.family_direction), k + 1)));
	std::vector<WEForm> out;
	for (auto s : c.fiber_coordinates(k))
	{
		DifferentialForm w = DifferentialForm::differential(s);
		for (std::size_t i = 0; i < ctx.dimension(); ++i)
			w -= c.transport(s, i) *
			     DifferentialForm::differential(ctx.independent(i));
		out.push_back({s, std::move(w)});
	}
	return out;
}

DifferentialForm restricted_contact_form(const Covering &c, Symbol s)
{
	const auto &ctx = c.context();
	DifferentialForm w = DifferentialForm::differential(s);
	for (std::size_t i = 0; i < ctx.dimension(); ++i)
		w -= c.extended_total_derivative(RationalExpr::symbol(s), i) *
		     DifferentialForm::differential(ctx.independent(i));
	return w;
}

ClosureReport we_closure_check(const Covering &c, unsigned k)
{
	ClosureReport report;
	const auto &ctx = c.context();
	try
	{
		for (const auto &we : we_forms(c, k))
		{
			DifferentialForm dw = exterior_derivative(we.form);
			std::vector<Symbol> coords = dw.covectors();
			auto vars = dw.coefficient_variables();
			coords.insert(coords.end(), vars.begin(), vars.end());
			std::sort(coords.begin(), coords.end());
			coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
			std::vector<DifferentialForm> gens;
			for (auto s : coords)
				if (!ctx.independent_index(s))
					gens.push_back(restricted_contact_form(c, s));
			auto r = annihilation_check(dw, gens);
			if (!r.annihilated)
				report.status = CheckStatus::fail;
			report.residuals.emplace_back(we.fiber_coordinate,
			                              std::move(r.residual));
		}
	}
	catch (const TruncationError &e)
	{
		report.status = CheckStatus::inconclusive;
		report.note = e.what();
	}
	return report;
}

} // namespace jetcov
