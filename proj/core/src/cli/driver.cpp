#include "jetcov/cli/driver.hpp"

#include "jetcov/cli/catalog.hpp"
#include "jetcov/coframe.hpp"
#include "jetcov/error.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <sstream>

namespace jetcov::cli {

namespace {

const std::string builtin_prefix = "builtin:";

std::string letter(const JetContext &ctx, std::size_t i)
{
	return ctx.independent(i).name();
}

/// m*(p - rhs), dropping a unit multiplier
std::string factored(const RationalExpr &m, const RationalExpr &defining)
{
	std::string d = "(" + to_string(defining) + ")";
	if (m == RationalExpr(1))
		return d;
	if (m == RationalExpr(-1))
		return "-" + d;
	std::string ms = to_string(m);
	bool sum = ms.find(" + ") != std::string::npos ||
	           ms.find(" - ") != std::string::npos;
	return (sum ? "(" + ms + ")" : ms) + "*" + d;
}

struct Loaded {
	ProblemFile file;
	ProblemModel model;
	unsigned order;
};

Loaded load(const std::string &source, std::optional<unsigned> order = {})
{
	Loaded l;
	std::string text = load_problem_text(source);
	try
	{
		l.file = parse_problem(text);
	}
	catch (const ParseError &e)
	{
		std::string where = source.rfind(builtin_prefix, 0) == 0
		                        ? source.substr(builtin_prefix.size()) + ".prob"
		                        : source;
		throw Error(where + ":" + e.what());
	}
	l.order = order.value_or(flatness_order(l.file));
	l.model = build_model(l.file, l.order);
	return l;
}

} // namespace

std::string load_problem_text(const std::string &source)
{
	if (source.rfind(builtin_prefix, 0) == 0)
	{
		auto text = catalog_text(source.substr(builtin_prefix.size()));
		if (!text)
			throw Error("no built-in problem '" +
			            source.substr(builtin_prefix.size()) + "'");
		return std::string(*text);
	}
	std::ifstream in(source, std::ios::binary);
	if (!in)
		throw Error("cannot read '" + source + "'");
	std::ostringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

void check_covering(Report &r, const ProblemFile &p, const ProblemModel &m,
                    unsigned order)
{
	if (!m.covering)
	{
		r.note("INFO", p.name + " declares no fibers");
		return;
	}
	const Covering &c = *m.covering;
	const auto &ctx = c.context();
	auto flat = flatness_check(c, order);
	for (const auto &e : flat.residuals)
	{
		std::string id = p.name + ".flat[" + letter(ctx, e.i) + "," +
		                 letter(ctx, e.j) + "]." + e.fiber_coordinate.name();
		r.result(id, e.residual.is_zero() ? CheckStatus::pass : CheckStatus::fail,
		         to_string(e.residual));
		if (e.multiplier && !e.multiplier->is_zero())
			r.note("FACTOR", "check=" + id + " unreduced=" +
			                     factored(*e.multiplier,
			                              c.base().defining_expression()));
	}
	if (flat.status == CheckStatus::inconclusive)
	{
		r.result(p.name + ".flatness", CheckStatus::inconclusive, "?");
		r.note("INFO", p.name + ": " + flat.note);
		return;
	}

	unsigned depth = std::min(2u, order - 1);
	auto closure = we_closure_check(c, depth);
	for (const auto &[s, residual] : closure.residuals)
		r.result(p.name + ".closure." + s.name(),
		         residual.is_zero() ? CheckStatus::pass : CheckStatus::fail,
		         to_string(residual));
	if (closure.status == CheckStatus::inconclusive)
	{
		r.result(p.name + ".closure", CheckStatus::inconclusive, "?");
		r.note("INFO", p.name + ": " + closure.note);
	}
}

void check_we_forms(Report &r, const ProblemFile &p, const ProblemModel &m,
                    unsigned max)
{
	if (!m.covering)
	{
		r.note("INFO", p.name + " declares no fibers");
		return;
	}
	try
	{
		for (const auto &we : we_forms(*m.covering, max))
			r.note("FORM", p.name + ".we." + we.fiber_coordinate.name() + " = " +
			                   to_string(we.form));
	}
	catch (const TruncationError &e)
	{
		r.result(p.name + ".we-forms", CheckStatus::inconclusive, "?");
		r.note("INFO", p.name + ": " + e.what());
		return;
	}
	auto closure = we_closure_check(*m.covering, max);
	for (const auto &[s, residual] : closure.residuals)
		r.result(p.name + ".closure." + s.name(),
		         residual.is_zero() ? CheckStatus::pass : CheckStatus::fail,
		         to_string(residual));
}

void check_backlund(Report &r, const BacklundProblem &b)
{
	auto report = verify_backlund(b);
	for (const auto &c : report.conditions)
	{
		std::string id = b.name + "." + c.label;
		r.result(id, c.residual.is_zero() ? CheckStatus::pass : CheckStatus::fail,
		         to_string(c.residual));
		if (c.multipliers && !c.multipliers->empty())
		{
			std::string text;
			for (const auto &m : *c.multipliers)
			{
				auto rule = b.base.governing_rule(m.principal);
				std::string term =
				    factored(m.multiplier, b.base.defining_expression(*rule));
				text += text.empty() ? term : " + " + term;
			}
			r.note("FACTOR", "check=" + id + " condition=" + text);
		}
	}
	if (!report.genericity.empty())
	{
		std::string g;
		for (const auto &p : report.genericity)
			g += (g.empty() ? "" : ", ") + to_string(p);
		r.note("INFO", b.name + " assumes nonzero: " + g);
	}
	if (!report.note.empty())
		r.note("INFO", b.name + ": " + report.note);
}

void check_coframe(Report &r, std::size_t n)
{
	auto cf = build_lifted_coframe(coframe_context(n));
	r.note("INFO", "coframe n=" + std::to_string(n) + " group dimension " +
	                   std::to_string(cf.h.coordinates().size()) + " of " +
	                   std::to_string(group_dimension(n)));
	for (const auto &c : check_structure_congruences(cf))
		r.result("coframe.n" + std::to_string(n) + "." + c.name, c.status,
		         to_string(c.residual));
}

void check_linear_combination(Report &r, const ProblemModel *mkhz)
{
	auto lc = mkhz_linear_combination_check();
	r.result("mkhz.linear-combination", lc.status, to_string(lc.difference));
	r.note("INFO", "mkhz.linear-combination: " + lc.note);
	r.result("mkhz.linear-combination.flatness", lc.flatness.status,
	         lc.flatness.status == CheckStatus::pass ? "0" : "?");
	if (!mkhz || !mkhz->covering)
		return;
	const auto &declared = mkhz->covering->fibers().front();
	RationalExpr worst;
	bool same = true;
	for (const auto &[dir, rhs] : lc.covering.transport)
	{
		if (dir == declared.family_direction)
			continue;
		auto it = declared.transport.find(dir);
		RationalExpr diff = rhs - (it == declared.transport.end() ? RationalExpr()
		                                                          : it->second);
		if (!diff.is_zero())
		{
			same = false;
			worst = diff;
		}
	}
	r.result("mkhz.linear-combination.covering",
	         same ? CheckStatus::pass : CheckStatus::fail, to_string(worst));
}

Report paper_demos()
{
	Report r;
	auto khz = load("builtin:khz");
	check_covering(r, khz.file, khz.model, khz.order);
	for (const auto &b : khz.model.backlund)
		check_backlund(r, b);

	auto mkhz = load("builtin:mkhz");
	check_covering(r, mkhz.file, mkhz.model, mkhz.order);
	check_linear_combination(r, &mkhz.model);

	auto eq9 = load("builtin:eq9");
	for (const auto &b : eq9.model.backlund)
		check_backlund(r, b);

	check_coframe(r, 1);
	check_coframe(r, 2);
	return r;
}

int run(const std::vector<std::string> &args, std::ostream &out,
        std::ostream &err)
{
	CLI::App app{"Exact verification of coverings, Baecklund transformations "
	             "and lifted coframes",
	             "jetcov"};
	app.require_subcommand(1);

	std::string file, expr;
	std::optional<unsigned> order;
	unsigned max = 0;
	std::size_t n = 0;

	auto *cov = app.add_subcommand("verify-covering", "flatness and WE closure");
	cov->add_option("FILE", file, "problem file or builtin:NAME")->required();
	cov->add_option("--order", order, "fiber order K")->check(CLI::Range(1, 20));
	auto *bl = app.add_subcommand("verify-backlund", "Baecklund blocks of a file");
	bl->add_option("FILE", file)->required();
	auto *we = app.add_subcommand("we-forms", "WE forms and their closure");
	we->add_option("FILE", file)->required();
	we->add_option("--max", max, "highest WE form index")->required()->check(
	    CLI::Range(0, 20));
	auto *co = app.add_subcommand("check-coframe", "structure congruences");
	co->add_option("--n", n, "number of independent variables")
	    ->required()
	    ->check(CLI::Range(1, 3));
	auto *red = app.add_subcommand("reduce", "reduce an expression on the equation");
	red->add_option("FILE", file)->required();
	red->add_option("--expr", expr, "expression in the file's variables")->required();
	auto *demos = app.add_subcommand("paper-demos", "every catalog check");

	try
	{
		std::vector<std::string> reversed(args.rbegin(), args.rend());
		app.parse(reversed);
	}
	catch (const CLI::ParseError &e)
	{
		int code = app.exit(e, out, err);
		return code == 0 ? 0 : 2;
	}

	try
	{
		Report r;
		if (*cov)
		{
			auto l = load(file, order);
			check_covering(r, l.file, l.model, l.order);
		}
		else if (*bl)
		{
			auto l = load(file);
			for (const auto &b : l.model.backlund)
				check_backlund(r, b);
		}
		else if (*we)
		{
			auto l = load(file);
			if (max + 1 > l.order)
				l = load(file, max + 1);
			check_we_forms(r, l.file, l.model, max);
		}
		else if (*co)
			check_coframe(r, n);
		else if (*red)
		{
			auto l = load(file);
			if (!l.model.system)
				throw Error("'" + l.file.name + "' declares no equation");
			auto e = parse_expression(expr, l.file.scope());
			out << to_string(l.model.system->reduce(
			           evaluate(e, l.model.scope, *l.model.context)))
			    << "\n";
			return 0;
		}
		else if (*demos)
			r = paper_demos();
		out << r.emit();
		return r.exit_code();
	}
	catch (const Error &e)
	{
		err << "error: " << e.what() << "\n";
	}
	return 2;
}

} // namespace jetcov::cli
