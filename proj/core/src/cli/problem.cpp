#include "jetcov/cli/problem.hpp"

#include "jetcov/error.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace jetcov::cli {

namespace {

struct Line {
	std::size_t number;
	std::string text;
};

struct Word {
	std::string text;
	std::size_t column;
};

std::vector<Word> split_words(const std::string &s, std::size_t from = 0)
{
	std::vector<Word> out;
	std::size_t i = from;
	while (i < s.size())
	{
		while (i < s.size() && (s[i] == ' ' || s[i] == '\t'))
			++i;
		std::size_t start = i;
		while (i < s.size() && s[i] != ' ' && s[i] != '\t')
			++i;
		if (i > start)
			out.push_back({s.substr(start, i - start), start + 1});
	}
	return out;
}

std::vector<Line> logical_lines(std::string_view text)
{
	std::vector<Line> out;
	std::size_t number = 0;
	std::istringstream in{std::string(text)};
	for (std::string s; std::getline(in, s);)
	{
		++number;
		if (!s.empty() && s.back() == '\r')
			s.pop_back();
		auto hash = s.find('#');
		if (hash != std::string::npos)
			s.erase(hash);
		while (!s.empty() && (s.back() == ' ' || s.back() == '\t'))
			s.pop_back();
		if (s.find_first_not_of(" \t") != std::string::npos)
			out.push_back({number, s});
	}
	return out;
}

bool valid_name(const std::string &s)
{
	if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0])))
		return false;
	return std::all_of(s.begin(), s.end(), [](char c) {
		return std::isalnum(static_cast<unsigned char>(c));
	});
}

bool valid_label(const std::string &s)
{
	return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
		return std::isalnum(static_cast<unsigned char>(c)) || c == '-' ||
		       c == '_' || c == '.';
	});
}

const std::vector<std::string> keywords{
    "name",   "independent", "dependent", "parameter", "equation", "fiber",
    "family", "cover",       "order",     "backlund",  "unknown",  "relation",
    "target", "end",         "for"};

class ProblemParser {
public:
	explicit ProblemParser(std::string_view text) : lines_(logical_lines(text)) {}

	ProblemFile parse()
	{
		declarations();
		bodies();
		if (p_.name.empty())
			throw ParseError(1, 1, "missing 'name' line");
		if (p_.independent.empty())
			throw ParseError(1, 1, "missing 'independent' line");
		return std::move(p_);
	}

private:
	[[noreturn]] static void fail(const Line &l, std::size_t column,
	                              const std::string &msg)
	{
		throw ParseError(l.number, column, msg);
	}

	void declare(const Line &l, const Word &w, std::vector<std::string> *into)
	{
		if (!valid_name(w.text) ||
		    std::find(keywords.begin(), keywords.end(), w.text) != keywords.end())
			fail(l, w.column, "invalid variable name '" + w.text + "'");
		if (std::find(declared_.begin(), declared_.end(), w.text) != declared_.end())
			fail(l, w.column, "duplicate declaration of '" + w.text + "'");
		declared_.push_back(w.text);
		if (into)
			into->push_back(w.text);
	}

	// first pass: names only, so lines may come in any order
	void declarations()
	{
		bool in_block = false;
		for (const auto &l : lines_)
		{
			auto words = split_words(l.text);
			const auto &key = words[0].text;
			auto need = [&](std::size_t n) {
				if (words.size() < n)
					fail(l, words.back().column + words.back().text.size(),
					     "'" + key + "' needs more arguments");
			};
			if (key == "backlund")
			{
				if (in_block)
					fail(l, 1, "nested 'backlund' block");
				in_block = true;
			}
			else if (key == "end")
			{
				if (!in_block)
					fail(l, 1, "'end' outside a 'backlund' block");
				in_block = false;
			}
			else if (key == "independent")
			{
				need(2);
				if (!p_.independent.empty())
					fail(l, 1, "duplicate 'independent' line");
				for (std::size_t k = 1; k < words.size(); ++k)
				{
					if (words[k].text.size() != 1)
						fail(l, words[k].column,
						     "independent variables are single letters");
					declare(l, words[k], &p_.independent);
				}
			}
			else if (key == "dependent" || key == "parameter")
			{
				need(2);
				for (std::size_t k = 1; k < words.size(); ++k)
					declare(l, words[k],
					        key == "dependent" ? &p_.dependent : &p_.parameters);
			}
			else if (key == "fiber")
			{
				need(2);
				declare(l, words[1], nullptr);
				scope_.dependent.push_back(words[1].text);
				if (words.size() == 4 && words[2].text == "family")
					family_letters_[words[1].text] = words[3].text;
			}
			else if (key == "unknown")
			{
				need(2);
				if (!in_block)
					fail(l, 1, "'unknown' outside a 'backlund' block");
				declare(l, words[1], nullptr);
			}
		}
		if (in_block)
			fail(lines_.back(), 1, "unterminated 'backlund' block");

		scope_.independent = p_.independent;
		scope_.parameters = p_.parameters;
		auto names = scope_.dependent;
		scope_.dependent = p_.dependent;
		scope_.dependent.insert(scope_.dependent.end(), names.begin(), names.end());
		for (const auto &[name, letter] : family_letters_)
		{
			auto it = std::find(p_.independent.begin(), p_.independent.end(), letter);
			if (it != p_.independent.end())
				scope_.families[name] =
				    static_cast<std::size_t>(it - p_.independent.begin());
		}
	}

	Scope base_scope() const
	{
		Scope s;
		s.independent = p_.independent;
		s.dependent = p_.dependent;
		s.parameters = p_.parameters;
		return s;
	}

	/// jet = expr, with the jet of a dependent variable of `scope`
	EquationLine equation(const Line &l, std::size_t from, const Scope &scope)
	{
		auto eq = l.text.find('=', from);
		if (eq == std::string::npos)
			fail(l, from + 1, "expected 'jet = expression'");
		auto lhs = split_words(l.text.substr(0, eq), from);
		if (lhs.size() != 1)
			fail(l, from + 1, "the left side must be a single jet");
		auto name = canonical_identifier(lhs[0].text, scope, l.number, lhs[0].column);
		if (name.find('_') == std::string::npos)
			fail(l, lhs[0].column, "the left side must be a derivative");
		return {name, parse_expression(std::string_view(l.text).substr(eq + 1),
		                               scope, l.number, eq + 2)};
	}

	void bodies()
	{
		const Scope &scope = scope_;
		FiberBlock *fiber = nullptr;
		BacklundBlock *block = nullptr;
		for (const auto &l : lines_)
		{
			auto words = split_words(l.text);
			const auto &key = words[0].text;
			// offset just past the keyword
			std::size_t after = words[0].column - 1 + key.size();
			auto exact = [&](std::size_t n) {
				if (words.size() != n)
					fail(l, 1, "'" + key + "' takes " + std::to_string(n - 1) +
					               " argument" + (n == 2 ? "" : "s"));
			};
			if (key == "name")
			{
				exact(2);
				if (!p_.name.empty())
					fail(l, 1, "duplicate 'name' line");
				if (!valid_label(words[1].text))
					fail(l, words[1].column, "invalid name");
				p_.name = words[1].text;
			}
			else if (key == "independent" || key == "dependent" ||
			         key == "parameter")
				continue;
			else if (key == "order")
			{
				exact(2);
				if (p_.order)
					fail(l, 1, "duplicate 'order' line");
				const auto &w = words[1].text;
				if (w.empty() || w.size() > 2 ||
				    !std::all_of(w.begin(), w.end(),
				                 [](char c) { return c >= '0' && c <= '9'; }) || std::stoul(w) == 0)
					fail(l, words[1].column, "order must be a positive integer below 100");
				p_.order = static_cast<unsigned>(std::stoul(w));
			}
			else if (key == "equation")
			{
				if (block)
					fail(l, 1, "'equation' inside a 'backlund' block");
				auto e = equation(l, after, base_scope());
				p_.equations.push_back(std::move(e));
			}
			else if (key == "fiber")
			{
				if (block)
					fail(l, 1, "'fiber' inside a 'backlund' block");
				FiberBlock f{words[1].text, {}, {}};
				if (words.size() == 4 && words[2].text == "family")
				{
					if (std::find(p_.independent.begin(), p_.independent.end(),
					              words[3].text) == p_.independent.end())
						fail(l, words[3].column, "unknown direction '" + words[3].text + "'");
					f.family = words[3].text;
				}
				else if (words.size() != 2)
					fail(l, 1, "expected 'fiber NAME' or 'fiber NAME family DIRECTION'");
				p_.fibers.push_back(std::move(f));
				fiber = &p_.fibers.back();
			}
			else if (key == "cover")
			{
				if (!fiber || block)
					fail(l, 1, "'cover' must follow a 'fiber' line");
				auto colon = l.text.find(':');
				if (colon == std::string::npos)
					fail(l, 1, "expected 'cover DIRECTION: expression'");
				auto dir = split_words(l.text.substr(0, colon), after);
				if (dir.size() != 1 ||
				    std::find(p_.independent.begin(), p_.independent.end(),
				              dir[0].text) == p_.independent.end())
					fail(l, after + 2, "expected an independent variable");
				if (fiber->family && *fiber->family == dir[0].text)
					fail(l, dir[0].column,
					     "the family direction is fixed by the stacking rule");
				for (const auto &c : fiber->covers)
					if (c.direction == dir[0].text)
						fail(l, dir[0].column, "duplicate cover for '" + dir[0].text + "'");
				fiber->covers.push_back(
				    {dir[0].text,
				     parse_expression(std::string_view(l.text).substr(colon + 1),
				                      scope, l.number, colon + 2)});
			}
			else if (key == "backlund")
			{
				exact(2);
				if (!valid_label(words[1].text))
					fail(l, words[1].column, "invalid name");
				p_.backlund.push_back({words[1].text, {}, {}, {}});
				block = &p_.backlund.back();
				fiber = nullptr;
			}
			else if (key == "unknown")
			{
				exact(2);
				if (!block->unknown.empty())
					fail(l, 1, "duplicate 'unknown' line");
				block->unknown = words[1].text;
			}
			else if (key == "relation" || key == "target")
			{
				if (!block || block->unknown.empty())
					fail(l, 1, "'" + key + "' needs a preceding 'unknown' line");
				Scope s = scope;
				s.dependent.push_back(block->unknown);
				if (key == "target")
				{
					if (block->target)
						fail(l, 1, "duplicate 'target' line");
					block->target = equation(l, after, s);
					if (block->target->principal.rfind(block->unknown + "_", 0) != 0)
						fail(l, after + 2, "the target must be solved for a jet of '" +
						                       block->unknown + "'");
					continue;
				}
				relation(l, after, s, *block);
			}
			else if (key == "end")
			{
				if (block->unknown.empty())
					fail(l, 1, "'backlund' block without 'unknown'");
				if (block->relations.empty())
					fail(l, 1, "'backlund' block without relations");
				block = nullptr;
			}
			else
				fail(l, 1, "unknown keyword '" + key + "'");
		}
	}

	void relation(const Line &l, std::size_t from, const Scope &s,
	              BacklundBlock &block)
	{
		std::string body = l.text;
		std::optional<std::string> solve_for;
		auto for_at = body.rfind(" for ");
		if (for_at != std::string::npos)
		{
			auto w = split_words(body, for_at + 5);
			if (w.size() != 1)
				fail(l, for_at + 2, "expected 'for JET'");
			solve_for = canonical_identifier(w[0].text, s, l.number, w[0].column);
			body.erase(for_at);
		}
		auto eq = body.find('=');
		if (eq == std::string::npos)
			fail(l, 1, "expected 'relation lhs = rhs'");
		RelationLine r{
		    parse_expression(std::string_view(body).substr(from, eq - from), s,
		                     l.number, from + 1),
		    parse_expression(std::string_view(body).substr(eq + 1), s, l.number,
		                     eq + 2),
		    solve_for};
		const auto &target = solve_for ? *solve_for : r.lhs.name;
		if ((!solve_for && r.lhs.kind != Expr::Kind::identifier) ||
		    target.rfind(block.unknown + "_", 0) != 0 ||
		    target.size() != block.unknown.size() + 2)
			fail(l, from + 2,
			     "a relation must be solved for a first derivative of '" +
			         block.unknown + "'");
		block.relations.push_back(std::move(r));
	}

	std::vector<Line> lines_;
	std::vector<std::string> declared_;
	/// the full scope, fibers included, once declarations() has run
	Scope scope_;
	std::map<std::string, std::string> family_letters_;
	ProblemFile p_;
};

} // namespace

Scope ProblemFile::scope() const
{
	Scope s;
	s.independent = independent;
	s.dependent = dependent;
	s.parameters = parameters;
	for (const auto &f : fibers)
	{
		s.dependent.push_back(f.name);
		if (f.family)
		{
			auto it = std::find(independent.begin(), independent.end(), *f.family);
			s.families[f.name] = static_cast<std::size_t>(it - independent.begin());
		}
	}
	return s;
}

Scope ProblemFile::scope(const BacklundBlock &b) const
{
	Scope s = scope();
	s.dependent.push_back(b.unknown);
	return s;
}

ProblemFile parse_problem(std::string_view text)
{
	return ProblemParser(text).parse();
}

namespace {

std::string join(const std::vector<std::string> &v)
{
	std::string out;
	for (const auto &s : v)
		out += " " + s;
	return out;
}

} // namespace

std::string to_string(const ProblemFile &p)
{
	std::string out = "name " + p.name + "\n";
	out += "independent" + join(p.independent) + "\n";
	if (!p.dependent.empty())
		out += "dependent" + join(p.dependent) + "\n";
	if (!p.parameters.empty())
		out += "parameter" + join(p.parameters) + "\n";
	for (const auto &e : p.equations)
		out += "equation " + e.principal + " = " + to_string(e.rhs) + "\n";
	for (const auto &f : p.fibers)
	{
		out += "fiber " + f.name + (f.family ? " family " + *f.family : "") + "\n";
		for (const auto &c : f.covers)
			out += "cover " + c.direction + ": " + to_string(c.rhs) + "\n";
	}
	if (p.order)
		out += "order " + std::to_string(*p.order) + "\n";
	for (const auto &b : p.backlund)
	{
		out += "backlund " + b.name + "\n";
		out += "unknown " + b.unknown + "\n";
		for (const auto &r : b.relations)
			out += "relation " + to_string(r.lhs) + " = " + to_string(r.rhs) +
			       (r.solve_for ? " for " + *r.solve_for : "") + "\n";
		if (b.target)
			out += "target " + b.target->principal + " = " +
			       to_string(b.target->rhs) + "\n";
		out += "end\n";
	}
	return out;
}

unsigned flatness_order(const ProblemFile &p) { return p.order.value_or(3); }

namespace {

SolvedRule rule_of(const EquationLine &e, const Scope &scope,
                   const JetContext &ctx)
{
	auto c = ctx.classify(Symbol::intern(e.principal));
	if (!c)
		throw Error("'" + e.principal + "' is beyond the order budget");
	return {c->dependent, c->index, evaluate(e.rhs, scope, ctx)};
}

} // namespace

ProblemModel build_model(const ProblemFile &p, unsigned order)
{
	ProblemModel m;
	std::vector<std::string> deps = p.dependent;
	for (const auto &f : p.fibers)
		deps.push_back(f.name);
	for (const auto &b : p.backlund)
		deps.push_back(b.unknown);
	m.context = JetContext::make(p.independent, deps, order + 4);
	m.scope = p.scope();
	const auto &ctx = *m.context;

	std::vector<SolvedRule> rules;
	for (const auto &e : p.equations)
		rules.push_back(rule_of(e, m.scope, ctx));
	if (rules.size() == 1)
		m.equation.emplace(m.context, Symbol::intern(p.equations[0].principal),
		                   rules[0].rhs);

	if (!p.fibers.empty())
	{
		if (!m.equation)
			throw Error("a covering needs exactly one equation");
		std::vector<FiberDeclaration> fibers;
		for (const auto &f : p.fibers)
		{
			FiberDeclaration d{Symbol::intern(f.name), {}, {}};
			if (f.family)
				d.family_direction = *ctx.independent_index(Symbol::intern(*f.family));
			for (const auto &c : f.covers)
				d.transport[*ctx.independent_index(Symbol::intern(c.direction))] =
				    evaluate(c.rhs, m.scope, ctx);
			fibers.push_back(std::move(d));
		}
		m.covering.emplace(*m.equation, std::move(fibers), order);
		m.system.emplace(m.covering->system());
	}
	else if (!rules.empty())
		m.system.emplace(m.context, rules);

	for (const auto &b : p.backlund)
	{
		if (!m.system)
			throw Error("backlund block '" + b.name + "' needs an equation");
		Scope s = p.scope(b);
		std::vector<BacklundRelation> relations;
		for (const auto &r : b.relations)
		{
			std::string target = r.solve_for ? *r.solve_for : r.lhs.name;
			relations.push_back(solve_relation(
			    m.context, evaluate(r.lhs, s, ctx), evaluate(r.rhs, s, ctx),
			    Symbol::intern(target), relations));
		}
		std::optional<SolvedRule> target;
		if (b.target)
			target = rule_of(*b.target, s, ctx);
		m.backlund.push_back(
		    BacklundProblem{b.name, *m.system, Symbol::intern(b.unknown),
		                    std::move(relations), std::move(target)});
	}
	return m;
}

} // namespace jetcov::cli
