#include "jetcov/cli/expression.hpp"

#include "jetcov/error.hpp"

#include <algorithm>
#include <cctype>

namespace jetcov::cli {

namespace {

bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)); }
bool is_name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)); }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

bool contains(const std::vector<std::string> &v, std::string_view s)
{
	return std::find(v.begin(), v.end(), s) != v.end();
}

class Parser {
public:
	Parser(std::string_view text, const Scope &scope, std::size_t line,
	       std::size_t column)
	    : text_(text), scope_(scope), line_(line), column_(column)
	{}

	Expr parse()
	{
		Expr e = expr();
		skip_space();
		if (pos_ != text_.size())
			fail("unexpected '" + std::string(1, text_[pos_]) + "'");
		return e;
	}

private:
	[[noreturn]] void fail(const std::string &msg, std::size_t at) const
	{
		throw ParseError(line_, column_ + at, msg);
	}
	[[noreturn]] void fail(const std::string &msg) const { fail(msg, pos_); }

	void skip_space()
	{
		while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t'))
			++pos_;
	}

	bool accept(char c)
	{
		skip_space();
		if (pos_ < text_.size() && text_[pos_] == c)
		{
			++pos_;
			return true;
		}
		return false;
	}

	std::string digits()
	{
		std::size_t start = pos_;
		while (pos_ < text_.size() && is_digit(text_[pos_]))
			++pos_;
		return std::string(text_.substr(start, pos_ - start));
	}

	Expr expr()
	{
		Expr e = accept('-') ? Expr::unary(Expr::Kind::negate, term()) : term();
		for (;;)
		{
			if (accept('+'))
				e = Expr::binary(Expr::Kind::add, std::move(e), term());
			else if (accept('-'))
				e = Expr::binary(Expr::Kind::subtract, std::move(e), term());
			else
				return e;
		}
	}

	Expr term()
	{
		Expr e = factor();
		for (;;)
		{
			if (accept('*'))
				e = Expr::binary(Expr::Kind::multiply, std::move(e), factor());
			else if (accept('/'))
				e = Expr::binary(Expr::Kind::divide, std::move(e), factor());
			else
				return e;
		}
	}

	Expr factor()
	{
		Expr b = base();
		if (accept('^'))
		{
			skip_space();
			std::size_t at = pos_;
			std::string d = digits();
			if (d.empty())
				fail("expected an exponent");
			if (d.size() > 6)
				fail("exponent too large", at);
			b = Expr::power(std::move(b), static_cast<unsigned>(std::stoul(d)));
		}
		return b;
	}

	Expr base()
	{
		skip_space();
		if (pos_ >= text_.size())
			fail("unexpected end of expression");
		char c = text_[pos_];
		if (c == '(')
		{
			++pos_;
			Expr e = expr();
			if (!accept(')'))
				fail("expected ')'");
			return e;
		}
		if (is_digit(c))
			return number();
		if (is_name_start(c))
			return identifier();
		fail("unexpected '" + std::string(1, c) + "'");
	}

	Expr number()
	{
		std::size_t at = pos_;
		Rational q(digits());
		if (pos_ + 1 < text_.size() && text_[pos_] == '/' && is_digit(text_[pos_ + 1]))
		{
			++pos_;
			Rational d(digits());
			if (d == 0)
				fail("zero denominator", at);
			q /= d;
		}
		q.canonicalize();
		return Expr::number(q);
	}

	Expr identifier()
	{
		std::size_t start = pos_;
		while (pos_ < text_.size() && is_name_char(text_[pos_]))
			++pos_;
		if (pos_ < text_.size() && text_[pos_] == '_')
		{
			++pos_;
			while (pos_ < text_.size() && is_name_start(text_[pos_]))
				++pos_;
		}
		else if (pos_ < text_.size() && text_[pos_] == '[')
		{
			++pos_;
			if (digits().empty() || pos_ >= text_.size() || text_[pos_] != ']')
				fail("expected a family index like v[2]");
			++pos_;
		}
		auto raw = text_.substr(start, pos_ - start);
		return Expr::identifier(
		    canonical_identifier(raw, scope_, line_, column_ + start));
	}

	std::string_view text_;
	const Scope &scope_;
	std::size_t line_;
	std::size_t column_;
	std::size_t pos_ = 0;
};

int precedence(const Expr &e)
{
	switch (e.kind)
	{
	case Expr::Kind::add:
	case Expr::Kind::subtract:
	case Expr::Kind::negate: return 1;
	case Expr::Kind::multiply:
	case Expr::Kind::divide: return 2;
	case Expr::Kind::power: return 3;
	default: return 4;
	}
}

std::string parenthesized(const Expr &e, bool wrap)
{
	std::string s = to_string(e);
	return wrap ? "(" + s + ")" : s;
}

/// "x*2" followed by "/3" would lex as the number 2/3
bool ends_with_integer(const std::string &s)
{
	std::size_t i = s.size();
	while (i > 0 && is_digit(s[i - 1]))
		--i;
	if (i == s.size())
		return false;
	return i == 0 || !(is_name_char(s[i - 1]) || s[i - 1] == '^' ||
	                   s[i - 1] == '[' || s[i - 1] == '_');
}

} // namespace

bool Scope::declared(std::string_view name) const
{
	return contains(independent, name) || contains(dependent, name) ||
	       contains(parameters, name);
}

Expr Expr::number(Rational q)
{
	Expr e;
	e.kind = Kind::number;
	e.value = std::move(q);
	e.value.canonicalize();
	return e;
}

Expr Expr::identifier(std::string name)
{
	Expr e;
	e.kind = Kind::identifier;
	e.name = std::move(name);
	return e;
}

Expr Expr::unary(Kind kind, Expr a)
{
	Expr e;
	e.kind = kind;
	e.args.push_back(std::move(a));
	return e;
}

Expr Expr::binary(Kind kind, Expr a, Expr b)
{
	Expr e;
	e.kind = kind;
	e.args.push_back(std::move(a));
	e.args.push_back(std::move(b));
	return e;
}

Expr Expr::power(Expr base, unsigned exponent)
{
	Expr e = unary(Kind::power, std::move(base));
	e.exponent = exponent;
	return e;
}

bool operator==(const Expr &a, const Expr &b)
{
	return a.kind == b.kind && a.value == b.value && a.name == b.name &&
	       a.exponent == b.exponent && a.args == b.args;
}

std::string canonical_identifier(std::string_view ident, const Scope &scope,
                                 std::size_t line, std::size_t column)
{
	auto bracket = ident.find('[');
	auto underscore = ident.find('_');
	std::string name(ident.substr(0, std::min(bracket, underscore)));
	if (!scope.declared(name))
		throw ParseError(line, column, "undeclared identifier '" + name + "'");

	if (bracket != std::string_view::npos)
	{
		auto fam = scope.families.find(name);
		if (fam == scope.families.end())
			throw ParseError(line, column,
			                 "'" + name + "' is not a family fiber");
		auto digits = ident.substr(bracket + 1, ident.size() - bracket - 2);
		if (digits.size() > 2)
			throw ParseError(line, column, "family index too large");
		auto k = std::stoul(std::string(digits));
		if (k == 0)
			return name;
		return name + "_" +
		       std::string(k, scope.independent[fam->second][0]);
	}
	if (underscore == std::string_view::npos)
		return name;

	if (!contains(scope.dependent, name))
		throw ParseError(line, column,
		                 "'" + name + "' is not a dependent variable");
	auto letters = ident.substr(underscore + 1);
	if (letters.empty())
		throw ParseError(line, column, "empty derivative subscript");
	std::vector<std::size_t> positions;
	for (std::size_t k = 0; k < letters.size(); ++k)
	{
		auto it = std::find(scope.independent.begin(), scope.independent.end(),
		                    std::string(1, letters[k]));
		if (it == scope.independent.end())
			throw ParseError(line, column + underscore + 1 + k,
			                 "'" + std::string(1, letters[k]) +
			                     "' is not an independent variable");
		positions.push_back(
		    static_cast<std::size_t>(it - scope.independent.begin()));
	}
	std::sort(positions.begin(), positions.end());
	std::string out = name + "_";
	for (auto p : positions)
		out += scope.independent[p];
	return out;
}

Expr parse_expression(std::string_view text, const Scope &scope,
                      std::size_t line, std::size_t column)
{
	return Parser(text, scope, line, column).parse();
}

std::string to_string(const Expr &e)
{
	using K = Expr::Kind;
	switch (e.kind)
	{
	case K::number: return e.value.get_str();
	case K::identifier: return e.name;
	case K::negate:
		return "-" + parenthesized(e.args[0], precedence(e.args[0]) < 2);
	case K::power:
		return parenthesized(e.args[0], precedence(e.args[0]) < 4) + "^" +
		       std::to_string(e.exponent);
	default: break;
	}
	int p = precedence(e);
	const Expr &l = e.args[0], &r = e.args[1];
	std::string ls = parenthesized(l, precedence(l) < p);
	std::string rs = parenthesized(r, precedence(r) <= p);
	const char *op = e.kind == K::add        ? " + "
	                 : e.kind == K::subtract ? " - "
	                 : e.kind == K::multiply ? "*"
	                                         : "/";
	if (e.kind == K::divide && rs[0] != '(' && is_digit(rs[0]) &&
	    ends_with_integer(ls))
		rs = "(" + rs + ")";
	return ls + op + rs;
}

RationalExpr evaluate(const Expr &e, const Scope &scope, const JetContext &ctx)
{
	using K = Expr::Kind;
	switch (e.kind)
	{
	case K::number: return RationalExpr(e.value);
	case K::identifier: {
		auto u = e.name.find('_');
		if (u == std::string::npos)
			return RationalExpr::symbol(Symbol::intern(e.name));
		auto dep = ctx.dependent_index(Symbol::intern(e.name.substr(0, u)));
		if (!dep)
			throw Error("'" + e.name + "' is not a jet of this context");
		auto index = ctx.parse_subscript(std::string_view(e.name).substr(u + 1));
		return RationalExpr::symbol(ctx.jet(*dep, *index));
	}
	case K::negate: return -evaluate(e.args[0], scope, ctx);
	case K::power: return evaluate(e.args[0], scope, ctx).pow(static_cast<int>(e.exponent));
	default: break;
	}
	RationalExpr a = evaluate(e.args[0], scope, ctx);
	RationalExpr b = evaluate(e.args[1], scope, ctx);
	switch (e.kind)
	{
	case K::add: return a + b;
	case K::subtract: return a - b;
	case K::multiply: return a * b;
	default: return arithmetic(a, b, ArithOp::div);
	}
}

} // namespace jetcov::cli
