#include "support.hpp"

#include "jetcov/cli/catalog.hpp"
#include "jetcov/cli/driver.hpp"
#include "jetcov/error.hpp"

#include <doctest.h>
#include <fstream>
#include <sstream>

using namespace jetcov;
using namespace jetcov::cli;
using namespace jetcov::testing;

namespace {

const std::string problems_dir = JETCOV_PROBLEMS_DIR;
const std::string data_dir = JETCOV_TEST_DATA_DIR;

Scope txy_scope()
{
	Scope s;
	s.independent = {"t", "x", "y"};
	s.dependent = {"u", "v"};
	s.parameters = {"q"};
	s.families = {{"v", 1}};
	return s;
}

struct Run {
	int code;
	std::string out, err;
};

Run run_cli(std::vector<std::string> args)
{
	std::ostringstream out, err;
	int code = run(args, out, err);
	return {code, out.str(), err.str()};
}

std::string read_file(const std::string &path)
{
	std::ifstream in(path, std::ios::binary);
	REQUIRE(in);
	std::ostringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

std::vector<ResultLine> results_of(const std::string &report)
{
	std::vector<ResultLine> r;
	std::istringstream in(report);
	for (std::string line; std::getline(in, line);)
		if (auto l = parse_result_line(line))
			r.push_back(*l);
	return r;
}

Expr random_expr(std::mt19937 &rng, const std::vector<std::string> &names,
                 int depth)
{
	std::uniform_int_distribution<int> pick(0, depth > 0 ? 6 : 1);
	switch (pick(rng))
	{
	case 0:
		return Expr::number(Rational(static_cast<long>(rng() % 7),
		                             static_cast<long>(1 + rng() % 4)));
	case 1:
		return Expr::identifier(names[rng() % names.size()]);
	case 2:
		return Expr::binary(Expr::Kind::add, random_expr(rng, names, depth - 1),
		                    random_expr(rng, names, depth - 1));
	case 3:
		return Expr::binary(Expr::Kind::subtract,
		                    random_expr(rng, names, depth - 1),
		                    random_expr(rng, names, depth - 1));
	case 4:
		return Expr::binary(Expr::Kind::multiply,
		                    random_expr(rng, names, depth - 1),
		                    random_expr(rng, names, depth - 1));
	case 5:
		return Expr::binary(Expr::Kind::divide, random_expr(rng, names, depth - 1),
		                    random_expr(rng, names, depth - 1));
	default:
		return Expr::power(random_expr(rng, names, depth - 1),
		                   1 + static_cast<unsigned>(rng() % 3));
	}
}

} // namespace

TEST_SUITE("cli")
{
	TEST_CASE("identifiers take their canonical spelling")
	{
		auto s = txy_scope();
		CHECK(canonical_identifier("u_yx", s) == "u_xy");
		CHECK(canonical_identifier("u_ytx", s) == "u_txy");
		CHECK(canonical_identifier("v[0]", s) == "v");
		CHECK(canonical_identifier("v[3]", s) == "v_xxx");
		CHECK(canonical_identifier("q", s) == "q");
		CHECK_THROWS_AS(canonical_identifier("w", s), ParseError);
		CHECK_THROWS_AS(canonical_identifier("u[1]", s), ParseError);
		CHECK_THROWS_AS(canonical_identifier("u_z", s), ParseError);
		CHECK_THROWS_AS(canonical_identifier("q_x", s), ParseError);
	}

	TEST_CASE("the covering line and the equation parse to their values")
	{
		auto s = txy_scope();
		auto ctx = JetContext::make({"t", "x", "y"}, {"u", "v"}, 6);
		auto u = sym("u"), v = sym("v"), v1 = sym("v_x");
		auto cover = parse_expression("(v[0]^2 - u)*v[1] - u_y - v[0]*u_x", s);
		CHECK(evaluate(cover, s, *ctx) == (v * v - u) * v1 - sym("u_y") - v * sym("u_x"));
		auto rhs = parse_expression("u_xt + u*u_xx + u_x^2", s);
		CHECK(evaluate(rhs, s, *ctx) ==
		      sym("u_tx") + u * sym("u_xx") + sym("u_x") * sym("u_x"));
		CHECK(to_string(parse_expression("-1/2*u_x^2 + u_yx", s)) ==
		      "-1/2*u_x^2 + u_xy");
	}

	TEST_CASE("syntax errors carry line and column")
	{
		auto s = txy_scope();
		try
		{
			parse_expression("u_x + * u", s, 4, 10);
			FAIL("no error");
		}
		catch (const ParseError &e)
		{
			CHECK(e.line() == 4);
			CHECK(e.column() == 16);
		}
		CHECK_THROWS_AS(parse_expression("(u + v", s), ParseError);
		CHECK_THROWS_AS(parse_expression("u^x", s), ParseError);
		CHECK_THROWS_AS(parse_expression("u*-v", s), ParseError);
		CHECK_THROWS_AS(parse_expression("1/0", s), ParseError);
	}

	TEST_CASE("problem files reject undeclared and duplicate names")
	{
		try
		{
			parse_problem("name p\nindependent x y\ndependent u\n"
			              "equation u_yy = u_xx + w\n");
			FAIL("no error");
		}
		catch (const ParseError &e)
		{
			CHECK(e.line() == 4);
			CHECK(e.column() == 24);
		}
		CHECK_THROWS_AS(parse_problem("name p\nindependent x x\ndependent u\n"),
		                ParseError);
		CHECK_THROWS_AS(
		    parse_problem("name p\nindependent x y\ndependent u\nparameter u\n"),
		    ParseError);
		CHECK_THROWS_AS(parse_problem("name p\nindependent x y\ndependent u\n"
		                              "cover x: u\n"),
		                ParseError);
		CHECK_THROWS_AS(parse_problem("name p\nindependent xy\ndependent u\n"),
		                ParseError);
		CHECK_THROWS_AS(parse_problem("name p\nindependent x y\ndependent u\n"
		                              "backlund b\nunknown w\nrelation w_x = u\n"),
		                ParseError);
	}

	TEST_CASE("shipped problems round-trip through canonical text")
	{
		for (const auto &entry : catalog())
		{
			CAPTURE(entry.name);
			auto p = parse_problem(entry.text);
			auto text = to_string(p);
			CHECK(parse_problem(text) == p);
			CHECK(to_string(parse_problem(text)) == text);
		}
	}

	TEST_CASE("random expression trees round-trip through text")
	{
		auto s = txy_scope();
		std::vector<std::string> names = {"u", "u_x", "u_xy", "v", "v_xx", "q"};
		std::mt19937 rng(1017);
		for (int k = 0; k < 300; ++k)
		{
			Expr e = random_expr(rng, names, 4);
			std::string text = to_string(e);
			CAPTURE(text);
			Expr back;
			try
			{
				back = parse_expression(text, s);
			}
			catch (const ParseError &)
			{
				// a zero divisor literal is rejected at parse time
				CHECK(text.find("/0") != std::string::npos);
				continue;
			}
			CHECK(back == e);
		}
	}

	TEST_CASE("printed values parse back to the same value")
	{
		auto s = txy_scope();
		auto ctx = JetContext::make({"t", "x", "y"}, {"u", "v"}, 4);
		std::vector<Symbol> vars = {Symbol::intern("u"), Symbol::intern("u_x"),
		                            Symbol::intern("v_xx"), Symbol::intern("q")};
		std::mt19937 rng(20261017);
		for (int k = 0; k < 200; ++k)
		{
			auto a = random_rational(rng, vars);
			auto text = to_string(a);
			CAPTURE(text);
			CHECK(evaluate(parse_expression(text, s), s, *ctx) == a);
		}
	}

	TEST_CASE("report lines parse back")
	{
		ResultLine r{"khz.flat[t,y].v", CheckStatus::fail, "-(u_x + v)*dt^dx"};
		CHECK(parse_result_line(to_string(r)) == r);
		CHECK_FALSE(parse_result_line("RESULT check=a status=MAYBE residual=0"));
		CHECK_FALSE(parse_result_line("INFO x"));
		Report empty;
		CHECK(empty.emit() == "SUMMARY 0 checks\n");
		CHECK(empty.exit_code() == 2);
		Report one;
		one.result("a", CheckStatus::inconclusive, "?");
		CHECK(one.exit_code() == 1);
		CHECK(one.emit() == "RESULT check=a status=INCONCLUSIVE residual=?\n"
		                    "SUMMARY 1 checks: 0 PASS, 0 FAIL, 1 INCONCLUSIVE\n");
	}

	TEST_CASE("the catalog matches the problem files")
	{
		std::vector<std::string> names;
		for (const auto &e : catalog())
		{
			names.emplace_back(e.name);
			CHECK(read_file(problems_dir + "/" + std::string(e.name) + ".prob") ==
			      e.text);
		}
		CHECK(names == std::vector<std::string>{"eq9", "khz", "mkhz", "mkhz-broken"});
		CHECK_FALSE(catalog_text("nothing"));
	}

	TEST_CASE("verify-covering passes the shipped coverings")
	{
		for (std::string name : {"khz", "mkhz"})
		{
			auto r = run_cli({"verify-covering", problems_dir + "/" + name + ".prob"});
			CAPTURE(r.out);
			CHECK(r.code == 0);
			auto results = results_of(r.out);
			CHECK(results.size() == 15);
			for (const auto &l : results)
				CHECK(l.status == CheckStatus::pass);
		}
	}

	TEST_CASE("the broken covering fails with a residual")
	{
		auto r = run_cli({"verify-covering", "builtin:mkhz-broken"});
		CHECK(r.code == 1);
		auto results = results_of(r.out);
		bool failed = false;
		for (const auto &l : results)
			if (l.id == "mkhz-broken.flat[t,y].v")
			{
				CHECK(l.status == CheckStatus::fail);
				CHECK(l.residual != "0");
				failed = true;
			}
		CHECK(failed);
	}

	TEST_CASE("check-coframe reports four congruences")
	{
		auto r = run_cli({"check-coframe", "--n", "2"});
		CHECK(r.code == 0);
		auto results = results_of(r.out);
		REQUIRE(results.size() == 4);
		const char *ids[] = {"coframe.n2.i", "coframe.n2.ii", "coframe.n2.iii",
		                     "coframe.n2.iv"};
		for (std::size_t k = 0; k < 4; ++k)
		{
			CHECK(results[k].id == ids[k]);
			CHECK(results[k].status == CheckStatus::pass);
			CHECK(results[k].residual == "0");
		}
	}

	TEST_CASE("verify-backlund and reduce")
	{
		auto r = run_cli({"verify-backlund", "builtin:eq9"});
		CHECK(r.code == 0);
		CHECK(results_of(r.out).size() == 2);
		CHECK(r.out.find("INFO mkhz-from-eq9 assumes nonzero: v_x") !=
		      std::string::npos);

		auto red = run_cli({"reduce", "builtin:khz", "--expr", "u_yy - u_xt"});
		CHECK(red.code == 0);
		CHECK(red.out == "u*u_xx + u_x^2\n");
	}

	TEST_CASE("we-forms prints forms and their closure")
	{
		auto r = run_cli({"we-forms", "builtin:khz", "--max", "1"});
		CHECK(r.code == 0);
		CHECK(r.out.find("FORM khz.we.v = ") != std::string::npos);
		CHECK(r.out.find("FORM khz.we.v_x = ") != std::string::npos);
		CHECK(results_of(r.out).size() == 2);
	}

	TEST_CASE("usage and input errors exit 2")
	{
		CHECK(run_cli({}).code == 2);
		CHECK(run_cli({"frobnicate"}).code == 2);
		CHECK(run_cli({"check-coframe", "--n", "4"}).code == 2);
		CHECK(run_cli({"verify-covering", "/nonexistent.prob"}).code == 2);
		CHECK(run_cli({"verify-covering", "builtin:nothing"}).code == 2);
		CHECK(run_cli({"--help"}).code == 0);

		auto r = run_cli({"reduce", "builtin:khz", "--expr", "u_z"});
		CHECK(r.code == 2);
		CHECK(r.err.rfind("error: ", 0) == 0);

		auto none = run_cli({"verify-covering", "builtin:eq9"});
		CHECK(none.code == 2);
		CHECK(none.out.find("SUMMARY 0 checks") != std::string::npos);
	}

	TEST_CASE("paper-demos passes and is deterministic")
	{
		auto a = run_cli({"paper-demos"});
		auto b = run_cli({"paper-demos"});
		CHECK(a.code == 0);
		CHECK(a.out == b.out);
		auto results = results_of(a.out);
		CHECK(results.size() == 45);
		for (const auto &l : results)
			CHECK(l.status == CheckStatus::pass);
		CHECK(a.out.find("SUMMARY 45 checks: 45 PASS, 0 FAIL, 0 INCONCLUSIVE") !=
		      std::string::npos);
	}

	TEST_CASE("declaration order does not change the report")
	{
		for (std::string name : {"khz", "mkhz"})
		{
			CAPTURE(name);
			auto shipped = run_cli({"verify-covering", "builtin:" + name});
			auto shuffled =
			    run_cli({"verify-covering", data_dir + "/" + name + "-shuffled.prob"});
			CHECK(shipped.code == 0);
			CHECK(shuffled.out == shipped.out);
		}
		auto shipped = run_cli({"verify-backlund", "builtin:khz"});
		auto shuffled = run_cli({"verify-backlund", data_dir + "/khz-shuffled.prob"});
		CHECK(shipped.code == 0);
		CHECK(shuffled.out == shipped.out);
	}
}
