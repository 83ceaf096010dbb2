#include "support.hpp"

#include "jetcov/error.hpp"

#include <doctest.h>

using namespace jetcov;
using namespace jetcov::testing;

namespace {

std::shared_ptr<const JetContext> txy(unsigned order = 6)
{
	return JetContext::make({"t", "x", "y"}, {"u"}, order);
}

RationalExpr mkhz_rhs()
{
	return sym("u_tx") + (q(1, 2) * sym("u_x").pow(2) - sym("u_y")) * sym("u_xx");
}

RationalExpr khz_rhs()
{
	return sym("u_tx") + sym("u") * sym("u_xx") + sym("u_x").pow(2);
}

MultiIndex idx(std::initializer_list<std::uint8_t> p)
{
	return MultiIndex(std::vector<std::uint8_t>(p));
}

} // namespace

TEST_SUITE("jet_space")
{
	TEST_CASE("multi-indices are sorted")
	{
		CHECK(idx({2, 1}) == idx({1, 2}));
		CHECK(idx({0, 1, 1}).order() == 3);
		CHECK(idx({0, 1, 1}).count(1) == 2);
		CHECK(idx({0, 1, 1}).contains(idx({1, 1})));
		CHECK_FALSE(idx({0, 1}).contains(idx({1, 1})));
	}

	TEST_CASE("jet symbols")
	{
		auto ctx = txy(3);
		auto u = Symbol::intern("u");
		CHECK(jet_symbol(u, {}, *ctx).name() == "u");
		CHECK(jet_symbol(u, idx({2, 1}), *ctx).name() == "u_xy");
		CHECK(jet_symbol(u, idx({1, 0}), *ctx).name() == "u_tx");
		CHECK(jet_symbol(u, idx({1, 2}), *ctx) == jet_symbol(u, idx({2, 1}), *ctx));
		CHECK(ctx->parse_subscript("yx") == idx({1, 2}));
		CHECK_THROWS_AS(jet_symbol(u, idx({1, 1, 1, 1}), *ctx), TruncationError);
		try
		{
			jet_symbol(u, idx({1, 1, 1, 1}), *ctx);
		}
		catch (const TruncationError &e)
		{
			CHECK(e.coordinate() == "u_xxxx");
		}
		auto pos = JetContext::make({"x1", "x2"}, {"u"}, 2);
		CHECK(pos->jet(0, idx({1, 0})).name() == "u_12");
	}

	TEST_CASE("total derivative examples")
	{
		auto ctx = txy(4);
		auto u = sym("u");
		CHECK(total_derivative(u, 1, *ctx) == sym("u_x"));
		CHECK(total_derivative(q(1, 2) * sym("u_x").pow(2) - sym("u_y"), 0, *ctx) ==
		      sym("u_x") * sym("u_tx") - sym("u_ty"));
		CHECK(is_zero(total_derivative(total_derivative(u, 2, *ctx), 1, *ctx) -
		              total_derivative(total_derivative(u, 1, *ctx), 2, *ctx)));
		CHECK(iterated_total_derivative(u, idx({1, 1}), *ctx) == sym("u_xx"));
		CHECK(iterated_total_derivative(sym("u_x"), idx({1, 2}), *ctx) ==
		      sym("u_xxy"));
		// free of jets: reduces to the partial derivative
		auto f = sym("t") * sym("t") * sym("x") + sym("y");
		CHECK(total_derivative(f, 0, *ctx) == 2 * sym("t") * sym("x"));
	}

	TEST_CASE("truncation overflow names the missing coordinate")
	{
		auto ctx = txy(2);
		CHECK_THROWS_AS(total_derivative(sym("u_xx"), 0, *ctx), TruncationError);
	}

	TEST_CASE("flatness, linearity and Leibniz for total derivatives")
	{
		auto ctx = txy(5);
		std::vector<Symbol> vars;
		for (auto n : {"t", "x", "y", "u", "u_t", "u_x", "u_y", "u_xx", "u_ty"})
			vars.push_back(Symbol::intern(n));
		std::mt19937 rng(11);
		int cases = 0;
		for (int k = 0; k < 70; ++k)
		{
			RationalExpr a = random_polynomial(rng, vars, 4, 3);
			RationalExpr b = random_rational(rng, vars);
			for (std::size_t i = 0; i < 3; ++i)
				for (std::size_t j = i + 1; j < 3; ++j)
				{
					auto lhs = total_derivative(total_derivative(a, j, *ctx), i, *ctx);
					auto rhs = total_derivative(total_derivative(a, i, *ctx), j, *ctx);
					CHECK(is_zero(lhs - rhs));
					++cases;
				}
			auto i = static_cast<std::size_t>(k % 3);
			CHECK(is_zero(total_derivative(a * b, i, *ctx) -
			              total_derivative(a, i, *ctx) * b -
			              a * total_derivative(b, i, *ctx)));
			CHECK(is_zero(total_derivative(a + 3 * b, i, *ctx) -
			              total_derivative(a, i, *ctx) -
			              3 * total_derivative(b, i, *ctx)));
		}
		CHECK(cases >= 200);
	}
}

TEST_SUITE("equation_ideal")
{
	TEST_CASE("reduce examples")
	{
		auto ctx = txy(6);
		EquationIdeal e(ctx, Symbol::intern("u_yy"), mkhz_rhs());
		CHECK(e.reduce(sym("u_yy")).identical(mkhz_rhs()));
		CHECK(e.reduce(sym("u_x")).identical(sym("u_x")));
		auto expected = e.reduce(total_derivative(mkhz_rhs(), 1, *ctx));
		CHECK(e.reduce(sym("u_xyy")) == expected);
		CHECK_FALSE(e.reduce(sym("u_xyy")).contains(Symbol::intern("u_xyy")));
	}

	TEST_CASE("prolong examples")
	{
		auto ctx = txy(6);
		EquationIdeal khz(ctx, Symbol::intern("u_yy"), khz_rhs());
		CHECK(khz.prolong({}).identical(khz_rhs()));
		CHECK(khz.prolong(idx({1})) ==
		      sym("u_txx") + sym("u") * sym("u_xxx") + 3 * sym("u_x") * sym("u_xx"));
		EquationIdeal mkhz(ctx, Symbol::intern("u_yy"), mkhz_rhs());
		auto py = mkhz.prolong(idx({2}));
		CHECK(py == mkhz.reduce(total_derivative(mkhz_rhs(), 2, *ctx)));
		for (auto s : py.variables())
			CHECK_FALSE(mkhz.system().is_principal(s));
	}

	TEST_CASE("restricted total derivative examples")
	{
		auto ctx = txy(6);
		EquationIdeal mkhz(ctx, Symbol::intern("u_yy"), mkhz_rhs());
		CHECK(mkhz.restricted_total_derivative(sym("u_y"), 2) == mkhz_rhs());
		CHECK(mkhz.restricted_total_derivative(sym("u"), 1) == sym("u_x"));
		EquationIdeal khz(ctx, Symbol::intern("u_yy"), khz_rhs());
		CHECK(khz.restricted_total_derivative(sym("u_yy"), 0) ==
		      khz.reduce(total_derivative(sym("u") * sym("u_xx") + sym("u_tx") +
		                                      sym("u_x").pow(2),
		                                  0, *ctx)));
	}

	TEST_CASE("construction rejects rhs containing the principal")
	{
		auto ctx = txy(4);
		CHECK_THROWS_AS(EquationIdeal(ctx, Symbol::intern("u_yy"), sym("u_xyy")),
		                Error);
	}

	TEST_CASE("re-solving for another principal")
	{
		auto ctx = txy(4);
		auto e = EquationIdeal::solve_for(ctx, sym("u_yy"), mkhz_rhs(),
		                                  Symbol::intern("u_tx"));
		CHECK(e.principal().name() == "u_tx");
		CHECK(e.rhs() == sym("u_yy") - (q(1, 2) * sym("u_x").pow(2) - sym("u_y")) *
		                                   sym("u_xx"));
		CHECK_THROWS_AS(EquationIdeal::solve_for(ctx, sym("u_yy").pow(2), sym("u_tx"),
		                                         Symbol::intern("u_yy")),
		                UnsupportedError);
	}

	TEST_CASE("reduce is idempotent and kills the ideal")
	{
		auto ctx = txy(6);
		EquationIdeal e(ctx, Symbol::intern("u_yy"), mkhz_rhs());
		std::vector<Symbol> vars;
		for (auto n : {"u", "u_x", "u_y", "u_yy", "u_xyy", "u_tyy", "u_xx", "u_yyy"})
			vars.push_back(Symbol::intern(n));
		std::mt19937 rng(3);
		int cases = 0;
		for (int k = 0; k < 200; ++k)
		{
			auto a = random_rational(rng, vars);
			auto r = e.reduce(a);
			CHECK(e.reduce(r).identical(r));
			++cases;
		}
		CHECK(cases >= 200);
		CHECK(e.reduce(e.defining_expression()).is_zero());
		for (auto K : {idx({}), idx({0}), idx({1}), idx({2}), idx({1, 2}),
		               idx({0, 0}), idx({2, 2}), idx({0, 1, 2}), idx({2, 2, 2})})
			CHECK(e.reduce(iterated_total_derivative(e.defining_expression(), K,
			                                         *ctx))
			          .is_zero());
	}

	TEST_CASE("restricted total derivatives commute")
	{
		auto ctx = txy(7);
		EquationIdeal e(ctx, Symbol::intern("u_yy"), mkhz_rhs());
		std::vector<Symbol> vars;
		for (auto n : {"x", "u", "u_t", "u_x", "u_y", "u_xy", "u_xx", "u_tx"})
			vars.push_back(Symbol::intern(n));
		std::mt19937 rng(5);
		for (int k = 0; k < 30; ++k)
		{
			RationalExpr a = random_polynomial(rng, vars, 3, 2);
			for (std::size_t i = 0; i < 3; ++i)
				for (std::size_t j = i + 1; j < 3; ++j)
					CHECK(is_zero(
					    e.restricted_total_derivative(
					        e.restricted_total_derivative(a, j), i) -
					    e.restricted_total_derivative(
					        e.restricted_total_derivative(a, i), j)));
		}
	}
}
