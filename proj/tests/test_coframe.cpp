#include "support.hpp"

#include "jetcov/coframe.hpp"
#include "jetcov/error.hpp"

#include <doctest.h>
#include <random>

using namespace jetcov;
using namespace jetcov::testing;

namespace {

DifferentialForm dd(const char *name)
{
	return DifferentialForm::differential(Symbol::intern(name));
}

RationalExpr S(Symbol s) { return RationalExpr::symbol(s); }

/// every group parameter mapped to a small random rational; a = 1 and b = I
/// when `unit` is set
SubstitutionMap specialize(const GroupParameters &h, std::mt19937 &rng,
                           bool unit)
{
	std::uniform_int_distribution<int> num(-6, 6), den(1, 4);
	SubstitutionMap out;
	for (auto s : h.coordinates())
		out[s] = RationalExpr(Rational(num(rng), den(rng)));
	if (unit)
	{
		out[h.a] = RationalExpr(1);
		for (std::size_t i = 0; i < h.n; ++i)
			for (std::size_t k = 0; k < h.n; ++k)
				out[h.b[i][k]] = RationalExpr(i == k ? 1 : 0);
	}
	return out;
}

DifferentialForm substitute_form(const DifferentialForm &w,
                                 const SubstitutionMap &rules)
{
	return w.map_coefficients(
	    [&](const RationalExpr &c) { return substitute(c, rules); });
}

std::shared_ptr<const JetContext> txy(unsigned order = 2)
{
	return JetContext::make({"t", "x", "y"}, {"u"}, order);
}

EquationIdeal mkhz_equation(std::shared_ptr<const JetContext> ctx)
{
	auto ux = sym("u_x");
	return EquationIdeal(ctx, Symbol::intern("u_yy"),
	                     sym("u_tx") + (q(1, 2) * ux * ux - sym("u_y")) * sym("u_xx"));
}

} // namespace

TEST_SUITE("coframe")
{
	TEST_CASE("group dimension and the inverse of b")
	{
		CHECK(group_dimension(1) == 8);
		CHECK(group_dimension(2) == 25);
		CHECK(group_dimension(3) == 56);
		for (std::size_t n = 1; n <= 3; ++n)
		{
			auto h = GroupParameters::make(n);
			CHECK(h.coordinates().size() == group_dimension(n));
			Matrix b(n, std::vector<RationalExpr>(n));
			for (std::size_t i = 0; i < n; ++i)
				for (std::size_t k = 0; k < n; ++k)
					b[i][k] = S(h.b[i][k]);
			auto prod = multiply(h.B, b);
			for (std::size_t i = 0; i < n; ++i)
				for (std::size_t k = 0; k < n; ++k)
					CHECK(prod[i][k] == RationalExpr(i == k ? 1 : 0));
			for (std::size_t i = 0; i < n; ++i)
				for (std::size_t k = 0; k < n; ++k)
				{
					CHECK(h.f[i][k] == h.f[k][i]);
					CHECK(h.s[i][k] == h.s[k][i]);
					for (std::size_t l = 0; l < n; ++l)
					{
						CHECK(h.w[l][i][k] == h.w[l][k][i]);
						CHECK(h.z[i][k][l] == h.z[k][l][i]);
						CHECK(h.z[i][k][l] == h.z[l][i][k]);
					}
				}
		}
		CHECK_THROWS_AS(GroupParameters::make(0), Error);
	}

	TEST_CASE("parameter names")
	{
		std::vector<std::string> names;
		for (auto s : GroupParameters::make(1).coordinates())
			names.push_back(s.name());
		CHECK(names == std::vector<std::string>{"a", "b11", "c1", "f11", "g1",
		                                        "s11", "w1_11", "z111"});
	}

	TEST_CASE("contact forms")
	{
		auto c1 = build_contact_forms(*coframe_context(1));
		REQUIRE(c1.size() == 2);
		CHECK(to_string(c1[0]) == "du - u_1*dx1");
		auto c2 = build_contact_forms(*coframe_context(2));
		REQUIRE(c2.size() == 3);
		CHECK(to_string(c2[2]) == "du_2 - u_12*dx1 - u_22*dx2");

		auto mixed = build_contact_forms(*txy());
		CHECK(to_string(mixed[0]) == "-u_t*dt + du - u_x*dx - u_y*dy");
	}

	TEST_CASE("2-jets of polynomial sections annihilate the contact forms")
	{
		std::mt19937 rng(7);
		for (std::size_t n = 1; n <= 3; ++n)
		{
			auto ctx = coframe_context(n);
			auto forms = build_contact_forms(*ctx);
			for (int trial = 0; trial < 40; ++trial)
			{
				RationalExpr f =
				    random_polynomial(rng, ctx->independents(), 6, 3);
				SubstitutionMap jet;
				for (auto s : ctx->jets_up_to(0, 2))
				{
					auto c = ctx->classify(s);
					RationalExpr value = f;
					for (auto i : c->index.positions())
						value = partial_derivative(value, ctx->independent(i));
					jet[s] = value;
				}
				for (const auto &w : forms)
					CHECK(pullback(w, jet).is_zero());
			}
		}
	}

	TEST_CASE("lifted coframe for one independent variable")
	{
		auto ctx = coframe_context(1);
		auto cf = build_lifted_coframe(ctx);
		const auto &h = cf.h;
		auto contact = build_contact_forms(*ctx);
		RationalExpr a = S(h.a);
		RationalExpr B = RationalExpr(1) / S(h.b[0][0]);
		CHECK(cf.theta0 == a * contact[0]);
		CHECK(cf.theta[0] == S(h.g[0]) * cf.theta0 + a * B * contact[1]);
		CHECK(cf.xi[0] == S(h.c[0]) * cf.theta0 + S(h.f[0][0]) * cf.theta[0] +
		                      S(h.b[0][0]) * dd("x1"));
		CHECK(cf.sigma[0][0] == S(h.s[0][0]) * cf.theta0 +
		                            S(h.w[0][0][0]) * cf.theta[0] +
		                            S(h.z[0][0][0]) * cf.xi[0] +
		                            a * B * B * dd("u_11"));
		CHECK(to_string(cf.theta0) == "a*du - a*u_1*dx1");
	}

	TEST_CASE("Sigma is symmetric and the members form a coframe")
	{
		std::mt19937 rng(11);
		for (std::size_t n = 1; n <= 3; ++n)
		{
			auto cf = build_lifted_coframe(coframe_context(n));
			for (std::size_t i = 0; i < n; ++i)
				for (std::size_t j = 0; j < n; ++j)
					CHECK(cf.sigma[i][j] == cf.sigma[j][i]);
			auto rules = specialize(cf.h, rng, true);
			auto members = cf.members();
			CHECK(members.size() == 1 + 2 * n + n * (n + 1) / 2);
			for (auto &m : members)
				m = substitute_form(m, rules);
			CHECK_FALSE(wedge(members).is_zero());
		}
	}

	TEST_CASE("structure congruences hold for n = 1 and n = 2")
	{
		for (std::size_t n = 1; n <= 2; ++n)
		{
			auto r = check_structure_congruences(
			    build_lifted_coframe(coframe_context(n)));
			REQUIRE(r.size() == 4);
			std::vector<std::string> names;
			for (const auto &c : r)
			{
				names.push_back(c.name);
				CHECK(c.status == CheckStatus::pass);
				CHECK(c.residual.is_zero());
			}
			CHECK(names == std::vector<std::string>{"i", "ii", "iii", "iv"});
		}
	}

	TEST_CASE("dropping a in Theta_i breaks congruence (ii)")
	{
		for (std::size_t n = 1; n <= 2; ++n)
		{
			auto r = check_structure_congruences(build_lifted_coframe(
			    coframe_context(n), CoframeVariant::drop_a_in_theta));
			CHECK(r[1].status == CheckStatus::fail);
			CHECK_FALSE(r[1].residual.is_zero());
			CHECK(r[2].status == CheckStatus::pass);
			CHECK(r[3].status == CheckStatus::pass);
		}
	}

	TEST_CASE("no dependencies without an equation")
	{
		for (std::size_t n = 1; n <= 2; ++n)
		{
			auto cf = build_lifted_coframe(coframe_context(n));
			CHECK(find_dependencies(cf, nullptr).empty());
			CHECK(find_dependencies(cf, nullptr, DependencyMethod::direct).empty());
		}
	}

	TEST_CASE("both elimination routes give the same records")
	{
		auto ctx = coframe_context(2);
		auto cf = build_lifted_coframe(ctx);
		EquationIdeal e(ctx, Symbol::intern("u_22"),
		                sym("u_11") * sym("u_1") + sym("u_12"));
		auto a = find_dependencies(cf, &e);
		auto b = find_dependencies(cf, &e, DependencyMethod::direct);
		REQUIRE(a.size() == 1);
		REQUIRE(b.size() == 1);
		CHECK(a[0].e0 == b[0].e0);
		for (std::size_t i = 0; i < 2; ++i)
		{
			CHECK(a[0].e[i] == b[0].e[i]);
			CHECK(a[0].f[i] == b[0].f[i]);
		}
		REQUIRE(a[0].g.size() == b[0].g.size());
		for (const auto &[k, g] : a[0].g)
			CHECK(g == b[0].g.at(k));

		auto members = cf.members();
		for (auto &m : members)
			m = pullback_on_equation(m, e);
		CHECK(a[0].combination(members, 2).is_zero());
	}

	TEST_CASE("the mKhZ restriction has one dependency")
	{
		auto ctx = txy();
		auto cf = build_lifted_coframe(ctx);
		auto e = mkhz_equation(ctx);
		auto deps = find_dependencies(cf, &e);
		REQUIRE(deps.size() == 1);
		const auto &rec = deps[0];
		CHECK(rec.g.at({2, 2}) == RationalExpr(1));

		const auto &h = cf.h;
		auto b = [&](std::size_t i, std::size_t k) { return S(h.b[i][k]); };
		RationalExpr p = q(1, 2) * sym("u_x") * sym("u_x") - sym("u_y");
		auto row = [&](std::size_t i) {
			return RationalExpr(2) * p * b(i, 1) * b(i, 1) +
			       RationalExpr(2) * b(i, 0) * b(i, 1) -
			       RationalExpr(2) * b(i, 2) * b(i, 2);
		};
		RationalExpr g00 = row(0) / row(2);
		CHECK(rec.g.at({0, 0}) == g00);

		std::mt19937 rng(3);
		auto members = cf.members();
		for (auto &m : members)
			m = pullback_on_equation(m, e);
		for (int trial = 0; trial < 3; ++trial)
		{
			SubstitutionMap rules;
			DifferentialForm combo;
			for (;;)
			{
				rules = specialize(h, rng, false);
				try
				{
					DependencyRecord r;
					auto sub = [&](const RationalExpr &c) {
						return substitute(c, rules);
					};
					r.e0 = sub(rec.e0);
					for (std::size_t i = 0; i < 3; ++i)
					{
						r.e.push_back(sub(rec.e[i]));
						r.f.push_back(sub(rec.f[i]));
					}
					for (const auto &[k, g] : rec.g)
						r.g[k] = sub(g);
					std::vector<DifferentialForm> special;
					for (const auto &m : members)
						special.push_back(substitute_form(m, rules));
					combo = r.combination(special, 3);
					break;
				}
				catch (const SubstitutionError &)
				{
				}
			}
			CHECK(combo.is_zero());
		}
	}

	TEST_CASE("the trivial equation gives a pure parameter dependency")
	{
		auto ctx = txy();
		auto cf = build_lifted_coframe(ctx);
		EquationIdeal e(ctx, Symbol::intern("u_yy"), RationalExpr());
		auto deps = find_dependencies(cf, &e);
		REQUIRE(deps.size() == 1);
		const auto &h = cf.h;
		auto b = [&](std::size_t i, std::size_t k) { return S(h.b[i][k]); };
		CHECK(deps[0].g.at({2, 2}) == RationalExpr(1));
		CHECK(deps[0].g.at({0, 0}) == b(0, 2) * b(0, 2) / (b(2, 2) * b(2, 2)));
		CHECK(deps[0].g.at({1, 2}) == RationalExpr(2) * b(1, 2) / b(2, 2));
		for (const auto &[k, g] : deps[0].g)
			for (auto s : g.variables())
				CHECK_FALSE(ctx->classify(s).has_value());
	}

	TEST_CASE("mKhZ invariant forms")
	{
		auto m = mkhz_invariant_forms();
		CHECK(to_string(m.xi1) == "q*dt");
		CHECK(m.xi3.coefficient({Symbol::intern("u_y")}).is_zero());
		CHECK(m.xi3.coefficient({Symbol::intern("y")}) == sym("u_xx"));
		CHECK(m.eta1.coefficient({m.q}) == q(-2) / sym("q"));
		CHECK(m.eta1.coefficient({Symbol::intern("u_xx")}) == q(3) / sym("u_xx"));
		CHECK(m.xi2.coefficient({Symbol::intern("x")}) ==
		      sym("u_xx") * sym("u_xx") / sym("q"));
	}

	TEST_CASE("mKhZ linear combination")
	{
		auto r = mkhz_linear_combination_check();
		CHECK(r.status == CheckStatus::pass);
		CHECK(r.difference.is_zero());
		CHECK(r.combination == r.expected);
		CHECK(r.combination.coefficient({Symbol::intern("v_x")}).is_zero());
		CHECK(r.combination.coefficient({Symbol::intern("x")}) ==
		      q(4) * sym("v_x") / sym("v"));
		CHECK(r.combination.coefficient({Symbol::intern("v")}) == q(-4) / sym("v"));
		CHECK_FALSE(r.literal_difference.is_zero());
		CHECK_FALSE(r.note.empty());

		CHECK(r.covering.name.name() == "v");
		CHECK(r.covering.transport.at(0) ==
		      (q(1, 2) * sym("u_x") * sym("u_x") + sym("u_y")) * sym("v_x"));
		CHECK(r.covering.transport.at(2) == sym("u_x") * sym("v_x"));
		CHECK(r.flatness.status == CheckStatus::pass);
	}
}
