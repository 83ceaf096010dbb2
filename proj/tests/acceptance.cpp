#include "random.hpp"

#include "jetcov/cli/catalog.hpp"
#include "jetcov/cli/driver.hpp"
#include "jetcov/coframe.hpp"
#include "jetcov/error.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>

using namespace jetcov;
using namespace jetcov::cli;
using namespace jetcov::testing;

namespace {

struct Outcome {
	bool pass;
	std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
	return std::chrono::duration<double>(Clock::now() - start).count();
}

ProblemModel builtin(const std::string &name, ProblemFile *file = nullptr)
{
	auto p = parse_problem(load_problem_text("builtin:" + name));
	if (file)
		*file = p;
	return build_model(p, flatness_order(p));
}

RationalExpr value(const std::string &text, const ProblemModel &m)
{
	return evaluate(parse_expression(text, m.scope), m.scope, *m.context);
}

std::size_t dir(const ProblemModel &m, const char *letter)
{
	return *m.context->independent_index(Symbol::intern(letter));
}

bool all_zero(const FlatnessReport &r)
{
	for (const auto &e : r.residuals)
		if (!e.residual.is_zero())
			return false;
	return r.status == CheckStatus::pass && !r.residuals.empty();
}

Outcome khz_covering()
{
	auto m = builtin("khz");
	auto r = flatness_check(*m.covering, 3);
	auto t = dir(m, "t"), y = dir(m, "y");
	auto unreduced =
	    m.covering->unreduced_commutator(y, t, Symbol::intern("v"));
	bool proportional =
	    unreduced == -m.covering->base().defining_expression();
	return {all_zero(r) && proportional,
	        std::to_string(r.residuals.size()) +
	            " residuals zero at K=3; unreduced [D~y,D~t]v = -(u_yy - rhs)"};
}

Outcome mkhz_covering()
{
	auto m = builtin("mkhz");
	auto r = flatness_check(*m.covering, 3);
	auto unreduced = m.covering->unreduced_commutator(dir(m, "y"), dir(m, "t"),
	                                                  Symbol::intern("v"));
	auto expected =
	    value("(u_yy - u_tx - (1/2*u_x^2 - u_y)*u_xx)*v_x", m);
	return {all_zero(r) && unreduced == expected,
	        std::to_string(r.residuals.size()) +
	            " residuals zero at K=3; unreduced [D~y,D~t]v = "
	            "(u_yy - u_tx - (1/2*u_x^2 - u_y)*u_xx)*v_x"};
}

Outcome linear_combination()
{
	auto lc = mkhz_linear_combination_check();
	bool ok = lc.status == CheckStatus::pass && lc.difference.is_zero() &&
	          lc.combination == lc.expected;
	return {ok, "eta1 + xi2 + xi3/2 = " + to_string(lc.expected)};
}

Outcome backlund()
{
	auto khz = builtin("khz");
	auto forward = verify_backlund(khz.backlund.at(0));
	bool forward_ok = forward.status == CheckStatus::pass;
	for (const auto &c : forward.conditions)
		forward_ok = forward_ok && c.residual.is_zero();

	auto eq9 = builtin("eq9");
	auto back = verify_backlund(eq9.backlund.at(0));
	const auto &c = back.conditions.at(0);
	auto expected =
	    value("(v_yy - v_tx - (v_y^2 - v_t*v_x)/v_x^2*v_xx)/v_x", eq9);
	bool back_ok = back.status == CheckStatus::pass && c.condition == expected;
	return {forward_ok && back_ok,
	        "khz-to-mkhz zero residue; compatibility of the mkhz covering is "
	        "eq9 times 1/v_x"};
}

std::string display(const ProblemModel &m, const std::string &dt,
                    const std::string &dx, const std::string &dy)
{
	auto coeff = [&](const std::string &e) { return value(e, m); };
	auto dd = [](const char *n) {
		return DifferentialForm::differential(Symbol::intern(n));
	};
	return to_string(dd("v") - coeff(dt) * dd("t") - coeff(dx) * dd("x") -
	                 coeff(dy) * dd("y"));
}

Outcome we_forms_and_control()
{
	auto khz = builtin("khz");
	auto mkhz = builtin("mkhz");
	auto broken = builtin("mkhz-broken");
	bool tokens =
	    to_string(we_forms(*khz.covering, 0).at(0).form) ==
	        display(khz, "(v^2 - u)*v_x - u_y - v*u_x", "v_x", "v*v_x - u_x") &&
	    to_string(we_forms(*mkhz.covering, 0).at(0).form) ==
	        display(mkhz, "(1/2*u_x^2 + u_y)*v_x", "v_x", "u_x*v_x");
	bool closed = true;
	for (unsigned k = 0; k <= 2; ++k)
		closed = closed &&
		         we_closure_check(*khz.covering, k).status == CheckStatus::pass &&
		         we_closure_check(*mkhz.covering, k).status == CheckStatus::pass;
	bool control = true;
	for (unsigned k = 0; k <= 2; ++k)
		control = control &&
		          flatness_check(*broken.covering, k + 1).status == CheckStatus::fail &&
		          we_closure_check(*broken.covering, k).status == CheckStatus::fail;
	return {tokens && closed && control,
	        "displays match; closure for k <= 2; mkhz-broken fails flatness and "
	        "closure at every k <= 2"};
}

Outcome coframe()
{
	std::ostringstream detail;
	bool ok = true;
	for (std::size_t n = 1; n <= 3; ++n)
	{
		auto start = Clock::now();
		auto cf = build_lifted_coframe(coframe_context(n));
		bool dim = cf.h.coordinates().size() == group_dimension(n) &&
		           group_dimension(n) == std::size_t{n == 1 ? 8u : n == 2 ? 25u : 56u};
		bool pass = true;
		for (const auto &c : check_structure_congruences(cf))
			pass = pass && c.status == CheckStatus::pass && c.residual.is_zero();
		double s = seconds_since(start);
		if (n == 3 && s > 120)
			pass = false;
		ok = ok && dim && pass;
		char buf[64];
		std::snprintf(buf, sizeof buf, "%.1f", s);
		detail << (n > 1 ? "; " : "") << "n=" << n << " dim "
		       << group_dimension(n) << " " << (pass ? "4 PASS" : "FAIL") << " in "
		       << buf << " s";
	}
	return {ok, detail.str()};
}

Outcome properties()
{
	std::mt19937 rng(20261017);
	std::size_t ring = 0, d2 = 0, idem = 0, commute = 0, corpus = 0;
	bool ok = true;

	std::vector<Symbol> vars;
	for (auto n : {"p_a", "p_b", "p_c", "p_d"})
		vars.push_back(Symbol::intern(n));
	for (; ring < 500; ++ring)
	{
		auto a = random_rational(rng, vars), b = random_rational(rng, vars),
		     c = random_rational(rng, vars);
		ok = ok && is_zero((a + b) + c - (a + (b + c))) &&
		     is_zero((a * b) * c - a * (b * c)) && is_zero(a * b - b * a) &&
		     is_zero(a * (b + c) - (a * b + a * c)) && is_zero(a + (-a));
	}

	std::uniform_int_distribution<std::size_t> pick(0, vars.size() - 1);
	for (; d2 < 200; ++d2)
	{
		unsigned p = static_cast<unsigned>(d2 % 4);
		DifferentialForm w = DifferentialForm::zero(p);
		for (int t = 0; t < 3; ++t)
		{
			std::vector<Symbol> covs;
			for (unsigned k = 0; k < p; ++k)
				covs.push_back(vars[pick(rng)]);
			w += DifferentialForm::term(random_rational(rng, vars), covs);
		}
		ok = ok && exterior_derivative(exterior_derivative(w)).is_zero();
	}

	auto mkhz = builtin("mkhz");
	const auto &eq = *mkhz.equation;
	std::vector<Symbol> jets;
	for (auto n : {"u", "u_x", "u_y", "u_yy", "u_xyy", "u_tyy", "u_xx", "v_x"})
		jets.push_back(Symbol::intern(n));
	for (; idem < 200; ++idem)
	{
		auto r = eq.reduce(random_rational(rng, jets));
		ok = ok && eq.reduce(r).identical(r);
	}

	auto ctx = JetContext::make({"t", "x", "y"}, {"u"}, 5);
	std::vector<Symbol> low;
	for (auto n : {"x", "u", "u_t", "u_x", "u_y", "u_xy", "u_tt", "u_xxy"})
		low.push_back(Symbol::intern(n));
	for (; commute < 200; ++commute)
	{
		auto a = random_rational(rng, low);
		for (std::size_t i = 0; i < 3; ++i)
			for (std::size_t j = i + 1; j < 3; ++j)
				ok = ok && is_zero(total_derivative(total_derivative(a, j, *ctx), i, *ctx) -
				                   total_derivative(total_derivative(a, i, *ctx), j, *ctx));
	}

	for (const auto &entry : catalog())
	{
		auto p = parse_problem(entry.text);
		ok = ok && parse_problem(to_string(p)) == p;
		++corpus;
	}
	return {ok, "ring axioms " + std::to_string(ring) + ", d^2 " +
	                std::to_string(d2) + ", reduce idempotence " +
	                std::to_string(idem) + ", [D_i,D_j] " + std::to_string(commute) +
	                ", corpus round-trip " + std::to_string(corpus)};
}

Outcome demos()
{
	std::ostringstream a, b, err;
	int first = run({"paper-demos"}, a, err);
	int second = run({"paper-demos"}, b, err);
	return {first == 0 && second == 0 && a.str() == b.str(),
	        "exit " + std::to_string(first) + ", " +
	            std::to_string(a.str().size()) + " bytes identical across runs"};
}

} // namespace

int main()
{
	struct Criterion {
		const char *title;
		std::function<Outcome()> check;
		double limit;
	};
	std::vector<Criterion> criteria = {
	    {"KhZ covering flatness", khz_covering, 5},
	    {"mKhZ covering flatness and commutator", mkhz_covering, 5},
	    {"mKhZ linear combination", linear_combination, 1},
	    {"Baecklund transformations", backlund, 4},
	    {"WE forms, closure and negative control", we_forms_and_control, 0},
	    {"lifted coframe congruences", coframe, 0},
	    {"property suites", properties, 0},
	    {"paper-demos determinism", demos, 0},
	};
	int failed = 0;
	for (std::size_t k = 0; k < criteria.size(); ++k)
	{
		auto start = Clock::now();
		Outcome o;
		try
		{
			o = criteria[k].check();
		}
		catch (const std::exception &e)
		{
			o = {false, std::string("exception: ") + e.what()};
		}
		double s = seconds_since(start);
		if (criteria[k].limit > 0 && s > criteria[k].limit)
		{
			o.pass = false;
			o.detail += "; over the time limit";
		}
		failed += o.pass ? 0 : 1;
		std::printf("CRITERION %zu %s %s: %s (%.2f s)\n", k + 1,
		            o.pass ? "PASS" : "FAIL", criteria[k].title, o.detail.c_str(), s);
	}
	std::printf("ACCEPTANCE %zu criteria: %zu PASS, %d FAIL\n", criteria.size(),
	            criteria.size() - static_cast<std::size_t>(failed), failed);
	return failed == 0 ? 0 : 1;
}
