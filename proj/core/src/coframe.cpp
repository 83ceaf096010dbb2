#include "jetcov/coframe.hpp"

#include "jetcov/error.hpp"

#include <algorithm>
#include <array>

namespace jetcov {

namespace {

Symbol param(const std::string &name) { return Symbol::intern(name); }

std::string digits(std::initializer_list<std::size_t> idx)
{
	std::string s;
	for (auto i : idx)
		s += std::to_string(i + 1);
	return s;
}

DifferentialForm dx(Symbol s) { return DifferentialForm::differential(s); }

RationalExpr sym(Symbol s) { return RationalExpr::symbol(s); }

DifferentialForm first_nonzero(const std::vector<DifferentialForm> &forms)
{
	for (const auto &f : forms)
		if (!f.is_zero())
			return f;
	return DifferentialForm::zero(forms.empty() ? 0 : forms.front().degree());
}

std::vector<DifferentialForm> basic_forms(const LiftedCoframe &cf)
{
	const auto &ctx = *cf.context;
	std::size_t n = ctx.dimension();
	std::vector<DifferentialForm> out = build_contact_forms(ctx);
	for (std::size_t k = 0; k < n; ++k)
		out.push_back(dx(ctx.independent(k)));
	for (std::size_t k = 0; k < n; ++k)
		for (std::size_t l = k; l < n; ++l)
			out.push_back(dx(
			    ctx.jet(0, MultiIndex({std::uint8_t(k), std::uint8_t(l)}))));
	return out;
}

/// every residual is already wedged with the generators
CongruenceResult congruence(std::string name,
                            std::vector<DifferentialForm> residuals)
{
	bool ok = std::all_of(residuals.begin(), residuals.end(),
	                      [](const DifferentialForm &r) { return r.is_zero(); });
	return {std::move(name), ok ? CheckStatus::pass : CheckStatus::fail,
	        first_nonzero(residuals)};
}

} // namespace

std::size_t group_dimension(std::size_t n)
{
	return (2 * n + 1) * (n + 3) * (n + 1) / 3;
}

GroupParameters GroupParameters::make(std::size_t n)
{
	if (n < 1 || n > 9)
		throw Error("coframe dimension must be between 1 and 9");
	GroupParameters h;
	h.n = n;
	h.a = param("a");
	h.b.assign(n, std::vector<Symbol>(n));
	h.f.assign(n, std::vector<Symbol>(n));
	h.s.assign(n, std::vector<Symbol>(n));
	h.w.assign(n, std::vector<std::vector<Symbol>>(n, std::vector<Symbol>(n)));
	h.z.assign(n, std::vector<std::vector<Symbol>>(n, std::vector<Symbol>(n)));
	for (std::size_t i = 0; i < n; ++i)
	{
		h.c.push_back(param("c" + digits({i})));
		h.g.push_back(param("g" + digits({i})));
		for (std::size_t k = 0; k < n; ++k)
		{
			h.b[i][k] = param("b" + digits({i, k}));
			h.f[i][k] = param("f" + digits({std::min(i, k), std::max(i, k)}));
			h.s[i][k] = param("s" + digits({std::min(i, k), std::max(i, k)}));
		}
	}
	for (std::size_t k = 0; k < n; ++k)
		for (std::size_t i = 0; i < n; ++i)
			for (std::size_t j = 0; j < n; ++j)
			{
				h.w[k][i][j] = param("w" + digits({k}) + "_" +
				                     digits({std::min(i, j), std::max(i, j)}));
				std::array<std::size_t, 3> t{k, i, j};
				std::sort(t.begin(), t.end());
				h.z[k][i][j] = param("z" + digits({t[0], t[1], t[2]}));
			}
	Matrix bm(n, std::vector<RationalExpr>(n));
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t k = 0; k < n; ++k)
			bm[i][k] = sym(h.b[i][k]);
	h.B = inverse(bm);
	return h;
}

std::vector<Symbol> GroupParameters::coordinates() const
{
	std::vector<Symbol> out{a};
	for (const auto &row : b)
		out.insert(out.end(), row.begin(), row.end());
	out.insert(out.end(), c.begin(), c.end());
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t k = i; k < n; ++k)
			out.push_back(f[i][k]);
	out.insert(out.end(), g.begin(), g.end());
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = i; j < n; ++j)
			out.push_back(s[i][j]);
	for (std::size_t k = 0; k < n; ++k)
		for (std::size_t i = 0; i < n; ++i)
			for (std::size_t j = i; j < n; ++j)
				out.push_back(w[k][i][j]);
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = i; j < n; ++j)
			for (std::size_t k = j; k < n; ++k)
				out.push_back(z[i][j][k]);
	return out;
}

std::shared_ptr<const JetContext> coframe_context(std::size_t n)
{
	std::vector<std::string> names;
	for (std::size_t i = 0; i < n; ++i)
		names.push_back("x" + std::to_string(i + 1));
	return JetContext::make(std::move(names), {"u"}, 2);
}

std::vector<DifferentialForm> build_contact_forms(const JetContext &ctx)
{
	if (ctx.max_order() < 2)
		throw Error("contact forms on J^2 need order 2");
	std::size_t n = ctx.dimension();
	auto u_at = [&](std::initializer_list<std::uint8_t> idx) {
		return ctx.jet(0, MultiIndex(std::vector<std::uint8_t>(idx)));
	};
	std::vector<DifferentialForm> out;
	DifferentialForm t0 = dx(u_at({}));
	for (std::size_t i = 0; i < n; ++i)
		t0 -= sym(u_at({std::uint8_t(i)})) * dx(ctx.independent(i));
	out.push_back(std::move(t0));
	for (std::size_t i = 0; i < n; ++i)
	{
		DifferentialForm t = dx(u_at({std::uint8_t(i)}));
		for (std::size_t j = 0; j < n; ++j)
			t -= sym(u_at({std::uint8_t(i), std::uint8_t(j)})) *
			     dx(ctx.independent(j));
		out.push_back(std::move(t));
	}
	return out;
}

std::vector<DifferentialForm> LiftedCoframe::members() const
{
	std::vector<DifferentialForm> out{theta0};
	out.insert(out.end(), theta.begin(), theta.end());
	out.insert(out.end(), xi.begin(), xi.end());
	for (std::size_t i = 0; i < sigma.size(); ++i)
		for (std::size_t j = i; j < sigma.size(); ++j)
			out.push_back(sigma[i][j]);
	return out;
}

LiftedCoframe build_lifted_coframe(std::shared_ptr<const JetContext> ctx,
                                   CoframeVariant variant)
{
	if (ctx->dependents().size() != 1)
		throw Error("the lifted coframe needs exactly one dependent variable");
	std::size_t n = ctx->dimension();
	LiftedCoframe cf;
	cf.context = ctx;
	cf.h = GroupParameters::make(n);
	const auto &h = cf.h;
	auto contact = build_contact_forms(*ctx);
	RationalExpr a = sym(h.a);

	cf.theta0 = a * contact[0];
	for (std::size_t i = 0; i < n; ++i)
	{
		DifferentialForm t = sym(h.g[i]) * cf.theta0;
		for (std::size_t k = 0; k < n; ++k)
		{
			RationalExpr coef = variant == CoframeVariant::drop_a_in_theta
			                        ? h.B[k][i]
			                        : a * h.B[k][i];
			t += coef * contact[k + 1];
		}
		cf.theta.push_back(std::move(t));
	}
	for (std::size_t i = 0; i < n; ++i)
	{
		DifferentialForm x = sym(h.c[i]) * cf.theta0;
		for (std::size_t k = 0; k < n; ++k)
		{
			x += sym(h.f[i][k]) * cf.theta[k];
			x += sym(h.b[i][k]) * dx(ctx->independent(k));
		}
		cf.xi.push_back(std::move(x));
	}
	cf.sigma.assign(n, std::vector<DifferentialForm>(n));
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = i; j < n; ++j)
		{
			DifferentialForm s = sym(h.s[i][j]) * cf.theta0;
			for (std::size_t k = 0; k < n; ++k)
			{
				s += sym(h.w[k][i][j]) * cf.theta[k];
				s += sym(h.z[i][j][k]) * cf.xi[k];
			}
			for (std::size_t k = 0; k < n; ++k)
				for (std::size_t l = 0; l < n; ++l)
				{
					Symbol ukl = ctx->jet(
					    0, MultiIndex({std::uint8_t(k), std::uint8_t(l)}));
					s += a * h.B[k][i] * h.B[l][j] * dx(ukl);
				}
			cf.sigma[i][j] = s;
			cf.sigma[j][i] = s;
		}
	return cf;
}

std::vector<CongruenceResult> check_structure_congruences(const LiftedCoframe &cf)
{
	std::size_t n = cf.theta.size();
	auto generators = cf.members();

	std::vector<DifferentialForm> volume{DifferentialForm(RationalExpr(1))};
	for (const auto &g : generators)
		volume.push_back(wedge(volume.back(), g));

	std::vector<CongruenceResult> out;

	DifferentialForm c1 = exterior_derivative(cf.theta0);
	for (std::size_t i = 0; i < n; ++i)
		c1 -= wedge(cf.xi[i], cf.theta[i]);
	out.push_back(congruence("i", {wedge(c1, volume[1])}));

	std::vector<DifferentialForm> c2;
	for (std::size_t i = 0; i < n; ++i)
	{
		const auto &vol = volume[n + 1];
		DifferentialForm f = wedge(exterior_derivative(cf.theta[i]), vol);
		for (std::size_t k = 0; k < n; ++k)
			f -= wedge(cf.xi[k], wedge(cf.sigma[i][k], vol));
		c2.push_back(std::move(f));
	}
	out.push_back(congruence("ii", std::move(c2)));

	std::vector<DifferentialForm> c3;
	for (const auto &x : cf.xi)
		c3.push_back(wedge(exterior_derivative(x), volume[2 * n + 1]));
	out.push_back(congruence("iii", std::move(c3)));

	std::vector<DifferentialForm> c4;
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = i; j < n; ++j)
			c4.push_back(wedge(exterior_derivative(cf.sigma[i][j]), volume.back()));
	out.push_back(congruence("iv", std::move(c4)));
	return out;
}

DifferentialForm
DependencyRecord::combination(const std::vector<DifferentialForm> &members,
                              std::size_t n) const
{
	DifferentialForm w = e0 * members.at(0);
	for (std::size_t i = 0; i < n; ++i)
	{
		w += e.at(i) * members.at(1 + i);
		w += f.at(i) * members.at(1 + n + i);
	}
	std::size_t k = 1 + 2 * n;
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = i; j < n; ++j)
		{
			auto it = g.find({i, j});
			if (it != g.end())
				w += it->second * members.at(k);
			++k;
		}
	return w;
}

namespace {

using Vector = std::vector<RationalExpr>;

std::vector<Symbol> covectors_of(const std::vector<DifferentialForm> &forms)
{
	std::vector<Symbol> out;
	for (const auto &w : forms)
	{
		auto c = w.covectors();
		out.insert(out.end(), c.begin(), c.end());
	}
	std::sort(out.begin(), out.end());
	out.erase(std::unique(out.begin(), out.end()), out.end());
	return out;
}

std::vector<Vector> left_kernel(const std::vector<DifferentialForm> &forms)
{
	auto covectors = covectors_of(forms);
	Matrix m(covectors.size(), Vector(forms.size()));
	for (std::size_t r = 0; r < covectors.size(); ++r)
		for (std::size_t c = 0; c < forms.size(); ++c)
			m[r][c] = forms[c].coefficient({covectors[r]});
	return nullspace(std::move(m));
}

// Gauss-Jordan with the pivot at each vector's last nonzero slot
std::vector<Vector> canonical_basis(std::vector<Vector> vs)
{
	if (vs.empty())
		return vs;
	std::size_t len = vs[0].size();
	std::vector<std::pair<std::size_t, Vector>> done;
	for (std::size_t col = len; col-- > 0 && !vs.empty();)
	{
		auto it = std::find_if(vs.begin(), vs.end(),
		                       [&](const Vector &v) { return !v[col].is_zero(); });
		if (it == vs.end())
			continue;
		Vector p = std::move(*it);
		vs.erase(it);
		RationalExpr inv = RationalExpr(1) / p[col];
		for (auto &e : p)
			e *= inv;
		auto eliminate = [&](Vector &v) {
			if (v[col].is_zero())
				return;
			RationalExpr k = v[col];
			for (std::size_t j = 0; j < len; ++j)
				if (!p[j].is_zero())
					v[j] -= k * p[j];
		};
		for (auto &v : vs)
			eliminate(v);
		for (auto &[c, v] : done)
			eliminate(v);
		done.emplace_back(col, std::move(p));
	}
	std::sort(done.begin(), done.end(),
	          [](const auto &a, const auto &b) { return a.first < b.first; });
	std::vector<Vector> out;
	for (auto &[c, v] : done)
		out.push_back(std::move(v));
	return out;
}

/**
 * Basic forms theta_0, theta_1..theta_n, dx^1..dx^n, du_kl (k <= l), each
 * written as a combination of the coframe members:
 *   theta_0 = Theta_0 / a
 *   theta_k = b^i_k (Theta_i - g_i Theta_0) / a
 *   dx^k    = B^k_i (Xi^i - c^i Theta_0 - f^ij Theta_j)
 *   du_kl   = b^i_k b^j_l (Sigma_ij - s_ij Theta_0 - w^m_ij Theta_m
 *             - z_ijm Xi^m) / a
 */
std::vector<Vector> basic_in_members(const LiftedCoframe &cf)
{
	const auto &h = cf.h;
	std::size_t n = h.n;
	std::size_t count = 1 + 2 * n + n * (n + 1) / 2;
	auto sigma_slot = [&](std::size_t i, std::size_t j) {
		if (i > j)
			std::swap(i, j);
		// rows before i hold n, n-1, ... entries
		return 1 + 2 * n + i * n - i * (i - 1) / 2 + (j - i);
	};
	RationalExpr inv_a = RationalExpr(1) / sym(h.a);
	auto unit = [&](std::size_t k) {
		Vector v(count);
		v[k] = RationalExpr(1);
		return v;
	};
	auto axpy = [](Vector &y, const RationalExpr &a, const Vector &x) {
		if (a.is_zero())
			return;
		for (std::size_t k = 0; k < y.size(); ++k)
			if (!x[k].is_zero())
				y[k] += a * x[k];
	};

	std::vector<Vector> theta_p, xi_p, out;
	for (std::size_t i = 0; i < n; ++i)
	{
		Vector v = unit(1 + i);
		v[0] -= sym(h.g[i]);
		theta_p.push_back(std::move(v));
		Vector x = unit(1 + n + i);
		x[0] -= sym(h.c[i]);
		for (std::size_t j = 0; j < n; ++j)
			x[1 + j] -= sym(h.f[i][j]);
		xi_p.push_back(std::move(x));
	}

	out.push_back(unit(0));
	out.back()[0] = inv_a;
	for (std::size_t k = 0; k < n; ++k)
	{
		Vector v(count);
		for (std::size_t i = 0; i < n; ++i)
			axpy(v, sym(h.b[i][k]) * inv_a, theta_p[i]);
		out.push_back(std::move(v));
	}
	for (std::size_t k = 0; k < n; ++k)
	{
		Vector v(count);
		for (std::size_t i = 0; i < n; ++i)
			axpy(v, h.B[k][i], xi_p[i]);
		out.push_back(std::move(v));
	}
	for (std::size_t k = 0; k < n; ++k)
		for (std::size_t l = k; l < n; ++l)
		{
			Vector v(count);
			for (std::size_t i = 0; i < n; ++i)
				for (std::size_t j = 0; j < n; ++j)
				{
					Vector sp = unit(sigma_slot(i, j));
					sp[0] -= sym(h.s[i][j]);
					for (std::size_t m = 0; m < n; ++m)
					{
						sp[1 + m] -= sym(h.w[m][i][j]);
						sp[1 + n + m] -= sym(h.z[i][j][m]);
					}
					axpy(v, sym(h.b[i][k]) * sym(h.b[j][l]) * inv_a, sp);
				}
			out.push_back(std::move(v));
		}
	return out;
}

} // namespace

std::vector<DependencyRecord> find_dependencies(const LiftedCoframe &cf,
                                                const EquationIdeal *equation,
                                                DependencyMethod method)
{
	if (equation && &equation->context() != cf.context.get())
		throw Error("the equation and the coframe live in different contexts");
	std::size_t n = cf.theta.size();
	auto restrict_all = [&](std::vector<DifferentialForm> forms) {
		if (equation)
			for (auto &w : forms)
				w = pullback_on_equation(w, *equation);
		return forms;
	};

	std::vector<Vector> kernel;
	if (method == DependencyMethod::direct)
		kernel = left_kernel(restrict_all(cf.members()));
	else
	{
		auto in_members = basic_in_members(cf);
		for (const auto &mu : left_kernel(restrict_all(basic_forms(cf))))
		{
			Vector lambda(in_members[0].size());
			for (std::size_t b = 0; b < mu.size(); ++b)
				if (!mu[b].is_zero())
					for (std::size_t k = 0; k < lambda.size(); ++k)
						if (!in_members[b][k].is_zero())
							lambda[k] += mu[b] * in_members[b][k];
			kernel.push_back(std::move(lambda));
		}
	}

	std::vector<DependencyRecord> out;
	for (auto &v : canonical_basis(std::move(kernel)))
	{
		DependencyRecord d;
		d.e0 = v[0];
		for (std::size_t i = 0; i < n; ++i)
		{
			d.e.push_back(v[1 + i]);
			d.f.push_back(v[1 + n + i]);
		}
		std::size_t k = 1 + 2 * n;
		for (std::size_t i = 0; i < n; ++i)
			for (std::size_t j = i; j < n; ++j, ++k)
				if (!v[k].is_zero())
					d.g[{i, j}] = v[k];
		out.push_back(std::move(d));
	}
	return out;
}

MkhzForms mkhz_invariant_forms()
{
	MkhzForms m;
	m.context = JetContext::make({"t", "x", "y"}, {"u", "v"}, 7);
	m.q = Symbol::intern("q");
	auto j = [&](const char *name) { return sym(Symbol::intern(name)); };
	auto d = [&](const char *name) { return dx(Symbol::intern(name)); };
	RationalExpr q = sym(m.q), uxx = j("u_xx"), ux = j("u_x"), uy = j("u_y");
	RationalExpr half(Rational(1, 2));
	m.xi1 = q * d("t");
	m.xi2 = uxx.pow(2) / q * (d("x") + ux * d("y") + (half * ux * ux + uy) * d("t"));
	m.xi3 = uxx * (2 * ux * d("t") + d("y"));
	m.eta1 = 3 / uxx * d("u_xx") - 2 / q * dx(m.q) - half * uxx * d("y") -
	         ux * uxx * d("t");
	return m;
}

LinearCombinationReport mkhz_linear_combination_check()
{
	LinearCombinationReport r;
	MkhzForms m = mkhz_invariant_forms();
	const auto &ctx = *m.context;
	auto j = [&](const char *name) { return sym(Symbol::intern(name)); };
	auto d = [&](const char *name) { return dx(Symbol::intern(name)); };
	RationalExpr v = j("v"), v1 = j("v_x"), ux = j("u_x"), uy = j("u_y");
	RationalExpr half(Rational(1, 2));

	SubstitutionMap rules{{Symbol::intern("u_xx"), v * v * v1 * v1},
	                      {m.q, RationalExpr(Rational(1, 4)) * v.pow(5) * v1.pow(3)}};
	DifferentialForm combo = m.eta1 + m.xi2 + half * m.xi3;
	r.combination = pullback(combo, rules);
	r.expected = -4 / v *
	             (d("v") - (half * ux * ux + uy) * v1 * d("t") - v1 * d("x") -
	              ux * v1 * d("y"));
	r.difference = r.combination - r.expected;

	RationalExpr uxx = j("u_xx");
	DifferentialForm literal =
	    m.eta1 +
	    half * uxx * uxx * (d("x") + ux * d("y") + (half * ux * ux + uy) * d("t")) +
	    half * m.xi3;
	r.literal_difference = pullback(literal, rules) - r.expected;
	r.note = "the bracket (dx + u_x*dy + (1/2*u_x^2 + u_y)*dt) carries the xi2 "
	         "coefficient u_xx^2/q; reading it as 1/2*u_xx^2 leaves a nonzero "
	         "difference";
	if (!r.difference.is_zero())
		r.status = CheckStatus::fail;

	// read the covering off dv - T_t dt - T_x dx - T_y dy
	RationalExpr lead = r.combination.coefficient({Symbol::intern("v")});
	if (lead.is_zero())
	{
		r.status = CheckStatus::fail;
		return r;
	}
	DifferentialForm normalized = (RationalExpr(1) / lead) * r.combination;
	FiberDeclaration fiber{Symbol::intern("v"), 1, {}};
	DifferentialForm rebuilt = d("v");
	for (std::size_t i = 0; i < ctx.dimension(); ++i)
	{
		RationalExpr t = -normalized.coefficient({ctx.independent(i)});
		fiber.transport[i] = t;
		rebuilt -= t * dx(ctx.independent(i));
	}
	r.covering = fiber;
	if (!(rebuilt == normalized) || fiber.transport[1] != v1)
	{
		r.status = CheckStatus::fail;
		return r;
	}

	RationalExpr rhs = j("u_tx") + (half * ux * ux - uy) * uxx;
	Covering cov(EquationIdeal(m.context, Symbol::intern("u_yy"), rhs), {fiber}, 3);
	r.flatness = flatness_check(cov, 3);
	r.status = combine(r.status, r.flatness.status);
	return r;
}

} // namespace jetcov
