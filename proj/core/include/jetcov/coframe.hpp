#pragma once

#include "jetcov/covering.hpp"
#include "jetcov/linalg.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace jetcov {

/// (2n+1)(n+3)(n+1)/3
std::size_t group_dimension(std::size_t n);

/**
 * Coordinates (a, b^i_k, c^i, f^{ik}, g_i, s_ij, w^k_ij, z_ijk) of the
 * parameter space H, 0-based indices. Symmetric entries share one symbol:
 * f[i][k] == f[k][i], s and w in the lower pair, z in all three. B is the
 * inverse of b in the sense sum_k B[i][k] b[k][l] = delta.
 */
struct GroupParameters {
	std::size_t n = 0;
	Symbol a;
	std::vector<std::vector<Symbol>> b;
	std::vector<Symbol> c;
	std::vector<std::vector<Symbol>> f;
	std::vector<Symbol> g;
	std::vector<std::vector<Symbol>> s;
	/// w[k][i][j] = w^k_ij
	std::vector<std::vector<std::vector<Symbol>>> w;
	std::vector<std::vector<std::vector<Symbol>>> z;
	Matrix B;

	static GroupParameters make(std::size_t n);
	/// distinct coordinates in declaration order
	std::vector<Symbol> coordinates() const;
};

/// x1..xn with dependent u on J^2
std::shared_ptr<const JetContext> coframe_context(std::size_t n);

/// theta_0 = du - u_i dx^i, theta_i = du_i - u_ij dx^j
std::vector<DifferentialForm> build_contact_forms(const JetContext &ctx);

enum class CoframeVariant {
	standard,
	/// Theta_i uses B instead of a*B; a negative control
	drop_a_in_theta
};

struct LiftedCoframe {
	std::shared_ptr<const JetContext> context;
	GroupParameters h;
	DifferentialForm theta0;
	std::vector<DifferentialForm> theta;
	std::vector<DifferentialForm> xi;
	/// sigma[i][j] and sigma[j][i] are the same form
	std::vector<std::vector<DifferentialForm>> sigma;

	/// Theta_0, Theta_i, Xi^i, Sigma_ij (i <= j)
	std::vector<DifferentialForm> members() const;
};

/**
 * Theta_0 = a theta_0, Theta_i = g_i Theta_0 + a B^k_i theta_k,
 * Xi^i = c^i Theta_0 + f^ik Theta_k + b^i_k dx^k,
 * Sigma_ij = s_ij Theta_0 + w^k_ij Theta_k + z_ijk Xi^k + a B^k_i B^l_j du_kl,
 * with B^k_i = B[k][i]. The context needs exactly one dependent variable
 * and order at least 2.
 */
LiftedCoframe build_lifted_coframe(std::shared_ptr<const JetContext> ctx,
                                   CoframeVariant variant = CoframeVariant::standard);

struct CongruenceResult {
	std::string name;
	CheckStatus status;
	/// first nonzero residual, or zero
	DifferentialForm residual;
};

/**
 * (i)   (dTheta_0 - Xi^i ^ Theta_i) ^ Theta_0
 * (ii)  (dTheta_i - Xi^k ^ Sigma_ik) ^ Theta_0 ^ ... ^ Theta_n, every i
 * (iii) dXi^i ^ Theta_0 ^ ... ^ Theta_n ^ Xi^1 ^ ... ^ Xi^n, every i
 * (iv)  dSigma_ij ^ (all Theta, Xi, Sigma), every i <= j
 * These are annihilation tests: necessary conditions for the 2-form
 * congruences, see annihilation_check. The generators are wedged together
 * first and each left side meets the product once.
 */
std::vector<CongruenceResult> check_structure_congruences(const LiftedCoframe &cf);

/// E^0 theta_0 + E^i theta_i + F_i xi^i + G^ij sigma_ij = 0, i <= j
struct DependencyRecord {
	RationalExpr e0;
	std::vector<RationalExpr> e;
	std::vector<RationalExpr> f;
	std::map<std::pair<std::size_t, std::size_t>, RationalExpr> g;

	/// the combination, which must be the zero form
	DifferentialForm combination(const std::vector<DifferentialForm> &members,
	                             std::size_t n) const;
};

enum class DependencyMethod {
	/// eliminate on the restricted basic forms theta_0, theta_i, dx^i, du_kl
	/// and map the kernel back through the inverse of the coframe's
	/// triangular change of basis
	adapted,
	/// eliminate on the restricted coframe members themselves
	direct
};

/**
 * Linear dependencies of the coframe restricted to an equation (or of the
 * coframe itself when `equation` is null) over the field of rational
 * functions on E x H: a basis of the left kernel of the coefficient matrix.
 * The basis is normalized so each vector has a 1 in its own last nonzero
 * slot and 0 in the corresponding slot of the others; both methods give
 * identical records.
 */
std::vector<DependencyRecord>
find_dependencies(const LiftedCoframe &cf, const EquationIdeal *equation,
                  DependencyMethod method = DependencyMethod::adapted);

/// forms over (t, x, y; u, v) with q = b^1_1
struct MkhzForms {
	std::shared_ptr<const JetContext> context;
	Symbol q;
	DifferentialForm xi1, xi2, xi3, eta1;
};

/// context order 7 leaves room for a flatness check of the emitted covering
MkhzForms mkhz_invariant_forms();

struct LinearCombinationReport {
	CheckStatus status = CheckStatus::pass;
	/// eta1 + xi2 + xi3/2 after u_xx = v^2 v_1^2, q = v^5 v_1^3/4
	DifferentialForm combination;
	DifferentialForm expected;
	DifferentialForm difference;
	/// the same with 1/2*u_xx^2 in place of u_xx^2/q on the xi2 bracket
	DifferentialForm literal_difference;
	/// covering read off the normalized combination
	FiberDeclaration covering;
	FlatnessReport flatness;
	std::string note;
};

LinearCombinationReport mkhz_linear_combination_check();

} // namespace jetcov
