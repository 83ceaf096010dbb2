#pragma once

#include "jetcov/rational_expr.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace jetcov {

/// Symmetric multi-index: positions of independent variables, kept
/// sorted so that u_{ji} and u_{ij} are the same coordinate.
class MultiIndex {
public:
	MultiIndex() = default;
	explicit MultiIndex(std::vector<std::uint8_t> positions);
	static MultiIndex repeated(std::uint8_t position, std::size_t count);

	std::size_t order() const noexcept { return idx_.size(); }
	std::span<const std::uint8_t> positions() const noexcept { return idx_; }
	std::size_t count(std::uint8_t position) const noexcept;

	MultiIndex with(std::uint8_t position) const;
	/// multiset inclusion
	bool contains(const MultiIndex &k) const noexcept;
	/// multiset difference; requires contains(k)
	MultiIndex minus(const MultiIndex &k) const;

	friend auto operator<=>(const MultiIndex &, const MultiIndex &) = default;

private:
	std::vector<std::uint8_t> idx_;
};

struct JetCoordinate {
	std::size_t dependent;
	MultiIndex index;
};

/**
 * Coordinates (x^i, u^a, u^a_I) of a jet space truncated at max_order.
 *
 * Every jet symbol up to max_order is created at construction, so the
 * context is immutable afterwards and can be shared freely. Derivative
 * subscripts follow the declaration order of the independent variables:
 * with (t, x, y) declared, the mixed derivative is u_tx, never u_xt. When
 * some independent name is longer than one letter the subscript lists
 * 1-based positions instead (u_12).
 */
class JetContext {
public:
	JetContext(std::vector<std::string> independent,
	           std::vector<std::string> dependent, unsigned max_order);

	static std::shared_ptr<const JetContext>
	make(std::vector<std::string> independent,
	     std::vector<std::string> dependent, unsigned max_order)
	{
		return std::make_shared<const JetContext>(
		    std::move(independent), std::move(dependent), max_order);
	}

	std::size_t dimension() const noexcept { return independent_.size(); }
	unsigned max_order() const noexcept { return max_order_; }
	const std::vector<Symbol> &independents() const noexcept
	{
		return independent_;
	}
	const std::vector<Symbol> &dependents() const noexcept
	{
		return dependent_;
	}
	Symbol independent(std::size_t i) const { return independent_.at(i); }
	std::optional<std::size_t> independent_index(Symbol s) const;
	std::optional<std::size_t> dependent_index(Symbol s) const;

	/// throws TruncationError past max_order
	Symbol jet(std::size_t dependent, const MultiIndex &index) const;
	Symbol jet(Symbol dependent, const MultiIndex &index) const;
	std::optional<JetCoordinate> classify(Symbol s) const;
	/// the name a jet symbol has or would have
	std::string jet_name(std::size_t dependent, const MultiIndex &index) const;
	/// "tx" for (t, x); positions for multi-letter names
	std::string subscript(const MultiIndex &index) const;
	/// parses a subscript written in any order; nullopt if a letter is not
	/// an independent variable
	std::optional<MultiIndex> parse_subscript(std::string_view letters) const;

	/// every jet symbol of the given dependent variable up to `order`,
	/// ordered by order and then multi-index
	std::vector<Symbol> jets_up_to(std::size_t dependent, unsigned order) const;

private:
	std::vector<Symbol> independent_;
	std::vector<Symbol> dependent_;
	unsigned max_order_;
	bool letter_subscripts_;
	std::map<std::pair<std::size_t, MultiIndex>, Symbol> table_;
	std::unordered_map<Symbol, JetCoordinate> reverse_;
};

/// D_i = d/dx^i + sum_I u_{Ii} d/du_I. Symbols unknown to the context
/// (group parameters and the like) are constants.
RationalExpr total_derivative(const RationalExpr &a, std::size_t i,
                              const JetContext &ctx);

/// D_I = D_{i_1} o ... o D_{i_k}
RationalExpr iterated_total_derivative(const RationalExpr &a,
                                       const MultiIndex &index,
                                       const JetContext &ctx);

inline Symbol jet_symbol(Symbol dependent, const MultiIndex &index,
                         const JetContext &ctx)
{
	return ctx.jet(dependent, index);
}

} // namespace jetcov
