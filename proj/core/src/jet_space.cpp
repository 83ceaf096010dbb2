#include "jetcov/jet_space.hpp"

#include "jetcov/error.hpp"

#include <algorithm>
#include <set>

namespace jetcov {

MultiIndex::MultiIndex(std::vector<std::uint8_t> positions)
    : idx_(std::move(positions))
{
	std::sort(idx_.begin(), idx_.end());
}

MultiIndex MultiIndex::repeated(std::uint8_t position, std::size_t count)
{
	MultiIndex m;
	m.idx_.assign(count, position);
	return m;
}

std::size_t MultiIndex::count(std::uint8_t position) const noexcept
{
	return static_cast<std::size_t>(
	    std::count(idx_.begin(), idx_.end(), position));
}

MultiIndex MultiIndex::with(std::uint8_t position) const
{
	MultiIndex m = *this;
	m.idx_.insert(std::upper_bound(m.idx_.begin(), m.idx_.end(), position),
	              position);
	return m;
}

bool MultiIndex::contains(const MultiIndex &k) const noexcept
{
	return std::includes(idx_.begin(), idx_.end(), k.idx_.begin(),
	                     k.idx_.end());
}

MultiIndex MultiIndex::minus(const MultiIndex &k) const
{
	MultiIndex m;
	std::set_difference(idx_.begin(), idx_.end(), k.idx_.begin(), k.idx_.end(),
	                    std::back_inserter(m.idx_));
	return m;
}

namespace {

void enumerate(std::size_t n, unsigned order, std::uint8_t start,
               std::vector<std::uint8_t> &cur, std::vector<MultiIndex> &out)
{
	out.emplace_back(cur);
	if (cur.size() == order)
		return;
	for (std::uint8_t i = start; i < n; ++i)
	{
		cur.push_back(i);
		enumerate(n, order, i, cur, out);
		cur.pop_back();
	}
}

} // namespace

JetContext::JetContext(std::vector<std::string> independent,
                       std::vector<std::string> dependent, unsigned max_order)
    : max_order_(max_order)
{
	if (independent.empty())
		throw Error("a jet space needs at least one independent variable");
	if (independent.size() > 64)
		throw Error("too many independent variables");
	std::set<std::string> seen;
	for (const auto &name : independent)
		if (!seen.insert(name).second)
			throw Error("duplicate variable name " + name);
	for (const auto &name : dependent)
		if (!seen.insert(name).second)
			throw Error("duplicate variable name " + name);

	letter_subscripts_ = std::all_of(independent.begin(), independent.end(),
	                                 [](const auto &s) { return s.size() == 1; });
	if (!letter_subscripts_ && independent.size() > 9)
		throw Error("position subscripts support at most 9 variables");

	for (const auto &name : independent)
		independent_.push_back(Symbol::intern(name));
	for (const auto &name : dependent)
		dependent_.push_back(Symbol::intern(name));

	std::vector<MultiIndex> indices;
	std::vector<std::uint8_t> cur;
	enumerate(independent_.size(), max_order_, 0, cur, indices);
	std::sort(indices.begin(), indices.end(),
	          [](const MultiIndex &a, const MultiIndex &b) {
		          if (a.order() != b.order())
			          return a.order() < b.order();
		          return a < b;
	          });
	for (std::size_t d = 0; d < dependent_.size(); ++d)
		for (const auto &idx : indices)
		{
			Symbol s = idx.order() == 0 ? dependent_[d]
			                            : Symbol::intern(jet_name(d, idx));
			table_.emplace(std::pair{d, idx}, s);
			reverse_.emplace(s, JetCoordinate{d, idx});
		}
}

std::optional<std::size_t> JetContext::independent_index(Symbol s) const
{
	auto it = std::find(independent_.begin(), independent_.end(), s);
	if (it == independent_.end())
		return std::nullopt;
	return static_cast<std::size_t>(it - independent_.begin());
}

std::optional<std::size_t> JetContext::dependent_index(Symbol s) const
{
	auto it = std::find(dependent_.begin(), dependent_.end(), s);
	if (it == dependent_.end())
		return std::nullopt;
	return static_cast<std::size_t>(it - dependent_.begin());
}

std::string JetContext::subscript(const MultiIndex &index) const
{
	std::string s;
	for (auto p : index.positions())
	{
		if (letter_subscripts_)
			s += independent_.at(p).name();
		else
			s += std::to_string(p + 1);
	}
	return s;
}

std::optional<MultiIndex>
JetContext::parse_subscript(std::string_view letters) const
{
	std::vector<std::uint8_t> pos;
	for (char c : letters)
	{
		std::optional<std::size_t> found;
		for (std::size_t i = 0; i < independent_.size(); ++i)
		{
			const auto &name = independent_[i].name();
			if (letter_subscripts_ ? (name.size() == 1 && name[0] == c)
			                       : (c == static_cast<char>('1' + i)))
				found = i;
		}
		if (!found)
			return std::nullopt;
		pos.push_back(static_cast<std::uint8_t>(*found));
	}
	return MultiIndex(std::move(pos));
}

std::string JetContext::jet_name(std::size_t dependent,
                                 const MultiIndex &index) const
{
	const auto &base = dependent_.at(dependent).name();
	if (index.order() == 0)
		return base;
	return base + "_" + subscript(index);
}

Symbol JetContext::jet(std::size_t dependent, const MultiIndex &index) const
{
	auto it = table_.find({dependent, index});
	if (it == table_.end())
	{
		if (dependent >= dependent_.size())
			throw Error("unknown dependent variable index");
		throw TruncationError(jet_name(dependent, index));
	}
	return it->second;
}

Symbol JetContext::jet(Symbol dependent, const MultiIndex &index) const
{
	auto d = dependent_index(dependent);
	if (!d)
		throw Error(dependent.name() + " is not a dependent variable");
	return jet(*d, index);
}

std::optional<JetCoordinate> JetContext::classify(Symbol s) const
{
	auto it = reverse_.find(s);
	if (it == reverse_.end())
		return std::nullopt;
	return it->second;
}

std::vector<Symbol> JetContext::jets_up_to(std::size_t dependent,
                                           unsigned order) const
{
	std::vector<Symbol> out;
	for (const auto &[key, sym] : table_)
		if (key.first == dependent && key.second.order() <= order)
			out.push_back(sym);
	std::stable_sort(out.begin(), out.end(), [&](Symbol a, Symbol b) {
		return reverse_.at(a).index.order() < reverse_.at(b).index.order();
	});
	return out;
}

RationalExpr total_derivative(const RationalExpr &a, std::size_t i,
                              const JetContext &ctx)
{
	if (i >= ctx.dimension())
		throw Error("total derivative direction out of range");
	const auto xi = static_cast<std::uint8_t>(i);
	return apply_derivation(a, [&](Symbol s) -> Polynomial {
		if (s == ctx.independent(i))
			return Polynomial(1);
		if (auto jc = ctx.classify(s))
			return Polynomial::variable(ctx.jet(jc->dependent, jc->index.with(xi)));
		return Polynomial();
	});
}

RationalExpr iterated_total_derivative(const RationalExpr &a,
                                       const MultiIndex &index,
                                       const JetContext &ctx)
{
	RationalExpr r = a;
	for (auto p : index.positions())
		r = total_derivative(r, p, ctx);
	return r;
}

} // namespace jetcov
