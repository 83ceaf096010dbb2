#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace jetcov {

/**
 * Interned variable name.
 *
 * Symbols are process-wide: interning the same display name twice returns
 * the same id. Ids are handed out in registration order and never reused, so
 * comparison by id is a total order that is fixed for the lifetime of the
 * process. That order drives the internal monomial ordering only; anything
 * printed sorts by display name instead.
 */
class Symbol {
public:
	Symbol() = default;

	static Symbol intern(std::string_view name);
	static std::optional<Symbol> find(std::string_view name);
	/// Rebuilds a symbol from an id previously obtained from `id()`.
	static Symbol from_id(std::uint32_t id) noexcept { return Symbol(id); }

	std::uint32_t id() const noexcept { return id_; }
	bool valid() const noexcept { return id_ != 0; }
	const std::string &name() const;

	friend auto operator<=>(Symbol, Symbol) = default;

private:
	explicit Symbol(std::uint32_t id) : id_(id) {}
	std::uint32_t id_ = 0;
};

} // namespace jetcov

template <> struct std::hash<jetcov::Symbol> {
	std::size_t operator()(jetcov::Symbol s) const noexcept
	{
		return std::hash<std::uint32_t>{}(s.id());
	}
};
