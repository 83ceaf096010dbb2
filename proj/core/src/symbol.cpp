#include "jetcov/symbol.hpp"

#include <cassert>
#include <deque>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

namespace jetcov {

namespace {

// Registrations take the unique lock; lookups share it. The deque keeps
// references to names stable while it grows.
struct Interner {
	std::shared_mutex mutex;
	std::deque<std::string> names{std::string("<invalid>")};
	std::unordered_map<std::string, std::uint32_t> ids;
};

Interner &interner()
{
	static Interner table;
	return table;
}

} // namespace

Symbol Symbol::intern(std::string_view name)
{
	auto &t = interner();
	{
		std::shared_lock lock(t.mutex);
		if (auto it = t.ids.find(std::string(name)); it != t.ids.end())
			return Symbol(it->second);
	}
	std::unique_lock lock(t.mutex);
	auto [it, inserted] = t.ids.try_emplace(
	    std::string(name), static_cast<std::uint32_t>(t.names.size()));
	if (inserted)
		t.names.emplace_back(name);
	return Symbol(it->second);
}

std::optional<Symbol> Symbol::find(std::string_view name)
{
	auto &t = interner();
	std::shared_lock lock(t.mutex);
	if (auto it = t.ids.find(std::string(name)); it != t.ids.end())
		return Symbol(it->second);
	return std::nullopt;
}

const std::string &Symbol::name() const
{
	auto &t = interner();
	std::shared_lock lock(t.mutex);
	assert(id_ < t.names.size());
	return t.names[id_];
}

} // namespace jetcov
