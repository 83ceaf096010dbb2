#pragma once

#include <optional>
#include <span>
#include <string_view>

namespace jetcov::cli {

struct CatalogEntry {
	std::string_view name;
	std::string_view text;
};

/// The shipped problem files, compiled in; sorted by name.
std::span<const CatalogEntry> catalog();
std::optional<std::string_view> catalog_text(std::string_view name);

} // namespace jetcov::cli
