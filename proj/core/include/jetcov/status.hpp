#pragma once

#include <string_view>

namespace jetcov {

enum class CheckStatus { pass, fail, inconclusive };

inline std::string_view to_string(CheckStatus s)
{
	switch (s)
	{
	case CheckStatus::pass: return "PASS";
	case CheckStatus::fail: return "FAIL";
	case CheckStatus::inconclusive: return "INCONCLUSIVE";
	}
	return "INCONCLUSIVE";
}

/// pass < fail < inconclusive is not an order; this merges two outcomes
inline CheckStatus combine(CheckStatus a, CheckStatus b)
{
	if (a == CheckStatus::fail || b == CheckStatus::fail)
		return CheckStatus::fail;
	if (a == CheckStatus::inconclusive || b == CheckStatus::inconclusive)
		return CheckStatus::inconclusive;
	return CheckStatus::pass;
}

} // namespace jetcov
