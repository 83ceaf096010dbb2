#pragma once

#include "random.hpp"

#include <doctest.h>

namespace doctest {
template <> struct StringMaker<jetcov::RationalExpr> {
	static String convert(const jetcov::RationalExpr &a)
	{
		return jetcov::to_string(a).c_str();
	}
};
template <> struct StringMaker<jetcov::DifferentialForm> {
	static String convert(const jetcov::DifferentialForm &a)
	{
		return jetcov::to_string(a).c_str();
	}
};
} // namespace doctest
