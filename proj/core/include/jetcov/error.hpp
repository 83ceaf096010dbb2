#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace jetcov {

class Error : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

/// Raised by `div` and friends when the divisor is identically zero.
class DivisionByZero : public Error {
public:
	explicit DivisionByZero(std::string op)
	    : Error("division by zero in " + op), op_(std::move(op))
	{}
	const std::string &operation() const noexcept { return op_; }

private:
	std::string op_;
};

/// A jet coordinate beyond the declared order budget was needed.
class TruncationError : public Error {
public:
	explicit TruncationError(std::string coordinate)
	    : Error("truncation overflow: coordinate " + coordinate +
	            " exceeds the order budget"),
	      coordinate_(std::move(coordinate))
	{}
	const std::string &coordinate() const noexcept { return coordinate_; }

private:
	std::string coordinate_;
};

class SubstitutionError : public Error {
public:
	using Error::Error;
};

class UnsupportedError : public Error {
public:
	using Error::Error;
};

class ParseError : public Error {
public:
	ParseError(std::size_t line, std::size_t column, const std::string &msg)
	    : Error(std::to_string(line) + ":" + std::to_string(column) + ": " +
	            msg),
	      line_(line), column_(column)
	{}
	std::size_t line() const noexcept { return line_; }
	std::size_t column() const noexcept { return column_; }

private:
	std::size_t line_;
	std::size_t column_;
};

} // namespace jetcov
