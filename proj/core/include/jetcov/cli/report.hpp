#pragma once

#include "jetcov/status.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace jetcov::cli {

/// RESULT check=<id> status=<S> residual=<text>
struct ResultLine {
	std::string id;
	CheckStatus status = CheckStatus::pass;
	/// canonical expression or form; everything after "residual="
	std::string residual;
	friend bool operator==(const ResultLine &, const ResultLine &) = default;
};

std::string to_string(const ResultLine &r);
/// nullopt unless the line is a well-formed RESULT line
std::optional<ResultLine> parse_result_line(std::string_view line);

/**
 * Line-oriented report. RESULT lines count as checks; FORM, FACTOR and
 * INFO lines are commentary. emit() appends
 *   SUMMARY <n> checks: <p> PASS, <f> FAIL, <i> INCONCLUSIVE
 * or "SUMMARY 0 checks" for an empty report.
 */
class Report {
public:
	void result(std::string id, CheckStatus status, std::string residual);
	/// free text under a tag such as INFO, FORM or FACTOR
	void note(std::string_view tag, std::string text);

	const std::vector<ResultLine> &results() const noexcept { return results_; }
	std::string emit() const;
	/// 0 all PASS, 1 any FAIL or INCONCLUSIVE, 2 no checks
	int exit_code() const;

private:
	std::vector<std::string> lines_;
	std::vector<ResultLine> results_;
};

} // namespace jetcov::cli
