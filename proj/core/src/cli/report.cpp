#include "jetcov/cli/report.hpp"

namespace jetcov::cli {

std::string to_string(const ResultLine &r)
{
	return "RESULT check=" + r.id + " status=" + std::string(to_string(r.status)) +
	       " residual=" + r.residual;
}

std::optional<ResultLine> parse_result_line(std::string_view line)
{
	auto take = [&](std::string_view prefix) -> bool {
		if (line.substr(0, prefix.size()) != prefix)
			return false;
		line.remove_prefix(prefix.size());
		return true;
	};
	if (!take("RESULT check="))
		return std::nullopt;
	auto sp = line.find(' ');
	if (sp == 0 || sp == std::string_view::npos)
		return std::nullopt;
	ResultLine r;
	r.id = std::string(line.substr(0, sp));
	line.remove_prefix(sp + 1);
	if (take("status=PASS "))
		r.status = CheckStatus::pass;
	else if (take("status=FAIL "))
		r.status = CheckStatus::fail;
	else if (take("status=INCONCLUSIVE "))
		r.status = CheckStatus::inconclusive;
	else
		return std::nullopt;
	if (!take("residual=") || line.empty())
		return std::nullopt;
	r.residual = std::string(line);
	return r;
}

void Report::result(std::string id, CheckStatus status, std::string residual)
{
	ResultLine r{std::move(id), status, std::move(residual)};
	lines_.push_back(to_string(r));
	results_.push_back(std::move(r));
}

void Report::note(std::string_view tag, std::string text)
{
	lines_.push_back(std::string(tag) + " " + text);
}

std::string Report::emit() const
{
	std::string out;
	for (const auto &l : lines_)
		out += l + "\n";
	if (results_.empty())
		return out + "SUMMARY 0 checks\n";
	std::size_t count[3] = {0, 0, 0};
	for (const auto &r : results_)
		++count[static_cast<int>(r.status)];
	out += "SUMMARY " + std::to_string(results_.size()) + " checks: " +
	       std::to_string(count[0]) + " PASS, " + std::to_string(count[1]) +
	       " FAIL, " + std::to_string(count[2]) + " INCONCLUSIVE\n";
	return out;
}

int Report::exit_code() const
{
	if (results_.empty())
		return 2;
	for (const auto &r : results_)
		if (r.status != CheckStatus::pass)
			return 1;
	return 0;
}

} // namespace jetcov::cli
