#pragma once

#include "jetcov/cli/problem.hpp"
#include "jetcov/cli/report.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace jetcov::cli {

/// Text of a problem file, or of a compiled-in problem for "builtin:NAME".
/// Throws Error when neither exists.
std::string load_problem_text(const std::string &source);

/// flatness of every commutator up to `order`, then WE closure up to
/// min(2, order - 1)
void check_covering(Report &r, const ProblemFile &p, const ProblemModel &m,
                    unsigned order);
void check_we_forms(Report &r, const ProblemFile &p, const ProblemModel &m,
                    unsigned max);
void check_backlund(Report &r, const BacklundProblem &b);
void check_coframe(Report &r, std::size_t n);
/// the mKhZ linear combination; the emitted covering is compared with the
/// fibers of `mkhz` when given
void check_linear_combination(Report &r, const ProblemModel *mkhz);

/// every check reproducing the catalog
Report paper_demos();

/**
 * Command-line entry point; args excludes the program name.
 *
 *   verify-covering FILE [--order K]
 *   verify-backlund FILE
 *   we-forms FILE --max K
 *   check-coframe --n N
 *   reduce FILE --expr E
 *   paper-demos
 *
 * Returns 0 when every check passes, 1 on any FAIL or INCONCLUSIVE, 2 on
 * usage, parse or configuration errors and on an empty report.
 */
int run(const std::vector<std::string> &args, std::ostream &out,
        std::ostream &err);

} // namespace jetcov::cli
