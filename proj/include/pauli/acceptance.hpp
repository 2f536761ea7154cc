#ifndef PAULI_ACCEPTANCE_HPP
#define PAULI_ACCEPTANCE_HPP

#include <functional>
#include <string>
#include <vector>

namespace pauli {

enum class CriterionStatus { pass, fail, not_run };

std::string to_string(CriterionStatus s);

struct CriterionResult {
	std::string id;
	std::string title;
	CriterionStatus status = CriterionStatus::not_run;
	double seconds = 0.0;
	/// Measured quantities, one "name=value" item per entry.
	std::string detail;
};

struct AcceptanceOptions {
	/// Commands for AC-9; each must exit with status 0. Without any, AC-9
	/// is reported as not run.
	std::vector<std::string> property_suites;
	/// Restrict to these ids ("AC-1", ...); empty runs all.
	std::vector<std::string> only;
};

std::vector<std::string> criterion_ids();

CriterionResult run_criterion(const std::string &id, const AcceptanceOptions &opt = {});
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions &opt = {});

/// "AC-k PASS|FAIL|NOT RUN  <seconds>s  <title>  <detail>"
std::string format_line(const CriterionResult &r);

} // namespace pauli

#endif
