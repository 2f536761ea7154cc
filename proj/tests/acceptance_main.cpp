#include "pauli/acceptance.hpp"

#include <iostream>

#ifndef PAULI_PROPERTY_SUITES
#define PAULI_PROPERTY_SUITES ""
#endif

int main()
{
	pauli::AcceptanceOptions opt;
	// comma-separated executable paths; each suite only reports failures
	std::string list = PAULI_PROPERTY_SUITES;
	for (std::size_t pos = 0; pos < list.size();) {
		std::size_t end = list.find(',', pos);
		if (end == std::string::npos)
			end = list.size();
		if (end > pos)
			opt.property_suites.push_back("\"" + list.substr(pos, end - pos) + "\" --minimal");
		pos = end + 1;
	}

	bool ok = true;
	for (const auto &r : pauli::run_acceptance(opt)) {
		std::cout << pauli::format_line(r) << std::endl;
		ok = ok && r.status == pauli::CriterionStatus::pass;
	}
	return ok ? 0 : 1;
}
