#ifndef PAULI_COMMON_HPP
#define PAULI_COMMON_HPP

#include <complex>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>

namespace pauli {

using cd = std::complex<double>;

inline constexpr double pi = std::numbers::pi;

/// Entire-function evaluator. Must be safe to call concurrently.
using Evaluator = std::function<cd(cd)>;

/// Log-magnitude evaluator; returns -inf at zeros.
using LogEvaluator = std::function<double(cd)>;

class Error : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

class DomainError : public Error {
public:
	using Error::Error;
};

class InsufficientData : public Error {
public:
	using Error::Error;
};

class Infeasible : public Error {
public:
	using Error::Error;
};

class Degenerate : public Error {
public:
	using Error::Error;
};

class NotAZero : public Error {
public:
	using Error::Error;
};

class PreconditionViolated : public Error {
public:
	using Error::Error;
};

class SolverFailed : public Error {
public:
	using Error::Error;
};

class ToleranceNotMet : public Error {
public:
	ToleranceNotMet(const std::string &what, double achieved)
		: Error(what), achieved_(achieved) {}
	double achieved() const noexcept { return achieved_; }

private:
	double achieved_;
};

/// Unit complex number e^{i theta}, exact at multiples of pi/2.
cd unit_phase(double theta);

} // namespace pauli

#endif
