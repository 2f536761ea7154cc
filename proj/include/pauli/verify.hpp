#ifndef PAULI_VERIFY_HPP
#define PAULI_VERIFY_HPP

#include "pauli/common.hpp"
#include "pauli/constructions.hpp"

#include <span>
#include <string>
#include <vector>

namespace pauli {

/// The four functions a verdict looks at.
struct PairView {
	Evaluator f;
	Evaluator g;
	Evaluator f_hat;
	Evaluator g_hat;

	static PairView of(const PairConstruction &pc);
};

struct DiscreteResult {
	double time_residual = 0.0;
	double freq_residual = 0.0;
	bool pass = false;
};

/// max ||f(l)| - |g(l)|| over Lambda and max ||hat f(m)| - |hat g(m)|| over M.
DiscreteResult discrete_check(const PairView &pair, std::span<const double> lambda,
			      std::span<const double> mu, double tol);

struct WeakResult {
	double time_gap = 0.0;
	double freq_gap = 0.0;
	bool weak_time = false;
	bool weak_freq = false;
	bool full = false;
	/// Both gaps at or above the witness floor 10 tol.
	bool non_weak = false;
};

/// Grid sups of the modulus gaps on each side.
WeakResult weak_check(const PairView &pair, std::span<const double> time_grid,
		      std::span<const double> freq_grid, double tol);

/// f(z) conj(f(conj z)) - g(z) conj(g(conj z)).
cd H_eval(const Evaluator &f, const Evaluator &g, cd z);
/// Same combination of the transforms.
cd Htilde_eval(const Evaluator &f_hat, const Evaluator &g_hat, cd z);

enum class SignVerdict { squared_identity_forced, counterexample_persists };
std::string to_string(SignVerdict v);

struct SignRetrieval {
	SignVerdict verdict = SignVerdict::squared_identity_forced;
	/// max |f^2 - g^2| over Lambda and |hat f^2 - hat g^2| over M.
	double sample_residual = 0.0;
	/// max over the grids of the same differences.
	double time_gap = 0.0;
	double freq_gap = 0.0;
};

/// Requires equal squared samples (within tol); reports whether the squares
/// also agree on the grids. Gaps above 10 tol count as disagreement.
SignRetrieval sign_retrieval_check(const PairView &pair, std::span<const double> lambda,
				   std::span<const double> mu, std::span<const double> time_grid,
				   std::span<const double> freq_grid, double tol);

struct GridDescription {
	double lo = 0.0;
	double hi = 0.0;
	std::size_t count = 0;
};

struct PairReport {
	DiscreteResult discrete;
	WeakResult weak;
	double tol = 0.0;
	GridDescription time_grid;
	GridDescription freq_grid;
	/// Extremes of H and H~ on the real grids.
	double H_max = 0.0;
	double Htilde_max = 0.0;
	std::string kind;
};

/// Full verdict over uniform grids on [-time_half, time_half] and
/// [-freq_half, freq_half].
PairReport make_report(const PairConstruction &pc, double tol, double time_half = 4.0,
		       double freq_half = 4.0, std::size_t count = 401);

} // namespace pauli

#endif
