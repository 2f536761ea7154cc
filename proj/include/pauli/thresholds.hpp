#ifndef PAULI_THRESHOLDS_HPP
#define PAULI_THRESHOLDS_HPP

#include "pauli/sequences.hpp"

#include <array>
#include <string>

namespace pauli {

/// Critical density for the time-side problem: 2/A below 1/sqrt(2),
/// 4 sqrt(1 - A^2) above. Requires 0 < A < 1.
double c1(double A);

/// Critical density for the two-sided problem (three branches, breaks at
/// A = 1/3 and A = sqrt(3)/2).
double c2(double A);

/// max(c1(A), 2).
double pauli_threshold(double A);

/// Maximiser of (1 - x)(A/sqrt(x) + sqrt(x)/A)^2 on [A^2, 1).
double x_of_A(double A);

/// Gaussian rate used by the product constructions; requires A < sqrt(3)/2.
double sigma_of_A(double A);

struct OracleResult {
	double max_value = 0.0;
	double argmax = 0.0;
};

/// Grid maximisation of (1 - x)(A/sqrt(x) + sqrt(x)/A)^2 over [A^2, 1],
/// refined by golden-section search around the best grid node.
OracleResult weak_bound_oracle(double A, std::size_t grid_size = 4096);

struct DecayParams {
	double a = 0.5;
	double b = 0.5;

	void validate() const;
};

struct DensityBounds {
	double time = 0.0;
	double freq = 0.0;
};

/// (sqrt(a(1/b - a)), sqrt(b(1/a - b))). Requires ab < 1.
DensityBounds uniqueness_density_bounds(const DecayParams &params);

/// Two Gaussian rate pairs and the derived quantities of the sum/product
/// parametrisation: s = a1 + a2, t = b1 + b2, eta = a1 a2, nu = b1 b2,
/// x = sqrt(eta nu), S^2 = s(t/nu - s), T^2 = t(s/eta - t).
struct SplitDecayParams {
	double a1, a2, b1, b2;

	SplitDecayParams(double a1, double a2, double b1, double b2);

	double s() const { return a1 + a2; }
	double t() const { return b1 + b2; }
	double eta() const { return a1 * a2; }
	double nu() const { return b1 * b2; }
	double x() const;
	double S2() const { return s() * (t() / nu() - s()); }
	double T2() const { return t() * (s() / eta() - t()); }
	/// min(S^2, T^2).
	double bound() const;
};

struct HolderPair {
	double p = 2.0;
	double q = 2.0;

	void validate() const;
};

enum class Criticality { supercritical, subcritical, indeterminate };

std::string to_string(Criticality c);

struct TailStatistic {
	double sup = 0.0;
	double inf = 0.0;
};

struct CriticalityVerdict {
	Criticality label = Criticality::indeterminate;
	/// Lambda+, Lambda-, M+, M- tail statistics of |g_j|^(e-1) (g_{j+1} - g_j).
	std::array<TailStatistic, 4> statistics{};
	double upper_product = 0.0;
	double lower_product = 0.0;
	double margin = 0.0;
	std::size_t window_begin = 0;
	std::size_t window_end = 0;
};

/// Compares sup_a^(1/p) sup_b^(1/q) and inf_a^(1/p) inf_b^(1/q) over the last
/// `window` spacings of each half-line against `bound`. The indeterminate
/// band has half-width max(spread of the products, rel_margin * bound).
CriticalityVerdict classify_pair(const SampledSet &lambda, const SampledSet &mu,
				 const HolderPair &hp, double bound = 0.5,
				 std::size_t window = 64, double rel_margin = 0.01);

} // namespace pauli

#endif
