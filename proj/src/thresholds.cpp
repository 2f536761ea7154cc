#include "pauli/thresholds.hpp"
#include "pauli/common.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pauli {

namespace {

void require_unit_interval(double A, const char *who)
{
	if (!(A > 0.0 && A < 1.0))
		throw DomainError(std::string(who) + ": A must lie in (0,1)");
}

double weak_bound_g(double A, double x)
{
	double u = A / std::sqrt(x) + std::sqrt(x) / A;
	return (1.0 - x) * u * u;
}

} // namespace

double c1(double A)
{
	require_unit_interval(A, "c1");
	if (A < 1.0 / std::sqrt(2.0))
		return 2.0 / A;
	return 4.0 * std::sqrt(1.0 - A * A);
}

double c2(double A)
{
	require_unit_interval(A, "c2");
	if (A < 1.0 / 3.0) {
		double r = std::sqrt(1.0 - 8.0 * A * A);
		return std::sqrt(std::pow(3.0 - r, 3) / (2.0 * (1.0 - r)));
	}
	if (A < std::sqrt(3.0) / 2.0)
		return 4.0 * std::sqrt(1.0 - A * A);
	return 2.0;
}

double pauli_threshold(double A)
{
	return std::max(c1(A), 2.0);
}

double x_of_A(double A)
{
	require_unit_interval(A, "x_of_A");
	if (A < 1.0 / 3.0)
		return (1.0 + std::sqrt(1.0 - 8.0 * A * A)) / 4.0;
	return A * A;
}

double sigma_of_A(double A)
{
	if (!(A > 0.0 && A < std::sqrt(3.0) / 2.0))
		throw DomainError("sigma_of_A: A must lie in (0, sqrt(3)/2)");
	return A < 1.0 / std::sqrt(2.0) ? 1.0 / (2.0 * A) : A;
}

OracleResult weak_bound_oracle(double A, std::size_t grid_size)
{
	require_unit_interval(A, "weak_bound_oracle");
	if (grid_size < 1000)
		throw DomainError("weak_bound_oracle: grid_size must be at least 1000");
	const double lo = A * A, hi = 1.0;
	const double h = (hi - lo) / static_cast<double>(grid_size);
	std::size_t best = 0;
	double best_val = -std::numeric_limits<double>::infinity();
	for (std::size_t i = 0; i <= grid_size; ++i) {
		double v = weak_bound_g(A, lo + h * static_cast<double>(i));
		if (v > best_val) {
			best_val = v;
			best = i;
		}
	}

	// golden section on the bracketing cell pair
	double a = lo + h * static_cast<double>(best > 0 ? best - 1 : 0);
	double b = std::min(hi, lo + h * static_cast<double>(best + 1));
	const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
	double x1 = b - invphi * (b - a), x2 = a + invphi * (b - a);
	double f1 = weak_bound_g(A, x1), f2 = weak_bound_g(A, x2);
	for (int it = 0; it < 200 && b - a > 1e-15; ++it) {
		if (f1 < f2) {
			a = x1;
			x1 = x2;
			f1 = f2;
			x2 = a + invphi * (b - a);
			f2 = weak_bound_g(A, x2);
		} else {
			b = x2;
			x2 = x1;
			f2 = f1;
			x1 = b - invphi * (b - a);
			f1 = weak_bound_g(A, x1);
		}
	}
	OracleResult r{best_val, lo + h * static_cast<double>(best)};
	double xm = 0.5 * (a + b);
	double fm = weak_bound_g(A, xm);
	if (fm > r.max_value)
		r = {fm, xm};
	return r;
}

void DecayParams::validate() const
{
	if (!(a > 0.0 && b > 0.0))
		throw DomainError("DecayParams: a and b must be positive");
	if (!(a * b < 1.0))
		throw DomainError("DecayParams: need ab < 1");
}

DensityBounds uniqueness_density_bounds(const DecayParams &params)
{
	params.validate();
	const double a = params.a, b = params.b;
	return {std::sqrt(a * (1.0 / b - a)), std::sqrt(b * (1.0 / a - b))};
}

SplitDecayParams::SplitDecayParams(double a1_, double a2_, double b1_, double b2_)
	: a1(a1_), a2(a2_), b1(b1_), b2(b2_)
{
	if (!(a1 > 0 && a2 > 0 && b1 > 0 && b2 > 0))
		throw DomainError("SplitDecayParams: all rates must be positive");
}

double SplitDecayParams::x() const
{
	return std::sqrt(eta() * nu());
}

double SplitDecayParams::bound() const
{
	return std::min(S2(), T2());
}

void HolderPair::validate() const
{
	if (!(p > 1.0 && q > 1.0))
		throw DomainError("HolderPair: p and q must exceed 1");
	if (std::abs(1.0 / p + 1.0 / q - 1.0) > 1e-12)
		throw DomainError("HolderPair: 1/p + 1/q must equal 1");
}

std::string to_string(Criticality c)
{
	switch (c) {
	case Criticality::supercritical:
		return "supercritical";
	case Criticality::subcritical:
		return "subcritical";
	default:
		return "indeterminate";
	}
}

namespace {

TailStatistic tail_statistic(const std::vector<double> &half, double e, std::size_t window)
{
	if (half.size() < window + 1)
		throw InsufficientData("classify_pair: half-line shorter than the window");
	TailStatistic s{0.0, std::numeric_limits<double>::infinity()};
	for (std::size_t j = half.size() - window - 1; j + 1 < half.size(); ++j) {
		double v = std::pow(half[j], e - 1.0) * (half[j + 1] - half[j]);
		s.sup = std::max(s.sup, v);
		s.inf = std::min(s.inf, v);
	}
	return s;
}

} // namespace

CriticalityVerdict classify_pair(const SampledSet &lambda, const SampledSet &mu,
				 const HolderPair &hp, double bound, std::size_t window,
				 double rel_margin)
{
	hp.validate();
	if (window < 2)
		throw DomainError("classify_pair: window must be at least 2");
	CriticalityVerdict v;
	v.statistics[0] = tail_statistic(lambda.positive(), hp.p, window);
	v.statistics[1] = tail_statistic(lambda.negative_magnitudes(), hp.p, window);
	v.statistics[2] = tail_statistic(mu.positive(), hp.q, window);
	v.statistics[3] = tail_statistic(mu.negative_magnitudes(), hp.q, window);

	double sup_a = std::max(v.statistics[0].sup, v.statistics[1].sup);
	double sup_b = std::max(v.statistics[2].sup, v.statistics[3].sup);
	double inf_a = std::min(v.statistics[0].inf, v.statistics[1].inf);
	double inf_b = std::min(v.statistics[2].inf, v.statistics[3].inf);
	v.upper_product = std::pow(sup_a, 1.0 / hp.p) * std::pow(sup_b, 1.0 / hp.q);
	v.lower_product = std::pow(inf_a, 1.0 / hp.p) * std::pow(inf_b, 1.0 / hp.q);
	v.margin = std::max(v.upper_product - v.lower_product, rel_margin * bound);

	if (v.upper_product < bound - v.margin)
		v.label = Criticality::supercritical;
	else if (v.lower_product > bound + v.margin)
		v.label = Criticality::subcritical;
	std::size_t n = std::min({lambda.positive().size(), lambda.negative_magnitudes().size(),
				  mu.positive().size(), mu.negative_magnitudes().size()});
	v.window_begin = n - window;
	v.window_end = n;
	return v;
}

} // namespace pauli
