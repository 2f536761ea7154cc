#ifndef PAULI_ASYMPTOTICS_HPP
#define PAULI_ASYMPTOTICS_HPP

#include "pauli/common.hpp"
#include "pauli/fourier.hpp"
#include "pauli/product_model.hpp"

#include <limits>
#include <span>
#include <vector>

namespace pauli {

/// Nodes within c (1 + |z|)^-1 of a listed zero are excluded.
struct ZeroMask {
	std::vector<cd> zeros;
	double c = 0.0;

	bool masked(cd z) const;
};

/// Real and (for power 4) imaginary-axis zeros of the model with |zero| <= r_max,
/// including lattice-tail zeros beyond the retained list.
std::vector<cd> model_zeros(const ProductModel &model, double r_max);

/// Mask from the model's zeros with constant c.
ZeroMask model_mask(const ProductModel &model, double r_max, double c);

/// Growth rate per r^2 along one ray.
struct IndicatorEstimate {
	double theta = 0.0;
	double h = 0.0;
	double residual = 0.0;
	double r_lo = 0.0;
	double r_hi = 0.0;
	std::size_t used = 0;
	std::size_t masked = 0;
};

/// Linear grid of `count` radii on [lo, hi].
std::vector<double> radial_grid(double lo, double hi, std::size_t count);

/**
 * Slope of the upper envelope of log|f(r e^{i theta})| against r^2.
 *
 * The r^2 range is cut into `bins` slices; the per-slice maxima are fitted
 * by least squares. The residual combines the rms misfit per unit r^2 with
 * the gap between the full fit and a fit over the outer half of the bins.
 */
IndicatorEstimate indicator_estimate(const LogEvaluator &log_f, double theta,
				     std::span<const double> radii, const ZeroMask &mask,
				     std::size_t bins = 12);
IndicatorEstimate indicator_estimate(const ProductModel &model, double theta,
				     std::span<const double> radii, const ZeroMask &mask,
				     std::size_t bins = 12);

/// Estimates on every angle in parallel.
std::vector<IndicatorEstimate> indicator_sweep(const ProductModel &model,
					       std::span<const double> thetas,
					       std::span<const double> radii, const ZeroMask &mask,
					       std::size_t bins = 12);

struct ConvexityCheck {
	bool pass = true;
	/// Largest lhs - rhs over all triples (may be negative).
	double worst = -std::numeric_limits<double>::infinity();
	double worst_theta = 0.0;
};

/// h(t) <= [sin(p(t2 - t)) h(t1) + sin(p(t - t1)) h(t2)] / sin(p(t2 - t1))
/// for every sampled t1 < t < t2 with t2 - t1 < pi/p, up to residual slack.
ConvexityCheck trig_convexity_check(std::span<const IndicatorEstimate> est, double p,
				    double abs_slack = 1e-9);

struct ZeroDensityCheck {
	bool pass = true;
	/// Smallest rhs - lhs + slack over the grid.
	double margin = std::numeric_limits<double>::infinity();
	double worst_theta = 0.0;
};

/// D pi sin(p t) + h(0) cos(p t) <= max(h(t), h(-t)) for every grid t in
/// [0, pi/p]. h(-t) falls back to h(t) when -t is not sampled. The slack is
/// the two residuals plus rel_tol (D pi + |h(0)|).
ZeroDensityCheck zero_density_indicator_check(std::span<const IndicatorEstimate> est,
					      double density, double p, double rel_tol = 0.05);

struct DecayPredicate {
	bool pass = false;
	double rate = 0.0;
	EnvelopeFit fit;
};

/// Transforms the model, fits the upper envelope of log|hat f| over
/// |xi| in [xi_lo, xi_hi] and passes when the fitted rate is >= b.
DecayPredicate fourier_decay_predicate(const ProductModel &model, double b,
				       double xi_lo = 1.0, double xi_hi = 4.0,
				       std::size_t samples = 121);

} // namespace pauli

#endif
