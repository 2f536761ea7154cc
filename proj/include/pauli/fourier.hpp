#ifndef PAULI_FOURIER_HPP
#define PAULI_FOURIER_HPP

#include "pauli/common.hpp"

#include <span>
#include <vector>

namespace pauli {

/// count equally spaced nodes from lo to hi inclusive.
std::vector<double> uniform_grid(double lo, double hi, std::size_t count);

enum class QuadratureRule { trapezoid, endpoint_corrected };

/// Uniform rule on [-window, window] with `intervals` cells (even); the
/// half-resolution rule on every other node supplies the error estimate.
struct QuadratureSpec {
	double window = 6.0;
	std::size_t intervals = 768;
	QuadratureRule rule = QuadratureRule::trapezoid;
	/// Throw ToleranceNotMet when an estimate exceeds this; <= 0 disables.
	double tolerance = 0.0;

	void validate() const;
	double step() const { return 2.0 * window / static_cast<double>(intervals); }
};

/// Window where e^{-time_rate pi T^2} < 0.01 tol and a step that resolves
/// frequencies up to max_xi for a transform decaying like e^{-freq_rate pi xi^2}.
QuadratureSpec make_spec(double time_rate, double freq_rate, double max_xi, double tol);

struct TransformValue {
	cd value;
	double error = 0.0;
};

/// f sampled once on the quadrature nodes, transformed at arbitrary xi.
class TabulatedTransform {
public:
	TabulatedTransform(const Evaluator &f, const QuadratureSpec &spec);
	TabulatedTransform(std::vector<cd> samples, const QuadratureSpec &spec);

	/// hat f(xi) = int f(x) e^{-2 pi i x xi} dx; `sign` = +1 gives the inverse kernel.
	TransformValue operator()(double xi, int sign = -1) const;
	std::vector<TransformValue> at(std::span<const double> xi, int sign = -1) const;

	const QuadratureSpec &spec() const { return spec_; }
	std::span<const cd> samples() const { return samples_; }
	double node(std::size_t k) const;

private:
	cd sum(double xi, int sign, std::size_t stride) const;

	void init_floor();

	QuadratureSpec spec_;
	std::vector<cd> samples_;
	double tail_ = 0.0;
	double roundoff_ = 0.0;
};

std::vector<TransformValue> transform(const Evaluator &f, const QuadratureSpec &spec,
				      std::span<const double> xi);
TransformValue transform_at(const Evaluator &f, const QuadratureSpec &spec, double xi);

/// log|f(x)| ~ intercept + power log|x| - rate pi x^2.
struct EnvelopeFit {
	double rate = 0.0;
	double intercept = 0.0;
	/// Algebraic prefactor exponent; zero unless fitted.
	double power = 0.0;
	double residual = 0.0;
	double window_lo = 0.0;
	double window_hi = 0.0;
};

/// Weighted least squares of log-magnitudes against -pi x^2 (and log|x|
/// when `with_power` is set). Points with non-finite log-magnitude are
/// skipped; empty weights mean uniform.
EnvelopeFit envelope_fit(std::span<const double> x, std::span<const double> log_mag,
			 std::span<const double> weights = {}, bool with_power = false);

/// Same fit through the per-bin maxima of log|f| over `bins` equal slices
/// of x^2, which tracks the upper envelope of oscillating data.
EnvelopeFit upper_envelope_fit(std::span<const double> x, std::span<const double> log_mag,
			       std::size_t bins = 16, bool with_power = false);

struct HardyCheck {
	bool pass = false;
	double time_sup = 0.0;
	double freq_sup = 0.0;
	/// sups over the outermost sixth of each grid
	double time_outer = 0.0;
	double freq_outer = 0.0;
};

/// sup of |f| e^{A pi x^2} and |hat f| e^{A pi xi^2}; passes when both are
/// finite and the running sup has settled over the outer third of each grid:
/// the outermost sixth does not exceed the rest by more than `slack`
/// (relative). Grids must stay inside the range where the values are
/// accurate, since the weight amplifies quadrature noise.
HardyCheck hardy_check(std::span<const double> x, std::span<const double> abs_f,
		       std::span<const double> xi, std::span<const double> abs_fhat, double A,
		       double slack = 1e-9);

} // namespace pauli

#endif
