#ifndef PAULI_INTERPOLATION_HPP
#define PAULI_INTERPOLATION_HPP

#include "pauli/fourier.hpp"
#include "pauli/product_model.hpp"
#include "pauli/sequences.hpp"

#include <Eigen/Dense>

#include <memory>
#include <vector>

namespace pauli {

/// Tuning shared by the basis tabulation and the iteration.
struct InterpolationOptions {
	/// Sample points with |.| > window are dropped.
	double window = 4.2;
	/// Weighted-norm target for the residual data.
	double tol = 1e-10;
	std::size_t max_iterations = 60;
	/// Quadrature step for the basis transforms.
	double step = 1.0 / 32.0;
};

/**
 * Time-side generator e^{-a pi z^2} prod (1 - z^4/l^4) and frequency-side
 * generator e^{-b pi xi^2} prod (1 - xi^4/m^4), plus the two families of
 * basis functions built from them:
 *
 *   phi_l(x)   = time generator divided at l      (Kronecker on its zeros)
 *   g_m(xi)    = frequency generator divided at m (Kronecker on its zeros)
 *   psi_m(x)   = int g_m(xi) e^{2 pi i x xi} dxi  (so hat psi_m = g_m)
 *
 * Transforms are tabulated once per basis function.
 */
class BasisSet {
public:
	BasisSet(ProductModel time_generator, ProductModel freq_generator,
		 std::vector<double> lambda, std::vector<double> mu,
		 const InterpolationOptions &opt);

	const ProductModel &time_generator() const { return time_gen_; }
	const ProductModel &freq_generator() const { return freq_gen_; }
	const std::vector<double> &lambda() const { return lambda_; }
	const std::vector<double> &mu() const { return mu_; }
	double a() const { return time_gen_.gamma; }
	double b() const { return freq_gen_.gamma; }
	const InterpolationOptions &options() const { return opt_; }

	cd phi(std::size_t i, cd x) const;
	cd phi_hat(std::size_t i, double xi) const;
	cd psi(std::size_t j, double x) const;
	cd g(std::size_t j, cd xi) const;

	/// Same quantities from an independent quadrature (endpoint-corrected
	/// rule, wider window, finer step), for re-evaluation checks.
	BasisSet refined() const;

private:
	ProductModel time_gen_, freq_gen_;
	std::vector<double> lambda_, mu_;
	InterpolationOptions opt_;
	QuadratureRule rule_ = QuadratureRule::trapezoid;
	double window_scale_ = 1.0;
	std::vector<TabulatedTransform> phi_tab_, g_tab_;

	void tabulate();
};

/// Windowed data: prescribe F(l) = alpha(l) and hat F(m) = beta(m).
struct InterpolationProblem {
	std::shared_ptr<const BasisSet> basis;
	Eigen::VectorXcd alpha;
	Eigen::VectorXcd beta;

	double norm(const Eigen::VectorXcd &al, const Eigen::VectorXcd &be) const;
};

struct CrossMatrices {
	/// A(l', m) = psi_m(l')
	Eigen::MatrixXcd A;
	/// B(m', l) = hat phi_l(m')
	Eigen::MatrixXcd B;
};

CrossMatrices build_cross_matrices(const BasisSet &basis);

struct OperatorNorms {
	double A = 0.0;
	double B = 0.0;
	double max() const { return std::max(A, B); }
};

/// Weighted l1 operator norms with weights e^{a pi l^2}, e^{b pi m^2}.
OperatorNorms weighted_norms(const BasisSet &basis, const CrossMatrices &cm);

struct IterationState {
	std::vector<double> residuals;
	std::vector<double> ratios;
	std::size_t iterations = 0;
	bool converged = false;
	bool diverged = false;
};

/// Hermite function h_k(x) = H_k(sqrt(2 pi) x) e^{-pi x^2}, L2-normalised;
/// its transform is (-i)^k h_k.
double hermite_seed(std::size_t k, double x);
cd hermite_seed_hat(std::size_t k, double xi);

/// F = sum c_l phi_l + sum d_m psi_m + sum e_k h_k.
class Interpolant {
public:
	Interpolant() = default;
	Interpolant(std::shared_ptr<const BasisSet> basis, Eigen::VectorXcd c, Eigen::VectorXcd d,
		    Eigen::VectorXcd e = {});

	cd time(double x) const;
	cd freq(double xi) const;
	Evaluator time_evaluator() const;
	Evaluator freq_evaluator() const;

	const BasisSet &basis() const { return *basis_; }
	const Eigen::VectorXcd &c() const { return c_; }
	const Eigen::VectorXcd &d() const { return d_; }
	const Eigen::VectorXcd &e() const { return e_; }
	Interpolant scaled(cd s) const { return Interpolant(basis_, s * c_, s * d_, s * e_); }

private:
	std::shared_ptr<const BasisSet> basis_;
	Eigen::VectorXcd c_, d_, e_;
};

struct SolveResult {
	Interpolant F;
	IterationState state;
	/// Independent re-evaluation against the targets.
	double max_time_error = 0.0;
	double max_freq_error = 0.0;
	double weighted_error = 0.0;
};

/// Alternating correction alpha_{j+1} = -A beta_j, beta_{j+1} = -B alpha_j.
SolveResult solve(const InterpolationProblem &problem, const CrossMatrices &cm,
		  const InterpolationOptions &opt = {});
SolveResult solve(const InterpolationProblem &problem, const InterpolationOptions &opt = {});

/// Time generator over the positive magnitudes of `zeros` (and `extra`),
/// keeping the lattice continuation of `zeros` when present.
ProductModel vanishing_generator(const SampledSet &zeros, double rate,
				 std::span<const double> extra = {});

/// Window points of `set` with L < |x| <= window.
std::vector<double> window_points(const SampledSet &set, double L, double window);

struct LChoice {
	double L = 0.0;
	OperatorNorms norms;
	std::vector<std::pair<double, OperatorNorms>> sweep;
};

/// Smallest candidate L whose measured operator norms are both < 1/2.
LChoice choose_L(const SampledSet &lambda, const SampledSet &mu, double a, double b,
		 std::span<const double> candidates, const InterpolationOptions &opt = {});

struct VanishingFunction {
	Interpolant f;
	double L = 0.0;
	OperatorNorms norms;
	/// Number of Hermite seeds that were corrected and combined.
	std::size_t seeds = 0;
	Eigen::VectorXcd weights;
	std::size_t constraints = 0;
	/// max |f| over the windowed Lambda and |hat f| over the windowed M.
	double time_residual = 0.0;
	double freq_residual = 0.0;
	double smallest_singular = 0.0;
};

/// Non-zero f with f = 0 on Lambda and hat f = 0 on M inside the window,
/// normalised to sup 1 on a time grid. Each Hermite seed is corrected to
/// vanish on the points beyond L; a null combination of the corrected seeds
/// then clears the points inside L. seed_count = 0 picks constraints + 2.
VanishingFunction assemble_vanishing_function(const SampledSet &lambda, const SampledSet &mu,
					      double a, double b, std::size_t seed_count = 0,
					      const InterpolationOptions &opt = {});

/// Default L candidates 0, 0.25, ..., window - 0.5.
std::vector<double> default_L_candidates(double window);

} // namespace pauli

#endif
