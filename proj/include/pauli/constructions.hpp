#ifndef PAULI_CONSTRUCTIONS_HPP
#define PAULI_CONSTRUCTIONS_HPP

#include "pauli/interpolation.hpp"
#include "pauli/product_model.hpp"
#include "pauli/sequences.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace pauli {

enum class PairKind { time, frequency_matched, non_weak, zero_partner };

std::string to_string(PairKind k);
PairKind pair_kind_from_string(const std::string &s);

/// Where a pair came from and with which parameters.
struct Provenance {
	PairKind kind = PairKind::time;
	double A = 0.0;
	double epsilon = 0.0;
	/// Gaussian rates of the two factors (time side, frequency side).
	double phi_rate = 0.0;
	double psi_rate = 0.0;
	double phi_freq_rate = 0.0;
	double psi_freq_rate = 0.0;
	double time_density = 0.0;
	double freq_density = 0.0;
	double split_fraction = 0.5;
	std::uint64_t seed = 0;
};

/// One factor of a pair: a product model or an assembled interpolant,
/// together with its time and frequency evaluators.
struct PairFactor {
	std::optional<ProductModel> model;
	std::optional<Interpolant> interpolant;
	Evaluator time;
	/// hat of the factor, evaluated at real arguments.
	Evaluator freq;

	static PairFactor from_model(const ProductModel &m, double max_xi = 8.0);
	static PairFactor from_interpolant(const Interpolant &f);
	static PairFactor zero();
	bool is_zero() const { return !model && !interpolant; }
};

/// f = Phi + e^{i theta} Psi and g = Phi - e^{i theta} Psi, except in the
/// zero-partner branch, where f = Phi and g = 0.
struct PairConstruction {
	PairFactor phi;
	PairFactor psi;
	double theta = 0.0;
	Provenance provenance;
	/// The time and frequency sets the pair was built for.
	SampledSet lambda;
	SampledSet mu;

	cd f(cd z) const;
	cd g(cd z) const;
	cd f_hat(double xi) const;
	cd g_hat(double xi) const;
	Evaluator f_evaluator() const;
	Evaluator g_evaluator() const;
	Evaluator f_hat_evaluator() const;
	Evaluator g_hat_evaluator() const;
};

/// Largest eps = 2^-k (k = 0..30) with 1.1 kappa < sqrt(gamma (1/A - gamma)),
/// gamma = base + eps, that keeps at least half of the Fourier-rate headroom
/// over A available as eps -> 0. Empty when none qualifies.
std::optional<double> choose_epsilon(double A, double base_rate, double kappa);

/// Fourier decay rate gamma / (gamma^2 + kappa^2) of e^{-gamma pi z^2}
/// times a power-4 product with zero density kappa in z^2.
double product_freq_rate(double gamma, double kappa);

/**
 * Time-side pair: Phi vanishes on the even-indexed points, Psi on the
 * odd-indexed points of each half-line, both with Gaussian rate
 * sigma_A + eps. eps <= 0 picks it automatically. Throws Infeasible when
 * the measured Fourier decay of either factor falls below A.
 */
PairConstruction build_time_pair(const SampledSet &lambda, double A, double epsilon = 0.0);

/**
 * Frequency-matched pair on +-Lambda: Phi even and Psi odd (the latter with
 * the factor z), both real, so hat Phi is real and hat Psi imaginary and
 * |hat f| = |hat g| everywhere. For A >= sqrt(3)/2 the partner is g = 0 and
 * f vanishes on Lambda with hat f vanishing on Lambda.
 */
PairConstruction build_frequency_matched_pair(const SampledSet &lambda, double A,
					      double epsilon = 0.0,
					      const InterpolationOptions &opt = {});

/**
 * Pair with |f| = |g| on Lambda and |hat f| = |hat g| on M but equal moduli
 * on neither side globally. Phi vanishes on (Lambda_1, M_1), Psi on
 * (Lambda_2, M_2); both come from assembled vanishing functions.
 */
PairConstruction build_nonweak_pair(const SampledSet &lambda, const SampledSet &mu, double A,
				    double epsilon = 0.0, const InterpolationOptions &opt = {});

struct PhaseChoice {
	double theta = 0.0;
	/// min over the used sides of max |Re(Phi conj(e^{i theta} Psi))|.
	double witness = 0.0;
};

/// 64-point sweep of theta over [0, pi) plus golden-section refinement.
/// Frequency grids are used only when the hat evaluators are given.
PhaseChoice select_phase(const Evaluator &phi, const Evaluator &psi,
			 std::span<const double> time_grid, const Evaluator &phi_hat = {},
			 const Evaluator &psi_hat = {}, std::span<const double> freq_grid = {});

} // namespace pauli

#endif
