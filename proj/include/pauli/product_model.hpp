#ifndef PAULI_PRODUCT_MODEL_HPP
#define PAULI_PRODUCT_MODEL_HPP

#include "pauli/common.hpp"
#include "pauli/sequences.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pauli {

/// Omitted zeros continuing the retained ones on a lattice: the n-th zero,
/// n >= first_index, satisfies rho_n^(m/2) = (n + shift) / density where m
/// is the model's factor power. The tail product then has the closed form
/// Gamma(c)^2 / (Gamma(c - u) Gamma(c + u)), c = first_index + shift,
/// u = density * z^(m/2).
struct LatticeTail {
	double density = 1.0;
	double shift = 0.0;
	double first_index = 1.0;
};

/**
 * c e^{i theta} z^sigma e^{-gamma pi z^2} prod_n (1 - (z/rho_n)^m) x tail.
 *
 * m = `power` is 2 (real zeros at +-rho) or 4 (zeros at +-rho and +-i rho).
 * The omitted zeros enter either through `lattice` (exact closed form) or
 * through the power sums tail_sum1 = sum rho^-m and tail_sum2 = sum rho^-2m
 * (second-order log correction). A model with neither is a finite product.
 */
struct ProductModel {
	cd amplitude{1.0, 0.0};
	double phase = 0.0;
	double gamma = 0.0;
	int sigma = 0;
	int power = 2;
	std::vector<double> zeros;
	double tail_sum1 = 0.0;
	double tail_sum2 = 0.0;
	std::optional<LatticeTail> lattice;
	std::string meta;

	void validate() const;
	bool has_tail() const { return lattice.has_value() || tail_sum1 > 0.0 || tail_sum2 > 0.0; }
};

/// Builds the model with zeros from the first `count` points of a
/// continuation whose exponent matches power/2, with the rest attached as
/// a lattice tail (power sums filled in as well).
ProductModel lattice_model(const Continuation &zeros, std::size_t count, int power,
			   double gamma = 0.0, int sigma = 0);

/// Fills tail_sum1/tail_sum2 from `lattice` via Hurwitz zeta values.
void fill_power_sums(ProductModel &model);

struct EvalResult {
	cd value;
	double log_magnitude = 0.0;
	/// Unit-modulus phase factor of the value.
	cd unit{1.0, 0.0};
	/// Relative error bound from the tail treatment.
	double error = 0.0;
	bool overflow = false;
	bool underflow = false;
};

EvalResult evaluate(const ProductModel &model, cd z);
cd eval_value(const ProductModel &model, cd z);
double log_abs(const ProductModel &model, cd z);

/// Largest |z| at which the omitted third-order tail term stays below
/// 0.1 * tol. Infinite for lattice tails and finite products.
double validity_radius(const ProductModel &model, double tol = 1e-12);

/// Exact derivative at a retained real zero (+-rho_k, or 0 when sigma = 1).
cd derivative_at_zero(const ProductModel &model, double lambda);

/// Phi(z) / (Phi'(lambda) (z - lambda)). The removable singularity is
/// cancelled algebraically, so the value is exact at z = lambda.
cd divided_basis_eval(const ProductModel &model, double lambda, cd z);

/// Shares an immutable copy of the model.
Evaluator as_evaluator(const ProductModel &model);
Evaluator divided_basis_evaluator(const ProductModel &model, double lambda);

} // namespace pauli

#endif
