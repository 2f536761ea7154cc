#include "pauli/product_model.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_gamma.h>
#include <gsl/gsl_sf_zeta.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <mutex>

namespace pauli {

cd unit_phase(double theta)
{
	double r = std::remainder(theta, 2.0 * pi);
	double k = std::nearbyint(r / (pi / 2.0));
	if (std::abs(r - k * (pi / 2.0)) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(theta))) {
		switch ((static_cast<int>(k) % 4 + 4) % 4) {
		case 0:
			return {1.0, 0.0};
		case 1:
			return {0.0, 1.0};
		case 2:
			return {-1.0, 0.0};
		default:
			return {0.0, -1.0};
		}
	}
	return {std::cos(r), std::sin(r)};
}

namespace {

void silence_gsl()
{
	static std::once_flag once;
	std::call_once(once, [] { gsl_set_error_handler_off(); });
}

constexpr double ln2 = std::numbers::ln2;

// Product accumulator: value = mant * exp(log_scale), mant renormalised by
// powers of two so real inputs stay exactly real.
struct Accum {
	cd mant{1.0, 0.0};
	double log_scale = 0.0;
	bool zero = false;

	void mul(cd f)
	{
		mant *= f;
		double m = std::max(std::abs(mant.real()), std::abs(mant.imag()));
		if (m == 0.0) {
			zero = true;
			return;
		}
		int e;
		std::frexp(m, &e);
		if (e > 64 || e < -64) {
			mant = {std::ldexp(mant.real(), -e), std::ldexp(mant.imag(), -e)};
			log_scale += e * ln2;
		}
	}
};

// Factor with exact vanishing at +-rho: (rho - z)(rho + z)[(rho^2 + z^2)] / rho^m.
cd vanishing_factor(double rho, int power, cd z)
{
	cd f = (rho - z) * (rho + z) / (rho * rho);
	if (power == 4)
		f *= (rho * rho + z * z) / (rho * rho);
	return f;
}

// The factor divided by (z - lambda) for lambda = +rho (sign > 0) or -rho.
cd vanishing_quotient(double rho, int power, int sign, cd z)
{
	cd q = sign > 0 ? -(rho + z) : (rho - z);
	q /= rho * rho;
	if (power == 4)
		q *= (rho * rho + z * z) / (rho * rho);
	return q;
}

struct TailValue {
	double log_mag = 0.0;
	cd unit{1.0, 0.0};
	bool zero = false;
	double error = 0.0;
};

TailValue lattice_tail(const LatticeTail &lt, int power, cd z)
{
	silence_gsl();
	TailValue t;
	const double c = lt.first_index + lt.shift;
	cd u = lt.density * (power == 2 ? z : z * z);
	if (u == cd(0.0))
		return t;
	gsl_sf_result lg_c;
	double sgn_c;
	gsl_sf_lngamma_sgn_e(c, &lg_c, &sgn_c);
	if (u.imag() == 0.0) {
		gsl_sf_result lm, lp;
		double sm, sp;
		int s1 = gsl_sf_lngamma_sgn_e(c - u.real(), &lm, &sm);
		int s2 = gsl_sf_lngamma_sgn_e(c + u.real(), &lp, &sp);
		if (s1 != GSL_SUCCESS || s2 != GSL_SUCCESS || sm == 0.0 || sp == 0.0) {
			// pole of 1/Gamma: an omitted zero
			t.zero = true;
			return t;
		}
		t.log_mag = 2.0 * lg_c.val - (lm.val + lp.val);
		t.unit = {sm * sp, 0.0};
		t.error = 2.0 * lg_c.err + lm.err + lp.err;
		return t;
	}
	gsl_sf_result lm, am, lp, ap;
	int s1 = gsl_sf_lngamma_complex_e(c - u.real(), -u.imag(), &lm, &am);
	int s2 = gsl_sf_lngamma_complex_e(c + u.real(), u.imag(), &lp, &ap);
	if (s1 != GSL_SUCCESS || s2 != GSL_SUCCESS)
		throw SolverFailed("lattice tail: complex log-gamma failed");
	t.log_mag = 2.0 * lg_c.val - (lm.val + lp.val);
	t.unit = unit_phase(-(am.val + ap.val));
	t.error = lg_c.err * 2.0 + lm.err + lp.err + am.err + ap.err;
	return t;
}

TailValue power_sum_tail(const ProductModel &m, cd z)
{
	TailValue t;
	cd w = m.power == 2 ? z * z : (z * z) * (z * z);
	cd corr = -(w * m.tail_sum1 + w * w * m.tail_sum2 / 2.0);
	t.log_mag = corr.real();
	t.unit = unit_phase(corr.imag());
	double aw = std::abs(w);
	double lead = aw * std::sqrt(m.tail_sum2);
	if (lead >= 1.0)
		t.error = std::numeric_limits<double>::infinity();
	else
		t.error = aw * aw * aw * std::pow(m.tail_sum2, 1.5) / (3.0 * (1.0 - lead));
	return t;
}

// Everything except amplitude/phase; optionally skips zero index k (sign
// selects +rho_k or -rho_k) or the z^sigma factor (k = npos, sign = 0).
struct Partial {
	Accum acc;
	double error = 0.0;
};

constexpr std::size_t no_skip = std::numeric_limits<std::size_t>::max();

Partial accumulate(const ProductModel &m, cd z, std::size_t skip, int skip_sign)
{
	Partial p;
	Accum &a = p.acc;
	// gaussian
	cd z2 = z * z;
	a.log_scale += -m.gamma * pi * z2.real();
	if (z2.imag() != 0.0 && m.gamma != 0.0)
		a.mul(unit_phase(-m.gamma * pi * z2.imag()));
	if (m.sigma == 1 && !(skip == no_skip && skip_sign == 0))
		a.mul(z);
	for (std::size_t n = 0; n < m.zeros.size(); ++n) {
		if (n == skip)
			a.mul(vanishing_quotient(m.zeros[n], m.power, skip_sign, z));
		else
			a.mul(vanishing_factor(m.zeros[n], m.power, z));
		if (a.zero)
			return p;
	}
	TailValue t;
	if (m.lattice)
		t = lattice_tail(*m.lattice, m.power, z);
	else if (m.tail_sum1 > 0.0 || m.tail_sum2 > 0.0)
		t = power_sum_tail(m, z);
	if (t.zero) {
		a.zero = true;
		return p;
	}
	a.log_scale += t.log_mag;
	a.mul(t.unit);
	p.error = t.error;
	return p;
}

EvalResult finish(cd amplitude, double phase, const Partial &p)
{
	EvalResult r;
	r.error = p.error;
	if (p.acc.zero || amplitude == cd(0.0)) {
		r.value = 0.0;
		r.log_magnitude = -std::numeric_limits<double>::infinity();
		return r;
	}
	double am = std::abs(p.acc.mant);
	double ca = std::abs(amplitude);
	r.unit = (amplitude / ca) * unit_phase(phase) * (p.acc.mant / am);
	r.log_magnitude = std::log(ca) + std::log(am) + p.acc.log_scale;
	if (r.log_magnitude > 709.0) {
		r.overflow = true;
		r.value = r.unit * std::numeric_limits<double>::infinity();
	} else if (r.log_magnitude < -745.0) {
		r.underflow = true;
		r.value = 0.0;
	} else {
		// real scale factor keeps real products exactly real
		r.value = r.unit * std::exp(r.log_magnitude);
	}
	return r;
}

// Locates lambda among the retained real zeros.
std::pair<std::size_t, int> locate_zero(const ProductModel &m, double lambda)
{
	if (lambda == 0.0) {
		if (m.sigma == 1)
			return {no_skip, 0};
		throw NotAZero("derivative_at_zero: 0 is not a zero of the model");
	}
	double mag = std::abs(lambda);
	auto it = std::lower_bound(m.zeros.begin(), m.zeros.end(), mag);
	for (auto cand : {it, it == m.zeros.begin() ? it : it - 1}) {
		if (cand != m.zeros.end() && std::abs(*cand - mag) <= 1e-13 * mag)
			return {static_cast<std::size_t>(cand - m.zeros.begin()), lambda > 0 ? 1 : -1};
	}
	throw NotAZero("derivative_at_zero: point is not a retained zero");
}

} // namespace

void ProductModel::validate() const
{
	if (power != 2 && power != 4)
		throw DomainError("ProductModel: power must be 2 or 4");
	if (sigma != 0 && sigma != 1)
		throw DomainError("ProductModel: sigma must be 0 or 1");
	if (!(gamma >= 0.0) || !std::isfinite(gamma))
		throw DomainError("ProductModel: gamma must be finite and nonnegative");
	for (std::size_t i = 0; i < zeros.size(); ++i) {
		if (!(zeros[i] > 0.0) || !std::isfinite(zeros[i]))
			throw DomainError("ProductModel: zeros must be positive and finite");
		if (i > 0 && !(zeros[i] > zeros[i - 1]))
			throw DomainError("ProductModel: zeros must be strictly increasing");
	}
	if (!(tail_sum1 >= 0.0 && tail_sum2 >= 0.0) || !std::isfinite(tail_sum1) ||
	    !std::isfinite(tail_sum2))
		throw DomainError("ProductModel: tail sums must be finite and nonnegative");
	if (lattice && !(lattice->density > 0.0 && lattice->first_index + lattice->shift > 0.0))
		throw DomainError("ProductModel: invalid lattice tail");
}

void fill_power_sums(ProductModel &model)
{
	if (!model.lattice)
		return;
	silence_gsl();
	const auto &lt = *model.lattice;
	double c = lt.first_index + lt.shift;
	double k2 = lt.density * lt.density;
	model.tail_sum1 = k2 * gsl_sf_hzeta(2.0, c);
	model.tail_sum2 = k2 * k2 * gsl_sf_hzeta(4.0, c);
}

ProductModel lattice_model(const Continuation &zeros, std::size_t count, int power,
			   double gamma, int sigma)
{
	if (std::abs(zeros.p - power / 2.0) > 1e-12)
		throw DomainError("lattice_model: continuation exponent must equal power/2");
	ProductModel m;
	m.power = power;
	m.gamma = gamma;
	m.sigma = sigma;
	for (std::size_t i = 1; i <= count; ++i)
		m.zeros.push_back(zeros.point(static_cast<double>(i)));
	m.lattice = LatticeTail{zeros.density, zeros.shift, static_cast<double>(count + 1)};
	fill_power_sums(m);
	m.validate();
	return m;
}

EvalResult evaluate(const ProductModel &model, cd z)
{
	return finish(model.amplitude, model.phase, accumulate(model, z, no_skip, 1));
}

cd eval_value(const ProductModel &model, cd z)
{
	return evaluate(model, z).value;
}

double log_abs(const ProductModel &model, cd z)
{
	return evaluate(model, z).log_magnitude;
}

double validity_radius(const ProductModel &model, double tol)
{
	if (model.lattice || model.tail_sum2 <= 0.0)
		return std::numeric_limits<double>::infinity();
	// |w|^3 T^(3/2) / 3 < 0.1 tol, w = z^m
	double w = std::cbrt(0.3 * tol / std::pow(model.tail_sum2, 1.5));
	return std::pow(w, 1.0 / model.power);
}

cd derivative_at_zero(const ProductModel &model, double lambda)
{
	auto [k, sign] = locate_zero(model, lambda);
	return finish(model.amplitude, model.phase, accumulate(model, lambda, k, sign)).value;
}

cd divided_basis_eval(const ProductModel &model, double lambda, cd z)
{
	auto [k, sign] = locate_zero(model, lambda);
	Partial num = accumulate(model, z, k, sign);
	Partial den = accumulate(model, lambda, k, sign);
	if (den.acc.zero)
		throw Degenerate("divided_basis_eval: derivative vanishes at the zero");
	if (num.acc.zero)
		return 0.0;
	double logr = num.acc.log_scale - den.acc.log_scale;
	if (logr < -745.0)
		return 0.0;
	return num.acc.mant / den.acc.mant * std::exp(logr);
}

Evaluator as_evaluator(const ProductModel &model)
{
	auto shared = std::make_shared<const ProductModel>(model);
	return [shared](cd z) { return eval_value(*shared, z); };
}

Evaluator divided_basis_evaluator(const ProductModel &model, double lambda)
{
	auto shared = std::make_shared<const ProductModel>(model);
	locate_zero(*shared, lambda);
	return [shared, lambda](cd z) { return divided_basis_eval(*shared, lambda, z); };
}

} // namespace pauli
