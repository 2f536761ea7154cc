#include "pauli/asymptotics.hpp"
#include "pauli/parallel.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

namespace pauli {

bool ZeroMask::masked(cd z) const
{
	if (c <= 0.0)
		return false;
	double rad = c / (1.0 + std::abs(z));
	for (const cd &w : zeros)
		if (std::abs(z - w) < rad)
			return true;
	return false;
}

std::vector<cd> model_zeros(const ProductModel &model, double r_max)
{
	std::vector<double> mags;
	for (double rho : model.zeros)
		if (rho <= r_max)
			mags.push_back(rho);
	if (model.lattice) {
		const auto &lt = *model.lattice;
		for (double n = lt.first_index;; n += 1.0) {
			double rho = std::pow((n + lt.shift) / lt.density, 2.0 / model.power);
			if (rho > r_max)
				break;
			mags.push_back(rho);
		}
	}
	std::vector<cd> out;
	if (model.sigma == 1)
		out.emplace_back(0.0, 0.0);
	for (double rho : mags) {
		out.emplace_back(rho, 0.0);
		out.emplace_back(-rho, 0.0);
		if (model.power == 4) {
			out.emplace_back(0.0, rho);
			out.emplace_back(0.0, -rho);
		}
	}
	return out;
}

ZeroMask model_mask(const ProductModel &model, double r_max, double c)
{
	return ZeroMask{model_zeros(model, r_max + 1.0), c};
}

std::vector<double> radial_grid(double lo, double hi, std::size_t count)
{
	if (count < 2 || !(hi > lo))
		throw DomainError("radial_grid: need count >= 2 and hi > lo");
	std::vector<double> r(count);
	for (std::size_t i = 0; i < count; ++i)
		r[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
	return r;
}

namespace {

struct LineFit {
	double slope = 0.0;
	double rms = 0.0;
};

// y ~ c + slope x + k log x: the log term absorbs the algebraic prefactor
// that sine-type products carry along every ray
LineFit fit_line(const std::vector<double> &x, const std::vector<double> &y)
{
	const auto n = static_cast<Eigen::Index>(x.size());
	Eigen::MatrixXd M(n, 3);
	Eigen::VectorXd v(n);
	for (Eigen::Index i = 0; i < n; ++i) {
		auto k = static_cast<std::size_t>(i);
		M(i, 0) = 1.0;
		M(i, 1) = x[k];
		M(i, 2) = std::log(x[k]);
		v(i) = y[k];
	}
	Eigen::VectorXd c = M.colPivHouseholderQr().solve(v);
	LineFit f;
	f.slope = c(1);
	f.rms = std::sqrt((v - M * c).squaredNorm() / static_cast<double>(n));
	return f;
}

} // namespace

IndicatorEstimate indicator_estimate(const LogEvaluator &log_f, double theta,
				     std::span<const double> radii, const ZeroMask &mask,
				     std::size_t bins)
{
	if (bins < 4)
		throw DomainError("indicator_estimate: need at least 4 bins");
	IndicatorEstimate est;
	est.theta = theta;
	const cd dir = unit_phase(theta);
	std::vector<double> r2, lv;
	for (double r : radii) {
		cd z = r * dir;
		if (mask.masked(z)) {
			++est.masked;
			continue;
		}
		double v = log_f(z);
		if (!std::isfinite(v)) {
			++est.masked;
			continue;
		}
		r2.push_back(r * r);
		lv.push_back(v);
	}
	if (r2.empty())
		throw InsufficientData("indicator_estimate: every node is masked");
	est.used = r2.size();
	double lo = *std::min_element(r2.begin(), r2.end());
	double hi = *std::max_element(r2.begin(), r2.end());
	if (!(hi > lo))
		throw InsufficientData("indicator_estimate: unmasked nodes have no spread");
	est.r_lo = std::sqrt(lo);
	est.r_hi = std::sqrt(hi);

	std::vector<double> bx(bins), by(bins, -std::numeric_limits<double>::infinity());
	for (std::size_t i = 0; i < r2.size(); ++i) {
		auto b = static_cast<std::size_t>((r2[i] - lo) / (hi - lo) * static_cast<double>(bins));
		b = std::min(b, bins - 1);
		if (lv[i] > by[b]) {
			by[b] = lv[i];
			bx[b] = r2[i];
		}
	}
	std::vector<double> x, y;
	for (std::size_t b = 0; b < bins; ++b)
		if (std::isfinite(by[b])) {
			x.push_back(bx[b]);
			y.push_back(by[b]);
		}
	if (x.size() < 6)
		throw InsufficientData("indicator_estimate: too few occupied bins");
	LineFit full = fit_line(x, y);
	std::vector<double> xo(x.begin() + static_cast<std::ptrdiff_t>(x.size() / 2), x.end());
	std::vector<double> yo(y.begin() + static_cast<std::ptrdiff_t>(y.size() / 2), y.end());
	LineFit outer = fit_line(xo, yo);
	est.h = full.slope;
	est.residual = full.rms / (hi - lo) + std::abs(full.slope - outer.slope);
	return est;
}

IndicatorEstimate indicator_estimate(const ProductModel &model, double theta,
				     std::span<const double> radii, const ZeroMask &mask,
				     std::size_t bins)
{
	return indicator_estimate([&model](cd z) { return log_abs(model, z); }, theta, radii,
				  mask, bins);
}

std::vector<IndicatorEstimate> indicator_sweep(const ProductModel &model,
					       std::span<const double> thetas,
					       std::span<const double> radii, const ZeroMask &mask,
					       std::size_t bins)
{
	std::vector<IndicatorEstimate> out(thetas.size());
	parallel_for(thetas.size(), [&](std::size_t i) {
		out[i] = indicator_estimate(model, thetas[i], radii, mask, bins);
	});
	return out;
}

ConvexityCheck trig_convexity_check(std::span<const IndicatorEstimate> est, double p,
				    double abs_slack)
{
	std::vector<IndicatorEstimate> e(est.begin(), est.end());
	std::sort(e.begin(), e.end(),
		  [](const auto &a, const auto &b) { return a.theta < b.theta; });
	ConvexityCheck out;
	for (std::size_t i = 0; i < e.size(); ++i)
		for (std::size_t k = i + 2; k < e.size(); ++k) {
			double span = e[k].theta - e[i].theta;
			if (!(span < pi / p))
				break;
			double den = std::sin(p * span);
			for (std::size_t j = i + 1; j < k; ++j) {
				double w1 = std::sin(p * (e[k].theta - e[j].theta)) / den;
				double w2 = std::sin(p * (e[j].theta - e[i].theta)) / den;
				double rhs = w1 * e[i].h + w2 * e[k].h;
				double slack = e[j].residual + std::abs(w1) * e[i].residual +
					       std::abs(w2) * e[k].residual +
					       abs_slack * (1.0 + std::abs(e[j].h));
				double v = e[j].h - rhs;
				if (v > out.worst) {
					out.worst = v;
					out.worst_theta = e[j].theta;
				}
				if (v > slack)
					out.pass = false;
			}
		}
	return out;
}

ZeroDensityCheck zero_density_indicator_check(std::span<const IndicatorEstimate> est,
					      double density, double p, double rel_tol)
{
	auto find = [&](double t) -> const IndicatorEstimate * {
		for (const auto &e : est)
			if (std::abs(e.theta - t) < 1e-12)
				return &e;
		return nullptr;
	};
	const IndicatorEstimate *zero = find(0.0);
	if (!zero)
		throw InsufficientData("zero_density_indicator_check: theta = 0 not sampled");
	ZeroDensityCheck out;
	for (const auto &e : est) {
		if (e.theta < -1e-12 || e.theta > pi / p + 1e-12)
			continue;
		const IndicatorEstimate *mirror = find(-e.theta);
		double rhs = e.h;
		double res = e.residual;
		if (mirror && mirror->h > rhs) {
			rhs = mirror->h;
			res = mirror->residual;
		}
		double lhs = density * pi * std::sin(p * e.theta) + zero->h * std::cos(p * e.theta);
		double slack = res + zero->residual + rel_tol * (density * pi + std::abs(zero->h));
		double m = rhs - lhs + slack;
		if (m < out.margin) {
			out.margin = m;
			out.worst_theta = e.theta;
		}
		if (m < 0.0)
			out.pass = false;
	}
	return out;
}

DecayPredicate fourier_decay_predicate(const ProductModel &model, double b, double xi_lo,
				       double xi_hi, std::size_t samples)
{
	if (!(model.gamma > 0.0))
		throw DomainError("fourier_decay_predicate: model needs a Gaussian factor");
	if (!(xi_hi > xi_lo && xi_lo >= 0.0) || samples < 16)
		throw DomainError("fourier_decay_predicate: bad frequency window");
	QuadratureSpec spec = make_spec(model.gamma, std::max(0.1, 0.5 * b), xi_hi, 1e-16);
	TabulatedTransform ft(as_evaluator(model), spec);
	std::vector<double> xi(samples), lm(samples);
	for (std::size_t i = 0; i < samples; ++i)
		xi[i] = xi_lo + (xi_hi - xi_lo) * static_cast<double>(i) / static_cast<double>(samples - 1);
	parallel_for(samples, [&](std::size_t i) {
		TransformValue v = ft(xi[i]);
		// samples buried in quadrature noise carry no rate information
		double mag = std::abs(v.value);
		lm[i] = mag > 10.0 * v.error ? std::log(mag) : -std::numeric_limits<double>::infinity();
	});
	DecayPredicate out;
	out.fit = upper_envelope_fit(xi, lm, 12, true);
	out.rate = out.fit.rate;
	out.pass = out.rate >= b;
	return out;
}

} // namespace pauli
