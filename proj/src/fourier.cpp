#include "pauli/fourier.hpp"
#include "pauli/parallel.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

namespace pauli {

std::vector<double> uniform_grid(double lo, double hi, std::size_t count)
{
	if (count < 2 || !(hi > lo))
		throw DomainError("uniform_grid: need count >= 2 and hi > lo");
	std::vector<double> g(count);
	for (std::size_t i = 0; i < count; ++i)
		g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
	return g;
}

void QuadratureSpec::validate() const
{
	if (!(window > 0.0) || !std::isfinite(window))
		throw DomainError("QuadratureSpec: window must be positive");
	if (intervals < 8 || intervals % 4 != 0)
		throw DomainError("QuadratureSpec: intervals must be a multiple of 4, at least 8");
}

QuadratureSpec make_spec(double time_rate, double freq_rate, double max_xi, double tol)
{
	if (!(time_rate > 0.0 && freq_rate > 0.0 && tol > 0.0 && max_xi >= 0.0))
		throw DomainError("make_spec: rates and tolerance must be positive");
	QuadratureSpec s;
	s.window = std::sqrt(std::log(100.0 / tol) / (pi * time_rate));
	// the half-resolution rule must also resolve max_xi, hence the factor 2
	double inv_h = 2.0 * (max_xi + std::sqrt(std::log(1.0 / tol) / (pi * freq_rate)));
	auto n = static_cast<std::size_t>(std::ceil(2.0 * s.window * inv_h));
	s.intervals = std::max<std::size_t>(16, (n + 3) / 4 * 4);
	return s;
}

TabulatedTransform::TabulatedTransform(const Evaluator &f, const QuadratureSpec &spec)
	: spec_(spec)
{
	spec_.validate();
	samples_.resize(spec_.intervals + 1);
	parallel_for(samples_.size(), [&](std::size_t k) { samples_[k] = f(node(k)); });
	init_floor();
}

TabulatedTransform::TabulatedTransform(std::vector<cd> samples, const QuadratureSpec &spec)
	: spec_(spec), samples_(std::move(samples))
{
	spec_.validate();
	if (samples_.size() != spec_.intervals + 1)
		throw DomainError("TabulatedTransform: sample count does not match the spec");
	init_floor();
}

void TabulatedTransform::init_floor()
{
	tail_ = (std::abs(samples_.front()) + std::abs(samples_.back())) * spec_.window;
	double mass = 0.0;
	for (const cd &v : samples_)
		mass += std::abs(v);
	roundoff_ = 16.0 * std::numeric_limits<double>::epsilon() * spec_.step() * mass;
}

double TabulatedTransform::node(std::size_t k) const
{
	auto half = static_cast<std::ptrdiff_t>(spec_.intervals / 2);
	return static_cast<double>(static_cast<std::ptrdiff_t>(k) - half) * spec_.step();
}

cd TabulatedTransform::sum(double xi, int sign, std::size_t stride) const
{
	const std::size_t center = spec_.intervals / 2;
	const std::size_t m = center / stride;
	const double H = spec_.step() * static_cast<double>(stride);
	const double s = sign >= 0 ? 1.0 : -1.0;

	// g(j) = f(jH) e^{i s 2 pi jH xi}; pairs +-j share cos/sin so even real
	// data gives an exactly real sum
	auto g = [&](std::ptrdiff_t j) {
		double x = static_cast<double>(j) * H;
		double th = 2.0 * pi * x * xi;
		cd e{std::cos(th), s * std::sin(th)};
		return samples_[static_cast<std::size_t>(static_cast<std::ptrdiff_t>(center) + j * static_cast<std::ptrdiff_t>(stride))] * e;
	};

	cd total = samples_[center];
	for (std::size_t j = 1; j <= m; ++j) {
		double x = static_cast<double>(j) * H;
		double th = 2.0 * pi * x * xi;
		double c = std::cos(th), sn = s * std::sin(th);
		cd fp = samples_[center + j * stride];
		cd fm = samples_[center - j * stride];
		double w = j == m ? 0.5 : 1.0;
		cd pair{(fp.real() + fm.real()) * c - (fp.imag() - fm.imag()) * sn,
			(fp.imag() + fm.imag()) * c + (fp.real() - fm.real()) * sn};
		total += w * pair;
	}
	total *= H;

	if (spec_.rule == QuadratureRule::endpoint_corrected && m >= 4) {
		auto M = static_cast<std::ptrdiff_t>(m);
		cd d1 = (g(M) - g(M - 1)) - (g(-M + 1) - g(-M));
		cd d2 = (g(M) - 2.0 * g(M - 1) + g(M - 2)) + (g(-M + 2) - 2.0 * g(-M + 1) + g(-M));
		cd d3 = (g(M) - 3.0 * g(M - 1) + 3.0 * g(M - 2) - g(M - 3)) -
			(g(-M + 3) - 3.0 * g(-M + 2) + 3.0 * g(-M + 1) - g(-M));
		total -= H * (d1 / 12.0 + d2 / 24.0 + 19.0 * d3 / 720.0);
	}
	return total;
}

TransformValue TabulatedTransform::operator()(double xi, int sign) const
{
	cd fine = sum(xi, sign, 1);
	cd coarse = sum(xi, sign, 2);
	TransformValue r{fine, std::max({std::abs(fine - coarse), tail_, roundoff_})};
	if (spec_.tolerance > 0.0 && r.error > spec_.tolerance)
		throw ToleranceNotMet("transform: error estimate exceeds tolerance", r.error);
	return r;
}

std::vector<TransformValue> TabulatedTransform::at(std::span<const double> xi, int sign) const
{
	std::vector<TransformValue> out(xi.size());
	parallel_for(xi.size(), [&](std::size_t i) { out[i] = (*this)(xi[i], sign); });
	return out;
}

std::vector<TransformValue> transform(const Evaluator &f, const QuadratureSpec &spec,
				      std::span<const double> xi)
{
	return TabulatedTransform(f, spec).at(xi);
}

TransformValue transform_at(const Evaluator &f, const QuadratureSpec &spec, double xi)
{
	return TabulatedTransform(f, spec)(xi);
}

EnvelopeFit envelope_fit(std::span<const double> x, std::span<const double> log_mag,
			 std::span<const double> weights, bool with_power)
{
	if (x.size() != log_mag.size() || (!weights.empty() && weights.size() != x.size()))
		throw DomainError("envelope_fit: size mismatch");
	std::vector<std::size_t> idx;
	for (std::size_t i = 0; i < x.size(); ++i) {
		double w = weights.empty() ? 1.0 : weights[i];
		if (std::isfinite(log_mag[i]) && w > 0.0 && (!with_power || x[i] != 0.0))
			idx.push_back(i);
	}
	const std::size_t min_points = with_power ? 4 : 8;
	if (idx.size() < min_points)
		throw InsufficientData("envelope_fit: too few finite samples");

	const Eigen::Index n = static_cast<Eigen::Index>(idx.size());
	const Eigen::Index cols = with_power ? 3 : 2;
	Eigen::MatrixXd design(n, cols);
	Eigen::VectorXd rhs(n), sw(n);
	EnvelopeFit fit;
	fit.window_lo = std::numeric_limits<double>::infinity();
	double x2_mean = 0.0, x2_sq = 0.0, wsum = 0.0;
	for (Eigen::Index r = 0; r < n; ++r) {
		std::size_t i = idx[static_cast<std::size_t>(r)];
		double w = weights.empty() ? 1.0 : weights[i];
		sw(r) = std::sqrt(w);
		design(r, 0) = 1.0;
		design(r, 1) = -pi * x[i] * x[i];
		if (with_power)
			design(r, 2) = std::log(std::abs(x[i]));
		rhs(r) = log_mag[i];
		x2_mean += w * x[i] * x[i];
		x2_sq += w * x[i] * x[i] * x[i] * x[i];
		wsum += w;
		fit.window_lo = std::min(fit.window_lo, std::abs(x[i]));
		fit.window_hi = std::max(fit.window_hi, std::abs(x[i]));
	}
	x2_mean /= wsum;
	if (!(x2_sq / wsum - x2_mean * x2_mean > 1e-14 * (x2_sq / wsum)))
		throw Degenerate("envelope_fit: x^2 has no spread");
	Eigen::MatrixXd wd = sw.asDiagonal() * design;
	Eigen::VectorXd wr = sw.cwiseProduct(rhs);
	Eigen::VectorXd coef = wd.colPivHouseholderQr().solve(wr);
	fit.intercept = coef(0);
	fit.rate = coef(1);
	if (with_power)
		fit.power = coef(2);
	Eigen::VectorXd res = wr - wd * coef;
	fit.residual = std::sqrt(res.squaredNorm() / wsum);
	return fit;
}

EnvelopeFit upper_envelope_fit(std::span<const double> x, std::span<const double> log_mag,
			       std::size_t bins, bool with_power)
{
	if (x.size() != log_mag.size())
		throw DomainError("upper_envelope_fit: size mismatch");
	double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
	for (std::size_t i = 0; i < x.size(); ++i) {
		if (!std::isfinite(log_mag[i]))
			continue;
		lo = std::min(lo, x[i] * x[i]);
		hi = std::max(hi, x[i] * x[i]);
	}
	if (!(hi > lo))
		throw InsufficientData("upper_envelope_fit: no spread in the samples");
	const double nan = std::numeric_limits<double>::quiet_NaN();
	std::vector<double> bx(bins, nan), by(bins, -std::numeric_limits<double>::infinity());
	for (std::size_t i = 0; i < x.size(); ++i) {
		if (!std::isfinite(log_mag[i]))
			continue;
		auto b = static_cast<std::size_t>((x[i] * x[i] - lo) / (hi - lo) * static_cast<double>(bins));
		b = std::min(b, bins - 1);
		if (log_mag[i] > by[b]) {
			by[b] = log_mag[i];
			bx[b] = x[i];
		}
	}
	std::vector<double> fx, fy;
	for (std::size_t b = 0; b < bins; ++b)
		if (std::isfinite(by[b])) {
			fx.push_back(bx[b]);
			fy.push_back(by[b]);
		}
	return envelope_fit(fx, fy, {}, with_power);
}

HardyCheck hardy_check(std::span<const double> x, std::span<const double> abs_f,
		       std::span<const double> xi, std::span<const double> abs_fhat, double A,
		       double slack)
{
	// running sup from the centre outward must not rise again in the outer
	// half of the outer third
	auto side = [&](std::span<const double> t, std::span<const double> v, double &sup,
			double &outer) {
		if (t.size() != v.size() || t.empty())
			throw DomainError("hardy_check: size mismatch");
		double rmax = 0.0;
		for (double ti : t)
			rmax = std::max(rmax, std::abs(ti));
		double settled = 0.0;
		outer = 0.0;
		for (std::size_t i = 0; i < t.size(); ++i) {
			double g = v[i] * std::exp(A * pi * t[i] * t[i]);
			if (std::abs(t[i]) >= rmax * (5.0 / 6.0))
				outer = std::max(outer, g);
			else
				settled = std::max(settled, g);
		}
		sup = std::max(settled, outer);
		return std::isfinite(sup) && outer <= settled * (1.0 + slack);
	};
	HardyCheck h;
	bool t = side(x, abs_f, h.time_sup, h.time_outer);
	bool f = side(xi, abs_fhat, h.freq_sup, h.freq_outer);
	h.pass = t && f;
	return h;
}

} // namespace pauli
