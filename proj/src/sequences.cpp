#include "pauli/sequences.hpp"
#include "pauli/common.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>

namespace pauli {

double Continuation::point(double index) const
{
	return std::pow((index + shift) / density, 1.0 / p);
}

SampledSet::SampledSet(std::vector<double> points, bool zero_in_positive)
	: points_(std::move(points)), zero_in_positive_(zero_in_positive)
{
	for (std::size_t i = 0; i < points_.size(); ++i) {
		if (!std::isfinite(points_[i]))
			throw DomainError("SampledSet: non-finite point");
		if (i > 0 && !(points_[i] > points_[i - 1]))
			throw DomainError("SampledSet: points must be strictly increasing");
	}
}

SampledSet SampledSet::symmetric(std::span<const double> positive)
{
	std::vector<double> pts;
	pts.reserve(2 * positive.size());
	for (auto it = positive.rbegin(); it != positive.rend(); ++it)
		if (*it > 0.0)
			pts.push_back(-*it);
	for (double g : positive)
		pts.push_back(g);
	return SampledSet(std::move(pts));
}

std::vector<double> SampledSet::positive() const
{
	std::vector<double> out;
	for (double x : points_)
		if (x > 0.0 || (x == 0.0 && zero_in_positive_))
			out.push_back(x);
	return out;
}

std::vector<double> SampledSet::negative_magnitudes() const
{
	std::vector<double> out;
	for (auto it = points_.rbegin(); it != points_.rend(); ++it)
		if (*it < 0.0 || (*it == 0.0 && !zero_in_positive_))
			out.push_back(-*it);
	return out;
}

SampledSet SampledSet::positive_half() const
{
	SampledSet s(positive(), zero_in_positive_);
	s.continuation = continuation;
	s.seed = seed;
	return s;
}

SampledSet SampledSet::negative_half() const
{
	auto mags = negative_magnitudes();
	std::vector<double> pts(mags.rbegin(), mags.rend());
	for (double &x : pts)
		x = -x;
	SampledSet s(std::move(pts), zero_in_positive_);
	s.seed = seed;
	return s;
}

SampledSet SampledSet::mirrored() const
{
	auto pos = positive();
	SampledSet s = symmetric(pos);
	s.continuation = continuation;
	s.seed = seed;
	return s;
}

bool SampledSet::is_symmetric(double tol) const
{
	auto pos = positive();
	std::erase(pos, 0.0);
	auto neg = negative_magnitudes();
	std::erase(neg, 0.0);
	if (pos.size() != neg.size())
		return false;
	for (std::size_t i = 0; i < pos.size(); ++i)
		if (std::abs(pos[i] - neg[i]) > tol * std::max(1.0, pos[i]))
			return false;
	return true;
}

void SmoothSpec::validate() const
{
	if (!(p >= 1.0))
		throw DomainError("SmoothSpec: p must be >= 1");
	if (!(density > 0.0))
		throw DomainError("SmoothSpec: density must be positive");
	if (!(separation > 0.0))
		throw DomainError("SmoothSpec: separation must be positive");
	if (!(jitter >= 0.0 && jitter < 0.5))
		throw DomainError("SmoothSpec: jitter must lie in [0, 1/2)");
}

SampledSet generate_smooth(const SmoothSpec &spec)
{
	spec.validate();
	std::mt19937_64 rng(spec.seed);
	std::vector<double> pts;
	pts.reserve(spec.count);
	for (std::size_t j = 1; j <= spec.count; ++j) {
		double theta = 0.0;
		if (spec.jitter > 0.0) {
			// 53-bit uniform in [0,1); mt19937_64 output is fixed by the standard
			double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
			theta = spec.jitter * (2.0 * u - 1.0);
		}
		pts.push_back(std::pow((static_cast<double>(j) + theta) / spec.density,
				       1.0 / spec.p));
	}
	SampledSet s(std::move(pts));
	s.continuation = Continuation{spec.density, 0.0, spec.p};
	s.seed = spec.seed;
	return s;
}

std::size_t counting(const SampledSet &set, double r)
{
	std::size_t n = 0;
	for (double x : set.points())
		if (std::abs(x) < r)
			++n;
	return n;
}

DensityFit density_fit(std::span<const double> magnitudes, double p)
{
	std::vector<double> m(magnitudes.begin(), magnitudes.end());
	for (double &x : m)
		x = std::abs(x);
	std::sort(m.begin(), m.end());
	if (m.size() < 16)
		throw InsufficientData("density_fit: need at least 16 points");

	const std::size_t n = m.size();
	std::vector<double> below(n), upto(n), rp(n);
	for (std::size_t k = 0; k < n; ++k) {
		below[k] = static_cast<double>(std::lower_bound(m.begin(), m.end(), m[k]) - m.begin());
		upto[k] = static_cast<double>(std::upper_bound(m.begin(), m.end(), m[k]) - m.begin());
		rp[k] = std::pow(m[k], p);
	}

	double sx = 0, sy = 0, sxx = 0, sxy = 0;
	for (std::size_t k = 0; k < n; ++k) {
		sx += rp[k];
		sy += below[k];
		sxx += rp[k] * rp[k];
		sxy += rp[k] * below[k];
	}
	const double nn = static_cast<double>(n);
	const double var = sxx - sx * sx / nn;
	if (!(var > 0.0))
		throw Degenerate("density_fit: all radii coincide");
	DensityFit fit;
	fit.density = (sxy - sx * sy / nn) / var;
	fit.intercept = (sy - fit.density * sx) / nn;
	for (std::size_t k = 0; k < n; ++k) {
		double model = fit.density * rp[k];
		fit.residual = std::max({fit.residual, std::abs(below[k] - model),
					 std::abs(upto[k] - model)});
	}
	return fit;
}

DensityFit density_fit(const SampledSet &set, double p)
{
	return density_fit(set.points(), p);
}

double measure_separation(std::span<const double> magnitudes, double p)
{
	double d = std::numeric_limits<double>::infinity();
	for (std::size_t j = 0; j + 1 < magnitudes.size(); ++j) {
		double gap = magnitudes[j + 1] - magnitudes[j];
		if (gap <= 0.0)
			return 0.0;
		d = std::min(d, gap * std::pow(1.0 + magnitudes[j], p - 1.0));
	}
	return d;
}

double measure_separation(const SampledSet &set, double p)
{
	auto pos = set.positive();
	auto neg = set.negative_magnitudes();
	return std::min(measure_separation(pos, p), measure_separation(neg, p));
}

bool separation_check(const SampledSet &set, double p, double d)
{
	return measure_separation(set, p) >= d;
}

namespace {

// Rebuilds a set from per-half outward magnitudes.
SampledSet from_halves(const std::vector<double> &neg, const std::vector<double> &pos,
		       bool zero_in_positive)
{
	std::vector<double> pts;
	pts.reserve(neg.size() + pos.size());
	for (auto it = neg.rbegin(); it != neg.rend(); ++it)
		pts.push_back(-*it);
	for (double g : pos)
		pts.push_back(g);
	// -0.0 from a zero in the negative half compares equal to 0.0
	return SampledSet(std::move(pts), zero_in_positive);
}

std::pair<std::vector<double>, std::vector<double>> split_half(const std::vector<double> &half,
							       double fraction)
{
	std::vector<double> first, second;
	for (std::size_t k = 1; k <= half.size(); ++k) {
		double kk = static_cast<double>(k);
		if (std::floor(kk * fraction) > std::floor((kk - 1.0) * fraction))
			first.push_back(half[k - 1]);
		else
			second.push_back(half[k - 1]);
	}
	return {first, second};
}

} // namespace

std::pair<SampledSet, SampledSet> split_fraction(const SampledSet &set, double fraction)
{
	if (!(fraction > 0.0 && fraction < 1.0))
		throw DomainError("split_fraction: fraction must lie in (0,1)");
	auto [pos1, pos2] = split_half(set.positive(), fraction);
	auto [neg1, neg2] = split_half(set.negative_magnitudes(), fraction);
	SampledSet first = from_halves(neg1, pos1, set.zero_in_positive());
	SampledSet second = from_halves(neg2, pos2, set.zero_in_positive());
	first.seed = second.seed = set.seed;
	if (set.continuation && fraction == 0.5) {
		const auto &c = *set.continuation;
		// index 2i + s -> (i + s/2) / (D/2);  2i - 1 + s -> (i + (s-1)/2) / (D/2)
		first.continuation = Continuation{c.density / 2.0, c.shift / 2.0, c.p};
		second.continuation = Continuation{c.density / 2.0, (c.shift - 1.0) / 2.0, c.p};
	}
	return {first, second};
}

std::pair<SampledSet, SampledSet> split_parity(const SampledSet &set)
{
	return split_fraction(set, 0.5);
}

namespace {

double half_density(const std::vector<double> &half, double p)
{
	return density_fit(std::span<const double>(half), p).density;
}

std::vector<double> thin_half(const std::vector<double> &half, double target, double p,
			      double &ratio_out)
{
	if (half.empty()) {
		ratio_out = 1.0;
		return half;
	}
	double measured = half_density(half, p);
	double ratio = measured / target;
	if (ratio < 0.98)
		throw Infeasible("thin_to_smooth: target density exceeds measured density");
	ratio = std::max(ratio, 1.0);
	ratio_out = ratio;
	std::vector<double> kept;
	for (std::size_t k = 1;; ++k) {
		auto idx = static_cast<std::size_t>(std::llround(static_cast<double>(k) * ratio));
		if (idx > half.size())
			break;
		if (idx >= 1 && (kept.empty() || half[idx - 1] > kept.back()))
			kept.push_back(half[idx - 1]);
	}
	return kept;
}

std::vector<double> augment_half(const std::vector<double> &half, double target, double p)
{
	if (half.empty())
		return half;
	double measured = half_density(half, p);
	if (measured > target * 1.02)
		throw Infeasible("augment_to_smooth: target density below measured density");
	double extra = target - measured;
	if (extra <= 1e-9 * target)
		return half;
	std::vector<double> out = half;
	const double last = half.back();
	for (std::size_t k = 0;; ++k) {
		double c = std::pow((static_cast<double>(k) + 0.5) / extra, 1.0 / p);
		if (c > last)
			break;
		auto it = std::lower_bound(out.begin(), out.end(), c);
		double lo = it == out.begin() ? 0.0 : *(it - 1);
		double hi = *it; // c <= last guarantees a neighbour above
		double gap = hi - lo;
		if (c - lo < gap / 4 || hi - c < gap / 4)
			c = 0.5 * (lo + hi);
		out.insert(std::lower_bound(out.begin(), out.end(), c), c);
	}
	return out;
}

} // namespace

SampledSet thin_to_smooth(const SampledSet &set, double target_density, double p)
{
	if (!(target_density > 0.0))
		throw DomainError("thin_to_smooth: target density must be positive");
	double rpos = 1.0, rneg = 1.0;
	auto pos = thin_half(set.positive(), target_density, p, rpos);
	auto neg = thin_half(set.negative_magnitudes(), target_density, p, rneg);
	SampledSet out = from_halves(neg, pos, set.zero_in_positive());
	out.seed = set.seed;
	double r = std::round(rpos);
	if (set.continuation && std::abs(rpos - r) < 1e-6) {
		const auto &c = *set.continuation;
		out.continuation = Continuation{c.density / r, c.shift / r, c.p};
	}
	return out;
}

SampledSet augment_to_smooth(const SampledSet &set, double target_density, double p)
{
	if (!(target_density > 0.0))
		throw DomainError("augment_to_smooth: target density must be positive");
	auto pos = augment_half(set.positive(), target_density, p);
	auto neg = augment_half(set.negative_magnitudes(), target_density, p);
	SampledSet out = from_halves(neg, pos, set.zero_in_positive());
	out.seed = set.seed;
	return out;
}

void write_csv(std::ostream &out, const SampledSet &set, double p, double density,
	       const std::string &provenance)
{
	char buf[64];
	if (!provenance.empty())
		out << "# " << provenance << '\n';
	std::snprintf(buf, sizeof buf, "%.17g", p);
	out << "# p=" << buf;
	std::snprintf(buf, sizeof buf, "%.17g", density);
	out << " D=" << buf << " seed=" << set.seed << '\n';
	for (double x : set.points()) {
		std::snprintf(buf, sizeof buf, "%.17g", x);
		out << buf << '\n';
	}
}

SampledSet read_csv(std::istream &in)
{
	std::vector<double> pts;
	std::uint64_t seed = 0;
	std::string line;
	while (std::getline(in, line)) {
		if (line.empty())
			continue;
		if (line[0] == '#') {
			auto pos = line.find("seed=");
			if (pos != std::string::npos)
				seed = std::stoull(line.substr(pos + 5));
			continue;
		}
		std::istringstream ls(line);
		double x;
		if (!(ls >> x))
			throw DomainError("read_csv: malformed line '" + line + "'");
		pts.push_back(x);
	}
	SampledSet s(std::move(pts));
	s.seed = seed;
	return s;
}

} // namespace pauli
