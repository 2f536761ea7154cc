#ifndef PAULI_SEQUENCES_HPP
#define PAULI_SEQUENCES_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace pauli {

/// Analytic continuation of a half-line sequence past its last retained
/// point: the i-th point (1-based) is ((i + shift) / density)^(1/p).
struct Continuation {
	double density = 1.0;
	double shift = 0.0;
	double p = 2.0;

	double point(double index) const;
};

/**
 * Strictly increasing finite set of reals, split into a nonpositive half
 * and a nonnegative half. Zero belongs to the nonnegative half unless
 * `zero_in_positive` is false.
 *
 * Points on each half-line are indexed 1, 2, 3, ... outward from the
 * origin. When `continuation` is set it describes how the nonnegative half
 * (and, for symmetric sets, the mirror image) continues past the retained
 * points.
 */
class SampledSet {
public:
	SampledSet() = default;
	explicit SampledSet(std::vector<double> points, bool zero_in_positive = true);

	/// Builds {-g} U {g} from nonnegative points g.
	static SampledSet symmetric(std::span<const double> positive);

	std::span<const double> points() const { return points_; }
	std::size_t size() const { return points_.size(); }
	bool empty() const { return points_.empty(); }
	bool zero_in_positive() const { return zero_in_positive_; }

	/// Nonnegative half, increasing.
	std::vector<double> positive() const;
	/// Magnitudes of the nonpositive half, increasing (outward order).
	std::vector<double> negative_magnitudes() const;

	SampledSet positive_half() const;
	SampledSet negative_half() const;
	SampledSet mirrored() const;
	bool is_symmetric(double tol = 1e-12) const;

	std::optional<Continuation> continuation;
	std::uint64_t seed = 0;

private:
	std::vector<double> points_;
	bool zero_in_positive_ = true;
};

struct SmoothSpec {
	double p = 2.0;
	double density = 1.0;
	double separation = 0.1;
	std::size_t count = 64;
	double jitter = 0.0;
	std::uint64_t seed = 0;

	void validate() const;
};

/// gamma_j = ((j + theta_j) / D)^(1/p), j = 1..count, |theta_j| <= jitter.
SampledSet generate_smooth(const SmoothSpec &spec);

/// Number of points with |gamma| < r.
std::size_t counting(const SampledSet &set, double r);

struct DensityFit {
	double density = 0.0;
	double intercept = 0.0;
	/// sup over point radii of |n(r) - D r^p| using both one-sided limits.
	double residual = 0.0;
};

/// Least-squares fit of the counting function against r^p over the
/// magnitudes of all points. Pass a half-line to get a per-half density.
DensityFit density_fit(const SampledSet &set, double p);
DensityFit density_fit(std::span<const double> magnitudes, double p);

/// Largest d with |g_{j+1} - g_j| >= d (1 + |g_j|)^(1-p) for consecutive
/// points of each half-line. +inf for fewer than two points, 0 on duplicates.
double measure_separation(std::span<const double> magnitudes, double p);
double measure_separation(const SampledSet &set, double p);
bool separation_check(const SampledSet &set, double p, double d);

/// Even-indexed and odd-indexed points of each half-line.
std::pair<SampledSet, SampledSet> split_parity(const SampledSet &set);

/// Point k (1-based, per half-line) goes to the first part when
/// floor(k f) > floor((k - 1) f). f = 1/2 reproduces split_parity.
std::pair<SampledSet, SampledSet> split_fraction(const SampledSet &set, double fraction);

SampledSet thin_to_smooth(const SampledSet &set, double target_density, double p = 2.0);
SampledSet augment_to_smooth(const SampledSet &set, double target_density, double p = 2.0);

/// Writes one point per line after a `# p=<p> D=<D> seed=<seed>` header.
void write_csv(std::ostream &out, const SampledSet &set, double p, double density,
	       const std::string &provenance = {});
/// Reads one point per line; `#` lines are comments, the header is optional.
SampledSet read_csv(std::istream &in);

} // namespace pauli

#endif
