// Reference values computed independently of the library: closed forms,
// long double arithmetic and brute-force sums.
#ifndef PAULI_TESTS_ORACLES_HPP
#define PAULI_TESTS_ORACLES_HPP

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

using cd = std::complex<double>;
inline constexpr long double pi_l = std::numbers::pi_v<long double>;

inline long double c2_long(long double A)
{
	if (A < 1.0L / 3.0L) {
		long double r = std::sqrt(1.0L - 8.0L * A * A);
		return std::sqrt((3.0L - r) * (3.0L - r) * (3.0L - r) / (2.0L * (1.0L - r)));
	}
	if (A < std::sqrt(3.0L) / 2.0L)
		return 4.0L * std::sqrt(1.0L - A * A);
	return 2.0L;
}

/// max of (1 - x)(A/sqrt x + sqrt x/A)^2 on [A^2, 1] by dense scan plus
/// ternary search, in long double.
inline long double weak_bound_max(long double A)
{
	auto g = [A](long double x) {
		long double u = A / std::sqrt(x) + std::sqrt(x) / A;
		return (1.0L - x) * u * u;
	};
	const long double lo = A * A;
	const int n = 20000;
	int best = 0;
	for (int i = 1; i <= n; ++i)
		if (g(lo + (1.0L - lo) * i / n) > g(lo + (1.0L - lo) * best / n))
			best = i;
	long double a = lo + (1.0L - lo) * std::max(best - 1, 0) / n;
	long double b = lo + (1.0L - lo) * std::min(best + 1, n) / n;
	for (int it = 0; it < 200; ++it) {
		long double m1 = a + (b - a) / 3.0L, m2 = b - (b - a) / 3.0L;
		if (g(m1) < g(m2))
			a = m1;
		else
			b = m2;
	}
	return g(0.5L * (a + b));
}

inline cd sinc(cd z)
{
	if (std::abs(z) < 1e-8)
		return 1.0 - std::pow(std::numbers::pi * z, 2) / 6.0;
	return std::sin(std::numbers::pi * z) / (std::numbers::pi * z);
}

/// Transform of e^{-a pi x^2} at xi.
inline double gaussian_hat(double a, double xi)
{
	return std::exp(-std::numbers::pi * xi * xi / a) / std::sqrt(a);
}

/// Composite Simpson for int f(x) e^{-2 pi i x xi} dx on [-T, T], in long
/// double accumulation. Independent of the library's trapezoid tables.
inline cd simpson_transform(const std::function<cd(double)> &f, double xi, double T = 8.0,
			    int n = 4000)
{
	const long double h = 2.0L * T / n;
	long double re = 0.0L, im = 0.0L;
	for (int k = 0; k <= n; ++k) {
		long double x = -T + h * k;
		long double w = (k == 0 || k == n) ? 1.0L : (k % 2 ? 4.0L : 2.0L);
		cd v = f(static_cast<double>(x));
		long double ph = -2.0L * pi_l * x * xi;
		long double c = std::cos(ph), s = std::sin(ph);
		re += w * (v.real() * c - v.imag() * s);
		im += w * (v.real() * s + v.imag() * c);
	}
	return {static_cast<double>(re * h / 3.0L), static_cast<double>(im * h / 3.0L)};
}

/// L2-normalised Hermite functions for e^{-2 pi x^2}-weight via the
/// three-term recurrence; h_k transforms to (-i)^k h_k.
inline std::vector<double> hermite_functions(std::size_t n, double x)
{
	std::vector<double> h(n);
	const double y = std::sqrt(2.0 * std::numbers::pi) * x;
	if (n == 0)
		return h;
	h[0] = std::pow(2.0, 0.25) * std::exp(-std::numbers::pi * x * x);
	if (n > 1)
		h[1] = std::sqrt(2.0) * y * h[0];
	for (std::size_t k = 2; k < n; ++k)
		h[k] = std::sqrt(2.0 / k) * y * h[k - 1] - std::sqrt((k - 1.0) / k) * h[k - 2];
	return h;
}

/// inf over j >= 1 of (sqrt(j + 1) - sqrt j)(1 + sqrt j), scanned far out.
inline double sqrt_lattice_separation(int jmax = 1000000)
{
	double best = 1e300;
	for (int j = 1; j <= jmax; ++j) {
		double s = std::sqrt(static_cast<double>(j));
		best = std::min(best, (std::sqrt(j + 1.0) - s) * (1.0 + s));
	}
	return best;
}

} // namespace oracle

#endif
