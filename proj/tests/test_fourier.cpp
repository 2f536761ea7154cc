#include <doctest.h>

#include "oracles.hpp"
#include "pauli/fourier.hpp"
#include "pauli/product_model.hpp"

#include <cmath>

using namespace pauli;

namespace {

Evaluator gaussian(double a)
{
	return [a](cd x) { return std::exp(-a * pi * x * x); };
}

QuadratureSpec fine_spec()
{
	return make_spec(0.5, 0.5, 4.0, 1e-14);
}

} // namespace

TEST_CASE("uniform grid")
{
	auto g = uniform_grid(-1.0, 1.0, 5);
	CHECK(g == std::vector<double>{-1.0, -0.5, 0.0, 0.5, 1.0});
	CHECK_THROWS_AS(uniform_grid(0.0, 1.0, 1), DomainError);
	CHECK_THROWS_AS(uniform_grid(1.0, 1.0, 4), DomainError);
}

TEST_CASE("closed-form transforms")
{
	auto spec = fine_spec();
	CHECK(std::abs(transform_at(gaussian(1.0), spec, 1.0).value - std::exp(-pi)) < 1e-13);
	CHECK(std::exp(-pi) == doctest::Approx(0.04321392).epsilon(1e-7));

	auto first = [](cd x) { return x * std::exp(-pi * x * x); };
	TransformValue h = transform_at(first, spec, 0.5);
	CHECK(std::abs(h.value - cd(0.0, -0.5 * std::exp(-pi / 4.0))) < 1e-13);
	CHECK(h.value.imag() == doctest::Approx(-0.22790).epsilon(1e-4));

	TransformValue d = transform_at(gaussian(0.5), spec, 1.0);
	CHECK(std::abs(d.value - oracle::gaussian_hat(0.5, 1.0)) < 1e-13);
	CHECK(d.value.real() == doctest::Approx(0.00264143).epsilon(1e-5));
}

TEST_CASE("agreement with an independent Simpson quadrature")
{
	auto m = lattice_model(Continuation{0.6, 0.0, 2.0}, 24, 4, 1.1);
	Evaluator f = as_evaluator(m);
	TabulatedTransform t(f, make_spec(1.1, 0.3, 3.0, 1e-14));
	for (double xi : {0.0, 0.4, 1.3, 2.2}) {
		cd want = oracle::simpson_transform([&](double x) { return f(x); }, xi, 7.0, 8000);
		TransformValue got = t(xi);
		CHECK(std::abs(got.value - want) < 1e-11);
		CHECK(got.error < 1e-11);
	}
}

TEST_CASE("error estimate and tolerance")
{
	QuadratureSpec coarse{.window = 6.0, .intervals = 24};
	QuadratureSpec twice{.window = 6.0, .intervals = 48};
	double e1 = transform_at(gaussian(1.0), coarse, 0.3).error;
	double e2 = transform_at(gaussian(1.0), twice, 0.3).error;
	CHECK(e2 * 10.0 <= e1);

	coarse.tolerance = 1e-12;
	CHECK_THROWS_AS(transform_at(gaussian(1.0), coarse, 0.3), ToleranceNotMet);

	QuadratureSpec bad{.window = 1.0, .intervals = 10};
	CHECK_THROWS_AS(bad.validate(), DomainError);
	CHECK_THROWS_AS(make_spec(0.0, 1.0, 1.0, 1e-10), DomainError);
}

TEST_CASE("inverse kernel")
{
	auto spec = fine_spec();
	auto first = [](cd x) { return x * std::exp(-pi * x * x); };
	TabulatedTransform t(first, spec);
	CHECK(std::abs(t(0.5, +1).value - cd(0.0, 0.5 * std::exp(-pi / 4.0))) < 1e-13);
}

TEST_CASE("parity transport is exact for symmetric tables")
{
	auto spec = fine_spec();
	auto even = lattice_model(Continuation{0.9, 0.0, 2.0}, 16, 4, 1.0, 0);
	auto odd = lattice_model(Continuation{0.9, 0.0, 2.0}, 16, 4, 1.0, 1);
	TabulatedTransform te(as_evaluator(even), spec), to(as_evaluator(odd), spec);
	for (double xi : {0.1, 0.9, 2.7}) {
		CHECK(te(xi).value.imag() == 0.0);
		CHECK(to(xi).value.real() == 0.0);
	}
}

TEST_CASE("envelope fit")
{
	std::vector<double> x, lg, flat;
	for (double t = 0.25; t <= 5.0; t += 0.25) {
		x.push_back(t);
		lg.push_back(std::log(3.0) - 0.7 * pi * t * t);
		flat.push_back(0.0);
	}
	EnvelopeFit f = envelope_fit(x, lg);
	CHECK(f.rate == doctest::Approx(0.7).epsilon(1e-10));
	CHECK(f.intercept == doctest::Approx(std::log(3.0)).epsilon(1e-10));
	CHECK(f.residual < 1e-10);
	CHECK(std::abs(envelope_fit(x, flat).rate) < 1e-12);

	// oscillating Gaussian-times-sinc data through the upper envelope
	auto m = lattice_model(Continuation{1.0, 0.0, 1.0}, 64, 2, 1.0);
	std::vector<double> gx, gl;
	for (double t = 0.5; t <= 6.0; t += 0.01) {
		double v = log_abs(m, t);
		if (std::isfinite(v) && std::abs(t - std::round(t)) > 0.05) {
			gx.push_back(t);
			gl.push_back(v);
		}
	}
	EnvelopeFit u = upper_envelope_fit(gx, gl, 16, true);
	CHECK(u.rate == doctest::Approx(1.0).epsilon(0.05));

	std::vector<double> few{1.0, 2.0};
	CHECK_THROWS_AS(envelope_fit(few, few), InsufficientData);
}

TEST_CASE("Hardy check")
{
	auto x = uniform_grid(-6.0, 6.0, 601);
	auto xi = uniform_grid(-4.0, 4.0, 401);
	auto mod = [](std::span<const double> t, double a) {
		std::vector<double> v;
		for (double s : t)
			v.push_back(std::exp(-a * pi * s * s));
		return v;
	};
	auto fx = mod(x, 1.0), fxi = mod(xi, 1.0);
	HardyCheck ok = hardy_check(x, fx, xi, fxi, 0.5);
	CHECK(ok.pass);
	CHECK(ok.time_sup == doctest::Approx(1.0).epsilon(1e-15));

	auto slow = mod(x, 0.4);
	HardyCheck bad = hardy_check(x, slow, xi, fxi, 0.5);
	CHECK_FALSE(bad.pass);
	CHECK(bad.time_outer == doctest::Approx(std::exp(0.1 * pi * 36.0)).epsilon(1e-10));
}
