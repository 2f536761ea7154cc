#include <doctest.h>

#include "oracles.hpp"
#include "pauli/product_model.hpp"

#include <cmath>

using namespace pauli;

namespace {

ProductModel sinc_model(std::size_t count = 64)
{
	return lattice_model(Continuation{1.0, 0.0, 1.0}, count, 2);
}

// Same zeros with the lattice replaced by its power sums.
ProductModel power_sum_model(std::size_t count)
{
	ProductModel m = sinc_model(count);
	m.lattice.reset();
	return m;
}

} // namespace

TEST_CASE("sinc values")
{
	auto m = sinc_model();
	CHECK(eval_value(m, 0.5).real() == doctest::Approx(2.0 / pi).epsilon(1e-10));
	CHECK(eval_value(m, 0.5).imag() == 0.0);
	for (cd z : {cd(0.3, 0.0), cd(2.5, 1.5), cd(-7.25, 3.0), cd(0.0, 4.0), cd(9.1, -0.4)}) {
		cd want = oracle::sinc(z);
		CHECK(std::abs(eval_value(m, z) - want) <= 1e-10 * std::abs(want));
	}
}

TEST_CASE("amplitude and phase at the origin")
{
	ProductModel m = sinc_model(8);
	m.amplitude = {2.0, 0.0};
	m.phase = pi / 2.0;
	cd v = eval_value(m, 0.0);
	CHECK(v.real() == doctest::Approx(0.0));
	CHECK(v.imag() == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("retained zeros vanish exactly")
{
	auto m = lattice_model(Continuation{0.5, 0.0, 2.0}, 20, 4, 1.0);
	for (double rho : m.zeros) {
		CHECK(eval_value(m, rho) == cd(0.0));
		CHECK(eval_value(m, -rho) == cd(0.0));
		CHECK(eval_value(m, cd(0.0, rho)) == cd(0.0));
		CHECK(std::isinf(log_abs(m, rho)));
	}
	CHECK(m.zeros[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
	// omitted zeros come from the lattice tail
	double next = std::sqrt(21.0 / 0.5);
	CHECK(std::abs(eval_value(m, next)) == 0.0);
}

TEST_CASE("derivative at a zero")
{
	auto m = sinc_model();
	CHECK(derivative_at_zero(m, 1.0).real() == doctest::Approx(-1.0).epsilon(1e-10));
	for (double k : {1.0, 2.0, 5.0}) {
		cd plus = derivative_at_zero(m, k);
		cd minus = derivative_at_zero(m, -k);
		CHECK(std::abs(minus + plus) <= 1e-13 * std::abs(plus)); // sigma = 0: odd derivative
		CHECK(plus.real() == doctest::Approx(std::cos(pi * k) / k).epsilon(1e-10));
	}
	ProductModel odd = sinc_model();
	odd.sigma = 1;
	cd p = derivative_at_zero(odd, 2.0), q = derivative_at_zero(odd, -2.0);
	CHECK(std::abs(q - p) <= 1e-13 * std::abs(p));
	CHECK(derivative_at_zero(odd, 0.0).real() == doctest::Approx(1.0).epsilon(1e-15));

	ProductModel scaled = sinc_model();
	scaled.amplitude = {3.0, -1.0};
	CHECK(std::abs(derivative_at_zero(scaled, 3.0) - cd(3.0, -1.0) * derivative_at_zero(m, 3.0)) <
	      1e-13);

	CHECK_THROWS_AS(derivative_at_zero(m, 0.5), NotAZero);
	CHECK_THROWS_AS(derivative_at_zero(m, 0.0), NotAZero);
}

TEST_CASE("divided basis")
{
	auto m = sinc_model();
	CHECK(divided_basis_eval(m, 1.0, 1.0) == cd(1.0));
	CHECK(divided_basis_eval(m, 1.0, 3.0) == cd(0.0));
	CHECK(divided_basis_eval(m, 1.0, -1.0) == cd(0.0));
	CHECK(divided_basis_eval(m, 1.0, 0.5).real() == doctest::Approx(4.0 / pi).epsilon(1e-10));

	// close to the singularity the quotient stays smooth
	const double h = 1e-9;
	cd near = divided_basis_eval(m, 2.0, 2.0 + h);
	CHECK(std::abs(near - 1.0) < 1e-8);

	auto ev = divided_basis_evaluator(m, 4.0);
	CHECK(ev(4.0) == cd(1.0));
	CHECK_THROWS_AS(divided_basis_evaluator(m, 4.5), NotAZero);
}

TEST_CASE("parity and reality")
{
	auto even = lattice_model(Continuation{0.7, 0.0, 2.0}, 30, 4, 0.9, 0);
	auto odd = lattice_model(Continuation{0.7, 0.0, 2.0}, 30, 4, 0.9, 1);
	for (cd z : {cd(0.4, 0.1), cd(1.7, -2.2), cd(3.3, 0.0)}) {
		cd e = eval_value(even, z), o = eval_value(odd, z);
		CHECK(std::abs(eval_value(even, -z) - e) <= 1e-13 * std::abs(e));
		CHECK(std::abs(eval_value(odd, -z) + o) <= 1e-13 * std::abs(o));
	}
	for (double x : {0.1, 0.77, 2.3, 5.9}) {
		CHECK(eval_value(even, x).imag() == 0.0);
		CHECK(eval_value(odd, x).imag() == 0.0);
	}
	ProductModel flipped = even;
	flipped.phase = pi;
	CHECK(eval_value(flipped, 0.3).imag() == 0.0);
	CHECK(eval_value(flipped, 0.3).real() < 0.0);
}

TEST_CASE("power-sum tail is sound inside its validity radius")
{
	auto coarse = power_sum_model(40);
	auto fine = power_sum_model(80);
	const double R = validity_radius(coarse, 1e-8);
	CHECK(R > 0.5);
	CHECK(std::isinf(validity_radius(sinc_model(), 1e-8)));
	for (double t = 0.05; t < 1.0; t += 0.1) {
		cd z = R * t * cd(std::cos(0.3), std::sin(0.3));
		EvalResult a = evaluate(coarse, z), b = evaluate(fine, z);
		CHECK(std::abs(a.log_magnitude - b.log_magnitude) <= a.error + b.error + 1e-14);
		CHECK(a.error < 1e-8);
	}
}

TEST_CASE("overflow and underflow are flagged")
{
	ProductModel g;
	g.gamma = 1.0;
	EvalResult far = evaluate(g, 20.0);
	CHECK(far.underflow);
	CHECK(far.value == cd(0.0));
	CHECK(far.log_magnitude == doctest::Approx(-400.0 * pi).epsilon(1e-14));
	EvalResult up = evaluate(g, cd(0.0, 20.0));
	CHECK(up.overflow);
}

TEST_CASE("validation")
{
	ProductModel m;
	m.power = 3;
	CHECK_THROWS_AS(m.validate(), DomainError);
	m.power = 2;
	m.zeros = {2.0, 1.0};
	CHECK_THROWS_AS(m.validate(), DomainError);
	m.zeros = {1.0};
	m.gamma = -1.0;
	CHECK_THROWS_AS(m.validate(), DomainError);
	CHECK_THROWS_AS(lattice_model(Continuation{1.0, 0.0, 2.0}, 4, 2), DomainError);
}
