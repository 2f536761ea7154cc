#include "property.hpp"

#include "pauli/thresholds.hpp"

#include <cmath>

using namespace pauli;

TEST_CASE("thresholds are continuous across branch points")
{
	for (double knee : {1.0 / std::sqrt(2.0), 1.0 / 3.0, std::sqrt(3.0) / 2.0}) {
		CAPTURE(knee);
		const double left = std::nextafter(knee, 0.0), right = std::nextafter(knee, 1.0);
		CHECK(std::abs(c1(left) - c1(right)) < 1e-12);
		CHECK(std::abs(c2(left) - c2(right)) < 1e-12);
	}
}

TEST_CASE("c1 decreases strictly and c2 never increases")
{
	double prev1 = INFINITY, prev2 = INFINITY;
	for (int k = 1; k < 1000; ++k) {
		const double A = k / 1000.0;
		CAPTURE(A);
		CHECK(c1(A) < prev1);
		CHECK(c2(A) <= prev2);
		prev1 = c1(A);
		prev2 = c2(A);
	}
}

TEST_CASE("weak bound oracle matches the closed form")
{
	prop::for_cases([](prop::Gen &g) {
		const double A = g.uniform(0.01, std::sqrt(3.0) / 2.0);
		CAPTURE(A);
		OracleResult r = weak_bound_oracle(A);
		const double half = c2(A) / 2.0;
		CHECK(std::abs(r.max_value - std::max(half * half, 1.0)) <= 1e-6);
		const double h = (1.0 - A * A) / 4096.0;
		CHECK(std::abs(r.argmax - x_of_A(A)) <= h);
	});
}

TEST_CASE("density bound product identity")
{
	prop::for_cases([](prop::Gen &g) {
		const double a = g.uniform(0.05, 3.0);
		const double b = g.uniform(0.01, 0.99) / a;
		CAPTURE(a);
		CAPTURE(b);
		DensityBounds d = uniqueness_density_bounds({a, b});
		CHECK(std::abs(d.time * d.freq - (1.0 - a * b)) <= 1e-12);
	});
}

TEST_CASE("raising either rate breaks one of the bounds")
{
	prop::for_cases([](prop::Gen &g) {
		const double a = g.uniform(0.05, 2.0);
		const double b = g.uniform(0.01, 0.9) / a;
		// a larger pair that still has product below 1; one coordinate may stay put
		const double room = 1.0 / (a * b);
		const double grow = g.uniform(1.0 + 1e-6, std::min(room, 4.0));
		const double split = g.index(0, 2) == 0 ? 0.0 : g.uniform(0.0, 1.0);
		const double ta = a * std::pow(grow, split), tb = b * std::pow(grow, 1.0 - split);
		CAPTURE(a);
		CAPTURE(b);
		CAPTURE(ta);
		CAPTURE(tb);
		REQUIRE(ta * tb < 1.0);
		DensityBounds base = uniqueness_density_bounds({a, b});
		DensityBounds big = uniqueness_density_bounds({ta, tb});
		CHECK_FALSE((big.time >= base.time && big.freq >= base.freq));
	});
}

TEST_CASE("split decay parameters satisfy their invariants")
{
	prop::for_cases([](prop::Gen &g) {
		double r[4];
		for (double &v : r)
			v = g.uniform(0.1, 1.5);
		// keep every cross product below 1
		const double s = std::max({r[0], r[1]}) * std::max({r[2], r[3]});
		if (s >= 1.0)
			for (double &v : r)
				v /= std::sqrt(s) * 1.01;
		SplitDecayParams p(r[0], r[1], r[2], r[3]);
		const double lo = std::min(r[0], r[1]) * std::min(r[2], r[3]);
		CHECK(p.x() >= lo * (1.0 - 1e-12));
		CHECK(p.x() < 1.0);
		CHECK(p.bound() > 0.0);
	});
}
