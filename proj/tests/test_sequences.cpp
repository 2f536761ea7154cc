#include <doctest.h>

#include "oracles.hpp"
#include "pauli/common.hpp"
#include "pauli/sequences.hpp"

#include <cmath>
#include <sstream>

using namespace pauli;

namespace {

std::vector<double> sqrt_points(double D, std::size_t n)
{
	std::vector<double> g;
	for (std::size_t j = 1; j <= n; ++j)
		g.push_back(std::sqrt(static_cast<double>(j) / D));
	return g;
}

} // namespace

TEST_CASE("sampled set construction")
{
	CHECK_THROWS_AS(SampledSet({1.0, 1.0}), DomainError);
	CHECK_THROWS_AS(SampledSet({2.0, 1.0}), DomainError);
	CHECK_THROWS_AS(SampledSet({0.0, INFINITY}), DomainError);

	SampledSet s({-2.0, -1.0, 0.0, 3.0});
	CHECK(s.positive() == std::vector<double>{0.0, 3.0});
	CHECK(s.negative_magnitudes() == std::vector<double>{1.0, 2.0});

	SampledSet t({-2.0, -1.0, 0.0, 3.0}, false);
	CHECK(t.positive() == std::vector<double>{3.0});
	CHECK(t.negative_magnitudes() == std::vector<double>{0.0, 1.0, 2.0});

	std::vector<double> g{0.0, 1.0, 2.0};
	auto sym = SampledSet::symmetric(g);
	CHECK(sym.size() == 5);
	CHECK(sym.is_symmetric());
	CHECK_FALSE(s.is_symmetric());
	CHECK(s.mirrored().is_symmetric());
}

TEST_CASE("generate_smooth examples")
{
	auto s = generate_smooth({.p = 2.0, .density = 1.0, .count = 4});
	REQUIRE(s.size() == 4);
	for (int j = 1; j <= 4; ++j)
		CHECK(s.points()[j - 1] == doctest::Approx(std::sqrt(j)).epsilon(1e-15));
	CHECK(s.points()[3] == 2.0);

	auto lattice = generate_smooth({.p = 1.0, .density = 1.0, .count = 10});
	for (int j = 1; j <= 10; ++j)
		CHECK(lattice.points()[j - 1] == doctest::Approx(j).epsilon(1e-15));

	auto two = generate_smooth({.p = 2.0, .density = 2.0, .count = 200});
	for (double r : {0.3, 1.1, 2.5, 4.7, 7.2})
		CHECK(counting(two, r) == static_cast<std::size_t>(std::floor(2.0 * r * r)));

	CHECK_THROWS_AS(generate_smooth({.p = 0.5}), DomainError);
	CHECK_THROWS_AS(generate_smooth({.density = 0.0}), DomainError);
	CHECK_THROWS_AS(generate_smooth({.jitter = 0.5}), DomainError);
}

TEST_CASE("generation is reproducible from the seed")
{
	SmoothSpec spec{.density = 1.3, .count = 50, .jitter = 0.2, .seed = 11};
	auto a = generate_smooth(spec);
	auto b = generate_smooth(spec);
	CHECK(std::equal(a.points().begin(), a.points().end(), b.points().begin()));
	spec.seed = 12;
	auto c = generate_smooth(spec);
	CHECK_FALSE(std::equal(a.points().begin(), a.points().end(), c.points().begin()));
}

TEST_CASE("counting function")
{
	SampledSet roots(sqrt_points(1.0, 100));
	CHECK(counting(roots, 3.0) == 8);
	CHECK(counting(roots, 0.0) == 0);
	CHECK(counting(SampledSet({1.0, 2.0, 3.0}), 2.0) == 1);
	CHECK(counting(SampledSet({-3.0, 1.0}), 3.5) == 2);
}

TEST_CASE("density fit")
{
	auto exact = generate_smooth({.density = 1.5, .count = 400});
	auto f = density_fit(exact, 2.0);
	CHECK(f.density == doctest::Approx(1.5).epsilon(1e-6));
	// each jump is exactly one point, so the sup is 1 up to rounding in the fit
	CHECK(f.residual <= 1.0 + 1e-9);

	auto jittered = generate_smooth({.density = 1.5, .count = 400, .jitter = 0.25, .seed = 3});
	auto fj = density_fit(jittered, 2.0);
	CHECK(fj.density == doctest::Approx(1.5).epsilon(0.01));
	CHECK(fj.residual <= 2.0);

	// integers are 1-smooth, not 2-smooth: the misfit grows with the count
	std::vector<double> ints100, ints400;
	for (int j = 1; j <= 400; ++j) {
		if (j <= 100)
			ints100.push_back(j);
		ints400.push_back(j);
	}
	double r100 = density_fit(ints100, 2.0).residual;
	double r400 = density_fit(ints400, 2.0).residual;
	CHECK(r100 > 5.0);
	CHECK(r400 > 3.0 * r100);

	CHECK_THROWS_AS(density_fit(std::vector<double>{1, 2, 3}, 2.0), InsufficientData);
}

TEST_CASE("separation")
{
	SampledSet roots(sqrt_points(1.0, 2000));
	const double d = measure_separation(roots, 2.0);
	// the infimum over all j is 1/2, approached from above
	CHECK(d > 0.5);
	CHECK(d == doctest::Approx(oracle::sqrt_lattice_separation(1999)).epsilon(1e-12));
	CHECK(separation_check(roots, 2.0, 0.5));
	CHECK_FALSE(separation_check(roots, 2.0, d * (1.0 + 1e-12)));

	CHECK(std::isinf(measure_separation(SampledSet({1.0}), 2.0)));
	CHECK(separation_check(SampledSet({1.0}), 2.0, 1e6));
	std::vector<double> dup{1.0, 1.0, 2.0};
	CHECK(measure_separation(dup, 2.0) == 0.0);
}

TEST_CASE("parity split")
{
	SampledSet s({1.0, std::sqrt(2.0), std::sqrt(3.0), 2.0});
	auto [even, odd] = split_parity(s);
	CHECK(even.size() == 2);
	CHECK(even.points()[0] == std::sqrt(2.0));
	CHECK(even.points()[1] == 2.0);
	CHECK(odd.points()[0] == 1.0);
	CHECK(odd.points()[1] == std::sqrt(3.0));

	auto big = generate_smooth({.density = 1.0, .count = 600});
	auto [e, o] = split_parity(big);
	CHECK(density_fit(e, 2.0).density == doctest::Approx(0.5).epsilon(0.01));
	CHECK(density_fit(o, 2.0).density == doctest::Approx(0.5).epsilon(0.01));
	REQUIRE(e.continuation);
	REQUIRE(o.continuation);
	// the continuations pick up exactly where the retained halves stop
	CHECK(e.continuation->point(301) == doctest::Approx(std::sqrt(602.0)).epsilon(1e-14));
	CHECK(o.continuation->point(301) == doctest::Approx(std::sqrt(601.0)).epsilon(1e-14));

	auto [a, b] = split_parity(SampledSet{});
	CHECK(a.empty());
	CHECK(b.empty());
}

TEST_CASE("fractional split")
{
	auto s = generate_smooth({.density = 1.0, .count = 300});
	auto [first, second] = split_fraction(s, 0.3);
	CHECK(first.size() == 90);
	CHECK(second.size() == 210);
	CHECK_THROWS_AS(split_fraction(s, 0.0), DomainError);
	CHECK_THROWS_AS(split_fraction(s, 1.0), DomainError);
}

TEST_CASE("thinning and augmenting")
{
	auto dense = generate_smooth({.density = 2.0, .count = 400});
	auto thin = thin_to_smooth(dense, 1.0);
	CHECK(thin.size() == 200);
	CHECK(density_fit(thin, 2.0).density == doctest::Approx(1.0).epsilon(0.01));
	for (std::size_t k = 0; k < thin.size(); ++k)
		CHECK(thin.points()[k] == dense.points()[2 * k + 1]);

	auto same = thin_to_smooth(dense, 2.0);
	CHECK(std::equal(same.points().begin(), same.points().end(), dense.points().begin(),
			 dense.points().end()));

	auto sparse = generate_smooth({.density = 0.5, .count = 200});
	auto aug = augment_to_smooth(sparse, 1.0);
	CHECK(density_fit(aug, 2.0).density == doctest::Approx(1.0).epsilon(0.02));
	CHECK(measure_separation(aug, 2.0) > 0.0);
	for (double x : sparse.points())
		CHECK(std::binary_search(aug.points().begin(), aug.points().end(), x));

	CHECK_THROWS_AS(thin_to_smooth(sparse, 1.0), Infeasible);
	CHECK_THROWS_AS(augment_to_smooth(dense, 1.0), Infeasible);
}

TEST_CASE("csv round trip")
{
	auto s = generate_smooth({.density = 1.1, .count = 40, .jitter = 0.1, .seed = 5});
	auto sym = s.mirrored();
	std::stringstream io;
	write_csv(io, sym, 2.0, 1.1, "unit");
	const std::string text = io.str();
	CHECK(text.rfind("# unit\n# p=2 D=1.1000000000000001 seed=5", 0) == 0);
	auto back = read_csv(io);
	CHECK(back.seed == 5);
	CHECK(std::equal(back.points().begin(), back.points().end(), sym.points().begin(),
			 sym.points().end()));

	std::stringstream bare("0.5\n# comment\n1.5\n");
	auto b = read_csv(bare);
	CHECK(b.size() == 2);
	std::stringstream bad("1.0\nfoo\n");
	CHECK_THROWS_AS(read_csv(bad), DomainError);
}
