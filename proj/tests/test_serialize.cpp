#include <doctest.h>

#include "pauli/serialize.hpp"

#include <cmath>

using namespace pauli;

namespace {

SampledSet roots(double D, std::size_t n)
{
	SmoothSpec sp;
	sp.density = D;
	sp.count = n;
	sp.seed = 11;
	return generate_smooth(sp);
}

} // namespace

TEST_CASE("model round trip")
{
	ProductModel m = lattice_model(Continuation{0.7, 0.1, 2.0}, 12, 4, 1.3, 1);
	m.amplitude = {0.5, -2.0};
	m.phase = 0.25;
	m.meta = "probe";
	json j = to_json(m);
	ProductModel back = model_from_json(json::parse(j.dump()));
	CHECK(back.zeros == m.zeros);
	CHECK(back.gamma == m.gamma);
	CHECK(back.sigma == 1);
	CHECK(back.meta == "probe");
	REQUIRE(back.lattice.has_value());
	for (cd z : {cd(0.3, 0.2), cd(2.0, -1.0), cd(4.5, 0.0)})
		CHECK(eval_value(back, z) == eval_value(m, z));

	m.lattice.reset();
	ProductModel plain = model_from_json(to_json(m));
	CHECK_FALSE(plain.lattice.has_value());
	CHECK(eval_value(plain, 0.9) == eval_value(m, 0.9));

	j["colour"] = "blue";
	CHECK_THROWS_AS(model_from_json(j), DomainError);
}

TEST_CASE("sampled set round trip")
{
	SampledSet s = roots(0.8, 30).mirrored();
	SampledSet back = sampled_set_from_json(json::parse(to_json(s).dump()));
	CHECK(std::ranges::equal(back.points(), s.points()));
	CHECK(back.seed == s.seed);
	CHECK(back.continuation.has_value() == s.continuation.has_value());

	json j = to_json(s);
	j["extra"] = 1;
	CHECK_THROWS_AS(sampled_set_from_json(j), DomainError);
}

TEST_CASE("interpolant round trip")
{
	SampledSet lam = roots(0.6, 20).mirrored();
	VanishingFunction v = assemble_vanishing_function(lam, lam, 0.5, 0.5);
	Interpolant back = interpolant_from_json(json::parse(to_json(v.f).dump()));
	for (double x : {0.0, 0.37, -1.9, 3.1}) {
		CHECK(std::abs(back.time(x) - v.f.time(x)) <= 1e-14);
		CHECK(std::abs(back.freq(x) - v.f.freq(x)) <= 1e-12);
	}
	json j = to_json(v.f);
	j["c"].erase(0);
	CHECK_THROWS_AS(interpolant_from_json(j), DomainError);
}

TEST_CASE("pair round trip")
{
	PairConstruction pc = build_frequency_matched_pair(roots(0.9, 80), 0.5);
	json j = to_json(pc);
	PairConstruction back = pair_from_json(json::parse(j.dump()));
	CHECK(back.provenance.kind == pc.provenance.kind);
	CHECK(back.provenance.epsilon == pc.provenance.epsilon);
	CHECK(back.theta == pc.theta);
	for (double x : {0.1, 1.4, -2.2}) {
		CHECK(back.f(x) == pc.f(x));
		CHECK(back.g(x) == pc.g(x));
		CHECK(std::abs(back.f_hat(x) - pc.f_hat(x)) <= 1e-14);
	}

	PairConstruction zp = build_frequency_matched_pair(roots(0.5, 40), 0.9);
	PairConstruction zback = pair_from_json(to_json(zp));
	CHECK(zback.psi.is_zero());
	CHECK(zback.g(0.3) == cd(0.0));

	j["provenance"]["mood"] = "good";
	CHECK_THROWS_AS(pair_from_json(j), DomainError);
}
