#include "property.hpp"

#include "pauli/fourier.hpp"
#include "pauli/thresholds.hpp"
#include "pauli/verify.hpp"

#include <cmath>

using namespace pauli;

namespace {

SampledSet random_roots(prop::Gen &g, double density, bool symmetric)
{
	SmoothSpec sp;
	sp.density = density;
	sp.count = g.index(40, 150);
	sp.jitter = g.uniform(0.0, 0.3);
	sp.seed = g.seed();
	SampledSet half = generate_smooth(sp);
	return symmetric ? half.mirrored() : half;
}

// Time pair well inside the feasible region: per-half density below 0.75 / A.
PairConstruction random_time_pair(prop::Gen &g, double &A)
{
	A = g.uniform(0.3, 0.65);
	return build_time_pair(random_roots(g, g.uniform(0.2, 0.75 / A), true), A);
}

PairConstruction random_matched_pair(prop::Gen &g, double &A)
{
	A = g.uniform(0.3, 0.8);
	const double top = pauli_threshold(A) / 2.0;
	return build_frequency_matched_pair(random_roots(g, g.uniform(0.1, 0.7) * top, false), A);
}

// Frequency grid out to where the slower factor's transform envelope reaches
// 1e-12, so every sample is well above quadrature noise.
bool hardy_passes(const PairConstruction &pc, double A)
{
	double rate = pc.provenance.phi_freq_rate;
	if (!pc.psi.is_zero())
		rate = std::min(rate, pc.provenance.psi_freq_rate);
	const double reach = std::sqrt(12.0 * std::log(10.0) / (pi * rate));
	auto x = uniform_grid(-6.0, 6.0, 301), xi = uniform_grid(-reach, reach, 201);
	for (bool first : {true, false}) {
		Evaluator f = first ? pc.f_evaluator() : pc.g_evaluator();
		Evaluator fh = first ? pc.f_hat_evaluator() : pc.g_hat_evaluator();
		std::vector<double> a, b;
		for (double t : x)
			a.push_back(std::abs(f(t)));
		for (double t : xi)
			b.push_back(std::abs(fh(t)));
		if (!hardy_check(x, a, xi, b, A).pass)
			return false;
	}
	return true;
}

PairView random_view(prop::Gen &g)
{
	const double a = g.uniform(0.5, 1.5), b = g.uniform(0.5, 1.5);
	cd s(g.normal(), g.normal()), t(g.normal(), g.normal());
	Evaluator f = [=](cd x) { return std::exp(-a * pi * x * x) * (1.0 + s * x); };
	Evaluator h = [=](cd x) { return std::exp(-b * pi * x * x) * (t + x * x); };
	return PairView{f, h, h, f};
}

} // namespace

TEST_CASE("time pairs: sum and difference recover the factors")
{
	prop::for_cases(100, [](prop::Gen &g) {
		double A = 0.0;
		PairConstruction pc = random_time_pair(g, A);
		const cd u = std::polar(1.0, pc.theta);
		for (int k = 0; k < 8; ++k) {
			const double x = g.uniform(-4.0, 4.0);
			cd f = pc.f(x), h = pc.g(x), p = pc.phi.time(x), q = pc.psi.time(x);
			const double scale = std::abs(p) + std::abs(q) + 1e-300;
			CHECK(std::abs(f + h - 2.0 * p) <= 1e-14 * scale);
			CHECK(std::abs(f - h - 2.0 * u * q) <= 1e-14 * scale);
			// polarization
			const double lhs = std::norm(f) - std::norm(h);
			const double rhs = 4.0 * (p * std::conj(u * q)).real();
			CHECK(std::abs(lhs - rhs) <= 1e-12 * scale * scale);
		}
		CHECK(hardy_passes(pc, A));
	});
}

TEST_CASE("time pairs: residuals vanish exactly at retained zeros")
{
	prop::for_cases(100, [](prop::Gen &g) {
		double A = 0.0;
		PairConstruction pc = random_time_pair(g, A);
		const double reach = std::min(pc.phi.model->zeros.empty() ? 0.0 : pc.phi.model->zeros.back(),
					      pc.psi.model->zeros.empty() ? 0.0 : pc.psi.model->zeros.back());
		std::vector<double> kept;
		for (double x : pc.lambda.points())
			if (std::abs(x) <= reach)
				kept.push_back(x);
		DiscreteResult d = discrete_check(PairView::of(pc), kept, {}, 1e-12);
		CHECK(d.time_residual == 0.0);
		for (double x : uniform_grid(-3.0, 3.0, 13))
			CHECK(std::abs(H_eval(pc.f_evaluator(), pc.g_evaluator(), x).imag()) <=
			      1e-13 * std::max(1.0, std::norm(pc.f(x)) + std::norm(pc.g(x))));
	});
}

TEST_CASE("frequency-matched pairs: transform moduli agree and signs are retrievable")
{
	prop::for_cases(100, [](prop::Gen &g) {
		double A = 0.0;
		PairConstruction pc = random_matched_pair(g, A);
		CAPTURE(A);
		if (pc.provenance.kind == PairKind::zero_partner) {
			CHECK(pc.g(g.uniform(-3.0, 3.0)) == cd(0.0));
			return;
		}
		REQUIRE(pc.theta == 0.0);
		for (int k = 0; k < 6; ++k) {
			const double xi = g.uniform(-4.0, 4.0);
			cd p = pc.phi.freq(xi), q = pc.psi.freq(xi);
			const double diff = std::norm(pc.f_hat(xi)) - std::norm(pc.g_hat(xi));
			CHECK(std::abs(diff) <= 1e-12 * (std::norm(p) + std::norm(q)) + 1e-300);
			CHECK(std::abs((p * std::conj(q)).real()) <= 1e-12 * std::abs(p) * std::abs(q) + 1e-300);
		}
		// squares agree on the set, and differ by 4 Phi Psi off it
		for (double l : pc.lambda.points()) {
			cd f = pc.f(l), h = pc.g(l);
			CHECK(f * f == h * h);
		}
		double gap = 0.0;
		for (double x : uniform_grid(-3.0, 3.0, 61)) {
			cd f = pc.f(x), h = pc.g(x);
			cd want = 4.0 * pc.phi.time(x) * pc.psi.time(x);
			CHECK(std::abs(f * f - h * h - want) <= 1e-12 * (std::norm(f) + std::norm(h)) + 1e-300);
			gap = std::max(gap, std::abs(want));
		}
		CHECK(gap > 0.0);
		CHECK(hardy_passes(pc, A));
	});
}

TEST_CASE("full-pair verdict ignores global phase and order")
{
	auto grid = uniform_grid(-3.0, 3.0, 61);
	prop::for_cases([&](prop::Gen &g) {
		PairView v = random_view(g);
		if (g.index(0, 1) == 1)
			v.g = v.f; // make some pairs genuinely full
		const double tol = std::pow(10.0, g.uniform(-12.0, -2.0));
		const cd u = std::polar(1.0, g.uniform(-pi, pi));
		PairView phased{[&](cd x) { return u * v.f(x); }, v.g, [&](cd x) { return u * v.f_hat(x); }, v.g_hat};
		PairView swapped{v.g, v.f, v.g_hat, v.f_hat};
		const bool base = weak_check(v, grid, grid, tol).full;
		CHECK(weak_check(phased, grid, grid, tol).full == base);
		CHECK(weak_check(swapped, grid, grid, tol).full == base);
		WeakResult w = weak_check(v, grid, grid, tol);
		CHECK((!w.full || (w.weak_time && w.weak_freq)));
		// deterministic given the tolerance
		CHECK(weak_check(v, grid, grid, tol).time_gap == w.time_gap);
	});
}

TEST_CASE("tightening the tolerance never turns a failure into a pass")
{
	prop::for_cases([](prop::Gen &g) {
		PairView v = random_view(g);
		std::vector<double> pts;
		for (int k = 0; k < 5; ++k)
			pts.push_back(g.uniform(-2.0, 2.0));
		const double loose = std::pow(10.0, g.uniform(-6.0, 1.0));
		const double tight = loose * g.uniform(0.0, 1.0);
		const bool at_tight = discrete_check(v, pts, pts, tight).pass;
		const bool at_loose = discrete_check(v, pts, pts, loose).pass;
		CHECK((!at_tight || at_loose));
	});
}

TEST_CASE("H is real on the real line")
{
	prop::for_cases([](prop::Gen &g) {
		PairView v = random_view(g);
		const double x = g.uniform(-3.0, 3.0);
		cd h = H_eval(v.f, v.g, x);
		CHECK(std::abs(h.imag()) <= 1e-13 * std::max(1.0, std::norm(v.f(x)) + std::norm(v.g(x))));
	});
}
