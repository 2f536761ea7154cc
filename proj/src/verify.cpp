#include "pauli/verify.hpp"
#include "pauli/fourier.hpp"
#include "pauli/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace pauli {

PairView PairView::of(const PairConstruction &pc)
{
	return {pc.f_evaluator(), pc.g_evaluator(), pc.f_hat_evaluator(), pc.g_hat_evaluator()};
}

namespace {

// max over pts of |op(a(x), b(x))|
template <class Op>
double grid_max(const Evaluator &a, const Evaluator &b, std::span<const double> pts, Op op)
{
	std::vector<double> v(pts.size());
	parallel_for(pts.size(), [&](std::size_t i) { v[i] = std::abs(op(a(pts[i]), b(pts[i]))); });
	return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end());
}

double modulus_gap(const Evaluator &a, const Evaluator &b, std::span<const double> pts)
{
	return grid_max(a, b, pts, [](cd x, cd y) { return std::abs(x) - std::abs(y); });
}

double square_gap(const Evaluator &a, const Evaluator &b, std::span<const double> pts)
{
	return grid_max(a, b, pts, [](cd x, cd y) { return std::abs(x * x - y * y); });
}

} // namespace

DiscreteResult discrete_check(const PairView &pair, std::span<const double> lambda,
			      std::span<const double> mu, double tol)
{
	DiscreteResult r;
	r.time_residual = modulus_gap(pair.f, pair.g, lambda);
	r.freq_residual = mu.empty() ? 0.0 : modulus_gap(pair.f_hat, pair.g_hat, mu);
	r.pass = r.time_residual <= tol && r.freq_residual <= tol;
	return r;
}

WeakResult weak_check(const PairView &pair, std::span<const double> time_grid,
		      std::span<const double> freq_grid, double tol)
{
	WeakResult r;
	r.time_gap = modulus_gap(pair.f, pair.g, time_grid);
	r.freq_gap = modulus_gap(pair.f_hat, pair.g_hat, freq_grid);
	r.weak_time = r.time_gap <= tol;
	r.weak_freq = r.freq_gap <= tol;
	r.full = r.weak_time && r.weak_freq;
	r.non_weak = r.time_gap >= 10.0 * tol && r.freq_gap >= 10.0 * tol;
	return r;
}

cd H_eval(const Evaluator &f, const Evaluator &g, cd z)
{
	cd zb = std::conj(z);
	return f(z) * std::conj(f(zb)) - g(z) * std::conj(g(zb));
}

cd Htilde_eval(const Evaluator &f_hat, const Evaluator &g_hat, cd z)
{
	return H_eval(f_hat, g_hat, z);
}

std::string to_string(SignVerdict v)
{
	return v == SignVerdict::squared_identity_forced ? "squared identity forced"
							 : "counterexample persists";
}

SignRetrieval sign_retrieval_check(const PairView &pair, std::span<const double> lambda,
				   std::span<const double> mu, std::span<const double> time_grid,
				   std::span<const double> freq_grid, double tol)
{
	SignRetrieval r;
	r.sample_residual = std::max(square_gap(pair.f, pair.g, lambda),
				     mu.empty() ? 0.0 : square_gap(pair.f_hat, pair.g_hat, mu));
	if (r.sample_residual > tol)
		throw PreconditionViolated("sign_retrieval_check: squared samples differ by " +
					   std::to_string(r.sample_residual));
	r.time_gap = square_gap(pair.f, pair.g, time_grid);
	r.freq_gap = square_gap(pair.f_hat, pair.g_hat, freq_grid);
	r.verdict = std::max(r.time_gap, r.freq_gap) >= 10.0 * tol
			    ? SignVerdict::counterexample_persists
			    : SignVerdict::squared_identity_forced;
	return r;
}

PairReport make_report(const PairConstruction &pc, double tol, double time_half,
		       double freq_half, std::size_t count)
{
	PairView v = PairView::of(pc);
	std::vector<double> tg = uniform_grid(-time_half, time_half, count);
	std::vector<double> fg = uniform_grid(-freq_half, freq_half, count);
	std::vector<double> lam, mu;
	for (double x : pc.lambda.points())
		if (std::abs(x) <= time_half)
			lam.push_back(x);
	for (double x : pc.mu.points())
		if (std::abs(x) <= freq_half)
			mu.push_back(x);

	PairReport r;
	r.kind = to_string(pc.provenance.kind);
	r.tol = tol;
	r.time_grid = {-time_half, time_half, count};
	r.freq_grid = {-freq_half, freq_half, count};
	r.discrete = discrete_check(v, lam, mu, tol);
	r.weak = weak_check(v, tg, fg, tol);
	std::vector<double> h(count), ht(count);
	parallel_for(count, [&](std::size_t i) {
		h[i] = std::abs(H_eval(v.f, v.g, tg[i]));
		ht[i] = std::abs(Htilde_eval(v.f_hat, v.g_hat, fg[i]));
	});
	r.H_max = *std::max_element(h.begin(), h.end());
	r.Htilde_max = *std::max_element(ht.begin(), ht.end());
	return r;
}

} // namespace pauli
