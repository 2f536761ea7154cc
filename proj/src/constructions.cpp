#include "pauli/constructions.hpp"
#include "pauli/asymptotics.hpp"
#include "pauli/fourier.hpp"
#include "pauli/parallel.hpp"
#include "pauli/thresholds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pauli {

std::string to_string(PairKind k)
{
	switch (k) {
	case PairKind::time: return "time";
	case PairKind::frequency_matched: return "freq-matched";
	case PairKind::non_weak: return "non-weak";
	case PairKind::zero_partner: return "zero-partner";
	}
	return "unknown";
}

PairKind pair_kind_from_string(const std::string &s)
{
	for (PairKind k : {PairKind::time, PairKind::frequency_matched, PairKind::non_weak,
			   PairKind::zero_partner})
		if (to_string(k) == s)
			return k;
	throw DomainError("unknown pair kind '" + s + "'");
}

double product_freq_rate(double gamma, double kappa)
{
	return gamma / (gamma * gamma + kappa * kappa);
}

namespace {

// zero density of a power-4 model in the z^2 variable
double model_kappa(const ProductModel &m)
{
	if (m.lattice)
		return m.lattice->density;
	if (m.zeros.empty())
		return 0.0;
	double r = m.zeros.back();
	return static_cast<double>(m.zeros.size()) / (r * r);
}

double half_density(const SampledSet &set)
{
	if (set.continuation)
		return set.continuation->density;
	std::vector<double> pos = set.positive();
	std::erase(pos, 0.0);
	if (pos.size() < 16)
		return 0.0;
	return density_fit(std::span<const double>(pos), 2.0).density;
}

void require_symmetric(const SampledSet &set, const char *who)
{
	if (!set.is_symmetric())
		throw PreconditionViolated(std::string(who) + ": sampling set must satisfy S = -S");
}

// the set with 0 removed; the continuation survives only when it still
// indexes the remaining points
SampledSet without_zero(const SampledSet &set, bool &had_zero)
{
	std::vector<double> pts;
	had_zero = false;
	for (double x : set.points()) {
		if (x == 0.0)
			had_zero = true;
		else
			pts.push_back(x);
	}
	SampledSet out(pts);
	out.seed = set.seed;
	if (!had_zero)
		out.continuation = set.continuation;
	return out;
}

} // namespace

PairFactor PairFactor::from_model(const ProductModel &m, double max_xi)
{
	PairFactor f;
	f.model = m;
	f.time = as_evaluator(m);
	if (m.gamma > 0.0) {
		double rate = std::max(0.1, 0.5 * product_freq_rate(m.gamma, model_kappa(m)));
		auto tab = std::make_shared<const TabulatedTransform>(
			f.time, make_spec(m.gamma, rate, max_xi, 1e-16));
		f.freq = [tab](cd xi) { return (*tab)(xi.real()).value; };
	} else {
		f.freq = [](cd) -> cd { throw DomainError("PairFactor: model has no Gaussian factor"); };
	}
	return f;
}

PairFactor PairFactor::from_interpolant(const Interpolant &F)
{
	PairFactor f;
	f.interpolant = F;
	f.time = F.time_evaluator();
	f.freq = F.freq_evaluator();
	return f;
}

PairFactor PairFactor::zero()
{
	PairFactor f;
	f.time = [](cd) { return cd(0.0); };
	f.freq = [](cd) { return cd(0.0); };
	return f;
}

cd PairConstruction::f(cd z) const
{
	if (provenance.kind == PairKind::zero_partner)
		return phi.time(z);
	return phi.time(z) + unit_phase(theta) * psi.time(z);
}

cd PairConstruction::g(cd z) const
{
	if (provenance.kind == PairKind::zero_partner)
		return 0.0;
	return phi.time(z) - unit_phase(theta) * psi.time(z);
}

cd PairConstruction::f_hat(double xi) const
{
	if (provenance.kind == PairKind::zero_partner)
		return phi.freq(xi);
	return phi.freq(xi) + unit_phase(theta) * psi.freq(xi);
}

cd PairConstruction::g_hat(double xi) const
{
	if (provenance.kind == PairKind::zero_partner)
		return 0.0;
	return phi.freq(xi) - unit_phase(theta) * psi.freq(xi);
}

Evaluator PairConstruction::f_evaluator() const
{
	auto self = std::make_shared<const PairConstruction>(*this);
	return [self](cd z) { return self->f(z); };
}

Evaluator PairConstruction::g_evaluator() const
{
	auto self = std::make_shared<const PairConstruction>(*this);
	return [self](cd z) { return self->g(z); };
}

Evaluator PairConstruction::f_hat_evaluator() const
{
	auto self = std::make_shared<const PairConstruction>(*this);
	return [self](cd xi) { return self->f_hat(xi.real()); };
}

Evaluator PairConstruction::g_hat_evaluator() const
{
	auto self = std::make_shared<const PairConstruction>(*this);
	return [self](cd xi) { return self->g_hat(xi.real()); };
}

std::optional<double> choose_epsilon(double A, double base_rate, double kappa)
{
	// the Fourier rate is largest as eps -> 0; keep at least half of that headroom
	const double best = product_freq_rate(base_rate, kappa) - A;
	for (int k = 0; k <= 30; ++k) {
		double eps = std::ldexp(1.0, -k);
		double gamma = base_rate + eps;
		double room = gamma * (1.0 / A - gamma);
		if (room > 0.0 && 1.1 * kappa < std::sqrt(room) &&
		    product_freq_rate(gamma, kappa) - A >= 0.5 * best)
			return eps;
	}
	return std::nullopt;
}

PhaseChoice select_phase(const Evaluator &phi, const Evaluator &psi,
			 std::span<const double> time_grid, const Evaluator &phi_hat,
			 const Evaluator &psi_hat, std::span<const double> freq_grid)
{
	auto cross = [](const Evaluator &a, const Evaluator &b, std::span<const double> grid) {
		std::vector<cd> out(grid.size());
		parallel_for(grid.size(), [&](std::size_t i) {
			out[i] = a(grid[i]) * std::conj(b(grid[i]));
		});
		return out;
	};
	std::vector<std::vector<cd>> sides;
	sides.push_back(cross(phi, psi, time_grid));
	if (phi_hat && psi_hat && !freq_grid.empty())
		sides.push_back(cross(phi_hat, psi_hat, freq_grid));
	for (const auto &s : sides) {
		double m = 0.0;
		for (const cd &v : s)
			m = std::max(m, std::abs(v));
		if (!(m > 0.0))
			throw Degenerate("select_phase: Phi conj(Psi) vanishes on the grid");
	}

	// Re(Phi conj(e^{i t} Psi)) = Re(e^{-i t} Phi conj(Psi))
	auto objective = [&](double t) {
		cd rot = std::conj(unit_phase(t));
		double w = std::numeric_limits<double>::infinity();
		for (const auto &s : sides) {
			double m = 0.0;
			for (const cd &v : s)
				m = std::max(m, std::abs((rot * v).real()));
			w = std::min(w, m);
		}
		return w;
	};

	const int sweep = 64;
	PhaseChoice best{0.0, objective(0.0)};
	for (int k = 1; k < sweep; ++k) {
		double t = pi * k / sweep;
		double v = objective(t);
		if (v > best.witness)
			best = {t, v};
	}
	// golden-section refinement inside the neighbouring sweep cells
	double lo = best.theta - pi / sweep, hi = best.theta + pi / sweep;
	const double r = (std::sqrt(5.0) - 1.0) / 2.0;
	double x1 = hi - r * (hi - lo), x2 = lo + r * (hi - lo);
	double f1 = objective(x1), f2 = objective(x2);
	for (int it = 0; it < 60 && hi - lo > 1e-12; ++it) {
		if (f1 < f2) {
			lo = x1;
			x1 = x2;
			f1 = f2;
			x2 = lo + r * (hi - lo);
			f2 = objective(x2);
		} else {
			hi = x2;
			x2 = x1;
			f2 = f1;
			x1 = hi - r * (hi - lo);
			f1 = objective(x1);
		}
	}
	double t = 0.5 * (lo + hi);
	double v = objective(t);
	// keep the sweep node on ties so real pairs stay at theta = 0
	if (v > best.witness * (1.0 + 1e-12))
		best = {std::fmod(t + pi, pi), v};
	return best;
}

PairConstruction build_time_pair(const SampledSet &lambda, double A, double epsilon)
{
	if (!(A > 0.0 && A < 1.0))
		throw DomainError("build_time_pair: A must lie in (0,1)");
	require_symmetric(lambda, "build_time_pair");
	bool had_zero = false;
	SampledSet set = without_zero(lambda, had_zero);
	auto [even, odd] = split_parity(set);

	const double base = A < 1.0 / std::sqrt(2.0) ? 1.0 / (2.0 * A) : A;
	const double kappa = std::max(half_density(even), half_density(odd));
	if (!(epsilon > 0.0))
		epsilon = choose_epsilon(A, base, kappa).value_or(std::ldexp(1.0, -10));
	const double gamma = base + epsilon;

	ProductModel phi = vanishing_generator(even, gamma);
	ProductModel psi = vanishing_generator(odd, gamma);
	phi.sigma = 0;
	psi.sigma = had_zero ? 1 : 0;
	phi.meta = "time pair, even-indexed zeros";
	psi.meta = "time pair, odd-indexed zeros";

	for (const ProductModel *m : {&phi, &psi}) {
		DecayPredicate d = fourier_decay_predicate(*m, A);
		if (!d.pass)
			throw Infeasible("build_time_pair: density too high, measured Fourier decay rate " +
					 std::to_string(d.rate) + " < A = " + std::to_string(A));
	}

	PairConstruction pc;
	pc.phi = PairFactor::from_model(phi);
	pc.psi = PairFactor::from_model(psi);
	std::vector<double> grid = uniform_grid(-4.0, 4.0, 401);
	pc.theta = select_phase(pc.phi.time, pc.psi.time, grid).theta;
	pc.lambda = lambda;
	pc.provenance.kind = PairKind::time;
	pc.provenance.A = A;
	pc.provenance.epsilon = epsilon;
	pc.provenance.phi_rate = pc.provenance.psi_rate = gamma;
	pc.provenance.phi_freq_rate = product_freq_rate(gamma, model_kappa(phi));
	pc.provenance.psi_freq_rate = product_freq_rate(gamma, model_kappa(psi));
	pc.provenance.time_density = half_density(lambda);
	pc.provenance.seed = lambda.seed;
	return pc;
}

PairConstruction build_frequency_matched_pair(const SampledSet &lambda, double A,
					      double epsilon, const InterpolationOptions &opt)
{
	if (!(A > 0.0 && A < 1.0))
		throw DomainError("build_frequency_matched_pair: A must lie in (0,1)");
	for (double x : lambda.points())
		if (x < 0.0)
			throw PreconditionViolated("build_frequency_matched_pair: Lambda must lie in [0, inf)");
	std::vector<double> pos;
	for (double x : lambda.points())
		pos.push_back(x);
	SampledSet sym = SampledSet::symmetric(pos);
	sym.continuation = lambda.continuation;
	sym.seed = lambda.seed;
	const double D = half_density(sym);

	PairConstruction pc;
	pc.lambda = sym;
	pc.mu = sym;
	pc.provenance.A = A;
	pc.provenance.time_density = pc.provenance.freq_density = D;
	pc.provenance.seed = lambda.seed;

	if (A >= std::sqrt(3.0) / 2.0) {
		if (!(D < 1.0))
			throw Infeasible("build_frequency_matched_pair: density must be below 1 when A >= sqrt(3)/2");
		double rate = 0.5 * std::sqrt(1.0 - D * D);
		VanishingFunction vf = assemble_vanishing_function(sym, sym, rate, rate, 0, opt);
		pc.phi = PairFactor::from_interpolant(vf.f);
		pc.psi = PairFactor::zero();
		pc.provenance.kind = PairKind::zero_partner;
		pc.provenance.phi_rate = pc.provenance.phi_freq_rate = rate;
		return pc;
	}

	if (!(D < pauli_threshold(A) / 2.0))
		throw PreconditionViolated("build_frequency_matched_pair: density " + std::to_string(D) +
					   " is not below max(c1, 2)/2");
	bool had_zero = false;
	SampledSet set = without_zero(sym, had_zero);
	auto [even, odd] = split_parity(set);
	const double kappa = std::max(half_density(even), half_density(odd));
	if (!(epsilon > 0.0)) {
		auto e = choose_epsilon(A, sigma_of_A(A), kappa);
		if (!e)
			throw Infeasible("build_frequency_matched_pair: no eps satisfies the rate inequality");
		epsilon = *e;
	}
	const double gamma = sigma_of_A(A) + epsilon;

	ProductModel phi = vanishing_generator(even, gamma);
	ProductModel psi = vanishing_generator(odd, gamma);
	phi.sigma = 0;
	psi.sigma = 1;
	phi.meta = "frequency-matched pair, even factor";
	psi.meta = "frequency-matched pair, odd factor";

	pc.phi = PairFactor::from_model(phi);
	pc.psi = PairFactor::from_model(psi);
	pc.theta = 0.0;
	pc.provenance.kind = PairKind::frequency_matched;
	pc.provenance.epsilon = epsilon;
	pc.provenance.phi_rate = pc.provenance.psi_rate = gamma;
	pc.provenance.phi_freq_rate = product_freq_rate(gamma, model_kappa(phi));
	pc.provenance.psi_freq_rate = product_freq_rate(gamma, model_kappa(psi));
	return pc;
}

PairConstruction build_nonweak_pair(const SampledSet &lambda, const SampledSet &mu, double A,
				    double epsilon, const InterpolationOptions &opt)
{
	if (!(A > 0.0 && A < 1.0))
		throw DomainError("build_nonweak_pair: A must lie in (0,1)");
	require_symmetric(lambda, "build_nonweak_pair");
	require_symmetric(mu, "build_nonweak_pair");
	epsilon = std::max(epsilon, 0.0);
	const double Dl = half_density(lambda), Dm = half_density(mu);

	PairConstruction pc;
	pc.lambda = lambda;
	pc.mu = mu;
	pc.provenance.A = A;
	pc.provenance.epsilon = epsilon;
	pc.provenance.time_density = Dl;
	pc.provenance.freq_density = Dm;
	pc.provenance.seed = lambda.seed;

	const std::vector<double> tgrid = uniform_grid(-opt.window, opt.window, 401);

	if (A >= std::sqrt(3.0) / 2.0) {
		double D = std::max(Dl, Dm);
		if (!(D < 1.0))
			throw Infeasible("build_nonweak_pair: densities must be below 1 when A >= sqrt(3)/2");
		double rate = 0.5 * std::sqrt(1.0 - D * D);
		VanishingFunction vf = assemble_vanishing_function(lambda, mu, rate, rate, 0, opt);
		pc.phi = PairFactor::from_interpolant(vf.f);
		pc.psi = PairFactor::zero();
		pc.provenance.kind = PairKind::zero_partner;
		pc.provenance.phi_rate = pc.provenance.phi_freq_rate = rate;
		return pc;
	}

	const double bound = c2(A) / 2.0;
	if (!(Dl < bound && Dm < bound))
		throw PreconditionViolated("build_nonweak_pair: densities must lie below c2(A)/2 = " +
					   std::to_string(bound));

	const double x = x_of_A(A);
	// per-part density bounds of E(A, x/A) and E(x/A, A)
	const double S1 = A * std::sqrt(1.0 / x - 1.0);
	const double S2 = std::sqrt(x * (1.0 - x)) / A;
	const double frac = std::abs(S1 - S2) <= 1e-12 * (S1 + S2) ? 0.5 : S1 / (S1 + S2);
	auto [l1, l2] = split_fraction(lambda, frac);
	auto [m2, m1] = split_fraction(mu, frac);

	const double a1 = A + epsilon, b1 = x / A + epsilon;
	const double a2 = x / A + epsilon, b2 = A + epsilon;
	VanishingFunction phi = assemble_vanishing_function(l1, m1, a1, b1, 0, opt);
	VanishingFunction psi = assemble_vanishing_function(l2, m2, a2, b2, 0, opt);

	pc.phi = PairFactor::from_interpolant(phi.f);
	pc.psi = PairFactor::from_interpolant(psi.f);
	const std::vector<double> fgrid = uniform_grid(-opt.window, opt.window, 401);
	pc.theta = select_phase(pc.phi.time, pc.psi.time, tgrid, pc.phi.freq, pc.psi.freq, fgrid).theta;
	pc.provenance.kind = PairKind::non_weak;
	pc.provenance.phi_rate = a1;
	pc.provenance.phi_freq_rate = b1;
	pc.provenance.psi_rate = a2;
	pc.provenance.psi_freq_rate = b2;
	pc.provenance.split_fraction = frac;
	return pc;
}

} // namespace pauli
