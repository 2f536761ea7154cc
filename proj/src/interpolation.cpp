#include "pauli/interpolation.hpp"
#include "pauli/parallel.hpp"

#include <gsl/gsl_sf_hermite.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace pauli {

namespace {

QuadratureSpec basis_spec(double rate, double window, double step, double scale,
			  QuadratureRule rule)
{
	// divided bases grow like e^{rate pi l^2} near the origin, so the
	// window must reach e^{-41} below that level
	QuadratureSpec s;
	s.window = scale * std::sqrt(window * window + 41.0 / (pi * rate));
	auto n = static_cast<std::size_t>(std::ceil(2.0 * s.window / step));
	s.intervals = std::max<std::size_t>(16, (n + 3) / 4 * 4);
	s.rule = rule;
	return s;
}

} // namespace

BasisSet::BasisSet(ProductModel time_generator, ProductModel freq_generator,
		   std::vector<double> lambda, std::vector<double> mu,
		   const InterpolationOptions &opt)
	: time_gen_(std::move(time_generator)), freq_gen_(std::move(freq_generator)),
	  lambda_(std::move(lambda)), mu_(std::move(mu)), opt_(opt)
{
	time_gen_.validate();
	freq_gen_.validate();
	if (!(time_gen_.gamma > 0.0 && freq_gen_.gamma > 0.0))
		throw DomainError("BasisSet: generators need positive Gaussian rates");
	tabulate();
}

void BasisSet::tabulate()
{
	QuadratureSpec ts = basis_spec(a(), opt_.window, opt_.step, window_scale_, rule_);
	QuadratureSpec fs = basis_spec(b(), opt_.window, opt_.step, window_scale_, rule_);
	phi_tab_.clear();
	g_tab_.clear();
	phi_tab_.reserve(lambda_.size());
	g_tab_.reserve(mu_.size());
	for (double l : lambda_)
		phi_tab_.emplace_back(divided_basis_evaluator(time_gen_, l), ts);
	for (double m : mu_)
		g_tab_.emplace_back(divided_basis_evaluator(freq_gen_, m), fs);
}

BasisSet BasisSet::refined() const
{
	BasisSet r = *this;
	r.rule_ = QuadratureRule::endpoint_corrected;
	r.window_scale_ = 1.15;
	r.opt_.step = opt_.step * 0.8;
	r.tabulate();
	return r;
}

cd BasisSet::phi(std::size_t i, cd x) const
{
	return divided_basis_eval(time_gen_, lambda_[i], x);
}

cd BasisSet::phi_hat(std::size_t i, double xi) const
{
	return phi_tab_[i](xi, -1).value;
}

cd BasisSet::psi(std::size_t j, double x) const
{
	return g_tab_[j](x, +1).value;
}

cd BasisSet::g(std::size_t j, cd xi) const
{
	return divided_basis_eval(freq_gen_, mu_[j], xi);
}

double InterpolationProblem::norm(const Eigen::VectorXcd &al, const Eigen::VectorXcd &be) const
{
	double s = 0.0;
	const auto &l = basis->lambda();
	const auto &m = basis->mu();
	for (Eigen::Index i = 0; i < al.size(); ++i)
		s += std::abs(al(i)) * std::exp(basis->a() * pi * l[static_cast<std::size_t>(i)] * l[static_cast<std::size_t>(i)]);
	for (Eigen::Index j = 0; j < be.size(); ++j)
		s += std::abs(be(j)) * std::exp(basis->b() * pi * m[static_cast<std::size_t>(j)] * m[static_cast<std::size_t>(j)]);
	return s;
}

CrossMatrices build_cross_matrices(const BasisSet &basis)
{
	const auto nl = static_cast<Eigen::Index>(basis.lambda().size());
	const auto nm = static_cast<Eigen::Index>(basis.mu().size());
	CrossMatrices cm;
	cm.A.resize(nl, nm);
	cm.B.resize(nm, nl);
	parallel_for(static_cast<std::size_t>(nm), [&](std::size_t j) {
		for (Eigen::Index i = 0; i < nl; ++i)
			cm.A(i, static_cast<Eigen::Index>(j)) = basis.psi(j, basis.lambda()[static_cast<std::size_t>(i)]);
	});
	parallel_for(static_cast<std::size_t>(nl), [&](std::size_t i) {
		for (Eigen::Index j = 0; j < nm; ++j)
			cm.B(j, static_cast<Eigen::Index>(i)) = basis.phi_hat(i, basis.mu()[static_cast<std::size_t>(j)]);
	});
	return cm;
}

OperatorNorms weighted_norms(const BasisSet &basis, const CrossMatrices &cm)
{
	const auto &l = basis.lambda();
	const auto &m = basis.mu();
	auto wl = [&](Eigen::Index i) { double x = l[static_cast<std::size_t>(i)]; return std::exp(basis.a() * pi * x * x); };
	auto wm = [&](Eigen::Index j) { double x = m[static_cast<std::size_t>(j)]; return std::exp(basis.b() * pi * x * x); };
	OperatorNorms n;
	for (Eigen::Index j = 0; j < cm.A.cols(); ++j) {
		double s = 0.0;
		for (Eigen::Index i = 0; i < cm.A.rows(); ++i)
			s += std::abs(cm.A(i, j)) * wl(i);
		n.A = std::max(n.A, s / wm(j));
	}
	for (Eigen::Index i = 0; i < cm.B.cols(); ++i) {
		double s = 0.0;
		for (Eigen::Index j = 0; j < cm.B.rows(); ++j)
			s += std::abs(cm.B(j, i)) * wm(j);
		n.B = std::max(n.B, s / wl(i));
	}
	return n;
}

double hermite_seed(std::size_t k, double x)
{
	return std::pow(2.0 * pi, 0.25) * gsl_sf_hermite_func(static_cast<int>(k), std::sqrt(2.0 * pi) * x);
}

cd hermite_seed_hat(std::size_t k, double xi)
{
	static const cd phases[4] = {{1.0, 0.0}, {0.0, -1.0}, {-1.0, 0.0}, {0.0, 1.0}};
	return phases[k % 4] * hermite_seed(k, xi);
}

Interpolant::Interpolant(std::shared_ptr<const BasisSet> basis, Eigen::VectorXcd c,
			 Eigen::VectorXcd d, Eigen::VectorXcd e)
	: basis_(std::move(basis)), c_(std::move(c)), d_(std::move(d)), e_(std::move(e))
{
}

cd Interpolant::time(double x) const
{
	cd s = 0.0;
	for (Eigen::Index i = 0; i < c_.size(); ++i)
		if (c_(i) != cd(0.0))
			s += c_(i) * basis_->phi(static_cast<std::size_t>(i), x);
	for (Eigen::Index j = 0; j < d_.size(); ++j)
		if (d_(j) != cd(0.0))
			s += d_(j) * basis_->psi(static_cast<std::size_t>(j), x);
	for (Eigen::Index k = 0; k < e_.size(); ++k)
		if (e_(k) != cd(0.0))
			s += e_(k) * hermite_seed(static_cast<std::size_t>(k), x);
	return s;
}

cd Interpolant::freq(double xi) const
{
	cd s = 0.0;
	for (Eigen::Index i = 0; i < c_.size(); ++i)
		if (c_(i) != cd(0.0))
			s += c_(i) * basis_->phi_hat(static_cast<std::size_t>(i), xi);
	for (Eigen::Index j = 0; j < d_.size(); ++j)
		if (d_(j) != cd(0.0))
			s += d_(j) * basis_->g(static_cast<std::size_t>(j), xi);
	for (Eigen::Index k = 0; k < e_.size(); ++k)
		if (e_(k) != cd(0.0))
			s += e_(k) * hermite_seed_hat(static_cast<std::size_t>(k), xi);
	return s;
}

Evaluator Interpolant::time_evaluator() const
{
	Interpolant self = *this;
	return [self](cd z) { return self.time(z.real()); };
}

Evaluator Interpolant::freq_evaluator() const
{
	Interpolant self = *this;
	return [self](cd z) { return self.freq(z.real()); };
}

namespace {

SolveResult iterate(const InterpolationProblem &problem, const CrossMatrices &cm,
		    const InterpolationOptions &opt)
{
	const BasisSet &basis = *problem.basis;
	if (problem.alpha.size() != static_cast<Eigen::Index>(basis.lambda().size()) ||
	    problem.beta.size() != static_cast<Eigen::Index>(basis.mu().size()))
		throw DomainError("solve: target sizes do not match the basis");
	SolveResult out;
	IterationState &st = out.state;
	Eigen::VectorXcd al = problem.alpha, be = problem.beta;
	Eigen::VectorXcd c = Eigen::VectorXcd::Zero(al.size());
	Eigen::VectorXcd d = Eigen::VectorXcd::Zero(be.size());
	double r = problem.norm(al, be);
	st.residuals.push_back(r);
	int above_one = 0;
	while (st.iterations < opt.max_iterations) {
		c += al;
		d += be;
		Eigen::VectorXcd na = -(cm.A * be);
		Eigen::VectorXcd nb = -(cm.B * al);
		al = std::move(na);
		be = std::move(nb);
		++st.iterations;
		double nr = problem.norm(al, be);
		st.residuals.push_back(nr);
		st.ratios.push_back(r > 0.0 ? nr / r : 0.0);
		if (nr < opt.tol) {
			st.converged = true;
			break;
		}
		above_one = st.ratios.back() >= 1.0 ? above_one + 1 : 0;
		if (above_one >= 2) {
			st.diverged = true;
			break;
		}
		r = nr;
	}
	out.F = Interpolant(problem.basis, c, d);
	return out;
}

void reevaluate(SolveResult &out, const InterpolationProblem &problem)
{
	auto fresh = std::make_shared<const BasisSet>(problem.basis->refined());
	Interpolant G(fresh, out.F.c(), out.F.d());
	const auto &l = fresh->lambda();
	const auto &m = fresh->mu();
	Eigen::VectorXcd et(static_cast<Eigen::Index>(l.size())), ef(static_cast<Eigen::Index>(m.size()));
	parallel_for(l.size(), [&](std::size_t i) {
		et(static_cast<Eigen::Index>(i)) = G.time(l[i]) - problem.alpha(static_cast<Eigen::Index>(i));
	});
	parallel_for(m.size(), [&](std::size_t j) {
		ef(static_cast<Eigen::Index>(j)) = G.freq(m[j]) - problem.beta(static_cast<Eigen::Index>(j));
	});
	out.max_time_error = et.size() ? et.cwiseAbs().maxCoeff() : 0.0;
	out.max_freq_error = ef.size() ? ef.cwiseAbs().maxCoeff() : 0.0;
	out.weighted_error = problem.norm(et, ef);
}

} // namespace

SolveResult solve(const InterpolationProblem &problem, const CrossMatrices &cm,
		  const InterpolationOptions &opt)
{
	SolveResult out = iterate(problem, cm, opt);
	reevaluate(out, problem);
	return out;
}

SolveResult solve(const InterpolationProblem &problem, const InterpolationOptions &opt)
{
	return solve(problem, build_cross_matrices(*problem.basis), opt);
}

ProductModel vanishing_generator(const SampledSet &zeros, double rate,
				 std::span<const double> extra)
{
	std::set<double> mags;
	bool has_zero = false;
	for (double x : zeros.points()) {
		if (x == 0.0)
			has_zero = true;
		else
			mags.insert(std::abs(x));
	}
	std::size_t lattice_count = 0;
	if (zeros.continuation && std::abs(zeros.continuation->p - 2.0) < 1e-12)
		lattice_count = zeros.positive().size() - (has_zero ? 1 : 0);
	for (double v : extra)
		if (v != 0.0)
			mags.insert(std::abs(v));
	ProductModel m;
	m.power = 4;
	m.gamma = rate;
	m.sigma = has_zero ? 1 : 0;
	m.zeros.assign(mags.begin(), mags.end());
	if (lattice_count > 0) {
		const auto &c = *zeros.continuation;
		m.lattice = LatticeTail{c.density, c.shift, static_cast<double>(lattice_count + 1)};
		fill_power_sums(m);
	}
	m.validate();
	return m;
}

std::vector<double> window_points(const SampledSet &set, double L, double window)
{
	std::vector<double> out;
	for (double x : set.points())
		if (std::abs(x) > L && std::abs(x) <= window)
			out.push_back(x);
	return out;
}

std::vector<double> default_L_candidates(double window)
{
	std::vector<double> c;
	for (double L = 0.0; L <= window - 0.5 + 1e-12; L += 0.25)
		c.push_back(L);
	return c;
}

namespace {

std::vector<Eigen::Index> select(const std::vector<double> &pts, double L)
{
	std::vector<Eigen::Index> idx;
	for (std::size_t i = 0; i < pts.size(); ++i)
		if (std::abs(pts[i]) > L)
			idx.push_back(static_cast<Eigen::Index>(i));
	return idx;
}

OperatorNorms sub_norms(const BasisSet &basis, const CrossMatrices &cm,
			const std::vector<Eigen::Index> &li, const std::vector<Eigen::Index> &mi)
{
	const auto &l = basis.lambda();
	const auto &m = basis.mu();
	auto wl = [&](Eigen::Index i) { double x = l[static_cast<std::size_t>(i)]; return std::exp(basis.a() * pi * x * x); };
	auto wm = [&](Eigen::Index j) { double x = m[static_cast<std::size_t>(j)]; return std::exp(basis.b() * pi * x * x); };
	OperatorNorms n;
	for (auto j : mi) {
		double s = 0.0;
		for (auto i : li)
			s += std::abs(cm.A(i, j)) * wl(i);
		n.A = std::max(n.A, s / wm(j));
	}
	for (auto i : li) {
		double s = 0.0;
		for (auto j : mi)
			s += std::abs(cm.B(j, i)) * wm(j);
		n.B = std::max(n.B, s / wl(i));
	}
	return n;
}

} // namespace

LChoice choose_L(const SampledSet &lambda, const SampledSet &mu, double a, double b,
		 std::span<const double> candidates, const InterpolationOptions &opt)
{
	BasisSet basis(vanishing_generator(lambda, a), vanishing_generator(mu, b),
		       window_points(lambda, 0.0, opt.window), window_points(mu, 0.0, opt.window), opt);
	CrossMatrices cm = build_cross_matrices(basis);
	LChoice out;
	for (double L : candidates) {
		OperatorNorms n = sub_norms(basis, cm, select(basis.lambda(), L), select(basis.mu(), L));
		out.sweep.emplace_back(L, n);
		if (n.A < 0.5 && n.B < 0.5) {
			out.L = L;
			out.norms = n;
			return out;
		}
	}
	std::string msg = "choose_L: no feasible L; norms at the last candidate A=" +
			  std::to_string(out.sweep.empty() ? 0.0 : out.sweep.back().second.A) +
			  " B=" + std::to_string(out.sweep.empty() ? 0.0 : out.sweep.back().second.B);
	throw Infeasible(msg);
}

VanishingFunction assemble_vanishing_function(const SampledSet &lambda, const SampledSet &mu,
					      double a, double b, std::size_t seed_count,
					      const InterpolationOptions &opt)
{
	std::vector<double> interior_l, interior_m;
	std::string last_norms;
	for (double L : default_L_candidates(opt.window)) {
		interior_l.clear();
		interior_m.clear();
		for (double x : lambda.points())
			if (std::abs(x) <= L)
				interior_l.push_back(x);
		for (double x : mu.points())
			if (std::abs(x) <= L)
				interior_m.push_back(x);
		const std::size_t constraints = interior_l.size() + interior_m.size();
		const std::size_t K = seed_count ? seed_count : constraints + 2;
		if (K <= constraints)
			throw Degenerate("assemble_vanishing_function: seed count must exceed the " +
					 std::to_string(constraints) + " interior constraints");

		auto basis = std::make_shared<const BasisSet>(
			vanishing_generator(lambda, a), vanishing_generator(mu, b),
			window_points(lambda, L, opt.window), window_points(mu, L, opt.window), opt);
		CrossMatrices cm = build_cross_matrices(*basis);
		OperatorNorms norms = weighted_norms(*basis, cm);
		if (!(norms.A < 0.5 && norms.B < 0.5)) {
			last_norms = "A=" + std::to_string(norms.A) + " B=" + std::to_string(norms.B);
			continue;
		}

		// each seed h_k plus the correction that clears it on the outer points
		const auto &tl = basis->lambda();
		const auto &tm = basis->mu();
		const auto nl = static_cast<Eigen::Index>(tl.size());
		const auto nm = static_cast<Eigen::Index>(tm.size());
		std::vector<Interpolant> F(K);
		for (std::size_t k = 0; k < K; ++k) {
			InterpolationProblem p{basis, Eigen::VectorXcd(nl), Eigen::VectorXcd(nm)};
			for (Eigen::Index i = 0; i < nl; ++i)
				p.alpha(i) = -hermite_seed(k, tl[static_cast<std::size_t>(i)]);
			for (Eigen::Index j = 0; j < nm; ++j)
				p.beta(j) = -hermite_seed_hat(k, tm[static_cast<std::size_t>(j)]);
			SolveResult r = iterate(p, cm, opt);
			if (!r.state.converged)
				throw SolverFailed("assemble_vanishing_function: seed correction did not converge");
			Eigen::VectorXcd e = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(K));
			e(static_cast<Eigen::Index>(k)) = 1.0;
			F[k] = Interpolant(basis, r.F.c(), r.F.d(), e);
		}

		VanishingFunction out;
		out.L = L;
		out.norms = norms;
		out.seeds = K;
		out.constraints = constraints;
		Eigen::VectorXcd wts;
		if (constraints == 0) {
			wts = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(K));
			wts(0) = 1.0;
		} else {
			Eigen::MatrixXcd C(static_cast<Eigen::Index>(constraints), static_cast<Eigen::Index>(K));
			parallel_for(K, [&](std::size_t j) {
				Eigen::Index row = 0;
				for (double x : interior_l)
					C(row++, static_cast<Eigen::Index>(j)) = F[j].time(x);
				for (double x : interior_m)
					C(row++, static_cast<Eigen::Index>(j)) = F[j].freq(x);
			});
			Eigen::JacobiSVD<Eigen::MatrixXcd> svd(C, Eigen::ComputeFullV);
			wts = svd.matrixV().col(static_cast<Eigen::Index>(K) - 1);
			out.smallest_singular = svd.singularValues().size() >= static_cast<Eigen::Index>(K)
							? svd.singularValues()(static_cast<Eigen::Index>(K) - 1)
							: 0.0;
		}
		out.weights = wts;
		Eigen::VectorXcd c = Eigen::VectorXcd::Zero(nl), d = Eigen::VectorXcd::Zero(nm);
		Eigen::VectorXcd e = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(K));
		for (std::size_t j = 0; j < K; ++j) {
			c += wts(static_cast<Eigen::Index>(j)) * F[j].c();
			d += wts(static_cast<Eigen::Index>(j)) * F[j].d();
			e += wts(static_cast<Eigen::Index>(j)) * F[j].e();
		}
		Interpolant f(basis, c, d, e);

		// normalise to sup 1 on the time window
		const std::size_t ng = 401;
		std::vector<double> mag(ng);
		parallel_for(ng, [&](std::size_t i) {
			double x = -opt.window + 2.0 * opt.window * static_cast<double>(i) / static_cast<double>(ng - 1);
			mag[i] = std::abs(f.time(x));
		});
		double sup = *std::max_element(mag.begin(), mag.end());
		if (!(sup > 0.0))
			throw Degenerate("assemble_vanishing_function: combination vanishes on the grid");
		out.f = f.scaled(1.0 / sup);

		for (double x : window_points(lambda, 0.0, opt.window))
			out.time_residual = std::max(out.time_residual, std::abs(out.f.time(x)));
		for (double x : window_points(mu, 0.0, opt.window))
			out.freq_residual = std::max(out.freq_residual, std::abs(out.f.freq(x)));
		return out;
	}
	throw Infeasible("assemble_vanishing_function: no window offset gives contracting cross maps" +
			 (last_norms.empty() ? std::string() : " (last " + last_norms + ")"));
}

} // namespace pauli
