#include "pauli/cli.hpp"
#include "pauli/acceptance.hpp"
#include "pauli/asymptotics.hpp"
#include "pauli/constructions.hpp"
#include "pauli/fourier.hpp"
#include "pauli/interpolation.hpp"
#include "pauli/serialize.hpp"
#include "pauli/thresholds.hpp"
#include "pauli/verify.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace pauli {

std::uint64_t fnv1a(std::string_view text)
{
	std::uint64_t h = 14695981039346656037ull;
	for (unsigned char c : text) {
		h ^= c;
		h *= 1099511628211ull;
	}
	return h;
}

std::vector<double> parse_range(const std::string &spec)
{
	double lo, hi, step;
	char c1, c2;
	std::istringstream in(spec);
	if (!(in >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' || !in.eof())
		throw DomainError("range '" + spec + "' is not lo:hi:step");
	if (!(step > 0.0) || hi < lo)
		throw DomainError("range '" + spec + "' needs step > 0 and hi >= lo");
	auto n = static_cast<std::size_t>(std::llround((hi - lo) / step)) + 1;
	std::vector<double> v(n);
	for (std::size_t i = 0; i < n; ++i)
		v[i] = lo + step * static_cast<double>(i);
	return v;
}

namespace {

std::string g17(double v)
{
	char buf[40];
	std::snprintf(buf, sizeof buf, "%.17g", v);
	return buf;
}

struct Context {
	std::ostream &out;
	std::ostream &err;
	std::string config;
	std::uint64_t seed = 0;

	std::string hash() const
	{
		char buf[24];
		std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(config)));
		return buf;
	}
	std::string csv_header() const
	{
		return "# pauli_lab " + std::string(tool_version) + " config=" + hash() +
		       " seed=" + std::to_string(seed) + "\n";
	}
	json json_header() const
	{
		return {{"tool", "pauli_lab"}, {"version", tool_version}, {"config", hash()}, {"seed", seed}};
	}
	// writes to `path`, or to the main stream for "" and "-"
	void emit(const std::string &path, const std::string &text) const
	{
		if (path.empty() || path == "-") {
			out << text;
			return;
		}
		std::ofstream f(path, std::ios::binary);
		if (!f)
			throw Error("cannot open '" + path + "' for writing");
		f << text;
	}
	void emit_json(const std::string &path, json j) const
	{
		j["_header"] = json_header();
		emit(path, j.dump(2) + "\n");
	}
};

// unreadable inputs are configuration errors, not failed checks
struct InputError : Error {
	using Error::Error;
};

json read_json(const std::string &path)
{
	std::ifstream f(path);
	if (!f)
		throw InputError("cannot open '" + path + "'");
	json j = json::parse(f);
	j.erase("_header");
	return j;
}

SampledSet read_set(const std::string &path)
{
	std::ifstream f(path);
	if (!f)
		throw InputError("cannot open '" + path + "'");
	return read_csv(f);
}

SampledSet make_set(const std::string &path, double density, std::size_t count, double jitter,
		    std::uint64_t seed, bool symmetric)
{
	SampledSet half;
	if (!path.empty()) {
		half = read_set(path);
	} else {
		SmoothSpec sp;
		sp.density = density;
		sp.count = count;
		sp.jitter = jitter;
		sp.seed = seed;
		half = generate_smooth(sp);
	}
	if (!symmetric || half.is_symmetric())
		return half;
	SampledSet s = SampledSet::symmetric(half.positive());
	s.continuation = half.continuation;
	s.seed = half.seed;
	return s;
}

// the checks that define success for each kind of pair
bool report_passes(const PairReport &r)
{
	if (r.kind == "freq-matched")
		return r.discrete.pass && r.weak.weak_freq;
	if (r.kind == "non-weak")
		return r.discrete.pass && r.weak.non_weak;
	return r.discrete.pass;
}

} // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
	CLI::App app{"Numerical laboratory for discrete Pauli pairs and Gaussian-class uniqueness"};
	app.set_config("--config", "", "TOML/INI file with option values");
	app.allow_config_extras(false);
	app.require_subcommand(1);
	app.fallthrough();
	app.set_version_flag("--version", tool_version);

	std::uint64_t seed = 0;
	std::string out_path;
	app.add_option("--out", out_path, "Output file (default stdout)");

	// thresholds
	auto *th = app.add_subcommand("thresholds", "Threshold table over an A grid");
	std::string a_grid = "0.05:0.95:0.05";
	th->add_option("--a-grid", a_grid, "lo:hi:step");

	// gen-seq
	auto *gs = app.add_subcommand("gen-seq", "Generate a smooth sampling sequence");
	SmoothSpec spec;
	bool gs_symmetric = false;
	gs->add_option("--D", spec.density, "Density");
	gs->add_option("--p", spec.p, "Exponent");
	gs->add_option("--count", spec.count, "Number of points");
	gs->add_option("--jitter", spec.jitter, "Index jitter bound");
	gs->add_option("--separation", spec.separation, "Separation constant");
	gs->add_option("--seed", seed, "RNG seed");
	gs->add_flag("--symmetric", gs_symmetric, "Mirror to +-points");

	// construct
	auto *cs = app.add_subcommand("construct", "Build a pair");
	std::string kind, lambda_path, mu_path;
	double A = 0.5, D = 0.9, eps = 0.0, jitter = 0.0;
	std::size_t count = 200;
	cs->add_option("kind", kind, "time | freq-matched | non-weak")
		->required()
		->check(CLI::IsMember({"time", "freq-matched", "non-weak"}));
	cs->add_option("--A", A, "Decay parameter");
	cs->add_option("--D", D, "Density of generated sets");
	cs->add_option("--count", count, "Points per generated half-line");
	cs->add_option("--jitter", jitter, "Index jitter of generated sets");
	cs->add_option("--eps", eps, "Rate headroom (<= 0: automatic)");
	cs->add_option("--seed", seed, "RNG seed");
	cs->add_option("--lambda", lambda_path, "Time samples CSV");
	cs->add_option("--mu", mu_path, "Frequency samples CSV");

	// verify
	auto *vf = app.add_subcommand("verify", "Verdicts for a pair file");
	std::string pair_path;
	double tol = 1e-8, time_half = 4.0, freq_half = 4.0;
	std::size_t grid_count = 401;
	vf->add_option("--pair", pair_path, "pair JSON")->required();
	vf->add_option("--tol", tol, "Pass tolerance");
	vf->add_option("--time-half", time_half, "Time grid half-width");
	vf->add_option("--freq-half", freq_half, "Frequency grid half-width");
	vf->add_option("--grid-count", grid_count, "Grid nodes per side");

	// ft
	auto *ft = app.add_subcommand("ft", "Fourier transform of a model");
	std::string model_path, xi_grid = "-4:4:0.05";
	double ft_tol = 1e-14;
	ft->add_option("--model", model_path, "model JSON")->required();
	ft->add_option("--xi", xi_grid, "lo:hi:step");
	ft->add_option("--tol", ft_tol, "Quadrature target");

	// indicator
	auto *ind = app.add_subcommand("indicator", "Indicator sweep of a model");
	double r_lo = 3.0, r_hi = 10.0, mask_c = 0.25;
	std::size_t nodes = 801, n_theta = 17;
	ind->add_option("--model", model_path, "model JSON")->required();
	ind->add_option("--r-lo", r_lo, "Inner radius");
	ind->add_option("--r-hi", r_hi, "Outer radius");
	ind->add_option("--nodes", nodes, "Radial nodes");
	ind->add_option("--thetas", n_theta, "Angles in [0, pi/2]");
	ind->add_option("--mask-c", mask_c, "Zero mask constant");

	// interp
	auto *ip = app.add_subcommand("interp", "Assemble a vanishing function");
	double ia = 0.5, ib = 0.5, itol = 1e-6;
	InterpolationOptions iopt;
	ip->add_option("--lambda", lambda_path, "Time samples CSV");
	ip->add_option("--mu", mu_path, "Frequency samples CSV");
	ip->add_option("--D", D, "Density of generated sets");
	ip->add_option("--count", count, "Points per generated half-line");
	ip->add_option("--seed", seed, "RNG seed");
	ip->add_option("--a", ia, "Time decay rate");
	ip->add_option("--b", ib, "Frequency decay rate");
	ip->add_option("--window", iopt.window, "Sample window");
	ip->add_option("--tol", itol, "Residual tolerance");

	// acceptance
	auto *ac = app.add_subcommand("acceptance", "Run the acceptance suite");
	AcceptanceOptions aopt;
	ac->add_option("--only", aopt.only, "Criterion ids")->delimiter(',');
	ac->add_option("--property-suite", aopt.property_suites, "Command for AC-9");

	try {
		app.parse(argc, argv);
	} catch (const CLI::CallForHelp &e) {
		out << app.help();
		return 0;
	} catch (const CLI::CallForVersion &) {
		out << tool_version << "\n";
		return 0;
	} catch (const CLI::ParseError &e) {
		err << e.what() << "\n" << app.help();
		return 2;
	}

	Context ctx{out, err, {}, seed};
	ctx.config = app.get_subcommands().front()->get_name() + "\n" + app.config_to_str(true, false);

	try {
		if (th->parsed()) {
			std::string s = ctx.csv_header() + "A,c1,c2,pauli_threshold,uniqueness_time,uniqueness_freq\n";
			for (double a : parse_range(a_grid)) {
				DensityBounds u = uniqueness_density_bounds({a, a});
				s += g17(a) + "," + g17(c1(a)) + "," + g17(c2(a)) + "," + g17(pauli_threshold(a)) +
				     "," + g17(u.time) + "," + g17(u.freq) + "\n";
			}
			ctx.emit(out_path, s);
			return 0;
		}
		if (gs->parsed()) {
			spec.seed = seed;
			SampledSet set = generate_smooth(spec);
			if (gs_symmetric) {
				SampledSet m = SampledSet::symmetric(set.positive());
				m.continuation = set.continuation;
				m.seed = set.seed;
				set = m;
			}
			std::ostringstream s;
			s << ctx.csv_header();
			write_csv(s, set, spec.p, spec.density);
			ctx.emit(out_path, s.str());
			return 0;
		}
		if (cs->parsed()) {
			PairConstruction pc;
			if (kind == "time") {
				pc = build_time_pair(make_set(lambda_path, D, count, jitter, seed, true), A, eps);
			} else if (kind == "freq-matched") {
				SampledSet l = make_set(lambda_path, D, count, jitter, seed, false);
				pc = build_frequency_matched_pair(l.positive_half(), A, eps);
			} else {
				SampledSet l = make_set(lambda_path, D, count, jitter, seed, true);
				SampledSet m = mu_path.empty() ? make_set({}, D, count, jitter, seed + 1, true)
							       : make_set(mu_path, D, count, jitter, seed, true);
				pc = build_nonweak_pair(l, m, A, eps);
			}
			pc.provenance.seed = seed;
			ctx.emit_json(out_path, to_json(pc));
			return 0;
		}
		if (vf->parsed()) {
			PairConstruction pc = pair_from_json(read_json(pair_path));
			ctx.seed = pc.provenance.seed;
			PairReport r = make_report(pc, tol, time_half, freq_half, grid_count);
			ctx.emit_json(out_path, to_json(r));
			return report_passes(r) ? 0 : 1;
		}
		if (ft->parsed()) {
			ProductModel m = model_from_json(read_json(model_path));
			std::vector<double> xi = parse_range(xi_grid);
			double hi = 0.0;
			for (double x : xi)
				hi = std::max(hi, std::abs(x));
			QuadratureSpec q = make_spec(m.gamma, 0.1, hi, ft_tol);
			std::vector<TransformValue> v = transform(as_evaluator(m), q, xi);
			std::string s = ctx.csv_header() + "xi,re,im,error\n";
			bool ok = true;
			for (std::size_t i = 0; i < xi.size(); ++i) {
				s += g17(xi[i]) + "," + g17(v[i].value.real()) + "," + g17(v[i].value.imag()) +
				     "," + g17(v[i].error) + "\n";
				ok = ok && v[i].error <= std::max(ft_tol, 1e-15);
			}
			ctx.emit(out_path, s);
			return ok ? 0 : 1;
		}
		if (ind->parsed()) {
			ProductModel m = model_from_json(read_json(model_path));
			std::vector<double> thetas = uniform_grid(0.0, pi / 2.0, n_theta);
			std::vector<double> radii = radial_grid(r_lo, r_hi, nodes);
			auto est = indicator_sweep(m, thetas, radii, model_mask(m, r_hi, mask_c));
			std::string s = ctx.csv_header() + "theta,h,residual,used,masked\n";
			for (const auto &e : est)
				s += g17(e.theta) + "," + g17(e.h) + "," + g17(e.residual) + "," +
				     std::to_string(e.used) + "," + std::to_string(e.masked) + "\n";
			ctx.emit(out_path, s);
			return trig_convexity_check(est, 2.0).pass ? 0 : 1;
		}
		if (ip->parsed()) {
			SampledSet l = make_set(lambda_path, D, count, 0.0, seed, true);
			SampledSet m = make_set(mu_path, D, count, 0.0, seed, true);
			VanishingFunction v = assemble_vanishing_function(l, m, ia, ib, 0, iopt);
			json j;
			j["L"] = v.L;
			j["norms"] = {{"A", v.norms.A}, {"B", v.norms.B}};
			j["seeds"] = v.seeds;
			j["constraints"] = v.constraints;
			j["time_residual"] = v.time_residual;
			j["freq_residual"] = v.freq_residual;
			j["smallest_singular"] = v.smallest_singular;
			j["interpolant"] = to_json(v.f);
			ctx.emit_json(out_path, j);
			return v.time_residual <= itol && v.freq_residual <= itol ? 0 : 1;
		}
		if (ac->parsed()) {
			// timings go to the log only so the table stays reproducible
			std::string s = ctx.csv_header() + "id,status,title,detail\n";
			bool ok = true;
			for (const auto &r : run_acceptance(aopt)) {
				err << format_line(r) << "\n";
				s += r.id + "," + to_string(r.status) + "," + r.title +
				     ",\"" + r.detail + "\"\n";
				ok = ok && r.status != CriterionStatus::fail;
			}
			ctx.emit(out_path, s);
			return ok ? 0 : 1;
		}
	} catch (const DomainError &e) {
		err << "error: " << e.what() << "\n";
		return 2;
	} catch (const InputError &e) {
		err << "error: " << e.what() << "\n";
		return 2;
	} catch (const json::exception &e) {
		err << "error: " << e.what() << "\n";
		return 2;
	} catch (const std::exception &e) {
		err << "check failed: " << e.what() << "\n";
		return 1;
	}
	return 2;
}

} // namespace pauli
