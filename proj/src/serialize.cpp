#include "pauli/serialize.hpp"

namespace pauli {

namespace {

json complex_vector(const Eigen::VectorXcd &v)
{
	json a = json::array();
	for (Eigen::Index i = 0; i < v.size(); ++i)
		a.push_back({v(i).real(), v(i).imag()});
	return a;
}

Eigen::VectorXcd complex_vector_from(const json &a)
{
	Eigen::VectorXcd v(static_cast<Eigen::Index>(a.size()));
	for (std::size_t i = 0; i < a.size(); ++i)
		v(static_cast<Eigen::Index>(i)) = cd(a[i].at(0).get<double>(), a[i].at(1).get<double>());
	return v;
}

void reject_unknown(const json &j, std::initializer_list<const char *> keys, const char *what)
{
	for (const auto &[k, v] : j.items()) {
		bool known = false;
		for (const char *key : keys)
			known = known || k == key;
		if (!known)
			throw DomainError(std::string(what) + ": unknown key '" + k + "'");
	}
}

} // namespace

json to_json(const ProductModel &m)
{
	json j;
	j["c_re"] = m.amplitude.real();
	j["c_im"] = m.amplitude.imag();
	j["theta"] = m.phase;
	j["gamma"] = m.gamma;
	j["sigma"] = m.sigma;
	j["power"] = m.power;
	j["zeros"] = m.zeros;
	j["T" + std::to_string(m.power)] = m.tail_sum1;
	j["T" + std::to_string(2 * m.power)] = m.tail_sum2;
	if (m.lattice)
		j["lattice"] = {{"density", m.lattice->density},
				{"shift", m.lattice->shift},
				{"first_index", m.lattice->first_index}};
	else
		j["lattice"] = nullptr;
	j["meta"] = m.meta;
	return j;
}

ProductModel model_from_json(const json &j)
{
	ProductModel m;
	m.power = j.at("power").get<int>();
	const std::string t1 = "T" + std::to_string(m.power);
	const std::string t2 = "T" + std::to_string(2 * m.power);
	for (const auto &[k, v] : j.items())
		if (k != "c_re" && k != "c_im" && k != "theta" && k != "gamma" && k != "sigma" &&
		    k != "power" && k != "zeros" && k != t1 && k != t2 && k != "lattice" && k != "meta")
			throw DomainError("model: unknown key '" + k + "'");
	m.amplitude = cd(j.at("c_re").get<double>(), j.at("c_im").get<double>());
	m.phase = j.at("theta").get<double>();
	m.gamma = j.at("gamma").get<double>();
	m.sigma = j.at("sigma").get<int>();
	m.zeros = j.at("zeros").get<std::vector<double>>();
	m.tail_sum1 = j.value(t1, 0.0);
	m.tail_sum2 = j.value(t2, 0.0);
	if (j.contains("lattice") && !j["lattice"].is_null()) {
		const json &l = j["lattice"];
		m.lattice = LatticeTail{l.at("density").get<double>(), l.at("shift").get<double>(),
					l.at("first_index").get<double>()};
	}
	m.meta = j.value("meta", std::string());
	m.validate();
	return m;
}

json to_json(const SampledSet &s)
{
	json j;
	j["points"] = std::vector<double>(s.points().begin(), s.points().end());
	j["zero_in_positive"] = s.zero_in_positive();
	j["seed"] = s.seed;
	if (s.continuation)
		j["continuation"] = {{"density", s.continuation->density},
				     {"shift", s.continuation->shift},
				     {"p", s.continuation->p}};
	else
		j["continuation"] = nullptr;
	return j;
}

SampledSet sampled_set_from_json(const json &j)
{
	reject_unknown(j, {"points", "zero_in_positive", "seed", "continuation"}, "sampled set");
	SampledSet s(j.at("points").get<std::vector<double>>(), j.value("zero_in_positive", true));
	s.seed = j.value("seed", std::uint64_t{0});
	if (j.contains("continuation") && !j["continuation"].is_null()) {
		const json &c = j["continuation"];
		s.continuation = Continuation{c.at("density").get<double>(), c.at("shift").get<double>(),
					      c.at("p").get<double>()};
	}
	return s;
}

json to_json(const Interpolant &f)
{
	const BasisSet &b = f.basis();
	const InterpolationOptions &o = b.options();
	json j;
	j["time_generator"] = to_json(b.time_generator());
	j["freq_generator"] = to_json(b.freq_generator());
	j["lambda"] = b.lambda();
	j["mu"] = b.mu();
	j["options"] = {{"window", o.window},
			{"tol", o.tol},
			{"max_iterations", o.max_iterations},
			{"step", o.step}};
	j["c"] = complex_vector(f.c());
	j["d"] = complex_vector(f.d());
	j["e"] = complex_vector(f.e());
	return j;
}

Interpolant interpolant_from_json(const json &j)
{
	reject_unknown(j, {"time_generator", "freq_generator", "lambda", "mu", "options", "c", "d", "e"},
		       "interpolant");
	InterpolationOptions o;
	const json &oj = j.at("options");
	o.window = oj.at("window").get<double>();
	o.tol = oj.at("tol").get<double>();
	o.max_iterations = oj.at("max_iterations").get<std::size_t>();
	o.step = oj.at("step").get<double>();
	auto basis = std::make_shared<const BasisSet>(
		model_from_json(j.at("time_generator")), model_from_json(j.at("freq_generator")),
		j.at("lambda").get<std::vector<double>>(), j.at("mu").get<std::vector<double>>(), o);
	Eigen::VectorXcd c = complex_vector_from(j.at("c"));
	Eigen::VectorXcd d = complex_vector_from(j.at("d"));
	if (c.size() != static_cast<Eigen::Index>(basis->lambda().size()) ||
	    d.size() != static_cast<Eigen::Index>(basis->mu().size()))
		throw DomainError("interpolant: coefficient counts do not match the nodes");
	return Interpolant(basis, c, d, complex_vector_from(j.at("e")));
}

namespace {

json factor_json(const PairFactor &f)
{
	if (f.model)
		return {{"model", to_json(*f.model)}};
	if (f.interpolant)
		return {{"interpolant", to_json(*f.interpolant)}};
	return {{"zero", true}};
}

PairFactor factor_from_json(const json &j)
{
	reject_unknown(j, {"model", "interpolant", "zero"}, "pair factor");
	if (j.contains("model"))
		return PairFactor::from_model(model_from_json(j["model"]));
	if (j.contains("interpolant"))
		return PairFactor::from_interpolant(interpolant_from_json(j["interpolant"]));
	return PairFactor::zero();
}

} // namespace

json to_json(const PairConstruction &pc)
{
	const Provenance &p = pc.provenance;
	json j;
	j["kind"] = to_string(p.kind);
	j["theta"] = pc.theta;
	j["provenance"] = {{"A", p.A},
			   {"epsilon", p.epsilon},
			   {"phi_rate", p.phi_rate},
			   {"psi_rate", p.psi_rate},
			   {"phi_freq_rate", p.phi_freq_rate},
			   {"psi_freq_rate", p.psi_freq_rate},
			   {"time_density", p.time_density},
			   {"freq_density", p.freq_density},
			   {"split_fraction", p.split_fraction},
			   {"seed", p.seed}};
	j["phi"] = factor_json(pc.phi);
	j["psi"] = factor_json(pc.psi);
	j["lambda"] = to_json(pc.lambda);
	j["mu"] = to_json(pc.mu);
	return j;
}

PairConstruction pair_from_json(const json &j)
{
	reject_unknown(j, {"kind", "theta", "provenance", "phi", "psi", "lambda", "mu"}, "pair");
	PairConstruction pc;
	const json &p = j.at("provenance");
	reject_unknown(p, {"A", "epsilon", "phi_rate", "psi_rate", "phi_freq_rate", "psi_freq_rate",
			   "time_density", "freq_density", "split_fraction", "seed"},
		       "provenance");
	pc.provenance.kind = pair_kind_from_string(j.at("kind").get<std::string>());
	pc.provenance.A = p.at("A").get<double>();
	pc.provenance.epsilon = p.at("epsilon").get<double>();
	pc.provenance.phi_rate = p.at("phi_rate").get<double>();
	pc.provenance.psi_rate = p.at("psi_rate").get<double>();
	pc.provenance.phi_freq_rate = p.at("phi_freq_rate").get<double>();
	pc.provenance.psi_freq_rate = p.at("psi_freq_rate").get<double>();
	pc.provenance.time_density = p.at("time_density").get<double>();
	pc.provenance.freq_density = p.at("freq_density").get<double>();
	pc.provenance.split_fraction = p.at("split_fraction").get<double>();
	pc.provenance.seed = p.at("seed").get<std::uint64_t>();
	pc.theta = j.at("theta").get<double>();
	pc.phi = factor_from_json(j.at("phi"));
	pc.psi = factor_from_json(j.at("psi"));
	pc.lambda = sampled_set_from_json(j.at("lambda"));
	pc.mu = sampled_set_from_json(j.at("mu"));
	return pc;
}

json to_json(const PairReport &r)
{
	auto grid = [](const GridDescription &g) {
		return json{{"lo", g.lo}, {"hi", g.hi}, {"count", g.count}};
	};
	json j;
	j["kind"] = r.kind;
	j["residuals"] = {{"time", r.discrete.time_residual}, {"freq", r.discrete.freq_residual}};
	j["gaps"] = {{"time", r.weak.time_gap}, {"freq", r.weak.freq_gap}};
	j["verdicts"] = {{"discrete_pair", r.discrete.pass},
			 {"weak_pair_time", r.weak.weak_time},
			 {"weak_pair_freq", r.weak.weak_freq},
			 {"full_pair", r.weak.full},
			 {"non_weak", r.weak.non_weak}};
	j["grids"] = {{"time", grid(r.time_grid)}, {"freq", grid(r.freq_grid)}};
	j["tol"] = r.tol;
	j["H_max"] = r.H_max;
	j["Htilde_max"] = r.Htilde_max;
	return j;
}

} // namespace pauli
