#ifndef PAULI_SERIALIZE_HPP
#define PAULI_SERIALIZE_HPP

#include "pauli/constructions.hpp"
#include "pauli/interpolation.hpp"
#include "pauli/product_model.hpp"
#include "pauli/sequences.hpp"
#include "pauli/verify.hpp"

#include <json.hpp>

namespace pauli {

using json = nlohmann::json;

/// Keys: c_re, c_im, theta, gamma, sigma, power, zeros, T<m>, T<2m>,
/// lattice (object or null), meta.
json to_json(const ProductModel &m);
ProductModel model_from_json(const json &j);

json to_json(const SampledSet &s);
SampledSet sampled_set_from_json(const json &j);

/// Generators, nodes, options and coefficients; reading it back re-tabulates
/// the basis transforms.
json to_json(const Interpolant &f);
Interpolant interpolant_from_json(const json &j);

json to_json(const PairConstruction &pc);
PairConstruction pair_from_json(const json &j);

json to_json(const PairReport &r);

} // namespace pauli

#endif
