#pragma once

// Characters of irreducible highest-weight modules: Freudenthal weight
// multiplicities, the Weyl dimension formula, and tensor-product
// multiplicities by Brauer-Klimyk with a full character-product cross-check.
// Weights are X-coordinate vectors.

#include <map>

#include "langdual/lattice.hpp"
#include "langdual/rootsys.hpp"

namespace langdual::repchar {

using lattice::BigInt;
using rootsys::Vec;

struct DominantWeight {
  Vec x;
  Vec labels;  // <coroot_i, x>, all >= 0
};

// Throws NotDominant when some label is negative.
DominantWeight dominant_weight(const rootsys::RootSystem& rs, const Vec& x);

using WeightMap = std::map<Vec, BigInt>;

struct CharacterMap {
  Vec highest;
  WeightMap dominant;  // multiplicities on dominant weights
  WeightMap weights;   // full W-orbit expansion
  BigInt dimension() const;
};

CharacterMap full_character(const rootsys::RootSystem& rs, const Vec& lambda);
BigInt weight_multiplicity(const rootsys::RootSystem& rs, const Vec& lambda, const Vec& mu);
BigInt weyl_dimension(const rootsys::RootSystem& rs, const Vec& lambda);

// Lambda_lambda (x) Lambda_lambda' as highest weight -> multiplicity.
WeightMap tensor_decomposition(const rootsys::RootSystem& rs, const Vec& lambda, const Vec& lambda_prime);
// Same decomposition from the product of full characters by repeatedly
// removing the character of a highest remaining weight.
WeightMap tensor_decomposition_by_product(const rootsys::RootSystem& rs, const Vec& lambda, const Vec& lambda_prime);
BigInt tensor_multiplicity(const rootsys::RootSystem& rs, const Vec& lambda, const Vec& lambda_prime,
                           const Vec& lambda_second);

// Pointwise (convolution) product of two weight maps.
WeightMap character_product(const WeightMap& a, const WeightMap& b);
// mult(mu) = mult(w mu) for every stored weight.
bool is_w_invariant(const rootsys::RootSystem& rs, const WeightMap& weights);

}  // namespace langdual::repchar
