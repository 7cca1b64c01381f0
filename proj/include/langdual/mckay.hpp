#pragma once

// Root systems from pairs Gamma <| Gamma' of finite subgroups of SL2(C) with
// cyclic quotient. Groups are enumerated as exact 2x2 matrices over Q(zeta_N);
// Gamma-characters come from closed forms (cyclic, binary dihedral) or from
// the embedded exceptional tables, and Gamma'-conjugation orbits give the
// indecomposables rho_i.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "langdual/cyclotomic.hpp"
#include "langdual/rootsys.hpp"

namespace langdual::mckay {

struct MatrixGroup {
  std::string name;  // "Z4", "BD8", "2T", ...
  std::size_t conductor = 1;
  std::vector<Matrix2> elements;  // elements[0] is the identity
  std::vector<Matrix2> generators;
  std::map<Matrix2, std::size_t> index;

  std::size_t order() const noexcept { return elements.size(); }
  bool contains(const Matrix2& g) const { return index.count(g) != 0; }
  std::size_t find(const Matrix2& g) const;  // BadInput if absent
};

// Closure of the generators under multiplication; checks det = 1.
MatrixGroup generate_group(std::string name, std::size_t conductor, const std::vector<Matrix2>& generators,
                           std::size_t max_order = 4096);

enum class GammaKind { Cyclic, BinaryDihedral, Exceptional };

struct FiniteSubgroupPair {
  char family = 'a';
  std::size_t n = 0;  // 0 when the family has no parameter
  std::size_t conductor = 1;
  MatrixGroup gamma, gamma_prime;
  GammaKind kind = GammaKind::Cyclic;
  // Cyclic: order m, generator a. Binary dihedral of order 4k: a of order 2k and j.
  std::size_t kind_param = 0;
  // Per element of gamma: (a-exponent, has j) for the closed-form kinds.
  std::vector<std::pair<std::size_t, bool>> words;
  // Normality witness: g' in gamma_prime generating gamma_prime / gamma.
  std::optional<std::size_t> g_prime;
  std::size_t quotient_order = 1;
};

// Families (a)-(i); n is ignored for c, d, e, h, i. BadParameter when n is
// outside the family's range.
FiniteSubgroupPair build_pair(char family, std::size_t n);
// |Gamma| and |Gamma'| predicted by the family's order formula.
std::pair<std::size_t, std::size_t> expected_orders(char family, std::size_t n);
// Cartan type the classification predicts for the pair, e.g. "E8".
std::string expected_type(char family, std::size_t n);

struct CharacterTable {
  std::vector<std::vector<std::size_t>> classes;  // element indices of gamma
  std::vector<std::size_t> class_of;              // element index -> class
  std::vector<std::vector<Cyclotomic>> chars;     // chars[k][class]; chars[0] trivial
  std::size_t degree(std::size_t k) const;
};

CharacterTable gamma_character_table(const FiniteSubgroupPair& pair);
// Both orthogonality relations and sum of squared degrees; TableInconsistent.
void verify_table(const MatrixGroup& group, const CharacterTable& table);

// <f, g> = |G|^-1 sum_g f(g) conj(g(g)) for class functions on the classes.
Cyclotomic inner_product(const MatrixGroup& group, const CharacterTable& table, const std::vector<Cyclotomic>& f,
                         const std::vector<Cyclotomic>& g);

struct IndecomposableList {
  std::vector<std::vector<std::size_t>> members;  // orbit of irreducible indices
  std::vector<std::size_t> m;                     // orbit sizes
  std::vector<std::vector<Cyclotomic>> values;    // orbit-sum class functions
  std::vector<std::size_t> dims;                  // dim rho_i = m_i * degree
  std::size_t i0 = 0;

  std::size_t size() const noexcept { return m.size(); }
};

IndecomposableList clifford_indecomposables(const FiniteSubgroupPair& pair, const CharacterTable& table);

struct McKayMatrix {
  std::vector<std::vector<std::int64_t>> c;
  std::vector<Cyclotomic> sigma;  // trace of the natural representation per class
};

McKayMatrix mckay_matrix(const FiniteSubgroupPair& pair, const CharacterTable& table, const IndecomposableList& list);

// Nodes other than i0 in breadth-first order from i0, neighbours by index.
std::vector<std::size_t> node_order(const McKayMatrix& mat, const IndecomposableList& list);
// Cartan matrix 2 delta - c on the ordered nodes.
std::vector<std::vector<std::int64_t>> cartan_from_mckay(const McKayMatrix& mat, const IndecomposableList& list);
rootsys::RootSystem to_root_system(const McKayMatrix& mat, const IndecomposableList& list);

struct FormReport {
  bool symmetric = false;        // [i,j] = (2 delta_ij - c_ij) m_j
  bool null_vector = false;      // (2 delta - c) r = 0 for r_i = dim rho_i / m_i
  bool samples_nonnegative = false;
  bool radical_ok = false;       // sampled zeros are multiples of the null vector
  std::size_t samples = 0;
  std::size_t zeros = 0;
  std::vector<std::int64_t> null;  // r, primitive

  bool ok() const { return symmetric && null_vector && samples_nonnegative && radical_ok; }
};

// Samples `trials` random integer vectors (entries in [-bound, bound]), plus
// every null-vector multiple and its perturbations at i0.
FormReport verify_form(const McKayMatrix& mat, const IndecomposableList& list, std::size_t trials = 100,
                       std::uint64_t seed = 1, std::int64_t bound = 5);

struct McKayResult {
  FiniteSubgroupPair pair;
  CharacterTable table;
  IndecomposableList list;
  McKayMatrix matrix;
  std::vector<std::size_t> order;
  std::vector<std::vector<std::int64_t>> cartan;
  rootsys::RootSystem root_system;
  std::string type;
  FormReport form;
};

McKayResult run_mckay(char family, std::size_t n, std::uint64_t seed = 1);
nlohmann::json to_json(const McKayResult& r);

// Embedded exceptional character data, parsed and checksum-verified once.
const nlohmann::json& character_data();
// Parses and validates a data file text: format tag, version, checksum.
nlohmann::json parse_character_data(const std::string& text);
std::string data_checksum(const nlohmann::json& groups);

}  // namespace langdual::mckay
