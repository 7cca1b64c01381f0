#pragma once

// Exact cross-checks between modules: spherical structure constants of the
// dual affine Hecke algebra against tensor-product multiplicities, KL values
// at v = 1 against weight multiplicities, two-sided cell counts against
// partition counts, and the transport of torus characters to the dual torus.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "langdual/hecke.hpp"
#include "langdual/lattice.hpp"
#include "langdual/rootsys.hpp"

namespace langdual::bridges {

using coxeter::AffineElement;
using coxeter::AffineWeylGroup;
using hecke::KLTable;
using lattice::BigInt;
using rootsys::Vec;

// The unique longest element of W a^lambda W, by ascent from a^lambda.
// lambda is a dominant translation of `group` (Y-coordinates).
AffineElement max_double_coset(const AffineWeylGroup& group, const Vec& lambda);

// P with c_{M_0} c_{M_0} = P c_{M_0}.
LaurentPoly poincare_P(KLTable& table);

struct SphericalEntry {
  Vec lambda2;               // X-coordinates of lambda''
  AffineElement element;     // M_{lambda''}
  LaurentPoly mtilde;
  bool constant = false;
  std::optional<BigInt> oracle;  // tensor multiplicity, when compared
  bool equal = false;
};

struct SphericalReport {
  Vec lambda, lambda_prime;
  std::vector<SphericalEntry> entries;  // sorted by lambda''
  LaurentPoly P;
  std::size_t ball_radius = 0;  // table cap used
  std::size_t kl_entries = 0;
  double seconds = 0;
};

// Length budget l(M_lambda) + l(M_lambda') + slack for expanding a product.
std::size_t spherical_budget(const AffineWeylGroup& group, const Vec& lambda, const Vec& lambda_prime,
                             std::size_t slack = 2);

// Expands c_{M_lambda} c_{M_lambda'} in the c-basis and divides by P.
// Throws SupportEscapesBall, UnexpectedSupport and DivisionInexact.
SphericalReport spherical_struct(KLTable& table, const rootsys::RootSystem& primal, const Vec& lambda,
                                 const Vec& lambda_prime);

// Dual-side objects for a simply connected root system: R*, its extended
// affine Weyl group (translations by X), the Hecke algebra and a KL table.
class BridgeContext {
 public:
  BridgeContext(const rootsys::RootSystem& rs, std::size_t cap, std::optional<std::string> journal = std::nullopt);

  const rootsys::RootSystem& primal() const noexcept { return primal_; }
  const AffineWeylGroup& dual_group() const noexcept { return *group_; }
  KLTable& table() noexcept { return *table_; }

 private:
  rootsys::RootSystem primal_;
  std::unique_ptr<AffineWeylGroup> group_;
  std::unique_ptr<hecke::HeckeAlgebra> algebra_;
  std::unique_ptr<KLTable> table_;
};

struct WeightCheck {
  Vec mu;
  BigInt multiplicity;  // dim of the mu weight space of Lambda_lambda
  std::int64_t kl_at_one = 0;  // p_{M_mu, M_lambda}(1)
  bool equal = false;
};

struct BridgeReport {
  SphericalReport spherical;
  std::vector<Vec> missing;  // oracle terms absent from the Hecke side
  bool tensor_equal = false;
  bool constancy = false;
  bool dimension_ok = false;
  std::vector<WeightCheck> weights;
  bool weights_equal = false;

  bool pass() const { return tensor_equal && constancy && dimension_ok && weights_equal; }
};

// Requires a simply connected rs (NotSimplyConnected) and dominant inputs
// (NotDominant). The weight checks cover every dominant mu <= lambda and
// the pair (lambda, lambda').
BridgeReport verify_bridge_x(BridgeContext& ctx, const Vec& lambda, const Vec& lambda_prime);
BridgeReport verify_bridge_x(const rootsys::RootSystem& rs, const Vec& lambda, const Vec& lambda_prime,
                             std::size_t slack = 2);

std::uint64_t partition_count(std::size_t n);

struct CellCountReport {
  std::size_t n = 0;  // type A_{n-1} affine
  std::size_t radius = 0;
  std::size_t window = 0;
  std::size_t cells = 0;
  std::vector<std::size_t> sizes;
  std::vector<bool> certified;
  std::uint64_t partitions = 0;
  bool counts_match = false;
  bool all_certified = false;
  // "pass", "fail", or "uncertified" when some cell is not certified.
  std::string verdict;
  hecke::CacheStats cache;
};

CellCountReport cell_count_check(std::size_t n, std::size_t L, std::size_t threads = 1,
                                 std::optional<std::string> journal = std::nullopt, std::size_t window = 2,
                                 std::size_t ball_cap = 200000);

// Point of Q/Z (x) X killed by A' = q w^-1 - 1.
struct DualTorusPoint {
  std::vector<lattice::QmodZ> coords;
  BigInt order;
  std::uint32_t w = 0;
  long q = 0;
  lattice::IntMatrix a;        // q w - 1 on Y
  lattice::IntMatrix a_prime;  // q w^-1 - 1 on X
};

// Matrix of w on Y (columns are images of basis vectors).
lattice::IntMatrix weyl_matrix_y(const coxeter::WeylGroup& weyl, const rootsys::RootSystem& rs, std::uint32_t w);
// u applied to a point of Q/Z (x) X.
std::vector<lattice::QmodZ> weyl_act_x(const coxeter::WeylGroup& weyl, const rootsys::RootSystem& rs, std::uint32_t u,
                                       const std::vector<lattice::QmodZ>& point);
// "s1 s2 ..." (or "s" in rank 1, "1" for the identity) as a Weyl element.
std::uint32_t parse_weyl_word(const coxeter::WeylGroup& weyl, const std::string& text);
// Characteristic of a prime power q; BadParameter otherwise.
long prime_of_prime_power(long q);

struct TransportSetup {
  lattice::IntMatrix a, a_prime;
  std::unique_ptr<lattice::TorusPairing> pairing;
};

TransportSetup transport_setup(const rootsys::RootSystem& rs, const coxeter::WeylGroup& weyl, std::uint32_t w, long q);

// theta gives values on the SNF generators of Y / A Y. Throws
// InvalidCharacter, CharacteristicDividesOrder, BadParameter.
DualTorusPoint transport_character(const rootsys::RootSystem& rs, const coxeter::WeylGroup& weyl, std::uint32_t w,
                                   long q, const lattice::Character& theta);

// theta o u^-1 as a character of Y / A_{u w u^-1} Y.
lattice::Character conjugate_character(const rootsys::RootSystem& rs, const coxeter::WeylGroup& weyl, std::uint32_t w,
                                       std::uint32_t u, long q, const lattice::Character& theta);

nlohmann::json to_json(const SphericalReport& r, const AffineWeylGroup& group);
nlohmann::json to_json(const BridgeReport& r, const AffineWeylGroup& group);
nlohmann::json to_json(const CellCountReport& r);
nlohmann::json to_json(const DualTorusPoint& p);

}  // namespace langdual::bridges
