#pragma once

// Root data (Y, X, <,>, coroots, roots) realized on Z^n with an explicit
// unimodular Gram matrix, plus root enumeration and the dominance order.

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "langdual/lattice.hpp"

namespace langdual::rootsys {

using Vec = std::vector<std::int64_t>;
using lattice::IntMatrix;

enum class Isogeny { SimplyConnected, Adjoint };

struct RootSystem {
  std::size_t rank = 0;               // rank of Y and of X
  IntMatrix gram;                     // <y, x> = y^T G x
  std::vector<Vec> coroots;           // simple coroots in Y
  std::vector<Vec> roots;             // simple roots in X
  std::string label;                  // informational only, ignored by ==

  std::size_t nsimple() const noexcept { return roots.size(); }
  std::int64_t pair(const Vec& y, const Vec& x) const;
  // A_ij = <coroot_i, root_j>
  std::vector<std::vector<std::int64_t>> cartan() const;
  IntMatrix cartan_matrix() const;
  // Labels <coroot_i, x>, and <y, root_i>.
  Vec dynkin(const Vec& x) const;
  Vec codynkin(const Vec& y) const;
  // s_i on X and on Y.
  Vec reflect_x(std::size_t i, const Vec& x) const;
  Vec reflect_y(std::size_t i, const Vec& y) const;
  std::uint64_t fingerprint() const;

  bool operator==(const RootSystem& o) const {
    return rank == o.rank && gram == o.gram && coroots == o.coroots && roots == o.roots;
  }
  bool operator!=(const RootSystem& o) const { return !(*this == o); }
};

// Positive integers c with (c_i A_ij) symmetric positive definite.
struct ValidationCertificate {
  std::vector<std::int64_t> c;
};

ValidationCertificate validate(const RootSystem& rs);

// Swaps (Y, coroots) with (X, roots) and transposes the pairing.
RootSystem dual(const RootSystem& rs);

struct RootDatum {
  std::size_t nsimple = 0;
  std::size_t npos = 0;
  // Indices [0, npos) are the positive roots, npos + k is the negative of k.
  std::vector<Vec> coords;          // simple-root coordinates
  std::vector<Vec> roots;           // X coordinates
  std::vector<Vec> coroots;         // Y coordinates of the matching coroot
  std::vector<Vec> coroot_coords;   // simple-coroot coordinates
  std::vector<std::size_t> simple;  // position of alpha_i among the roots
  // reflection[i][k] = index of s_i(root k)
  std::vector<std::vector<std::size_t>> reflection;
  std::vector<std::vector<std::size_t>> components;  // simple indices per component
  std::vector<std::size_t> component_of;              // simple index -> component
  std::vector<std::size_t> highest;                   // highest root per component
  std::vector<std::size_t> r_min;                     // minimal root per component

  std::size_t size() const noexcept { return coords.size(); }
  bool is_positive(std::size_t k) const noexcept { return k < npos; }
  std::size_t negate(std::size_t k) const noexcept { return k < npos ? k + npos : k - npos; }
  std::int64_t height(std::size_t k) const;
  // Root index for an X vector; throws BadInput if absent.
  std::size_t index_of(const Vec& x) const;
  bool contains(const Vec& x) const { return lookup_.count(x) != 0; }

  std::map<Vec, std::size_t> lookup_;
};

RootDatum enumerate_roots(const RootSystem& rs, std::size_t cap = 1u << 16);

// lambda <= lambda' iff lambda' - lambda lies in the N-span of the simple roots.
bool dominance_leq(const RootSystem& rs, const Vec& lambda, const Vec& lambda_prime);

// Simple-root coordinates of x when x lies in the Q-span of the simple roots
// with integer coordinates; empty optional-like result signalled by `ok`.
bool root_coordinates(const RootSystem& rs, const Vec& x, Vec& out);

struct Flags {
  bool simply_connected = false;
  bool adjoint = false;
  bool semisimple = false;
  bool irreducible = false;
};

Flags classify_flags(const RootSystem& rs);

// "A3", "B2", "E8", products "A1xA1".
RootSystem standard_types(const std::string& name, Isogeny isogeny);
RootSystem standard_type(char letter, std::size_t n, Isogeny isogeny);
std::vector<std::vector<std::int64_t>> standard_cartan(char letter, std::size_t n);

// Root system with Y = Z^n on the coroot basis (sc) or X = Z^n on the root
// basis (ad) for a given Cartan matrix and Gram matrix.
RootSystem from_cartan(const std::vector<std::vector<std::int64_t>>& cartan, Isogeny isogeny,
                       const IntMatrix& gram);
RootSystem direct_sum(const RootSystem& a, const RootSystem& b);

// Cartan type label of a valid Cartan matrix, components joined by "x" in
// order of their smallest node. B2 and C2 are both reported as "B2".
std::string identify_type(const std::vector<std::vector<std::int64_t>>& cartan);
// True when some permutation of the nodes carries one matrix to the other.
bool cartan_isomorphic(const std::vector<std::vector<std::int64_t>>& a,
                       const std::vector<std::vector<std::int64_t>>& b);

// Integer vector with the given Dynkin labels; requires the labels to be
// attainable in X (always so when rs is simply connected).
Vec weight_from_dynkin(const RootSystem& rs, const Vec& labels);
bool is_dominant(const RootSystem& rs, const Vec& x);
// The unique dominant element of the W-orbit of x, and the number of
// reflections used (its parity is the sign of the element that got there).
Vec dominant_representative(const RootSystem& rs, const Vec& x, std::size_t* steps = nullptr);
Vec dominant_representative_y(const RootSystem& rs, const Vec& y);

RootSystem from_json(const nlohmann::json& j);
nlohmann::json to_json(const RootSystem& rs);
nlohmann::json to_json(const RootDatum& rd);

}  // namespace langdual::rootsys
