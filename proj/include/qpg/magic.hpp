#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "qpg/numerics.hpp"
#include "qpg/report.hpp"

namespace qpg {

/// An n×n grid of d×d matrices realizing the generators a_ij of the quantum
/// permutation group in a finite-dimensional representation.
///
/// Indexing through entry(i, j) is one-based, matching the a_ij notation.
/// Construction only checks shapes; relation checks live in
/// verify_magic_unitary so that deliberately broken grids can be examined.
class MagicUnitary {
 public:
  /// `entries` is row-major over the grid: entries[(i-1)*n + (j-1)] = a_ij.
  MagicUnitary(std::size_t n, std::size_t d, std::vector<ComplexMatrix> entries);

  std::size_t n() const { return n_; }
  std::size_t d() const { return d_; }
  const ComplexMatrix& entry(std::size_t i, std::size_t j) const;
  const std::vector<ComplexMatrix>& entries() const { return entries_; }

 private:
  std::size_t n_;
  std::size_t d_;
  std::vector<ComplexMatrix> entries_;
};

using IndexPair = std::pair<std::size_t, std::size_t>;

struct GenuinenessCertificate {
  IndexPair first;
  IndexPair second;
  double commutator_norm = 0.0;
};

inline constexpr double kGenuinenessThreshold = 1e-6;

/// Max violation per relation family (projection, row sum, column sum,
/// orthogonality); passes iff all are ≤ eps.
CheckReport verify_magic_unitary(const MagicUnitary& u, Tolerance tol = {});

/// Comultiplication at representation level:
/// entry(i,j) = Σ_k kron(u(i,k), u(k,j)), dimension d².
MagicUnitary delta_rep(const MagicUnitary& u);

/// n = 4, d = 2 grid [[p,1-p,0,0],[1-p,p,0,0],[0,0,q,1-q],[0,0,1-q,q]] with
/// p = diag(1,0) and q the rank-one projection onto (cos θ, sin θ).
MagicUnitary build_two_projection_magic(double theta);

/// Scalar (d = 1) magic unitary of a permutation σ given as the one-based
/// list σ(1), ..., σ(n): entry(i, j) = 1 iff σ(j) = i.
MagicUnitary permutation_magic(const std::vector<std::size_t>& sigma);

/// Block-diagonal direct sum of two representations with the same n.
MagicUnitary direct_sum(const MagicUnitary& a, const MagicUnitary& b);

/// Conjugates every entry by the same unitary w: w·a_ij·w*.
MagicUnitary conjugate(const MagicUnitary& u, const ComplexMatrix& w);

/// Relabels the grid: entry(i,j) ↦ entry(ρ(i), τ(j)). Row and column
/// permutations preserve the magic relations.
MagicUnitary permute_grid(const MagicUnitary& u, const std::vector<std::size_t>& row_perm,
                          const std::vector<std::size_t>& col_perm);

/// Operator norm of [x, y].
double commutator_norm(const ComplexMatrix& x, const ComplexMatrix& y);

/// Scans all entry pairs in lexicographic order and returns the pair with the
/// largest commutator norm, if that exceeds `threshold`. Pairs within 1e-12
/// of the running maximum keep the earlier witness.
std::optional<GenuinenessCertificate> genuineness_certificate(
    const MagicUnitary& u, double threshold = kGenuinenessThreshold);

/// File format: {"n", "d", "entries": [[<matrix>, ...], ...]}, zero-indexed grid.
nlohmann::json to_json(const MagicUnitary& u);
MagicUnitary magic_from_json(const nlohmann::json& j);

}  // namespace qpg
