#pragma once

// The coaction α of a magic-unitary representation on functions over X_n × Y
// and its restriction to the glued quotient. α(F) is stored as a matrix-valued
// function on points: value(k, y) = (ev_{x_k} ⊗ ev_y ⊗ id) α(F).

#include <cstdint>
#include <vector>

#include "qpg/magic.hpp"
#include "qpg/numerics.hpp"
#include "qpg/report.hpp"
#include "qpg/spaces.hpp"

namespace qpg {

class CoactionValue {
 public:
  CoactionValue(std::size_t n, std::size_t m, std::size_t d, std::vector<Complex> buffer);

  std::size_t n() const { return n_; }
  std::size_t m() const { return m_; }
  std::size_t d() const { return d_; }
  /// One-based point (k, y).
  ComplexMatrix at(std::size_t k, std::size_t y) const;
  const std::vector<Complex>& buffer() const { return buf_; }

  /// Pointwise matrix product.
  friend CoactionValue operator*(const CoactionValue& a, const CoactionValue& b);
  /// Pointwise adjoint.
  CoactionValue adjoint() const;

 private:
  std::size_t n_, m_, d_;
  std::vector<Complex> buf_;
};

/// value(k, y) = Σ_i F(i, y) · u.entry(k, i).
CoactionValue apply_coaction(const GridFunction& f, const MagicUnitary& u);

/// Pointwise (α ⊗ id)α(F): out(k, y) = Σ_i kron(u.entry(k, i), value(i, y)).
CoactionValue iterate_coaction(const CoactionValue& value, const MagicUnitary& u);

/// `count` seeded members of the quotient algebra: entries uniform on
/// [-1, 1], then averaged over each glued fiber.
std::vector<GridFunction> random_quotient_functions(const GluedSpace& g, std::size_t count,
                                                    std::uint64_t seed);

/// At every y where F is fiber-constant within eps, value(k, y) must equal
/// F(1, y)·I within n·eps.
CheckReport check_technical_lemma(const GridFunction& f, const MagicUnitary& u, Tolerance tol = {});

/// Symbolic counterpart: at every exactly fiber-constant y and every k,
/// Σ_i F(i,y)·a(k,i) = F(1,y)·1 must reduce to zero.
CheckReport check_technical_lemma_symbolic(const GridFunction& f);

/// max over glued y and k of ‖value(k, y) − value(1, y)‖_max.
double glued_slice_spread(const GluedSpace& g, const CoactionValue& value);

/// Slice equality at glued points for the class-indicator basis plus
/// `trials` random members of the quotient algebra.
CheckReport check_invariance(const GluedSpace& g, const MagicUnitary& u, std::size_t trials,
                             Tolerance tol = {}, std::uint64_t seed = 0);

/// Slice equality for explicitly supplied functions (members or not).
CheckReport check_invariance_of(const GluedSpace& g, const MagicUnitary& u,
                                const std::vector<GridFunction>& functions, Tolerance tol = {});

/// Recovers every u.entry(k, i) as value(k, y0) of α(e_i ⊗ δ_{y0}) at the
/// smallest non-glued base point y0. Throws StructuralError if every base
/// point is glued.
CheckReport check_faithful_slices(const GluedSpace& g, const MagicUnitary& u, Tolerance tol = {});

/// Kernel dimension of F ↦ α(F) − F ⊗ 1 on the quotient algebra. Passes iff
/// the dimension is at least m (the fixed functions 1 ⊗ f); the metric
/// "verdict" is "ergodic" iff the dimension is 1.
CheckReport fixed_point_space(const GluedSpace& g, const MagicUnitary& u, Tolerance tol = {});

struct RepAlgebra {
  std::size_t d = 0;
  std::vector<ComplexMatrix> basis;
  std::size_t dim() const { return basis.size(); }
};

/// Linear basis of the *-algebra generated by I and the entries of u.
RepAlgebra saturate_rep_algebra(const MagicUnitary& u, Tolerance tol = {});

/// Rank of {α(F_r)(1 ⊗ b_s)} against q·β. Asserted only for d = 1.
CheckReport density_rank(const GluedSpace& g, const MagicUnitary& u, Tolerance tol = {});

/// Multiplicativity, *-preservation and unitality of α on the quotient.
CheckReport check_homomorphism(const GluedSpace& g, const MagicUnitary& u, std::size_t trials,
                               Tolerance tol = {}, std::uint64_t seed = 0);

/// (α ⊗ id)α = (id ⊗ Δ)α on the quotient basis, evaluated pointwise.
CheckReport check_coassociativity_rep(const GluedSpace& g, const MagicUnitary& u,
                                      Tolerance tol = Tolerance(1e-9));

}  // namespace qpg
