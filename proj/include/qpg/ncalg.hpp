#pragma once

// Exact symbolic layer for the *-algebra presented by the magic-unitary
// relations. Polynomials are finite linear combinations of tensor words in
// the generators a(i,j), with exact complex-rational coefficients.

#include <compare>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qpg/magic.hpp"
#include "qpg/numerics.hpp"
#include "qpg/report.hpp"

namespace qpg::ncalg {

using Rational = boost::multiprecision::cpp_rational;

/// Exact complex rational re + im·i.
struct Coeff {
  Rational re;
  Rational im;

  Coeff() = default;
  Coeff(Rational r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  Coeff(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
  Coeff(long long v) : re(v) {}  // NOLINT(google-explicit-constructor)

  /// Exact binary value of a finite double.
  static Coeff from_double(double re, double im = 0.0);

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }
  Coeff conj() const { return {re, -im}; }
  Complex to_complex() const;

  friend Coeff operator+(const Coeff& a, const Coeff& b) { return {a.re + b.re, a.im + b.im}; }
  friend Coeff operator-(const Coeff& a, const Coeff& b) { return {a.re - b.re, a.im - b.im}; }
  friend Coeff operator-(const Coeff& a) { return {-a.re, -a.im}; }
  friend Coeff operator*(const Coeff& a, const Coeff& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend bool operator==(const Coeff& a, const Coeff& b) { return a.re == b.re && a.im == b.im; }
};

std::string to_string(const Coeff& c);

struct Generator {
  std::size_t i = 1;
  std::size_t j = 1;
  friend auto operator<=>(const Generator&, const Generator&) = default;
};

/// Product of generators on one tensor leg; empty means the unit.
using LegWord = std::vector<Generator>;

struct TensorWord {
  std::vector<LegWord> legs;

  std::size_t length() const;
  /// Shorter words first, then leg-by-leg lexicographic.
  friend std::strong_ordering operator<=>(const TensorWord& a, const TensorWord& b);
  friend bool operator==(const TensorWord&, const TensorWord&) = default;
};

class NCPolynomial {
 public:
  using TermMap = std::map<TensorWord, Coeff>;

  NCPolynomial(std::size_t n, std::size_t legs);

  static NCPolynomial unit(std::size_t n, std::size_t legs = 1, Coeff c = 1);
  /// a(i,j) on a single leg.
  static NCPolynomial generator(std::size_t n, std::size_t i, std::size_t j);
  static NCPolynomial monomial(std::size_t n, TensorWord w, Coeff c = 1);

  std::size_t n() const { return n_; }
  std::size_t legs() const { return legs_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Coefficient of w (zero if absent).
  Coeff coeff(const TensorWord& w) const;

  /// Adds c·w, dropping the entry when it cancels.
  void add_term(const TensorWord& w, const Coeff& c);

  /// Reverses every leg word and conjugates coefficients (generators are
  /// self-adjoint).
  NCPolynomial adjoint() const;

  friend NCPolynomial operator+(const NCPolynomial& a, const NCPolynomial& b);
  friend NCPolynomial operator-(const NCPolynomial& a, const NCPolynomial& b);
  friend NCPolynomial operator*(const Coeff& c, const NCPolynomial& p);
  /// Leg-wise product (same leg count).
  friend NCPolynomial operator*(const NCPolynomial& a, const NCPolynomial& b);
  friend bool operator==(const NCPolynomial& a, const NCPolynomial& b) = default;

 private:
  std::size_t n_;
  std::size_t legs_;
  TermMap terms_;
};

/// a ⊗ b: concatenates legs.
NCPolynomial tensor(const NCPolynomial& a, const NCPolynomial& b);

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

/// Grammar:
///   expr      := ["+"|"-"] term (("+"|"-") term)*
///   term      := [coeff ["*"]] factorseq ("#" factorseq)*
///   factorseq := factor ("*" factor)* | "1"
///   factor    := "a(" int "," int ")" ["'"] | "1"
///   coeff     := int | decimal | int "/" int | "(" real ("+"|"-") real "i" ")"
/// '#' separates tensor legs; whitespace is ignored.
NCPolynomial parse_expression(std::string_view src, std::size_t n);

/// Canonical text form, accepted back by parse_expression.
std::string to_string(const NCPolynomial& p);

struct NormalFormStats {
  std::size_t steps = 0;
  std::size_t budget = 0;
};

/// Applies, per leg, a(i,j)a(i,j) → a(i,j), a(i,j)a(i,k) → 0 (j≠k) and
/// a(i,j)a(k,j) → 0 (i≠k), then collects like terms. Row and column sums are
/// not applied here.
NCPolynomial normal_form(const NCPolynomial& p, NormalFormStats* stats = nullptr);

/// Reduces one word in place. Returns false when the word is zero.
bool reduce_word(TensorWord& w, std::size_t* steps = nullptr);

/// Replaces, until no more apply, every complete row sum Σ_t a(k,t) or column
/// sum Σ_t a(t,l) that appears with equal coefficients in identical context by
/// the unit. Input is normalized first. Sound but incomplete.
NCPolynomial collapse_sums(const NCPolynomial& p, std::size_t* collapses = nullptr);

/// Passes iff lhs − rhs reduces to zero under normal_form + collapse_sums.
/// A nonzero residue gives pass = null with the residue in metrics.
CheckReport check_identity(const NCPolynomial& lhs, const NCPolynomial& rhs);

/// Substitutes Δ(a_ij) = Σ_k a_ik ⊗ a_kj on leg `leg` (zero-based), which
/// splits into two adjacent legs. Δ is multiplicative on leg words.
NCPolynomial comultiply_leg(const NCPolynomial& p, std::size_t leg);

/// Uncollected terms of comultiply_leg, in generation order.
std::vector<std::pair<TensorWord, Coeff>> comultiply_leg_terms(const NCPolynomial& p,
                                                               std::size_t leg);

/// (Δ⊗id)Δ(a_ij) = (id⊗Δ)Δ(a_ij) as term multisets, for all n² generators.
CheckReport coassoc_check_symbolic(std::size_t n);

/// Relation-level identities for size n: row sums, column sums, Δ applied to
/// row and column sums, and Σ_i c·a(k,i) = c·1.
CheckReport relation_suite_symbolic(std::size_t n);

/// Substitutes u's entries for generators: products within a leg, Kronecker
/// products across legs, unit → identity. Result is d^legs square.
ComplexMatrix evaluate(const NCPolynomial& p, const MagicUnitary& u);

}  // namespace qpg::ncalg
