#include "qpg/ncalg.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <optional>
#include <sstream>

namespace qpg::ncalg {

// ---------------------------------------------------------------------------
// Coefficients

namespace {

Rational exact_rational(double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("coefficient must be finite");
  int exp = 0;
  const double mant = std::frexp(v, &exp);
  // 53-bit integer mantissa times 2^(exp-53).
  const auto m = static_cast<long long>(std::ldexp(mant, 53));
  Rational r(m);
  const int shift = exp - 53;
  boost::multiprecision::cpp_int pow2 = 1;
  pow2 <<= std::abs(shift);
  if (shift >= 0)
    r *= Rational(pow2);
  else
    r /= Rational(pow2);
  return r;
}

std::string rational_str(const Rational& r) { return r.str(); }

}  // namespace

Coeff Coeff::from_double(double re, double im) { return {exact_rational(re), exact_rational(im)}; }

Complex Coeff::to_complex() const { return {re.convert_to<double>(), im.convert_to<double>()}; }

std::string to_string(const Coeff& c) {
  if (c.is_real()) return rational_str(c.re);
  std::string s = "(" + rational_str(c.re);
  s += c.im < 0 ? "-" : "+";
  s += rational_str(c.im < 0 ? Rational(-c.im) : c.im) + "i)";
  return s;
}

// ---------------------------------------------------------------------------
// Words and polynomials

std::size_t TensorWord::length() const {
  std::size_t len = 0;
  for (const auto& l : legs) len += l.size();
  return len;
}

std::strong_ordering operator<=>(const TensorWord& a, const TensorWord& b) {
  if (auto c = a.length() <=> b.length(); c != 0) return c;
  return a.legs <=> b.legs;
}

NCPolynomial::NCPolynomial(std::size_t n, std::size_t legs) : n_(n), legs_(legs) {
  if (n == 0) throw StructuralError("polynomial needs n >= 1");
  if (legs == 0) throw StructuralError("polynomial needs at least one leg");
}

NCPolynomial NCPolynomial::unit(std::size_t n, std::size_t legs, Coeff c) {
  NCPolynomial p(n, legs);
  p.add_term(TensorWord{std::vector<LegWord>(legs)}, c);
  return p;
}

NCPolynomial NCPolynomial::generator(std::size_t n, std::size_t i, std::size_t j) {
  if (i < 1 || i > n || j < 1 || j > n) throw std::out_of_range("generator index out of range");
  return monomial(n, TensorWord{{LegWord{Generator{i, j}}}});
}

NCPolynomial NCPolynomial::monomial(std::size_t n, TensorWord w, Coeff c) {
  NCPolynomial p(n, w.legs.size());
  for (const auto& leg : w.legs)
    for (const auto& g : leg)
      if (g.i < 1 || g.i > n || g.j < 1 || g.j > n)
        throw std::out_of_range("generator index out of range");
  p.add_term(w, c);
  return p;
}

Coeff NCPolynomial::coeff(const TensorWord& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Coeff{} : it->second;
}

void NCPolynomial::add_term(const TensorWord& w, const Coeff& c) {
  if (w.legs.size() != legs_) throw StructuralError("term leg count differs from polynomial");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

NCPolynomial NCPolynomial::adjoint() const {
  NCPolynomial out(n_, legs_);
  for (const auto& [w, c] : terms_) {
    TensorWord r = w;
    for (auto& leg : r.legs) std::reverse(leg.begin(), leg.end());
    out.add_term(r, c.conj());
  }
  return out;
}

namespace {

void require_compatible(const NCPolynomial& a, const NCPolynomial& b) {
  if (a.n() != b.n()) throw StructuralError("polynomials over different n");
  if (a.legs() != b.legs()) throw StructuralError("polynomials with different leg counts");
}

}  // namespace

NCPolynomial operator+(const NCPolynomial& a, const NCPolynomial& b) {
  require_compatible(a, b);
  NCPolynomial out = a;
  for (const auto& [w, c] : b.terms_) out.add_term(w, c);
  return out;
}

NCPolynomial operator-(const NCPolynomial& a, const NCPolynomial& b) {
  require_compatible(a, b);
  NCPolynomial out = a;
  for (const auto& [w, c] : b.terms_) out.add_term(w, -c);
  return out;
}

NCPolynomial operator*(const Coeff& c, const NCPolynomial& p) {
  NCPolynomial out(p.n_, p.legs_);
  for (const auto& [w, x] : p.terms_) out.add_term(w, c * x);
  return out;
}

NCPolynomial operator*(const NCPolynomial& a, const NCPolynomial& b) {
  require_compatible(a, b);
  NCPolynomial out(a.n_, a.legs_);
  for (const auto& [wa, ca] : a.terms_)
    for (const auto& [wb, cb] : b.terms_) {
      TensorWord w = wa;
      for (std::size_t l = 0; l < w.legs.size(); ++l)
        w.legs[l].insert(w.legs[l].end(), wb.legs[l].begin(), wb.legs[l].end());
      out.add_term(w, ca * cb);
    }
  return out;
}

NCPolynomial tensor(const NCPolynomial& a, const NCPolynomial& b) {
  if (a.n() != b.n()) throw StructuralError("polynomials over different n");
  NCPolynomial out(a.n(), a.legs() + b.legs());
  for (const auto& [wa, ca] : a.terms())
    for (const auto& [wb, cb] : b.terms()) {
      TensorWord w = wa;
      w.legs.insert(w.legs.end(), wb.legs.begin(), wb.legs.end());
      out.add_term(w, ca * cb);
    }
  return out;
}

// ---------------------------------------------------------------------------
// Parsing and printing

namespace {

class Parser {
 public:
  Parser(std::string_view src, std::size_t n) : src_(src), n_(n) {}

  NCPolynomial parse() {
    std::vector<std::pair<TensorWord, Coeff>> terms;
    skip_ws();
    if (at_end()) fail("empty expression");
    bool negate = false;
    if (peek() == '+' || peek() == '-') {
      negate = peek() == '-';
      ++pos_;
    }
    terms.push_back(term(negate));
    for (;;) {
      skip_ws();
      if (at_end()) break;
      const char c = peek();
      if (c != '+' && c != '-') fail(std::string("unexpected '") + c + "'");
      ++pos_;
      terms.push_back(term(c == '-'));
    }
    const std::size_t legs = terms.front().first.legs.size();
    NCPolynomial p(n_, legs);
    for (auto& [w, c] : terms) {
      if (w.legs.size() != legs) throw ParseError("inconsistent number of tensor legs", pos_);
      p.add_term(w, c);
    }
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }
  [[noreturn]] void fail_at(const std::string& msg, std::size_t at) const {
    throw ParseError(msg, at);
  }

  bool at_end() const { return pos_ >= src_.size(); }
  char peek() const { return at_end() ? '\0' : src_[pos_]; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }
  void expect(char c) {
    skip_ws();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string digits() {
    skip_ws();
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return std::string(src_.substr(start, pos_ - start));
  }

  // cpp_int's string constructor treats a leading 0 as octal.
  static boost::multiprecision::cpp_int decimal(const std::string& ds) {
    boost::multiprecision::cpp_int v = 0;
    for (char c : ds) v = v * 10 + (c - '0');
    return v;
  }

  Rational real() {
    const std::string whole = digits();
    if (peek() == '.') {
      ++pos_;
      const std::size_t start = pos_;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      const std::string frac(src_.substr(start, pos_ - start));
      const boost::multiprecision::cpp_int num = decimal(whole + frac);
      boost::multiprecision::cpp_int den = 1;
      for (std::size_t k = 0; k < frac.size(); ++k) den *= 10;
      return Rational(num, den);
    }
    std::size_t save = pos_;
    skip_ws();
    if (peek() == '/') {
      ++pos_;
      const std::size_t at = pos_;
      const boost::multiprecision::cpp_int den = decimal(digits());
      if (den == 0) fail_at("zero denominator", at);
      return Rational(decimal(whole), den);
    }
    pos_ = save;
    return Rational(decimal(whole));
  }

  Coeff coeff() {
    skip_ws();
    if (peek() == '(') {
      ++pos_;
      skip_ws();
      bool neg = false;
      if (peek() == '-' || peek() == '+') {
        neg = peek() == '-';
        ++pos_;
      }
      Rational re = real();
      if (neg) re = -re;
      skip_ws();
      if (peek() != '+' && peek() != '-') fail("expected '+' or '-' in complex coefficient");
      const bool im_neg = peek() == '-';
      ++pos_;
      Rational im = real();
      if (im_neg) im = -im;
      expect('i');
      expect(')');
      return {re, im};
    }
    return Coeff(real());
  }

  std::size_t index() {
    const std::size_t at = pos_;
    const std::string d = digits();
    if (d.size() > 9) fail_at("index out of range 1.." + std::to_string(n_), at);
    const auto v = static_cast<std::size_t>(std::stoul(d));
    if (v < 1 || v > n_) fail_at("index out of range 1.." + std::to_string(n_), at);
    return v;
  }

  // Returns false for the unit factor "1".
  bool factor(Generator& g) {
    skip_ws();
    if (peek() == '1') {
      ++pos_;
      return false;
    }
    if (peek() != 'a') fail("expected generator a(i,j) or 1");
    ++pos_;
    expect('(');
    g.i = index();
    expect(',');
    g.j = index();
    expect(')');
    skip_ws();
    if (peek() == '\'') ++pos_;  // generators are self-adjoint
    return true;
  }

  LegWord factorseq() {
    LegWord w;
    for (;;) {
      Generator g;
      if (factor(g)) w.push_back(g);
      skip_ws();
      if (peek() != '*') break;
      ++pos_;
    }
    return w;
  }

  std::pair<TensorWord, Coeff> term(bool negate) {
    skip_ws();
    Coeff c = 1;
    TensorWord w;
    const char first = peek();
    const bool has_coeff = first == '(' || (std::isdigit(static_cast<unsigned char>(first)) &&
                                            !(first == '1' && unit_factor_follows()));
    if (has_coeff) {
      c = coeff();
      skip_ws();
      if (peek() == '*') {
        ++pos_;
        w.legs.push_back(factorseq());
      } else if (peek() == 'a' || peek() == '1') {
        w.legs.push_back(factorseq());
      } else {
        w.legs.emplace_back();
      }
    } else {
      w.legs.push_back(factorseq());
    }
    for (;;) {
      skip_ws();
      if (peek() != '#') break;
      ++pos_;
      w.legs.push_back(factorseq());
    }
    return {std::move(w), negate ? -c : c};
  }

  // A leading "1" followed by "*" is the unit factor rather than a
  // coefficient; "1", "1 # ..." and "1/2" are read as coefficients.
  bool unit_factor_follows() const {
    std::size_t p = pos_ + 1;
    while (p < src_.size() && std::isspace(static_cast<unsigned char>(src_[p]))) ++p;
    return p < src_.size() && src_[p] == '*' && pos_ + 1 < src_.size() &&
           !std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])) && src_[pos_ + 1] != '.';
  }

  std::string_view src_;
  std::size_t n_;
  std::size_t pos_ = 0;
};

std::string word_str(const TensorWord& w) {
  std::string s;
  for (std::size_t l = 0; l < w.legs.size(); ++l) {
    if (l) s += " # ";
    if (w.legs[l].empty()) {
      s += "1";
      continue;
    }
    for (std::size_t k = 0; k < w.legs[l].size(); ++k) {
      if (k) s += "*";
      s += "a(" + std::to_string(w.legs[l][k].i) + "," + std::to_string(w.legs[l][k].j) + ")";
    }
  }
  return s;
}

}  // namespace

NCPolynomial parse_expression(std::string_view src, std::size_t n) {
  if (n == 0) throw ParseError("n must be positive", 0);
  return Parser(src, n).parse();
}

std::string to_string(const NCPolynomial& p) {
  if (p.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [w, c] : p.terms()) {
    Coeff mag = c;
    bool neg = false;
    if (c.is_real() && c.re < 0) {
      neg = true;
      mag = -c;
    }
    if (first)
      s += neg ? "-" : "";
    else
      s += neg ? " - " : " + ";
    first = false;
    if (mag == Coeff(1))
      s += word_str(w);
    else if (w.legs.size() == 1 && w.legs[0].empty())
      s += to_string(mag);
    else
      s += to_string(mag) + "*" + word_str(w);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Rewriting

namespace {

bool reduce_leg(LegWord& w, std::size_t* steps) {
  LegWord out;
  out.reserve(w.size());
  for (const auto& g : w) {
    if (!out.empty()) {
      const auto& top = out.back();
      if (top == g) {  // idempotent
        if (steps) ++*steps;
        continue;
      }
      if (top.i == g.i || top.j == g.j) {  // same row or same column
        if (steps) ++*steps;
        return false;
      }
    }
    out.push_back(g);
  }
  w = std::move(out);
  return true;
}

std::size_t input_size(const NCPolynomial& p) {
  std::size_t s = 0;
  for (const auto& [w, c] : p.terms()) s += w.length() + 1;
  return s;
}

}  // namespace

bool reduce_word(TensorWord& w, std::size_t* steps) {
  for (auto& leg : w.legs)
    if (!reduce_leg(leg, steps)) return false;
  return true;
}

NCPolynomial normal_form(const NCPolynomial& p, NormalFormStats* stats) {
  const std::size_t size = input_size(p);
  const std::size_t budget = 10 * size * size;
  std::size_t steps = 0;
  NCPolynomial out(p.n(), p.legs());
  for (const auto& [w, c] : p.terms()) {
    TensorWord r = w;
    if (reduce_word(r, &steps)) out.add_term(r, c);
    if (steps > budget) throw std::logic_error("normal_form exceeded its step budget");
  }
  if (stats) *stats = {steps, budget};
  return out;
}

namespace {

// One directed collapse of a full row or column sum. Returns true if applied.
bool collapse_once(NCPolynomial& p) {
  const std::size_t n = p.n();
  for (const auto& [w, c] : p.terms()) {
    for (std::size_t leg = 0; leg < w.legs.size(); ++leg) {
      for (std::size_t pos = 0; pos < w.legs[leg].size(); ++pos) {
        const Generator g = w.legs[leg][pos];
        TensorWord context = w;
        context.legs[leg].erase(context.legs[leg].begin() + static_cast<std::ptrdiff_t>(pos));
        TensorWord target = context;
        const bool target_nonzero = reduce_word(target);

        for (int mode = 0; mode < 2; ++mode) {
          std::vector<TensorWord> present;
          bool ok = true;
          for (std::size_t t = 1; t <= n && ok; ++t) {
            const Generator h = mode == 0 ? Generator{g.i, t} : Generator{t, g.j};
            TensorWord ins = context;
            ins.legs[leg].insert(ins.legs[leg].begin() + static_cast<std::ptrdiff_t>(pos), h);
            if (!reduce_word(ins)) continue;
            if (target_nonzero && ins == target) ok = false;
            else if (std::find(present.begin(), present.end(), ins) != present.end()) ok = false;
            else if (!(p.coeff(ins) == c)) ok = false;
            else present.push_back(std::move(ins));
          }
          if (!ok || present.empty()) continue;
          const Coeff k = c;
          for (const auto& ins : present) p.add_term(ins, -k);
          if (target_nonzero) p.add_term(target, k);
          return true;
        }
      }
    }
  }
  return false;
}

}  // namespace

NCPolynomial collapse_sums(const NCPolynomial& p, std::size_t* collapses) {
  NCPolynomial r = normal_form(p);
  std::size_t count = 0;
  while (collapse_once(r)) ++count;
  if (collapses) *collapses = count;
  return r;
}

CheckReport check_identity(const NCPolynomial& lhs, const NCPolynomial& rhs) {
  if (lhs.n() != rhs.n()) throw StructuralError("check_identity: n differs");
  if (lhs.legs() != rhs.legs()) throw StructuralError("check_identity: leg count differs");
  const NCPolynomial diff = normal_form(lhs - rhs);
  std::size_t collapses = 0;
  const NCPolynomial residue = collapse_sums(diff, &collapses);

  CheckReport r;
  r.check = "identity";
  r.tolerance = 0.0;
  r.metrics = {{"normalized_terms", diff.terms().size()},
               {"collapses", collapses},
               {"residue", to_string(residue)},
               {"residue_terms", residue.terms().size()}};
  if (residue.is_zero()) r.pass = true;
  return r;
}

// ---------------------------------------------------------------------------
// Comultiplication

std::vector<std::pair<TensorWord, Coeff>> comultiply_leg_terms(const NCPolynomial& p,
                                                               std::size_t leg) {
  if (leg >= p.legs()) throw StructuralError("comultiply_leg: leg out of range");
  const std::size_t n = p.n();
  std::vector<std::pair<TensorWord, Coeff>> out;
  for (const auto& [w, c] : p.terms()) {
    const LegWord& src = w.legs[leg];
    const std::size_t r = src.size();
    std::vector<std::size_t> ks(r, 1);
    for (;;) {
      TensorWord nw;
      nw.legs.reserve(w.legs.size() + 1);
      nw.legs.insert(nw.legs.end(), w.legs.begin(), w.legs.begin() + static_cast<std::ptrdiff_t>(leg));
      LegWord left, right;
      for (std::size_t t = 0; t < r; ++t) {
        left.push_back({src[t].i, ks[t]});
        right.push_back({ks[t], src[t].j});
      }
      nw.legs.push_back(std::move(left));
      nw.legs.push_back(std::move(right));
      nw.legs.insert(nw.legs.end(), w.legs.begin() + static_cast<std::ptrdiff_t>(leg) + 1,
                     w.legs.end());
      out.emplace_back(std::move(nw), c);

      std::size_t t = 0;
      while (t < r && ks[t] == n) ks[t++] = 1;
      if (t == r) break;
      ++ks[t];
    }
  }
  return out;
}

NCPolynomial comultiply_leg(const NCPolynomial& p, std::size_t leg) {
  NCPolynomial out(p.n(), p.legs() + 1);
  for (const auto& [w, c] : comultiply_leg_terms(p, leg)) out.add_term(w, c);
  return out;
}

CheckReport coassoc_check_symbolic(std::size_t n) {
  if (n == 0) throw StructuralError("coassoc_check_symbolic: n must be positive");
  std::size_t mismatches = 0;
  std::size_t words = 0;
  nlohmann::json worst = nlohmann::json::object();
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j) {
      const auto delta = comultiply_leg(NCPolynomial::generator(n, i, j), 0);
      auto left = comultiply_leg_terms(delta, 0);
      auto right = comultiply_leg_terms(delta, 1);
      auto by_word = [](const auto& a, const auto& b) { return a.first < b.first; };
      std::sort(left.begin(), left.end(), by_word);
      std::sort(right.begin(), right.end(), by_word);
      words = std::max(words, left.size());
      if (left != right) {
        if (mismatches == 0) worst = {{"i", i}, {"j", j}};
        ++mismatches;
      }
    }
  CheckReport r;
  r.check = "coassoc_symbolic";
  r.tolerance = 0.0;
  r.metrics = {{"n", n},
               {"generators_checked", n * n},
               {"words_per_generator", words},
               {"mismatches", mismatches}};
  r.worst_case = worst;
  r.pass = mismatches == 0;
  return r;
}

CheckReport relation_suite_symbolic(std::size_t n) {
  std::vector<std::pair<std::string, CheckReport>> results;
  const auto one = NCPolynomial::unit(n, 1);
  const auto one2 = NCPolynomial::unit(n, 2);
  const Coeff c(Rational(7, 3), Rational(-2, 5));

  for (std::size_t k = 1; k <= n; ++k) {
    NCPolynomial row(n, 1), col(n, 1), drow(n, 2), dcol(n, 2), tech(n, 1);
    for (std::size_t t = 1; t <= n; ++t) {
      row = row + NCPolynomial::generator(n, k, t);
      col = col + NCPolynomial::generator(n, t, k);
      drow = drow + comultiply_leg(NCPolynomial::generator(n, k, t), 0);
      dcol = dcol + comultiply_leg(NCPolynomial::generator(n, t, k), 0);
      tech = tech + c * NCPolynomial::generator(n, k, t);
    }
    const std::string idx = std::to_string(k);
    results.emplace_back("row_sum_" + idx, check_identity(row, one));
    results.emplace_back("column_sum_" + idx, check_identity(col, one));
    results.emplace_back("delta_row_sum_" + idx, check_identity(drow, one2));
    results.emplace_back("delta_column_sum_" + idx, check_identity(dcol, one2));
    results.emplace_back("technical_core_" + idx, check_identity(tech, c * one));
  }

  CheckReport r;
  r.check = "symbolic";
  r.tolerance = 0.0;
  nlohmann::json unresolved = nlohmann::json::array();
  for (const auto& [name, rep] : results)
    if (!rep.passed()) unresolved.push_back({{"identity", name}, {"residue", rep.metrics["residue"]}});
  r.metrics = {{"n", n}, {"identities_checked", results.size()},
               {"identities_passed", results.size() - unresolved.size()}};
  if (!unresolved.empty()) r.worst_case = {{"unresolved", unresolved}};
  // Residues are inconclusive rather than counterexamples.
  if (unresolved.empty()) r.pass = true;
  return r;
}

// ---------------------------------------------------------------------------
// Evaluation

ComplexMatrix evaluate(const NCPolynomial& p, const MagicUnitary& u) {
  if (p.n() != u.n()) throw DimensionError("evaluate: polynomial n differs from unitary n");
  const std::size_t d = u.d();
  std::size_t dim = 1;
  for (std::size_t l = 0; l < p.legs(); ++l) dim *= d;
  auto acc = ComplexMatrix::zero(dim, dim);
  const auto id = ComplexMatrix::identity(d);
  for (const auto& [w, c] : p.terms()) {
    std::optional<ComplexMatrix> term;
    for (const auto& leg : w.legs) {
      ComplexMatrix m = id;
      for (const auto& g : leg) m = m * u.entry(g.i, g.j);
      term = term ? kron(*term, m) : m;
    }
    acc = acc + c.to_complex() * *term;
  }
  return acc;
}

}  // namespace qpg::ncalg
