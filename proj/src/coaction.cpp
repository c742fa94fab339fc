#include "qpg/coaction.hpp"

#include <algorithm>
#include <random>

#include "qpg/kernels.hpp"
#include "qpg/ncalg.hpp"

namespace qpg {

namespace {

std::vector<Complex> flat_entries(const MagicUnitary& u) {
  std::vector<Complex> out;
  out.reserve(u.n() * u.n() * u.d() * u.d());
  for (const auto& e : u.entries()) out.insert(out.end(), e.data().begin(), e.data().end());
  return out;
}

void require_same_n(const GluedSpace& g, const MagicUnitary& u) {
  if (g.n() != u.n()) throw StructuralError("space n and unitary n differ");
}

}  // namespace

CoactionValue::CoactionValue(std::size_t n, std::size_t m, std::size_t d, std::vector<Complex> buffer)
    : n_(n), m_(m), d_(d), buf_(std::move(buffer)) {
  if (buf_.size() != n * m * d * d) throw DimensionError("coaction value buffer size mismatch");
}

ComplexMatrix CoactionValue::at(std::size_t k, std::size_t y) const {
  if (k < 1 || k > n_ || y < 1 || y > m_) throw std::out_of_range("coaction point out of range");
  const std::size_t dd = d_ * d_;
  const auto first = buf_.begin() + static_cast<std::ptrdiff_t>(((k - 1) * m_ + (y - 1)) * dd);
  return {d_, d_, std::vector<Complex>(first, first + static_cast<std::ptrdiff_t>(dd))};
}

CoactionValue operator*(const CoactionValue& a, const CoactionValue& b) {
  if (a.n_ != b.n_ || a.m_ != b.m_ || a.d_ != b.d_) throw DimensionError("coaction shapes differ");
  const std::size_t d = a.d_;
  std::vector<Complex> out(a.buf_.size());
  for (std::size_t cell = 0; cell < a.n_ * a.m_; ++cell) {
    const Complex* x = a.buf_.data() + cell * d * d;
    const Complex* y = b.buf_.data() + cell * d * d;
    Complex* o = out.data() + cell * d * d;
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t c = 0; c < d; ++c) o[r * d + c] += x[r * d + k] * y[k * d + c];
  }
  return {a.n_, a.m_, d, std::move(out)};
}

CoactionValue CoactionValue::adjoint() const {
  std::vector<Complex> out(buf_.size());
  for (std::size_t cell = 0; cell < n_ * m_; ++cell)
    for (std::size_t r = 0; r < d_; ++r)
      for (std::size_t c = 0; c < d_; ++c)
        out[cell * d_ * d_ + c * d_ + r] = std::conj(buf_[cell * d_ * d_ + r * d_ + c]);
  return {n_, m_, d_, std::move(out)};
}

CoactionValue apply_coaction(const GridFunction& f, const MagicUnitary& u) {
  if (f.n() != u.n()) throw DimensionError("apply_coaction: function n differs from unitary n");
  const kernels::Shape s{u.n(), f.m(), u.d()};
  std::vector<Complex> values(s.n * s.m * s.d * s.d);
  const auto entries = flat_entries(u);
  kernels::omp::coact(s, f.values(), entries, values);
  return {s.n, s.m, s.d, std::move(values)};
}

CoactionValue iterate_coaction(const CoactionValue& value, const MagicUnitary& u) {
  if (value.n() != u.n() || value.d() != u.d()) throw DimensionError("iterate_coaction: shape");
  const kernels::Shape s{u.n(), value.m(), u.d()};
  std::vector<Complex> out(s.n * s.m * s.d * s.d * s.d * s.d);
  const auto entries = flat_entries(u);
  kernels::omp::kron_contract(s, entries, value.buffer(), out);
  return {s.n, s.m, s.d * s.d, std::move(out)};
}

std::vector<GridFunction> random_quotient_functions(const GluedSpace& g, std::size_t count,
                                                    std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<GridFunction> out;
  out.reserve(count);
  for (std::size_t t = 0; t < count; ++t) {
    GridFunction f(g.n(), g.m());
    for (std::size_t i = 1; i <= g.n(); ++i)
      for (std::size_t y = 1; y <= g.m(); ++y) f(i, y) = dist(rng);
    out.push_back(g.project(f));
  }
  return out;
}

// ---------------------------------------------------------------------------

CheckReport check_technical_lemma(const GridFunction& f, const MagicUnitary& u, Tolerance tol) {
  const auto value = apply_coaction(f, u);
  const auto id = ComplexMatrix::identity(u.d());
  std::size_t constant_points = 0;
  double worst = 0.0;
  nlohmann::json where = nlohmann::json::object();
  for (std::size_t y = 1; y <= f.m(); ++y) {
    bool constant = true;
    for (std::size_t i = 2; i <= f.n() && constant; ++i)
      constant = std::abs(f(i, y) - f(1, y)) <= tol.eps;
    if (!constant) continue;
    ++constant_points;
    for (std::size_t k = 1; k <= f.n(); ++k) {
      const double v = max_diff(value.at(k, y), f(1, y) * id);
      if (v > worst) {
        worst = v;
        where = {{"k", k}, {"y", y}};
      }
    }
  }
  const double bound = static_cast<double>(f.n()) * tol.eps;
  CheckReport r;
  r.check = "technical";
  r.tolerance = tol.eps;
  r.metrics = {{"fiber_constant_points", constant_points},
               {"max_violation", worst},
               {"bound", bound}};
  r.worst_case = where;
  r.pass = worst <= bound;
  return r;
}

CheckReport check_technical_lemma_symbolic(const GridFunction& f) {
  using ncalg::Coeff;
  using ncalg::NCPolynomial;
  const std::size_t n = f.n();
  std::size_t points = 0, identities = 0, resolved = 0;
  nlohmann::json where = nlohmann::json::object();
  for (std::size_t y = 1; y <= f.m(); ++y) {
    bool constant = true;
    for (std::size_t i = 2; i <= n && constant; ++i) constant = f(i, y) == f(1, y);
    if (!constant) continue;
    ++points;
    for (std::size_t k = 1; k <= n; ++k) {
      NCPolynomial lhs(n, 1);
      for (std::size_t i = 1; i <= n; ++i)
        lhs = lhs + Coeff::from_double(f(i, y).real(), f(i, y).imag()) *
                        NCPolynomial::generator(n, k, i);
      const auto rhs = NCPolynomial::unit(n, 1, Coeff::from_double(f(1, y).real(), f(1, y).imag()));
      ++identities;
      if (ncalg::check_identity(lhs, rhs).passed())
        ++resolved;
      else if (where.empty())
        where = {{"k", k}, {"y", y}};
    }
  }
  CheckReport r;
  r.check = "technical_symbolic";
  r.tolerance = 0.0;
  r.metrics = {{"fiber_constant_points", points},
               {"identities", identities},
               {"resolved", resolved}};
  r.worst_case = where;
  if (resolved == identities) r.pass = true;
  return r;
}

// ---------------------------------------------------------------------------

double glued_slice_spread(const GluedSpace& g, const CoactionValue& value) {
  double worst = 0.0;
  for (auto y : g.spec().glued) {
    const auto ref = value.at(1, y);
    for (std::size_t k = 2; k <= g.n(); ++k) worst = std::max(worst, max_diff(value.at(k, y), ref));
  }
  return worst;
}

CheckReport check_invariance_of(const GluedSpace& g, const MagicUnitary& u,
                                const std::vector<GridFunction>& functions, Tolerance tol) {
  require_same_n(g, u);
  std::vector<double> spread(functions.size());
  std::vector<char> member(functions.size());
  const auto count = static_cast<std::int64_t>(functions.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t t = 0; t < count; ++t) {
    const auto& f = functions[static_cast<std::size_t>(t)];
    member[static_cast<std::size_t>(t)] = is_in_quotient_algebra(f, g.spec(), tol);
    spread[static_cast<std::size_t>(t)] = glued_slice_spread(g, apply_coaction(f, u));
  }
  double worst = 0.0;
  std::size_t worst_index = 0;
  std::size_t non_members = 0;
  for (std::size_t t = 0; t < functions.size(); ++t) {
    if (!member[t]) ++non_members;
    if (spread[t] > worst) {
      worst = spread[t];
      worst_index = t;
    }
  }
  CheckReport r;
  r.check = "invariance";
  r.tolerance = tol.eps;
  r.metrics = {{"functions", functions.size()},
               {"non_members", non_members},
               {"glued_points", g.spec().glued.size()},
               {"max_violation", worst}};
  r.worst_case = {{"function", worst_index}};
  r.pass = worst <= tol.eps;
  return r;
}

CheckReport check_invariance(const GluedSpace& g, const MagicUnitary& u, std::size_t trials,
                             Tolerance tol, std::uint64_t seed) {
  auto functions = g.quotient_basis();
  const std::size_t basis = functions.size();
  for (auto& f : random_quotient_functions(g, trials, seed)) functions.push_back(std::move(f));
  auto r = check_invariance_of(g, u, functions, tol);
  r.metrics["basis_functions"] = basis;
  r.metrics["random_functions"] = trials;
  r.seed = seed;
  return r;
}

CheckReport check_faithful_slices(const GluedSpace& g, const MagicUnitary& u, Tolerance tol) {
  require_same_n(g, u);
  std::size_t y0 = 0;
  for (std::size_t y = 1; y <= g.m() && y0 == 0; ++y)
    if (!g.is_glued(y)) y0 = y;
  if (y0 == 0)
    throw StructuralError("faithfulness needs a non-glued base point (Y_1 = Y)");

  std::vector<Complex> indicator(g.m());
  indicator[y0 - 1] = 1.0;
  const std::size_t n = u.n();
  double worst = 0.0;
  std::size_t recovered = 0;
  nlohmann::json where = nlohmann::json::object();
  for (std::size_t i = 1; i <= n; ++i) {
    const auto f = GridFunction::fiber_tensor(n, i, indicator);
    if (!is_in_quotient_algebra(f, g.spec(), Tolerance(0.0)))
      throw StructuralError("slice function is not in the quotient algebra");
    const auto value = apply_coaction(f, u);
    for (std::size_t k = 1; k <= n; ++k) {
      const double err = max_diff(value.at(k, y0), u.entry(k, i));
      if (err <= tol.eps) ++recovered;
      if (where.empty() || err > worst) {
        worst = err;
        where = {{"k", k}, {"i", i}};
      }
    }
  }
  CheckReport r;
  r.check = "faithful";
  r.tolerance = tol.eps;
  r.metrics = {{"y0", y0},
               {"generators", n * n},
               {"recovered", recovered},
               {"max_error", worst}};
  r.worst_case = where;
  r.pass = recovered == n * n;
  return r;
}

// ---------------------------------------------------------------------------

CheckReport fixed_point_space(const GluedSpace& g, const MagicUnitary& u, Tolerance tol) {
  require_same_n(g, u);
  const std::size_t n = g.n(), m = g.m(), d = u.d();
  const std::size_t q = g.quotient_dim();
  const std::size_t len = n * m * d * d;
  const auto basis = g.quotient_basis();
  std::vector<Complex> op(len * q);
  for (std::size_t r = 0; r < q; ++r) {
    const auto value = apply_coaction(basis[r], u);
    const auto& buf = value.buffer();
    for (std::size_t k = 1; k <= n; ++k)
      for (std::size_t y = 1; y <= m; ++y) {
        const std::size_t cell = ((k - 1) * m + (y - 1)) * d * d;
        for (std::size_t a = 0; a < d; ++a)
          for (std::size_t b = 0; b < d; ++b) {
            Complex v = buf[cell + a * d + b];
            if (a == b) v -= basis[r](k, y);
            op[(cell + a * d + b) * q + r] = v;
          }
      }
  }
  const std::size_t dim = nullspace_dim(ComplexMatrix(len, q, std::move(op)), tol);
  CheckReport r;
  r.check = "ergodic";
  r.tolerance = tol.eps;
  r.metrics = {{"dimension", dim},
               {"quotient_dim", q},
               {"lower_bound", m},
               {"verdict", dim == 1 ? "ergodic" : "not ergodic"}};
  r.pass = dim >= m;
  return r;
}

RepAlgebra saturate_rep_algebra(const MagicUnitary& u, Tolerance tol) {
  RepAlgebra alg;
  alg.d = u.d();
  auto try_add = [&](const ComplexMatrix& c) {
    std::vector<ComplexMatrix> trial = alg.basis;
    trial.push_back(c);
    if (span_rank(std::span<const ComplexMatrix>(trial), tol) > alg.basis.size()) {
      alg.basis.push_back(c);
      return true;
    }
    return false;
  };
  try_add(ComplexMatrix::identity(u.d()));
  for (const auto& e : u.entries()) try_add(e);
  const std::size_t cap = u.d() * u.d();
  bool grew = true;
  while (grew && alg.basis.size() < cap) {
    grew = false;
    const auto snapshot = alg.basis;
    for (const auto& x : snapshot) {
      grew |= try_add(x.adjoint());
      for (const auto& y : snapshot) grew |= try_add(x * y);
    }
  }
  return alg;
}

CheckReport density_rank(const GluedSpace& g, const MagicUnitary& u, Tolerance tol) {
  require_same_n(g, u);
  const auto alg = saturate_rep_algebra(u, tol);
  const std::size_t q = g.quotient_dim();
  const std::size_t d = u.d();
  const auto basis = g.quotient_basis();
  std::vector<std::vector<Complex>> vectors;
  vectors.reserve(q * alg.dim());
  for (const auto& f : basis) {
    const auto value = apply_coaction(f, u);
    std::vector<ComplexMatrix> per_class;
    per_class.reserve(q);
    for (const auto& cls : g.classes()) per_class.push_back(value.at(cls.fiber.value_or(1), cls.y));
    for (const auto& b : alg.basis) {
      std::vector<Complex> v;
      v.reserve(q * d * d);
      for (const auto& x : per_class) {
        const auto xb = x * b;
        v.insert(v.end(), xb.data().begin(), xb.data().end());
      }
      vectors.push_back(std::move(v));
    }
  }
  const std::size_t rank = span_rank(std::span<const std::vector<Complex>>(vectors), tol);
  const std::size_t target = q * alg.dim();
  CheckReport r;
  r.check = "density";
  r.tolerance = tol.eps;
  r.metrics = {{"rank", rank},
               {"target", target},
               {"quotient_dim", q},
               {"algebra_dim", alg.dim()},
               {"full_rank", rank == target}};
  if (d == 1) r.pass = rank == target;
  return r;
}

CheckReport check_homomorphism(const GluedSpace& g, const MagicUnitary& u, std::size_t trials,
                               Tolerance tol, std::uint64_t seed) {
  require_same_n(g, u);
  const auto randoms = random_quotient_functions(g, 2 * trials, seed);
  std::vector<std::pair<GridFunction, GridFunction>> pairs;
  const auto basis = g.quotient_basis();
  for (const auto& a : basis)
    for (const auto& b : basis) pairs.emplace_back(a, b);
  for (std::size_t t = 0; t < trials; ++t) pairs.emplace_back(randoms[2 * t], randoms[2 * t + 1]);

  std::vector<double> mult(pairs.size()), adj(pairs.size());
  const auto count = static_cast<std::int64_t>(pairs.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t t = 0; t < count; ++t) {
    const auto& [f, h] = pairs[static_cast<std::size_t>(t)];
    const auto af = apply_coaction(f, u);
    const auto ah = apply_coaction(h, u);
    const auto prod = apply_coaction(f * h, u);
    const auto pointwise = af * ah;
    double mv = 0.0;
    for (std::size_t k = 0; k < prod.buffer().size(); ++k)
      mv = std::max(mv, std::abs(prod.buffer()[k] - pointwise.buffer()[k]));
    const auto conj = apply_coaction(f.conj(), u);
    const auto star = af.adjoint();
    double av = 0.0;
    for (std::size_t k = 0; k < conj.buffer().size(); ++k)
      av = std::max(av, std::abs(conj.buffer()[k] - star.buffer()[k]));
    mult[static_cast<std::size_t>(t)] = mv;
    adj[static_cast<std::size_t>(t)] = av;
  }

  const auto one = apply_coaction(GridFunction(g.n(), g.m(), 1.0), u);
  const auto id = ComplexMatrix::identity(u.d());
  double unital = 0.0;
  for (std::size_t k = 1; k <= g.n(); ++k)
    for (std::size_t y = 1; y <= g.m(); ++y) unital = std::max(unital, max_diff(one.at(k, y), id));

  const auto mit = std::max_element(mult.begin(), mult.end());
  const auto ait = std::max_element(adj.begin(), adj.end());
  const double mv = mit == mult.end() ? 0.0 : *mit;
  const double av = ait == adj.end() ? 0.0 : *ait;

  CheckReport r;
  r.check = "homomorphism";
  r.tolerance = tol.eps;
  r.seed = seed;
  r.metrics = {{"pairs", pairs.size()},
               {"multiplicative_violation", mv},
               {"adjoint_violation", av},
               {"unital_violation", unital}};
  if (mit != mult.end()) r.worst_case = {{"pair", std::distance(mult.begin(), mit)}};
  r.pass = mv <= tol.eps && av <= tol.eps && unital <= tol.eps;
  return r;
}

CheckReport check_coassociativity_rep(const GluedSpace& g, const MagicUnitary& u, Tolerance tol) {
  require_same_n(g, u);
  const auto du = delta_rep(u);
  double worst = 0.0;
  std::size_t worst_class = 0;
  const auto basis = g.quotient_basis();
  for (std::size_t r = 0; r < basis.size(); ++r) {
    const auto lhs = iterate_coaction(apply_coaction(basis[r], u), u);
    const auto rhs = apply_coaction(basis[r], du);
    double v = 0.0;
    for (std::size_t k = 0; k < lhs.buffer().size(); ++k)
      v = std::max(v, std::abs(lhs.buffer()[k] - rhs.buffer()[k]));
    if (v > worst) {
      worst = v;
      worst_class = r;
    }
  }
  CheckReport r;
  r.check = "coassoc_rep";
  r.tolerance = tol.eps;
  r.metrics = {{"functions", basis.size()}, {"max_violation", worst}};
  r.worst_case = {{"class", worst_class}};
  r.pass = worst <= tol.eps;
  return r;
}

}  // namespace qpg
