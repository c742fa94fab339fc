#include "qpg/kernels.hpp"

#include <algorithm>
#include <cstdint>

namespace qpg::kernels {

namespace {

void check_sizes(Shape s, std::size_t f, std::size_t entries, std::size_t values) {
  const std::size_t dd = s.d * s.d;
  if (f != s.n * s.m || entries != s.n * s.n * dd || values != s.n * s.m * dd)
    throw DimensionError("coact: buffer sizes do not match shape");
}

void check_kron_sizes(Shape s, std::size_t entries, std::size_t values, std::size_t out) {
  const std::size_t dd = s.d * s.d;
  if (entries != s.n * s.n * dd || values != s.n * s.m * dd || out != s.n * s.m * dd * dd)
    throw DimensionError("kron_contract: buffer sizes do not match shape");
}

inline void coact_cell(Shape s, std::size_t k, std::size_t y, std::span<const Complex> f,
                       std::span<const Complex> entries, std::span<Complex> values) {
  const std::size_t dd = s.d * s.d;
  Complex* out = values.data() + (k * s.m + y) * dd;
  std::fill(out, out + dd, Complex{});
  for (std::size_t i = 0; i < s.n; ++i) {
    const Complex w = f[i * s.m + y];
    if (w == Complex{}) continue;
    const Complex* e = entries.data() + (k * s.n + i) * dd;
    for (std::size_t t = 0; t < dd; ++t) out[t] += w * e[t];
  }
}

inline void kron_cell(Shape s, std::size_t k, std::size_t y, std::span<const Complex> entries,
                      std::span<const Complex> values, std::span<Complex> out) {
  const std::size_t d = s.d;
  const std::size_t dd = d * d;
  const std::size_t big = dd;  // side length of a d² × d² block
  Complex* o = out.data() + (k * s.m + y) * big * big;
  std::fill(o, o + big * big, Complex{});
  for (std::size_t i = 0; i < s.n; ++i) {
    const Complex* a = entries.data() + (k * s.n + i) * dd;
    const Complex* b = values.data() + (i * s.m + y) * dd;
    for (std::size_t ar = 0; ar < d; ++ar)
      for (std::size_t ac = 0; ac < d; ++ac) {
        const Complex x = a[ar * d + ac];
        if (x == Complex{}) continue;
        for (std::size_t br = 0; br < d; ++br)
          for (std::size_t bc = 0; bc < d; ++bc)
            o[(ar * d + br) * big + ac * d + bc] += x * b[br * d + bc];
      }
  }
}

}  // namespace

namespace serial {

void coact(Shape s, std::span<const Complex> f, std::span<const Complex> entries,
           std::span<Complex> values) {
  check_sizes(s, f.size(), entries.size(), values.size());
  for (std::size_t k = 0; k < s.n; ++k)
    for (std::size_t y = 0; y < s.m; ++y) coact_cell(s, k, y, f, entries, values);
}

void kron_contract(Shape s, std::span<const Complex> entries, std::span<const Complex> values,
                   std::span<Complex> out) {
  check_kron_sizes(s, entries.size(), values.size(), out.size());
  for (std::size_t k = 0; k < s.n; ++k)
    for (std::size_t y = 0; y < s.m; ++y) kron_cell(s, k, y, entries, values, out);
}

}  // namespace serial

namespace omp {

void coact(Shape s, std::span<const Complex> f, std::span<const Complex> entries,
           std::span<Complex> values) {
  check_sizes(s, f.size(), entries.size(), values.size());
  const auto cells = static_cast<std::int64_t>(s.n * s.m);
#pragma omp parallel for schedule(static) if (cells > 64)
  for (std::int64_t c = 0; c < cells; ++c) {
    const auto cell = static_cast<std::size_t>(c);
    coact_cell(s, cell / s.m, cell % s.m, f, entries, values);
  }
}

void kron_contract(Shape s, std::span<const Complex> entries, std::span<const Complex> values,
                   std::span<Complex> out) {
  check_kron_sizes(s, entries.size(), values.size(), out.size());
  const auto cells = static_cast<std::int64_t>(s.n * s.m);
#pragma omp parallel for schedule(static) if (cells > 16)
  for (std::int64_t c = 0; c < cells; ++c) {
    const auto cell = static_cast<std::size_t>(c);
    kron_cell(s, cell / s.m, cell % s.m, entries, values, out);
  }
}

}  // namespace omp

}  // namespace qpg::kernels
