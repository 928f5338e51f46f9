#include <algorithm>
#include <numeric>
#include <string>

#include "binatoms/error.hpp"
#include "binatoms/intpoly/intpoly.hpp"

namespace binatoms::intpoly {

ExponentVector::ExponentVector(std::int64_t n_, std::vector<int> k_)
    : n(n_), k(std::move(k_)) {
  if (n < 2) throw UsageError("exponent vector needs n >= 2");
  if (static_cast<std::int64_t>(k.size()) != n)
    throw UsageError("exponent vector length must equal n");
  if (std::any_of(k.begin(), k.end(), [](int e) { return e < 0; }))
    throw UsageError("exponents must be non-negative");
}

ExponentVector ExponentVector::constant(std::int64_t n, int c) {
  return {n, std::vector<int>(static_cast<std::size_t>(n), c)};
}

std::int64_t ExponentVector::degree() const {
  return std::accumulate(k.begin(), k.end(), std::int64_t{0});
}

bool ExponentVector::is_constant() const {
  return std::adjacent_find(k.begin(), k.end(), std::not_equal_to<>()) == k.end();
}

ExponentVector ExponentVector::complement(int m) const {
  std::vector<int> l(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (k[i] > m) throw UsageError("exponent exceeds m in complement");
    l[i] = m - k[i];
  }
  return {n, std::move(l)};
}

namespace {

BigInt power(std::int64_t base, int e) {
  BigInt r = 1;
  const BigInt b = base;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

BigInt denominator_product(const ExponentVector& v) {
  BigInt d = 1;
  for (std::int64_t i = 0; i < v.n; ++i) d *= power(v.n - i, v.k[static_cast<std::size_t>(i)]);
  return d;
}

// prod (s - i)^{k_i}; zero when s hits a root.
BigInt numerator_product(const ExponentVector& v, std::int64_t s) {
  BigInt num = 1;
  for (std::int64_t i = 0; i < v.n; ++i) {
    const int e = v.k[static_cast<std::size_t>(i)];
    if (e == 0) continue;
    if (s == i) return 0;
    num *= power(s - i, e);
  }
  return num;
}

}  // namespace

BigRational evaluate_candidate(const ExponentVector& v, std::int64_t s) {
  return BigRational(numerator_product(v, s)) / BigRational(denominator_product(v));
}

bool is_integer_valued(const ExponentVector& v) {
  const BigInt d = denominator_product(v);
  if (d == 1) return true;
  const std::int64_t deg = v.degree();
  for (std::int64_t s = 0; s <= deg; ++s) {
    const BigInt num = numerator_product(v, s);
    if (num != 0 && num % d != 0) return false;
  }
  return true;
}

std::int64_t candidate_count(std::int64_t n, int m) {
  std::int64_t count = 1;
  for (std::int64_t i = 0; i < n; ++i) {
    if (__builtin_mul_overflow(count, std::int64_t{m} + 1, &count))
      return INT64_MAX;
  }
  return count;
}

std::string_view to_string(Method m) {
  switch (m) {
    case Method::oracle: return "oracle";
    case Method::kernel: return "kernel";
    case Method::both: return "both";
  }
  return "unknown";
}

Method method_from_string(std::string_view s) {
  if (s == "oracle") return Method::oracle;
  if (s == "kernel") return Method::kernel;
  if (s == "both") return Method::both;
  throw UsageError("unknown method: " + std::string(s));
}

}  // namespace binatoms::intpoly
