#pragma once

#include <gmpxx.h>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <variant>

namespace ncpot {

using Rat = mpq_class;
using Cplx = std::complex<double>;

inline Rat rat(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

// Tagged scalar: exact rational or complex double.  Mixed arithmetic promotes
// to complex; symbolic modules never mix, so rational inputs stay exact.
struct Scalar {
  std::variant<Rat, Cplx> v;

  Scalar() : v(Rat(0)) {}
  Scalar(int n) : v(Rat(n)) {}
  Scalar(long n) : v(Rat(n)) {}
  Scalar(const Rat& r) : v(r) {}
  Scalar(const Cplx& c) : v(c) {}
  Scalar(double d) : v(Cplx(d, 0.0)) {}

  bool is_rat() const { return std::holds_alternative<Rat>(v); }
  const Rat& ratval() const { return std::get<Rat>(v); }
  const Cplx& cval() const { return std::get<Cplx>(v); }
  Cplx as_complex() const {
    return is_rat() ? Cplx(ratval().get_d(), 0.0) : cval();
  }
  bool is_zero() const {
    return is_rat() ? ratval() == 0 : cval() == Cplx(0.0, 0.0);
  }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    if (a.is_rat() && b.is_rat()) return Scalar(Rat(a.ratval() + b.ratval()));
    return Scalar(a.as_complex() + b.as_complex());
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) {
    if (a.is_rat() && b.is_rat()) return Scalar(Rat(a.ratval() - b.ratval()));
    return Scalar(a.as_complex() - b.as_complex());
  }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.is_rat() && b.is_rat()) return Scalar(Rat(a.ratval() * b.ratval()));
    return Scalar(a.as_complex() * b.as_complex());
  }
  friend Scalar operator-(const Scalar& a) {
    if (a.is_rat()) return Scalar(Rat(-a.ratval()));
    return Scalar(-a.cval());
  }
  Scalar& operator+=(const Scalar& o) { *this = *this + o; return *this; }
  Scalar& operator-=(const Scalar& o) { *this = *this - o; return *this; }
  Scalar& operator*=(const Scalar& o) { *this = *this * o; return *this; }
  friend bool operator==(const Scalar& a, const Scalar& b) {
    if (a.is_rat() != b.is_rat()) return a.as_complex() == b.as_complex();
    if (a.is_rat()) return a.ratval() == b.ratval();
    return a.cval() == b.cval();
  }
  std::string str() const {
    if (is_rat()) return ratval().get_str();
    return "(" + std::to_string(cval().real()) + "+" +
           std::to_string(cval().imag()) + "i)";
  }
};

// ---- arithmetic mod a ~62-bit prime (for Monte-Carlo rank computations) ----

inline uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>((__uint128_t)a * b % m);
}

inline uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t m) {
  uint64_t r = 1;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, a, m);
    a = mulmod_u64(a, a, m);
    e >>= 1;
  }
  return r;
}

inline bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                     23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) { d >>= 1; ++s; }
  // deterministic witness set for 64-bit integers
  for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                     23ull, 29ull, 31ull, 37ull}) {
    uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) { composite = false; break; }
    }
    if (composite) return false;
  }
  return true;
}

inline uint64_t random_prime_62(std::mt19937_64& rng) {
  for (;;) {
    uint64_t c = (rng() >> 2) | (1ull << 61) | 1ull;
    if (is_prime_u64(c)) return c;
  }
}

// field element mod a runtime prime
struct Fp {
  uint64_t x = 0;
  static inline uint64_t p = (1ull << 61) - 1;  // overwritten at startup
  Fp() = default;
  explicit Fp(uint64_t v) : x(v % p) {}
  static Fp from_int(long v) {
    long r = v % (long)p;
    if (r < 0) r += (long)p;
    return Fp((uint64_t)r);
  }
  static Fp from_rat(const Rat& r) {
    // num * den^{-1} mod p
    mpz_class num = r.get_num(), den = r.get_den();
    mpz_class pm(std::to_string(p));
    mpz_class nm = num % pm;
    if (nm < 0) nm += pm;
    mpz_class dm = den % pm;
    Fp n(static_cast<uint64_t>(nm.get_ui()));
    Fp d(static_cast<uint64_t>(dm.get_ui()));
    if (d.x == 0) throw std::runtime_error("denominator divisible by prime");
    return n * d.inv();
  }
  bool is_zero() const { return x == 0; }
  friend Fp operator+(Fp a, Fp b) {
    uint64_t s = a.x + b.x;
    if (s >= p) s -= p;
    return Fp{s};
  }
  friend Fp operator-(Fp a, Fp b) {
    uint64_t s = a.x + p - b.x;
    if (s >= p) s -= p;
    return Fp{s};
  }
  friend Fp operator*(Fp a, Fp b) { return Fp{mulmod_u64(a.x, b.x, p)}; }
  friend Fp operator-(Fp a) { return a.x ? Fp{p - a.x} : a; }
  Fp inv() const {
    if (x == 0) throw std::runtime_error("Fp division by zero");
    return Fp{powmod_u64(x, p - 2, p)};
  }
  friend Fp operator/(Fp a, Fp b) { return a * b.inv(); }
  friend bool operator==(Fp a, Fp b) { return a.x == b.x; }
};

inline uint64_t global_seed() {
  if (const char* s = std::getenv("NCPOT_SEED")) return std::strtoull(s, nullptr, 10);
  return 20240817ull;
}

}  // namespace ncpot
