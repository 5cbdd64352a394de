#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace gpa {

using Rational = mpq_class;

// Element of the prime field F_p.  The modulus is per-thread state so that
// generic code can use ordinary operators; install it with FpModulus.
class Fp {
public:
    Fp() = default;
    Fp(long long x) { *this = from_signed(x); }

    static std::uint64_t modulus() { return p_; }
    static void set_modulus(std::uint64_t p) { p_ = p; }

    std::uint64_t value() const { return v_; }
    static Fp raw(std::uint64_t v) {
        Fp r;
        r.v_ = v;
        return r;
    }

    Fp operator+(Fp o) const {
        std::uint64_t s = v_ + o.v_;
        return raw(s >= p_ ? s - p_ : s);
    }
    Fp operator-(Fp o) const { return raw(v_ >= o.v_ ? v_ - o.v_ : v_ + p_ - o.v_); }
    Fp operator-() const { return raw(v_ == 0 ? 0 : p_ - v_); }
    Fp operator*(Fp o) const {
        if (p_ < (1ULL << 32)) return raw((v_ * o.v_) % p_);
        return raw(static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(v_) * o.v_) % p_));
    }
    Fp operator/(Fp o) const { return *this * o.inverse(); }
    Fp& operator+=(Fp o) { return *this = *this + o; }
    Fp& operator-=(Fp o) { return *this = *this - o; }
    Fp& operator*=(Fp o) { return *this = *this * o; }
    Fp& operator/=(Fp o) { return *this = *this / o; }
    bool operator==(const Fp& o) const { return v_ == o.v_; }
    bool operator!=(const Fp& o) const { return v_ != o.v_; }

    Fp pow(std::uint64_t e) const {
        Fp b = *this, r = raw(1 % p_);
        while (e) {
            if (e & 1) r *= b;
            b *= b;
            e >>= 1;
        }
        return r;
    }
    Fp inverse() const {
        if (v_ == 0) throw std::domain_error("inverse of zero in F_p");
        return pow(p_ - 2);
    }

    static Fp from_signed(long long x) {
        long long m = static_cast<long long>(p_);
        long long r = x % m;
        if (r < 0) r += m;
        return raw(static_cast<std::uint64_t>(r));
    }

private:
    std::uint64_t v_ = 0;
    static thread_local std::uint64_t p_;
};

// Scoped installation of the F_p modulus.
class FpModulus {
public:
    explicit FpModulus(std::uint64_t p) : prev_(Fp::modulus()) { Fp::set_modulus(p); }
    ~FpModulus() { Fp::set_modulus(prev_); }
    FpModulus(const FpModulus&) = delete;
    FpModulus& operator=(const FpModulus&) = delete;

private:
    std::uint64_t prev_;
};

constexpr std::uint64_t kDefaultPrime = 2147483647ULL;

bool is_prime(std::uint64_t n);
std::uint64_t next_prime(std::uint64_t n);  // smallest prime >= n

using Rng = std::mt19937_64;

// Uniform interface used by the templated algorithms.
template <class T>
struct Field;

template <>
struct Field<Fp> {
    static constexpr bool exact_char0 = false;
    static bool is_zero(const Fp& a) { return a.value() == 0; }
    static Fp random(Rng& rng) {
        std::uniform_int_distribution<std::uint64_t> d(0, Fp::modulus() - 1);
        return Fp::raw(d(rng));
    }
    static Fp from_rational(const Rational& q);
    static std::string str(const Fp& a) { return std::to_string(a.value()); }
    static Fp parse(const std::string& s);
    static std::uint64_t characteristic() { return Fp::modulus(); }
};

template <>
struct Field<Rational> {
    static constexpr bool exact_char0 = true;
    static bool is_zero(const Rational& a) { return sgn(a) == 0; }
    // Small integers keep representatives integral and reducible mod small primes.
    static Rational random(Rng& rng) {
        std::uniform_int_distribution<int> d(-30, 30);
        return Rational(d(rng));
    }
    static Rational from_rational(const Rational& q) { return q; }
    static std::string str(const Rational& a) { return a.get_str(); }
    static Rational parse(const std::string& s);
    static std::uint64_t characteristic() { return 0; }
};

template <class T>
bool is_zero(const T& a) {
    return Field<T>::is_zero(a);
}

}  // namespace gpa
