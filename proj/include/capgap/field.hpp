#pragma once

#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <stdexcept>
#include <string>

namespace capgap {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

namespace detail {

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

inline u64 powmod(u64 base, u64 exp, u64 m) {
    u64 r = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

}  // namespace detail

/// Deterministic Miller-Rabin, exact for every 64-bit input.
inline bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull})
        if (n % q == 0) return n == q;
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = detail::powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s && composite; ++i) {
            x = detail::mulmod(x, x, n);
            if (x == n - 1) composite = false;
        }
        if (composite) return false;
    }
    return true;
}

class Fp;

/// The prime field F_p for a runtime modulus p. Immutable; one binary serves
/// all moduli. Elements are minted through operator().
class PrimeField {
  public:
    explicit PrimeField(u64 p) : p_(p) {
        if (!is_prime_u64(p))
            throw std::invalid_argument("PrimeField: modulus " + std::to_string(p) + " is not prime");
    }

    u64 modulus() const noexcept { return p_; }

    bool operator==(const PrimeField& o) const noexcept { return p_ == o.p_; }
    bool operator!=(const PrimeField& o) const noexcept { return p_ != o.p_; }

    Fp operator()(i64 v) const;
    Fp from_raw(u64 v) const;  // v must already be canonical
    Fp zero() const;
    Fp one() const;

  private:
    u64 p_;
};

/// One element of F_p, stored as the canonical representative in [0, p).
/// Carries its modulus so that elements of different fields cannot be mixed
/// silently; mixing throws.
class Fp {
  public:
    Fp() : v_(0), p_(0) {}
    Fp(u64 canonical, u64 p) : v_(canonical), p_(p) {
        if (p != 0 && canonical >= p) throw std::invalid_argument("Fp: value not canonical");
    }

    u64 value() const noexcept { return v_; }
    u64 modulus() const noexcept { return p_; }
    bool is_zero() const noexcept { return v_ == 0; }

    Fp operator-() const {
        check_valid();
        return Fp(v_ == 0 ? 0 : p_ - v_, p_);
    }

    Fp& operator+=(const Fp& o) {
        check_same(o);
        v_ += o.v_;
        if (v_ >= p_) v_ -= p_;
        return *this;
    }
    Fp& operator-=(const Fp& o) {
        check_same(o);
        v_ = v_ >= o.v_ ? v_ - o.v_ : v_ + p_ - o.v_;
        return *this;
    }
    Fp& operator*=(const Fp& o) {
        check_same(o);
        v_ = detail::mulmod(v_, o.v_, p_);
        return *this;
    }
    Fp& operator/=(const Fp& o) { return *this *= o.inv(); }

    friend Fp operator+(Fp a, const Fp& b) { return a += b; }
    friend Fp operator-(Fp a, const Fp& b) { return a -= b; }
    friend Fp operator*(Fp a, const Fp& b) { return a *= b; }
    friend Fp operator/(Fp a, const Fp& b) { return a /= b; }

    Fp inv() const {
        check_valid();
        if (v_ == 0) throw std::domain_error("Fp: division by zero");
        return Fp(detail::powmod(v_, p_ - 2, p_), p_);
    }

    Fp pow(u64 e) const {
        check_valid();
        return Fp(detail::powmod(v_, e, p_), p_);
    }

    bool operator==(const Fp& o) const {
        check_same(o);
        return v_ == o.v_;
    }
    bool operator!=(const Fp& o) const { return !(*this == o); }

    friend std::ostream& operator<<(std::ostream& os, const Fp& x) { return os << x.v_; }

  private:
    void check_valid() const {
        if (p_ == 0) throw std::invalid_argument("Fp: uninitialized element");
    }
    void check_same(const Fp& o) const {
        check_valid();
        o.check_valid();
        if (p_ != o.p_)
            throw std::invalid_argument("Fp: mixing elements of F_" + std::to_string(p_) + " and F_" +
                                        std::to_string(o.p_));
    }

    u64 v_;
    u64 p_;
};

inline Fp PrimeField::operator()(i64 v) const {
    i64 r = v % static_cast<i64>(p_);
    if (r < 0) r += static_cast<i64>(p_);
    return Fp(static_cast<u64>(r), p_);
}

inline Fp PrimeField::from_raw(u64 v) const { return Fp(v % p_, p_); }

inline Fp PrimeField::zero() const { return Fp(0, p_); }
inline Fp PrimeField::one() const { return Fp(1 % p_, p_); }

}  // namespace capgap
