#pragma once

#include <bit>
#include <cmath>
#include <compare>
#include <cstdint>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nsplit {

/// Arbitrary-precision signed integer. Magnitude is little-endian base 2^32.
/// Supports exactly what the probability formulas need: ring arithmetic,
/// comparison, divmod, gcd, decimal rendering and a lossy double conversion.
class BigInt {
public:
    BigInt() = default;
    BigInt(std::int64_t v) {
        std::uint64_t u = v < 0 ? static_cast<std::uint64_t>(-(v + 1)) + 1 : static_cast<std::uint64_t>(v);
        set_u64(u);
        if (v < 0) sign_ = -sign_;
    }
    static BigInt from_u64(std::uint64_t u) {
        BigInt r;
        r.set_u64(u);
        return r;
    }

    bool is_zero() const { return sign_ == 0; }
    int sign() const { return sign_; }
    bool is_even() const { return sign_ == 0 || (mag_[0] & 1u) == 0; }

    BigInt abs() const {
        BigInt r = *this;
        if (r.sign_ < 0) r.sign_ = 1;
        return r;
    }
    BigInt operator-() const {
        BigInt r = *this;
        r.sign_ = -r.sign_;
        return r;
    }

    friend BigInt operator+(const BigInt& a, const BigInt& b) {
        if (a.sign_ == 0) return b;
        if (b.sign_ == 0) return a;
        BigInt r;
        if (a.sign_ == b.sign_) {
            r.mag_ = add_mag(a.mag_, b.mag_);
            r.sign_ = a.sign_;
        } else {
            int c = cmp_mag(a.mag_, b.mag_);
            if (c == 0) return BigInt();
            const BigInt& big = c > 0 ? a : b;
            const BigInt& small = c > 0 ? b : a;
            r.mag_ = sub_mag(big.mag_, small.mag_);
            r.sign_ = big.sign_;
        }
        return r;
    }
    friend BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }
    friend BigInt operator*(const BigInt& a, const BigInt& b) {
        if (a.sign_ == 0 || b.sign_ == 0) return BigInt();
        BigInt r;
        r.mag_ = mul_mag(a.mag_, b.mag_);
        r.sign_ = a.sign_ * b.sign_;
        return r;
    }
    BigInt& operator+=(const BigInt& o) { return *this = *this + o; }
    BigInt& operator-=(const BigInt& o) { return *this = *this - o; }
    BigInt& operator*=(const BigInt& o) { return *this = *this * o; }

    friend bool operator==(const BigInt& a, const BigInt& b) {
        return a.sign_ == b.sign_ && a.mag_ == b.mag_;
    }
    friend std::strong_ordering operator<=>(const BigInt& a, const BigInt& b) {
        if (a.sign_ != b.sign_) return a.sign_ <=> b.sign_;
        int c = cmp_mag(a.mag_, b.mag_) * (a.sign_ < 0 ? -1 : 1);
        return c <=> 0;
    }

    /// Quotient and remainder with |rem| < |b|, truncated toward zero.
    static std::pair<BigInt, BigInt> divmod(const BigInt& a, const BigInt& b) {
        if (b.sign_ == 0) throw std::invalid_argument("BigInt: division by zero");
        if (cmp_mag(a.mag_, b.mag_) < 0) return {BigInt(), a};
        auto [q, r] = divmod_mag(a.mag_, b.mag_);
        BigInt quot, rem;
        quot.mag_ = std::move(q);
        quot.trim();
        quot.sign_ = quot.mag_.empty() ? 0 : a.sign_ * b.sign_;
        rem.mag_ = std::move(r);
        rem.trim();
        rem.sign_ = rem.mag_.empty() ? 0 : a.sign_;
        return {quot, rem};
    }
    friend BigInt operator/(const BigInt& a, const BigInt& b) { return divmod(a, b).first; }
    friend BigInt operator%(const BigInt& a, const BigInt& b) { return divmod(a, b).second; }

    static BigInt pow(const BigInt& base, unsigned e) {
        BigInt r(1), b = base;
        while (e) {
            if (e & 1u) r *= b;
            b *= b;
            e >>= 1u;
        }
        return r;
    }

    static BigInt gcd(BigInt a, BigInt b) {
        a = a.abs();
        b = b.abs();
        while (!b.is_zero()) {
            BigInt r = a % b;
            a = std::move(b);
            b = std::move(r);
        }
        return a;
    }

    /// In-place division by a small divisor; returns the remainder.
    std::uint32_t divmod_u32(std::uint32_t d) {
        if (d == 0) throw std::invalid_argument("BigInt: division by zero");
        std::uint64_t rem = 0;
        for (std::size_t i = mag_.size(); i-- > 0;) {
            std::uint64_t cur = (rem << 32) | mag_[i];
            mag_[i] = static_cast<std::uint32_t>(cur / d);
            rem = cur % d;
        }
        trim();
        if (mag_.empty()) sign_ = 0;
        return static_cast<std::uint32_t>(rem);
    }

    std::size_t bit_length() const {
        if (mag_.empty()) return 0;
        return 32 * (mag_.size() - 1) + (32 - std::countl_zero(mag_.back()));
    }

    std::string to_string() const {
        if (sign_ == 0) return "0";
        BigInt tmp = abs();
        std::string out;
        while (!tmp.is_zero()) {
            std::uint32_t chunk = tmp.divmod_u32(1000000000u);
            std::string part = std::to_string(chunk);
            if (!tmp.is_zero()) part.insert(0, 9 - part.size(), '0');
            out.insert(0, part);
        }
        if (sign_ < 0) out.insert(0, "-");
        return out;
    }

    double to_double() const {
        if (sign_ == 0) return 0.0;
        auto [mant, exp] = top64();
        double d = std::ldexp(static_cast<double>(mant), static_cast<int>(exp));
        return sign_ < 0 ? -d : d;
    }

    /// Top (up to) 64 bits of the magnitude plus the power-of-two exponent,
    /// so value == mant * 2^exp up to truncation.
    std::pair<std::uint64_t, long> top64() const {
        std::size_t bl = bit_length();
        if (bl == 0) return {0, 0};
        long shift = bl > 64 ? static_cast<long>(bl - 64) : 0;
        std::uint64_t m = 0;
        for (int bit = 0; bit < 64; ++bit) {
            std::size_t pos = static_cast<std::size_t>(shift) + static_cast<std::size_t>(bit);
            if (pos >= bl) break;
            std::size_t limb = pos / 32, off = pos % 32;
            if ((mag_[limb] >> off) & 1u) m |= (1ULL << bit);
        }
        return {m, shift};
    }

    std::uint64_t to_u64_saturating() const {
        if (sign_ <= 0) return 0;
        if (bit_length() > 64) return ~0ULL;
        std::uint64_t v = mag_[0];
        if (mag_.size() > 1) v |= static_cast<std::uint64_t>(mag_[1]) << 32;
        return v;
    }

private:
    int sign_ = 0;
    std::vector<std::uint32_t> mag_;

    void set_u64(std::uint64_t u) {
        mag_.clear();
        sign_ = 0;
        if (u) {
            sign_ = 1;
            mag_.push_back(static_cast<std::uint32_t>(u));
            if (u >> 32) mag_.push_back(static_cast<std::uint32_t>(u >> 32));
        }
    }
    void trim() {
        while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
    }

    static int cmp_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
        if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
        for (std::size_t i = a.size(); i-- > 0;)
            if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
        return 0;
    }
    static std::vector<std::uint32_t> add_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b) {
        const auto& big = a.size() >= b.size() ? a : b;
        const auto& small = a.size() >= b.size() ? b : a;
        std::vector<std::uint32_t> r(big.size() + 1, 0);
        std::uint64_t carry = 0;
        for (std::size_t i = 0; i < big.size(); ++i) {
            std::uint64_t cur = carry + big[i] + (i < small.size() ? small[i] : 0);
            r[i] = static_cast<std::uint32_t>(cur);
            carry = cur >> 32;
        }
        r[big.size()] = static_cast<std::uint32_t>(carry);
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }
    // requires a >= b
    static std::vector<std::uint32_t> sub_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b) {
        std::vector<std::uint32_t> r(a.size(), 0);
        std::int64_t borrow = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            std::int64_t cur = static_cast<std::int64_t>(a[i]) - borrow - (i < b.size() ? b[i] : 0);
            if (cur < 0) {
                cur += (1LL << 32);
                borrow = 1;
            } else {
                borrow = 0;
            }
            r[i] = static_cast<std::uint32_t>(cur);
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }
    static std::vector<std::uint32_t> mul_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b) {
        std::vector<std::uint32_t> r(a.size() + b.size(), 0);
        for (std::size_t i = 0; i < a.size(); ++i) {
            std::uint64_t carry = 0;
            for (std::size_t j = 0; j < b.size(); ++j) {
                std::uint64_t cur = static_cast<std::uint64_t>(a[i]) * b[j] + r[i + j] + carry;
                r[i + j] = static_cast<std::uint32_t>(cur);
                carry = cur >> 32;
            }
            r[i + b.size()] += static_cast<std::uint32_t>(carry);
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }

    // Knuth algorithm D on normalized magnitudes; returns (quotient, remainder).
    static std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>
    divmod_mag(std::vector<std::uint32_t> u, std::vector<std::uint32_t> v) {
        if (v.size() == 1) {
            std::vector<std::uint32_t> q(u.size(), 0);
            std::uint64_t rem = 0;
            for (std::size_t i = u.size(); i-- > 0;) {
                std::uint64_t cur = (rem << 32) | u[i];
                q[i] = static_cast<std::uint32_t>(cur / v[0]);
                rem = cur % v[0];
            }
            std::vector<std::uint32_t> r;
            if (rem) r.push_back(static_cast<std::uint32_t>(rem));
            return {q, r};
        }
        int shift = std::countl_zero(v.back());
        auto shl = [&](const std::vector<std::uint32_t>& x) {
            if (shift == 0) return x;
            std::vector<std::uint32_t> y(x.size() + 1, 0);
            for (std::size_t i = 0; i < x.size(); ++i) {
                y[i] |= x[i] << shift;
                y[i + 1] = x[i] >> (32 - shift);
            }
            while (!y.empty() && y.back() == 0) y.pop_back();
            return y;
        };
        u = shl(u);
        v = shl(v);
        std::size_t n = v.size(), m = u.size() - n;
        u.resize(u.size() + 1, 0);
        std::vector<std::uint32_t> q(m + 1, 0);
        const std::uint64_t base = 1ULL << 32;
        for (std::size_t j = m + 1; j-- > 0;) {
            std::uint64_t num = (static_cast<std::uint64_t>(u[j + n]) << 32) | u[j + n - 1];
            std::uint64_t qhat = num / v[n - 1];
            std::uint64_t rhat = num % v[n - 1];
            while (qhat >= base ||
                   qhat * v[n - 2] > ((rhat << 32) | u[j + n - 2])) {
                --qhat;
                rhat += v[n - 1];
                if (rhat >= base) break;
            }
            // multiply-subtract
            std::int64_t borrow = 0;
            std::uint64_t carry = 0;
            for (std::size_t i = 0; i < n; ++i) {
                std::uint64_t p = qhat * v[i] + carry;
                carry = p >> 32;
                std::int64_t t = static_cast<std::int64_t>(u[i + j]) - borrow -
                                 static_cast<std::int64_t>(p & 0xFFFFFFFFULL);
                if (t < 0) {
                    t += static_cast<std::int64_t>(base);
                    borrow = 1;
                } else {
                    borrow = 0;
                }
                u[i + j] = static_cast<std::uint32_t>(t);
            }
            std::int64_t t = static_cast<std::int64_t>(u[j + n]) - borrow -
                             static_cast<std::int64_t>(carry);
            if (t < 0) {
                // qhat was one too large; add back
                t += static_cast<std::int64_t>(base);
                --qhat;
                std::uint64_t c2 = 0;
                for (std::size_t i = 0; i < n; ++i) {
                    std::uint64_t s = static_cast<std::uint64_t>(u[i + j]) + v[i] + c2;
                    u[i + j] = static_cast<std::uint32_t>(s);
                    c2 = s >> 32;
                }
                t += static_cast<std::int64_t>(c2);
            }
            u[j + n] = static_cast<std::uint32_t>(t);
            q[j] = static_cast<std::uint32_t>(qhat);
        }
        // denormalize remainder
        std::vector<std::uint32_t> r(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(n));
        if (shift) {
            for (std::size_t i = 0; i < r.size(); ++i) {
                r[i] >>= shift;
                if (i + 1 < n) r[i] |= u[i + 1] << (32 - shift);
            }
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
        while (!q.empty() && q.back() == 0) q.pop_back();
        return {q, r};
    }
};

/// n!, memoized. The table only grows and is guarded, so concurrent callers
/// always observe fully built entries.
inline BigInt factorial(unsigned n) {
    static std::mutex mu;
    static std::vector<BigInt> cache{BigInt(1)};
    std::scoped_lock lock(mu);
    while (cache.size() <= n)
        cache.push_back(cache.back() * BigInt(static_cast<std::int64_t>(cache.size())));
    return cache[n];
}

/// C(n, r) by the multiplicative formula; every intermediate division is exact.
inline BigInt binomial(unsigned n, unsigned r) {
    if (r > n) return BigInt(0);
    if (r > n - r) r = n - r;
    BigInt result(1);
    for (unsigned i = 1; i <= r; ++i) {
        result *= BigInt(static_cast<std::int64_t>(n - r + i));
        std::uint32_t rem = result.divmod_u32(i);
        (void)rem;
    }
    return result;
}

/// Exact rational; denominator positive, always reduced.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(std::int64_t v) : num_(v), den_(1) {}
    Rational(std::int64_t n, std::int64_t d) : Rational(BigInt(n), BigInt(d)) {}
    Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) {
        if (den_.is_zero()) throw std::invalid_argument("Rational: zero denominator");
        if (den_.sign() < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        normalize();
    }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw std::invalid_argument("Rational: division by zero");
        return Rational(a.num_ * b.den_, a.den_ * b.num_);
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        return (a.num_ * b.den_) <=> (b.num_ * a.den_);
    }

    double to_double() const {
        if (num_.is_zero()) return 0.0;
        auto [mn, en] = num_.top64();
        auto [md, ed] = den_.top64();
        double d = std::ldexp(static_cast<double>(mn) / static_cast<double>(md),
                              static_cast<int>(en - ed));
        return num_.sign() < 0 ? -d : d;
    }

    /// "p/q", or just "p" when the denominator is one.
    std::string to_string() const {
        if (den_ == BigInt(1)) return num_.to_string();
        return num_.to_string() + "/" + den_.to_string();
    }

private:
    BigInt num_, den_;

    void normalize() {
        if (num_.is_zero()) {
            den_ = BigInt(1);
            return;
        }
        BigInt g = BigInt::gcd(num_, den_);
        if (g != BigInt(1)) {
            num_ = num_ / g;
            den_ = den_ / g;
        }
    }
};

} // namespace nsplit
