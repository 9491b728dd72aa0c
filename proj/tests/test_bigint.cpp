#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "nsplit/bigint.hpp"
#include "nsplit/rng.hpp"

using nsplit::BigInt;
using nsplit::Rational;

TEST_CASE("small arithmetic agrees with int64") {
    nsplit::Rng rng({12345, 0});
    for (int i = 0; i < 2000; ++i) {
        std::int64_t a = static_cast<std::int64_t>(rng.next_u64() % 2000001) - 1000000;
        std::int64_t b = static_cast<std::int64_t>(rng.next_u64() % 2000001) - 1000000;
        CHECK(BigInt(a) + BigInt(b) == BigInt(a + b));
        CHECK(BigInt(a) - BigInt(b) == BigInt(a - b));
        CHECK(BigInt(a) * BigInt(b) == BigInt(a * b));
        CHECK((BigInt(a) < BigInt(b)) == (a < b));
        if (b != 0) {
            auto [q, r] = BigInt::divmod(BigInt(a), BigInt(b));
            CHECK(q == BigInt(a / b));
            CHECK(r == BigInt(a % b));
        }
    }
}

TEST_CASE("divmod reconstructs the dividend on large operands") {
    nsplit::Rng rng({777, 1});
    for (int i = 0; i < 300; ++i) {
        BigInt a(1), b(1);
        for (int j = 0; j < 6; ++j) a *= BigInt::from_u64(rng.next_u64() | 1);
        for (int j = 0; j < 3; ++j) b *= BigInt::from_u64(rng.next_u64() | 1);
        auto [q, r] = BigInt::divmod(a, b);
        CHECK(q * b + r == a);
        CHECK(r >= BigInt(0));
        CHECK(r < b);
    }
}

TEST_CASE("divmod with adversarial limb patterns") {
    // biased limbs make the quotient-digit overestimate (add-back) reachable
    nsplit::Rng rng({424242, 0});
    const std::uint64_t pool[] = {0, 1, 2, 0x7FFFFFFFu, 0x80000000u, 0x80000001u,
                                  0xFFFFFFFEu, 0xFFFFFFFFu};
    auto biased = [&](int limbs) {
        BigInt v(0);
        for (int i = 0; i < limbs; ++i) {
            v = v * BigInt::from_u64(1ULL << 32);
            v = v + BigInt::from_u64(pool[rng.below(8)]);
        }
        return v;
    };
    for (int i = 0; i < 20000; ++i) {
        BigInt a = biased(2 + rng.below_int(5));
        BigInt b = biased(2 + rng.below_int(3));
        if (b.is_zero()) continue;
        auto [q, r] = BigInt::divmod(a, b);
        CHECK(q * b + r == a);
        CHECK(r >= BigInt(0));
        CHECK(r < b);
    }
    // signed truncation identities
    for (int i = 0; i < 2000; ++i) {
        std::int64_t x = static_cast<std::int64_t>(rng.next_u64() % 4000001) - 2000000;
        std::int64_t y = static_cast<std::int64_t>(rng.next_u64() % 999) - 499;
        if (y == 0) continue;
        BigInt a(x), b(y);
        CHECK((a / b) * b + (a % b) == a);
        CHECK(a / b == BigInt(x / y));
        CHECK(a % b == BigInt(x % y));
    }
}

TEST_CASE("gcd agrees with std::gcd") {
    nsplit::Rng rng({9, 0});
    for (int i = 0; i < 500; ++i) {
        std::int64_t a = static_cast<std::int64_t>(rng.next_u64() % 1000000);
        std::int64_t b = static_cast<std::int64_t>(rng.next_u64() % 1000000);
        CHECK(BigInt::gcd(BigInt(a), BigInt(b)) == BigInt(std::gcd(a, b)));
    }
}

TEST_CASE("factorial and binomial") {
    std::uint64_t f = 1;
    for (unsigned n = 1; n <= 20; ++n) {
        f *= n;
        CHECK(nsplit::factorial(n) == BigInt::from_u64(f));
    }
    CHECK(nsplit::factorial(25).to_string() == "15511210043330985984000000");
    CHECK(nsplit::binomial(52, 5) == BigInt(2598960));
    CHECK(nsplit::binomial(0, 0) == BigInt(1));
    CHECK(nsplit::binomial(5, 7) == BigInt(0));
    for (unsigned n = 1; n <= 40; ++n)
        for (unsigned r = 1; r <= n; ++r)
            CHECK(nsplit::binomial(n, r) == nsplit::binomial(n - 1, r - 1) + nsplit::binomial(n - 1, r));
}

TEST_CASE("string and double rendering") {
    CHECK(BigInt(0).to_string() == "0");
    CHECK(BigInt(-123456789012345).to_string() == "-123456789012345");
    BigInt p = BigInt::pow(BigInt(2), 100);
    CHECK(p.to_string() == "1267650600228229401496703205376");
    CHECK(p.to_double() == doctest::Approx(std::ldexp(1.0, 100)).epsilon(1e-12));
    CHECK(BigInt(-7).to_double() == -7.0);
}

TEST_CASE("rational normalization and arithmetic") {
    CHECK(Rational(4, 6) == Rational(2, 3));
    CHECK(Rational(2, -3) == Rational(-2, 3));
    CHECK(Rational(2, 3) + Rational(1, 6) == Rational(5, 6));
    CHECK(Rational(2, 3) * Rational(3, 4) == Rational(1, 2));
    CHECK(Rational(1, 2) - Rational(1, 2) == Rational(0));
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(2, 3).to_string() == "2/3");
    CHECK(Rational(6, 3).to_string() == "2");
    CHECK(Rational(1, 3).to_double() == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
    // huge numerator and denominator still divide cleanly through doubles
    Rational big(nsplit::factorial(600), nsplit::factorial(599));
    CHECK(big == Rational(600));
    Rational tiny(nsplit::factorial(300) * nsplit::factorial(300), nsplit::factorial(600));
    CHECK(tiny.to_double() == doctest::Approx(1.0 / nsplit::binomial(600, 300).to_double()).epsilon(1e-9));
}
