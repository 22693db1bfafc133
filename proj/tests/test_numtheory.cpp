#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "permlab/numtheory.hpp"

using namespace permlab;

namespace {

// independent oracle: plain product loop
BigNat product_oracle(int64_t k, int64_t r) {
    BigNat v = 1;
    for (int64_t i = k; i > k - r; --i)
        v *= i;
    return v;
}

bool trial_division_prime(uint64_t x) {
    if (x < 2)
        return false;
    for (uint64_t d = 2; d * d <= x; ++d)
        if (x % d == 0)
            return false;
    return true;
}

}  // namespace

TEST_CASE("falling_factorial matches the direct product") {
    CHECK(falling_factorial(5, 4) == 120);
    CHECK(falling_factorial(9, 0) == 1);
    CHECK(falling_factorial(7, 3) == product_oracle(7, 3));
    CHECK(falling_factorial(7, 3) == 210);
    for (int64_t k = 1; k <= 25; ++k)
        for (int64_t r = 0; r <= k; ++r)
            CHECK(falling_factorial(k, r) == product_oracle(k, r));
}

TEST_CASE("falling_factorial rejects bad arguments") {
    CHECK_THROWS_AS(falling_factorial(0, 0), std::invalid_argument);
    CHECK_THROWS_AS(falling_factorial(3, 4), std::invalid_argument);
    CHECK_THROWS_AS(falling_factorial(3, -1), std::invalid_argument);
}

TEST_CASE("falling_factorial recurrence and monotonicity") {
    for (int64_t k = 2; k <= 40; ++k)
        for (int64_t r = 1; r <= k - 1; ++r)
            CHECK(falling_factorial(k, r) == falling_factorial(k, r - 1) * (k - r + 1));
    for (int64_t r = 1; r <= 6; ++r)
        for (int64_t k = r + 1; k <= 40; ++k)
            CHECK(falling_factorial(k, r) > falling_factorial(k - 1, r));
    for (int64_t k = 3; k <= 40; ++k)
        for (int64_t r = 1; r < k - 1; ++r)
            CHECK(falling_factorial(k, r + 1) > falling_factorial(k, r));
}

TEST_CASE("factorial cache agrees with products") {
    CHECK(factorial(0) == 1);
    CHECK(factorial(5) == 120);
    CHECK(factorial(20) == product_oracle(20, 20));
    // big enough to need many limbs
    CHECK(factorial(200) == product_oracle(200, 200));
}

TEST_CASE("prime table contains exactly the primes") {
    auto t = primes_upto(2000);
    REQUIRE(t->limit >= 2000);
    size_t idx = 0;
    for (uint64_t x = 0; x <= 2000; ++x) {
        bool expected = trial_division_prime(x);
        bool in_table = idx < t->primes.size() && t->primes[idx] == x;
        CHECK(expected == in_table);
        if (in_table)
            ++idx;
    }
    CHECK(is_prime(997));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(1000));
}

TEST_CASE("prime_pi basics") {
    CHECK(prime_pi(10) == 4);
    CHECK(prime_pi(1) == 0);
    CHECK(prime_pi(5.9) == 3);
    CHECK(prime_pi(2) == 1);
    CHECK(prime_pi(-3.0) == 0);
    // matches the table prefix length
    auto t = primes_upto(500);
    for (uint64_t x = 0; x <= 500; ++x) {
        int64_t count = 0;
        for (uint64_t p : t->primes)
            if (p <= x)
                ++count;
        CHECK(prime_pi(static_cast<double>(x)) == count);
    }
}

TEST_CASE("prime counting at s + sqrt(s+1) with exact boundaries") {
    // s = 3: bound is exactly 5, so 5 is included
    CHECK(prime_pi_shifted_sqrt(3) == 3);  // 2, 3, 5
    // s = 2: bound is 2 + sqrt(3) ~ 3.73
    CHECK(prime_pi_shifted_sqrt(2) == 2);  // 2, 3
    // brute double-check against a float-free scan
    for (int64_t s = 0; s <= 400; ++s) {
        int64_t count = 0;
        for (uint64_t p : primes_upto(500)->primes)
            if (leq_shifted_sqrt(p, s))
                ++count;
        CHECK(prime_pi_shifted_sqrt(s) == count);
    }
    // strict form is the complement at the boundary: s=3, q=5 is NOT s+sqrt(s+1) < q
    CHECK_FALSE(shifted_sqrt_lt(3, 5));
    CHECK(shifted_sqrt_lt(2, 5));
    CHECK_FALSE(shifted_sqrt_lt(2, 3));
}

TEST_CASE("valuation basics and errors") {
    CHECK(valuation(2, uint64_t{8}) == 3);
    CHECK(valuation(3, uint64_t{10}) == 0);
    CHECK(valuation(5, uint64_t{250}) == 3);
    CHECK_THROWS_AS(valuation(4, uint64_t{8}), std::invalid_argument);
    CHECK_THROWS_AS(valuation(2, uint64_t{0}), std::invalid_argument);
    CHECK(valuation(7, BigNat(49) * 49) == 4);
}

TEST_CASE("factorial_valuation is the Legendre sum and matches direct valuation") {
    CHECK(factorial_valuation(2, 4) == 3);
    CHECK(factorial_valuation(7, 6) == 0);
    CHECK(factorial_valuation(3, 9) == 4);
    for (uint64_t q : {2u, 3u, 5u, 7u, 11u})
        for (int64_t l = 0; l <= 60; ++l)
            CHECK(factorial_valuation(q, l) == valuation(q, factorial(l)));
}

TEST_CASE("valuation of a descending product splits as a factorial difference") {
    std::mt19937_64 rng(12345);
    for (int trial = 0; trial < 200; ++trial) {
        int64_t k = 2 + static_cast<int64_t>(rng() % 80);
        int64_t r = static_cast<int64_t>(rng() % (k + 1));
        uint64_t q = std::vector<uint64_t>{2, 3, 5, 7, 11, 13}[rng() % 6];
        BigNat v = falling_factorial(k, r);
        if (v == 1)
            continue;
        CHECK(valuation(q, v) == factorial_valuation(q, k) - factorial_valuation(q, k - r));
    }
}

TEST_CASE("m_index thresholds") {
    CHECK(m_index(6) == 2);
    CHECK(m_index(7) == 3);
    CHECK(m_index(25) == 4);
    CHECK(m_index(2) == 1);
    CHECK_THROWS_AS(m_index(1), std::invalid_argument);
    // defining property and monotonicity
    int64_t prev = 1;
    for (int64_t k = 2; k <= 5000; ++k) {
        int64_t m = m_index(k);
        CHECK(factorial(m) < k);
        CHECK(k <= factorial(m + 1));
        CHECK(m >= prev);
        prev = m;
    }
    for (int64_t m = 1; m <= 7; ++m)
        CHECK(m_index(factorial(m + 1).convert_to<int64_t>()) == m);
}

TEST_CASE("prime_power_decompose") {
    auto r8 = prime_power_decompose(8);
    REQUIRE(r8.has_value());
    CHECK(r8->first == 2);
    CHECK(r8->second == 3);
    CHECK_FALSE(prime_power_decompose(12).has_value());
    auto r125 = prime_power_decompose(125);
    REQUIRE(r125.has_value());
    CHECK(r125->first == 5);
    CHECK(r125->second == 3);
    auto r97 = prime_power_decompose(97);
    REQUIRE(r97.has_value());
    CHECK(r97->first == 97);
    CHECK(r97->second == 1);
    CHECK_THROWS_AS(prime_power_decompose(1), std::invalid_argument);
    // round trip over a range, against an enumerated prime-power table
    std::set<uint64_t> prime_powers;
    for (uint64_t p = 2; p <= 3000; ++p)
        if (trial_division_prime(p))
            for (uint64_t v = p; v <= 3000; v *= p)
                prime_powers.insert(v);
    for (uint64_t x = 2; x <= 3000; ++x) {
        auto d = prime_power_decompose(x);
        CHECK(d.has_value() == (prime_powers.count(x) > 0));
        if (d) {
            BigNat back = 1;
            for (int64_t e = 0; e < d->second; ++e)
                back *= d->first;
            CHECK(back == x);
        }
    }
}

TEST_CASE("prime cache file round trip") {
    namespace fs = std::filesystem;
    auto dir = fs::temp_directory_path() / "permlab_cache_test";
    fs::create_directories(dir);
    auto file = dir / "primes.bin";
    PrimeTable t;
    t.limit = 100;
    for (uint64_t x = 2; x <= 100; ++x)
        if (trial_division_prime(x))
            t.primes.push_back(x);
    detail::store_prime_cache(file, t);
    auto loaded = detail::load_prime_cache(file);
    REQUIRE(loaded != nullptr);
    CHECK(loaded->limit == 100);
    CHECK(loaded->primes == t.primes);
    // corrupt file -> silent rebuild path returns null
    std::ofstream(file, std::ios::binary | std::ios::trunc) << "garbage";
    CHECK(detail::load_prime_cache(file) == nullptr);
    fs::remove_all(dir);
}
