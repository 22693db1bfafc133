#pragma once

// Exact integer primitives: falling factorials over arbitrary-precision
// integers, a cached prime sieve with prime counting, p-adic valuations,
// and the factorial threshold index m(k) with m! < k <= (m+1)!.
//
// All boundary comparisons against s + sqrt(s+1) are done in exact integer
// arithmetic; no floating point is used for anything that decides a result.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <deque>
#include <filesystem>
#include <fstream>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace permlab {

using BigNat = boost::multiprecision::cpp_int;

// P(k, r) = k * (k-1) * ... * (k-r+1) = k! / (k-r)!; the empty product is 1.
inline BigNat falling_factorial(int64_t k, int64_t r) {
    if (k < 1)
        throw std::invalid_argument("falling_factorial: k must be >= 1");
    if (r < 0 || r > k)
        throw std::invalid_argument("falling_factorial: need 0 <= r <= k");
    BigNat v = 1;
    for (int64_t i = 0; i < r; ++i)
        v *= (k - i);
    return v;
}

namespace detail {

struct FactorialCache {
    std::mutex mu;
    std::deque<BigNat> table;  // table[i] = i!; deque keeps references stable
    FactorialCache() { table.emplace_back(1); }
    const BigNat& get(int64_t n) {
        std::lock_guard<std::mutex> lock(mu);
        while (static_cast<int64_t>(table.size()) <= n)
            table.push_back(table.back() * static_cast<int64_t>(table.size()));
        return table[static_cast<size_t>(n)];
    }
};

inline FactorialCache& factorial_cache() {
    static FactorialCache c;
    return c;
}

}  // namespace detail

inline const BigNat& factorial(int64_t n) {
    if (n < 0)
        throw std::invalid_argument("factorial: n must be >= 0");
    return detail::factorial_cache().get(n);
}

struct PrimeTable {
    uint64_t limit = 0;
    std::vector<uint64_t> primes;  // exactly the primes <= limit, ascending

    // number of primes <= x
    int64_t count_leq(uint64_t x) const {
        if (x > limit)
            throw std::invalid_argument("PrimeTable: query beyond table limit");
        return static_cast<int64_t>(
            std::upper_bound(primes.begin(), primes.end(), x) - primes.begin());
    }
};

namespace detail {

inline std::shared_ptr<const PrimeTable> sieve_prime_table(uint64_t limit) {
    auto t = std::make_shared<PrimeTable>();
    t->limit = limit;
    if (limit < 2)
        return t;
    std::vector<bool> composite(limit + 1, false);
    for (uint64_t i = 2; i * i <= limit; ++i)
        if (!composite[i])
            for (uint64_t j = i * i; j <= limit; j += i)
                composite[j] = true;
    for (uint64_t i = 2; i <= limit; ++i)
        if (!composite[i])
            t->primes.push_back(i);
    return t;
}

inline std::optional<std::filesystem::path> prime_cache_file(const char* dir_override = nullptr) {
    const char* dir = dir_override ? dir_override : std::getenv("PERMLAB_CACHE_DIR");
    if (!dir || !*dir)
        return std::nullopt;
    return std::filesystem::path(dir) / "primes.bin";
}

inline constexpr char prime_cache_magic[8] = {'P', 'L', 'P', 'R', 'I', 'M', 'E', 'S'};

// Best effort; any problem with the file just means we sieve from scratch.
inline std::shared_ptr<const PrimeTable> load_prime_cache(const std::filesystem::path& file) {
    try {
        std::ifstream in(file, std::ios::binary);
        if (!in)
            return nullptr;
        char magic[8];
        uint64_t limit = 0, count = 0;
        in.read(magic, 8);
        in.read(reinterpret_cast<char*>(&limit), 8);
        in.read(reinterpret_cast<char*>(&count), 8);
        if (!in || std::memcmp(magic, prime_cache_magic, 8) != 0 || count > limit + 1)
            return nullptr;
        auto t = std::make_shared<PrimeTable>();
        t->limit = limit;
        t->primes.resize(count);
        in.read(reinterpret_cast<char*>(t->primes.data()),
                static_cast<std::streamsize>(count * sizeof(uint64_t)));
        if (!in)
            return nullptr;
        for (size_t i = 1; i < t->primes.size(); ++i)
            if (t->primes[i] <= t->primes[i - 1])
                return nullptr;
        if (!t->primes.empty() && t->primes.back() > limit)
            return nullptr;
        return t;
    } catch (...) {
        return nullptr;
    }
}

inline void store_prime_cache(const std::filesystem::path& file, const PrimeTable& t) {
    try {
        std::filesystem::create_directories(file.parent_path());
        auto tmp = file;
        tmp += ".tmp";
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out)
                return;
            uint64_t count = t.primes.size();
            out.write(prime_cache_magic, 8);
            out.write(reinterpret_cast<const char*>(&t.limit), 8);
            out.write(reinterpret_cast<const char*>(&count), 8);
            out.write(reinterpret_cast<const char*>(t.primes.data()),
                      static_cast<std::streamsize>(count * sizeof(uint64_t)));
            if (!out)
                return;
        }
        std::filesystem::rename(tmp, file);
    } catch (...) {
        // cache is an optimization only
    }
}

struct PrimeCache {
    std::mutex mu;
    std::shared_ptr<const PrimeTable> current;

    std::shared_ptr<const PrimeTable> get(uint64_t limit) {
        std::lock_guard<std::mutex> lock(mu);
        if (current && current->limit >= limit)
            return current;
        if (auto file = prime_cache_file()) {
            if (auto disk = load_prime_cache(*file);
                disk && disk->limit >= limit && (!current || disk->limit > current->limit)) {
                current = disk;
                return current;
            }
        }
        uint64_t grown = std::max<uint64_t>(limit, current ? current->limit * 2 : 1024);
        current = sieve_prime_table(grown);
        if (auto file = prime_cache_file())
            store_prime_cache(*file, *current);
        return current;
    }
};

inline PrimeCache& prime_cache() {
    static PrimeCache c;
    return c;
}

}  // namespace detail

// Shared immutable table of all primes <= limit (possibly more).
inline std::shared_ptr<const PrimeTable> primes_upto(uint64_t limit) {
    return detail::prime_cache().get(limit);
}

inline bool is_prime(uint64_t x) {
    if (x < 2)
        return false;
    uint64_t root = static_cast<uint64_t>(std::sqrt(static_cast<double>(x)));
    while (root > 0 && static_cast<__uint128_t>(root) * root > x)
        --root;
    while (static_cast<__uint128_t>(root + 1) * (root + 1) <= x)
        ++root;
    auto t = primes_upto(std::max<uint64_t>(root + 1, 1024));
    if (x <= t->limit)
        return std::binary_search(t->primes.begin(), t->primes.end(), x);
    for (uint64_t p : t->primes) {
        if (p > root)
            break;
        if (x % p == 0)
            return false;
    }
    return true;
}

// pi(x): number of primes p <= x. Total on all inputs; anything below 2
// (including negatives and NaN) counts zero primes.
inline int64_t prime_pi(double x) {
    if (!(x >= 2.0))
        return 0;
    uint64_t bound = static_cast<uint64_t>(std::floor(x));
    return primes_upto(bound)->count_leq(bound);
}

// p <= s + sqrt(s+1), decided in integers: p <= s, or (p-s)^2 <= s+1.
inline bool leq_shifted_sqrt(uint64_t p, int64_t s) {
    if (static_cast<int64_t>(p) <= s)
        return true;
    int64_t d = static_cast<int64_t>(p) - s;
    return d * d <= s + 1;
}

// s + sqrt(s+1) < q, strict, decided in integers.
inline bool shifted_sqrt_lt(int64_t s, uint64_t q) {
    if (static_cast<int64_t>(q) <= s)
        return false;
    int64_t d = static_cast<int64_t>(q) - s;
    return d * d > s + 1;
}

// pi(s + sqrt(s+1)) with exact boundary handling; equality occurs when s+1
// is a perfect square (e.g. s = 3 includes p = 5).
inline int64_t prime_pi_shifted_sqrt(int64_t s) {
    if (s < 0)
        return 0;
    uint64_t bound = static_cast<uint64_t>(s) + static_cast<uint64_t>(std::sqrt(double(s + 1))) + 2;
    auto t = primes_upto(bound);
    int64_t count = 0;
    for (uint64_t p : t->primes) {
        if (p > bound)
            break;
        if (leq_shifted_sqrt(p, s))
            ++count;
    }
    return count;
}

// Largest e with q^e | x.
inline int64_t valuation(uint64_t q, uint64_t x) {
    if (!is_prime(q))
        throw std::invalid_argument("valuation: q must be prime");
    if (x < 1)
        throw std::invalid_argument("valuation: x must be >= 1");
    int64_t e = 0;
    while (x % q == 0) {
        x /= q;
        ++e;
    }
    return e;
}

inline int64_t valuation(uint64_t q, BigNat x) {
    if (!is_prime(q))
        throw std::invalid_argument("valuation: q must be prime");
    if (x < 1)
        throw std::invalid_argument("valuation: x must be >= 1");
    int64_t e = 0;
    while (x % q == 0) {
        x /= q;
        ++e;
    }
    return e;
}

// v_q(l!) by the Legendre sum of floor(l / q^t).
inline int64_t factorial_valuation(uint64_t q, int64_t l) {
    if (!is_prime(q))
        throw std::invalid_argument("factorial_valuation: q must be prime");
    if (l < 0)
        throw std::invalid_argument("factorial_valuation: l must be >= 0");
    int64_t total = 0;
    uint64_t ul = static_cast<uint64_t>(l);
    uint64_t p = q;
    while (p <= ul) {
        total += static_cast<int64_t>(ul / p);
        if (p > ul / q)
            break;
        p *= q;
    }
    return total;
}

// The unique m with m! < k <= (m+1)!.
inline int64_t m_index(int64_t k) {
    if (k < 2)
        throw std::invalid_argument("m_index: k must be >= 2");
    int64_t m = 1;
    while (factorial(m + 1) < k)
        ++m;
    return m;
}

// (q, h) with q prime, h >= 1 and q^h = x, if x is a prime power.
inline std::optional<std::pair<uint64_t, int64_t>> prime_power_decompose(uint64_t x) {
    if (x < 2)
        throw std::invalid_argument("prime_power_decompose: x must be >= 2");
    uint64_t p = 0;
    if (x % 2 == 0) {
        p = 2;
    } else {
        for (uint64_t d = 3; d * d <= x; d += 2)
            if (x % d == 0) {
                p = d;
                break;
            }
        if (p == 0)
            return std::make_pair(x, int64_t{1});  // x itself is prime
    }
    int64_t h = 0;
    uint64_t y = x;
    while (y % p == 0) {
        y /= p;
        ++h;
    }
    if (y != 1)
        return std::nullopt;
    return std::make_pair(p, h);
}

}  // namespace permlab
