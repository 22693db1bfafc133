#pragma once

// Edge-label enumeration for vertex labels 1..n and exact collision grouping.
// Every unordered pair (low, high), low < high, carries the descending product
// P(high, low); the number of distinct values D(n) is the exact edge count of
// any maximal permutation-labeled graph on n vertices.

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "permlab/numtheory.hpp"

namespace permlab {

struct LabelPair {
    int64_t low;
    int64_t high;
    BigNat value;  // falling_factorial(high, low)
};

enum class TableMode { exact, fingerprint };

inline constexpr int64_t default_pair_cap = 2000;

// Exact keys are cheap at small n; above a few hundred the 64-bit residue
// buckets avoid hashing/comparing hundred-digit keys during grouping.
inline TableMode recommended_mode(int64_t n) {
    return n <= 300 ? TableMode::exact : TableMode::fingerprint;
}

namespace detail {

inline void check_pair_domain(int64_t n, int64_t cap) {
    if (n < 2)
        throw std::invalid_argument("label enumeration requires n >= 2");
    if (cap < 2 || n > cap)
        throw std::invalid_argument("n=" + std::to_string(n) +
                                    " exceeds the configured pair cap (" + std::to_string(cap) + ")");
}

}  // namespace detail

// All n(n-1)/2 pairs in (high, low)-lexicographic order; values follow the
// recurrence value(high, low) = value(high, low-1) * (high - low + 1).
// Rows are independent, but filling them is allocation-bound, so a single
// pass beats partitioned workers here.
inline std::vector<LabelPair> enumerate_pairs(int64_t n, int64_t cap = default_pair_cap) {
    detail::check_pair_domain(n, cap);
    std::vector<LabelPair> out;
    out.reserve(static_cast<size_t>(n * (n - 1) / 2));
    for (int64_t high = 2; high <= n; ++high) {
        BigNat v = high;
        out.push_back({1, high, v});
        for (int64_t low = 2; low < high; ++low) {
            v *= (high - low + 1);
            out.push_back({low, high, v});
        }
    }
    return out;
}

struct CollisionClass {
    BigNat value;
    std::vector<std::pair<int64_t, int64_t>> pairs;  // (low, high), (high, low)-lex order
};

struct CollisionTable {
    int64_t n = 0;
    std::vector<CollisionClass> classes;  // ascending by value

    int64_t pair_count() const {
        int64_t total = 0;
        for (const auto& c : classes)
            total += static_cast<int64_t>(c.pairs.size());
        return total;
    }
};

namespace detail {

inline constexpr uint64_t fp_mod_a = (uint64_t(1) << 61) - 1;        // 2^61 - 1
inline constexpr uint64_t fp_mod_b = 18446744073709551557ull;        // 2^64 - 59

inline uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>(static_cast<__uint128_t>(a) * b % m);
}

struct ResidueKey {
    uint64_t a, b;
    bool operator==(const ResidueKey& o) const { return a == o.a && b == o.b; }
};

struct ResidueKeyHash {
    size_t operator()(const ResidueKey& k) const {
        uint64_t h = k.a * 0x9e3779b97f4a7c15ull;
        h ^= k.b + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        return static_cast<size_t>(h);
    }
};

}  // namespace detail

inline CollisionTable build_collision_table(int64_t n, TableMode mode,
                                            int64_t cap = default_pair_cap) {
    detail::check_pair_domain(n, cap);
    auto pairs = enumerate_pairs(n, cap);
    CollisionTable table;
    table.n = n;

    if (mode == TableMode::exact) {
        std::map<BigNat, std::vector<std::pair<int64_t, int64_t>>> classes;
        for (const auto& p : pairs)
            classes[p.value].emplace_back(p.low, p.high);
        table.classes.reserve(classes.size());
        for (auto& [value, members] : classes)
            table.classes.push_back({value, std::move(members)});
        return table;
    }

    // Residue buckets modulo two fixed 64-bit primes, confirmed exactly: a
    // residue bucket is a superset of a value class, so splitting each bucket
    // by exact value reproduces the exact grouping.
    std::unordered_map<detail::ResidueKey, std::vector<uint32_t>, detail::ResidueKeyHash> buckets;
    buckets.reserve(pairs.size() * 2);
    {
        size_t idx = 0;
        for (int64_t high = 2; high <= n; ++high) {
            uint64_t ra = static_cast<uint64_t>(high) % detail::fp_mod_a;
            uint64_t rb = static_cast<uint64_t>(high) % detail::fp_mod_b;
            buckets[{ra, rb}].push_back(static_cast<uint32_t>(idx++));
            for (int64_t low = 2; low < high; ++low) {
                uint64_t mult = static_cast<uint64_t>(high - low + 1);
                ra = detail::mulmod(ra, mult % detail::fp_mod_a, detail::fp_mod_a);
                rb = detail::mulmod(rb, mult % detail::fp_mod_b, detail::fp_mod_b);
                buckets[{ra, rb}].push_back(static_cast<uint32_t>(idx++));
            }
        }
    }
    table.classes.reserve(buckets.size());
    for (auto& [key, members] : buckets) {
        (void)key;
        if (members.size() == 1) {
            const auto& p = pairs[members[0]];
            table.classes.push_back({p.value, {{p.low, p.high}}});
            continue;
        }
        std::map<BigNat, std::vector<std::pair<int64_t, int64_t>>> split;
        for (uint32_t i : members) {
            const auto& p = pairs[i];
            split[p.value].emplace_back(p.low, p.high);
        }
        for (auto& [value, sub] : split)
            table.classes.push_back({value, std::move(sub)});
    }
    std::sort(table.classes.begin(), table.classes.end(),
              [](const CollisionClass& x, const CollisionClass& y) { return x.value < y.value; });
    return table;
}

inline CollisionTable build_collision_table(int64_t n) {
    return build_collision_table(n, recommended_mode(n));
}

// The exact oracle D(n): number of distinct edge values within 1..n.
inline int64_t distinct_value_count(int64_t n, TableMode mode, int64_t cap = default_pair_cap) {
    return static_cast<int64_t>(build_collision_table(n, mode, cap).classes.size());
}

inline int64_t distinct_value_count(int64_t n) {
    return distinct_value_count(n, recommended_mode(n));
}

// D(m) for every m in 2..n_max from a single table at n_max: a value exists
// at m iff its class has a pair with high <= m, and pairs are (high, low)-lex
// sorted, so the first member carries the minimal high.
inline std::vector<int64_t> distinct_counts_upto(int64_t n_max, int64_t cap = default_pair_cap) {
    auto table = build_collision_table(n_max, recommended_mode(n_max), cap);
    std::vector<int64_t> born(static_cast<size_t>(n_max) + 1, 0);
    for (const auto& c : table.classes)
        ++born[static_cast<size_t>(c.pairs.front().second)];
    std::vector<int64_t> counts(static_cast<size_t>(n_max) + 1, 0);
    for (int64_t m = 2; m <= n_max; ++m)
        counts[static_cast<size_t>(m)] = counts[static_cast<size_t>(m - 1)] + born[static_cast<size_t>(m)];
    return counts;
}

// Values realized by exactly one pair, ascending.
inline std::vector<BigNat> singleton_values(int64_t n, int64_t cap = default_pair_cap) {
    auto table = build_collision_table(n, recommended_mode(n), cap);
    std::vector<BigNat> out;
    for (const auto& c : table.classes)
        if (c.pairs.size() == 1)
            out.push_back(c.value);
    return out;
}

// CSV with columns value_decimal,size,pairs; pairs joined as "low-high;...".
inline std::string classes_csv(const CollisionTable& table, int64_t min_size = 1) {
    std::string out = "value_decimal,size,pairs\n";
    for (const auto& c : table.classes) {
        if (static_cast<int64_t>(c.pairs.size()) < min_size)
            continue;
        out += c.value.str();
        out += ',';
        out += std::to_string(c.pairs.size());
        out += ',';
        bool first = true;
        for (const auto& [low, high] : c.pairs) {
            if (!first)
                out += ';';
            first = false;
            out += std::to_string(low);
            out += '-';
            out += std::to_string(high);
        }
        out += '\n';
    }
    return out;
}

}  // namespace permlab
