#include <catch2/catch_amalgamated.hpp>

#include <map>

#include "permlab/labels.hpp"

using namespace permlab;

namespace {

// independent oracle: group pairs by value with from-scratch products
std::map<BigNat, std::vector<std::pair<int64_t, int64_t>>> brute_classes(int64_t n) {
    std::map<BigNat, std::vector<std::pair<int64_t, int64_t>>> out;
    for (int64_t high = 2; high <= n; ++high)
        for (int64_t low = 1; low < high; ++low) {
            BigNat v = 1;
            for (int64_t i = high; i > high - low; --i)
                v *= i;
            out[v].emplace_back(low, high);
        }
    return out;
}

}  // namespace

TEST_CASE("enumerate_pairs basics") {
    auto p2 = enumerate_pairs(2);
    REQUIRE(p2.size() == 1);
    CHECK(p2[0].low == 1);
    CHECK(p2[0].high == 2);
    CHECK(p2[0].value == 2);

    auto p3 = enumerate_pairs(3);
    REQUIRE(p3.size() == 3);
    std::vector<BigNat> values;
    for (const auto& p : p3)
        values.push_back(p.value);
    std::sort(values.begin(), values.end());
    CHECK(values == std::vector<BigNat>{2, 3, 6});

    auto p5 = enumerate_pairs(5);
    REQUIRE(p5.size() == 10);
    std::set<BigNat> distinct;
    for (const auto& p : p5)
        distinct.insert(p.value);
    CHECK(distinct.size() == 10);  // all distinct at n = 5
}

TEST_CASE("enumerate_pairs values and order match the direct product") {
    for (int64_t n : {2, 3, 7, 20}) {
        auto pairs = enumerate_pairs(n);
        REQUIRE(static_cast<int64_t>(pairs.size()) == n * (n - 1) / 2);
        size_t i = 0;
        for (int64_t high = 2; high <= n; ++high)
            for (int64_t low = 1; low < high; ++low, ++i) {
                CHECK(pairs[i].low == low);
                CHECK(pairs[i].high == high);
                CHECK(pairs[i].value == falling_factorial(high, low));
            }
    }
}

TEST_CASE("enumerate_pairs rejects bad n and the cap") {
    CHECK_THROWS_AS(enumerate_pairs(1), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_pairs(50, 40), std::invalid_argument);
}

TEST_CASE("collision table n=6 has exactly the two known classes") {
    for (auto mode : {TableMode::exact, TableMode::fingerprint}) {
        auto t = build_collision_table(6, mode);
        CHECK(t.pair_count() == 15);
        std::vector<const CollisionClass*> multi;
        for (const auto& c : t.classes)
            if (c.pairs.size() > 1)
                multi.push_back(&c);
        REQUIRE(multi.size() == 2);
        CHECK(multi[0]->value == 6);
        CHECK(multi[0]->pairs ==
              std::vector<std::pair<int64_t, int64_t>>{{2, 3}, {1, 6}});  // (high,low)-lex
        CHECK(multi[1]->value == 120);
        CHECK(multi[1]->pairs == std::vector<std::pair<int64_t, int64_t>>{{4, 5}, {3, 6}});
    }
}

TEST_CASE("collision table small oracle values") {
    auto t5 = build_collision_table(5, TableMode::exact);
    for (const auto& c : t5.classes)
        CHECK(c.pairs.size() == 1);
    CHECK(distinct_value_count(5) == 10);
    CHECK(distinct_value_count(6) == 13);
    CHECK(distinct_value_count(7) == 19);

    // n=7 gains no new collision over n=6
    auto t7 = build_collision_table(7, TableMode::exact);
    std::vector<BigNat> multi_values;
    for (const auto& c : t7.classes)
        if (c.pairs.size() > 1)
            multi_values.push_back(c.value);
    CHECK(multi_values == std::vector<BigNat>{6, 120});
}

TEST_CASE("both modes reproduce the brute-force grouping") {
    for (int64_t n = 2; n <= 40; ++n) {
        auto oracle = brute_classes(n);
        for (auto mode : {TableMode::exact, TableMode::fingerprint}) {
            auto t = build_collision_table(n, mode);
            REQUIRE(t.classes.size() == oracle.size());
            auto it = oracle.begin();
            for (const auto& c : t.classes) {
                CHECK(c.value == it->first);
                CHECK(c.pairs == it->second);
                ++it;
            }
        }
    }
}

TEST_CASE("class sizes account for all pairs and values never repeat") {
    for (int64_t n : {6, 17, 30, 61}) {
        auto t = build_collision_table(n, TableMode::fingerprint);
        CHECK(t.pair_count() == n * (n - 1) / 2);
        int64_t repeats = 0;
        for (size_t i = 0; i < t.classes.size(); ++i) {
            CHECK(!t.classes[i].pairs.empty());
            if (i > 0)
                CHECK(t.classes[i - 1].value < t.classes[i].value);
            repeats += static_cast<int64_t>(t.classes[i].pairs.size()) - 1;
        }
        CHECK(repeats == n * (n - 1) / 2 - static_cast<int64_t>(t.classes.size()));
    }
}

TEST_CASE("D grows by at least one per step") {
    auto counts = distinct_counts_upto(80);
    for (int64_t n = 3; n <= 80; ++n)
        CHECK(counts[n] >= counts[n - 1] + 1);
}

TEST_CASE("distinct_counts_upto matches per-n tables") {
    auto counts = distinct_counts_upto(45);
    for (int64_t n = 2; n <= 45; ++n)
        CHECK(counts[n] == distinct_value_count(n));
}

TEST_CASE("singleton values") {
    auto s6 = singleton_values(6);
    CHECK(s6.size() == 11);
    CHECK(!std::binary_search(s6.begin(), s6.end(), BigNat(6)));
    CHECK(!std::binary_search(s6.begin(), s6.end(), BigNat(120)));

    CHECK(singleton_values(3) == std::vector<BigNat>{2, 3, 6});
    CHECK(singleton_values(2) == std::vector<BigNat>{2});

    // each singleton value reproduces from its unique pair
    auto t = build_collision_table(9, TableMode::exact);
    for (const auto& c : t.classes)
        if (c.pairs.size() == 1)
            CHECK(falling_factorial(c.pairs[0].second, c.pairs[0].first) == c.value);
}

TEST_CASE("classes csv shape") {
    auto t = build_collision_table(6, TableMode::exact);
    auto csv = classes_csv(t, 2);
    CHECK(csv ==
          "value_decimal,size,pairs\n"
          "6,2,2-3;1-6\n"
          "120,2,4-5;3-6\n");
    auto all = classes_csv(t, 1);
    CHECK(std::count(all.begin(), all.end(), '\n') == 14);  // header + 13 classes
}
