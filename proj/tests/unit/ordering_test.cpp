#include "hadrow/ordering.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "hadrow/error.hpp"
#include "hadrow/hadcore.hpp"
#include "test_oracles.hpp"

namespace hadrow {
namespace {

constexpr OrderingScheme kSchemes[] = {OrderingScheme::natural, OrderingScheme::sequency,
                                       OrderingScheme::dyadic};

TEST(OrderingTest, SchemeTokens) {
    for (const auto scheme : kSchemes) {
        EXPECT_EQ(parse_ordering(to_string(scheme)), scheme);
        EXPECT_EQ(ordering_from_byte(static_cast<std::uint8_t>(scheme)), scheme);
    }
    EXPECT_EQ(to_string(OrderingScheme::sequency), "sequency");
    EXPECT_FALSE(parse_ordering("walsh"));
    EXPECT_FALSE(parse_ordering("Natural"));
    EXPECT_FALSE(ordering_from_byte(3));
}

TEST(OrderingTest, ZeroIsFixedByEveryScheme) {
    for (unsigned n = 1; n <= 20; ++n) {
        for (const auto scheme : kSchemes) EXPECT_EQ(to_natural(0, n, scheme), 0u);
    }
}

TEST(OrderingTest, SequencyExamplesFollowSignChangeEnumeration) {
    // Order the rows of the dense oracle by sign changes to get the
    // sequency -> natural map independently.
    const auto dense = oracle::sylvester(2);
    std::vector<std::uint64_t> by_changes(dense.size());
    for (std::size_t r = 0; r < dense.size(); ++r) by_changes[oracle::sign_changes(dense[r])] = r;
    ASSERT_EQ(by_changes[1], 2u);
    ASSERT_EQ(by_changes[3], 1u);

    EXPECT_EQ(to_natural(1, 2, OrderingScheme::sequency), 2u);
    EXPECT_EQ(to_natural(3, 2, OrderingScheme::sequency), 1u);
    for (std::uint64_t k = 0; k < 4; ++k) {
        EXPECT_EQ(to_natural(k, 2, OrderingScheme::sequency), by_changes[k]);
    }
}

TEST(OrderingTest, SequencyMatchesSortedSignChangesUpToOrderEight) {
    for (unsigned n = 1; n <= 8; ++n) {
        const auto dense = oracle::sylvester(n);
        std::vector<std::uint64_t> by_changes(dense.size());
        for (std::size_t r = 0; r < dense.size(); ++r) {
            by_changes[oracle::sign_changes(dense[r])] = r;
        }
        for (std::uint64_t k = 0; k < dense.size(); ++k) {
            ASSERT_EQ(to_natural(k, n, OrderingScheme::sequency), by_changes[k]);
        }
    }
}

TEST(OrderingTest, Errors) {
    EXPECT_THROW(to_natural(4, 2, OrderingScheme::natural), Error);
    EXPECT_THROW(to_natural(0, 0, OrderingScheme::dyadic), Error);
    try {
        generate_ordered_row(8, 3, OrderingScheme::sequency);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::index_out_of_range);
    }
}

TEST(OrderingTest, GenerateOrderedRowExamples) {
    EXPECT_EQ(generate_ordered_row(0, 3, OrderingScheme::sequency), SignVector(3));
    EXPECT_EQ(generate_ordered_row(1, 2, OrderingScheme::sequency).to_signs(),
              (std::vector<int>{1, 1, -1, -1}));
    EXPECT_EQ(generate_ordered_row(2, 2, OrderingScheme::dyadic).to_signs(),
              (std::vector<int>{1, -1, 1, -1}));
    EXPECT_EQ(to_natural(2, 2, OrderingScheme::dyadic), 1u);
}

TEST(OrderingTest, EverySchemeIsABijection) {
    for (unsigned n = 1; n <= 12; ++n) {
        const std::size_t size = std::size_t{1} << n;
        for (const auto scheme : kSchemes) {
            std::vector<std::uint64_t> image(size);
            for (std::uint64_t k = 0; k < size; ++k) image[k] = to_natural(k, n, scheme);
            std::sort(image.begin(), image.end());
            for (std::uint64_t k = 0; k < size; ++k) ASSERT_EQ(image[k], k);
        }
    }
}

TEST(OrderingTest, NaturalIsIdentity) {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 1000; ++trial) {
        const unsigned n = 1 + static_cast<unsigned>(rng() % 62);
        const std::uint64_t k = rng() & ((std::uint64_t{1} << n) - 1);
        ASSERT_EQ(to_natural(k, n, OrderingScheme::natural), k);
    }
}

TEST(OrderingTest, SequencyLaw) {
    for (unsigned n = 1; n <= 8; ++n) {
        for (std::uint64_t k = 0; k < (std::uint64_t{1} << n); ++k) {
            ASSERT_EQ(sign_changes(generate_ordered_row(k, n, OrderingScheme::sequency)), k);
        }
    }
}

TEST(OrderingTest, OrderedRowsStayOrthogonal) {
    for (unsigned n = 1; n <= 6; ++n) {
        const std::size_t size = std::size_t{1} << n;
        for (const auto scheme : kSchemes) {
            std::vector<SignVector> rows;
            for (std::size_t k = 0; k < size; ++k) rows.push_back(generate_ordered_row(k, n, scheme));
            for (std::size_t a = 0; a < size; ++a) {
                for (std::size_t b = 0; b < size; ++b) {
                    ASSERT_EQ(dot(rows[a], rows[b]), a == b ? static_cast<std::int64_t>(size) : 0);
                }
            }
        }
    }
}

TEST(SignChangesTest, Examples) {
    EXPECT_EQ(sign_changes(SignVector::from_signs(std::vector<int>{1, 1, 1, 1})), 0u);
    EXPECT_EQ(sign_changes(SignVector::from_signs(std::vector<int>{1, -1, 1, -1})), 3u);
    EXPECT_EQ(sign_changes(SignVector::from_signs(std::vector<int>{1, 1, -1, -1})), 1u);
    EXPECT_EQ(sign_changes(SignVector()), 0u);
}

TEST(SignChangesTest, MatchesAdjacentPairCount) {
    std::mt19937_64 rng(43);
    std::bernoulli_distribution coin(0.5);
    for (int trial = 0; trial < 500; ++trial) {
        const unsigned order = static_cast<unsigned>(rng() % 11);
        std::vector<int> signs(std::size_t{1} << order);
        for (auto& s : signs) s = coin(rng) ? -1 : 1;
        ASSERT_EQ(sign_changes(SignVector::from_signs(signs)), oracle::sign_changes(signs));
    }
}

TEST(BitOpsTest, GrayAndReverse) {
    EXPECT_EQ(gray_code(0), 0u);
    EXPECT_EQ(gray_code(2), 3u);
    EXPECT_EQ(gray_code(3), 2u);
    EXPECT_EQ(bit_reverse(0b10, 2), 0b01u);
    EXPECT_EQ(bit_reverse(0b0011, 4), 0b1100u);
    EXPECT_EQ(bit_reverse(1, 62), std::uint64_t{1} << 61);
}

}  // namespace
}  // namespace hadrow
