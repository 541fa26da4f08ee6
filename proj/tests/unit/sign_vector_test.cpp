#include "hadrow/sign_vector.hpp"

#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "hadrow/error.hpp"

namespace hadrow {
namespace {

std::vector<int> random_signs(std::mt19937_64& rng, unsigned order) {
    std::bernoulli_distribution coin(0.5);
    std::vector<int> signs(std::size_t{1} << order);
    for (auto& s : signs) s = coin(rng) ? -1 : 1;
    return signs;
}

TEST(SignVectorTest, DefaultIsKroneckerIdentity) {
    const SignVector one;
    EXPECT_EQ(one.size(), 1u);
    EXPECT_EQ(one.order(), 0u);
    EXPECT_EQ(one[0], 1);
    ASSERT_EQ(one.bytes().size(), 1u);
    EXPECT_EQ(one.bytes()[0], 0x00);
}

TEST(SignVectorTest, AllPositivePacksToZeroBytes) {
    for (unsigned order : {0u, 1u, 3u, 4u, 10u}) {
        const SignVector v(order);
        EXPECT_EQ(v.bytes().size(), packed_size(v.size()));
        for (auto b : v.bytes()) EXPECT_EQ(b, 0);
        EXPECT_EQ(v.negative_count(), 0u);
    }
}

TEST(SignVectorTest, BitLayoutIsMsbFirstWithMinusOneSet) {
    const std::vector<int> two{1, -1};
    EXPECT_EQ(SignVector::from_signs(two).bytes()[0], 0x40);

    const std::vector<int> eight{-1, 1, 1, 1, 1, 1, 1, -1};
    EXPECT_EQ(SignVector::from_signs(eight).bytes()[0], 0x81);

    const std::vector<int> sixteen{1, 1, 1, 1, 1, 1, 1, 1, -1, 1, 1, 1, 1, 1, 1, 1};
    const auto v = SignVector::from_signs(sixteen);
    ASSERT_EQ(v.bytes().size(), 2u);
    EXPECT_EQ(v.bytes()[0], 0x00);
    EXPECT_EQ(v.bytes()[1], 0x80);
}

TEST(SignVectorTest, RejectsInvalidEntriesAndLengths) {
    const std::vector<int> zero{1, 0};
    const std::vector<int> two{1, 2};
    const std::vector<int> three{1, 1, 1};
    const std::vector<int> empty;
    auto code_of = [](const std::vector<int>& s) {
        try {
            SignVector::from_signs(s);
        } catch (const Error& e) {
            return e.code();
        }
        ADD_FAILURE() << "no error";
        return Errc::parse_error;
    };
    EXPECT_EQ(code_of(zero), Errc::invalid_sign);
    EXPECT_EQ(code_of(two), Errc::invalid_sign);
    EXPECT_EQ(code_of(three), Errc::invalid_length);
    EXPECT_EQ(code_of(empty), Errc::invalid_length);
}

TEST(SignVectorTest, FromPackedValidatesSizeAndPadding) {
    const std::vector<std::uint8_t> ok{0x40};
    EXPECT_EQ(SignVector::from_packed(2, ok).to_signs(), (std::vector<int>{1, -1}));

    const std::vector<std::uint8_t> dirty_padding{0x41};
    EXPECT_THROW(SignVector::from_packed(2, dirty_padding), Error);
    const std::vector<std::uint8_t> too_many{0x00, 0x00};
    EXPECT_THROW(SignVector::from_packed(8, too_many), Error);
    EXPECT_THROW(SignVector::from_packed(6, ok), Error);
}

TEST(SignVectorTest, PackUnpackIsIdentity) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 500; ++trial) {
        const unsigned order = static_cast<unsigned>(rng() % 13);
        const auto signs = random_signs(rng, order);
        const auto v = SignVector::from_signs(signs);
        EXPECT_EQ(v.bytes().size(), (signs.size() + 7) / 8);
        const auto back = SignVector::from_packed(v.size(), v.bytes());
        ASSERT_EQ(back, v);
        ASSERT_EQ(back.to_signs(), signs);
    }
}

TEST(SignVectorTest, DotNegationAndCountMatchEntrywiseArithmetic) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const unsigned order = static_cast<unsigned>(rng() % 11);
        const auto a = random_signs(rng, order);
        const auto b = random_signs(rng, order);
        long long expected = 0;
        std::size_t negatives = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            expected += a[i] * b[i];
            negatives += a[i] < 0;
        }
        const auto va = SignVector::from_signs(a);
        const auto vb = SignVector::from_signs(b);
        EXPECT_EQ(dot(va, vb), expected);
        EXPECT_EQ(va.negative_count(), negatives);
        EXPECT_EQ(dot(va, va.negated()), -static_cast<long long>(a.size()));
        EXPECT_EQ(va.negated().negated(), va);
    }
}

TEST(SignVectorTest, DotRejectsLengthMismatch) {
    EXPECT_THROW(dot(SignVector(2), SignVector(3)), Error);
}

}  // namespace
}  // namespace hadrow
