#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "sdea/bitstring.hpp"

namespace sdea {
namespace {

TEST(BitString, ParsesAndPrints)
{
    const auto x = BitString::from_string("1011");
    ASSERT_EQ(x.size(), 4U);
    EXPECT_TRUE(x.test(0));
    EXPECT_FALSE(x.test(1));
    EXPECT_EQ(x.to_string(), "1011");
    EXPECT_THROW(BitString::from_string("10x1"), std::invalid_argument);
}

TEST(BitString, CountsAcrossWordBoundaries)
{
    BitString x(130);
    for (std::size_t i : {0U, 63U, 64U, 65U, 127U, 128U, 129U}) {
        x.set(i);
    }
    EXPECT_EQ(x.popcount(), 7U);
    EXPECT_EQ(x.popcount(60, 66), 3U);
    EXPECT_EQ(x.popcount(66, 127), 0U);
    EXPECT_TRUE(x.all_zero(66, 127));
    EXPECT_EQ(x.leading_ones(63, 130), 3U);
    EXPECT_EQ(x.leading_ones(), 1U);
    EXPECT_EQ(BitString(200, true).leading_ones(), 200U);
    EXPECT_EQ(BitString(200, true).popcount(), 200U);
}

TEST(BitString, FlipListAndEquality)
{
    BitString x(70);
    const std::vector<std::uint32_t> flips{1, 64, 69};
    x.flip(flips);
    EXPECT_EQ(x.popcount(), 3U);
    x.flip(flips);
    EXPECT_EQ(x, BitString(70));
}

TEST(BitString, PaddingStaysZero)
{
    // A string of ones compares equal to one built bit by bit.
    BitString ones(70, true);
    BitString built(70);
    for (std::size_t i = 0; i < 70; ++i) {
        built.set(i);
    }
    EXPECT_EQ(ones, built);
    EXPECT_EQ(ones.words().back() >> 6, 0U);
}

TEST(HammingDistance, Examples)
{
    EXPECT_EQ(hamming_distance(BitString::from_string("0000"), BitString::from_string("0000")), 0U);
    EXPECT_EQ(hamming_distance(BitString::from_string("0000"), BitString::from_string("1111")), 4U);
    EXPECT_EQ(hamming_distance(BitString::from_string("1010"), BitString::from_string("1001")), 2U);
    EXPECT_THROW(hamming_distance(BitString(3), BitString(4)), std::invalid_argument);
}

TEST(RandomBitstring, LengthAndDeterminism)
{
    RandomStream a(9);
    RandomStream b(9);
    const auto x = random_bitstring(8, a);
    EXPECT_EQ(x.size(), 8U);
    EXPECT_EQ(x, random_bitstring(8, b));
    EXPECT_THROW(random_bitstring(0, a), std::invalid_argument);
}

TEST(RandomBitstring, PopcountConcentration)
{
    RandomStream rng(123);
    const int samples = 10000;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int i = 0; i < samples; ++i) {
        const auto c = static_cast<double>(random_bitstring(1000, rng).popcount());
        sum += c;
        sum_sq += c * c;
    }
    const double mean = sum / samples;
    const double sd = std::sqrt(sum_sq / samples - mean * mean);
    EXPECT_NEAR(mean, 500.0, 50.0);
    EXPECT_NEAR(mean, 500.0, 1.0);        // 6 standard errors
    EXPECT_NEAR(sd, std::sqrt(250.0), 0.8);
}

TEST(RandomBitstring, EachPositionFair)
{
    RandomStream rng(77);
    std::vector<int> ones(67, 0);
    const int samples = 40000;
    for (int i = 0; i < samples; ++i) {
        const auto x = random_bitstring(67, rng);
        for (std::size_t j = 0; j < 67; ++j) {
            ones[j] += x.test(j) ? 1 : 0;
        }
    }
    for (int c : ones) {
        EXPECT_NEAR(c / static_cast<double>(samples), 0.5, 5 * 0.5 / std::sqrt(samples));
    }
}

} // namespace
} // namespace sdea
