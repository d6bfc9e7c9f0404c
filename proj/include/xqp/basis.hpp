#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace xqp {

inline constexpr int kMaxQubits = 62;

/// Binomial coefficient C(n, k) for 0 <= n <= 63; zero outside 0 <= k <= n.
std::uint64_t binomial(int n, int k);

/// A computational-basis state |x> on n qubits.
///
/// Qubit 0 is the leftmost character of the bitstring and is stored in the most
/// significant position of `bits`, so lexicographic order on strings coincides
/// with numeric order on `bits`.
class BasisState {
public:
    BasisState() = default;
    BasisState(int n, std::uint64_t bits);

    /// Parses a string of '0'/'1' characters; whitespace is not allowed.
    static BasisState from_string(std::string_view s);

    int n() const { return n_; }
    int weight() const { return weight_; }
    std::uint64_t bits() const { return bits_; }
    int bit(int qubit) const { return static_cast<int>((bits_ >> (n_ - 1 - qubit)) & 1u); }
    std::string to_string() const;

    /// Mask selecting `qubit` inside the packed representation.
    static std::uint64_t mask(int n, int qubit) { return std::uint64_t{1} << (n - 1 - qubit); }

    bool operator==(const BasisState& o) const { return n_ == o.n_ && bits_ == o.bits_; }

private:
    int n_ = 0;
    std::uint64_t bits_ = 0;
    int weight_ = 0;
};

/// Rank of a weight-k packed bitstring among all weight-k strings in increasing
/// numeric (equivalently lexicographic) order.
std::uint64_t rank_fixed_weight(std::uint64_t bits);

/// Inverse of rank_fixed_weight for strings of length n and weight k.
std::uint64_t unrank_fixed_weight(std::uint64_t rank, int n, int k);

/// All weight-k strings of length n in rank order.
std::vector<std::uint64_t> enumerate_fixed_weight(int n, int k);

std::string bits_to_string(std::uint64_t bits, int n);

}  // namespace xqp
