#include "xqp/basis.hpp"

#include <array>
#include <bit>

#include "xqp/errors.hpp"

namespace xqp {

namespace {

constexpr int kTable = 64;

std::array<std::array<std::uint64_t, kTable>, kTable> make_table() {
    std::array<std::array<std::uint64_t, kTable>, kTable> t{};
    for (int n = 0; n < kTable; ++n) {
        t[n][0] = 1;
        for (int k = 1; k <= n; ++k) t[n][k] = t[n - 1][k - 1] + (k < n ? t[n - 1][k] : 0);
    }
    return t;
}

const auto kBinom = make_table();

}  // namespace

std::uint64_t binomial(int n, int k) {
    if (n < 0 || k < 0 || k > n) return 0;
    if (n >= kTable) throw InvalidArgument("binomial: n too large");
    return kBinom[n][k];
}

BasisState::BasisState(int n, std::uint64_t bits) : n_(n), bits_(bits) {
    if (n < 1 || n > kMaxQubits) throw InvalidArgument("BasisState: n must be in 1.." + std::to_string(kMaxQubits));
    if (n < 64 && (bits >> n) != 0) throw InvalidArgument("BasisState: bits exceed n");
    weight_ = std::popcount(bits);
}

BasisState BasisState::from_string(std::string_view s) {
    if (s.empty()) throw ParseError("empty bitstring");
    std::uint64_t bits = 0;
    for (char ch : s) {
        if (ch != '0' && ch != '1') throw ParseError("invalid bitstring character '" + std::string(1, ch) + "'");
        bits = (bits << 1) | static_cast<std::uint64_t>(ch == '1');
    }
    return BasisState(static_cast<int>(s.size()), bits);
}

std::string BasisState::to_string() const { return bits_to_string(bits_, n_); }

std::string bits_to_string(std::uint64_t bits, int n) {
    std::string s(n, '0');
    for (int q = 0; q < n; ++q)
        if ((bits >> (n - 1 - q)) & 1u) s[q] = '1';
    return s;
}

std::uint64_t rank_fixed_weight(std::uint64_t bits) {
    std::uint64_t r = 0;
    int c = 0;
    while (bits) {
        int p = std::countr_zero(bits);
        r += kBinom[p][++c];
        bits &= bits - 1;
    }
    return r;
}

std::uint64_t unrank_fixed_weight(std::uint64_t rank, int n, int k) {
    std::uint64_t bits = 0;
    for (int p = n - 1; p >= 0 && k > 0; --p) {
        const std::uint64_t c = kBinom[p][k];
        if (rank >= c) {
            rank -= c;
            bits |= std::uint64_t{1} << p;
            --k;
        }
    }
    return bits;
}

std::vector<std::uint64_t> enumerate_fixed_weight(int n, int k) {
    std::vector<std::uint64_t> out;
    if (k < 0 || k > n) return out;
    out.reserve(binomial(n, k));
    if (k == 0) {
        out.push_back(0);
        return out;
    }
    std::uint64_t x = (std::uint64_t{1} << k) - 1;
    const std::uint64_t limit = std::uint64_t{1} << n;
    while (x < limit) {
        out.push_back(x);
        std::uint64_t c = x & (~x + 1);
        std::uint64_t r = x + c;
        x = (((r ^ x) >> 2) / c) | r;
    }
    return out;
}

}  // namespace xqp
