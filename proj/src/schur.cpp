#include "xqp/schur.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <string>

#include "xqp/errors.hpp"

namespace xqp {

namespace {

void check_two_j(int n, int two_j) {
    if (n < 1 || two_j < 0 || two_j > n || (n - two_j) % 2 != 0)
        throw InvalidArgument("J = " + std::to_string(two_j) + "/2 is not allowed for n = " +
                              std::to_string(n));
}

}  // namespace

std::vector<int> allowed_two_j(int n) {
    if (n < 1) throw InvalidArgument("n must be positive");
    std::vector<int> out;
    for (int t = n; t >= 0; t -= 2) out.push_back(t);
    return out;
}

int irrep_dim(int n, int two_j) {
    check_two_j(n, two_j);
    const int k = (n - two_j) / 2;
    const auto hi = binomial(n, k);
    const auto lo = k >= 1 ? binomial(n, k - 1) : 0;
    return static_cast<int>(hi - lo);
}

double clebsch_gordan(int two_j, int two_m, int two_ms, int two_J, int two_M) {
    if (two_j < 0 || two_J < 0) return 0.0;
    if (two_ms != 1 && two_ms != -1) return 0.0;
    if (two_M != two_m + two_ms) return 0.0;
    if (std::abs(two_m) > two_j || std::abs(two_M) > two_J) return 0.0;
    if ((two_j - two_m) % 2 != 0 || (two_J - two_M) % 2 != 0) return 0.0;
    const double denom = 2.0 * (two_j + 1);
    const double plus = std::sqrt((two_j + two_M + 1) / denom);
    const double minus = std::sqrt((two_j - two_M + 1) / denom);
    if (two_J == two_j + 1) return two_ms > 0 ? plus : minus;
    if (two_J == two_j - 1) return two_ms > 0 ? -minus : plus;
    return 0.0;
}

// ---------------------------------------------------------------------------

YamanouchiSymbol::YamanouchiSymbol(std::string rows) : rows_(std::move(rows)) {
    if (!is_valid(rows_)) throw InvalidArgument("invalid Yamanouchi symbol '" + rows_ + "'");
}

bool YamanouchiSymbol::is_valid(const std::string& rows) {
    if (rows.empty()) return false;
    int zeros = 0, ones = 0;
    for (char c : rows) {
        if (c == '0') ++zeros;
        else if (c == '1') ++ones;
        else return false;
        if (ones > zeros) return false;
    }
    return true;
}

YamanouchiSymbol YamanouchiSymbol::from_coupling_path(const std::vector<int>& two_j) {
    if (two_j.empty() || two_j[0] != 1) throw InvalidArgument("coupling path must start at j = 1/2");
    std::string rows = "0";
    for (std::size_t k = 1; k < two_j.size(); ++k) {
        const int d = two_j[k] - two_j[k - 1];
        if (d == 1) rows += '0';
        else if (d == -1 && two_j[k] >= 0) rows += '1';
        else throw InvalidArgument("coupling path steps must be +-1/2 and stay nonnegative");
    }
    return YamanouchiSymbol(rows);
}

int YamanouchiSymbol::ones() const {
    return static_cast<int>(std::count(rows_.begin(), rows_.end(), '1'));
}

int YamanouchiSymbol::column(int t) const {
    const char r = rows_.at(t);
    return static_cast<int>(std::count(rows_.begin(), rows_.begin() + t, r));
}

int YamanouchiSymbol::content(int t) const { return column(t) - row(t); }

std::vector<int> YamanouchiSymbol::coupling_path() const {
    std::vector<int> out(rows_.size());
    int ones = 0;
    for (std::size_t k = 0; k < rows_.size(); ++k) {
        if (rows_[k] == '1') ++ones;
        out[k] = static_cast<int>(k + 1) - 2 * ones;
    }
    return out;
}

std::vector<YamanouchiSymbol> yamanouchi_symbols(int n, int two_j) {
    check_two_j(n, two_j);
    const int k = (n - two_j) / 2;
    std::vector<YamanouchiSymbol> out;
    if (n > kMaxQubits) throw CapExceeded("too many qubits for symbol enumeration");
    // Strings come out of enumerate_fixed_weight in lexicographic order.
    for (std::uint64_t bits : enumerate_fixed_weight(n, k)) {
        std::string s = bits_to_string(bits, n);
        if (YamanouchiSymbol::is_valid(s)) out.emplace_back(std::move(s));
    }
    return out;
}

MultiSectorState schur_vector(const YamanouchiSymbol& y, int two_m) {
    const int n = y.n();
    const int two_J = y.two_j();
    if (std::abs(two_m) > two_J || (two_J - two_m) % 2 != 0)
        throw InvalidArgument("M = " + std::to_string(two_m) + "/2 is outside the irrep");
    const auto path = y.coupling_path();
    const int weight = (n - two_m) / 2;
    MultiSectorState out(n);
    SectorState& sec = out.sector(weight);
    const auto& strings = sec.index().strings;
    auto& amps = sec.amplitudes();
    for (std::size_t r = 0; r < strings.size(); ++r) {
        const std::uint64_t bits = strings[r];
        double amp = 1.0;
        int two_j_prev = 0, two_m_prev = 0;
        for (int k = 0; k < n && amp != 0.0; ++k) {
            const bool one = (bits >> (n - 1 - k)) & 1u;
            const int two_ms = one ? -1 : 1;
            const int two_mk = two_m_prev + two_ms;
            amp *= clebsch_gordan(two_j_prev, two_m_prev, two_ms, path[k], two_mk);
            two_j_prev = path[k];
            two_m_prev = two_mk;
        }
        amps[r] = amp;
    }
    return out;
}

MultiSectorState schur_vector(const std::vector<int>& coupling_path, int two_m) {
    return schur_vector(YamanouchiSymbol::from_coupling_path(coupling_path), two_m);
}

double sector_overlap(const BasisState& x, int two_j) {
    const int n = x.n();
    check_two_j(n, two_j);
    const int two_M = n - 2 * x.weight();
    if (two_j < std::abs(two_M)) return 0.0;
    return static_cast<double>(irrep_dim(n, two_j)) / static_cast<double>(binomial(n, x.weight()));
}

// ---------------------------------------------------------------------------

int IrrepBlock::index_of(const YamanouchiSymbol& y) const {
    auto it = index.find(y.rows());
    if (it == index.end()) throw InvalidArgument("symbol " + y.rows() + " is not in this irrep");
    return it->second;
}

Eigen::MatrixXd IrrepBlock::transposition(int i, int j) const {
    if (i > j) std::swap(i, j);
    if (i < 0 || j >= n || i == j) throw IndexOutOfRange("bad transposition qubits");
    if (j == i + 1) return adjacent[i];
    // (i j) = (j-1 j)(i j-1)(j-1 j)
    const Eigen::MatrixXd inner = transposition(i, j - 1);
    return adjacent[j - 1] * inner * adjacent[j - 1];
}

const IrrepBlock& IrrepMatrixSet::block(int two_j) const {
    auto it = blocks.find(two_j);
    if (it == blocks.end())
        throw InvalidArgument("J = " + std::to_string(two_j) + "/2 is not allowed for n = " +
                              std::to_string(n));
    return it->second;
}

namespace {

int g_yof_cap = 12;
std::mutex g_yof_mutex;
std::map<int, std::unique_ptr<IrrepMatrixSet>> g_yof_cache;

IrrepBlock build_block(int n, int two_j) {
    IrrepBlock b;
    b.n = n;
    b.two_j = two_j;
    b.basis = yamanouchi_symbols(n, two_j);
    for (int a = 0; a < b.dim(); ++a) b.index.emplace(b.basis[a].rows(), a);
    for (int t = 0; t + 1 < n; ++t) {
        Eigen::MatrixXd e = Eigen::MatrixXd::Zero(b.dim(), b.dim());
        for (int a = 0; a < b.dim(); ++a) {
            const auto& y = b.basis[a];
            const double r = y.content(t + 1) - y.content(t);
            e(a, a) = 1.0 / r;
            if (y.row(t) == y.row(t + 1)) continue;
            std::string s = y.rows();
            std::swap(s[t], s[t + 1]);
            if (!YamanouchiSymbol::is_valid(s)) continue;
            e(b.index.at(s), a) = std::sqrt(1.0 - 1.0 / (r * r));
        }
        b.adjacent.push_back(std::move(e));
    }
    return b;
}

}  // namespace

int yof_cap() {
    std::lock_guard<std::mutex> lock(g_yof_mutex);
    return g_yof_cap;
}

void set_yof_cap(int cap) {
    std::lock_guard<std::mutex> lock(g_yof_mutex);
    g_yof_cap = cap;
}

const IrrepMatrixSet& young_orthogonal_form(int n) {
    std::lock_guard<std::mutex> lock(g_yof_mutex);
    if (n < 1) throw InvalidArgument("n must be positive");
    if (n > g_yof_cap)
        throw CapExceeded("Young orthogonal form requested for n = " + std::to_string(n) +
                          " above the cap " + std::to_string(g_yof_cap));
    auto& slot = g_yof_cache[n];
    if (!slot) {
        auto set = std::make_unique<IrrepMatrixSet>();
        set->n = n;
        for (int two_j : allowed_two_j(n)) set->blocks.emplace(two_j, build_block(n, two_j));
        slot = std::move(set);
    }
    return *slot;
}

Eigen::MatrixXd yjm_element(int i, const IrrepMatrixSet& rep, int two_j) {
    const IrrepBlock& b = rep.block(two_j);
    if (i < 0 || i >= rep.n) throw IndexOutOfRange("YJM index out of range");
    // X_{k+1} = E_{k,k+1} X_k E_{k,k+1} + E_{k,k+1}
    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(b.dim(), b.dim());
    for (int k = 0; k < i; ++k) {
        const Eigen::MatrixXd& e = b.adjacent[k];
        x = e * x * e + e;
    }
    return x;
}

}  // namespace xqp
