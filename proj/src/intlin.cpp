#include "intlin.hpp"

#include <numeric>
#include <stdexcept>

#include "epka/common.hpp"

namespace epka::detail {

namespace {

struct Rat {
    std::int64_t num = 0;
    std::int64_t den = 1;

    void reduce() {
        if (den < 0) {
            num = -num;
            den = -den;
        }
        std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        if (num == 0) den = 1;
    }
};

std::int64_t checked(__int128 v) {
    if (v > INT64_MAX || v < INT64_MIN)
        throw Error(ErrorKind::Overflow, "rational arithmetic overflow");
    return static_cast<std::int64_t>(v);
}

Rat make(std::int64_t n, std::int64_t d) {
    Rat r{n, d};
    r.reduce();
    return r;
}

Rat mul(const Rat& a, const Rat& b) {
    return make(checked(__int128(a.num) * b.num), checked(__int128(a.den) * b.den));
}

Rat sub(const Rat& a, const Rat& b) {
    return make(checked(__int128(a.num) * b.den - __int128(b.num) * a.den),
                checked(__int128(a.den) * b.den));
}

Rat div(const Rat& a, const Rat& b) {
    if (b.num == 0) throw std::logic_error("division by zero");
    return make(checked(__int128(a.num) * b.den), checked(__int128(a.den) * b.num));
}

using RatMatrix = std::vector<std::vector<Rat>>;

// Reduced row echelon form; returns pivot column per pivot row.
std::vector<std::size_t> rref(RatMatrix& m) {
    std::vector<std::size_t> pivots;
    if (m.empty()) return pivots;
    const std::size_t rows = m.size(), cols = m[0].size();
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t sel = row;
        while (sel < rows && m[sel][col].num == 0) ++sel;
        if (sel == rows) continue;
        std::swap(m[sel], m[row]);
        Rat inv_pivot = div(make(1, 1), m[row][col]);
        for (std::size_t j = col; j < cols; ++j) m[row][j] = mul(m[row][j], inv_pivot);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == row || m[i][col].num == 0) continue;
            Rat factor = m[i][col];
            for (std::size_t j = col; j < cols; ++j)
                m[i][j] = sub(m[i][j], mul(factor, m[row][j]));
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

RatMatrix to_rat(const IntMatrix& mat) {
    RatMatrix out(mat.size());
    for (std::size_t i = 0; i < mat.size(); ++i)
        for (auto v : mat[i]) out[i].push_back(make(v, 1));
    return out;
}

}  // namespace

int rank_over_q(const IntMatrix& mat) {
    if (mat.empty()) return 0;
    RatMatrix m = to_rat(mat);
    return static_cast<int>(rref(m).size());
}

std::vector<std::vector<std::int64_t>> kernel_basis(const IntMatrix& mat) {
    std::vector<std::vector<std::int64_t>> out;
    if (mat.empty()) return out;
    const std::size_t cols = mat[0].size();
    RatMatrix m = to_rat(mat);
    std::vector<std::size_t> pivots = rref(m);

    std::vector<bool> is_pivot(cols, false);
    for (auto p : pivots) is_pivot[p] = true;

    for (std::size_t free_col = 0; free_col < cols; ++free_col) {
        if (is_pivot[free_col]) continue;
        std::vector<Rat> v(cols, make(0, 1));
        v[free_col] = make(1, 1);
        for (std::size_t i = 0; i < pivots.size(); ++i)
            v[pivots[i]] = sub(make(0, 1), m[i][free_col]);
        std::int64_t lcm = 1;
        for (const auto& r : v) lcm = checked(__int128(lcm) / std::gcd(lcm, r.den) * r.den);
        std::vector<std::int64_t> z(cols);
        for (std::size_t j = 0; j < cols; ++j)
            z[j] = checked(__int128(v[j].num) * (lcm / v[j].den));
        out.push_back(std::move(z));
    }
    return out;
}

}  // namespace epka::detail
