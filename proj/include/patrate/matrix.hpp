// Dense square matrices over doubles plus the digraph utilities needed for
// non-negative matrix analysis (reachability, cycle detection, period).
// Dimensions here are small (automaton state counts), so everything is
// straightforward row-major storage and O(m^2)/O(m^3) loops.

#pragma once

#include <cassert>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <queue>
#include <vector>

namespace patrate {

using Vec = std::vector<double>;

class Matrix {
public:
    Matrix() = default;

    explicit Matrix(std::size_t dim, double fill = 0.0) : dim_(dim), a_(dim * dim, fill) {}

    Matrix(std::initializer_list<std::initializer_list<double>> rows) : dim_(rows.size()) {
        a_.reserve(dim_ * dim_);
        for (const auto& r : rows) {
            assert(r.size() == dim_);
            a_.insert(a_.end(), r.begin(), r.end());
        }
    }

    std::size_t dim() const { return dim_; }

    double& operator()(std::size_t i, std::size_t j) { return a_[i * dim_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * dim_ + j]; }

    const std::vector<double>& values() const { return a_; }

    bool is_zero() const {
        for (double x : a_)
            if (x != 0.0) return false;
        return true;
    }

private:
    std::size_t dim_ = 0;
    std::vector<double> a_;
};

inline Matrix operator+(const Matrix& x, const Matrix& y) {
    assert(x.dim() == y.dim());
    Matrix out(x.dim());
    for (std::size_t i = 0; i < x.dim(); ++i)
        for (std::size_t j = 0; j < x.dim(); ++j)
            out(i, j) = x(i, j) + y(i, j);
    return out;
}

inline Matrix scaled(const Matrix& x, double c) {
    Matrix out(x.dim());
    for (std::size_t i = 0; i < x.dim(); ++i)
        for (std::size_t j = 0; j < x.dim(); ++j)
            out(i, j) = x(i, j) * c;
    return out;
}

inline Matrix transposed(const Matrix& x) {
    Matrix out(x.dim());
    for (std::size_t i = 0; i < x.dim(); ++i)
        for (std::size_t j = 0; j < x.dim(); ++j)
            out(j, i) = x(i, j);
    return out;
}

// row' * M, result as a row.
inline Vec left_mul(const Vec& row, const Matrix& m) {
    assert(row.size() == m.dim());
    Vec out(m.dim(), 0.0);
    for (std::size_t i = 0; i < m.dim(); ++i) {
        const double r = row[i];
        if (r == 0.0) continue;
        for (std::size_t j = 0; j < m.dim(); ++j)
            out[j] += r * m(i, j);
    }
    return out;
}

// M * col, result as a column.
inline Vec right_mul(const Matrix& m, const Vec& col) {
    assert(col.size() == m.dim());
    Vec out(m.dim(), 0.0);
    for (std::size_t i = 0; i < m.dim(); ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < m.dim(); ++j)
            acc += m(i, j) * col[j];
        out[i] = acc;
    }
    return out;
}

inline double dot(const Vec& a, const Vec& b) {
    assert(a.size() == b.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        acc += a[i] * b[i];
    return acc;
}

inline double sup_norm(const Vec& v) {
    double hi = 0.0;
    for (double x : v) {
        const double a = std::abs(x);
        if (a > hi) hi = a;
    }
    return hi;
}

// Max absolute row sum.
inline double inf_norm(const Matrix& m) {
    double hi = 0.0;
    for (std::size_t i = 0; i < m.dim(); ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < m.dim(); ++j)
            row += std::abs(m(i, j));
        if (row > hi) hi = row;
    }
    return hi;
}

// --- digraph of the nonzero pattern ---------------------------------------

// BFS distances from `from` along edges i -> j where m(i,j) != 0;
// unreachable nodes get SIZE_MAX.
inline std::vector<std::size_t> bfs_distances(const Matrix& m, std::size_t from) {
    constexpr std::size_t unseen = static_cast<std::size_t>(-1);
    std::vector<std::size_t> dist(m.dim(), unseen);
    std::queue<std::size_t> queue;
    dist[from] = 0;
    queue.push(from);
    while (!queue.empty()) {
        const std::size_t u = queue.front();
        queue.pop();
        for (std::size_t v = 0; v < m.dim(); ++v)
            if (m(u, v) != 0.0 && dist[v] == unseen) {
                dist[v] = dist[u] + 1;
                queue.push(v);
            }
    }
    return dist;
}

inline bool strongly_connected(const Matrix& m) {
    if (m.dim() == 0) return false;
    constexpr std::size_t unseen = static_cast<std::size_t>(-1);
    for (std::size_t v : bfs_distances(m, 0))
        if (v == unseen) return false;
    for (std::size_t v : bfs_distances(transposed(m), 0))
        if (v == unseen) return false;
    return true;
}

// True iff the digraph of nonzero entries contains a cycle; for a
// non-negative matrix this is exactly the condition spectral radius > 0.
inline bool has_cycle(const Matrix& m) {
    std::vector<char> color(m.dim(), 0); // 0 unseen, 1 on stack, 2 done
    std::vector<std::pair<std::size_t, std::size_t>> stack; // (node, next edge)
    for (std::size_t s = 0; s < m.dim(); ++s) {
        if (color[s] != 0) continue;
        color[s] = 1;
        stack.assign(1, {s, 0});
        while (!stack.empty()) {
            const std::size_t u = stack.back().first;
            std::size_t j = stack.back().second;
            while (j < m.dim() && (m(u, j) == 0.0 || color[j] == 2)) ++j;
            if (j == m.dim()) {
                color[u] = 2;
                stack.pop_back();
                continue;
            }
            if (color[j] == 1) return true; // back edge
            stack.back().second = j + 1;
            color[j] = 1;
            stack.push_back({j, 0});
        }
    }
    return false;
}

// Period (gcd of all cycle lengths) of a strongly connected digraph.
// Returns 0 when the graph has no edges at all (single node, no loop).
inline std::size_t graph_period(const Matrix& m) {
    const auto dist = bfs_distances(m, 0);
    long long g = 0;
    for (std::size_t u = 0; u < m.dim(); ++u)
        for (std::size_t v = 0; v < m.dim(); ++v)
            if (m(u, v) != 0.0) {
                const long long delta =
                    static_cast<long long>(dist[u]) + 1 - static_cast<long long>(dist[v]);
                g = std::gcd(g, delta);
            }
    return static_cast<std::size_t>(g < 0 ? -g : g);
}

} // namespace patrate
