#pragma once
// Slow, obviously-correct reference implementations used only by tests.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <vector>

namespace oracle {

// All strictly decreasing sequences of positive ints <= max_part summing to m
// with at most max_size parts, found by plain recursion.
inline std::set<std::vector<int>> distinct_partitions(int m, int max_size, int max_part) {
    std::set<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int remaining, int below) {
        if (remaining == 0) {
            out.insert(cur);
            return;
        }
        if (static_cast<int>(cur.size()) == max_size) return;
        for (int v = std::min(below - 1, remaining); v >= 1; --v) {
            cur.push_back(v);
            rec(remaining - v, v);
            cur.pop_back();
        }
    };
    rec(m, max_part + 1);
    return out;
}

// Schoolbook y = H x over GF(2) on plain 0/1 vectors.
inline std::vector<int> mat_vec(const std::vector<std::vector<int>>& h, const std::vector<int>& x) {
    std::vector<int> y(h.size(), 0);
    for (std::size_t r = 0; r < h.size(); ++r) {
        for (std::size_t c = 0; c < x.size(); ++c) y[r] ^= h[r][c] & x[c];
    }
    return y;
}

// Remainder of msg(x) * x^deg divided by poly(x); msg[0] is the highest power.
inline std::vector<int> crc_remainder(const std::vector<int>& msg, std::uint64_t poly, int deg) {
    std::vector<int> work(msg);
    work.resize(msg.size() + static_cast<std::size_t>(deg), 0);
    for (std::size_t i = 0; i < msg.size(); ++i) {
        if (!work[i]) continue;
        for (int j = 0; j <= deg; ++j) work[i + static_cast<std::size_t>(j)] ^= (poly >> (deg - j)) & 1;
    }
    return std::vector<int>(work.end() - deg, work.end());
}

// F^{(x) m} for F = [[1,0],[1,1]] by repeated Kronecker products.
inline std::vector<std::vector<int>> kron_power(int m) {
    std::vector<std::vector<int>> f{{1}};
    for (int step = 0; step < m; ++step) {
        const std::size_t s = f.size();
        std::vector<std::vector<int>> g(2 * s, std::vector<int>(2 * s, 0));
        for (std::size_t r = 0; r < s; ++r) {
            for (std::size_t c = 0; c < s; ++c) {
                g[r][c] = f[r][c];
                g[s + r][c] = f[r][c];
                g[s + r][s + c] = f[r][c];
            }
        }
        f = std::move(g);
    }
    return f;
}

}  // namespace oracle
