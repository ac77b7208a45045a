#pragma once

// Independent reference computations for tests. Nothing here calls the
// library's Fock operators, elimination or automata code: vectors live on
// the untruncated Fock space as maps from letter sequences to rationals, and
// ranks use plain Gaussian elimination over mpq_class.

#include <gmpxx.h>

#include "ncrat/expr.h"

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <vector>

namespace oracle {

using Letters = std::vector<int>;
using Vec = std::map<Letters, mpq_class>;

// a / b in canonical form; mpq_class(a, b) alone leaves it unreduced.
inline mpq_class q(long a, long b) {
  mpq_class out(a, b);
  out.canonicalize();
  return out;
}

inline void add(Vec& acc, const mpq_class& c, const Vec& x) {
  for (const auto& [w, v] : x) {
    mpq_class& slot = acc[w];
    slot += c * v;
    if (slot == 0) acc.erase(w);
  }
}

inline Vec basis(const Letters& w) { return Vec{{w, mpq_class(1)}}; }

// Left creation / annihilation and semicircular on the full space.
inline Vec l(int i, const Vec& x) {
  Vec out;
  for (const auto& [w, v] : x) {
    Letters u{i};
    u.insert(u.end(), w.begin(), w.end());
    out[u] += v;
  }
  return out;
}

inline Vec l_star(int i, const Vec& x) {
  Vec out;
  for (const auto& [w, v] : x) {
    if (!w.empty() && w.front() == i) add(out, v, basis(Letters(w.begin() + 1, w.end())));
  }
  return out;
}

inline Vec r(int i, const Vec& x) {
  Vec out;
  for (const auto& [w, v] : x) {
    Letters u = w;
    u.push_back(i);
    out[u] += v;
  }
  return out;
}

inline Vec r_star(int i, const Vec& x) {
  Vec out;
  for (const auto& [w, v] : x) {
    if (!w.empty() && w.back() == i) add(out, v, basis(Letters(w.begin(), w.end() - 1)));
  }
  return out;
}

inline Vec s(int i, const Vec& x) {
  Vec out = l(i, x);
  add(out, 1, l_star(i, x));
  return out;
}

// U_n(s_i) x by the three-term recursion.
inline Vec chebyshev_power(int i, int n, const Vec& x) {
  Vec prev;      // U_{-1} x = 0
  Vec cur = x;   // U_0 x = x
  for (int k = 0; k < n; ++k) {
    Vec next = s(i, cur);
    add(next, -1, prev);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

// U_v x = U_{k_1}(s_{i_1}) ... U_{k_n}(s_{i_n}) x over the runs of v.
inline Vec chebyshev(const Letters& v, const Vec& x) {
  std::vector<std::pair<int, int>> runs;
  for (int a : v) {
    if (!runs.empty() && runs.back().first == a) {
      ++runs.back().second;
    } else {
      runs.emplace_back(a, 1);
    }
  }
  Vec out = x;
  for (auto it = runs.rbegin(); it != runs.rend(); ++it) {
    out = chebyshev_power(it->first, it->second, out);
  }
  return out;
}

// Inverse-free expression applied to x on the untruncated space.
inline Vec evaluate(const ncrat::RationalExpr& e, const Vec& x) {
  using K = ncrat::RationalExpr::Kind;
  switch (e.kind()) {
    case K::kConstant: {
      Vec out;
      add(out, e.value(), x);
      return out;
    }
    case K::kGenerator:
      return s(e.letter(), x);
    case K::kSum: {
      Vec out;
      for (const auto& c : e.children()) add(out, 1, evaluate(c, x));
      return out;
    }
    case K::kProduct: {
      Vec out = x;
      for (auto it = e.children().rbegin(); it != e.children().rend(); ++it) {
        out = evaluate(*it, out);
      }
      return out;
    }
    case K::kNegation: {
      Vec out;
      add(out, -1, evaluate(e.children().front(), x));
      return out;
    }
    default:
      throw std::logic_error("inverse in apply");
  }
}

inline Vec truncate(const Vec& x, int n) {
  Vec out;
  for (const auto& [w, v] : x) {
    if (static_cast<int>(w.size()) <= n) out.emplace(w, v);
  }
  return out;
}

// All letter sequences of length <= n over 1..d, shortest first.
inline std::vector<Letters> words(int d, int n) {
  std::vector<Letters> out{Letters{}};
  std::size_t begin = 0;
  for (int len = 1; len <= n; ++len) {
    const std::size_t end = out.size();
    for (std::size_t k = begin; k < end; ++k) {
      for (int a = 1; a <= d; ++a) {
        Letters w = out[k];
        w.push_back(a);
        out.push_back(w);
      }
    }
    begin = end;
  }
  return out;
}

// Rank by textbook elimination with rational pivots.
inline std::size_t rank(std::vector<std::vector<mpq_class>> rows) {
  std::size_t rk = 0;
  if (rows.empty()) return 0;
  const std::size_t cols = rows[0].size();
  for (std::size_t c = 0; c < cols && rk < rows.size(); ++c) {
    std::size_t p = rk;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rk]);
    for (std::size_t q = 0; q < rows.size(); ++q) {
      if (q == rk || rows[q][c] == 0) continue;
      const mpq_class f = rows[q][c] / rows[rk][c];
      for (std::size_t k = c; k < cols; ++k) rows[q][k] -= f * rows[rk][k];
    }
    ++rk;
  }
  return rk;
}

// Rank of a family of sparse vectors.
inline std::size_t rank(const std::vector<Vec>& vectors) {
  std::map<Letters, std::size_t> index;
  for (const Vec& x : vectors) {
    for (const auto& [w, v] : x) index.emplace(w, index.size());
  }
  std::vector<std::vector<mpq_class>> rows;
  for (const Vec& x : vectors) {
    std::vector<mpq_class> row(index.size());
    for (const auto& [w, v] : x) row[index.at(w)] = v;
    rows.push_back(std::move(row));
  }
  return rank(std::move(rows));
}

inline mpq_class factorial_inverse(int n) {
  mpz_class f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return mpq_class(mpz_class(1), f);
}

// Uniform integer in [lo, hi].
inline int uniform(std::mt19937& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

}  // namespace oracle
