#pragma once

// Shared generators and independent checks for the test suites.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "dicmine/bitcore.hpp"
#include "dicmine/dic.hpp"

namespace testsupport {

using dicmine::BitDatabase;
using dicmine::Mask64;

// Random database with n transactions over m items; each item present with
// probability `density`.
inline BitDatabase random_db(std::mt19937_64& rng, std::size_t n, unsigned m, double density) {
  std::bernoulli_distribution bit(density);
  std::vector<Mask64> masks(n);
  for (auto& t : masks) {
    for (unsigned p = 0; p < m; ++p) {
      if (bit(rng)) t |= Mask64{1} << p;
    }
  }
  return BitDatabase(std::move(masks), m);
}

// One random oracle-corpus case: n in [1, 512], m in [1, 16], density in
// [0.05, 0.6].
struct Case {
  BitDatabase db;
  double density;
};

inline Case random_case(std::mt19937_64& rng, std::size_t max_n = 512, unsigned max_m = 16) {
  std::uniform_int_distribution<std::size_t> n_dist(1, max_n);
  std::uniform_int_distribution<unsigned> m_dist(1, max_m);
  std::uniform_real_distribution<double> d_dist(0.05, 0.6);
  const std::size_t n = n_dist(rng);
  const unsigned m = m_dist(rng);
  const double density = d_dist(rng);
  return Case{random_db(rng, n, m, density), density};
}

// Containment count by the definition: items of I are a subset of items of T.
inline std::uint64_t naive_support(const BitDatabase& db, Mask64 itemset) {
  std::uint64_t count = 0;
  for (Mask64 t : db.masks()) {
    bool all = true;
    for (unsigned p = 0; p < 64; ++p) {
      if ((itemset >> p & 1) && !(t >> p & 1)) all = false;
    }
    count += all ? 1 : 0;
  }
  return count;
}

inline std::map<Mask64, std::uint64_t> as_map(const std::vector<dicmine::FrequentItemset>& f) {
  std::map<Mask64, std::uint64_t> out;
  for (const auto& i : f) out[i.mask] = i.support;
  return out;
}

// Records every lifecycle transition and checks legality and per-itemset
// continuity (each `from` equals the previous `to`).
struct LifecycleAudit {
  std::map<Mask64, dicmine::Shape> last;
  std::size_t transitions = 0;
  std::size_t illegal = 0;
  std::vector<std::string> problems;

  dicmine::TransitionObserver observer() {
    return [this](const dicmine::Transition& t) {
      ++transitions;
      const auto it = last.find(t.mask);
      const dicmine::Shape expected_from =
          it == last.end() ? dicmine::Shape::DashedCircle : it->second;
      if (!dicmine::is_legal_transition(t.from, t.to) || t.from != expected_from) {
        ++illegal;
        problems.push_back(std::string(dicmine::shape_name(t.from)) + "->" +
                           std::string(dicmine::shape_name(t.to)));
      }
      last[t.mask] = t.to;
    };
  }
};

// Every nonempty subset of every reported itemset is reported with support
// at least as large. Returns the number of violations.
inline std::size_t closure_violations(const std::vector<dicmine::FrequentItemset>& frequent) {
  const auto found = as_map(frequent);
  std::size_t bad = 0;
  for (const auto& f : frequent) {
    for (Mask64 s = (f.mask - 1) & f.mask; s != 0; s = (s - 1) & f.mask) {
      const auto it = found.find(s);
      if (it == found.end() || it->second < f.support) ++bad;
    }
  }
  return bad;
}

}  // namespace testsupport
