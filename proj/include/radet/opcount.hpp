#pragma once

/**
 * @file opcount.hpp
 * @brief Coarse operation-class counters for detector cost reporting.
 *
 * Three classes: data comparisons (max/min scans, truncation tests, threshold
 * decisions), multiply-accumulates (all other arithmetic on cell values —
 * adds, multiplies, divides, transcendental evaluations), and sort operations
 * (comparator invocations inside an ordering primitive). Counting is a
 * compile-time policy so the uncounted path costs nothing.
 */

namespace radet {

struct OpCounters {
  unsigned long long comparisons = 0;
  unsigned long long multiply_accumulates = 0;
  unsigned long long sort_ops = 0;

  OpCounters& operator+=(const OpCounters& o) {
    comparisons += o.comparisons;
    multiply_accumulates += o.multiply_accumulates;
    sort_ops += o.sort_ops;
    return *this;
  }
};

/// No-op tally for the production path; every call inlines away.
struct NoTally {
  void cmp(unsigned long long = 1) {}
  void mac(unsigned long long = 1) {}
  void sort(unsigned long long = 1) {}
};

/// Accumulating tally for instrumented runs.
struct Tally {
  OpCounters counts;
  void cmp(unsigned long long n = 1) { counts.comparisons += n; }
  void mac(unsigned long long n = 1) { counts.multiply_accumulates += n; }
  void sort(unsigned long long n = 1) { counts.sort_ops += n; }
};

}  // namespace radet
