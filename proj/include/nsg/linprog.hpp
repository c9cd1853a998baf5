#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace nsg::linprog {

// Numerical failure of the feasibility solver, reported distinctly from
// "infeasible": arithmetic overflow of the exact representation or an
// internal inconsistency (an unbounded tableau where the objective is
// provably bounded).
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exact rational over __int128 with overflow-checked arithmetic. Always kept
// normalized: den > 0, gcd(|num|, den) == 1. Overflow throws SolverError
// instead of losing exactness.
class Rat {
 public:
  Rat() : num_(0), den_(1) {}
  Rat(long long n) : num_(n), den_(1) {}  // NOLINT: implicit by design
  Rat(long long n, long long d);

  Rat operator+(const Rat& o) const;
  Rat operator-(const Rat& o) const;
  Rat operator*(const Rat& o) const;
  Rat operator/(const Rat& o) const;
  Rat operator-() const;

  bool operator==(const Rat& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Rat& o) const { return !(*this == o); }
  bool operator<(const Rat& o) const { return cmp(o) < 0; }
  bool operator<=(const Rat& o) const { return cmp(o) <= 0; }
  bool operator>(const Rat& o) const { return cmp(o) > 0; }
  bool operator>=(const Rat& o) const { return cmp(o) >= 0; }

  int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }
  int cmp(const Rat& o) const;
  double to_double() const;
  std::string to_string() const;

 private:
  static Rat make(__int128 n, __int128 d);

  __int128 num_;
  __int128 den_;
};

struct Solution {
  Rat objective;
  std::vector<Rat> x;
};

// Maximize c.x subject to A x <= b, x >= 0, with b >= 0 so the all-slack
// basis is feasible from the start. Dense tableau simplex with Bland's rule
// (the initial vertex is typically degenerate here). Sizes in this project
// are tiny (~25 rows, ~10 structural columns).
Solution maximize(const std::vector<std::vector<Rat>>& A, const std::vector<Rat>& b, const std::vector<Rat>& c);

}  // namespace nsg::linprog
