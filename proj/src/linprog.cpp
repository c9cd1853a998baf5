#include "nsg/linprog.hpp"

namespace nsg::linprog {

namespace {

__int128 checked_add(__int128 a, __int128 b) {
  __int128 out;
  if (__builtin_add_overflow(a, b, &out)) throw SolverError("rational overflow (add)");
  return out;
}

__int128 checked_mul(__int128 a, __int128 b) {
  __int128 out;
  if (__builtin_mul_overflow(a, b, &out)) throw SolverError("rational overflow (mul)");
  return out;
}

__int128 checked_neg(__int128 a) {
  __int128 out;
  if (__builtin_sub_overflow(static_cast<__int128>(0), a, &out)) throw SolverError("rational overflow (neg)");
  return out;
}

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = checked_neg(a);
  if (b < 0) b = checked_neg(b);
  while (b != 0) {
    const __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace

Rat Rat::make(__int128 n, __int128 d) {
  if (d == 0) throw SolverError("rational division by zero");
  if (d < 0) {
    n = checked_neg(n);
    d = checked_neg(d);
  }
  const __int128 g = gcd128(n, d);
  Rat r;
  r.num_ = g == 0 ? 0 : n / g;
  r.den_ = g == 0 ? 1 : d / g;
  return r;
}

Rat::Rat(long long n, long long d) { *this = make(n, d); }

Rat Rat::operator+(const Rat& o) const {
  return make(checked_add(checked_mul(num_, o.den_), checked_mul(o.num_, den_)), checked_mul(den_, o.den_));
}

Rat Rat::operator-(const Rat& o) const { return *this + (-o); }

Rat Rat::operator*(const Rat& o) const { return make(checked_mul(num_, o.num_), checked_mul(den_, o.den_)); }

Rat Rat::operator/(const Rat& o) const {
  if (o.num_ == 0) throw SolverError("rational division by zero");
  return make(checked_mul(num_, o.den_), checked_mul(den_, o.num_));
}

Rat Rat::operator-() const {
  Rat r;
  r.num_ = checked_neg(num_);
  r.den_ = den_;
  return r;
}

int Rat::cmp(const Rat& o) const {
  const __int128 lhs = checked_mul(num_, o.den_);
  const __int128 rhs = checked_mul(o.num_, den_);
  return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

double Rat::to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

std::string Rat::to_string() const {
  auto i128_to_string = [](__int128 v) {
    if (v == 0) return std::string("0");
    const bool neg = v < 0;
    unsigned __int128 u = static_cast<unsigned __int128>(v);
    if (neg) u = ~u + 1;
    std::string digits;
    while (u != 0) {
      digits.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
      u /= 10;
    }
    if (neg) digits.push_back('-');
    return std::string(digits.rbegin(), digits.rend());
  };
  std::string out = i128_to_string(num_);
  if (den_ != 1) out += "/" + i128_to_string(den_);
  return out;
}

Solution maximize(const std::vector<std::vector<Rat>>& A, const std::vector<Rat>& b, const std::vector<Rat>& c) {
  const std::size_t m = A.size();
  const std::size_t n = c.size();
  if (b.size() != m) throw SolverError("rhs size mismatch");
  for (const auto& row : A)
    if (row.size() != n) throw SolverError("constraint row size mismatch");
  for (const auto& v : b)
    if (v.sign() < 0) throw SolverError("negative rhs; slack start requires b >= 0");

  // Tableau: columns 0..n-1 structural, n..n+m-1 slack; rhs kept separately.
  std::vector<std::vector<Rat>> tab(m, std::vector<Rat>(n + m));
  std::vector<Rat> rhs = b;
  std::vector<Rat> cost(n + m);
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) tab[i][j] = A[i][j];
    tab[i][n + i] = Rat(1);
    basis[i] = n + i;
  }
  for (std::size_t j = 0; j < n; ++j) cost[j] = c[j];
  Rat objective;

  const std::size_t max_pivots = 8192;  // Bland's rule terminates long before this
  for (std::size_t pivots = 0;; ++pivots) {
    if (pivots > max_pivots) throw SolverError("simplex failed to terminate");

    // Bland: entering column = lowest index with positive reduced cost.
    std::size_t enter = n + m;
    for (std::size_t j = 0; j < n + m; ++j) {
      if (cost[j].sign() > 0) {
        enter = j;
        break;
      }
    }
    if (enter == n + m) break;  // optimal

    // Ratio test; ties broken by smallest basic variable index (Bland).
    std::size_t leave = m;
    Rat best_ratio;
    for (std::size_t i = 0; i < m; ++i) {
      if (tab[i][enter].sign() <= 0) continue;
      const Rat ratio = rhs[i] / tab[i][enter];
      if (leave == m || ratio < best_ratio || (ratio == best_ratio && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave == m) throw SolverError("unbounded tableau");

    // Pivot on (leave, enter).
    const Rat piv = tab[leave][enter];
    for (auto& v : tab[leave]) v = v / piv;
    rhs[leave] = rhs[leave] / piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || tab[i][enter].sign() == 0) continue;
      const Rat f = tab[i][enter];
      for (std::size_t j = 0; j < n + m; ++j) tab[i][j] = tab[i][j] - f * tab[leave][j];
      rhs[i] = rhs[i] - f * rhs[leave];
    }
    const Rat fc = cost[enter];
    if (fc.sign() != 0) {
      for (std::size_t j = 0; j < n + m; ++j) cost[j] = cost[j] - fc * tab[leave][j];
      objective = objective + fc * rhs[leave];
    }
    basis[leave] = enter;
  }

  Solution sol;
  sol.objective = objective;
  sol.x.assign(n, Rat(0));
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < n) sol.x[basis[i]] = rhs[i];
  return sol;
}

}  // namespace nsg::linprog
