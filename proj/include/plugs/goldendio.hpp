#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

// Exact arithmetic in Z[tau], tau the golden ratio (tau^2 = tau + 1), and
// the Diophantine surveys built on it: Fibonacci distance identities, gap
// bounds for the sets Z(a,b), sum-ratio inequalities and the between
// search.  All order decisions are exact integer comparisons; floating
// point appears only as a first guess that is then verified.

namespace plugs::goldendio {

struct overflow_error : std::overflow_error {
    using std::overflow_error::overflow_error;
};

// a + b*tau with 64-bit coefficients; intermediates use 128-bit.
class GoldenNumber {
  public:
    GoldenNumber() : a_(0), b_(0) {}
    GoldenNumber(std::int64_t a, std::int64_t b);

    std::int64_t a() const { return a_; }
    std::int64_t b() const { return b_; }

    GoldenNumber operator+(const GoldenNumber& o) const;
    GoldenNumber operator-(const GoldenNumber& o) const;
    GoldenNumber operator-() const;
    GoldenNumber operator*(const GoldenNumber& o) const;

    int sign() const;  // exact: -1, 0, +1
    bool operator==(const GoldenNumber& o) const { return a_ == o.a_ && b_ == o.b_; }
    bool operator<(const GoldenNumber& o) const { return (*this - o).sign() < 0; }
    bool operator<=(const GoldenNumber& o) const { return (*this - o).sign() <= 0; }
    bool operator>(const GoldenNumber& o) const { return (*this - o).sign() > 0; }
    bool operator>=(const GoldenNumber& o) const { return (*this - o).sign() >= 0; }

    double to_double() const;
    std::string str() const;

    static GoldenNumber tau() { return {0, 1}; }
    // tau^{-n} = (-1)^n (F_n - F_{n-1} tau), exact, n >= 0.
    static GoldenNumber tau_pow_neg(int n);

  private:
    std::int64_t a_, b_;
};

// Fibonacci numbers with F_0 = F_1 = 1 (so F_n here is the standard Fib(n+1)).
std::int64_t fibonacci(int n);  // n <= 89

// Element of R/tauZ represented by its unique representative in [0, tau).
class CircleTau {
  public:
    CircleTau() = default;
    explicit CircleTau(const GoldenNumber& g);  // reduces mod tau
    const GoldenNumber& value() const { return v_; }
    bool operator==(const CircleTau& o) const { return v_ == o.v_; }

  private:
    GoldenNumber v_;
};

// Exact floor of (a + b*tau) / tau.
std::int64_t floor_div_tau(const GoldenNumber& g);

CircleTau mod_tau(std::int64_t n);

// d(x, y): shorter arc length on R/tauZ, exact.
GoldenNumber circle_distance(const CircleTau& x, const CircleTau& y);

// Membership of x in the open oriented arc (a, b) (traversed from a to b in
// the positive direction).
bool in_arc(const CircleTau& x, const CircleTau& a, const CircleTau& b);

struct FibDistanceResult {
    bool ok;    // d(F_n mod tau, 0) == tau^{-n}, checked exactly
    int side;   // +1 residue near 0 from above, -1 from below
};
FibDistanceResult fib_distance_check(int n);

// Brute force: F_n strictly minimizes d(p mod tau, 0) over 0 < p < F_n.
bool fib_optimal_check(int n);

// All n in [-N, N] with n mod tau in the open oriented arc (a, b), ascending.
std::vector<std::int64_t> enum_Z(const CircleTau& a, const CircleTau& b, std::int64_t N);

struct GapSurveyResult {
    double max_ratio = 0.0;
    std::size_t witness_arc = 0;
    std::size_t skipped = 0;  // arcs with fewer than two elements in range
};
GapSurveyResult gap_ratio_survey(
    const std::vector<std::pair<CircleTau, CircleTau>>& arcs, std::int64_t N);

struct SumRatio352 {
    double lhs;        // sum 1/|n|^3
    double rhs;        // (sum 1/|n|^5) / (sum 1/n^2)
    double lhs_w;      // sum w(n-phi)^{3/2}
    double rhs_w;      // (sum w^{5/2}) / (sum w)
};
SumRatio352 sum_ratio_352(const CircleTau& a, const CircleTau& b, std::int64_t N,
                          double phi);

struct BetweenResult {
    std::int64_t n3;
    double ratio;  // |n3| / max(|n1|, |n2|)
};
// Smallest-|n| integer whose residue lies strictly inside the oriented arc
// (n1 mod tau, n2 mod tau); throws search_error if none within [-N, N].
struct search_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
BetweenResult find_between(std::int64_t n1, std::int64_t n2, std::int64_t N);

struct CalibrationReport {
    std::string lemma;
    double constant;
    std::string samples;
    std::string max_witness;
};

}  // namespace plugs::goldendio
