#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace clude {

/// Arithmetic mean and sample standard deviation (n - 1 denominator).
/// Requires at least two values.
struct Summary {
    double mean = 0.0;
    double stddev = 0.0;
};
Summary summarize(std::span<const double> values);

/// Outcome of a paired comparison. With arguments (DE, Clu-DE): plus means
/// the second sample is significantly lower, minus the opposite, equal that
/// the null hypothesis was not rejected.
enum class Verdict { plus, minus, equal };

char verdict_symbol(Verdict v); // '+', '-', '='

struct WilcoxonResult {
    Verdict verdict = Verdict::equal;
    double w_statistic = 0.0;    // W = min(W+, W-)
    double w_plus = 0.0;
    double w_minus = 0.0;
    std::size_t n_effective = 0; // pairs remaining after zero removal
    bool exact = true;           // exact critical table vs normal approximation
    double threshold_or_p = -1.0; // critical value (exact) or p-value (approx)
};

/// Two-sided Wilcoxon signed-rank test on paired samples.
///
/// Differences a_i - b_i are formed, exact zeros dropped, and |d| ranked
/// with average ranks for ties. For n <= 25 the decision uses exact
/// critical values of the null signed-rank distribution (reject iff
/// W <= critical); beyond that, the normal approximation with continuity
/// and tie corrections. Fewer than six non-zero differences can never be
/// significant at the 5% level and yield `equal`.
WilcoxonResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b,
                                    double alpha = 0.05);

/// Largest integer c with P(W <= c) <= alpha/2 under the null signed-rank
/// distribution for sample size n, computed by the subset-sum recursion
/// over ranks {1..n}; -1 when no rejection region exists. Requires n <= 62.
int wilcoxon_exact_critical(std::size_t n, double alpha);

/// Frozen critical values for alpha = 0.05, n = 6..25, generated once by
/// wilcoxon_exact_critical. The regeneration test compares the two.
std::span<const int> wilcoxon_critical_table_5pct();

/// Wins / ties / losses tally over a list of verdicts.
struct WtlTally {
    std::size_t wins = 0;
    std::size_t ties = 0;
    std::size_t losses = 0;
};
WtlTally wtl_tally(std::span<const Verdict> verdicts);

} // namespace clude
