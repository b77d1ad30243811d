#include "clude/stats.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "clude/errors.hpp"

namespace clude {

Summary summarize(std::span<const double> values) {
    if (values.size() < 2)
        throw ConfigError("summarize: needs at least two values");
    const double n = static_cast<double>(values.size());
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    double ss = 0.0;
    for (const double v : values)
        ss += (v - mean) * (v - mean);
    return Summary{mean, std::sqrt(ss / (n - 1.0))};
}

char verdict_symbol(Verdict v) {
    switch (v) {
    case Verdict::plus: return '+';
    case Verdict::minus: return '-';
    case Verdict::equal: return '=';
    }
    return '?';
}

int wilcoxon_exact_critical(std::size_t n, double alpha) {
    if (n == 0 || n > 62)
        throw ConfigError("wilcoxon_exact_critical: n must lie in [1, 62]");
    // counts[w] = number of subsets of {1..n} whose ranks sum to w; the null
    // distribution of W+ is counts[w] / 2^n.
    const std::size_t total_rank = n * (n + 1) / 2;
    std::vector<std::uint64_t> counts(total_rank + 1, 0);
    counts[0] = 1;
    for (std::size_t r = 1; r <= n; ++r)
        for (std::size_t w = total_rank; w >= r; --w)
            counts[w] += counts[w - r];

    const long double denom = std::exp2l(static_cast<long double>(n));
    const long double tail = static_cast<long double>(alpha) / 2.0L;
    long double cum = 0.0L;
    int critical = -1;
    for (std::size_t w = 0; w <= total_rank; ++w) {
        cum += static_cast<long double>(counts[w]) / denom;
        if (cum <= tail)
            critical = static_cast<int>(w);
        else
            break;
    }
    return critical;
}

std::span<const int> wilcoxon_critical_table_5pct() {
    // Two-sided alpha = 0.05, n = 6..25. Generated by
    // wilcoxon_exact_critical; the regeneration test keeps this in sync.
    static constexpr std::array<int, 20> table = {0,  2,  3,  5,  8,  10, 13, 17, 21, 25,
                                                  29, 34, 40, 46, 52, 58, 65, 73, 81, 89};
    return table;
}

namespace {

constexpr std::size_t kExactMax = 25;
constexpr std::size_t kTableMin = 6;

int critical_value(std::size_t n, double alpha) {
    if (alpha == 0.05) {
        if (n < kTableMin)
            return -1;
        return wilcoxon_critical_table_5pct()[n - kTableMin];
    }
    return wilcoxon_exact_critical(n, alpha);
}

double standard_normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

} // namespace

WilcoxonResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b,
                                    double alpha) {
    if (a.size() != b.size())
        throw ConfigError("wilcoxon_signed_rank: samples differ in length");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw ConfigError("wilcoxon_signed_rank: alpha must lie in (0, 1)");

    std::vector<double> diffs;
    diffs.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        if (d != 0.0)
            diffs.push_back(d);
    }

    WilcoxonResult res;
    res.n_effective = diffs.size();
    if (diffs.empty())
        return res; // all-zero differences: no information, verdict equal

    // Rank |d| ascending with average ranks for ties.
    const std::size_t n = diffs.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return std::fabs(diffs[i]) < std::fabs(diffs[j]);
    });
    std::vector<double> ranks(n, 0.0);
    double tie_correction = 0.0; // sum of t^3 - t over tie groups
    for (std::size_t lo = 0; lo < n;) {
        std::size_t hi = lo + 1;
        while (hi < n && std::fabs(diffs[order[hi]]) == std::fabs(diffs[order[lo]]))
            ++hi;
        const double avg_rank = (static_cast<double>(lo + 1) + static_cast<double>(hi)) / 2.0;
        for (std::size_t p = lo; p < hi; ++p)
            ranks[order[p]] = avg_rank;
        const double t = static_cast<double>(hi - lo);
        tie_correction += t * t * t - t;
        lo = hi;
    }

    for (std::size_t i = 0; i < n; ++i) {
        if (diffs[i] > 0.0)
            res.w_plus += ranks[i];
        else
            res.w_minus += ranks[i];
    }
    res.w_statistic = std::min(res.w_plus, res.w_minus);

    bool significant = false;
    if (n <= kExactMax) {
        const int critical = critical_value(n, alpha);
        res.exact = true;
        res.threshold_or_p = critical;
        significant = critical >= 0 && res.w_statistic <= static_cast<double>(critical);
    } else {
        const double dn = static_cast<double>(n);
        const double mu = dn * (dn + 1.0) / 4.0;
        const double var = dn * (dn + 1.0) * (2.0 * dn + 1.0) / 24.0 - tie_correction / 48.0;
        const double z = (res.w_statistic - mu + 0.5) / std::sqrt(var);
        const double p = std::min(1.0, 2.0 * standard_normal_cdf(z));
        res.exact = false;
        res.threshold_or_p = p;
        significant = p <= alpha;
    }

    if (!significant)
        res.verdict = Verdict::equal;
    else
        res.verdict = res.w_minus < res.w_plus ? Verdict::plus : Verdict::minus;
    return res;
}

WtlTally wtl_tally(std::span<const Verdict> verdicts) {
    WtlTally tally;
    for (const Verdict v : verdicts) {
        switch (v) {
        case Verdict::plus: tally.wins += 1; break;
        case Verdict::equal: tally.ties += 1; break;
        case Verdict::minus: tally.losses += 1; break;
        }
    }
    return tally;
}

} // namespace clude
