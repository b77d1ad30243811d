#include "clude/benchmarks.hpp"

#include <cassert>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "clude/errors.hpp"
#include "clude/harness.hpp"

namespace clude {

namespace {

constexpr double kPi = std::numbers::pi;

void require_pairable(std::span<const double> z) {
    if (z.size() < 2)
        throw ConfigError("base functions require dimension >= 2");
}

double rastrigin_term(double v) { return v * v - 10.0 * std::cos(2.0 * kPi * v) + 10.0; }

} // namespace

double bent_cigar(std::span<const double> z) {
    require_pairable(z);
    double f = z[0] * z[0];
    for (std::size_t i = 1; i < z.size(); ++i)
        f += 1e6 * z[i] * z[i];
    return f;
}

double sum_diff_pow(std::span<const double> z) {
    require_pairable(z);
    double f = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i)
        f += std::pow(std::fabs(z[i]), static_cast<double>(i + 1));
    return f;
}

double zakharov(std::span<const double> z) {
    require_pairable(z);
    double sum_sq = 0.0;
    double sum_lin = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        sum_sq += z[i] * z[i];
        sum_lin += 0.5 * static_cast<double>(i + 1) * z[i];
    }
    const double s2 = sum_lin * sum_lin;
    return sum_sq + s2 + s2 * s2;
}

double rosenbrock(std::span<const double> z) {
    require_pairable(z);
    // Internal +1 shift puts the optimum at z = 0.
    double f = 0.0;
    for (std::size_t i = 0; i + 1 < z.size(); ++i) {
        const double a = z[i] + 1.0;
        const double b = z[i + 1] + 1.0;
        const double t1 = a * a - b;
        const double t2 = a - 1.0;
        f += 100.0 * t1 * t1 + t2 * t2;
    }
    return f;
}

double rastrigin(std::span<const double> z) {
    require_pairable(z);
    double f = 0.0;
    for (const double v : z)
        f += rastrigin_term(v);
    return f;
}

double expanded_schaffer_f6(std::span<const double> z) {
    require_pairable(z);
    const auto g = [](double a, double b) {
        const double ss = a * a + b * b;
        const double s = std::sin(std::sqrt(ss));
        const double denom = 1.0 + 0.001 * ss;
        return 0.5 + (s * s - 0.5) / (denom * denom);
    };
    double f = 0.0;
    for (std::size_t i = 0; i + 1 < z.size(); ++i)
        f += g(z[i], z[i + 1]);
    f += g(z[z.size() - 1], z[0]);
    return f;
}

double lunacek_bi_rastrigin(std::span<const double> z) {
    require_pairable(z);
    // Two-funnel Rastrigin, expressed so the deeper funnel sits at z = 0.
    // Editions differ on where rotation and sign flips enter; this follows
    // the standard parameterization (mu0 = 2.5, d = 1) on the composed z.
    const auto dim = static_cast<double>(z.size());
    const double mu0 = 2.5;
    const double d = 1.0;
    const double s = 1.0 - 1.0 / (2.0 * std::sqrt(dim + 20.0) - 8.2);
    const double mu1 = -std::sqrt((mu0 * mu0 - d) / s);
    const double delta = mu1 - mu0; // offset of the shallower funnel

    double sphere0 = 0.0;
    double sphere1 = 0.0;
    double cos_sum = 0.0;
    for (const double v : z) {
        sphere0 += v * v;
        sphere1 += (v - delta) * (v - delta);
        cos_sum += std::cos(2.0 * kPi * v);
    }
    return std::min(sphere0, d * dim + s * sphere1) + 10.0 * (dim - cos_sum);
}

double noncont_rastrigin(std::span<const double> z) {
    require_pairable(z);
    // Coordinates more than 0.5 from the optimum are rounded to the nearest
    // half-integer (round half up), making the landscape piecewise constant
    // away from the center. Some editions apply the rounding before the
    // transform; here it acts on the composed z.
    double f = 0.0;
    for (double v : z) {
        if (std::fabs(v) > 0.5)
            v = std::floor(2.0 * v + 0.5) / 2.0;
        f += rastrigin_term(v);
    }
    return f;
}

double levy(std::span<const double> z) {
    require_pairable(z);
    // w = 1 + z/4 places the optimum at z = 0 (some CEC editions keep the
    // classic w = 1 + (z-1)/4, whose optimum is off the shift point).
    const auto w = [](double v) { return 1.0 + v / 4.0; };
    const double w0 = w(z[0]);
    const double s0 = std::sin(kPi * w0);
    double f = s0 * s0;
    for (std::size_t i = 0; i + 1 < z.size(); ++i) {
        const double wi = w(z[i]);
        const double si = std::sin(kPi * wi + 1.0);
        f += (wi - 1.0) * (wi - 1.0) * (1.0 + 10.0 * si * si);
    }
    const double wl = w(z[z.size() - 1]);
    const double sl = std::sin(2.0 * kPi * wl);
    f += (wl - 1.0) * (wl - 1.0) * (1.0 + sl * sl);
    return f;
}

double schwefel(std::span<const double> z) {
    require_pairable(z);
    // Accumulated per dimension as (anchor - term) with the anchor computed
    // from the same expression, so the value at z = 0 is exactly zero.
    constexpr double opt = 420.9687462275036;
    static const double anchor = opt * std::sin(std::sqrt(opt));
    const auto dim = static_cast<double>(z.size());
    double f = 0.0;
    for (const double zi : z) {
        const double v = zi + opt;
        if (v > 500.0) {
            const double m = 500.0 - std::fmod(v, 500.0);
            const double t = (v - 500.0) / 100.0;
            f += anchor - m * std::sin(std::sqrt(m)) + t * t / dim;
        } else if (v < -500.0) {
            const double m = std::fmod(std::fabs(v), 500.0) - 500.0;
            const double t = (v + 500.0) / 100.0;
            f += anchor - m * std::sin(std::sqrt(-m)) + t * t / dim;
        } else {
            f += anchor - v * std::sin(std::sqrt(std::fabs(v)));
        }
    }
    return f;
}

double evaluate_base(BaseFunction base, std::span<const double> z) {
    switch (base) {
    case BaseFunction::bent_cigar: return bent_cigar(z);
    case BaseFunction::sum_diff_pow: return sum_diff_pow(z);
    case BaseFunction::zakharov: return zakharov(z);
    case BaseFunction::rosenbrock: return rosenbrock(z);
    case BaseFunction::rastrigin: return rastrigin(z);
    case BaseFunction::expanded_schaffer_f6: return expanded_schaffer_f6(z);
    case BaseFunction::lunacek_bi_rastrigin: return lunacek_bi_rastrigin(z);
    case BaseFunction::noncont_rastrigin: return noncont_rastrigin(z);
    case BaseFunction::levy: return levy(z);
    case BaseFunction::schwefel: return schwefel(z);
    }
    throw ConfigError("unknown base function");
}

const std::vector<FunctionInfo>& builtin_functions() {
    static const std::vector<FunctionInfo> table = {
        {"F1", "Shifted and Rotated Bent Cigar", BaseFunction::bent_cigar, 100.0, 1.0, true},
        {"F2", "Shifted and Rotated Sum of Different Power", BaseFunction::sum_diff_pow, 200.0,
         1.0, false},
        {"F3", "Shifted and Rotated Zakharov", BaseFunction::zakharov, 300.0, 1.0, true},
        {"F4", "Shifted and Rotated Rosenbrock", BaseFunction::rosenbrock, 400.0, 2.048 / 100.0,
         false},
        {"F5", "Shifted and Rotated Rastrigin", BaseFunction::rastrigin, 500.0, 5.12 / 100.0,
         true},
        {"F6", "Shifted and Rotated Expanded Schaffer F6", BaseFunction::expanded_schaffer_f6,
         600.0, 1.0, false},
        {"F7", "Shifted and Rotated Lunacek Bi-Rastrigin", BaseFunction::lunacek_bi_rastrigin,
         700.0, 10.0 / 100.0 * 2.0, false},
        {"F8", "Shifted and Rotated Non-Continuous Rastrigin", BaseFunction::noncont_rastrigin,
         800.0, 5.12 / 100.0, true},
        {"F9", "Shifted and Rotated Levy", BaseFunction::levy, 900.0, 1.0, true},
        {"F10", "Shifted and Rotated Schwefel", BaseFunction::schwefel, 1000.0, 1000.0 / 100.0,
         false},
    };
    return table;
}

const FunctionInfo& function_by_id(const std::string& id) {
    for (const FunctionInfo& info : builtin_functions())
        if (info.id == id)
            return info;
    throw ConfigError("unknown benchmark function id: " + id);
}

double rotation_error(std::span<const double> rotation, std::size_t dim) {
    assert(rotation.size() == dim * dim);
    double worst = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            double dot = 0.0; // (R R^T)_{ij} = row_i . row_j
            for (std::size_t l = 0; l < dim; ++l)
                dot += rotation[i * dim + l] * rotation[j * dim + l];
            const double target = i == j ? 1.0 : 0.0;
            worst = std::max(worst, std::fabs(dot - target));
        }
    }
    return worst;
}

BenchmarkFunction::BenchmarkFunction(FunctionInfo info, std::size_t dim, Transform transform)
    : info_(std::move(info)), dim_(dim), transform_(std::move(transform)) {
    if (dim_ < 2)
        throw ConfigError("benchmark functions require dimension >= 2");
    if (transform_.shift.size() != dim_)
        throw ConfigError(info_.id + ": shift length does not match dimension");
    if (transform_.rotation.size() != dim_ * dim_)
        throw ConfigError(info_.id + ": rotation size does not match dimension");
    const double err = rotation_error(transform_.rotation, dim_);
    if (!(err <= 1e-9))
        throw ConfigError(info_.id + ": rotation matrix is not orthogonal (defect " +
                          std::to_string(err) + ")");
}

double BenchmarkFunction::operator()(std::span<const double> x) const {
    if (x.size() != dim_)
        throw ConfigError(info_.id + ": input length does not match dimension");
    std::vector<double> shifted(dim_);
    for (std::size_t j = 0; j < dim_; ++j)
        shifted[j] = (x[j] - transform_.shift[j]) * info_.input_scale;
    std::vector<double> z(dim_, 0.0);
    for (std::size_t i = 0; i < dim_; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < dim_; ++j)
            acc += transform_.rotation[i * dim_ + j] * shifted[j];
        z[i] = acc;
    }
    return evaluate_base(info_.base, z) + info_.bias;
}

namespace {

// Orthonormalizes the rows of a Gaussian matrix with two Gram-Schmidt
// passes; the repeat pass keeps the defect far below the 1e-9 invariant
// even at D = 100.
std::vector<double> random_rotation(std::size_t dim, RngStream& rng) {
    std::vector<double> m(dim * dim);
    for (double& v : m)
        v = rng.normal();
    for (std::size_t i = 0; i < dim; ++i) {
        double* row = &m[i * dim];
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t p = 0; p < i; ++p) {
                const double* prev = &m[p * dim];
                double dot = 0.0;
                for (std::size_t j = 0; j < dim; ++j)
                    dot += row[j] * prev[j];
                for (std::size_t j = 0; j < dim; ++j)
                    row[j] -= dot * prev[j];
            }
        }
        double norm = 0.0;
        for (std::size_t j = 0; j < dim; ++j)
            norm += row[j] * row[j];
        norm = std::sqrt(norm);
        while (norm < 1e-8) { // degenerate draw; refill the row
            for (std::size_t j = 0; j < dim; ++j)
                row[j] = rng.normal();
            norm = 0.0;
            for (std::size_t p = 0; p < i; ++p) {
                const double* prev = &m[p * dim];
                double dot = 0.0;
                for (std::size_t j = 0; j < dim; ++j)
                    dot += row[j] * prev[j];
                for (std::size_t j = 0; j < dim; ++j)
                    row[j] -= dot * prev[j];
            }
            for (std::size_t j = 0; j < dim; ++j)
                norm += row[j] * row[j];
            norm = std::sqrt(norm);
        }
        for (std::size_t j = 0; j < dim; ++j)
            row[j] /= norm;
    }
    return m;
}

} // namespace

TransformSet synth_transforms(std::size_t dim, std::uint64_t seed) {
    if (dim < 2)
        throw ConfigError("synth_transforms: dimension must be >= 2");
    TransformSet set;
    set.dimension = dim;
    set.provenance = "synthetic seed=" + std::to_string(seed);
    for (const FunctionInfo& info : builtin_functions()) {
        RngStream rng(mix_seed(mix_seed(seed, info.id), dim));
        Transform t;
        t.shift.resize(dim);
        for (double& v : t.shift)
            v = rng.uniform(-80.0, 80.0);
        t.rotation = random_rotation(dim, rng);
        set.per_function.push_back(std::move(t));
    }
    return set;
}

Transform load_transform(const std::filesystem::path& path, std::size_t dim) {
    std::ifstream in(path);
    if (!in)
        throw LoadError("cannot open transform file: " + path.string());
    const std::size_t expected = dim + dim * dim;
    std::vector<double> values;
    values.reserve(expected);
    double v;
    while (in >> v) {
        if (!std::isfinite(v))
            throw LoadError(path.string() + ": non-finite value at position " +
                            std::to_string(values.size()));
        values.push_back(v);
        if (values.size() > expected)
            throw LoadError(path.string() + ": expected " + std::to_string(expected) +
                            " values (D + D*D for D=" + std::to_string(dim) + "), found more");
    }
    if (!in.eof()) {
        std::string token;
        in.clear();
        in >> token;
        throw LoadError(path.string() + ": unparseable token '" + token + "' at position " +
                        std::to_string(values.size()));
    }
    if (values.size() != expected)
        throw LoadError(path.string() + ": expected " + std::to_string(expected) +
                        " values (D + D*D for D=" + std::to_string(dim) + "), found " +
                        std::to_string(values.size()));
    Transform t;
    t.shift.assign(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(dim));
    t.rotation.assign(values.begin() + static_cast<std::ptrdiff_t>(dim), values.end());
    const double err = rotation_error(t.rotation, dim);
    if (!(err <= 1e-9))
        throw LoadError(path.string() + ": rotation matrix is not orthogonal (defect " +
                        std::to_string(err) + ")");
    return t;
}

void save_transform(const std::filesystem::path& path, const Transform& transform,
                    std::size_t dim) {
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot write transform file: " + path.string());
    for (std::size_t j = 0; j < dim; ++j)
        out << (j ? " " : "") << format_double(transform.shift[j]);
    out << "\n";
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j)
            out << (j ? " " : "") << format_double(transform.rotation[i * dim + j]);
        out << "\n";
    }
    if (!out.good())
        throw IoError("failed writing transform file: " + path.string());
}

std::vector<BenchmarkFunction> make_suite(std::size_t dim, const TransformSet& transforms) {
    if (transforms.dimension != dim)
        throw ConfigError("transform set dimension does not match requested dimension");
    if (transforms.per_function.size() != builtin_functions().size())
        throw ConfigError("transform set does not cover all built-in functions");
    std::vector<BenchmarkFunction> suite;
    suite.reserve(builtin_functions().size());
    for (std::size_t i = 0; i < builtin_functions().size(); ++i)
        suite.emplace_back(builtin_functions()[i], dim, transforms.per_function[i]);
    return suite;
}

} // namespace clude
