#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "clude/core.hpp"

namespace clude {

// Base test functions, each with its global minimum of 0 at the origin.
// Formulas follow the CEC2017 single-objective suite definitions; where
// editions disagree (noncontinuous Rastrigin, Lunacek bi-Rastrigin, Levy)
// the variant whose optimum sits exactly at z = 0 is used, see the notes in
// benchmarks.cpp. All bases require D >= 2.
double bent_cigar(std::span<const double> z);
double sum_diff_pow(std::span<const double> z);
double zakharov(std::span<const double> z);
double rosenbrock(std::span<const double> z);
double rastrigin(std::span<const double> z);
double expanded_schaffer_f6(std::span<const double> z);
double lunacek_bi_rastrigin(std::span<const double> z);
double noncont_rastrigin(std::span<const double> z);
double levy(std::span<const double> z);
double schwefel(std::span<const double> z);

enum class BaseFunction {
    bent_cigar,
    sum_diff_pow,
    zakharov,
    rosenbrock,
    rastrigin,
    expanded_schaffer_f6,
    lunacek_bi_rastrigin,
    noncont_rastrigin,
    levy,
    schwefel,
};

double evaluate_base(BaseFunction base, std::span<const double> z);

/// Catalog entry for a built-in benchmark function.
struct FunctionInfo {
    std::string id;     // "F1" .. "F10"
    std::string name;   // descriptive name
    BaseFunction base;
    double bias;        // f* added to the base value (100 * index)
    double input_scale; // applied to x - shift before rotation
    bool nonnegative;   // base(z) >= 0 asserted by the anchoring checks
};

/// The ten built-in functions: F1-F3 unimodal, F4-F10 multimodal.
const std::vector<FunctionInfo>& builtin_functions();

/// Looks up a built-in by id ("F5"). Throws ConfigError for unknown ids.
const FunctionInfo& function_by_id(const std::string& id);

/// Shift vector plus row-major D x D rotation matrix for one function.
struct Transform {
    std::vector<double> shift;
    std::vector<double> rotation;
};

/// Per-function transforms for one dimensionality.
struct TransformSet {
    std::size_t dimension = 0;
    std::vector<Transform> per_function; // indexed like builtin_functions()
    std::string provenance;              // "synthetic seed=..." or a directory
};

/// Max |(R R^T - I)_{ij}|; the orthogonality defect of a rotation matrix.
double rotation_error(std::span<const double> rotation, std::size_t dim);

/// A composed benchmark instance: f(x) = base(R * scale * (x - shift)) + bias.
/// Validates dimensions and rotation orthogonality (defect <= 1e-9) at
/// construction. Evaluation is pure; instances are safe to share across
/// threads.
class BenchmarkFunction {
  public:
    BenchmarkFunction(FunctionInfo info, std::size_t dim, Transform transform);

    double operator()(std::span<const double> x) const;

    const std::string& id() const { return info_.id; }
    const std::string& name() const { return info_.name; }
    double bias() const { return info_.bias; }
    bool nonnegative_base() const { return info_.nonnegative; }
    std::size_t dimension() const { return dim_; }
    std::span<const double> shift() const { return transform_.shift; }

  private:
    FunctionInfo info_;
    std::size_t dim_ = 0;
    Transform transform_;
};

/// Deterministic synthetic transforms for all built-ins: shifts uniform in
/// [-80, 80]^D (optima interior to the +/-100 box), rotations from
/// Gram-Schmidt orthonormalization of a seeded Gaussian matrix. A stand-in
/// for officially distributed data, not a replica of it.
TransformSet synth_transforms(std::size_t dim, std::uint64_t seed);

/// Parses one transform from a whitespace-separated text file: D shift
/// values followed by D*D row-major rotation values. Throws LoadError on
/// parse failure, wrong count, non-finite values, or a rotation whose
/// orthogonality defect exceeds 1e-9.
Transform load_transform(const std::filesystem::path& path, std::size_t dim);

/// Writes a transform in the load_transform format (17 significant digits).
void save_transform(const std::filesystem::path& path, const Transform& transform,
                    std::size_t dim);

/// Composes the full built-in suite at dimension D from a transform set.
std::vector<BenchmarkFunction> make_suite(std::size_t dim, const TransformSet& transforms);

} // namespace clude
