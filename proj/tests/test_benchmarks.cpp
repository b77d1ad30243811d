#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "clude/benchmarks.hpp"
#include "clude/errors.hpp"

using namespace clude;

namespace {

Transform identity_transform(std::size_t dim) {
    Transform t;
    t.shift.assign(dim, 0.0);
    t.rotation.assign(dim * dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i)
        t.rotation[i * dim + i] = 1.0;
    return t;
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / name;
}

} // namespace

TEST_SUITE("benchmarks") {

TEST_CASE("base function values at the origin and at pinned points") {
    const std::vector<double> zero(5, 0.0);
    CHECK(rastrigin(zero) == 0.0);
    CHECK(bent_cigar(zero) == 0.0);
    CHECK(zakharov(zero) == 0.0);
    CHECK(sum_diff_pow(zero) == 0.0);
    CHECK(rosenbrock(zero) == 0.0);
    CHECK(expanded_schaffer_f6(zero) == 0.0);
    CHECK(lunacek_bi_rastrigin(zero) == 0.0);
    CHECK(noncont_rastrigin(zero) == 0.0);
    CHECK(schwefel(zero) == 0.0);
    CHECK(levy(zero) == doctest::Approx(0.0).epsilon(1e-30));

    const std::vector<double> e2{0.0, 1.0, 0.0, 0.0, 0.0};
    CHECK(bent_cigar(e2) == 1e6);

    // hand arithmetic: (1+1) + 1.5^2 + 1.5^4
    CHECK(zakharov(std::vector{1.0, 1.0}) == doctest::Approx(9.3125).epsilon(1e-15));
}

TEST_CASE("base functions require at least two dimensions") {
    const std::vector<double> one{1.0};
    CHECK_THROWS_AS(rosenbrock(one), ConfigError);
    CHECK_THROWS_AS(expanded_schaffer_f6(one), ConfigError);
    CHECK_THROWS_AS(rastrigin(one), ConfigError);
}

TEST_CASE("noncontinuous rastrigin rounds coordinates beyond half a unit") {
    // inside the continuous band both variants agree
    const std::vector<double> inside{0.3, -0.4};
    CHECK(noncont_rastrigin(inside) == rastrigin(inside));
    // outside it, the coordinate snaps to the nearest half-integer
    const std::vector<double> outside{0.76, 0.0};
    const std::vector<double> snapped{0.5 * std::floor(2.0 * 0.76 + 0.5), 0.0};
    CHECK(noncont_rastrigin(outside) == rastrigin(snapped));
}

TEST_CASE("every composed built-in hits its bias exactly at the shift") {
    for (const std::size_t dim : {10u, 30u}) {
        const TransformSet set = synth_transforms(dim, 99);
        const auto suite = make_suite(dim, set);
        for (const BenchmarkFunction& f : suite) {
            const std::vector<double> shift(f.shift().begin(), f.shift().end());
            CHECK_MESSAGE(f(shift) == f.bias(), f.id(), " at D=", dim);
        }
    }
}

TEST_CASE("identity transform with zero bias reproduces the base function") {
    const std::size_t dim = 6;
    FunctionInfo info = function_by_id("F5");
    info.bias = 0.0;
    info.input_scale = 1.0;
    const BenchmarkFunction f(info, dim, identity_transform(dim));
    RngStream rng(8);
    for (int i = 0; i < 100; ++i) {
        std::vector<double> x(dim);
        for (double& v : x)
            v = rng.uniform(-100.0, 100.0);
        CHECK(f(x) == rastrigin(x));
    }
}

TEST_CASE("analytic inversion: x = shift + R^T z0 / scale evaluates to base(z0) + bias") {
    const std::size_t dim = 8;
    const TransformSet set = synth_transforms(dim, 4242);
    const auto suite = make_suite(dim, set);
    RngStream rng(55);
    for (std::size_t fi = 0; fi < suite.size(); ++fi) {
        const BenchmarkFunction& f = suite[fi];
        const FunctionInfo& info = builtin_functions()[fi];
        const Transform& t = set.per_function[fi];
        std::vector<double> z0(dim);
        for (double& v : z0)
            v = rng.uniform(-2.0, 2.0);
        // x - shift = R^T z0 / scale  =>  scale * R (x - shift) = z0
        std::vector<double> x(dim, 0.0);
        for (std::size_t j = 0; j < dim; ++j) {
            double acc = 0.0;
            for (std::size_t i = 0; i < dim; ++i)
                acc += t.rotation[i * dim + j] * z0[i];
            x[j] = t.shift[j] + acc / info.input_scale;
        }
        const double expected = evaluate_base(info.base, z0) + info.bias;
        CHECK_MESSAGE(f(x) == doctest::Approx(expected).epsilon(1e-9), f.id());
    }
}

TEST_CASE("changing the rotation leaves the value at the shift unchanged") {
    const std::size_t dim = 10;
    const TransformSet a = synth_transforms(dim, 1);
    const TransformSet b = synth_transforms(dim, 2);
    for (std::size_t fi = 0; fi < builtin_functions().size(); ++fi) {
        Transform mixed = a.per_function[fi];
        mixed.rotation = b.per_function[fi].rotation;
        const BenchmarkFunction f(builtin_functions()[fi], dim, mixed);
        const std::vector<double> shift(mixed.shift.begin(), mixed.shift.end());
        CHECK(f(shift) == f.bias());
    }
}

TEST_CASE("evaluation is pure: repeated calls agree bitwise") {
    const std::size_t dim = 10;
    const auto suite = make_suite(dim, synth_transforms(dim, 7));
    RngStream rng(3);
    std::vector<double> x(dim);
    for (double& v : x)
        v = rng.uniform(-100.0, 100.0);
    for (const BenchmarkFunction& f : suite)
        CHECK(f(x) == f(x));
}

TEST_CASE("synthetic transforms: deterministic, orthogonal, interior shifts") {
    const std::size_t dim = 30;
    const TransformSet a = synth_transforms(dim, 123);
    const TransformSet b = synth_transforms(dim, 123);
    REQUIRE(a.per_function.size() == builtin_functions().size());
    for (std::size_t fi = 0; fi < a.per_function.size(); ++fi) {
        CHECK(a.per_function[fi].shift == b.per_function[fi].shift);
        CHECK(a.per_function[fi].rotation == b.per_function[fi].rotation);
        CHECK(rotation_error(a.per_function[fi].rotation, dim) <= 1e-9);
        for (const double s : a.per_function[fi].shift) {
            CHECK(s >= -80.0);
            CHECK(s <= 80.0);
        }
    }
    const TransformSet c = synth_transforms(dim, 124);
    CHECK(a.per_function[0].shift != c.per_function[0].shift);
}

TEST_CASE("transform files round-trip through save and load") {
    const std::size_t dim = 5;
    const TransformSet set = synth_transforms(dim, 31);
    const auto path = temp_file("clude_test_transform.txt");
    save_transform(path, set.per_function[4], dim);
    const Transform loaded = load_transform(path, dim);
    CHECK(loaded.shift == set.per_function[4].shift);
    CHECK(loaded.rotation == set.per_function[4].rotation);
    std::filesystem::remove(path);
}

TEST_CASE("load_transform rejects malformed files") {
    const std::size_t dim = 3;
    SUBCASE("missing file") {
        CHECK_THROWS_AS(load_transform(temp_file("clude_no_such_file.txt"), dim), LoadError);
    }
    SUBCASE("one value short") {
        const auto path = temp_file("clude_short.txt");
        std::ofstream out(path);
        for (int i = 0; i < 3 + 9 - 1; ++i)
            out << "0.5 ";
        out.close();
        CHECK_THROWS_AS(load_transform(path, dim), LoadError);
        std::filesystem::remove(path);
    }
    SUBCASE("unparseable token") {
        const auto path = temp_file("clude_garbage.txt");
        std::ofstream out(path);
        out << "1 2 3 banana";
        out.close();
        CHECK_THROWS_AS(load_transform(path, dim), LoadError);
        std::filesystem::remove(path);
    }
    SUBCASE("duplicated rotation row fails the orthogonality check") {
        const auto path = temp_file("clude_rank_deficient.txt");
        std::ofstream out(path);
        out << "0 0 0\n";
        out << "1 0 0\n1 0 0\n0 0 1\n"; // rank-deficient
        out.close();
        CHECK_THROWS_AS(load_transform(path, dim), LoadError);
        std::filesystem::remove(path);
    }
    SUBCASE("valid identity matrix is accepted") {
        const auto path = temp_file("clude_identity.txt");
        std::ofstream out(path);
        out << "1 -2 3\n";
        out << "1 0 0\n0 1 0\n0 0 1\n";
        out.close();
        const Transform t = load_transform(path, dim);
        CHECK(t.shift == std::vector<double>{1.0, -2.0, 3.0});
        std::filesystem::remove(path);
    }
}

TEST_CASE("composition validates dimensions") {
    const std::size_t dim = 4;
    CHECK_THROWS_AS(BenchmarkFunction(function_by_id("F1"), dim, identity_transform(3)),
                    ConfigError);
    const BenchmarkFunction f(function_by_id("F1"), dim, identity_transform(dim));
    CHECK_THROWS_AS(f(std::vector<double>(3, 0.0)), ConfigError);
    CHECK_THROWS_AS(function_by_id("F11"), ConfigError);
}

} // TEST_SUITE
