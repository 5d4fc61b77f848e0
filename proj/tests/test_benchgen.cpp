#include <doctest.h>

#include <algorithm>
#include <stdexcept>

#include "psched/benchgen.hpp"

using namespace psched;

TEST_SUITE("benchgen") {

TEST_CASE("energy curve hits both documented endpoints") {
    CHECK(energy_for_speed(1000.0) == 0.3);
    CHECK(energy_for_speed(10000.0) == 30.0);
}

TEST_CASE("generation is a pure function of the BenchmarkSpec") {
    const BenchmarkSpec spec{20, 5, 30.0, 12345};
    const ProblemInstance a = generate(spec);
    const ProblemInstance b = generate(spec);
    CHECK(a.name == b.name);
    CHECK(a.task_sizes == b.task_sizes);
    CHECK(a.cpu_speeds == b.cpu_speeds);
    CHECK(a.cpu_energies == b.cpu_energies);
    CHECK(a.deadline == b.deadline);

    const ProblemInstance c = generate(BenchmarkSpec{20, 5, 30.0, 12346});
    CHECK(a.task_sizes != c.task_sizes);
}

TEST_CASE("generated instances respect all ranges and the exact 10x ratio") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const ProblemInstance inst = generate(BenchmarkSpec{12, 2 + static_cast<int>(seed % 9),
                                                            30.0, seed});
        const double lo = *std::min_element(inst.cpu_speeds.begin(), inst.cpu_speeds.end());
        const double hi = *std::max_element(inst.cpu_speeds.begin(), inst.cpu_speeds.end());
        CHECK(lo >= 1000.0);
        CHECK(hi <= 10000.0);
        CHECK(hi / lo == doctest::Approx(10.0).epsilon(1e-12));
        for (double e : inst.cpu_energies) {
            CHECK(e >= 0.3);
            CHECK(e <= 30.0);
        }
        for (double t : inst.task_sizes) {
            CHECK(t >= 5000.0);
            CHECK(t <= 15000.0);
        }
    }
}

TEST_CASE("energy grows with speed within one instance") {
    for (std::uint64_t seed = 500; seed < 560; ++seed) {
        const ProblemInstance inst = generate(BenchmarkSpec{5, 6, 30.0, seed});
        for (std::size_t a = 0; a < inst.cpu_speeds.size(); ++a)
            for (std::size_t b = 0; b < inst.cpu_speeds.size(); ++b)
                if (inst.cpu_speeds[a] < inst.cpu_speeds[b])
                    CHECK(inst.cpu_energies[a] < inst.cpu_energies[b]);
    }
}

TEST_CASE("two processors get exactly the extreme speeds") {
    const ProblemInstance inst = generate(BenchmarkSpec{4, 2, 30.0, 77});
    std::vector<double> speeds = inst.cpu_speeds;
    std::sort(speeds.begin(), speeds.end());
    CHECK(speeds == std::vector<double>{1000.0, 10000.0});
}

TEST_CASE("invalid specs are rejected") {
    CHECK_THROWS_AS(generate(BenchmarkSpec{0, 5, 30.0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(generate(BenchmarkSpec{5, 1, 30.0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(generate(BenchmarkSpec{5, 5, 0.0, 1}), std::invalid_argument);
}

} // TEST_SUITE
