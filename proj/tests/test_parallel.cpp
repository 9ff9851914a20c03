#include <atomic>
#include <stdexcept>

#include "doctest.h"
#include "dwet/parallel.hpp"
#include "dwet/rng.hpp"

using namespace dwet;

TEST_CASE("parallel map equals the serial reference") {
  auto fn = [](int i) {
    Rng rng = make_stream(42, static_cast<std::uint64_t>(i));
    double acc = 0.0;
    for (int k = 0; k < 100; ++k) acc += std::uniform_real_distribution<double>(0, 1)(rng);
    return acc;
  };
  for (int threads : {1, 2, 5}) {
    set_thread_count(threads);
    CHECK(map_trials(333, fn) == map_trials_serial(333, fn));
  }
  CHECK(map_trials(0, fn).empty());
}

TEST_CASE("exceptions inside trials surface to the caller") {
  set_thread_count(3);
  auto boom = [](int i) -> int {
    if (i == 17) throw std::runtime_error("trial 17");
    return i;
  };
  CHECK_THROWS_WITH_AS(map_trials(40, boom), "trial 17", std::runtime_error);
}

TEST_CASE("streams are distinct and reproducible") {
  Rng a = make_stream(1, 0), b = make_stream(1, 1), c = make_stream(2, 0), a2 = make_stream(1, 0);
  const auto x = a();
  CHECK(x == a2());
  CHECK(x != b());
  CHECK(x != c());
  CHECK(make_stream(1, 0, 5)() != make_stream(1, 0, 6)());
}
