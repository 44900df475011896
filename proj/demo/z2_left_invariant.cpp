// Z^2 acting on itself; F is the l1 unit ball around the origin.
#include <iostream>

#include "propmet/propmet.hpp"

int main() {
  propmet::ScenarioConfig config;
  config.scenario = "z2-on-itself";
  const auto result = propmet::run_pipeline(config);
  std::cout << "verdict: " << result.report["verdict"].get<std::string>() << "\n";
  if (!result.final_metric) return 1;

  const auto& d = *result.final_metric;
  const auto origin = propmet::lattice_point({0, 0});
  std::cout << "d((0,0),(3,4)) = " << d(origin, propmet::lattice_point({3, 4})).str() << "\n";
  for (int r = 1; r <= 6; ++r) {
    const auto ball = propmet::enumerate_ball(d, origin, propmet::ExtReal(r));
    std::cout << "|B((0,0), " << r << ")| = " << ball.points.size() << "\n";
  }
  return result.witness ? 0 : 1;
}
