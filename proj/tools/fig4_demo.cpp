// Library usage example: half-normal vs uniform deployment for an intruder
// that appears close to the target, over a range of sensor counts.

#include <cstdio>
#include <optional>

#include "hnwsn/analytic.hpp"
#include "hnwsn/montecarlo.hpp"

int main()
{
    using namespace hnwsn;
    const Region region = Region::rectangle(0.0, 100.0, -50.0, 50.0);
    const IntruderScenario scenario = make_scenario(5.0, 5.0);
    const double r = 1.0;
    const DeploymentModel half_normal{DeploymentKind::HalfPlaneHalfNormal, {10.0}, region};
    const DeploymentModel uniform{DeploymentKind::UniformRect, {}, region};
    const RandomSeed seed{2024};

    std::printf("%6s %14s %14s %14s\n", "N", "half_normal", "(analytic)", "uniform");
    for (std::size_t n : {10, 50, 100, 200, 500}) {
        const auto hn = estimate_detection(half_normal, n, scenario, r, 20000, seed);
        const auto un = estimate_detection(uniform, n, scenario, r, 20000, seed);
        const double analytic = full_report(scenario, r, 10.0, n).p_d;
        std::printf("%6zu %14.6f %14.6f %14.6f\n", n, hn.p_hat, analytic, un.p_hat);
    }
}
