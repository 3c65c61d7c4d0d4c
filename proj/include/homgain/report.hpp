#pragma once

// CSV and JSON output. CSV uses LF line endings, a header row and "%.9g" numbers.

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "homgain/gain.hpp"
#include "homgain/lyapunov.hpp"
#include "homgain/sim.hpp"
#include "homgain/storage.hpp"
#include "homgain/tuner.hpp"

namespace homgain {

std::string format_number(double x);

// d,L,gamma_hat,gamma_noise,gamma_dist,hinf
// Failed rows carry "error:<reason>" in the gamma_hat column and nan elsewhere;
// hinf is empty when no linear baseline applies.
void write_sweep_csv(std::ostream& os, const SweepTable& table);

// t,z1,z2,y,nu,delta ; every `stride`-th sample.
void write_trajectory_csv(std::ostream& os, const ErrorTrajectory& tr, std::size_t stride = 1);

// kappa,ratio_nu,ratio_delta,ratio_hom
void write_ratios_csv(std::ostream& os, const std::vector<RatioRow>& rows);

nlohmann::json to_json(const GainRatioCheck& c);
nlohmann::json to_json(const StorageScale& s);
nlohmann::json to_json(const GainEstimate& g);
nlohmann::json to_json(const OptimalScaling& o);
nlohmann::json to_json(const QuotientReport& q);
nlohmann::json to_json(const DifferentiatorConfig& c);

}  // namespace homgain
