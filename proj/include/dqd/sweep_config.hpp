// sweep_config.hpp - flat key=value sweep description.
//
//   # comments start with '#'
//   [fixed]
//   t = 7
//   bz = 16
//   epsilon = 1
//   [axis1]
//   param = bx
//   min = 0
//   max = 200
//   count = 201
//   scale = linear        # or log; optional, default linear
//   [axis2]               # optional
//   param = T
//   min = 0.1
//   max = 30
//   count = 100
//   scale = log
//   [output]
//   measures = concurrence, correlated_coherence
#pragma once

#include <istream>
#include <string>

#include <dqd/sweep.hpp>

namespace dqd {

/// Parses and validates; throws ConfigError with the offending line number.
SweepGrid parse_sweep_config(std::istream& in);
SweepGrid load_sweep_config(const std::string& path);

}  // namespace dqd
