#pragma once

#include "shapfs/ex1.hpp"
#include "shapfs/ga.hpp"
#include "shapfs/shapley.hpp"

namespace shapfs {

struct SelectionConfig {
  GaConfig ga;
  Ex1Config ex1;
  int workers = 1;
};

/// Full GA-based Shapley estimation: per (feature, size) stratum collect
/// GA samples, EX1-adjust each stratum mean, combine by the truncated
/// size average. Strata run in parallel when workers > 1; the result is
/// identical either way (each stratum owns its RNG stream).
ShapleyReport run_shapley_ga(const GameOracle& game, const SelectionConfig& cfg);

}  // namespace shapfs
