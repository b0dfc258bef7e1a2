#pragma once

#include "run_config.hpp"
#include "uvarov/oracle.hpp"

namespace uvarov::cli {

/// Runs every computation path the CLI exposes against an independent
/// reference on the configured (d, kappa, masses) through max_degree().
/// Results are deterministic for a given config.
EquivalenceReport run_verify(const RunConfig& config);

}  // namespace uvarov::cli
