#pragma once

#include <string>

#include "sailroa/config.hpp"

namespace sailroa::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUnexpected = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitSimulation = 3;
inline constexpr int kExitNotHurwitz = 4;
inline constexpr int kExitCertification = 5;

/// Closed-loop rollout: trajectory.csv, states.svg, settling diagnostics.
int cmd_simulate(const RunConfig& config, const std::string& out_dir);

/// Internal-dynamics linearization: A.csv, eigenvalue report, P.csv when
/// Hurwitz. Returns kExitNotHurwitz otherwise (report still written).
int cmd_linearize(const RunConfig& config, const std::string& out_dir);

/// Degree-3 model, Lyapunov P, sampling rho, plane projections and plots.
/// Optionally exports the SOS program in SDPA sparse format.
int cmd_roa(const RunConfig& config, const std::string& out_dir,
            const std::string& sdpa_export = "");

/// linearize + roa per sweep value, parallel workers (SAILROA_THREADS caps),
/// one metrics row per value.
int cmd_sweep(const RunConfig& config, const std::string& out_dir);

}  // namespace sailroa::cli
