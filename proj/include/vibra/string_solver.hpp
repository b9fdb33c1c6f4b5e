#pragma once

#include <string>
#include <string_view>

#include "vibra/model.hpp"
#include "vibra/wave_history.hpp"

namespace vibra {

enum class Solver { fdm, fem };

/// "fdm" or "fem"; throws ConfigError otherwise.
Solver parse_solver(std::string_view name);
std::string solver_label(Solver solver);

void run_string_solver(Solver solver, const StringConfig& config, const RowSink& sink);
WaveHistory simulate(Solver solver, const StringConfig& config);

}  // namespace vibra
