#include "vibra/string_solver.hpp"

#include "vibra/errors.hpp"
#include "vibra/string_fdm.hpp"
#include "vibra/string_fem.hpp"

namespace vibra {

Solver parse_solver(std::string_view name) {
  if (name == "fdm") return Solver::fdm;
  if (name == "fem") return Solver::fem;
  throw ConfigError("unknown solver '" + std::string(name) + "' (expected fdm or fem)");
}

std::string solver_label(Solver solver) { return solver == Solver::fdm ? "fdm" : "fem"; }

void run_string_solver(Solver solver, const StringConfig& config, const RowSink& sink) {
  if (solver == Solver::fdm) {
    run_fdm(config, sink);
  } else {
    run_fem(config, sink);
  }
}

WaveHistory simulate(Solver solver, const StringConfig& config) {
  return solver == Solver::fdm ? simulate_fdm(config) : simulate_fem(config);
}

}  // namespace vibra
