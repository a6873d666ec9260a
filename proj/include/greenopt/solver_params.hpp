#pragma once

#include <string>

namespace greenopt {

enum class SolverMethod {
  frequency_domain,  // direct sparse solve of the Yee-discretised operator
  time_domain,       // ramped CW FDTD with a running DFT
};

std::string to_string(SolverMethod m);
SolverMethod solver_method_from_string(const std::string& name);

struct SolverParams {
  SolverMethod method = SolverMethod::frequency_domain;

  // Absorbing layer: graded conductivity sigma(d) = sigma_max (d / L)^order
  // with sigma_max chosen for a normal-incidence reflection of pml_reflection.
  int pml_cells = 20;
  double pml_order = 2.0;
  double pml_reflection = 1e-8;

  // Time-domain only.
  double courant = 0.5;
  double ramp_cycles = 10.0;
  double settle_cycles = 20.0;
  int dft_cycles = 5;
  double convergence_tol = 1e-4;
  double max_cycles = 2000.0;

  // Source amplitude multiplier; 1 is a unit point dipole.
  double amplitude_scale = 1.0;

  /// Throws ConfigError naming the first offending field.
  void validate() const;

  bool operator==(const SolverParams&) const = default;
};

}  // namespace greenopt
