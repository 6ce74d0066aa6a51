#pragma once

#include "almhd/assembly.hpp"
#include "almhd/problems_fwd.hpp"

namespace almhd {

/// Smooth manufactured solution on the unit cube:
///   u = (sin z, 2 cos x, 0),  p = sin y + cos 1 - 1,
///   B = (cos y, 0, 0),        r = 0.
/// The forcings are derived from the momentum and induction equations for
/// the given parameters, so the pair solves the continuous problem exactly.
Problem manufactured_problem(const PhysParams& params);

/// Driven cavity: f = 0, B_s = (1,0,0), g = (g1(z),0,0) with a continuous
/// lid profile that ramps from 0 to 1 over the top layer of width
/// `ramp_width` (the mesh size, by convention).
Problem cavity_problem(double ramp_width);

/// Frozen fields and forcing of the standalone coupling-block study.
struct CouplingData {
  VectorField f;
  VectorField u0;
  VectorField B0;
};
CouplingData coupling_block_data();

}  // namespace almhd
