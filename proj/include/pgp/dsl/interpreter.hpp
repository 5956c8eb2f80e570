#pragma once

#include "pgp/dsl/chromosome.hpp"
#include "pgp/sim/episode.hpp"
#include "pgp/sim/types.hpp"

namespace pgp::dsl {

/// Runs the tree once for one frame. Action genes OR their bit into a
/// frame-local accumulator (Shoot and Run share the fire bit, Wait adds
/// nothing); IfElse evaluates only the taken branch. No state survives
/// between calls.
sim::ControlVector evaluate(const Chromosome& chromosome, const sim::Observation& observation);

/// Adapts a chromosome to the simulator's controller interface. The
/// chromosome is captured by value.
sim::Controller as_controller(Chromosome chromosome);

} // namespace pgp::dsl
