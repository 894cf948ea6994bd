#pragma once

#include "hicache/basis.hpp"
#include "hicache/cache.hpp"
#include "hicache/energy.hpp"
#include "hicache/envelope.hpp"
#include "hicache/error.hpp"
#include "hicache/evaluation.hpp"
#include "hicache/predictor.hpp"
#include "hicache/rng.hpp"
#include "hicache/scheduler.hpp"
#include "hicache/sim.hpp"
#include "hicache/trace_io.hpp"
#include "hicache/trajectory.hpp"
