#ifndef COLDROUTE_COLDROUTE_HPP
#define COLDROUTE_COLDROUTE_HPP

// Umbrella header for the coldroute library.

#include "coldroute/analysis.hpp"
#include "coldroute/domain.hpp"
#include "coldroute/ingest.hpp"
#include "coldroute/io.hpp"
#include "coldroute/kinetics.hpp"
#include "coldroute/matrix.hpp"
#include "coldroute/models.hpp"
#include "coldroute/rng.hpp"
#include "coldroute/scenarios.hpp"
#include "coldroute/solver.hpp"

#endif  // COLDROUTE_COLDROUTE_HPP
