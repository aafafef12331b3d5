#pragma once

// Umbrella header for the optimizer, the coupled-microstrip model and the test functions.

#include "batcoupler/bat.hpp"
#include "batcoupler/bat_ops.hpp"
#include "batcoupler/bench.hpp"
#include "batcoupler/coupler_objective.hpp"
#include "batcoupler/errors.hpp"
#include "batcoupler/optimizer.hpp"
#include "batcoupler/random.hpp"
#include "batcoupler/report.hpp"
#include "batcoupler/rf_model.hpp"
#include "batcoupler/search_space.hpp"
