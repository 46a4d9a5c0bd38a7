// Umbrella header.

#pragma once

#include "hpfold/aco.hpp"
#include "hpfold/bench.hpp"
#include "hpfold/core.hpp"
#include "hpfold/hmcaco.hpp"
#include "hpfold/local_search.hpp"
#include "hpfold/oracle.hpp"
#include "hpfold/pheromone.hpp"
#include "hpfold/scoring.hpp"
#include "hpfold/search.hpp"
#include "hpfold/symmetry.hpp"
