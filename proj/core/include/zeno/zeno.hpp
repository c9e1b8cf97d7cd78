#pragma once

#include "zeno/discrete_evolution.hpp"
#include "zeno/errors.hpp"
#include "zeno/extrapolation.hpp"
#include "zeno/overlap_schedule.hpp"
#include "zeno/perturbative_analysis.hpp"
#include "zeno/physical_models.hpp"
#include "zeno/qubit_core.hpp"
#include "zeno/register_sim.hpp"
