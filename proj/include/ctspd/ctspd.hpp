#pragma once

#include "ctspd/bench.hpp"
#include "ctspd/construction.hpp"
#include "ctspd/exact.hpp"
#include "ctspd/feasibility.hpp"
#include "ctspd/instance.hpp"
#include "ctspd/local_search.hpp"
#include "ctspd/metaheuristic.hpp"
#include "ctspd/mip.hpp"
#include "ctspd/rng.hpp"
