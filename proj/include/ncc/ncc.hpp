#pragma once

#include "dynamics.hpp"
#include "errors.hpp"
#include "generators.hpp"
#include "graph.hpp"
#include "inference.hpp"
#include "io.hpp"
#include "parallel.hpp"
#include "rng.hpp"
#include "sampling.hpp"
#include "subgraph_stats.hpp"
#include "theory.hpp"
