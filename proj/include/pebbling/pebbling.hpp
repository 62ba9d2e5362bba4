#pragma once

// Everything in one include.
#include "pebbling/automorphism.hpp"
#include "pebbling/bound_constructor.hpp"
#include "pebbling/bounds_lab.hpp"
#include "pebbling/chain.hpp"
#include "pebbling/chain_solver.hpp"
#include "pebbling/distribution.hpp"
#include "pebbling/engine.hpp"
#include "pebbling/errors.hpp"
#include "pebbling/generators.hpp"
#include "pebbling/graph.hpp"
#include "pebbling/graph_io.hpp"
#include "pebbling/graph_spec.hpp"
#include "pebbling/multiset.hpp"
#include "pebbling/oracle.hpp"
#include "pebbling/random_graphs.hpp"
#include "pebbling/ratio.hpp"
#include "pebbling/rng.hpp"
#include "pebbling/solver.hpp"
#include "pebbling/special.hpp"
