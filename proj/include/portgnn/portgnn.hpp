#pragma once

// Umbrella header.

#include "portgnn/backward.hpp"
#include "portgnn/checkpoint.hpp"
#include "portgnn/coloring.hpp"
#include "portgnn/errors.hpp"
#include "portgnn/features.hpp"
#include "portgnn/forward.hpp"
#include "portgnn/generate.hpp"
#include "portgnn/graph.hpp"
#include "portgnn/io.hpp"
#include "portgnn/kind.hpp"
#include "portgnn/local_sim.hpp"
#include "portgnn/model.hpp"
#include "portgnn/oracles.hpp"
#include "portgnn/policy.hpp"
#include "portgnn/ports.hpp"
#include "portgnn/programs.hpp"
#include "portgnn/rng.hpp"
#include "portgnn/train.hpp"
#include "portgnn/version.hpp"
#include "portgnn/wrap_gnn.hpp"
