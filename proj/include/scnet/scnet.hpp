#pragma once

// Umbrella header.

#include "scnet/association.hpp"
#include "scnet/clustering.hpp"
#include "scnet/common.hpp"
#include "scnet/game.hpp"
#include "scnet/harness.hpp"
#include "scnet/jacobi.hpp"
#include "scnet/learning.hpp"
#include "scnet/network.hpp"
#include "scnet/scenario.hpp"
#include "scnet/scheduling.hpp"
#include "scnet/similarity.hpp"
#include "scnet/simulation.hpp"
#include "scnet/units.hpp"
