#pragma once

// Umbrella header.

#include "torricelli/balance.hpp"
#include "torricelli/errors.hpp"
#include "torricelli/geometry.hpp"
#include "torricelli/oracle.hpp"
#include "torricelli/rng.hpp"
#include "torricelli/solver.hpp"
#include "torricelli/sphere.hpp"
#include "torricelli/vec.hpp"
