#pragma once

#include "coopnet/analysis.hpp"
#include "coopnet/config.hpp"
#include "coopnet/errors.hpp"
#include "coopnet/geometry.hpp"
#include "coopnet/harness.hpp"
#include "coopnet/io.hpp"
#include "coopnet/network.hpp"
#include "coopnet/objective.hpp"
#include "coopnet/pocs.hpp"
#include "coopnet/ppb.hpp"
#include "coopnet/ppm.hpp"
#include "coopnet/rng.hpp"
#include "coopnet/solver.hpp"
