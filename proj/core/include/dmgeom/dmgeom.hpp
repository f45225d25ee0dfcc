#pragma once

#include "dmgeom/core.hpp"
#include "dmgeom/error.hpp"
#include "dmgeom/purification.hpp"
#include "dmgeom/sampling.hpp"
#include "dmgeom/strata.hpp"
