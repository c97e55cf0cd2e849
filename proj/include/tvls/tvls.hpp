#pragma once

#include "tvls/certify.hpp"
#include "tvls/common.hpp"
#include "tvls/experiment.hpp"
#include "tvls/image.hpp"
#include "tvls/io.hpp"
#include "tvls/ops.hpp"
#include "tvls/phantom.hpp"
#include "tvls/rng.hpp"
#include "tvls/sampling.hpp"
#include "tvls/sets.hpp"
#include "tvls/solver.hpp"
#include "tvls/structure.hpp"
