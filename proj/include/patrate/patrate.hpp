// Umbrella header.

#pragma once

#include "errors.hpp"
#include "exactdist.hpp"
#include "matrix.hpp"
#include "model.hpp"
#include "numeric.hpp"
#include "philox.hpp"
#include "ratefn.hpp"
#include "sampler.hpp"
#include "spectral.hpp"
#include "validate.hpp"
