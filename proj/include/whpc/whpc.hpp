#pragma once

// Umbrella header: sparse Wiener-Hermite polynomial chaos approximation of
// the lognormal diffusion solution map on the torus.

#include "whpc/config.hpp"
#include "whpc/diffusion.hpp"
#include "whpc/errors.hpp"
#include "whpc/expansion.hpp"
#include "whpc/field.hpp"
#include "whpc/hermite.hpp"
#include "whpc/index_set.hpp"
#include "whpc/io.hpp"
#include "whpc/multi_index.hpp"
#include "whpc/parametric.hpp"
#include "whpc/poly_identity.hpp"
#include "whpc/rng.hpp"
#include "whpc/runner.hpp"
#include "whpc/trig_basis.hpp"
#include "whpc/verify.hpp"
#include "whpc/weights.hpp"
