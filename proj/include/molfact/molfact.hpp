#pragma once

// Umbrella header for the library core (no JSON dependency).

#include "molfact/error.hpp"
#include "molfact/modarith.hpp"
#include "molfact/zmod_matrix.hpp"
#include "molfact/ring.hpp"
#include "molfact/ideal.hpp"
#include "molfact/lattice.hpp"
#include "molfact/molecularize.hpp"
#include "molfact/constructions.hpp"
#include "molfact/properties.hpp"
#include "molfact/experiments.hpp"
