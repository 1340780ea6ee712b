#pragma once

// Pathwise rough-path integration for cadlag step paths: oscillation
// partitions, p-variation machinery, level-2 area processes, controlled
// paths, left-point/compensated/Young integrals, quadratic variation, and a
// model-free portfolio layer on top.

#include "rough/controlled.hpp"
#include "rough/errors.hpp"
#include "rough/generate.hpp"
#include "rough/integrate.hpp"
#include "rough/io.hpp"
#include "rough/linalg.hpp"
#include "rough/partition.hpp"
#include "rough/path.hpp"
#include "rough/rie.hpp"
#include "rough/rng.hpp"
#include "rough/roughpath.hpp"
#include "rough/strategy.hpp"
#include "rough/variation.hpp"
