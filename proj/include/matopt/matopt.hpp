#pragma once

// Convenience header pulling in the whole library.

#include "matopt/analysis.hpp"
#include "matopt/brute.hpp"
#include "matopt/element.hpp"
#include "matopt/error.hpp"
#include "matopt/instances.hpp"
#include "matopt/matroid.hpp"
#include "matopt/rational.hpp"
#include "matopt/tropical.hpp"
#include "matopt/version.hpp"
#include "matopt/weighting.hpp"
