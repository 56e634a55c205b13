#pragma once

#include "qlm/chebyshev.hpp"
#include "qlm/embedding.hpp"
#include "qlm/energy.hpp"
#include "qlm/errors.hpp"
#include "qlm/geometry.hpp"
#include "qlm/grid.hpp"
#include "qlm/optimize.hpp"
#include "qlm/physdata.hpp"
#include "qlm/tau_spec.hpp"
#include "qlm/verify.hpp"
#include "qlm/version.hpp"
