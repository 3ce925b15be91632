#pragma once

// Fractional powers of the discrete Laplacian on Z and Z^2.

#include "fdlap/convergence.hpp"
#include "fdlap/differences.hpp"
#include "fdlap/errors.hpp"
#include "fdlap/gridops.hpp"
#include "fdlap/heat.hpp"
#include "fdlap/kernels1d.hpp"
#include "fdlap/kernels2d.hpp"
#include "fdlap/lattice.hpp"
#include "fdlap/mellin.hpp"
#include "fdlap/quadrature.hpp"
#include "fdlap/reference.hpp"
#include "fdlap/specfun.hpp"
#include "fdlap/summation.hpp"
#include "fdlap/io.hpp"
