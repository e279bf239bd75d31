#pragma once

#include "cknlab/bounds.hpp"
#include "cknlab/cylinder.hpp"
#include "cknlab/eig_oracle.hpp"
#include "cknlab/energy.hpp"
#include "cknlab/errors.hpp"
#include "cknlab/extremals.hpp"
#include "cknlab/grid.hpp"
#include "cknlab/minimizer.hpp"
#include "cknlab/params.hpp"
#include "cknlab/quotient.hpp"
#include "cknlab/specfun.hpp"
#include "cknlab/spectrum.hpp"
