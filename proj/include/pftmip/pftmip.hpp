#pragma once

#include "pftmip/csv.hpp"
#include "pftmip/error.hpp"
#include "pftmip/linear_program.hpp"
#include "pftmip/mip.hpp"
#include "pftmip/models.hpp"
#include "pftmip/network.hpp"
#include "pftmip/pft.hpp"
#include "pftmip/simplex.hpp"
#include "pftmip/spatial_io.hpp"
