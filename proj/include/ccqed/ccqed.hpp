#pragma once

#include "ccqed/bessel.hpp"
#include "ccqed/config.hpp"
#include "ccqed/error.hpp"
#include "ccqed/fiber_mode.hpp"
#include "ccqed/gauss_hermite.hpp"
#include "ccqed/grid.hpp"
#include "ccqed/linear_response.hpp"
#include "ccqed/normal_modes.hpp"
#include "ccqed/oracle.hpp"
#include "ccqed/output.hpp"
#include "ccqed/params.hpp"
#include "ccqed/saturation.hpp"
#include "ccqed/units.hpp"
#include "ccqed/validation.hpp"
