#pragma once

#include "maxvol/error.hpp"
#include "maxvol/numerics.hpp"
#include "maxvol/oracle.hpp"
#include "maxvol/rounding.hpp"
#include "maxvol/greedy.hpp"
#include "maxvol/sampling.hpp"
#include "maxvol/instances.hpp"
#include "maxvol/graphs.hpp"
#include "maxvol/mvs.hpp"
#include "maxvol/io.hpp"
