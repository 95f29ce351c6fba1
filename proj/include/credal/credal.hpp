#pragma once

// Umbrella header for the credal clustering library.

#include "credal/belief.hpp"
#include "credal/core.hpp"
#include "credal/ecmdd.hpp"
#include "credal/fcmdd.hpp"
#include "credal/graphsim.hpp"
#include "credal/init.hpp"
#include "credal/io.hpp"
#include "credal/metrics.hpp"
