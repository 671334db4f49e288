#pragma once

#include "vegasplus/errors.hpp"
#include "vegasplus/fill.hpp"
#include "vegasplus/importance_map.hpp"
#include "vegasplus/integrand.hpp"
#include "vegasplus/integrands.hpp"
#include "vegasplus/integrator.hpp"
#include "vegasplus/parallel_executor.hpp"
#include "vegasplus/rng.hpp"
#include "vegasplus/special_functions.hpp"
#include "vegasplus/stratification.hpp"
