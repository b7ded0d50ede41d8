#pragma once

#include "lmmroot/error.hpp"
#include "lmmroot/history.hpp"
#include "lmmroot/interp.hpp"
#include "lmmroot/problem.hpp"
#include "lmmroot/rate_theory.hpp"
#include "lmmroot/robust.hpp"
#include "lmmroot/scalar.hpp"
#include "lmmroot/solvers.hpp"
#include "lmmroot/stop.hpp"
