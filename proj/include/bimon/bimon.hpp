#pragma once

#include <bimon/algebra.hpp>
#include <bimon/analytic.hpp>
#include <bimon/boundary.hpp>
#include <bimon/bvp.hpp>
#include <bimon/errors.hpp>
#include <bimon/expr.hpp>
#include <bimon/monogenic.hpp>
#include <bimon/parallel.hpp>
#include <bimon/quadrature.hpp>
#include <bimon/schwarz.hpp>
