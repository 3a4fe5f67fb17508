#pragma once

#include "berkram/rational.hpp"
#include "berkram/valfield.hpp"
#include "berkram/poly.hpp"
#include "berkram/padic_approx.hpp"
#include "berkram/newton.hpp"
#include "berkram/berk.hpp"
#include "berkram/piecewise.hpp"
#include "berkram/auxram.hpp"
#include "berkram/hull.hpp"
#include "berkram/apps.hpp"
#include "berkram/io.hpp"
#include "berkram/jobs.hpp"
