#pragma once

#include "pdmwell/error.hpp"
#include "pdmwell/model.hpp"
#include "pdmwell/transforms.hpp"
#include "pdmwell/hypergeometric.hpp"
#include "pdmwell/heun.hpp"
#include "pdmwell/analytic.hpp"
#include "pdmwell/tridiagonal.hpp"
#include "pdmwell/oracle.hpp"
#include "pdmwell/eigensolver.hpp"
#include "pdmwell/fixtures.hpp"
#include "pdmwell/io.hpp"
