#pragma once

#include "brpois/rational.hpp"
#include "brpois/coefficients.hpp"
#include "brpois/matrix.hpp"
#include "brpois/tensor.hpp"
#include "brpois/free_algebra.hpp"
#include "brpois/braiding.hpp"
#include "brpois/polynomial.hpp"
#include "brpois/ratfunc.hpp"
#include "brpois/fnpoly.hpp"
#include "brpois/symalg.hpp"
#include "brpois/report.hpp"
#include "brpois/brackets.hpp"
#include "brpois/global.hpp"
#include "brpois/gaudin.hpp"
#include "brpois/realg.hpp"
