#pragma once

#include "runprob/big_rational.hpp"
#include "runprob/binomial.hpp"
#include "runprob/closed_form_float.hpp"
#include "runprob/errors.hpp"
#include "runprob/exact.hpp"
#include "runprob/kernel.hpp"
#include "runprob/matrix_power.hpp"
#include "runprob/method_result.hpp"
#include "runprob/oracle.hpp"
#include "runprob/parallel.hpp"
#include "runprob/query.hpp"
#include "runprob/random.hpp"
#include "runprob/roots.hpp"
#include "runprob/spectral.hpp"
