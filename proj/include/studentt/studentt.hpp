#pragma once

#include "studentt/errors.hpp"
#include "studentt/special_fn.hpp"
#include "studentt/student_exact.hpp"
#include "studentt/rational.hpp"
#include "studentt/local_expansion.hpp"
#include "studentt/survival_approx.hpp"
#include "studentt/quantile.hpp"
