#pragma once

// Everything in one include.

#include "esbc/assignment.hpp"
#include "esbc/audit.hpp"
#include "esbc/classify.hpp"
#include "esbc/dot.hpp"
#include "esbc/error.hpp"
#include "esbc/formula.hpp"
#include "esbc/io.hpp"
#include "esbc/logic.hpp"
#include "esbc/operators.hpp"
#include "esbc/search.hpp"
#include "esbc/space.hpp"
#include "esbc/verify.hpp"
