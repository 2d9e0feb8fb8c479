#pragma once

#include "sinkhorn/error.hpp"
#include "sinkhorn/rational.hpp"
#include "sinkhorn/polynomial.hpp"
#include "sinkhorn/numerics.hpp"
#include "sinkhorn/roots.hpp"
#include "sinkhorn/matrix.hpp"
#include "sinkhorn/scaling.hpp"
#include "sinkhorn/families.hpp"
#include "sinkhorn/equivalence.hpp"
#include "sinkhorn/diophantine.hpp"
#include "sinkhorn/matrix_io.hpp"
