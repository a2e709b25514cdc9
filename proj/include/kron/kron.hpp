#pragma once

// Umbrella header for the kron library.

#include "kron/error.hpp"
#include "kron/field.hpp"
#include "kron/matrix.hpp"
#include "kron/tensor.hpp"
#include "kron/serialize.hpp"
#include "kron/random.hpp"
#include "kron/report.hpp"
#include "kron/kron_ops.hpp"
#include "kron/verify_sums.hpp"
#include "kron/appendix.hpp"
#include "kron/quotient.hpp"
#include "kron/difference.hpp"
#include "kron/d_properties.hpp"
#include "kron/uniform_family.hpp"
#include "kron/commuting.hpp"
#include "kron/ortho.hpp"
#include "kron/suites.hpp"
