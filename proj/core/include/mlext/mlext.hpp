#pragma once

#include "mlext/constants.hpp"
#include "mlext/errors.hpp"
#include "mlext/group.hpp"
#include "mlext/grothendieck.hpp"
#include "mlext/io.hpp"
#include "mlext/linalg.hpp"
#include "mlext/rational.hpp"
#include "mlext/search.hpp"
#include "mlext/seed.hpp"
#include "mlext/tensor.hpp"
