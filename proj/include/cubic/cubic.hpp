#pragma once

#include "cubic/arith.hpp"
#include "cubic/asymptotics.hpp"
#include "cubic/enumerate.hpp"
#include "cubic/factor.hpp"
#include "cubic/forms.hpp"
#include "cubic/inventory_io.hpp"
#include "cubic/local.hpp"
#include "cubic/modp.hpp"
#include "cubic/quadratic.hpp"
#include "cubic/rational.hpp"
#include "cubic/reduction.hpp"
#include "cubic/rings.hpp"
#include "cubic/special.hpp"
