#pragma once

#include "contin/bounds.hpp"
#include "contin/chain.hpp"
#include "contin/cheb.hpp"
#include "contin/conformal.hpp"
#include "contin/disk.hpp"
#include "contin/errors.hpp"
#include "contin/expr.hpp"
#include "contin/taylor.hpp"
