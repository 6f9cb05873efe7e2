#pragma once

#include "pcx/action.hpp"
#include "pcx/algebra.hpp"
#include "pcx/cell.hpp"
#include "pcx/clopen.hpp"
#include "pcx/config.hpp"
#include "pcx/function.hpp"
#include "pcx/graph.hpp"
#include "pcx/group.hpp"
#include "pcx/matrix.hpp"
#include "pcx/paradox.hpp"
#include "pcx/rational.hpp"
#include "pcx/serialize.hpp"
#include "pcx/system.hpp"
