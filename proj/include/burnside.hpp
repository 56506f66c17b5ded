#pragma once

#include "burnside/builtin.hpp"
#include "burnside/burnside_ring.hpp"
#include "burnside/crossed.hpp"
#include "burnside/error.hpp"
#include "burnside/group.hpp"
#include "burnside/gset.hpp"
#include "burnside/hall.hpp"
#include "burnside/io.hpp"
#include "burnside/lattice.hpp"
#include "burnside/linalg.hpp"
#include "burnside/mackey.hpp"
#include "burnside/rational.hpp"
#include "burnside/tower.hpp"
