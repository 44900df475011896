#pragma once

#include "propmet/errors.hpp"
#include "propmet/arith.hpp"
#include "propmet/lattice.hpp"
#include "propmet/group.hpp"
#include "propmet/subgroup.hpp"
#include "propmet/point.hpp"
#include "propmet/action.hpp"
#include "propmet/shortest_path.hpp"
#include "propmet/pseudometric.hpp"
#include "propmet/verify.hpp"
#include "propmet/koszul.hpp"
#include "propmet/union_find.hpp"
#include "propmet/stick.hpp"
#include "propmet/bridge.hpp"
#include "propmet/isogroup.hpp"
#include "propmet/scenarios.hpp"
#include "propmet/pipeline.hpp"
#include "propmet/dot.hpp"
