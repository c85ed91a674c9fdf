#pragma once

#include "hcgame/bits.hpp"
#include "hcgame/classical.hpp"
#include "hcgame/game.hpp"
#include "hcgame/inequalities.hpp"
#include "hcgame/json_io.hpp"
#include "hcgame/linalg.hpp"
#include "hcgame/nosignalling.hpp"
#include "hcgame/optimize.hpp"
#include "hcgame/parallel.hpp"
#include "hcgame/quantum.hpp"
#include "hcgame/rational.hpp"
#include "hcgame/report.hpp"
